mod common;

use common::lattice;
use polystack::catalog::{self, verify_catalog};
use polystack::exact::{frac, int, Vector};
use polystack::hull::brute_force_facets;
use polystack::{analyze, catalog_entry, lattices_isomorphic, self_dual, Error, Execution, VertexSet};

#[test]
fn p9_incidences_include_the_listed_facets() {
    let e = catalog_entry("P9").unwrap();
    let inc = e.expected_incidences.unwrap();
    assert_eq!(inc.len(), 9);
    assert!(inc.contains(&VertexSet::from([1, 2, 3, 4, 5])));
    assert!(inc.contains(&VertexSet::from([0, 2, 3, 5, 6, 7])));
}

#[test]
fn incidences_are_recomputed_exactly() {
    for name in ["P9", "P10", "P11"] {
        let e = catalog_entry(name).unwrap();
        let p = &e.polytope;
        let mut got: Vec<VertexSet> = brute_force_facets(p.dim(), p.vertices(), Execution::Sequential)
            .unwrap()
            .into_iter()
            .map(|f| f.vertices)
            .collect();
        got.sort();
        let mut want = e.expected_incidences.unwrap();
        want.sort();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn table_coordinates_verbatim() {
    let p11 = catalog::polytope("P11");
    assert_eq!(p11.vertex(6), &Vector::new(vec![frac(-11, 21), frac(11, 21), frac(-11, 21), int(0)]));
    assert_eq!(p11.vertex(8).coords()[0], frac(-428, 1617));
    let p9 = catalog::polytope("P9");
    assert_eq!(p9.vertex(4).coords()[3], frac(3, 2));
}

#[test]
fn examples_are_elementary() {
    for (name, f) in [("P9", [9, 26, 26, 9]), ("P10", [10, 30, 30, 10]), ("P11", [11, 34, 34, 11])] {
        let r = analyze(&catalog::polytope(name)).unwrap();
        assert_eq!(r.fvec.0, f.to_vec(), "{name}");
        assert_eq!(r.two_simple, Some(true), "{name}");
        assert_eq!(r.two_simplicial, Some(true), "{name}");
        assert_eq!(r.g2, Some(0), "{name}");
        assert_eq!(r.on_ell1, Some(true), "{name}");
        assert!(r.euler_ok && r.dehn_sommerville_ok, "{name}");
    }
}

#[test]
fn hypersimplex_and_p10() {
    let hs = lattice(&catalog::polytope("hypersimplex"));
    let p10 = lattice(&catalog::polytope("P10"));
    assert_eq!(hs.f_vector().0, vec![10, 30, 30, 10]);
    assert_eq!(hs.flag_vector(), p10.flag_vector());
    assert!(lattices_isomorphic(&hs, &p10).is_none());
    assert!(self_dual(&p10));
    assert!(self_dual(&lattice(&catalog::polytope("P9"))));
}

#[test]
fn report_covers_every_entry() {
    let r = verify_catalog();
    assert!(r.ok(), "{:?}", r.failures);
    assert_eq!(r.entries.len(), catalog::names().len());
    let p9 = r.entries.iter().find(|e| e.name == "P9").unwrap();
    assert_eq!(p9.incidences_match, Some(true));
    assert_eq!(p9.analysis.on_ell1, Some(true));
    assert!(r.entries.iter().find(|e| e.name == "P10").unwrap().self_dual);
}

#[test]
fn unknown_names_are_errors() {
    assert!(matches!(catalog_entry("P12"), Err(Error::UnknownName(_))));
}
