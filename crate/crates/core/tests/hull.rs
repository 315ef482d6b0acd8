use polystack::exact::Vector;
use polystack::hull::{brute_force_facets, facets_from_points};
use polystack::{catalog, Execution, VertexSet};
use proptest::prelude::*;

fn sets(fs: Vec<polystack::Facet>) -> Vec<VertexSet> {
    let mut v: Vec<VertexSet> = fs.into_iter().map(|f| f.vertices).collect();
    v.sort();
    v
}

/// Distinct integer points spanning the space; returns `None` otherwise.
fn points(d: usize, raw: &[Vec<i64>]) -> Option<Vec<Vector>> {
    let mut seen = std::collections::BTreeSet::new();
    let pts: Vec<Vector> = raw
        .iter()
        .filter(|r| seen.insert((*r).clone()))
        .map(|r| Vector::from_ints(&r[..d]))
        .collect();
    let refs: Vec<&Vector> = pts.iter().collect();
    (polystack::exact::affine_rank(&refs).ok()? == d).then_some(pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certified_hull_equals_brute_force(
        d in 2usize..=4,
        raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 5..12),
    ) {
        let Some(pts) = points(d, &raw) else { return Ok(()) };
        // Interior points are not vertices; both enumerators must agree on
        // the facets of the hull of the vertices.
        let Ok(bf) = brute_force_facets(d, &pts, Execution::Sequential) else { return Ok(()) };
        let fast = facets_from_points(d, &pts, Execution::Parallel);
        prop_assert_eq!(sets(fast.unwrap()), sets(bf));
    }
}

#[test]
fn modes_agree_on_catalog_points() {
    for name in catalog::names() {
        let p = catalog::polytope(name);
        let a = sets(facets_from_points(p.dim(), p.vertices(), Execution::Sequential).unwrap());
        let b = sets(facets_from_points(p.dim(), p.vertices(), Execution::Parallel).unwrap());
        let c = sets(brute_force_facets(p.dim(), p.vertices(), Execution::Parallel).unwrap());
        assert_eq!(a, b, "{name}");
        assert_eq!(a, c, "{name}");
    }
}
