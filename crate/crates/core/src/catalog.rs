//! Built-in exact models.
//!
//! Facets are always recomputed from the coordinates by the brute-force
//! enumerator; the stored incidence lists are expectations to check against.

use crate::analysis::{analyze_lattice, AnalysisReport};
use crate::error::{Error, Result};
use crate::exact::{frac, int, Scalar, Vector};
use crate::flag::FVector;
use crate::hull::brute_force_facets;
use crate::iso::self_dual;
use crate::lattice::build_face_lattice;
use crate::par::Execution;
use crate::polytope::Polytope;
use crate::vset::VertexSet;

/// Every name accepted by [`get`].
pub const NAMES: [&str; 9] = [
    "simplex4",
    "P9",
    "P10",
    "P11",
    "hypersimplex",
    "octahedron3",
    "cube3",
    "frustum3",
    "prism3",
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub polytope: Polytope,
    pub expected_incidences: Option<Vec<VertexSet>>,
    pub expected_f: Option<FVector>,
}

pub fn names() -> &'static [&'static str] {
    &NAMES
}

fn ints(rows: &[&[i64]]) -> Vec<Vector> {
    rows.iter().map(|r| Vector::from_ints(r)).collect()
}

fn sets(rows: &[&[usize]]) -> Vec<VertexSet> {
    rows.iter().map(|r| VertexSet::from(*r)).collect()
}

fn p9_vertices() -> Vec<Vector> {
    let mut v = ints(&[&[3, 0, 0, 0], &[1, 1, 1, 1], &[0, 3, 0, 0], &[0, 0, 3, 0]]);
    v.push(Vector::new(vec![int(0), int(0), int(0), frac(3, 2)]));
    v.extend(ints(&[
        &[-3, 0, 0, 0],
        &[0, 0, -3, 0],
        &[0, -3, 0, 0],
        &[-1, -1, -1, 1],
    ]));
    v
}

fn p9_facets() -> Vec<VertexSet> {
    sets(&[
        &[1, 2, 3, 4, 5],
        &[3, 4, 5, 7, 8],
        &[5, 6, 7, 8],
        &[2, 4, 5, 6, 8],
        &[0, 1, 2, 3],
        &[0, 2, 3, 5, 6, 7],
        &[0, 4, 6, 7, 8],
        &[0, 1, 3, 4, 7],
        &[0, 1, 2, 4, 6],
    ])
}

fn p10_vertices() -> Vec<Vector> {
    ints(&[
        &[9, -3, -3, -3],
        &[-3, 9, -3, -3],
        &[-3, -3, -3, -3],
        &[-3, -3, 9, -3],
        &[-3, -3, -3, 9],
        &[1, -3, -7, 1],
        &[-3, 1, 1, -7],
        &[3, 3, 3, 3],
        &[5, -3, 5, 1],
        &[-3, 5, 1, 5],
    ])
}

fn p10_facets() -> Vec<VertexSet> {
    sets(&[
        &[3, 4, 7, 8, 9],
        &[1, 2, 3, 4, 6, 9],
        &[1, 2, 4, 5],
        &[1, 3, 7, 9],
        &[0, 2, 3, 6],
        &[0, 4, 7, 8],
        &[0, 1, 4, 5, 7, 9],
        &[0, 1, 2, 5, 6],
        &[0, 2, 3, 4, 5, 8],
        &[0, 1, 3, 6, 7, 8],
    ])
}

fn p11_vertices() -> Vec<Vector> {
    let mut v = ints(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[-1, 0, 0, 0],
        &[0, -1, 0, 0],
        &[0, 0, -1, 0],
    ]);
    let row = |c: [Scalar; 4]| Vector::new(c.to_vec());
    v.push(row([frac(-11, 21), frac(11, 21), frac(-11, 21), int(0)]));
    v.push(row([frac(-11, 147), frac(11, 147), frac(-11, 147), int(1)]));
    v.push(row([frac(-428, 1617), frac(428, 1617), frac(68, 147), frac(1, 2)]));
    v.push(row([frac(68, 147), frac(428, 1617), frac(-428, 1617), frac(1, 2)]));
    v.push(row([frac(-428, 1617), frac(-68, 147), frac(-428, 1617), frac(1, 2)]));
    v
}

fn p11_facets() -> Vec<VertexSet> {
    sets(&[
        &[1, 5, 6, 7, 9],
        &[2, 3, 4, 7, 8, 10],
        &[3, 4, 5, 10],
        &[3, 5, 6, 7, 10],
        &[1, 2, 3, 8],
        &[1, 3, 6, 7, 8],
        &[0, 2, 4, 7],
        &[0, 1, 5, 9],
        &[0, 1, 2, 3, 4, 5, 6],
        &[0, 4, 5, 7, 9, 10],
        &[0, 1, 2, 7, 8, 9],
    ])
}

/// `0, e_1, ..., e_d`.
pub fn simplex_vertices(d: usize) -> Vec<Vector> {
    let mut v = vec![Vector::zeros(d)];
    v.extend((0..d).map(|i| Vector::unit(d, i)));
    v
}

/// 0/1 points of R^5 with two ones, in lexicographic order of the pair,
/// with the last coordinate dropped.
fn hypersimplex_vertices() -> Vec<Vector> {
    let mut v = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let mut x = [0i64; 5];
            x[i] = 1;
            x[j] = 1;
            v.push(Vector::from_ints(&x[..4]));
        }
    }
    v
}

/// `e_1, e_2, e_3, -e_1, -e_2, -e_3`.
pub fn octahedron_vertices() -> Vec<Vector> {
    ints(&[
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[-1, 0, 0],
        &[0, -1, 0],
        &[0, 0, -1],
    ])
}

fn cube_vertices() -> Vec<Vector> {
    let mut v = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                v.push(Vector::from_ints(&[x, y, z]));
            }
        }
    }
    v
}

/// Name, dimension, vertices, expected facets and expected f-vector.
type RawEntry = (&'static str, usize, Vec<Vector>, Option<Vec<VertexSet>>, Vec<u64>);

fn raw(name: &str) -> Option<RawEntry> {
    let name = NAMES.iter().copied().find(|n| *n == name)?;
    Some(match name {
        "simplex4" => (name, 4, simplex_vertices(4), None, vec![5, 10, 10, 5]),
        "P9" => (name, 4, p9_vertices(), Some(p9_facets()), vec![9, 26, 26, 9]),
        "P10" => (name, 4, p10_vertices(), Some(p10_facets()), vec![10, 30, 30, 10]),
        "P11" => (name, 4, p11_vertices(), Some(p11_facets()), vec![11, 34, 34, 11]),
        "hypersimplex" => (name, 4, hypersimplex_vertices(), None, vec![10, 30, 30, 10]),
        "octahedron3" => (name, 3, octahedron_vertices(), None, vec![6, 12, 8]),
        "cube3" => (name, 3, cube_vertices(), None, vec![8, 12, 6]),
        "frustum3" => (
            name,
            3,
            ints(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 2], &[2, 0, 2], &[0, 2, 2]]),
            None,
            vec![6, 9, 5],
        ),
        "prism3" => (
            name,
            3,
            ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]]),
            None,
            vec![6, 9, 5],
        ),
        _ => unreachable!("every catalog name is handled"),
    })
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let (name, dim, vertices, expected_incidences, f) =
        raw(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Ok(CatalogEntry {
        name,
        polytope: Polytope::from_points(dim, vertices)?,
        expected_incidences,
        expected_f: Some(FVector(f)),
    })
}

/// Shorthand for `get(name).polytope` on a name known to exist.
pub fn polytope(name: &str) -> Polytope {
    get(name)
        .unwrap_or_else(|e| panic!("catalog entry {name}: {e}"))
        .polytope
}

#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub name: &'static str,
    /// `None` when the entry carries no incidence list.
    pub incidences_match: Option<bool>,
    pub f_match: Option<bool>,
    pub self_dual: bool,
    pub analysis: AnalysisReport,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.incidences_match != Some(false)
            && self.f_match != Some(false)
            && self.analysis.euler_ok
            && self.analysis.dehn_sommerville_ok
    }
}

#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub entries: Vec<EntryCheck>,
    /// Entries that could not be built at all.
    pub failures: Vec<(&'static str, String)>,
}

impl CatalogReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.entries.iter().all(EntryCheck::ok)
    }
}

fn check(name: &'static str) -> Result<EntryCheck> {
    let entry = get(name)?;
    let p = &entry.polytope;
    let mut computed: Vec<VertexSet> = brute_force_facets(p.dim(), p.vertices(), Execution::Parallel)?
        .into_iter()
        .map(|f| f.vertices)
        .collect();
    computed.sort();
    let incidences_match = entry.expected_incidences.map(|mut e| {
        e.sort();
        e == computed
    });
    let lat = build_face_lattice(&entry.polytope)?;
    let analysis = analyze_lattice(&lat);
    Ok(EntryCheck {
        name,
        incidences_match,
        f_match: entry.expected_f.map(|f| f == analysis.fvec),
        self_dual: self_dual(&lat),
        analysis,
    })
}

/// Rebuilds every entry from its coordinates by exhaustive facet enumeration
/// and compares with the stored expectations.
pub fn verify_catalog() -> CatalogReport {
    let mut report = CatalogReport {
        entries: Vec::new(),
        failures: Vec::new(),
    };
    for &name in &NAMES {
        match check(name) {
            Ok(c) => report.entries.push(c),
            Err(e) => report.failures.push((name, e.to_string())),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(get("P12"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn p11_vertex_six() {
        let p = polytope("P11");
        assert_eq!(
            p.vertex(6),
            &Vector::new(vec![frac(-11, 21), frac(11, 21), frac(-11, 21), int(0)])
        );
    }

    #[test]
    fn everything_verifies() {
        let r = verify_catalog();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        for e in &r.entries {
            assert!(e.ok(), "{}: {:?}", e.name, e);
        }
    }
}
