//! The five-step and four-step pseudo-stacking pipelines on a labeled simplex
//! facet, the generator of elementary 2-simple 2-simplicial 4-polytopes, and
//! the pyramid route to `P11`.
//!
//! Steps are written with vertex labels: `0..=3` is the labeling of the input
//! simplex facet, and label `3 + s` is the vertex created by step `s`.
//! Edge labels used by the published tables are not needed; every facet is
//! named by vertices.

use std::collections::BTreeMap;

use num_traits::One;

use crate::analysis::analyze_lattice;
use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::{barycenter, Scalar, Vector};
use crate::iso::lattices_isomorphic;
use crate::lattice::build_face_lattice;
use crate::par::{self, Execution};
use crate::polytope::Polytope;
use crate::pseudostack::{
    adjacent_facets, bounded_position, normalize_bounded_position, resolve_step, stack_at,
    witness_for, Census, FacetSelector, StepSpec,
};
use crate::vset::VertexSet;

/// A simplex facet of a 4-polytope with an ordering `(v0, v1, v2, v3)` of its
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSimplexFacet {
    pub facet_index: usize,
    pub ordered_vertices: [usize; 4],
}

impl LabeledSimplexFacet {
    pub fn new(p: &Polytope, ordered_vertices: [usize; 4]) -> Result<Self> {
        let set = VertexSet::from(ordered_vertices);
        if set.len() != 4 {
            return Err(Error::InvalidStep(format!(
                "labeling {ordered_vertices:?} repeats a vertex"
            )));
        }
        let facet_index = p
            .facet_index(&set)
            .ok_or_else(|| Error::FaceNotFound(set.to_vec()))?;
        if p.dim() != 4 || !p.is_simplex_facet(facet_index) {
            return Err(Error::InvalidStep(format!("{set} is not a simplex facet of a 4-polytope")));
        }
        Ok(LabeledSimplexFacet {
            facet_index,
            ordered_vertices,
        })
    }

    /// The facet with its vertices in ascending order.
    pub fn ascending(p: &Polytope, facet_index: usize) -> Result<Self> {
        let v = p.facet(facet_index).vertices.to_vec();
        let arr: [usize; 4] = v
            .try_into()
            .map_err(|_| Error::InvalidStep(format!("facet {facet_index} is not a 3-simplex")))?;
        LabeledSimplexFacet::new(p, arr)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from(self.ordered_vertices)
    }
}

/// One executed step.
#[derive(Clone, Debug)]
pub struct TraceStep {
    /// The step with selectors in the vertex indices of its input.
    pub spec: StepSpec,
    pub new_vertex: usize,
    pub census: Census,
    pub point: Vector,
    /// The polytope after this step.
    pub polytope: Polytope,
}

#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    pub final_labeled_facet: LabeledSimplexFacet,
}

#[derive(Clone, Copy)]
enum Sel {
    /// The facet with exactly these labels.
    F(&'static [usize]),
    /// The unique facet containing these labels.
    Contains(&'static [usize]),
    /// The base neighbor across the ridge with these labels.
    Via(&'static [usize]),
}

struct StepDef {
    base: &'static [usize],
    f_set: &'static [Sel],
    n_set: &'static [Sel],
}

use Sel::{Contains, Via, F};

const I1_STEPS: [StepDef; 5] = [
    StepDef { base: &[0, 1, 2, 3], f_set: &[Via(&[0, 1, 2])], n_set: &[] },
    StepDef { base: &[0, 1, 3, 4], f_set: &[F(&[1, 2, 3, 4]), Via(&[0, 1, 3])], n_set: &[] },
    StepDef { base: &[0, 2, 3, 4], f_set: &[F(&[0, 3, 4, 5]), Via(&[0, 2, 3])], n_set: &[] },
    // The facet through v1..v4 gained v5 in step 2.
    StepDef { base: &[2, 3, 4, 6], f_set: &[Contains(&[1, 2, 3, 4]), Via(&[2, 3, 6])], n_set: &[] },
    StepDef {
        base: &[0, 2, 4, 6],
        f_set: &[Contains(&[0, 3, 4, 5, 6]), F(&[2, 4, 6, 7]), Via(&[0, 2, 4])],
        n_set: &[],
    },
];
const I1_FINAL: [usize; 4] = [0, 2, 6, 8];

const I2_STEPS: [StepDef; 4] = [
    StepDef { base: &[0, 1, 2, 3], f_set: &[Via(&[0, 1, 3])], n_set: &[] },
    StepDef { base: &[1, 2, 3, 4], f_set: &[F(&[0, 1, 2, 4]), Via(&[1, 2, 3])], n_set: &[] },
    StepDef {
        base: &[0, 2, 3, 4],
        f_set: &[Contains(&[0, 1, 2, 4, 5]), Via(&[0, 2, 3])],
        n_set: &[F(&[2, 3, 4, 5])],
    },
    StepDef {
        base: &[3, 4, 5, 6],
        f_set: &[F(&[0, 3, 4, 6]), F(&[1, 3, 4, 5]), F(&[2, 3, 5, 6])],
        n_set: &[],
    },
];
const I2_FINAL: [usize; 4] = [4, 5, 6, 7];

fn concrete(labels: &[usize], ls: &[usize]) -> VertexSet {
    ls.iter().map(|&l| labels[l]).collect()
}

fn spec_of(def: &StepDef, labels: &[usize]) -> StepSpec {
    let sel = |s: &Sel| match *s {
        F(ls) => FacetSelector::Exact(concrete(labels, ls)),
        Contains(ls) => FacetSelector::ContainsAll(concrete(labels, ls)),
        Via(ls) => FacetSelector::AdjacentToBaseVia(concrete(labels, ls)),
    };
    StepSpec {
        base: FacetSelector::Exact(concrete(labels, def.base)),
        f_set: def.f_set.iter().map(sel).collect(),
        n_set: def.n_set.iter().map(sel).collect(),
    }
}

/// One pseudo-stacking step at the unit-weight witness point.
pub fn stack_step(p: &Polytope, spec: &StepSpec) -> Result<(Polytope, TraceStep, Vec<Option<usize>>)> {
    let step = resolve_step(p, spec)?;
    let w = witness_for(p, &step, &vec![Scalar::one(); p.dim()])?;
    let out = stack_at(p, &step, &w.point)?;
    let trace = TraceStep {
        spec: spec.clone(),
        new_vertex: out.new_vertex,
        census: out.census,
        point: out.point,
        polytope: out.polytope.clone(),
    };
    Ok((out.polytope, trace, out.old_to_new))
}

fn run(
    p: &Polytope,
    s: &LabeledSimplexFacet,
    steps: &[StepDef],
    last: [usize; 4],
) -> Result<(Polytope, ConstructionTrace)> {
    if p.facet_index(&s.vertex_set()) != Some(s.facet_index) {
        return Err(Error::FaceNotFound(s.ordered_vertices.to_vec()));
    }
    let mut labels: Vec<usize> = s.ordered_vertices.to_vec();
    let mut cur = p.clone();
    let mut trace = Vec::with_capacity(steps.len());
    for (i, def) in steps.iter().enumerate() {
        let spec = spec_of(def, &labels);
        let (next, step, old_to_new) = stack_step(&cur, &spec).map_err(|e| e.at_step(i + 1))?;
        labels = labels
            .iter()
            .map(|&v| old_to_new[v])
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::InvalidStep(format!("step {} removed a labeled vertex", i + 1)).at_step(i + 1)
            })?;
        if next.num_vertices() != cur.num_vertices() + 1 {
            return Err(Error::InvalidStep("a vertex disappeared".into()).at_step(i + 1));
        }
        labels.push(step.new_vertex);
        trace.push(step);
        cur = next;
    }
    let final_set: [usize; 4] = last.map(|l| labels[l]);
    let mut sorted = final_set;
    sorted.sort_unstable();
    let final_labeled_facet = LabeledSimplexFacet::new(&cur, sorted)?;
    Ok((
        cur,
        ConstructionTrace {
            steps: trace,
            final_labeled_facet,
        },
    ))
}

/// Five pseudo-stacking steps adding five vertices.
pub fn construct_i1(p: &Polytope, s: &LabeledSimplexFacet) -> Result<(Polytope, ConstructionTrace)> {
    run(p, s, &I1_STEPS, I1_FINAL)
}

/// Four pseudo-stacking steps adding four vertices.
pub fn construct_i2(p: &Polytope, s: &LabeledSimplexFacet) -> Result<(Polytope, ConstructionTrace)> {
    run(p, s, &I2_STEPS, I2_FINAL)
}

/// Which pipeline to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    I1,
    I2,
}

impl Pipeline {
    pub fn added_vertices(self) -> usize {
        match self {
            Pipeline::I1 => 5,
            Pipeline::I2 => 4,
        }
    }

    pub fn apply(self, p: &Polytope, s: &LabeledSimplexFacet) -> Result<(Polytope, ConstructionTrace)> {
        match self {
            Pipeline::I1 => construct_i1(p, s),
            Pipeline::I2 => construct_i2(p, s),
        }
    }
}

/// `conv(p x {0} + (barycenter, 1))`.
pub fn pyramid(p: &Polytope) -> Result<Polytope> {
    let n = p.num_vertices();
    let mut vertices: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| v.extended(Scalar::from_integer(0.into())))
        .collect();
    vertices.push(p.interior_point().extended(Scalar::one()));
    let mut sets = vec![VertexSet::full(n)];
    for f in p.facets() {
        let mut s = f.vertices.clone();
        s.insert(n);
        sets.push(s);
    }
    Polytope::from_facet_sets(p.dim() + 1, vertices, sets)
}

/// Stacks a simplex facet.
pub fn stack(p: &Polytope, facet: usize) -> Result<Polytope> {
    let spec = StepSpec::stacking(FacetSelector::Exact(p.facet(facet).vertices.clone()));
    Ok(stack_step(p, &spec)?.0)
}

/// Lowest-indexed simplex facet in bounded position, normalizing the
/// polytope projectively when none is.
pub fn chain_start(p: &Polytope) -> Result<(Polytope, LabeledSimplexFacet)> {
    let simplices = p.simplex_facets();
    if let Some(&i) = simplices.iter().find(|&&i| bounded_position(p, i)) {
        return Ok((p.clone(), LabeledSimplexFacet::ascending(p, i)?));
    }
    let &first = simplices
        .first()
        .ok_or_else(|| Error::InvalidStep("no simplex facet to start from".into()))?;
    let q = normalize_bounded_position(p, first)?;
    let s = LabeledSimplexFacet::ascending(&q, first)?;
    Ok((q, s))
}

/// Applies `pipeline` to `p` at `s`, normalizing first if `s` is not in
/// bounded position.
fn apply_bounded(
    pipeline: Pipeline,
    p: &Polytope,
    s: &LabeledSimplexFacet,
) -> Result<(Polytope, LabeledSimplexFacet)> {
    let q = if bounded_position(p, s.facet_index) {
        p.clone()
    } else {
        normalize_bounded_position(p, s.facet_index)?
    };
    let (r, trace) = pipeline.apply(&q, s)?;
    Ok((r, trace.final_labeled_facet))
}

/// How the generator reaches `k` vertices: a catalog base and the pipelines
/// to apply in order.
pub fn route(k: usize) -> Result<(&'static str, Vec<Pipeline>)> {
    match k {
        5 => Ok(("simplex4", vec![])),
        9 => Ok(("P9", vec![])),
        10 => Ok(("P10", vec![])),
        11 => Ok(("P11", vec![])),
        k if k >= 13 => {
            let (base, first): (&str, Vec<Pipeline>) = match k % 4 {
                1 => ("P9", vec![]),
                2 => ("P10", vec![]),
                3 => ("P11", vec![]),
                _ => ("P11", vec![Pipeline::I1]),
            };
            let start = catalog::get(base)?.polytope.num_vertices() + 5 * first.len();
            let mut steps = first;
            steps.extend(std::iter::repeat_n(Pipeline::I2, (k - start) / 4));
            Ok((base, steps))
        }
        _ => Err(Error::UnsupportedVertexCount(k)),
    }
}

fn verify_elementary(p: &Polytope, k: usize) -> Result<()> {
    let lat = build_face_lattice(p)?;
    let r = analyze_lattice(&lat);
    if p.num_vertices() != k || r.on_ell1 != Some(true) || !r.euler_ok || !r.dehn_sommerville_ok {
        return Err(Error::Verification(format!(
            "generated polytope for k = {k} has f = {} and is not elementary 2-simple 2-simplicial",
            r.fvec
        )));
    }
    Ok(())
}

/// An elementary 2-simple 2-simplicial 4-polytope with `k` vertices.
pub fn generate_elementary_2s2s(k: usize) -> Result<Polytope> {
    let (base, steps) = route(k)?;
    let p = catalog::get(base)?.polytope;
    if steps.is_empty() {
        return Ok(p);
    }
    let (mut cur, mut s) = chain_start(&p)?;
    for pipe in steps {
        (cur, s) = apply_bounded(pipe, &cur, &s)?;
    }
    verify_elementary(&cur, k)?;
    Ok(cur)
}

/// Generates every supported vertex count in `ks`, sharing work along each
/// chain. Chains for different residues run independently under `exec`.
pub fn generate_many(ks: &[usize], exec: Execution) -> Result<BTreeMap<usize, Polytope>> {
    let mut chains: BTreeMap<(&'static str, bool), usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for &k in ks {
        let (base, steps) = route(k)?;
        if steps.is_empty() {
            out.insert(k, catalog::get(base)?.polytope);
            continue;
        }
        let key = (base, steps[0] == Pipeline::I1);
        let e = chains.entry(key).or_insert(0);
        *e = (*e).max(k);
    }
    let chains: Vec<((&'static str, bool), usize)> = chains.into_iter().collect();
    let results = par::map_slice(exec, &chains, |&(_, max_k)| -> Result<Vec<(usize, Polytope)>> {
        let (base, steps) = route(max_k)?;
        let (mut cur, mut s) = chain_start(&catalog::get(base)?.polytope)?;
        let mut made = Vec::with_capacity(steps.len());
        for pipe in steps {
            (cur, s) = apply_bounded(pipe, &cur, &s)?;
            made.push((cur.num_vertices(), cur.clone()));
        }
        Ok(made)
    });
    for r in results {
        for (k, p) in r? {
            if ks.contains(&k) {
                verify_elementary(&p, k)?;
                out.insert(k, p);
            }
        }
    }
    Ok(out)
}

/// The pyramid route to `P11`: stack a facet `R` of the octahedron, take the
/// pyramid, then pseudo-stack the pyramid over each neighbor `R_i` of `R`
/// together with its three neighbors through the apex.
pub fn build_p11_via_octahedron() -> Result<Polytope> {
    let o = Polytope::from_points(3, catalog::octahedron_vertices())?;
    let r_set = VertexSet::from([1, 3, 5]);
    let r = o.facet_index(&r_set).ok_or_else(|| Error::FaceNotFound(r_set.to_vec()))?;
    let neighbors: Vec<VertexSet> = adjacent_facets(&o, r)
        .into_iter()
        .map(|i| o.facet(i).vertices.clone())
        .collect();
    let b = stack(&o, r)?;
    let mut cur = pyramid(&b)?;
    let apex = cur.num_vertices() - 1;
    for (i, ri) in neighbors.iter().enumerate() {
        let mut fi = ri.clone();
        fi.insert(apex);
        let base = cur.facet_index(&fi).ok_or_else(|| Error::FaceNotFound(fi.to_vec()))?;
        let f_set: Vec<usize> = adjacent_facets(&cur, base)
            .into_iter()
            .filter(|&g| cur.facet(g).vertices.contains(apex))
            .collect();
        if f_set.len() != 3 {
            return Err(Error::InvalidStep(format!(
                "pyramid over {ri} has {} neighbors through the apex",
                f_set.len()
            ))
            .at_step(i + 1));
        }
        if !bounded_position(&cur, base) {
            cur = normalize_bounded_position(&cur, base).map_err(|e| e.at_step(i + 1))?;
        }
        let spec = StepSpec::from_indices(&cur, base, &f_set, &[]);
        cur = stack_step(&cur, &spec).map_err(|e| e.at_step(i + 1))?.0;
    }
    let target = build_face_lattice(&catalog::polytope("P11"))?;
    if lattices_isomorphic(&build_face_lattice(&cur)?, &target).is_none() {
        return Err(Error::Verification(
            "the pyramid route does not reproduce P11".into(),
        ));
    }
    Ok(cur)
}

/// Barycenter of a vertex subset.
pub fn face_barycenter(p: &Polytope, set: &VertexSet) -> Result<Vector> {
    barycenter(&set.iter().map(|i| p.vertex(i)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex() -> Polytope {
        catalog::polytope("simplex4")
    }

    fn fvec(p: &Polytope) -> Vec<u64> {
        build_face_lattice(p).unwrap().f_vector().0
    }

    #[test]
    fn i1_on_simplex() {
        let p = simplex();
        let s = LabeledSimplexFacet::new(&p, [0, 1, 2, 3]).unwrap();
        let (q, t) = construct_i1(&p, &s).unwrap();
        assert_eq!(fvec(&q), vec![10, 30, 30, 10]);
        assert_eq!(t.steps.len(), 5);
        // vertex 4 of the simplex is off the base, so label v_j is vertex j + 1 for j >= 4
        assert_eq!(t.final_labeled_facet.ordered_vertices, [0, 2, 7, 9]);
    }

    #[test]
    fn i2_on_simplex_is_p9() {
        let p = simplex();
        let s = LabeledSimplexFacet::new(&p, [0, 1, 2, 3]).unwrap();
        let (q, t) = construct_i2(&p, &s).unwrap();
        let p9 = build_face_lattice(&catalog::polytope("P9")).unwrap();
        assert!(lattices_isomorphic(&build_face_lattice(&q).unwrap(), &p9).is_some());
        assert!(bounded_position(&q, t.final_labeled_facet.facet_index));
    }

    #[test]
    fn pyramid_and_stack() {
        let sq = Polytope::from_points(
            2,
            vec![
                Vector::from_ints(&[0, 0]),
                Vector::from_ints(&[1, 0]),
                Vector::from_ints(&[1, 1]),
                Vector::from_ints(&[0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(fvec(&pyramid(&sq).unwrap()), vec![5, 8, 5]);
        assert_eq!(fvec(&stack(&simplex(), 0).unwrap()), vec![6, 14, 16, 8]);
    }

    #[test]
    fn unsupported_counts() {
        for k in [0, 4, 6, 7, 8, 12] {
            assert!(matches!(
                generate_elementary_2s2s(k),
                Err(Error::UnsupportedVertexCount(_))
            ));
        }
    }

    #[test]
    fn octahedron_route() {
        let p = build_p11_via_octahedron().unwrap();
        assert_eq!(fvec(&p), vec![11, 34, 34, 11]);
    }

    #[test]
    fn thirteen() {
        let p = generate_elementary_2s2s(13).unwrap();
        assert_eq!(fvec(&p), vec![13, 42, 42, 13]);
    }
}
