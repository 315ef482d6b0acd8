//! Pseudo-stacking: `conv(P + v)` for a point `v` that lies beyond a simplex
//! facet `S` and the facets of a set `N`, on the hyperplanes of the facets of
//! a set `F`, and beneath every other facet hyperplane. `F` and `N` are
//! disjoint sets of neighbors of `S`.
//!
//! The hull update is a beneath-beyond step driven by the side of `v` with
//! respect to every facet hyperplane:
//! - facets with `v` beneath are kept;
//! - facets with `v` beyond are dropped;
//! - every ridge between a kept and a dropped facet becomes a pyramid with
//!   apex `v`;
//! - every facet whose hyperplane contains `v` is replaced by the hull of the
//!   facet and `v` inside that hyperplane, computed by the same rule one
//!   dimension lower.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{barycenter, frac, solve_square, Hyperplane, Scalar, Side, Vector};
use crate::lattice::{build_face_lattice, FaceLattice};
use crate::polytope::{Facet, Polytope};
use crate::vset::VertexSet;

/// Largest number of halvings of the witness scale before giving up.
pub const MAX_HALVINGS: u32 = 256;

/// Names one facet of the current polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FacetSelector {
    /// The facet with exactly this vertex set.
    Exact(VertexSet),
    /// The unique facet containing all of these vertices.
    ContainsAll(VertexSet),
    /// The unique facet other than the base that contains this ridge of the
    /// base.
    AdjacentToBaseVia(VertexSet),
}

impl FacetSelector {
    pub fn contains_all(vs: impl IntoIterator<Item = usize>) -> Self {
        FacetSelector::ContainsAll(vs.into_iter().collect())
    }

    pub fn via(vs: impl IntoIterator<Item = usize>) -> Self {
        FacetSelector::AdjacentToBaseVia(vs.into_iter().collect())
    }

    /// The facet index this selector names in `p`.
    pub fn resolve(&self, p: &Polytope, base: Option<usize>) -> Result<usize> {
        let unique = |cands: Vec<usize>, what: &dyn fmt::Display| match cands[..] {
            [i] => Ok(i),
            [] => Err(Error::SelectorUnresolved(format!("no facet {what}"))),
            _ => Err(Error::SelectorUnresolved(format!(
                "{} facets {what}",
                cands.len()
            ))),
        };
        match self {
            FacetSelector::Exact(set) => p
                .facet_index(set)
                .ok_or_else(|| Error::SelectorUnresolved(format!("no facet equals {set}"))),
            FacetSelector::ContainsAll(set) => {
                unique(p.facets_containing(set), &format_args!("contains {set}"))
            }
            FacetSelector::AdjacentToBaseVia(ridge) => {
                let b = base.ok_or_else(|| {
                    Error::SelectorUnresolved(format!("ridge {ridge} needs a base facet"))
                })?;
                if !ridge.is_subset(&p.facet(b).vertices) {
                    return Err(Error::SelectorUnresolved(format!(
                        "{ridge} is not part of the base facet {}",
                        p.facet(b).vertices
                    )));
                }
                let cands = p
                    .facets_containing(ridge)
                    .into_iter()
                    .filter(|&i| i != b)
                    .collect();
                unique(cands, &format_args!("besides the base contains {ridge}"))
            }
        }
    }
}

impl fmt::Display for FacetSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetSelector::Exact(s) => write!(f, "={s}"),
            FacetSelector::ContainsAll(s) => write!(f, "F{s}"),
            FacetSelector::AdjacentToBaseVia(s) => write!(f, "via{s}"),
        }
    }
}

/// One pseudo-stacking step: a simplex base facet and the two disjoint sets
/// of its neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSpec {
    pub base: FacetSelector,
    pub f_set: Vec<FacetSelector>,
    pub n_set: Vec<FacetSelector>,
}

impl StepSpec {
    pub fn stacking(base: FacetSelector) -> Self {
        StepSpec {
            base,
            f_set: Vec::new(),
            n_set: Vec::new(),
        }
    }

    /// A spec naming facets of `p` by their exact vertex sets.
    pub fn from_indices(p: &Polytope, base: usize, f_set: &[usize], n_set: &[usize]) -> Self {
        let sel = |i: &usize| FacetSelector::Exact(p.facet(*i).vertices.clone());
        StepSpec {
            base: sel(&base),
            f_set: f_set.iter().map(sel).collect(),
            n_set: n_set.iter().map(sel).collect(),
        }
    }
}

impl fmt::Display for StepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[FacetSelector]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "S={} F=[{}] N=[{}]",
            self.base,
            list(&self.f_set),
            list(&self.n_set)
        )
    }
}

/// A step spec resolved against a polytope. `neighbors[j]` is the facet
/// across the ridge of the base that misses `base_vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedStep {
    pub base: usize,
    pub f_set: Vec<usize>,
    pub n_set: Vec<usize>,
    pub base_vertices: Vec<usize>,
    pub neighbors: Vec<usize>,
}

impl ResolvedStep {
    /// Side of the witness point expected for facet `i`.
    pub fn expected_side(&self, i: usize) -> Side {
        if i == self.base || self.n_set.contains(&i) {
            Side::Beyond
        } else if self.f_set.contains(&i) {
            Side::On
        } else {
            Side::Beneath
        }
    }

    pub fn is_affected(&self, i: usize) -> bool {
        self.expected_side(i) != Side::Beneath
    }
}

/// `(psi, g)` for every facet `psi` of the face `face`, where `g` is a facet
/// of `p` with `face & g = psi`. Faces of `face` are exactly the intersections
/// with facets not containing it; the facets are the maximal ones.
fn face_facets(p: &Polytope, face: &VertexSet) -> Vec<(VertexSet, usize)> {
    let mut inters: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for (g, f) in p.facets().iter().enumerate() {
        if face.is_subset(&f.vertices) {
            continue;
        }
        inters.entry(face.intersection(&f.vertices)).or_insert(g);
    }
    let all: Vec<(VertexSet, usize)> = inters.into_iter().collect();
    all.iter()
        .filter(|(s, _)| !all.iter().any(|(t, _)| s.is_proper_subset(t)))
        .cloned()
        .collect()
}

/// Facets sharing a ridge with facet `i`.
pub fn adjacent_facets(p: &Polytope, i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = face_facets(p, &p.facet(i).vertices)
        .into_iter()
        .map(|(_, g)| g)
        .collect();
    out.sort_unstable();
    out
}

/// Ridges of facet `i` with the facet on the other side of each.
pub fn ridges_of(p: &Polytope, i: usize) -> Vec<(VertexSet, usize)> {
    face_facets(p, &p.facet(i).vertices)
}

/// No two facets of `f_set` are adjacent while sharing a `(d-3)`-face with
/// the facet `s`.
pub fn is_nonsimple(p: &Polytope, s: usize, f_set: &[usize]) -> bool {
    let d = p.dim();
    let sv = &p.facet(s).vertices;
    for (a, &g) in f_set.iter().enumerate() {
        for &h in &f_set[a + 1..] {
            let gh = p.facet(g).vertices.intersection(&p.facet(h).vertices);
            if rank_of(p, &gh) != Some(d - 2) {
                continue;
            }
            if d >= 3 && rank_of(p, &gh.intersection(sv)) == Some(d - 3) {
                return false;
            }
        }
    }
    true
}

fn rank_of(p: &Polytope, set: &VertexSet) -> Option<usize> {
    if set.is_empty() {
        return None;
    }
    let pts: Vec<&Vector> = set.iter().map(|i| p.vertex(i)).collect();
    crate::exact::affine_rank(&pts).ok()
}

/// Neighbors of the simplex facet `s` ordered like its vertices:
/// `(vertices, neighbors)` with `neighbors[j]` missing `vertices[j]`.
fn simplex_neighbors(p: &Polytope, s: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if !p.is_simplex_facet(s) {
        return Err(Error::InvalidStep(format!(
            "base facet {} is not a simplex",
            p.facet(s).vertices
        )));
    }
    let verts = p.facet(s).vertices.to_vec();
    let mut neighbors = Vec::with_capacity(verts.len());
    for &pj in &verts {
        let mut ridge = p.facet(s).vertices.clone();
        ridge.remove(pj);
        let n = FacetSelector::AdjacentToBaseVia(ridge).resolve(p, Some(s))?;
        neighbors.push(n);
    }
    Ok((verts, neighbors))
}

/// Resolves and validates `spec` against `p`.
pub fn resolve_step(p: &Polytope, spec: &StepSpec) -> Result<ResolvedStep> {
    let base = spec.base.resolve(p, None)?;
    let (base_vertices, neighbors) = simplex_neighbors(p, base)?;
    let resolve_all = |sels: &[FacetSelector]| -> Result<Vec<usize>> {
        sels.iter().map(|s| s.resolve(p, Some(base))).collect()
    };
    let f_set = resolve_all(&spec.f_set)?;
    let n_set = resolve_all(&spec.n_set)?;
    for &i in f_set.iter().chain(&n_set) {
        if !neighbors.contains(&i) {
            return Err(Error::InvalidStep(format!(
                "facet {} is not adjacent to the base {}",
                p.facet(i).vertices,
                p.facet(base).vertices
            )));
        }
    }
    let mut all: Vec<usize> = f_set.iter().chain(&n_set).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != f_set.len() + n_set.len() {
        return Err(Error::InvalidStep(
            "the stacked and the covered sets overlap or repeat a facet".into(),
        ));
    }
    if !is_nonsimple(p, base, &f_set) {
        return Err(Error::NotNonsimple);
    }
    Ok(ResolvedStep {
        base,
        f_set,
        n_set,
        base_vertices,
        neighbors,
    })
}

/// The common point of the neighbor hyperplanes of the simplex facet `s`,
/// if they meet in exactly one point.
pub fn neighbor_apex(p: &Polytope, s: usize) -> Result<Option<Vector>> {
    let (_, neighbors) = simplex_neighbors(p, s)?;
    let rows: Vec<Hyperplane> = neighbors
        .iter()
        .map(|&i| p.facet(i).hyperplane.clone())
        .collect();
    match solve_square(&rows) {
        Ok(x) => Ok(Some(x)),
        Err(Error::NoUniqueSolution) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The neighbor hyperplanes of the simplex facet `s` meet in a single point
/// beyond `s`. Non-simplex facets report `false`.
pub fn bounded_position(p: &Polytope, s: usize) -> bool {
    match neighbor_apex(p, s) {
        Ok(Some(x)) => p.facet(s).hyperplane.classify(&x).ok() == Some(Side::Beyond),
        _ => false,
    }
}

/// A point of the pseudo-stacking region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPoint {
    pub point: Vector,
    /// The final scale of the offset from the apex (or from the barycenter in
    /// the fallback).
    pub epsilon: Scalar,
    /// The meeting point of the neighbor hyperplanes; `None` when the
    /// barycentric fallback produced the point.
    pub apex: Option<Vector>,
}

/// `x` has the expected side with respect to every facet hyperplane.
pub fn in_region(p: &Polytope, step: &ResolvedStep, x: &Vector) -> bool {
    p.facets().iter().enumerate().all(|(i, f)| {
        f.hyperplane.classify(x).ok() == Some(step.expected_side(i))
    })
}

/// A witness point with unit weights.
pub fn witness_point(p: &Polytope, spec: &StepSpec) -> Result<WitnessPoint> {
    let step = resolve_step(p, spec)?;
    let ones = vec![Scalar::one(); p.dim()];
    witness_for(p, &step, &ones)
}

/// A witness point with the given positive weights, one per vertex of the
/// base facet (in ascending vertex order). Different weights give different
/// points of the same region.
///
/// With the base in bounded position the point is
/// `apex + eps * (sum_{free j} w_j v_j - sum_{j in N} w_j v_j)` where
/// `v_j = p_j - apex`, `p_j` is the base vertex missing from neighbor `j`, and
/// `free` means neither in `F` nor in `N`. Otherwise only `N` empty and
/// `|F| <= 1` are supported, by pushing a weighted barycenter of the base
/// (or of its ridge with the single `F` facet) away from the barycenter of
/// the polytope (or of that facet).
pub fn witness_for(p: &Polytope, step: &ResolvedStep, weights: &[Scalar]) -> Result<WitnessPoint> {
    let d = p.dim();
    if weights.len() != d || weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidStep(format!(
            "need {d} positive witness weights"
        )));
    }
    let base_h = &p.facet(step.base).hyperplane;
    let apex = neighbor_apex(p, step.base)?;
    if let Some(apex) = apex.filter(|a| base_h.classify(a).ok() == Some(Side::Beyond)) {
        let mut dir = Vector::zeros(d);
        for (j, (&pj, &nj)) in step.base_vertices.iter().zip(&step.neighbors).enumerate() {
            let vj = (p.vertex(pj) - &apex).scale(&weights[j]);
            if step.n_set.contains(&nj) {
                dir = &dir - &vj;
            } else if !step.f_set.contains(&nj) {
                dir = &dir + &vj;
            }
        }
        return halve_until(p, step, Some(apex.clone()), |eps| &apex + &dir.scale(eps));
    }
    if !step.n_set.is_empty() || step.f_set.len() > 1 {
        return Err(Error::RegionEmptyOrUnsupported(format!(
            "base facet {} is not in bounded position and the step needs |N| = 0, |F| <= 1",
            p.facet(step.base).vertices
        )));
    }
    let weighted = |idx: &[usize]| -> Vector {
        let mut sum = Vector::zeros(d);
        let mut total = Scalar::zero();
        for &v in idx {
            let j = step.base_vertices.iter().position(|&b| b == v).expect("base vertex");
            sum = &sum + &p.vertex(v).scale(&weights[j]);
            total += &weights[j];
        }
        sum.scale(&(Scalar::one() / total))
    };
    let (from, away) = match step.f_set.first() {
        Some(&f) => {
            let ridge: Vec<usize> = p.facet(step.base).vertices.intersection(&p.facet(f).vertices).to_vec();
            let fv: Vec<&Vector> = p.facet(f).vertices.iter().map(|i| p.vertex(i)).collect();
            (weighted(&ridge), barycenter(&fv)?)
        }
        None => (weighted(&step.base_vertices), p.interior_point()),
    };
    let dir = &from - &away;
    halve_until(p, step, None, |s| &from + &dir.scale(s))
}

fn halve_until(
    p: &Polytope,
    step: &ResolvedStep,
    apex: Option<Vector>,
    at: impl Fn(&Scalar) -> Vector,
) -> Result<WitnessPoint> {
    let half = frac(1, 2);
    let mut eps = Scalar::one();
    for _ in 0..=MAX_HALVINGS {
        let x = at(&eps);
        if in_region(p, step, &x) {
            return Ok(WitnessPoint {
                point: x,
                epsilon: eps,
                apex,
            });
        }
        eps *= &half;
    }
    Err(Error::RegionEmptyOrUnsupported(format!(
        "no witness for base {} after {MAX_HALVINGS} halvings",
        p.facet(step.base).vertices
    )))
}

/// How each facet of a pseudo-stacking arose. All vertex sets use the
/// indices of the result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    /// Facets of the input that are neither the base nor in `F` or `N`.
    pub unchanged: Vec<VertexSet>,
    /// Pyramids over ridges between the base and an unaffected neighbor.
    pub over_base: Vec<VertexSet>,
    /// Pyramids over ridges between an `N` facet and an unaffected facet.
    pub over_n: Vec<VertexSet>,
    /// The `F` facets, each grown by the new vertex.
    pub restacked: Vec<VertexSet>,
}

/// Result of a beneath-beyond update.
#[derive(Clone, Debug)]
pub struct StackOutcome {
    pub polytope: Polytope,
    /// Index of the new vertex (always the last).
    pub new_vertex: usize,
    /// `old_to_new[i]`: index of old vertex `i` in the result, `None` if it
    /// is no longer a vertex.
    pub old_to_new: Vec<Option<usize>>,
    pub census: Census,
    pub point: Vector,
}

impl StackOutcome {
    pub fn map_set(&self, set: &VertexSet) -> Option<VertexSet> {
        set.iter().map(|i| self.old_to_new[i]).collect::<Option<Vec<_>>>().map(VertexSet::from_iter)
    }
}

/// `conv(p + v)` for any point `v` outside `p`.
///
/// The census is filled relative to the facets `v` lies beyond: pyramids
/// over ridges of `base` go to `over_base`, all other pyramids to `over_n`.
pub fn beneath_beyond(p: &Polytope, v: &Vector, base: Option<usize>) -> Result<StackOutcome> {
    let sides: Vec<Side> = p
        .facets()
        .iter()
        .map(|f| f.hyperplane.classify(v))
        .collect::<Result<_>>()?;
    if !sides.contains(&Side::Beyond) {
        return Err(Error::Degenerate("the new point is not outside the polytope".into()));
    }
    let n = p.num_vertices();
    let mut keep = VertexSet::new();
    for (f, s) in p.facets().iter().zip(&sides) {
        if *s == Side::Beneath {
            keep = keep.union(&f.vertices);
        }
    }
    let mut old_to_new = vec![None; n];
    let mut vertices = Vec::with_capacity(keep.len() + 1);
    for i in keep.iter() {
        old_to_new[i] = Some(vertices.len());
        vertices.push(p.vertex(i).clone());
    }
    let apex = vertices.len();
    vertices.push(v.clone());
    let remap = |s: &VertexSet| -> VertexSet {
        s.iter()
            .map(|i| old_to_new[i].expect("surviving vertex"))
            .collect()
    };
    let inside = p.interior_point();

    let mut facets = Vec::new();
    let mut census = Census::default();
    for (i, f) in p.facets().iter().enumerate() {
        match sides[i] {
            Side::Beneath => {
                let set = remap(&f.vertices);
                census.unchanged.push(set.clone());
                facets.push(Facet {
                    hyperplane: f.hyperplane.clone(),
                    vertices: set,
                });
                for (ridge, g) in face_facets(p, &f.vertices) {
                    if sides[g] != Side::Beyond {
                        continue;
                    }
                    let mut pts: Vec<&Vector> = ridge.iter().map(|j| p.vertex(j)).collect();
                    pts.push(v);
                    let hyperplane = Hyperplane::through(&pts, &inside)?;
                    let mut set = remap(&ridge);
                    set.insert(apex);
                    if Some(g) == base {
                        census.over_base.push(set.clone());
                    } else {
                        census.over_n.push(set.clone());
                    }
                    facets.push(Facet {
                        hyperplane,
                        vertices: set,
                    });
                }
            }
            Side::On => {
                let grown = surviving_in(p, &sides, &f.vertices);
                let mut set = remap(&grown);
                set.insert(apex);
                census.restacked.push(set.clone());
                facets.push(Facet {
                    hyperplane: f.hyperplane.clone(),
                    vertices: set,
                });
            }
            Side::Beyond => {}
        }
    }
    let polytope = Polytope::new(p.dim(), vertices, facets)?;
    for list in [
        &mut census.unchanged,
        &mut census.over_base,
        &mut census.over_n,
        &mut census.restacked,
    ] {
        list.sort();
    }
    Ok(StackOutcome {
        polytope,
        new_vertex: apex,
        old_to_new,
        census,
        point: v.clone(),
    })
}

/// Vertices of `face` that stay vertices of `conv(face + v)`, where `v` lies
/// in the affine hull of `face`. The side of `v` relative to a facet `psi` of
/// the face is its side relative to any facet of `p` cutting out `psi`.
fn surviving_in(p: &Polytope, sides: &[Side], face: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for (psi, g) in face_facets(p, face) {
        match sides[g] {
            Side::Beneath => out = out.union(&psi),
            Side::On => out = out.union(&surviving_in(p, sides, &psi)),
            Side::Beyond => {}
        }
    }
    out
}

/// Pseudo-stacks `p` at the unit-weight witness point.
pub fn pseudo_stack(p: &Polytope, spec: &StepSpec) -> Result<Polytope> {
    Ok(pseudo_stack_outcome(p, spec)?.polytope)
}

pub fn pseudo_stack_outcome(p: &Polytope, spec: &StepSpec) -> Result<StackOutcome> {
    let step = resolve_step(p, spec)?;
    let w = witness_for(p, &step, &vec![Scalar::one(); p.dim()])?;
    stack_at(p, &step, &w.point)
}

/// Pseudo-stacks `p` at a given point, which must lie in the region.
pub fn stack_at(p: &Polytope, step: &ResolvedStep, v: &Vector) -> Result<StackOutcome> {
    if !in_region(p, step, v) {
        return Err(Error::RegionEmptyOrUnsupported(format!(
            "{v} is not in the region of base {}",
            p.facet(step.base).vertices
        )));
    }
    beneath_beyond(p, v, Some(step.base))
}

/// Edges `[v, v']` the step creates: one per vertex of the base and of the
/// single `N` facet, so `d + f0(N) - f0(S ∩ N)`.
pub fn forecast_new_edges(p: &Polytope, spec: &StepSpec) -> Result<usize> {
    let step = resolve_step(p, spec)?;
    let s = &p.facet(step.base).vertices;
    match step.n_set[..] {
        [] => Ok(p.dim()),
        [nf] => {
            let nv = &p.facet(nf).vertices;
            let covered = s.union(nv).iter().all(|v| {
                p.facets()
                    .iter()
                    .enumerate()
                    .any(|(i, g)| !step.is_affected(i) && g.vertices.contains(v))
            });
            if !covered {
                return Err(Error::UnsupportedSpec(
                    "a vertex of the base or of N lies only in affected facets".into(),
                ));
            }
            Ok(p.dim() + nv.len() - s.intersection(nv).len())
        }
        _ => Err(Error::UnsupportedSpec(format!(
            "edge forecast needs |N| <= 1, got {}",
            step.n_set.len()
        ))),
    }
}

/// `f1` of the result: edges of `p` inside an untouched facet plus the new
/// edges. With `N` present an old edge can lie only in `S`, `F` and `N`
/// facets and vanish, so the count is not always `f1 + new`.
pub fn forecast_edge_count(p: &Polytope, lat: &FaceLattice, spec: &StepSpec) -> Result<usize> {
    let step = resolve_step(p, spec)?;
    let added = forecast_new_edges(p, spec)?;
    let kept = lat
        .edges()
        .iter()
        .filter(|e| {
            p.facets()
                .iter()
                .enumerate()
                .any(|(i, g)| !step.is_affected(i) && e.is_subset(&g.vertices))
        })
        .count();
    Ok(kept + added)
}

/// Predicted fate of a subridge `G` of the base or of the single `N` facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubridgeForecast {
    /// Number of `F` facets containing `G`; at most 2.
    pub phi: usize,
    /// 1 when `G` lies in both `N` and the base, else 0.
    pub epsilon_indicator: usize,
    pub survives: bool,
    /// Facet degree of `G` in the result, when it survives.
    pub predicted_degree: Option<usize>,
}

pub fn forecast_subridge_degree(
    p: &Polytope,
    lat: &FaceLattice,
    spec: &StepSpec,
    g: &VertexSet,
) -> Result<SubridgeForecast> {
    let step = resolve_step(p, spec)?;
    let d = p.dim();
    if step.n_set.len() > 1 {
        return Err(Error::UnsupportedSpec(format!(
            "subridge forecast needs |N| <= 1, got {}",
            step.n_set.len()
        )));
    }
    let is_subridge = d >= 3 && matches!(lat.locate(g), Some((k, _)) if k == d as isize - 3);
    let in_s = g.is_subset(&p.facet(step.base).vertices);
    let in_n = step
        .n_set
        .first()
        .is_some_and(|&nf| g.is_subset(&p.facet(nf).vertices));
    if !is_subridge || !(in_s || in_n) {
        return Err(Error::NotASubridge(g.to_vec()));
    }
    let phi = step
        .f_set
        .iter()
        .filter(|&&f| g.is_subset(&p.facet(f).vertices))
        .count();
    let fdeg = lat.face_degree(g)?;
    if !in_n {
        return Ok(SubridgeForecast {
            phi,
            epsilon_indicator: 0,
            survives: true,
            predicted_degree: Some(fdeg + 1 - phi),
        });
    }
    let eps = usize::from(in_s);
    let survives = p
        .facets()
        .iter()
        .enumerate()
        .any(|(i, f)| !step.is_affected(i) && g.is_subset(&f.vertices));
    Ok(SubridgeForecast {
        phi,
        epsilon_indicator: eps,
        survives,
        predicted_degree: survives.then(|| fdeg + 1 - eps - phi),
    })
}

/// Faces of dimension `0..=d-2` that lie in at least one facet the step does
/// not touch; exactly these remain faces.
pub fn surviving_faces(p: &Polytope, lat: &FaceLattice, spec: &StepSpec) -> Result<Vec<VertexSet>> {
    let step = resolve_step(p, spec)?;
    let free: Vec<&VertexSet> = p
        .facets()
        .iter()
        .enumerate()
        .filter(|(i, _)| !step.is_affected(*i))
        .map(|(_, f)| &f.vertices)
        .collect();
    let mut out = Vec::new();
    for k in 0..p.dim().saturating_sub(1) {
        for face in lat.faces(k) {
            if free.iter().any(|f| face.is_subset(f)) {
                out.push(face.clone());
            }
        }
    }
    Ok(out)
}

/// `x -> (x - c) / (beta - <a, x - c>)`, which must keep every vertex on the
/// positive side of the vanishing hyperplane.
pub fn projective_image(p: &Polytope, c: &Vector, a: &Vector, beta: &Scalar) -> Result<Polytope> {
    for v in p.vertices() {
        if !(beta - a.dot(&(v - c))).is_positive() {
            return Err(Error::Degenerate(
                "the projective map sends a vertex to infinity or across it".into(),
            ));
        }
    }
    p.map_vertices(|x| {
        let y = x - c;
        let den = beta - a.dot(&y);
        y.scale(&(Scalar::one() / den))
    })
}

/// Moves `p` by an admissible projective map so that the simplex facet `s`
/// is in bounded position. The map sends a hyperplane missing `p` to
/// infinity; candidates are tried until one verifies.
pub fn normalize_bounded_position(p: &Polytope, s: usize) -> Result<Polytope> {
    if p.is_simplex() {
        return Err(Error::InputIsSimplex);
    }
    simplex_neighbors(p, s)?;
    if bounded_position(p, s) {
        return Ok(p.clone());
    }
    let c = p.interior_point();
    let apex = neighbor_apex(p, s)?;
    let (_, neighbors) = simplex_neighbors(p, s)?;
    let mut dirs: Vec<Vector> = (0..p.num_facets())
        .filter(|i| *i != s && !neighbors.contains(i))
        .map(|i| p.facet(i).hyperplane.normal().scale(&Scalar::from_integer((-1).into())))
        .collect();
    let ns = p.facet(s).hyperplane.normal();
    dirs.push(ns.clone());
    dirs.push(ns.scale(&Scalar::from_integer((-1).into())));

    let target = build_face_lattice(p)?;
    for a in &dirs {
        let m = p
            .vertices()
            .iter()
            .map(|v| a.dot(&(v - &c)))
            .max()
            .expect("vertices");
        let mut margins = Vec::new();
        if let Some(ap) = &apex {
            let gap = a.dot(&(ap - &c)) - &m;
            if gap.is_positive() {
                margins.push(&gap / Scalar::from_integer(2.into()));
                margins.push(&gap / Scalar::from_integer(8.into()));
            }
        }
        margins.extend([frac(1, 1), frac(1, 8), frac(8, 1)].iter().map(|x| x * m.abs().max(Scalar::one())));
        for delta in margins {
            let beta = &m + &delta;
            let Ok(q) = projective_image(p, &c, a, &beta) else {
                continue;
            };
            if bounded_position(&q, s) && build_face_lattice(&q).ok().as_ref() == Some(&target) {
                return Ok(q);
            }
        }
    }
    Err(Error::NormalizationFailed)
}
