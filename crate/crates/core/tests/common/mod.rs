#![allow(dead_code)]

use std::collections::BTreeSet;

use polystack::exact::Scalar;
use polystack::hull::facets_from_points;
use polystack::pseudostack::{
    adjacent_facets, bounded_position, forecast_edge_count, forecast_subridge_degree,
    normalize_bounded_position, resolve_step, stack_at, surviving_faces, witness_for,
    StackOutcome,
};
use polystack::{
    build_face_lattice, catalog, Error, Execution, FaceLattice, Polytope, StepSpec, VertexSet,
};
use rand::seq::SliceRandom;
use rand::Rng;

/// Face lattice recomputed from the coordinates alone.
pub fn oracle_lattice(p: &Polytope) -> FaceLattice {
    let facets = facets_from_points(p.dim(), p.vertices(), Execution::Parallel).expect("oracle hull");
    FaceLattice::from_incidences(
        p.dim(),
        p.num_vertices(),
        facets.into_iter().map(|f| f.vertices).collect(),
    )
    .expect("oracle lattice")
}

pub fn lattice(p: &Polytope) -> FaceLattice {
    build_face_lattice(p).expect("lattice")
}

pub fn fvec(p: &Polytope) -> Vec<u64> {
    lattice(p).f_vector().0
}

/// Catalog polytopes with at least one simplex facet.
pub const STEP_SOURCES: [&str; 8] = [
    "simplex4",
    "P9",
    "P10",
    "P11",
    "hypersimplex",
    "octahedron3",
    "frustum3",
    "prism3",
];

pub fn random_weights(rng: &mut impl Rng, d: usize) -> Vec<Scalar> {
    (0..d)
        .map(|_| Scalar::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into()))
        .collect()
}

/// A valid step on `p`, possibly after a projective normalization of `p`.
/// Returns the polytope the step applies to.
pub fn random_step(p: &Polytope, rng: &mut impl Rng) -> Option<(Polytope, StepSpec)> {
    let simplices = p.simplex_facets();
    for _ in 0..60 {
        let &s = simplices.choose(rng)?;
        let q = if !bounded_position(p, s) && !p.is_simplex() && rng.gen_bool(0.5) {
            match normalize_bounded_position(p, s) {
                Ok(q) => q,
                Err(_) => p.clone(),
            }
        } else {
            p.clone()
        };
        let mut neighbors = adjacent_facets(&q, s);
        neighbors.shuffle(rng);
        let mut f_set = Vec::new();
        let mut n_set = Vec::new();
        let n_wanted = match rng.gen_range(0..20) {
            0 => 2,
            1..=7 => 1,
            _ => 0,
        };
        for g in neighbors {
            if n_set.len() < n_wanted && rng.gen_bool(0.5) {
                n_set.push(g);
            } else if rng.gen_bool(0.35) {
                f_set.push(g);
            }
        }
        let spec = StepSpec::from_indices(&q, s, &f_set, &n_set);
        let Ok(step) = resolve_step(&q, &spec) else {
            continue;
        };
        if witness_for(&q, &step, &vec![Scalar::from_integer(1.into()); q.dim()]).is_ok() {
            return Some((q, spec));
        }
    }
    None
}

/// Runs `spec` at the witness for `weights`.
pub fn run_step(p: &Polytope, spec: &StepSpec, weights: &[Scalar]) -> polystack::Result<StackOutcome> {
    let step = resolve_step(p, spec)?;
    let w = witness_for(p, &step, weights)?;
    stack_at(p, &step, &w.point)
}

/// Every structural claim about one step, checked against the oracle.
pub fn check_step(p: &Polytope, spec: &StepSpec, out: &StackOutcome) -> Result<(), String> {
    let before = lattice(p);
    let after = lattice(&out.polytope);
    if after != oracle_lattice(&out.polytope) {
        return Err(format!("incremental lattice differs from the oracle for {spec}"));
    }
    let step = resolve_step(p, spec).map_err(|e| e.to_string())?;
    let d = p.dim();

    let predicted: BTreeSet<VertexSet> = surviving_faces(p, &before, spec)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    let kept_vertices = predicted.iter().filter(|f| f.len() == 1).count();
    if out.polytope.num_vertices() != kept_vertices + 1 {
        return Err(format!(
            "vertex count {} -> {}, expected {}",
            p.num_vertices(),
            out.polytope.num_vertices(),
            kept_vertices + 1
        ));
    }
    let c = &out.census;
    let free_neighbors = step
        .neighbors
        .iter()
        .filter(|g| !step.is_affected(**g))
        .count();
    let untouched = (0..p.num_facets()).filter(|&i| !step.is_affected(i)).count();
    if c.restacked.len() != step.f_set.len()
        || c.over_base.len() != free_neighbors
        || c.unchanged.len() != untouched
        || out.polytope.num_facets()
            != c.unchanged.len() + c.over_base.len() + c.over_n.len() + c.restacked.len()
    {
        return Err(format!("facet census mismatch for {spec}: {c:?}"));
    }

    match forecast_edge_count(p, &before, spec) {
        Ok(n) if n != after.edges().len() => {
            return Err(format!("edge forecast {n}, actual {}", after.edges().len()));
        }
        Ok(_) | Err(Error::UnsupportedSpec(_)) => {}
        Err(e) => return Err(format!("edge forecast failed: {e}")),
    }

    if step.n_set.len() <= 1 && d >= 3 {
        let mut hosts = vec![p.facet(step.base).vertices.clone()];
        hosts.extend(step.n_set.iter().map(|&i| p.facet(i).vertices.clone()));
        for g in before.faces(d - 3) {
            if !hosts.iter().any(|h| g.is_subset(h)) {
                continue;
            }
            let fc = forecast_subridge_degree(p, &before, spec, g).map_err(|e| e.to_string())?;
            let image = out.map_set(g);
            let actual = image.as_ref().filter(|s| after.contains_face(s));
            if fc.survives != actual.is_some() {
                return Err(format!("subridge {g}: survival forecast {} wrong", fc.survives));
            }
            if let Some(s) = actual {
                let deg = after.face_degree(s).map_err(|e| e.to_string())?;
                if fc.predicted_degree != Some(deg) {
                    return Err(format!(
                        "subridge {g}: forecast degree {:?}, actual {deg}",
                        fc.predicted_degree
                    ));
                }
            }
        }
    }

    let mut actual = BTreeSet::new();
    for k in 0..d.saturating_sub(1) {
        for f in before.faces(k) {
            if out.map_set(f).is_some_and(|s| after.contains_face(&s)) {
                actual.insert(f.clone());
            }
        }
    }
    if predicted != actual {
        return Err(format!("surviving faces differ for {spec}"));
    }
    Ok(())
}

/// Edges of `p` in the labels of a construction: vertex `v` maps to
/// `relabel[v]`.
pub fn edge_degrees(p: &Polytope) -> Vec<(VertexSet, usize)> {
    let lat = lattice(p);
    lat.edges()
        .iter()
        .map(|e| (e.clone(), lat.face_degree(e).expect("edge")))
        .collect()
}

pub fn catalog_polytope(name: &str) -> Polytope {
    catalog::polytope(name)
}
