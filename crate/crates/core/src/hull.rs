//! Facet enumeration from a point set, independent of the incremental
//! beneath-beyond update so that it can serve as its oracle.
//!
//! [`brute_force_facets`] is the definition: every affinely independent
//! `d`-subset of the points spans a candidate hyperplane, which is a facet
//! hyperplane when no point lies strictly on either side of it. Points are
//! homogenized to primitive integer rows `(den*x, den)` and each subset is
//! eliminated incrementally (fraction-free).
//!
//! [`facets_from_points`] gives the same answer faster. A floating-point pass
//! proposes candidate subsets; each is then rebuilt and side-tested exactly.
//! The exact facets are accepted only when every ridge of every facet (taken
//! from an exact brute-force hull of the facet one dimension down) is shared
//! with another accepted facet. A set of facets closed under adjacency is all
//! of them, because the facet graph of a polytope is connected. When the
//! certificate fails the brute force runs instead.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{barycenter, primitive_integer_row, Hyperplane, Scalar, Vector};
use crate::par::{self, Execution};
use crate::polytope::Facet;
use crate::vset::VertexSet;

/// Largest point count accepted by [`facets_from_points`].
pub const MAX_POINTS: usize = 96;

/// Computes the facets of `conv(points)`. The points must be in convex
/// position with full affine rank `dim`; points that are not vertices cause an
/// error in [`crate::Polytope::new`] later, not here.
pub fn facets_from_points(dim: usize, points: &[Vector], exec: Execution) -> Result<Vec<Facet>> {
    check_input(dim, points)?;
    if dim >= 2 {
        if let Some(facets) = certified(dim, points, exec) {
            return Ok(facets);
        }
    }
    brute_force_facets(dim, points, exec)
}

fn check_input(dim: usize, points: &[Vector]) -> Result<()> {
    if points.len() > MAX_POINTS {
        return Err(Error::SizeLimitExceeded {
            what: "point set",
            size: points.len(),
            limit: MAX_POINTS,
        });
    }
    if points.len() <= dim {
        return Err(Error::InvalidPolytope(format!(
            "{} points cannot span dimension {dim}",
            points.len()
        )));
    }
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// Exhaustive enumeration over all `dim`-subsets.
pub fn brute_force_facets(dim: usize, points: &[Vector], exec: Execution) -> Result<Vec<Facet>> {
    check_input(dim, points)?;
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row = p.coords().to_vec();
            row.push(Scalar::one());
            primitive_integer_row(&row).0
        })
        .collect();

    let n = rows.len();
    let found = par::map_range(exec, n, |first| {
        let mut out = BTreeMap::new();
        let mut basis = Vec::with_capacity(dim);
        if let Some(r) = reduce(&rows[first], &basis) {
            basis.push(r);
            search(&rows, dim, first + 1, &mut basis, &mut out);
        }
        out
    });
    let mut merged: BTreeMap<VertexSet, Vec<BigInt>> = BTreeMap::new();
    for m in found {
        for (k, v) in m {
            merged.entry(k).or_insert(v);
        }
    }
    if merged.is_empty() {
        return Err(Error::InvalidPolytope(
            "point set is not full-dimensional".into(),
        ));
    }
    merged
        .into_iter()
        .map(|(vertices, a)| {
            let normal = Vector::new(
                a[..dim]
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect(),
            );
            let offset = BigRational::from_integer(-a[dim].clone());
            Ok(Facet {
                hyperplane: Hyperplane::new(&normal, offset)?,
                vertices,
            })
        })
        .collect()
}

const FLOAT_TOL: f64 = 1e-9;

/// Facets found by the floating-point filter and certified exactly, or `None`
/// when the certificate does not go through.
fn certified(dim: usize, points: &[Vector], exec: Execution) -> Option<Vec<Facet>> {
    let n = points.len();
    let scaled = scaled_floats(dim, points)?;
    let proposals = par::map_range(exec, n, |first| {
        let mut out: BTreeMap<VertexSet, Vec<Vec<usize>>> = BTreeMap::new();
        let mut subset = vec![first];
        float_search(&scaled, dim, first + 1, &mut subset, &mut out);
        out
    });
    // Nearby hyperplanes may share an approximate on-set, so every subset of
    // a group is a candidate until an exact facet of the group covers it.
    let mut groups: BTreeMap<VertexSet, Vec<Vec<usize>>> = BTreeMap::new();
    for m in proposals {
        for (k, v) in m {
            groups.entry(k).or_default().extend(v);
        }
    }
    let inside = barycenter(&points.iter().collect::<Vec<_>>()).ok()?;
    let groups: Vec<Vec<Vec<usize>>> = groups.into_values().collect();
    let exact = par::map_slice(exec, &groups, |subsets| {
        let mut found: Vec<(VertexSet, Hyperplane)> = Vec::new();
        for sub in subsets {
            if found.iter().any(|(on, _)| sub.iter().all(|&i| on.contains(i))) {
                continue;
            }
            if let Some(f) = exact_facet(points, sub, &inside) {
                found.push(f);
            }
        }
        found
    });
    let mut facets: BTreeMap<VertexSet, Hyperplane> = BTreeMap::new();
    for (set, h) in exact.into_iter().flatten() {
        facets.entry(set).or_insert(h);
    }
    if facets.len() <= dim || facets.keys().any(|s| s.len() == n) {
        return None;
    }
    let sets: Vec<&VertexSet> = facets.keys().collect();
    let hs: Vec<&Hyperplane> = facets.values().collect();
    let closed = par::map_range(exec, sets.len(), |i| {
        ridges_shared(points, sets[i], hs[i], &sets, i)
    });
    if !closed.into_iter().all(|b| b) {
        return None;
    }
    Some(
        facets
            .into_iter()
            .map(|(vertices, hyperplane)| Facet {
                hyperplane,
                vertices,
            })
            .collect(),
    )
}

/// Points translated to their centroid and scaled into the unit cube.
fn scaled_floats(dim: usize, points: &[Vector]) -> Option<Vec<Vec<f64>>> {
    let raw: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|c| c.to_f64().filter(|x| x.is_finite())).collect())
        .collect::<Option<_>>()?;
    let n = raw.len() as f64;
    let center: Vec<f64> = (0..dim).map(|j| raw.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let scale = raw
        .iter()
        .flat_map(|r| r.iter().zip(&center).map(|(x, c)| (x - c).abs()))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    Some(
        raw.iter()
            .map(|r| r.iter().zip(&center).map(|(x, c)| (x - c) / scale).collect())
            .collect(),
    )
}

fn float_search(
    pts: &[Vec<f64>],
    dim: usize,
    start: usize,
    subset: &mut Vec<usize>,
    out: &mut BTreeMap<VertexSet, Vec<Vec<usize>>>,
) {
    if subset.len() == dim {
        if let Some(on) = float_candidate(pts, subset) {
            out.entry(on).or_default().push(subset.clone());
        }
        return;
    }
    let needed = dim - subset.len();
    for i in start..pts.len() {
        if pts.len() - i < needed {
            break;
        }
        subset.push(i);
        float_search(pts, dim, i + 1, subset, out);
        subset.pop();
    }
}

/// Approximate on-set of the hyperplane through `subset`, or `None` when it
/// clearly separates the points or the subset is nearly dependent.
fn float_candidate(pts: &[Vec<f64>], subset: &[usize]) -> Option<VertexSet> {
    let d = pts[0].len();
    let mut m: Vec<Vec<f64>> = subset
        .iter()
        .map(|&i| {
            let mut r = pts[i].clone();
            r.push(1.0);
            r
        })
        .collect();
    let mut pivots = Vec::with_capacity(d);
    let mut row = 0;
    for col in 0..=d {
        if row == d {
            break;
        }
        let best = (row..d).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[best][col].abs() < 1e-10 {
            continue;
        }
        m.swap(row, best);
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate().take(d) {
            if r != row {
                let f = line[col] / pivot[col];
                for (x, p) in line[col..=d].iter_mut().zip(&pivot[col..=d]) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != d {
        return None;
    }
    let free = (0..=d).find(|c| !pivots.contains(c))?;
    let mut a = vec![0.0; d + 1];
    a[free] = 1.0;
    for (r, &pc) in pivots.iter().enumerate() {
        a[pc] = -m[r][free] / m[r][pc];
    }
    let norm = a[..d].iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return None;
    }
    let (mut pos, mut neg) = (false, false);
    let mut on = VertexSet::new();
    for (i, p) in pts.iter().enumerate() {
        let v = (p.iter().zip(&a).map(|(x, y)| x * y).sum::<f64>() + a[d]) / norm;
        if v > FLOAT_TOL {
            pos = true;
        } else if v < -FLOAT_TOL {
            neg = true;
        } else {
            on.insert(i);
        }
        if pos && neg {
            return None;
        }
    }
    Some(on)
}

/// The exact facet spanned by `subset`, if its hyperplane supports the points.
fn exact_facet(points: &[Vector], subset: &[usize], inside: &Vector) -> Option<(VertexSet, Hyperplane)> {
    let pts: Vec<&Vector> = subset.iter().map(|&i| &points[i]).collect();
    let h = Hyperplane::through(&pts, inside).ok()?;
    let mut on = VertexSet::new();
    for (i, p) in points.iter().enumerate() {
        let v = h.eval(p);
        if v.is_negative() {
            return None;
        }
        if v.is_zero() {
            on.insert(i);
        }
    }
    Some((on, h))
}

/// Every ridge of facet `i` is its intersection with another facet in `sets`.
fn ridges_shared(
    points: &[Vector],
    set: &VertexSet,
    h: &Hyperplane,
    sets: &[&VertexSet],
    i: usize,
) -> bool {
    let Some(drop) = h.normal_ints().iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let idx = set.to_vec();
    let projected: Vec<Vector> = idx
        .iter()
        .map(|&v| {
            let c: Vec<Scalar> = points[v]
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != drop)
                .map(|(_, x)| x.clone())
                .collect();
            Vector::new(c)
        })
        .collect();
    let Ok(ridges) = brute_force_facets(h.dim() - 1, &projected, Execution::Sequential) else {
        return false;
    };
    ridges.iter().all(|r| {
        let global: VertexSet = r.vertices.iter().map(|k| idx[k]).collect();
        sets.iter()
            .enumerate()
            .any(|(j, s)| j != i && s.intersection(set) == global)
    })
}

/// An echelon row with its pivot column.
struct Row {
    pivot: usize,
    coeffs: Vec<BigInt>,
}

fn reduce(row: &[BigInt], basis: &[Row]) -> Option<Row> {
    let mut r = row.to_vec();
    for b in basis {
        let c = &r[b.pivot];
        if c.is_zero() {
            continue;
        }
        let c = c.clone();
        let p = &b.coeffs[b.pivot];
        for (x, y) in r.iter_mut().zip(&b.coeffs) {
            *x = &*x * p - &c * y;
        }
        let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in r.iter_mut() {
                *x /= &g;
            }
        }
    }
    let pivot = r.iter().position(|x| !x.is_zero())?;
    Some(Row { pivot, coeffs: r })
}

fn search(
    rows: &[Vec<BigInt>],
    dim: usize,
    start: usize,
    basis: &mut Vec<Row>,
    out: &mut BTreeMap<VertexSet, Vec<BigInt>>,
) {
    if basis.len() == dim {
        if let Some((on, a)) = test_candidate(rows, basis) {
            out.entry(on).or_insert(a);
        }
        return;
    }
    let needed = dim - basis.len();
    for i in start..rows.len() {
        if rows.len() - i < needed {
            break;
        }
        if let Some(r) = reduce(&rows[i], basis) {
            basis.push(r);
            search(rows, dim, i + 1, basis, out);
            basis.pop();
        }
    }
}

/// Kernel vector of the `dim x (dim+1)` system in `basis`, then a side test of
/// every point. Returns the on-set and the oriented primitive kernel vector.
fn test_candidate(rows: &[Vec<BigInt>], basis: &[Row]) -> Option<(VertexSet, Vec<BigInt>)> {
    let ncols = basis[0].coeffs.len();
    // Pivots are distinct; sort rows by pivot to back-substitute.
    let mut order: Vec<&Row> = basis.iter().collect();
    order.sort_by_key(|r| r.pivot);
    let free = (0..ncols).find(|c| order.iter().all(|r| r.pivot != *c))?;
    let mut x = vec![Scalar::zero(); ncols];
    x[free] = Scalar::one();
    for r in order.iter().rev() {
        let mut acc = Scalar::zero();
        for (xj, cj) in x.iter().zip(&r.coeffs).skip(r.pivot + 1) {
            if !cj.is_zero() && !xj.is_zero() {
                acc += xj * cj;
            }
        }
        x[r.pivot] = -acc / Scalar::from_integer(r.coeffs[r.pivot].clone());
    }
    let (mut a, _) = primitive_integer_row(&x);
    if a[..ncols - 1].iter().all(Zero::is_zero) {
        return None;
    }
    let mut sign = 0i8;
    let mut on = VertexSet::new();
    for (i, row) in rows.iter().enumerate() {
        let v: BigInt = row.iter().zip(&a).map(|(p, q)| p * q).sum();
        if v.is_zero() {
            on.insert(i);
            continue;
        }
        let s = if v.is_positive() { 1 } else { -1 };
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return None;
        }
    }
    if sign == 0 {
        return None;
    }
    if sign < 0 {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    Some((on, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<Vector> {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(Vector::from_ints(&[x, y, z]));
                }
            }
        }
        pts
    }

    #[test]
    fn cube_has_six_square_facets() {
        let facets = facets_from_points(3, &cube(), Execution::Sequential).unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|f| f.vertices.len() == 4));
        let inside = Vector::new(vec![crate::exact::frac(1, 2); 3]);
        for f in &facets {
            assert_eq!(
                f.hyperplane.classify(&inside).unwrap(),
                crate::exact::Side::Beneath
            );
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = facets_from_points(3, &cube(), Execution::Sequential).unwrap();
        let b = facets_from_points(3, &cube(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn flat_input_is_rejected() {
        let pts = vec![
            Vector::from_ints(&[0, 0, 0]),
            Vector::from_ints(&[1, 0, 0]),
            Vector::from_ints(&[0, 1, 0]),
            Vector::from_ints(&[1, 1, 0]),
        ];
        assert!(facets_from_points(3, &pts, Execution::Sequential).is_err());
    }

    #[test]
    fn certified_matches_brute_force() {
        let mut pts = cube();
        pts.push(Vector::new(vec![
            crate::exact::frac(1, 2),
            crate::exact::frac(1, 2),
            crate::exact::frac(3, 2),
        ]));
        let a = facets_from_points(3, &pts, Execution::Sequential).unwrap();
        let b = brute_force_facets(3, &pts, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(certified(3, &pts, Execution::Sequential).is_some());
    }
}
