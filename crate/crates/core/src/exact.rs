//! Exact rational scalars, points, oriented hyperplanes and the fraction-free
//! linear algebra used by every geometric decision in the crate.
//!
//! Nothing in here rounds. Side tests against hyperplanes are sign decisions on
//! exact rationals, and linear systems are eliminated over the integers
//! (Bareiss) after clearing denominators row by row.

use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Builds a scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Builds the scalar `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// A point or direction in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    /// Unit vector `e_axis` in dimension `dim`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Appends one coordinate; used when lifting a polytope into one more
    /// dimension.
    pub fn extended(&self, last: Scalar) -> Vector {
        let mut coords = self.0.clone();
        coords.push(last);
        Vector(coords)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Position of a point relative to an oriented hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Strictly on the side away from the polytope.
    Beyond,
    On,
    /// Strictly on the polytope's side.
    Beneath,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Beyond => Side::Beneath,
            Side::On => Side::On,
            Side::Beneath => Side::Beyond,
        }
    }
}

/// `{x : <normal, x> = offset}`, oriented so that the owning polytope lies in
/// `<normal, x> >= offset`.
///
/// The normal is kept as a primitive integer vector (coprime entries), so two
/// hyperplanes with the same orientation are equal iff their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
    offset: Scalar,
}

impl Hyperplane {
    /// Normalizes `(normal, offset)` without changing the orientation.
    pub fn new(normal: &Vector, offset: Scalar) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        let (ints, factor) = primitive_integer_row(normal.coords());
        Ok(Hyperplane {
            normal: ints,
            offset: offset * factor,
        })
    }

    /// The hyperplane spanned by `points` (which must have affine rank
    /// `d - 1`), oriented so that `inside` lies strictly beneath it.
    pub fn through(points: &[&Vector], inside: &Vector) -> Result<Self> {
        let h = affine_hyperplane(points)?;
        match h.classify(inside)? {
            Side::Beneath => Ok(h),
            Side::Beyond => Ok(h.flipped()),
            Side::On => Err(Error::Degenerate(
                "reference point lies on the spanned hyperplane".into(),
            )),
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> Vector {
        Vector(
            self.normal
                .iter()
                .map(|n| Scalar::from_integer(n.clone()))
                .collect(),
        )
    }

    pub fn normal_ints(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    /// `<normal, x> - offset`.
    pub fn eval(&self, x: &Vector) -> Scalar {
        let mut acc = -self.offset.clone();
        for (n, c) in self.normal.iter().zip(x.iter()) {
            if !n.is_zero() && !c.is_zero() {
                acc += c * n;
            }
        }
        acc
    }

    pub fn classify(&self, x: &Vector) -> Result<Side> {
        x.check_dim(self.dim())?;
        let v = self.eval(x);
        Ok(if v.is_negative() {
            Side::Beyond
        } else if v.is_zero() {
            Side::On
        } else {
            Side::Beneath
        })
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|n| -n).collect(),
            offset: -self.offset.clone(),
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<(")?;
        for (i, n) in self.normal.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "), x> >= {}", self.offset)
    }
}

/// Side of `x` relative to `h`.
pub fn classify_point(h: &Hyperplane, x: &Vector) -> Result<Side> {
    h.classify(x)
}

/// The unique common point of `d` hyperplanes in `Q^d`.
pub fn solve_square(rows: &[Hyperplane]) -> Result<Vector> {
    let d = rows.first().map(Hyperplane::dim).ok_or(Error::EmptyInput)?;
    if rows.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rows.len(),
        });
    }
    let mut aug = Vec::with_capacity(d);
    for h in rows {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: h.dim(),
            });
        }
        let mut row: Vec<Scalar> = h
            .normal
            .iter()
            .map(|n| Scalar::from_integer(n.clone()))
            .collect();
        row.push(h.offset.clone());
        aug.push(primitive_integer_row(&row).0);
    }
    let ech = Echelon::new(aug);
    if ech.pivots.len() != d || ech.pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::NoUniqueSolution);
    }
    let mut x = vec![Scalar::zero(); d];
    for i in (0..d).rev() {
        let row = &ech.rows[i];
        let mut rhs = Scalar::from_integer(row[d].clone());
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            rhs -= xj * &row[j];
        }
        x[i] = rhs / Scalar::from_integer(row[i].clone());
    }
    Ok(Vector(x))
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[&Vector]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            p.check_dim(first.dim())?;
            Ok(primitive_integer_row((*p - first).coords()).0)
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Echelon::new(rows).pivots.len())
}

/// Exact average of `points`.
pub fn barycenter(points: &[&Vector]) -> Result<Vector> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let mut sum = Vector::zeros(first.dim());
    for p in points {
        p.check_dim(first.dim())?;
        sum = &sum + p;
    }
    Ok(sum.scale(&Scalar::new(BigInt::one(), BigInt::from(points.len()))))
}

/// Hyperplane through `points` with arbitrary orientation; the points must
/// have affine rank exactly `d - 1`.
pub fn affine_hyperplane(points: &[&Vector]) -> Result<Hyperplane> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let d = first.dim();
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            p.check_dim(d)?;
            let mut row = p.coords().to_vec();
            row.push(Scalar::one());
            Ok(primitive_integer_row(&row).0)
        })
        .collect::<Result<_>>()?;
    let ech = Echelon::new(rows);
    if ech.pivots.len() != d {
        return Err(Error::Degenerate(format!(
            "points span an affine space of dimension {} instead of {}",
            ech.pivots.len().saturating_sub(1),
            d - 1
        )));
    }
    let kernel = ech.kernel_vector(d + 1);
    // kernel = (normal, -offset)
    let normal = Vector(kernel[..d].to_vec());
    if normal.is_zero() {
        return Err(Error::Degenerate("points do not span a hyperplane".into()));
    }
    Hyperplane::new(&normal, -kernel[d].clone())
}

/// Clears denominators and divides out the content, preserving sign.
/// Returns the integer row together with the positive factor applied.
pub(crate) fn primitive_integer_row(row: &[Scalar]) -> (Vec<BigInt>, Scalar) {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return (ints, Scalar::one());
    }
    let ints = ints.into_iter().map(|c| c / &content).collect();
    (ints, Scalar::new(lcm, content))
}

/// Fraction-free row echelon form of an integer matrix.
///
/// Each elimination step is `r <- (p * r - r[c] * pivot_row) / prev_p`, where
/// the division is exact (Bareiss). Any nonzero entry is accepted as a pivot.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(mut rows: Vec<Vec<BigInt>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (top, rest) = rows.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in rest.iter_mut() {
                let factor = row[c].clone();
                for j in c..ncols {
                    let v = pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                // entries left of c are already zero
            }
            prev = rows[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        rows.truncate(pivots.len().max(r));
        Echelon { rows, pivots }
    }

    /// A nonzero kernel vector, assuming exactly one non-pivot column.
    fn kernel_vector(&self, ncols: usize) -> Vec<Scalar> {
        let free = (0..ncols)
            .find(|c| !self.pivots.contains(c))
            .expect("rank deficiency of one");
        let mut x = vec![Scalar::zero(); ncols];
        x[free] = Scalar::one();
        for (i, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[i];
            let mut acc = Scalar::zero();
            for j in (pc + 1)..ncols {
                if !row[j].is_zero() {
                    acc += &x[j] * &row[j];
                }
            }
            x[pc] = -acc / Scalar::from_integer(row[pc].clone());
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis_plane(d: usize, axis: usize) -> Hyperplane {
        Hyperplane::new(&Vector::unit(d, axis), Scalar::zero()).unwrap()
    }

    #[test]
    fn classify_trivial_sides() {
        let h = axis_plane(4, 0);
        assert_eq!(
            classify_point(&h, &Vector::from_ints(&[-1, 0, 0, 0])).unwrap(),
            Side::Beyond
        );
        assert_eq!(
            classify_point(&h, &Vector::from_ints(&[0, 5, 5, 5])).unwrap(),
            Side::On
        );
        assert_eq!(
            classify_point(&h, &Vector::from_ints(&[2, 0, 0, 0])).unwrap(),
            Side::Beneath
        );
        assert!(matches!(
            classify_point(&h, &Vector::from_ints(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn normalization_is_primitive_and_keeps_orientation() {
        let h = Hyperplane::new(
            &Vector::new(vec![frac(-2, 3), frac(4, 3), int(0)]),
            frac(2, 9),
        )
        .unwrap();
        assert_eq!(h.normal_ints(), &[BigInt::from(-1), 2.into(), 0.into()]);
        assert_eq!(h.offset(), &frac(1, 3));
        assert!(Hyperplane::new(&Vector::zeros(3), int(1)).is_err());
    }

    #[test]
    fn solve_identity_system() {
        let rows: Vec<_> = (0..4).map(|i| axis_plane(4, i)).collect();
        assert_eq!(solve_square(&rows).unwrap(), Vector::zeros(4));
    }

    #[test]
    fn solve_detects_parallel_planes() {
        let a = Hyperplane::new(&Vector::from_ints(&[1, 0]), int(0)).unwrap();
        let b = Hyperplane::new(&Vector::from_ints(&[2, 0]), int(1)).unwrap();
        assert!(matches!(
            solve_square(&[a, b]),
            Err(Error::NoUniqueSolution)
        ));
    }

    #[test]
    fn solve_with_rational_coefficients() {
        // x + y = 1/2, x - y = 1/3
        let a = Hyperplane::new(&Vector::from_ints(&[1, 1]), frac(1, 2)).unwrap();
        let b = Hyperplane::new(&Vector::from_ints(&[1, -1]), frac(1, 3)).unwrap();
        let x = solve_square(&[a, b]).unwrap();
        assert_eq!(x, Vector::new(vec![frac(5, 12), frac(1, 12)]));
    }

    #[test]
    fn affine_rank_examples() {
        let p = Vector::from_ints(&[1, 2, 3]);
        assert_eq!(affine_rank(&[&p]).unwrap(), 0);
        let a = Vector::from_ints(&[0, 0]);
        let b = Vector::from_ints(&[1, 1]);
        let c = Vector::from_ints(&[3, 3]);
        assert_eq!(affine_rank(&[&a, &b, &c]).unwrap(), 1);
        assert!(matches!(affine_rank(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn barycenter_examples() {
        let a = Vector::from_ints(&[0, 0]);
        let b = Vector::from_ints(&[2, 0]);
        assert_eq!(barycenter(&[&a, &b]).unwrap(), Vector::from_ints(&[1, 0]));
        assert_eq!(barycenter(&[&b]).unwrap(), b);
        assert!(barycenter(&[]).is_err());
    }

    #[test]
    fn hyperplane_through_points_is_oriented() {
        let pts = [
            Vector::from_ints(&[1, 0, 0]),
            Vector::from_ints(&[0, 1, 0]),
            Vector::from_ints(&[0, 0, 1]),
        ];
        let refs: Vec<&Vector> = pts.iter().collect();
        let origin = Vector::zeros(3);
        let h = Hyperplane::through(&refs, &origin).unwrap();
        assert_eq!(h.classify(&origin).unwrap(), Side::Beneath);
        for p in &pts {
            assert_eq!(h.classify(p).unwrap(), Side::On);
        }
        assert_eq!(
            h.classify(&Vector::from_ints(&[1, 1, 1])).unwrap(),
            Side::Beyond
        );
    }
}
