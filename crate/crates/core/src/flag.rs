//! f-vectors, flag vectors and the linear functionals evaluated on them.

use std::fmt;

/// `(f_0, ..., f_{d-1})`; `f_{-1} = f_d = 1` are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// Entrywise `self - base` as signed integers.
    pub fn delta(&self, base: &FVector) -> Vec<i64> {
        self.0
            .iter()
            .zip(&base.0)
            .map(|(a, b)| *a as i64 - *b as i64)
            .collect()
    }

    /// `sum (-1)^i f_i` over `-1..=d`, which is zero for every polytope.
    pub fn euler_characteristic_defect(&self) -> i64 {
        let d = self.0.len();
        let mut s = -1i64; // f_{-1}
        for (i, f) in self.0.iter().enumerate() {
            s += if i % 2 == 0 { *f as i64 } else { -(*f as i64) };
        }
        s + if d.is_multiple_of(2) { 1 } else { -1 }
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Chain counts `f_S` for every `S` subset of `{0, ..., d-1}`, indexed by the
/// bitmask of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagVector {
    dim: usize,
    entries: Vec<u64>,
}

pub fn mask_of(set: &[usize]) -> usize {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

/// `f`, `f0`, `f02`, `f0123`, ...
pub fn flag_name(mask: usize) -> String {
    let mut s = String::from("f");
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        if m & 1 == 1 {
            s.push_str(&i.to_string());
        }
        m >>= 1;
        i += 1;
    }
    s
}

impl FlagVector {
    pub fn from_entries(dim: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), 1 << dim, "one entry per subset");
        FlagVector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn by_mask(&self, mask: usize) -> u64 {
        self.entries[mask]
    }

    /// `f_S` for `S` given as a list of dimensions.
    pub fn get(&self, set: &[usize]) -> u64 {
        self.entries[mask_of(set)]
    }

    pub fn set(&mut self, set: &[usize], value: u64) {
        self.entries[mask_of(set)] = value;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// `(name, value)` pairs in mask order.
    pub fn named_entries(&self) -> Vec<(String, u64)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(m, &v)| (flag_name(m), v))
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..self.dim).map(|i| self.entries[1 << i]).collect())
    }
}

/// `g_2 = f_02 - 3 f_2 + f_1 - d f_0 + C(d+1, 2)`.
pub fn g2(flag: &FlagVector, d: usize) -> i64 {
    assert!(d >= 3, "g2 needs d >= 3");
    let d = d as i64;
    flag.get(&[0, 2]) as i64 - 3 * flag.get(&[2]) as i64 + flag.get(&[1]) as i64 - d * flag.get(&[0]) as i64
        + (d + 1) * d / 2
}

/// Checks the generalized Dehn-Sommerville relations: for every `S` and every
/// pair `i < k` such that `i - 1` and `k` are consecutive in
/// `S + {-1, d}`,
///
/// `sum_{j=i}^{k-1} (-1)^(j-i) f_{S+j} = f_S (1 - (-1)^(k-i))`.
///
/// With `S` empty, `i = 0`, `k = d` this is the Euler relation.
pub fn dehn_sommerville_check(flag: &FlagVector) -> bool {
    dehn_sommerville_violations(flag).is_empty()
}

/// The relations that fail, as `(mask of S, i, k)`.
pub fn dehn_sommerville_violations(flag: &FlagVector) -> Vec<(usize, usize, usize)> {
    let d = flag.dim();
    let mut bad = Vec::new();
    for s in 0..(1usize << d) {
        // i - 1 in S + {-1}: i = 0 or i - 1 in S
        for i in 0..d {
            if i > 0 && s & (1 << (i - 1)) == 0 {
                continue;
            }
            // k in S + {d}, with no element of S in [i, k)
            for k in (i + 1)..=d {
                if (i..k).any(|j| s & (1 << j) != 0) {
                    break;
                }
                if k < d && s & (1 << k) == 0 {
                    continue;
                }
                let mut lhs = 0i64;
                for j in i..k {
                    let v = flag.by_mask(s | (1 << j)) as i64;
                    lhs += if (j - i) % 2 == 0 { v } else { -v };
                }
                let factor = if (k - i) % 2 == 0 { 0 } else { 2 };
                let rhs = flag.by_mask(s) as i64 * factor;
                if lhs != rhs {
                    bad.push((s, i, k));
                }
            }
        }
    }
    bad
}

/// The two sides of `f_03 - 140 >= 4 (f_1 + f_2) - 20 (f_0 + f_3)` for a
/// 4-dimensional flag vector.
pub fn fatness_sides(flag: &FlagVector) -> (i64, i64) {
    assert_eq!(flag.dim(), 4);
    let f = |s: &[usize]| flag.get(s) as i64;
    let lhs = f(&[0, 3]) - 140;
    let rhs = 4 * (f(&[1]) + f(&[2])) - 20 * (f(&[0]) + f(&[3]));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Flag vector of the d-simplex: a chain with dimensions i_1 < ... < i_k
    /// picks nested subsets of sizes i_j + 1 out of d + 1 vertices.
    fn simplex_flag(d: usize) -> FlagVector {
        let mut entries = vec![0; 1 << d];
        for (m, e) in entries.iter_mut().enumerate() {
            let mut prev = 0u64;
            let mut count = 1u64;
            for i in 0..d {
                if m & (1 << i) != 0 {
                    let size = i as u64 + 1;
                    count *= binom(d as u64 + 1 - prev, size - prev);
                    prev = size;
                }
            }
            *e = count;
        }
        FlagVector::from_entries(d, entries)
    }

    #[test]
    fn simplex_counts() {
        let f = simplex_flag(4);
        assert_eq!(f.f_vector(), FVector(vec![5, 10, 10, 5]));
        assert_eq!(f.get(&[0, 3]), 20);
        assert_eq!(f.get(&[0, 1, 2, 3]), 120);
        assert_eq!(f.get(&[]), 1);
        assert_eq!(g2(&f, 4), 0);
        assert!(dehn_sommerville_check(&f));
        assert_eq!(fatness_sides(&f), (-120, -120));
    }

    #[test]
    fn dehn_sommerville_holds_for_small_simplices() {
        for d in 2..=6 {
            assert!(dehn_sommerville_check(&simplex_flag(d)), "d = {d}");
        }
    }

    #[test]
    fn euler_break_is_detected() {
        let mut f = simplex_flag(4);
        f.set(&[1], 11);
        let bad = dehn_sommerville_violations(&f);
        assert!(bad.contains(&(0, 0, 4)));
    }

    #[test]
    fn names() {
        assert_eq!(flag_name(0), "f");
        assert_eq!(flag_name(mask_of(&[0, 2])), "f02");
        assert_eq!(flag_name(0b1111), "f0123");
    }

    #[test]
    fn euler_defect() {
        assert_eq!(FVector(vec![5, 10, 10, 5]).euler_characteristic_defect(), 0);
        assert_eq!(FVector(vec![8, 12, 6]).euler_characteristic_defect(), 0);
        assert_ne!(FVector(vec![8, 12, 7]).euler_characteristic_defect(), 0);
    }
}
