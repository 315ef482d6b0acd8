//! One-shot combinatorial report for a polytope.

use crate::error::Result;
use crate::flag::{self, FVector, FlagVector};
use crate::lattice::{build_face_lattice, FaceLattice};
use crate::polytope::Polytope;

/// Combinatorial summary of a polytope. The 4-dimensional fields are `None`
/// in other dimensions; `g2` is `None` below dimension 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub dim: usize,
    pub fvec: FVector,
    pub flag: FlagVector,
    pub g2: Option<i64>,
    pub two_simplicial: Option<bool>,
    pub two_simple: Option<bool>,
    /// 2-simple, 2-simplicial and `g2 = 0`.
    pub on_ell1: Option<bool>,
    pub euler_ok: bool,
    pub dehn_sommerville_ok: bool,
    /// `f_03 - 140`
    pub fatness_lhs: Option<i64>,
    /// `4 (f_1 + f_2) - 20 (f_0 + f_3)`
    pub fatness_rhs: Option<i64>,
}

pub fn analyze(p: &Polytope) -> Result<AnalysisReport> {
    let lat = build_face_lattice(p)?;
    Ok(analyze_lattice(&lat))
}

pub fn analyze_lattice(lat: &FaceLattice) -> AnalysisReport {
    let d = lat.dim();
    let flag = lat.flag_vector();
    let fvec = flag.f_vector();
    let g2 = (d >= 3).then(|| flag::g2(&flag, d));
    let four = d == 4;
    let two_simplicial = four.then(|| lat.k_simplicial(2));
    let two_simple = four.then(|| lat.h_simple(2));
    let on_ell1 = four.then(|| two_simplicial == Some(true) && two_simple == Some(true) && g2 == Some(0));
    let (fatness_lhs, fatness_rhs) = if four {
        let (l, r) = flag::fatness_sides(&flag);
        (Some(l), Some(r))
    } else {
        (None, None)
    };
    AnalysisReport {
        dim: d,
        euler_ok: fvec.euler_characteristic_defect() == 0,
        dehn_sommerville_ok: flag::dehn_sommerville_check(&flag),
        fvec,
        flag,
        g2,
        two_simplicial,
        two_simple,
        on_ell1,
        fatness_lhs,
        fatness_rhs,
    }
}

impl AnalysisReport {
    /// Stable `key value` lines.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("dim".to_string(), self.dim.to_string()),
            ("f".to_string(), self.fvec.to_string()),
        ];
        for (name, v) in self.flag.named_entries() {
            out.push((format!("flag {name}"), v.to_string()));
        }
        let opt = |x: Option<i64>| x.map_or("na".to_string(), |v| v.to_string());
        let optb = |x: Option<bool>| x.map_or("na".to_string(), |v| v.to_string());
        out.push(("g2".into(), opt(self.g2)));
        out.push(("two_simplicial".into(), optb(self.two_simplicial)));
        out.push(("two_simple".into(), optb(self.two_simple)));
        out.push(("on_ell1".into(), optb(self.on_ell1)));
        out.push(("euler_ok".into(), self.euler_ok.to_string()));
        out.push(("dehn_sommerville_ok".into(), self.dehn_sommerville_ok.to_string()));
        out.push(("fatness_lhs".into(), opt(self.fatness_lhs)));
        out.push(("fatness_rhs".into(), opt(self.fatness_rhs)));
        out
    }
}
