use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::elt::{Basis, HeckeElt};
use super::kl::KlTable;
use crate::coxeter::{ElemId, Gen, Word};
use crate::error::{Error, Result};

/// A lower summand B_y(a) with a even-parity-nonpositive degree-zero map
/// B_w -> B_y(a) factoring through B_x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaspObstruction {
    pub y: Word,
    pub x: Word,
    pub shift: i32,
    pub bound: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaspReport {
    pub exists: bool,
    pub obstruction: Option<ClaspObstruction>,
}

impl KlTable {
    /// Lower summands of a w-object given as a KL-basis expansion: the top
    /// term must be exactly b_w and all coefficients nonnegative.
    pub fn lower_summands(&self, w: ElemId, h: &HeckeElt) -> Result<Vec<(ElemId, i32)>> {
        let h = self.to_kl(h);
        if h.coeff(w) != crate::exactnum::LaurentPoly::one() {
            return Err(Error::InvalidDecomposition("top summand must be B_w with multiplicity one".into()));
        }
        let mut out = Vec::new();
        for (y, c) in &h.coeffs {
            if *y == w {
                continue;
            }
            for (e, k) in c.terms() {
                if k.is_negative() {
                    return Err(Error::InvalidDecomposition(format!("negative multiplicity {k} at {}", self.group().word(*y))));
                }
                let k = k.to_usize().ok_or_else(|| Error::InvalidDecomposition("multiplicity too large".into()))?;
                out.extend(std::iter::repeat_n((*y, e), k));
            }
        }
        Ok(out)
    }

    /// Decide clasp existence for B_w plus the given lower summands B_y(a):
    /// the clasp exists iff every shift a of B_y with the parity of
    /// T = t_{w,x} + t_{y,x} satisfies a < T, for all x <= y.
    pub fn clasp_exists(&self, w: ElemId, lower: &[(ElemId, i32)]) -> Result<ClaspReport> {
        let g = self.group();
        let mut by_y: BTreeMap<ElemId, Vec<i32>> = BTreeMap::new();
        for &(y, a) in lower {
            if y == w || !self.leq(y, w) {
                return Err(Error::InvalidDecomposition(format!("{} is not below the top element", g.word(y))));
            }
            by_y.entry(y).or_default().push(a);
        }
        for (y, shifts) in &by_y {
            let mut pos: Vec<i32> = shifts.clone();
            let mut neg: Vec<i32> = shifts.iter().map(|a| -a).collect();
            pos.sort_unstable();
            neg.sort_unstable();
            if pos != neg {
                return Err(Error::InvalidDecomposition(format!("shifts of {} are not symmetric", g.word(*y))));
            }
        }
        let top = self.row(w);
        for (y, shifts) in &by_y {
            for (x, pyx) in &self.row(*y).polys {
                let twx = top.get(*x).expect("x <= y < w").min_exp()?;
                let tyx = pyx.min_exp()?;
                let bound = twx + tyx;
                if let Some(&a) = shifts.iter().filter(|&&a| (a - bound).rem_euclid(2) == 0).max() {
                    if a >= bound {
                        let obstruction = ClaspObstruction { y: g.word(*y).clone(), x: g.word(*x).clone(), shift: a, bound };
                        return Ok(ClaspReport { exists: false, obstruction: Some(obstruction) });
                    }
                }
            }
        }
        Ok(ClaspReport { exists: true, obstruction: None })
    }

    /// Clasp criterion for the Bott-Samelson object of a reduced word.
    pub fn bott_samelson_clasp(&self, word: &[Gen]) -> Result<ClaspReport> {
        let w = self.group().id_from_reduced_word(word)?;
        let h = self.bott_samelson_decompose(word)?;
        debug_assert_eq!(h.basis, Basis::Kl);
        let lower = self.lower_summands(w, &h)?;
        self.clasp_exists(w, &lower)
    }
}
