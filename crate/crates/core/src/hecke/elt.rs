use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::kl::{add_into, mul_standard_map_by_bs, KlTable};
use crate::coxeter::{ElemId, FiniteGroup, Gen};
use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Kl,
}

/// Finite sum of basis elements with Laurent polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElt {
    pub basis: Basis,
    pub coeffs: BTreeMap<ElemId, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        HeckeElt { basis, coeffs: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, w: ElemId) -> Self {
        HeckeElt { basis, coeffs: BTreeMap::from([(w, LaurentPoly::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: ElemId) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: ElemId, p: &LaurentPoly) {
        add_into(&mut self.coeffs, w, p);
    }

    pub fn add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        if self.basis != other.basis {
            return Err(Error::Precondition("adding elements in different bases".into()));
        }
        let mut out = self.clone();
        for (w, p) in &other.coeffs {
            out.add_term(*w, p);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.basis);
        for (w, p) in &self.coeffs {
            out.add_term(*w, &(p * c));
        }
        out
    }

    /// Right multiplication by b_s; standard basis only.
    pub fn mult_standard_by_bs(&self, g: &FiniteGroup, s: Gen) -> Result<HeckeElt> {
        if self.basis != Basis::Standard {
            return Err(Error::Precondition("expected standard basis".into()));
        }
        Ok(HeckeElt { basis: Basis::Standard, coeffs: mul_standard_map_by_bs(g, &self.coeffs, s) })
    }

    /// Entries sorted by (length, id) for presentation.
    pub fn sorted_terms(&self, g: &FiniteGroup) -> Vec<(ElemId, LaurentPoly)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(w, p)| (*w, p.clone())).collect();
        v.sort_by_key(|(w, _)| (std::cmp::Reverse(g.len_of(*w)), *w));
        v
    }
}

impl KlTable {
    pub fn kl_basis_element(&self, w: ElemId) -> HeckeElt {
        HeckeElt { basis: Basis::Standard, coeffs: self.row(w).polys.clone() }
    }

    /// KL-basis element times b_s, expressed in the KL basis:
    /// b_w b_s = (v+v^-1) b_w if ws < w, else b_{ws} + sum_{ys<y<w} mu(w,y) b_y.
    pub fn kl_mul_bs(&self, h: &HeckeElt, s: Gen) -> Result<HeckeElt> {
        self.kl_mul_gen(h, s, false)
    }

    /// b_s times a KL-basis element, in the KL basis.
    pub fn bs_mul_kl(&self, s: Gen, h: &HeckeElt) -> Result<HeckeElt> {
        self.kl_mul_gen(h, s, true)
    }

    fn kl_mul_gen(&self, h: &HeckeElt, s: Gen, on_left: bool) -> Result<HeckeElt> {
        if h.basis != Basis::Kl {
            return Err(Error::Precondition("expected KL basis".into()));
        }
        let g = self.group();
        let desc = |x: ElemId| if on_left { g.has_left_descent(x, s) } else { g.has_right_descent(x, s) };
        let mut out = HeckeElt::zero(Basis::Kl);
        for (w, c) in &h.coeffs {
            if desc(*w) {
                out.add_term(*w, &(c * &LaurentPoly::quantum_two()));
                continue;
            }
            let ws = if on_left { g.lmul(s, *w) } else { g.rmul(*w, s) };
            out.add_term(ws, c);
            for (y, m) in self.mu_list(*w) {
                if desc(y) {
                    out.add_term(y, &c.scale(&m.into()));
                }
            }
        }
        Ok(out)
    }

    /// Expansion of b_{i_1} ... b_{i_k} in the KL basis.
    pub fn bott_samelson_decompose(&self, word: &[Gen]) -> Result<HeckeElt> {
        let g = self.group();
        let mut h = HeckeElt::basis_element(Basis::Kl, ElemId::IDENTITY);
        for &s in word {
            g.system().matrix().check_gen(s as usize)?;
            h = self.kl_mul_bs(&h, s)?;
        }
        Ok(h)
    }

    /// b_x b_y in the KL basis.
    pub fn kl_product(&self, x: ElemId, y: ElemId) -> HeckeElt {
        ProductMemo::new(self, x).product(y)
    }

    pub fn to_standard(&self, h: &HeckeElt) -> HeckeElt {
        if h.basis == Basis::Standard {
            return h.clone();
        }
        let mut out = HeckeElt::zero(Basis::Standard);
        for (w, c) in &h.coeffs {
            for (y, p) in &self.row(*w).polys {
                out.add_term(*y, &(c * p));
            }
        }
        out
    }

    /// Triangular change of basis: peel off the longest support element.
    pub fn to_kl(&self, h: &HeckeElt) -> HeckeElt {
        if h.basis == Basis::Kl {
            return h.clone();
        }
        let g = self.group();
        let mut rest = h.coeffs.clone();
        let mut out = HeckeElt::zero(Basis::Kl);
        while let Some((&w, c)) = rest.iter().max_by_key(|(w, _)| (g.len_of(**w), **w)) {
            let c = c.clone();
            out.add_term(w, &c);
            for (y, p) in &self.row(w).polys {
                add_into(&mut rest, *y, &-(&c * p));
            }
        }
        out
    }

    pub fn is_self_dual(&self, h: &HeckeElt) -> bool {
        self.to_kl(h).coeffs.values().all(LaurentPoly::is_bar_invariant)
    }

    /// (b, b') = sum_y q_y r_y over the standard coefficients, for self-dual
    /// arguments; `filter` restricts the sum to a subset of y.
    pub fn standard_pairing(&self, b: &HeckeElt, b2: &HeckeElt, filter: Option<&dyn Fn(ElemId) -> bool>) -> Result<LaurentPoly> {
        if !self.is_self_dual(b) || !self.is_self_dual(b2) {
            return Err(Error::NotSelfDual);
        }
        let (q, r) = (self.to_standard(b), self.to_standard(b2));
        let mut total = LaurentPoly::zero();
        for (y, qy) in &q.coeffs {
            if filter.is_some_and(|f| !f(*y)) {
                continue;
            }
            if let Some(ry) = r.coeffs.get(y) {
                total += &(qy * ry);
            }
        }
        Ok(total)
    }

    /// dim End^2(B_w) two ways: from the pairing (rank(V) + coefficient of
    /// v^2 in (b_w, b_w)) and from rank(V) + sum_{x<w} mu(w,x)^2.
    pub fn end2_dimension(&self, w: ElemId) -> (i64, i64) {
        let b = self.kl_basis_element(w);
        let pairing = self.standard_pairing(&b, &b, None).expect("KL basis is self-dual");
        let rank = self.group().rank() as i64;
        let via_mu: i64 = self.mu_list(w).iter().map(|(_, m)| m * m).sum();
        (rank + pairing.coeff_i64(2), rank + via_mu)
    }
}

/// Memoizes P(z) = b_x b_z for a fixed x via
/// P(z) = P(zs) b_s - sum_{us<u<zs} mu(zs,u) P(u).
pub struct ProductMemo<'a> {
    kl: &'a KlTable,
    x: ElemId,
    memo: HashMap<ElemId, HeckeElt>,
}

impl<'a> ProductMemo<'a> {
    pub fn new(kl: &'a KlTable, x: ElemId) -> Self {
        ProductMemo { kl, x, memo: HashMap::new() }
    }

    pub fn product(&mut self, z: ElemId) -> HeckeElt {
        if let Some(h) = self.memo.get(&z) {
            return h.clone();
        }
        let g = self.kl.group().clone();
        let out = if z == ElemId::IDENTITY {
            HeckeElt::basis_element(Basis::Kl, self.x)
        } else {
            let s = *g.word(z).letters().last().expect("nonidentity");
            let z1 = g.rmul(z, s);
            let base = self.product(z1);
            let mut acc = self.kl.kl_mul_bs(&base, s).expect("KL basis");
            for (u, m) in self.kl.mu_list(z1) {
                if g.has_right_descent(u, s) {
                    let pu = self.product(u);
                    acc = acc.add(&pu.scale(&LaurentPoly::monomial(0, -m))).expect("same basis");
                }
            }
            acc
        };
        self.memo.insert(z, out.clone());
        out
    }
}
