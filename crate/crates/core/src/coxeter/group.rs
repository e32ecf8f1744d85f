use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::element::{CoxeterSystem, Element};
use super::matrix::{CoxeterMatrix, Gen};
use super::word::Word;
use super::CoxeterOps;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// Default cap on the number of enumerated elements (|H4| = 14400).
pub const DEFAULT_ELEMENT_BOUND: usize = 20_000;

/// Index of an element in a `FiniteGroup` table. Ids follow breadth-first
/// order, so lengths are nondecreasing in the id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const IDENTITY: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Complete multiplication-by-generator tables of a finite Coxeter group.
#[derive(Debug)]
pub struct FiniteGroup {
    sys: CoxeterSystem,
    n: usize,
    right: Vec<u32>,
    left: Vec<u32>,
    length: Vec<u16>,
    inverse: Vec<u32>,
    words: Vec<Word>,
    right_desc: Vec<u32>,
    left_desc: Vec<u32>,
    w0: ElemId,
}

impl FiniteGroup {
    /// Enumerate W by breadth-first closure under right multiplication,
    /// identifying elements by their standard-representation matrices.
    pub fn new(sys: CoxeterSystem, bound: usize) -> Result<Self> {
        if !sys.matrix().is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let n = sys.rank();
        let mut keys: HashMap<Vec<Scalar>, u32> = HashMap::new();
        let mut mats: Vec<Vec<Scalar>> = vec![sys.identity_matrix()];
        let mut parent: Vec<(u32, Gen)> = vec![(0, 0)];
        let mut length: Vec<u16> = vec![0];
        let mut right: Vec<u32> = Vec::new();
        keys.insert(mats[0].clone(), 0);
        let mut id = 0usize;
        while id < mats.len() {
            for s in 1..=n as Gen {
                let mut m = mats[id].clone();
                sys.right_reflect(&mut m, s);
                let next = match keys.get(&m) {
                    Some(&k) => k,
                    None => {
                        let k = mats.len() as u32;
                        if mats.len() >= bound {
                            return Err(Error::GroupTooLarge { bound });
                        }
                        keys.insert(m.clone(), k);
                        mats.push(m);
                        parent.push((id as u32, s));
                        length.push(length[id] + 1);
                        k
                    }
                };
                right.push(next);
            }
            id += 1;
        }
        drop(mats);
        drop(keys);
        let size = length.len();

        // Inverse: walk the reversed parent word from the identity.
        let mut inverse = vec![0u32; size];
        for w in 1..size {
            let mut cur = 0u32;
            let mut x = w;
            while x != 0 {
                let (p, s) = parent[x];
                cur = right[cur as usize * n + s as usize - 1];
                x = p as usize;
            }
            inverse[w] = cur;
        }
        let mut left = vec![0u32; size * n];
        for w in 0..size {
            for s in 0..n {
                left[w * n + s] = inverse[right[inverse[w] as usize * n + s] as usize];
            }
        }
        let mut right_desc = vec![0u32; size];
        let mut left_desc = vec![0u32; size];
        for w in 0..size {
            for s in 0..n {
                if length[right[w * n + s] as usize] < length[w] {
                    right_desc[w] |= 1 << s;
                }
                if length[left[w * n + s] as usize] < length[w] {
                    left_desc[w] |= 1 << s;
                }
            }
        }
        let mut words = vec![Word::empty(); size];
        for w in 1..size {
            let s = left_desc[w].trailing_zeros() as usize;
            let rest = left[w * n + s] as usize;
            let mut letters = vec![s as Gen + 1];
            letters.extend_from_slice(words[rest].letters());
            words[w] = Word::new(letters);
        }
        let w0 = ElemId((size - 1) as u32);
        Ok(FiniteGroup { sys, n, right, left, length, inverse, words, right_desc, left_desc, w0 })
    }

    pub fn from_matrix(cm: CoxeterMatrix, bound: usize) -> Result<Self> {
        FiniteGroup::new(CoxeterSystem::new(cm)?, bound)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        (0..self.order() as u32).map(ElemId)
    }

    pub fn w0(&self) -> ElemId {
        self.w0
    }

    pub fn len_of(&self, w: ElemId) -> usize {
        self.length[w.index()] as usize
    }

    pub fn word(&self, w: ElemId) -> &Word {
        &self.words[w.index()]
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        ElemId(self.inverse[w.index()])
    }

    pub fn rmul(&self, w: ElemId, s: Gen) -> ElemId {
        ElemId(self.right[w.index() * self.n + s as usize - 1])
    }

    pub fn lmul(&self, s: Gen, w: ElemId) -> ElemId {
        ElemId(self.left[w.index() * self.n + s as usize - 1])
    }

    pub fn has_right_descent(&self, w: ElemId, s: Gen) -> bool {
        self.right_desc[w.index()] & (1 << (s - 1)) != 0
    }

    pub fn has_left_descent(&self, w: ElemId, s: Gen) -> bool {
        self.left_desc[w.index()] & (1 << (s - 1)) != 0
    }

    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        self.words[y.index()].letters().iter().fold(x, |acc, &s| self.rmul(acc, s))
    }

    pub fn id_from_word(&self, word: &[Gen]) -> Result<ElemId> {
        let mut w = ElemId::IDENTITY;
        for &s in word {
            self.sys.matrix().check_gen(s as usize)?;
            w = self.rmul(w, s);
        }
        Ok(w)
    }

    /// Parse a word and also require that it be reduced.
    pub fn id_from_reduced_word(&self, word: &[Gen]) -> Result<ElemId> {
        let w = self.id_from_word(word)?;
        if self.len_of(w) != word.len() {
            return Err(Error::WordNotReduced(Word::from(word).to_string()));
        }
        Ok(w)
    }

    /// Matrix-keyed element for an id.
    pub fn element(&self, w: ElemId) -> Element {
        self.sys.element_from_word(self.word(w).letters()).expect("table words are valid")
    }

    pub fn id_of(&self, e: &Element) -> ElemId {
        self.id_from_word(e.reduced_word().letters()).expect("element belongs to this group")
    }

    /// Lower Bruhat interval [e, w] via the subword property, sorted by
    /// (length, id).
    pub fn lower_interval(&self, w: ElemId) -> Vec<ElemId> {
        let mut mark = vec![false; self.order()];
        let mut members = vec![ElemId::IDENTITY];
        mark[0] = true;
        for &s in self.word(w).letters() {
            let snapshot = members.len();
            for k in 0..snapshot {
                let y = self.rmul(members[k], s);
                if !mark[y.index()] {
                    mark[y.index()] = true;
                    members.push(y);
                }
            }
        }
        members.sort_by_key(|&y| (self.len_of(y), y));
        members
    }

    /// Short stable hash of the Coxeter matrix and a realization fingerprint.
    pub fn fingerprint(&self, realization: &str) -> String {
        let mut h = Sha256::new();
        h.update(self.sys.matrix().to_string().as_bytes());
        for s in self.sys.matrix().generators() {
            for t in self.sys.matrix().generators() {
                h.update(self.sys.matrix().m(s, t).to_le_bytes());
            }
        }
        h.update(realization.as_bytes());
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl CoxeterOps for FiniteGroup {
    type Elem = ElemId;

    fn matrix(&self) -> &CoxeterMatrix {
        self.sys.matrix()
    }

    fn identity(&self) -> ElemId {
        ElemId::IDENTITY
    }

    fn length(&self, w: &ElemId) -> usize {
        self.len_of(*w)
    }

    fn mul_gen_right(&self, w: &ElemId, s: Gen) -> ElemId {
        self.rmul(*w, s)
    }

    fn mul_gen_left(&self, s: Gen, w: &ElemId) -> ElemId {
        self.lmul(s, *w)
    }

    fn is_right_descent(&self, w: &ElemId, s: Gen) -> bool {
        self.has_right_descent(*w, s)
    }

    fn is_left_descent(&self, w: &ElemId, s: Gen) -> bool {
        self.has_left_descent(*w, s)
    }

    fn reduced_word(&self, w: &ElemId) -> Word {
        self.word(*w).clone()
    }

    fn from_word(&self, word: &[Gen]) -> Result<ElemId> {
        self.id_from_word(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_small_groups() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12), ("H3", 120), ("D4", 192)] {
            let g = FiniteGroup::from_matrix(CoxeterMatrix::preset(name).unwrap(), DEFAULT_ELEMENT_BOUND).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn longest_element_is_involution() {
        let g = FiniteGroup::from_matrix(CoxeterMatrix::preset("H3").unwrap(), DEFAULT_ELEMENT_BOUND).unwrap();
        assert_eq!(g.len_of(g.w0()), 15);
        assert_eq!(g.inverse(g.w0()), g.w0());
        assert_eq!(g.lower_interval(g.w0()).len(), 120);
    }

    #[test]
    fn bound_is_enforced() {
        let err = FiniteGroup::from_matrix(CoxeterMatrix::preset("H3").unwrap(), 50).unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { bound: 50 });
    }
}
