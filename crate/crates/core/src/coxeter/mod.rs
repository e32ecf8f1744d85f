//! Coxeter systems, realizations, elements, and the finite group table.

mod element;
mod group;
mod matrix;
mod realization;
mod word;

use std::fmt::Debug;
use std::hash::Hash;

pub use element::{require_finite, CoxeterSystem, Element};
pub use group::{ElemId, FiniteGroup, DEFAULT_ELEMENT_BOUND};
pub use matrix::{CoxeterMatrix, Gen, INFINITY};
pub use realization::{Realization, RealizationKind};
pub use word::Word;

use crate::error::{Error, Result};

/// Word-level operations shared by matrix-keyed elements and table ids; the
/// provided methods are generic algorithms on top of them.
pub trait CoxeterOps {
    type Elem: Clone + Eq + Hash + Debug;

    fn matrix(&self) -> &CoxeterMatrix;
    fn identity(&self) -> Self::Elem;
    fn length(&self, w: &Self::Elem) -> usize;
    fn mul_gen_right(&self, w: &Self::Elem, s: Gen) -> Self::Elem;
    fn mul_gen_left(&self, s: Gen, w: &Self::Elem) -> Self::Elem;
    fn is_right_descent(&self, w: &Self::Elem, s: Gen) -> bool;
    fn is_left_descent(&self, w: &Self::Elem, s: Gen) -> bool;
    fn reduced_word(&self, w: &Self::Elem) -> Word;
    fn from_word(&self, word: &[Gen]) -> Result<Self::Elem>;

    fn right_descent_set(&self, w: &Self::Elem) -> Vec<Gen> {
        self.matrix().generators().filter(|&s| self.is_right_descent(w, s)).collect()
    }

    fn left_descent_set(&self, w: &Self::Elem) -> Vec<Gen> {
        self.matrix().generators().filter(|&s| self.is_left_descent(w, s)).collect()
    }

    fn is_reduced(&self, word: &[Gen]) -> Result<bool> {
        Ok(self.length(&self.from_word(word)?) == word.len())
    }

    /// Bruhat order by the lifting property: for s with sw < w,
    /// x <= w iff min(x, sx) <= sw.
    fn bruhat_leq(&self, x: &Self::Elem, w: &Self::Elem) -> bool {
        let (mut x, mut w) = (x.clone(), w.clone());
        loop {
            let (lx, lw) = (self.length(&x), self.length(&w));
            if lx > lw {
                return false;
            }
            if lw == 0 || lx == lw {
                return x == w;
            }
            if lx == 0 {
                return true;
            }
            let s = self.left_descent_set(&w)[0];
            if self.is_left_descent(&x, s) {
                x = self.mul_gen_left(s, &x);
            }
            w = self.mul_gen_left(s, &w);
        }
    }

    /// For wi < w and a reduced word of w, find the letter whose deletion
    /// gives wi: w = x1 j x2 with wi = x1 x2 (so x2 i = j x2).
    fn deletion_composition(&self, w: &Self::Elem, i: Gen, word: &[Gen]) -> Result<(Self::Elem, Gen, Self::Elem)> {
        if self.from_word(word)? != *w || word.len() != self.length(w) {
            return Err(Error::WordNotReduced(format!("{} is not a reduced word for the element", Word::from(word))));
        }
        if !self.is_right_descent(w, i) {
            return Err(Error::Precondition(format!("{i} is not a right descent")));
        }
        let target = self.mul_gen_right(w, i);
        for p in (0..word.len()).rev() {
            let mut deleted = word.to_vec();
            deleted.remove(p);
            if self.from_word(&deleted)? == target {
                return Ok((self.from_word(&word[..p])?, word[p], self.from_word(&word[p + 1..])?));
            }
        }
        unreachable!("exchange condition guarantees a deletion position")
    }

    /// x = v x' with x' in the dihedral parabolic W_{i,j} and v minimal.
    fn dihedral_coset_decompose(&self, x: &Self::Elem, i: Gen, j: Gen) -> (Self::Elem, Word) {
        let mut v = x.clone();
        let mut tail = Vec::new();
        while let Some(s) = [i, j].into_iter().find(|&s| self.is_right_descent(&v, s)) {
            v = self.mul_gen_right(&v, s);
            tail.push(s);
        }
        tail.reverse();
        (v, Word::new(tail))
    }

    /// Longest element of the parabolic subgroup generated by `gens`.
    fn parabolic_longest(&self, gens: &[Gen]) -> Result<Self::Elem> {
        for &s in gens {
            self.matrix().check_gen(s as usize)?;
        }
        if !self.matrix().restrict(gens)?.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut w = self.identity();
        while let Some(&s) = gens.iter().find(|&&s| !self.is_right_descent(&w, s)) {
            w = self.mul_gen_right(&w, s);
        }
        Ok(w)
    }

    fn mul_word_right(&self, w: &Self::Elem, word: &[Gen]) -> Self::Elem {
        word.iter().fold(w.clone(), |acc, &s| self.mul_gen_right(&acc, s))
    }
}
