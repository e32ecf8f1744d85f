use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::matrix::{CoxeterMatrix, Gen};
use super::realization::Realization;
use super::word::Word;
use super::CoxeterOps;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// A Coxeter system together with its standard geometric representation,
/// whose matrices serve as canonical element keys.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    key_rep: Realization,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        let key_rep = Realization::standard(&matrix)?;
        Ok(CoxeterSystem { matrix, key_rep })
    }

    pub fn preset(name: &str) -> Result<Self> {
        CoxeterSystem::new(CoxeterMatrix::preset(name)?)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn n(&self) -> usize {
        self.matrix.rank()
    }

    /// M * S_i: column j becomes col_j - a_ij col_i.
    pub(crate) fn right_reflect(&self, mat: &mut [Scalar], i: Gen) {
        let n = self.n();
        let ic = i as usize - 1;
        for j in 0..n {
            let a = self.key_rep.a_ref(i, j as Gen + 1);
            if j == ic || a.is_zero() {
                continue;
            }
            for r in 0..n {
                let delta = &mat[r * n + ic] * a;
                mat[r * n + j] = &mat[r * n + j] - &delta;
            }
        }
        for r in 0..n {
            mat[r * n + ic] = -&mat[r * n + ic];
        }
    }

    /// S_i * M: row i becomes row_i - sum_k a_ik row_k.
    pub(crate) fn left_reflect(&self, mat: &mut [Scalar], i: Gen) {
        let n = self.n();
        let ir = i as usize - 1;
        for c in 0..n {
            let mut acc = Scalar::zero();
            for k in 0..n {
                let a = self.key_rep.a_ref(i, k as Gen + 1);
                if !a.is_zero() {
                    acc = &acc + &(a * &mat[k * n + c]);
                }
            }
            mat[ir * n + c] = &mat[ir * n + c] - &acc;
        }
    }

    pub(crate) fn identity_matrix(&self) -> Vec<Scalar> {
        let n = self.n();
        (0..n * n).map(|k| if k / n == k % n { Scalar::one() } else { Scalar::zero() }).collect()
    }

    /// Column j of M is nonpositive (and hence a negative root).
    pub(crate) fn column_negative(&self, mat: &[Scalar], j: Gen) -> bool {
        let n = self.n();
        let c = j as usize - 1;
        (0..n).all(|r| !mat[r * n + c].is_positive())
    }

    fn build(&self, mat: Vec<Scalar>, inv: Vec<Scalar>) -> Element {
        // ShortLex word: peel off the smallest left descent repeatedly.
        let mut word = Vec::new();
        let (mut m, mut mi) = (mat.clone(), inv.clone());
        loop {
            let Some(i) = self.matrix.generators().find(|&i| self.column_negative(&mi, i)) else {
                break;
            };
            word.push(i);
            self.left_reflect(&mut m, i);
            self.right_reflect(&mut mi, i);
        }
        let right = self.matrix.generators().filter(|&i| self.column_negative(&mat, i)).collect();
        let left = self.matrix.generators().filter(|&i| self.column_negative(&inv, i)).collect();
        Element(Arc::new(ElementData { mat, inv, word: Word::new(word), right, left }))
    }

    pub fn element_from_word(&self, word: &[Gen]) -> Result<Element> {
        let mut mat = self.identity_matrix();
        let mut inv = self.identity_matrix();
        for &s in word {
            self.matrix.check_gen(s as usize)?;
            self.right_reflect(&mut mat, s);
            self.left_reflect(&mut inv, s);
        }
        Ok(self.build(mat, inv))
    }

    pub fn identity_element(&self) -> Element {
        self.build(self.identity_matrix(), self.identity_matrix())
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        let n = self.n();
        let mul = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            (0..n * n)
                .map(|k| (0..n).map(|t| &a[(k / n) * n + t] * &b[t * n + k % n]).sum())
                .collect()
        };
        self.build(mul(&x.0.mat, &y.0.mat), mul(&y.0.inv, &x.0.inv))
    }

    pub fn inverse(&self, x: &Element) -> Element {
        self.build(x.0.inv.clone(), x.0.mat.clone())
    }
}

#[derive(Debug)]
struct ElementData {
    mat: Vec<Scalar>,
    inv: Vec<Scalar>,
    word: Word,
    right: Vec<Gen>,
    left: Vec<Gen>,
}

/// Group element keyed by its matrix in the standard representation.
#[derive(Debug, Clone)]
pub struct Element(Arc<ElementData>);

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.mat == other.0.mat
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.mat.hash(state);
    }
}

impl Element {
    pub fn length(&self) -> usize {
        self.0.word.len()
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> &Word {
        &self.0.word
    }

    pub fn right_descents(&self) -> &[Gen] {
        &self.0.right
    }

    pub fn left_descents(&self) -> &[Gen] {
        &self.0.left
    }

    pub fn is_identity(&self) -> bool {
        self.0.word.is_empty()
    }

    pub fn key(&self) -> &[Scalar] {
        &self.0.mat
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.word)
    }
}

impl CoxeterOps for CoxeterSystem {
    type Elem = Element;

    fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    fn identity(&self) -> Element {
        self.identity_element()
    }

    fn length(&self, w: &Element) -> usize {
        w.length()
    }

    fn mul_gen_right(&self, w: &Element, s: Gen) -> Element {
        let (mut mat, mut inv) = (w.0.mat.clone(), w.0.inv.clone());
        self.right_reflect(&mut mat, s);
        self.left_reflect(&mut inv, s);
        self.build(mat, inv)
    }

    fn mul_gen_left(&self, s: Gen, w: &Element) -> Element {
        let (mut mat, mut inv) = (w.0.mat.clone(), w.0.inv.clone());
        self.left_reflect(&mut mat, s);
        self.right_reflect(&mut inv, s);
        self.build(mat, inv)
    }

    fn is_right_descent(&self, w: &Element, s: Gen) -> bool {
        w.0.right.contains(&s)
    }

    fn is_left_descent(&self, w: &Element, s: Gen) -> bool {
        w.0.left.contains(&s)
    }

    fn reduced_word(&self, w: &Element) -> Word {
        w.0.word.clone()
    }

    fn from_word(&self, word: &[Gen]) -> Result<Element> {
        self.element_from_word(word)
    }
}

/// Used by callers who want a descriptive error for infinite groups.
pub fn require_finite(cm: &CoxeterMatrix) -> Result<()> {
    if cm.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteGroup)
    }
}
