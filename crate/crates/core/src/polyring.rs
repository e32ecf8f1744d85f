//! Polynomials in the simple roots with exact coefficients, the W-action of a
//! realization, Demazure operators, and dominant regular elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::coxeter::{CoxeterOps, Gen, Realization, Word};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

type Exponents = Vec<u16>;

/// Sparse polynomial in alpha_1..alpha_n. The Soergel grading doubles the
/// ordinary degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPolynomial {
    n: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl RootPolynomial {
    pub fn zero(n: usize) -> Self {
        RootPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = RootPolynomial::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        RootPolynomial::constant(n, Scalar::one())
    }

    /// alpha_i (1-based).
    pub fn root(n: usize, i: Gen) -> Self {
        let mut e = vec![0; n];
        e[i as usize - 1] = 1;
        let mut p = RootPolynomial::zero(n);
        p.add_term(e, Scalar::one());
        p
    }

    /// sum_j c_j alpha_j.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = RootPolynomial::zero(n);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn monomial(exps: Vec<u16>, c: Scalar) -> Self {
        let n = exps.len();
        let mut p = RootPolynomial::zero(n);
        p.add_term(exps, c);
        p
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Ordinary total degree of a homogeneous polynomial (None if zero or
    /// inhomogeneous).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Degree in the Soergel grading (deg alpha = 2).
    pub fn graded_degree(&self) -> Option<usize> {
        self.homogeneous_degree().map(|d| 2 * d)
    }

    /// The constant term if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = RootPolynomial::zero(self.n);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), x * c);
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = RootPolynomial::zero(self.n.max(other.n));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RootPolynomial::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Parse expressions over a1..an with +, -, *, ^, parentheses, rationals
    /// and sqrt(D), e.g. "3*a1^2*a2 + (1/2+1/2*sqrt(5))*a3".
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0, n };
        let out = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
        }
        Ok(out)
    }
}

impl fmt::Display for RootPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<(&Exponents, &Scalar)> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in order.into_iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("a{}", i + 1) } else { format!("a{}^{x}", i + 1) })
                .collect();
            let neg = c.is_rational() && c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for RootPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(Gen),
    Sqrt(u32),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c == 'a' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let k: Gen = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("bad variable"))?;
            out.push(Tok::Var(k));
        } else if chars[i..].starts_with(&['s', 'q', 'r', 't', '(']) {
            let start = i + 5;
            let end = chars[start..].iter().position(|&c| c == ')').ok_or_else(|| bad("unclosed sqrt"))? + start;
            let d: u32 = chars[start..end].iter().collect::<String>().trim().parse().map_err(|_| bad("bad radicand"))?;
            out.push(Tok::Sqrt(d));
            i = end + 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad(&format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek_op(&self, c: char) -> bool {
        self.tokens.get(self.pos) == Some(&Tok::Op(c))
    }

    fn expr(&mut self) -> Result<RootPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RootPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.peek_op('/') {
                self.pos += 1;
                let d = self.unary()?.as_constant().ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&d.inverse()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RootPolynomial> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.scale(&Scalar::from_int(-1)));
        }
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(k)) => {
                    let k: u32 = k.parse().map_err(|_| Error::Parse("bad exponent".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RootPolynomial> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(k) => {
                let r: BigRational = BigRational::from_integer(k.parse().map_err(|_| Error::Parse("bad number".into()))?);
                Ok(RootPolynomial::constant(self.n, Scalar::from_rational(r)))
            }
            Tok::Sqrt(d) => Ok(RootPolynomial::constant(self.n, Scalar::sqrt(d)?)),
            Tok::Var(k) => {
                if k == 0 || k as usize > self.n {
                    return Err(Error::GeneratorOutOfRange { gen: k as usize, rank: self.n });
                }
                Ok(RootPolynomial::root(self.n, k))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.peek_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

/// The W-action and Demazure operators of a fixed realization, with
/// per-monomial memoization.
#[derive(Debug)]
pub struct PolyRing {
    real: Arc<Realization>,
    reflect_memo: Mutex<HashMap<(Gen, Exponents), RootPolynomial>>,
    demazure_memo: Mutex<HashMap<(Gen, Exponents), RootPolynomial>>,
}

impl PolyRing {
    pub fn new(real: Arc<Realization>) -> Self {
        PolyRing { real, reflect_memo: Mutex::new(HashMap::new()), demazure_memo: Mutex::new(HashMap::new()) }
    }

    pub fn realization(&self) -> &Arc<Realization> {
        &self.real
    }

    pub fn rank(&self) -> usize {
        self.real.rank()
    }

    fn check(&self, i: Gen, f: &RootPolynomial) -> Result<()> {
        if i == 0 || i as usize > self.rank() {
            return Err(Error::GeneratorOutOfRange { gen: i as usize, rank: self.rank() });
        }
        if f.n != self.rank() {
            return Err(Error::Precondition(format!("polynomial has {} variables, ring has {}", f.n, self.rank())));
        }
        Ok(())
    }

    pub fn root(&self, i: Gen) -> RootPolynomial {
        RootPolynomial::root(self.rank(), i)
    }

    /// s_i(alpha_j) = alpha_j - a_ij alpha_i.
    pub fn reflect_root(&self, i: Gen, j: Gen) -> RootPolynomial {
        self.root(j).sub(&self.root(i).scale(&self.real.a(i, j)))
    }

    fn reflect_monomial(&self, i: Gen, e: &Exponents) -> RootPolynomial {
        if let Some(p) = self.reflect_memo.lock().expect("memo").get(&(i, e.clone())) {
            return p.clone();
        }
        let mut acc = RootPolynomial::one(self.rank());
        for (j, &k) in e.iter().enumerate() {
            if k > 0 {
                acc = acc.mul(&self.reflect_root(i, j as Gen + 1).pow(k as u32));
            }
        }
        self.reflect_memo.lock().expect("memo").insert((i, e.clone()), acc.clone());
        acc
    }

    /// The ring automorphism s_i.
    pub fn reflect(&self, i: Gen, f: &RootPolynomial) -> Result<RootPolynomial> {
        self.check(i, f)?;
        let mut out = RootPolynomial::zero(self.rank());
        for (e, c) in &f.terms {
            out = out.add(&self.reflect_monomial(i, e).scale(c));
        }
        Ok(out)
    }

    /// d_i on a monomial by the twisted Leibniz rule
    /// d(alpha_j m) = a_ij m + s_i(alpha_j) d(m).
    fn demazure_monomial(&self, i: Gen, e: &Exponents) -> RootPolynomial {
        let Some(j) = e.iter().position(|&k| k > 0) else {
            return RootPolynomial::zero(self.rank());
        };
        if let Some(p) = self.demazure_memo.lock().expect("memo").get(&(i, e.clone())) {
            return p.clone();
        }
        let mut rest = e.clone();
        rest[j] -= 1;
        let m = RootPolynomial::monomial(rest.clone(), Scalar::one());
        let jg = j as Gen + 1;
        let out = m.scale(&self.real.a(i, jg)).add(&self.reflect_root(i, jg).mul(&self.demazure_monomial(i, &rest)));
        self.demazure_memo.lock().expect("memo").insert((i, e.clone()), out.clone());
        out
    }

    pub fn demazure(&self, i: Gen, f: &RootPolynomial) -> Result<RootPolynomial> {
        self.check(i, f)?;
        let mut out = RootPolynomial::zero(self.rank());
        for (e, c) in &f.terms {
            out = out.add(&self.demazure_monomial(i, e).scale(c));
        }
        Ok(out)
    }

    /// d_{i_1} o ... o d_{i_k}; the last letter acts first.
    pub fn demazure_word(&self, word: &[Gen], f: &RootPolynomial) -> Result<RootPolynomial> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.demazure(i, &g)?;
        }
        Ok(g)
    }

    /// d_w along a reduced word, rejecting non-reduced input.
    pub fn demazure_element<C: CoxeterOps>(&self, sys: &C, word: &[Gen], f: &RootPolynomial) -> Result<RootPolynomial> {
        if !sys.is_reduced(word)? {
            return Err(Error::WordNotReduced(Word::new(word.to_vec()).to_string()));
        }
        self.demazure_word(word, f)
    }

    /// s_{i_1} o ... o s_{i_k}.
    pub fn reflect_word(&self, word: &[Gen], f: &RootPolynomial) -> Result<RootPolynomial> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.reflect(i, &g)?;
        }
        Ok(g)
    }

    /// The linear element rho with d_i(rho) = values[i] for all i.
    pub fn rho_with_values(&self, values: &[Scalar]) -> Result<RootPolynomial> {
        let n = self.rank();
        if values.len() != n {
            return Err(Error::Precondition(format!("expected {n} values")));
        }
        let rows = self.real.rows();
        let mut aug: Vec<Vec<Scalar>> = rows.into_iter().zip(values).map(|(mut r, v)| {
            r.push(v.clone());
            r
        }).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::SingularCartan)?;
            aug.swap(col, piv);
            let inv = aug[col][col].inverse()?;
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for k in col..=n {
                        let delta = &factor * &aug[col][k];
                        aug[r][k] = &aug[r][k] - &delta;
                    }
                }
            }
        }
        let coeffs: Vec<Scalar> = aug.into_iter().map(|r| r[n].clone()).collect();
        Ok(RootPolynomial::linear(&coeffs))
    }

    /// The standard rho: d_i(rho) = 1 for every i.
    pub fn rho_standard(&self) -> Result<RootPolynomial> {
        self.rho_with_values(&vec![Scalar::one(); self.rank()])
    }

    /// A random dominant regular element with d_i(rho) in {p/q : 1 <= p <= 9, 1 <= q <= 4}.
    pub fn random_dominant_regular<R: Rng>(&self, rng: &mut R) -> Result<RootPolynomial> {
        let values: Vec<Scalar> = (0..self.rank()).map(|_| Scalar::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=4))).collect();
        self.rho_with_values(&values)
    }

    pub fn is_dominant_regular(&self, rho: &RootPolynomial) -> Result<bool> {
        if rho.homogeneous_degree() != Some(1) {
            return Ok(false);
        }
        for i in 1..=self.rank() as Gen {
            let d = self.demazure(i, rho)?.as_constant().expect("degree drops by one");
            if !d.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn require_dominant_regular(&self, rho: &RootPolynomial) -> Result<()> {
        if self.is_dominant_regular(rho)? {
            Ok(())
        } else {
            Err(Error::NotDominantRegular)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn ring(name: &str) -> PolyRing {
        PolyRing::new(Arc::new(Realization::default_for(&CoxeterMatrix::preset(name).unwrap()).unwrap()))
    }

    #[test]
    fn parse_and_print() {
        let p = RootPolynomial::parse("3*a1^2*a2 + (1/2+1/2*sqrt(5))*a3 - 2", 3).unwrap();
        assert_eq!(p.to_string(), "3*a1^2*a2 + (1/2+1/2*sqrt(5))*a3 - 2");
        assert_eq!(RootPolynomial::parse(&p.to_string(), 3).unwrap(), p);
        assert_eq!(RootPolynomial::parse("(a1+a2)^2", 2).unwrap().to_string(), "a1^2 + 2*a1*a2 + a2^2");
        assert!(RootPolynomial::parse("a4", 3).is_err());
    }

    #[test]
    fn demazure_of_roots() {
        let r = ring("A2");
        assert_eq!(r.demazure(1, &r.root(1)).unwrap(), RootPolynomial::constant(2, Scalar::from_int(2)));
        assert_eq!(r.demazure(1, &r.root(2)).unwrap(), RootPolynomial::constant(2, Scalar::from_int(-1)));
    }

    #[test]
    fn rho_for_a2() {
        let r = ring("A2");
        assert_eq!(r.rho_standard().unwrap(), RootPolynomial::parse("a1 + a2", 2).unwrap());
    }

    #[test]
    fn dominance() {
        let r = ring("H3");
        assert!(r.is_dominant_regular(&r.rho_standard().unwrap()).unwrap());
        assert!(!r.is_dominant_regular(&r.root(1)).unwrap());
    }
}
