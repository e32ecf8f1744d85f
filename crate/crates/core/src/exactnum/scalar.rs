use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: either Q or Q(sqrt(D)) for a squarefree D > 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum FieldSpec {
    Rationals,
    Quadratic(u32),
}

impl FieldSpec {
    pub fn quadratic(d: u32) -> Result<Self> {
        if d < 2 || !squarefree(d) {
            return Err(Error::Parse(format!("sqrt({d}) does not define a quadratic field")));
        }
        Ok(FieldSpec::Quadratic(d))
    }

    /// Smallest field containing both, if one exists within the single-sqrt rule.
    pub fn join(self, other: FieldSpec) -> Result<FieldSpec> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (FieldSpec::Rationals, b) => Ok(b),
            (a, FieldSpec::Rationals) => Ok(a),
            (a, b) => Err(Error::FieldMismatch { left: a, right: b }),
        }
    }

    fn radicand(self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Quadratic(d) => Some(d),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

fn squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// An exact number a + b*sqrt(D). When b is zero the field tag is irrelevant
/// for equality, so rationals mix freely with any quadratic field.
#[derive(Debug, Clone)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    field: FieldSpec,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), field: FieldSpec::Rationals }
    }

    /// a + b*sqrt(d).
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        let field = FieldSpec::quadratic(d)?;
        Ok(Scalar { a, b, field }.normalized())
    }

    /// sqrt(d) itself.
    pub fn sqrt(d: u32) -> Result<Self> {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    /// The golden ratio (1 + sqrt(5))/2.
    pub fn golden_ratio() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Scalar { a: half.clone(), b: half, field: FieldSpec::Quadratic(5) }
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.field = FieldSpec::Rationals;
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        let field = self.field.join(rhs.field)?;
        Ok(Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, field }.normalized())
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        let field = self.field.join(rhs.field)?;
        let d = BigRational::from_integer(field.radicand().unwrap_or(0).into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Scalar { a, b, field }.normalized())
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = BigRational::from_integer(self.field.radicand().unwrap_or(0).into());
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        Ok(Scalar { a: &self.a / &norm, b: -&self.b / &norm, field: self.field }.normalized())
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, negative exponents invert.
    pub fn powi(&self, k: i32) -> Result<Scalar> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inverse()?.pow(k.unsigned_abs()))
        }
    }

    /// Sign under the real embedding sqrt(D) > 0.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                let d = BigRational::from_integer(self.field.radicand().unwrap_or(0).into());
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * d;
                match a2.cmp(&b2d) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Galois conjugate a - b*sqrt(D).
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b, field: self.field }
    }

    /// Parse "p/q", "a+b*sqrt(D)", "b*sqrt(D)", "-sqrt(D)" and parenthesized forms.
    pub fn parse(s: &str) -> Result<Scalar> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = strip_parens(&t);
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(pos) = t.find("sqrt(") else {
            return parse_rational(t).map(Scalar::from_rational);
        };
        let rest = &t[pos + 5..];
        let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed sqrt in {s:?}")))?;
        if close + 1 != rest.len() {
            return Err(Error::Parse(format!("trailing text after sqrt in {s:?}")));
        }
        let d: u32 = rest[..close].parse().map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
        let mut prefix = &t[..pos];
        if let Some(p) = prefix.strip_suffix('*') {
            prefix = p;
        }
        let split = prefix
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !prefix[..i].ends_with(['+', '-', '/']))
            .map(|(i, _)| i)
            .next_back();
        let (a_str, b_str) = match split {
            Some(i) => (&prefix[..i], &prefix[i..]),
            None => ("", prefix),
        };
        let a = if a_str.is_empty() { BigRational::zero() } else { parse_rational(a_str)? };
        let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
        let b = match b_str {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Scalar::quadratic(a, b, d)
    }
}

fn strip_parens(mut t: &str) -> &str {
    while t.starts_with('(') && t.ends_with(')') && balanced(&t[1..t.len() - 1]) {
        t = &t[1..t.len() - 1];
    }
    t
}

fn balanced(t: &str) -> bool {
    let mut depth = 0i32;
    for c in t.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() || p.is_negative() || q.is_negative() {
        return Err(bad());
    }
    let r = BigRational::new(p, q);
    Ok(if neg { -r } else { r })
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.field.radicand().filter(|_| !self.b.is_zero()) else {
            return write!(f, "{}", fmt_rational(&self.a));
        };
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&fmt_rational(&self.a));
            if self.b.is_positive() {
                out.push('+');
            }
        }
        if self.b == -BigRational::one() {
            out.push('-');
        } else if !self.b.is_one() {
            out.push_str(&fmt_rational(&self.b));
            out.push('*');
        }
        out.push_str(&format!("sqrt({d})"));
        f.write_str(&out)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

// Operator impls panic on incompatible fields; the try_* methods report it.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, field: self.field }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> Scalar {
        Scalar::golden_ratio()
    }

    #[test]
    fn golden_ratio_identity() {
        let p = phi();
        assert_eq!(&p * &p, &p + &Scalar::one());
        assert_eq!(p.inverse().unwrap(), &p - &Scalar::one());
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert!(Scalar::parse("3-sqrt(5)").unwrap().is_positive());
        assert!(Scalar::parse("2-sqrt(5)").unwrap().is_negative());
        assert!(Scalar::parse("-3+sqrt(5)").unwrap().is_negative());
        assert!(Scalar::parse("-2+sqrt(5)").unwrap().is_positive());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-1", "2/3", "1/2+1/2*sqrt(5)", "sqrt(2)", "-sqrt(3)", "1-2/3*sqrt(5)", "-1/2*sqrt(5)"] {
            let x = Scalar::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn parse_variants() {
        assert_eq!(Scalar::parse("(1/2+1/2*sqrt(5))").unwrap(), phi());
        assert_eq!(Scalar::parse("1/2+-1/2*sqrt(5)").unwrap(), phi().conjugate());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("sqrt(4)").is_err());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Scalar::sqrt(2).unwrap();
        let b = Scalar::sqrt(5).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        assert_eq!(Scalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_mixes_with_quadratic() {
        let x = &Scalar::sqrt(2).unwrap() * &Scalar::sqrt(2).unwrap();
        assert_eq!(x, Scalar::from_int(2));
        assert_eq!(x.field(), FieldSpec::Rationals);
    }
}
