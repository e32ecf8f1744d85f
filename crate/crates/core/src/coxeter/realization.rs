use serde::Serialize;

use super::matrix::{CoxeterMatrix, Gen, INFINITY};
use crate::error::{Error, Result};
use crate::exactnum::{FieldSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationKind {
    Standard,
    Crystallographic,
    Custom,
}

impl std::str::FromStr for RealizationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(RealizationKind::Standard),
            "crystallographic" | "cryst" => Ok(RealizationKind::Crystallographic),
            "custom" => Ok(RealizationKind::Custom),
            _ => Err(Error::Parse(format!("unknown realization {s:?}"))),
        }
    }
}

/// Cartan data a_ij = alpha_i^vee(alpha_j) of a balanced realization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    kind: RealizationKind,
    field: FieldSpec,
    rank: usize,
    cartan: Vec<Scalar>,
}

fn neg_two_cos_pi_over(m: u32) -> Result<Scalar> {
    match m {
        INFINITY => Ok(Scalar::from_int(-2)),
        2 => Ok(Scalar::zero()),
        3 => Ok(Scalar::from_int(-1)),
        4 => Ok(-Scalar::sqrt(2)?),
        5 => Ok(-Scalar::golden_ratio()),
        6 => Ok(-Scalar::sqrt(3)?),
        _ => Err(Error::UnsupportedIrrationality(format!("2cos(pi/{m}) is not quadratic"))),
    }
}

impl Realization {
    /// a_ij = -2cos(pi/m_ij).
    pub fn standard(cm: &CoxeterMatrix) -> Result<Self> {
        let n = cm.rank();
        let mut cartan = Vec::with_capacity(n * n);
        for s in cm.generators() {
            for t in cm.generators() {
                cartan.push(if s == t { Scalar::from_int(2) } else { neg_two_cos_pi_over(cm.m(s, t))? });
            }
        }
        Realization::assemble(RealizationKind::Standard, n, cartan)
    }

    /// Integral Cartan matrix. For i < j the lower index carries the longer
    /// entry: (a_ij, a_ji) = (-2, -1) when m = 4 and (-3, -1) when m = 6.
    pub fn crystallographic(cm: &CoxeterMatrix) -> Result<Self> {
        let n = cm.rank();
        let mut cartan = Vec::with_capacity(n * n);
        for s in cm.generators() {
            for t in cm.generators() {
                let a = if s == t {
                    2
                } else {
                    match (cm.m(s, t), s < t) {
                        (2, _) => 0,
                        (3, _) => -1,
                        (4, true) => -2,
                        (6, true) => -3,
                        (4 | 6, false) => -1,
                        (INFINITY, _) => -2,
                        (m, _) => return Err(Error::NotCrystallographic(format!("m = {m} between {s} and {t}"))),
                    }
                };
                cartan.push(Scalar::from_int(a));
            }
        }
        Realization::assemble(RealizationKind::Crystallographic, n, cartan)
    }

    /// Crystallographic where possible, otherwise standard.
    pub fn default_for(cm: &CoxeterMatrix) -> Result<Self> {
        Realization::crystallographic(cm).or_else(|_| Realization::standard(cm))
    }

    /// User-supplied Cartan matrix, validated against the Coxeter matrix.
    pub fn custom(cm: &CoxeterMatrix, cartan: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = cm.rank();
        if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("Cartan matrix must be {n}x{n}")));
        }
        let real = Realization::assemble(RealizationKind::Custom, n, cartan.into_iter().flatten().collect())?;
        real.validate(cm)?;
        Ok(real)
    }

    fn assemble(kind: RealizationKind, rank: usize, cartan: Vec<Scalar>) -> Result<Self> {
        let mut field = FieldSpec::Rationals;
        for a in &cartan {
            field = field.join(a.field()).map_err(|_| {
                Error::UnsupportedIrrationality("realization needs two different square roots".into())
            })?;
        }
        Ok(Realization { kind, field, rank, cartan })
    }

    /// Check a_ii = 2 and the balanced conditions pair by pair.
    pub fn validate(&self, cm: &CoxeterMatrix) -> Result<()> {
        let bad = |s: Gen, t: Gen, why: &str| Err(Error::UnbalancedRealization(format!("pair ({s},{t}): {why}")));
        for s in cm.generators() {
            if self.a(s, s) != Scalar::from_int(2) {
                return bad(s, s, "diagonal entry must be 2");
            }
            for t in cm.generators().filter(|&t| t > s) {
                let (ast, ats) = (self.a(s, t), self.a(t, s));
                let m = cm.m(s, t);
                let ok = match m {
                    2 => ast.is_zero() && ats.is_zero(),
                    3 => ast == Scalar::from_int(-1) && ats == Scalar::from_int(-1),
                    4 => &ast * &ats == Scalar::from_int(2),
                    5 => {
                        let inner = &(&ast * &ats) - &Scalar::from_int(2);
                        &ast * &inner == Scalar::from_int(-1) && &ats * &inner == Scalar::from_int(-1)
                    }
                    INFINITY => true,
                    _ => {
                        let m = m as usize;
                        self.quantum(m, s, t).is_zero()
                            && self.quantum(m, t, s).is_zero()
                            && self.quantum(m - 1, s, t).is_one()
                            && self.quantum(m - 1, t, s).is_one()
                    }
                };
                if !ok {
                    return bad(s, t, &format!("entries {ast}, {ats} are not balanced for m = {m}"));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> RealizationKind {
        self.kind
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// a_ij = alpha_i^vee(alpha_j) = d_i(alpha_j).
    pub fn a(&self, i: Gen, j: Gen) -> Scalar {
        self.cartan[(i as usize - 1) * self.rank + j as usize - 1].clone()
    }

    pub fn a_ref(&self, i: Gen, j: Gen) -> &Scalar {
        &self.cartan[(i as usize - 1) * self.rank + j as usize - 1]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.cartan.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Two-colored quantum number [k]_{i,j}: [0] = 0, [1] = 1,
    /// [2]_{i,j} = -a_ij, [k]_{i,j} = [2]_{i,j}[k-1]_{j,i} - [k-2]_{i,j}.
    pub fn quantum(&self, k: usize, i: Gen, j: Gen) -> Scalar {
        // (x, y) tracks ([k]_{i,j}, [k]_{j,i}).
        let two_ij = -self.a(i, j);
        let two_ji = -self.a(j, i);
        let (mut prev, mut cur) = ((Scalar::zero(), Scalar::zero()), (Scalar::one(), Scalar::one()));
        if k == 0 {
            return Scalar::zero();
        }
        for _ in 1..k {
            let next = (&(&two_ij * &cur.1) - &prev.0, &(&two_ji * &cur.0) - &prev.1);
            prev = cur;
            cur = next;
        }
        cur.0
    }

    /// Stable textual description used for cache namespacing.
    pub fn fingerprint(&self) -> String {
        let entries: Vec<String> = self.cartan.iter().map(|a| a.to_string()).collect();
        format!("{:?}:{}", self.kind, entries.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_quantum_sequence() {
        let r = Realization::crystallographic(&CoxeterMatrix::type_g2()).unwrap();
        assert_eq!(r.a(1, 2), Scalar::from_int(-3));
        assert_eq!(r.a(2, 1), Scalar::from_int(-1));
        let seq: Vec<Scalar> = (1..=5).map(|k| if k % 2 == 0 { r.quantum(k, 1, 2) } else { r.quantum(k, 2, 1) }).collect();
        let want: Vec<Scalar> = [1, 3, 2, 3, 1].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(seq, want);
        assert!(r.quantum(6, 1, 2).is_zero());
    }

    #[test]
    fn standard_h4_uses_golden_ratio() {
        let r = Realization::standard(&CoxeterMatrix::type_h4()).unwrap();
        assert_eq!(r.field(), FieldSpec::Quadratic(5));
        assert_eq!(r.quantum(2, 1, 2), Scalar::golden_ratio());
        r.validate(&CoxeterMatrix::type_h4()).unwrap();
    }

    #[test]
    fn presets_are_balanced() {
        for name in ["A3", "B3", "D4", "F4", "G2"] {
            let cm = CoxeterMatrix::preset(name).unwrap();
            Realization::crystallographic(&cm).unwrap().validate(&cm).unwrap();
            Realization::standard(&cm).unwrap().validate(&cm).unwrap();
        }
    }

    #[test]
    fn rejects_unbalanced_and_non_quadratic() {
        let cm = CoxeterMatrix::type_b(2);
        let bad = vec![vec![Scalar::from_int(2), Scalar::from_int(-1)], vec![Scalar::from_int(-1), Scalar::from_int(2)]];
        assert!(matches!(Realization::custom(&cm, bad), Err(Error::UnbalancedRealization(_))));
        assert!(matches!(
            Realization::standard(&CoxeterMatrix::type_i2(7)),
            Err(Error::UnsupportedIrrationality(_))
        ));
        assert!(matches!(
            Realization::crystallographic(&CoxeterMatrix::type_h3()),
            Err(Error::NotCrystallographic(_))
        ));
    }
}
