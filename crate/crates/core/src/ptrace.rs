//! Partial traces along linear branching graphs and categorical dimensions of
//! parabolic diagonal cells.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterOps, ElemId, Gen, Word};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::hecke::KlTable;
use crate::liftrace::{lif_closed, out_edges};
use crate::polyring::{PolyRing, RootPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// The C-recursion that bypasses the B morphisms.
    Better,
    /// The A/B/C system.
    Abc,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "better" => Ok(Engine::Better),
            "abc" => Ok(Engine::Abc),
            _ => Err(Error::Parse(format!("unknown engine {s:?}"))),
        }
    }
}

/// Spine data for d t_1 ... t_m, checked to be linear from d onwards.
#[derive(Debug, Clone)]
pub struct LinearTraceSetup {
    pub d: Word,
    pub t: Word,
    /// x_0 = d, ..., x_m = dt.
    pub xs: Vec<ElemId>,
    /// delta[k] for 0 <= k < m; delta[0] is always false.
    pub delta: Vec<bool>,
    /// lif[k] = LIF(x_k, t_{k+1}, x_{k-1}) where delta[k].
    pub lif: Vec<Option<Scalar>>,
}

impl LinearTraceSetup {
    pub fn new(kl: &KlTable, ring: &PolyRing, d: &[Gen], t: &[Gen]) -> Result<Self> {
        let g = kl.group();
        let full: Vec<Gen> = d.iter().chain(t).copied().collect();
        for &s in &full {
            g.system().matrix().check_gen(s as usize)?;
        }
        if !g.is_reduced(&full)? {
            return Err(Error::WordNotReduced(Word::new(full).to_string()));
        }
        let mut xs = vec![g.id_from_word(d)?];
        for &s in t {
            xs.push(g.rmul(*xs.last().expect("nonempty"), s));
        }
        let m = t.len();
        let mut delta = vec![false; m];
        let mut lif = vec![None; m];
        for k in 1..m {
            let s = t[k];
            let (x, prev) = (xs[k], xs[k - 1]);
            delta[k] = g.has_right_descent(prev, s);
            let extra: Vec<(ElemId, i64)> = out_edges(kl, x, s).into_iter().filter(|&(y, _)| y != xs[k + 1]).collect();
            let expected: Vec<(ElemId, i64)> = if delta[k] { vec![(prev, 1)] } else { Vec::new() };
            if extra != expected {
                let shown: Vec<String> = extra.iter().map(|(y, mu)| format!("{}(mu={mu})", g.word(*y))).collect();
                return Err(Error::NotLinear(format!(
                    "{} with {s} branches to [{}]",
                    g.word(x),
                    shown.join(", ")
                )));
            }
            if delta[k] {
                lif[k] = Some(lif_closed(kl, ring.realization(), x, s, prev)?);
            }
        }
        Ok(LinearTraceSetup { d: Word::new(d.to_vec()), t: Word::new(t.to_vec()), xs, delta, lif })
    }

    pub fn steps(&self) -> usize {
        self.t.len()
    }

    /// (-L_k)^{-1}, defined where delta[k].
    fn neg_inv_lif(&self, k: usize) -> Result<Scalar> {
        let l = self.lif[k].as_ref().expect("lif present where delta holds");
        (-l).inverse()
    }
}

type Level = BTreeMap<u32, RootPolynomial>;

fn add_to(level: &mut Level, a: u32, p: RootPolynomial) {
    if p.is_zero() {
        return;
    }
    let slot = level.remove(&a);
    let sum = match slot {
        Some(q) => q.add(&p),
        None => p,
    };
    if !sum.is_zero() {
        level.insert(a, sum);
    }
}

fn big(n: u64) -> Scalar {
    Scalar::from_rational(BigInt::from(n).into())
}

/// The grid f_{k,a}: entry k holds the inputs to C_{k,a}. Level m is {0: f};
/// the trace is f_{0,0}.
pub fn better_grid(setup: &LinearTraceSetup, ring: &PolyRing, f: &RootPolynomial) -> Result<Vec<Level>> {
    let m = setup.steps();
    let mut levels: Vec<Level> = vec![Level::new(); m + 1];
    add_to(&mut levels[m], 0, f.clone());
    for k in (0..m).rev() {
        let s = setup.t.letters()[k];
        let alpha = ring.root(s);
        let delta = setup.delta[k];
        let c = if delta { Some(setup.neg_inv_lif(k)?) } else { None };
        let above = std::mem::take(&mut levels[k + 1]);
        let mut below = Level::new();
        for (&a, g) in &above {
            let dg = ring.demazure(s, g)?;
            if a == 0 {
                add_to(&mut below, 0, alpha.mul(&dg));
                if let Some(c) = &c {
                    add_to(&mut below, 1, dg.scale(c));
                }
                continue;
            }
            add_to(&mut below, 0, alpha.pow(a).mul(g));
            if let Some(c) = &c {
                for j in 1..=a {
                    let coeff = &big(binomial(a as u64 + 1, j as u64)) * &c.pow(j);
                    add_to(&mut below, j, alpha.pow(a - j).mul(g).scale(&coeff));
                }
                add_to(&mut below, a, ring.reflect(s, g)?.scale(&-&c.pow(a)));
                add_to(&mut below, a + 1, dg.scale(&c.pow(a + 1)));
            }
        }
        levels[k + 1] = above;
        levels[k] = below;
    }
    Ok(levels)
}

/// The A/B/C recursion, run level by level on pending inputs.
fn abc_trace(setup: &LinearTraceSetup, ring: &PolyRing, f: &RootPolynomial) -> Result<RootPolynomial> {
    let m = setup.steps();
    let mut c_level = Level::new();
    add_to(&mut c_level, 0, f.clone());
    for k in (1..=m).rev() {
        let s = setup.t.letters()[k - 1];
        let alpha = ring.root(s);
        // C_{k,a} -> B_{k,.}
        let mut b_level = Level::new();
        for (&a, g) in &c_level {
            let dg = ring.demazure(s, g)?;
            add_to(&mut b_level, a + 1, dg);
            if a > 0 {
                let sg = ring.reflect(s, g)?;
                for b in 0..a {
                    let sign = if b % 2 == 0 { 1 } else { -1 };
                    let coeff = Scalar::from_int(sign * binomial(a as i64, b as i64 + 1));
                    add_to(&mut b_level, a - b, alpha.pow(b).mul(&sg).scale(&coeff));
                }
            }
        }
        // B_{k,a} -> A_{k-1} and C_{k-1,.}
        let mut next = Level::new();
        let delta = k >= 2 && setup.delta[k - 1];
        let c = if delta { Some(setup.neg_inv_lif(k - 1)?) } else { None };
        for (&a, g) in &b_level {
            add_to(&mut next, 0, alpha.pow(a).mul(g));
            if let Some(c) = &c {
                for b in 1..=a {
                    let coeff = &big(binomial(a as u64, b as u64)) * &c.pow(b);
                    add_to(&mut next, b, alpha.pow(a - b).mul(g).scale(&coeff));
                }
            }
        }
        c_level = next;
    }
    Ok(c_level.remove(&0).unwrap_or_else(|| RootPolynomial::zero(ring.rank())))
}

/// g with ptr_{d,t}(f) = id_d g modulo lower terms.
pub fn linear_partial_trace(setup: &LinearTraceSetup, ring: &PolyRing, f: &RootPolynomial, engine: Engine) -> Result<RootPolynomial> {
    match engine {
        Engine::Better => {
            let mut levels = better_grid(setup, ring, f)?;
            Ok(levels[0].remove(&0).unwrap_or_else(|| RootPolynomial::zero(ring.rank())))
        }
        Engine::Abc => abc_trace(setup, ring, f),
    }
}

pub fn grid_to_json(levels: &[Level]) -> Value {
    let rows: Vec<Value> = levels
        .iter()
        .enumerate()
        .flat_map(|(k, lvl)| lvl.iter().map(move |(a, p)| json!({"k": k, "a": a, "poly": p.to_string()})))
        .collect();
    Value::Array(rows)
}

/// Closing a single loop of color i around f leaves a broken i-strand with
/// d_i(f) beside it; this returns d_i(f). Requires xi > x.
pub fn single_step_trace(kl: &KlTable, ring: &PolyRing, x: ElemId, i: Gen, f: &RootPolynomial) -> Result<RootPolynomial> {
    if kl.group().has_right_descent(x, i) {
        return Err(Error::Precondition(format!("{} has right descent {i}", kl.group().word(x))));
    }
    ring.demazure(i, f)
}

/// D'_a as a map (power of B'_1, power of alpha) -> coefficient, by the
/// recursion D'_a = (B'_1)^a + B'_1 D'_{a-1} - D'_{a-1} alpha.
pub fn d_series_recursive(a: u32) -> BTreeMap<(u32, u32), BigInt> {
    let mut d: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    for n in 1..=a {
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        *next.entry((n, 0)).or_default() += 1;
        for (&(p, q), c) in &d {
            *next.entry((p + 1, q)).or_default() += c;
            *next.entry((p, q + 1)).or_default() -= c;
        }
        next.retain(|_, c| *c != BigInt::from(0));
        d = next;
    }
    d
}

/// The closed form sum_b (-1)^b C(a, b+1) (B'_1)^{a-b} alpha^b.
pub fn d_series_solved(a: u32) -> BTreeMap<(u32, u32), BigInt> {
    (0..a)
        .map(|b| {
            let sign: BigInt = if b % 2 == 0 { 1.into() } else { (-1).into() };
            ((a - b, b), sign * binomial(BigInt::from(a), BigInt::from(b + 1)))
        })
        .collect()
}

/// sum_{b=0}^{a-c} (-1)^b C(a-b, c) C(a, b+1).
pub fn binomial_lhs(a: u64, c: u64) -> BigInt {
    (0..=a - c.min(a))
        .map(|b| {
            let term = binomial(BigInt::from(a - b), BigInt::from(c)) * binomial(BigInt::from(a), BigInt::from(b + 1));
            if b % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// The identity holds for 0 <= c < a <= a_max and is short by exactly 1 at c = a.
pub fn binomial_identity_check(a_max: u64) -> bool {
    (1..=a_max).all(|a| {
        let rhs = |c: u64| binomial(BigInt::from(a + 1), BigInt::from(c));
        (0..a).all(|c| binomial_lhs(a, c) == rhs(c)) && binomial_lhs(a, a) + 1 == rhs(a)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub dimension: Scalar,
    pub numerator: Scalar,
    pub denominator: Scalar,
    pub d: Word,
    pub t: Word,
    pub a: usize,
}

impl DimensionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension.to_string(),
            "numerator": self.numerator.to_string(),
            "denominator": self.denominator.to_string(),
            "d": self.d.to_string(),
            "t": self.t.to_string(),
            "a": self.a,
        })
    }
}

/// Reduced word of w_I.
pub fn parabolic_word(kl: &KlTable, gens: &[Gen]) -> Result<Word> {
    let g = kl.group();
    let w = g.parabolic_longest(gens)?;
    Ok(g.word(w).clone())
}

/// d_d(ptr_{d,t}(rho^a)) / d_d(rho^a) with d = w_I, a = l(d).
pub fn parabolic_dimension(
    kl: &KlTable,
    ring: &PolyRing,
    gens: &[Gen],
    t: &[Gen],
    rho: Option<&RootPolynomial>,
    engine: Engine,
) -> Result<DimensionReport> {
    let d = parabolic_word(kl, gens)?;
    let setup = LinearTraceSetup::new(kl, ring, d.letters(), t)?;
    dimension_for_setup(&setup, ring, rho, engine)
}

pub fn dimension_for_setup(setup: &LinearTraceSetup, ring: &PolyRing, rho: Option<&RootPolynomial>, engine: Engine) -> Result<DimensionReport> {
    let rho = match rho {
        Some(r) => {
            ring.require_dominant_regular(r)?;
            r.clone()
        }
        None => ring.rho_standard()?,
    };
    let a = setup.d.len();
    let f = rho.pow(a as u32);
    let denominator = constant_of(ring.demazure_word(setup.d.letters(), &f)?);
    if denominator.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let g = linear_partial_trace(setup, ring, &f, engine)?;
    let numerator = constant_of(ring.demazure_word(setup.d.letters(), &g)?);
    Ok(DimensionReport {
        dimension: numerator.try_div(&denominator)?,
        numerator,
        denominator,
        d: setup.d.clone(),
        t: setup.t.clone(),
        a,
    })
}

fn constant_of(p: RootPolynomial) -> Scalar {
    p.as_constant().expect("degree-matched Demazure output is constant")
}

/// Dimensions for `trials` random dominant regular rho; all must agree.
pub fn rho_independence_check<R: Rng>(
    setup: &LinearTraceSetup,
    ring: &PolyRing,
    trials: usize,
    engine: Engine,
    rng: &mut R,
) -> Result<(bool, Vec<Scalar>)> {
    let mut dims = Vec::with_capacity(trials);
    for _ in 0..trials {
        let rho = ring.random_dominant_regular(rng)?;
        dims.push(dimension_for_setup(setup, ring, Some(&rho), engine)?.dimension);
    }
    let agree = dims.windows(2).all(|w| w[0] == w[1]);
    Ok((agree, dims))
}
