//! Shared reference computations and generators for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use asymhecke::cells::{Cells, Side};
use asymhecke::coxeter::{CoxeterMatrix, ElemId, FiniteGroup, Gen, Realization, DEFAULT_ELEMENT_BOUND};
use asymhecke::hecke::KlTable;
use asymhecke::polyring::{PolyRing, RootPolynomial};
use asymhecke::ptrace::LinearTraceSetup;
use asymhecke::{LaurentPoly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn table(name: &str) -> Arc<KlTable> {
    let g = FiniteGroup::from_matrix(CoxeterMatrix::preset(name).unwrap(), DEFAULT_ELEMENT_BOUND).unwrap();
    Arc::new(KlTable::new(Arc::new(g)))
}

pub fn cells(name: &str) -> Cells {
    Cells::compute(table(name), DEFAULT_ELEMENT_BOUND).unwrap()
}

/// KL table plus the default realization's polynomial ring.
pub fn setup(name: &str) -> (Arc<KlTable>, PolyRing) {
    let cm = CoxeterMatrix::preset(name).unwrap();
    let ring = PolyRing::new(Arc::new(Realization::default_for(&cm).unwrap()));
    (table(name), ring)
}

pub type Std = BTreeMap<ElemId, LaurentPoly>;

pub fn add(map: &mut Std, k: ElemId, p: &LaurentPoly) {
    let e = map.entry(k).or_default();
    *e += p;
    if e.is_zero() {
        map.remove(&k);
    }
}

/// h_x h_s = h_{xs} if xs > x, else h_{xs} + (v^-1 - v) h_x.
pub fn times_hs(g: &FiniteGroup, h: &Std, s: u8) -> Std {
    let diff = LaurentPoly::from_pairs([(-1, 1), (1, -1)]);
    let mut out = Std::new();
    for (&x, p) in h {
        add(&mut out, g.rmul(x, s), p);
        if g.has_right_descent(x, s) {
            add(&mut out, x, &(p * &diff));
        }
    }
    out
}

/// bar(h_w) in the standard basis, using bar(h_s) = h_s + (v - v^-1).
pub fn bar_standard(g: &FiniteGroup) -> Vec<Std> {
    let shift = LaurentPoly::from_pairs([(1, 1), (-1, -1)]);
    let mut out: Vec<Std> = vec![Std::new(); g.order()];
    out[0] = Std::from([(ElemId::IDENTITY, LaurentPoly::one())]);
    for w in g.elements().skip(1) {
        let s = *g.word(w).letters().last().unwrap();
        let prev = &out[g.rmul(w, s).index()];
        let mut next = times_hs(g, prev, s);
        for (&x, p) in prev {
            add(&mut next, x, &(p * &shift));
        }
        out[w.index()] = next;
    }
    out
}

/// p_{w,y} from bar-invariance and the degree condition alone.
pub fn kl_by_bar_involution(g: &FiniteGroup) -> Vec<Std> {
    let bars = bar_standard(g);
    let mut by_len: Vec<ElemId> = g.elements().collect();
    by_len.sort_by_key(|&w| std::cmp::Reverse(g.len_of(w)));
    g.elements()
        .map(|w| {
            let mut p = Std::from([(w, LaurentPoly::one())]);
            for &y in by_len.iter().filter(|&&y| g.len_of(y) < g.len_of(w)) {
                let mut q = LaurentPoly::zero();
                for (&z, pz) in &p {
                    if let Some(r) = bars[z.index()].get(&y) {
                        q += &(&pz.bar() * r);
                    }
                }
                let py = q.positive_part();
                assert_eq!(&py - &py.bar(), q, "antisymmetry fails at ({}, {})", g.word(w), g.word(y));
                if !py.is_zero() {
                    p.insert(y, py);
                }
            }
            p
        })
        .collect()
}

pub fn check_cell_identities(name: &str) {
    let c = cells(name);
    let g = c.group().clone();
    let inv = |w: ElemId| g.inverse(w);
    for (k, cell) in c.cells(Side::Two).iter().enumerate() {
        let alg = c.asymptotic_algebra(k);
        for &x in cell {
            for &y in cell {
                for &w in cell {
                    let gamma = alg.gamma(x, y, w).unwrap();
                    assert!(gamma >= 0);
                    assert_eq!(gamma, alg.gamma(y, inv(w), inv(x)).unwrap(), "{name}: cyclic symmetry");
                    assert_eq!(gamma, alg.gamma(inv(y), inv(x), inv(w)).unwrap(), "{name}: inversion symmetry");
                }
            }
        }
        let duflo = &alg.duflo;
        for &d in duflo {
            assert_eq!(inv(d), d, "{name}: Duflo elements are involutions");
            assert_eq!(alg.gamma(d, d, d).unwrap(), 1);
            for &x in cell {
                let right = c.cell_of(Side::Right, x) == c.cell_of(Side::Right, d);
                let left = c.cell_of(Side::Left, x) == c.cell_of(Side::Left, d);
                for &y in cell {
                    let id = |b: bool| i64::from(b);
                    assert_eq!(alg.gamma(d, x, y).unwrap(), id(x == y && right), "{name}: left unit");
                    assert_eq!(alg.gamma(x, y, d).unwrap(), id(x == inv(y) && right), "{name}: Duflo coefficient");
                    assert_eq!(alg.gamma(x, d, y).unwrap(), id(x == y && left), "{name}: right unit");
                }
            }
        }
        // Each left cell inside the two-sided cell has exactly one Duflo involution.
        let mut per_left: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in duflo {
            *per_left.entry(c.cell_of(Side::Left, d)).or_default() += 1;
        }
        let lefts: std::collections::BTreeSet<usize> = cell.iter().map(|&x| c.cell_of(Side::Left, x)).collect();
        assert_eq!(per_left.len(), lefts.len());
        assert!(per_left.values().all(|&n| n == 1));
        // sum_d a_d is a two-sided unit.
        for &x in cell {
            let mut from_left: BTreeMap<ElemId, i64> = BTreeMap::new();
            let mut from_right: BTreeMap<ElemId, i64> = BTreeMap::new();
            for &d in duflo {
                for (w, k) in alg.multiply(d, x).unwrap() {
                    *from_left.entry(w).or_default() += k;
                }
                for (w, k) in alg.multiply(x, d).unwrap() {
                    *from_right.entry(w).or_default() += k;
                }
            }
            assert_eq!(from_left, BTreeMap::from([(x, 1)]));
            assert_eq!(from_right, BTreeMap::from([(x, 1)]));
        }
    }
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, deg: u16, terms: usize) -> RootPolynomial {
    let mut f = RootPolynomial::zero(n);
    for _ in 0..terms {
        let mut e = vec![0u16; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = Scalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        f = f.add(&RootPolynomial::monomial(e, c));
    }
    f
}

/// A random reduced word of the given length, built by right multiplication.
pub fn random_reduced<R: Rng>(rng: &mut R, g: &FiniteGroup, len: usize) -> Vec<Gen> {
    let n = g.rank() as Gen;
    let mut w = asymhecke::coxeter::ElemId::IDENTITY;
    let mut word = Vec::new();
    while word.len() < len {
        let s = rng.gen_range(1..=n);
        if !g.has_right_descent(w, s) {
            w = g.rmul(w, s);
            word.push(s);
        }
    }
    word
}

/// Random linear setups across B2, A3 and H3.
pub fn random_linear_setups(count: usize, seed: u64) -> Vec<(String, LinearTraceSetup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tables: Vec<(&str, Arc<KlTable>, PolyRing)> = ["B2", "A3", "H3"]
        .into_iter()
        .map(|n| {
            let (kl, ring) = setup(n);
            (n, kl, ring)
        })
        .collect();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100_000);
        let (name, kl, ring) = &tables[out.len() % tables.len()];
        let g = kl.group();
        let total = rng.gen_range(1..=g.len_of(g.w0()).min(9));
        let word = random_reduced(&mut rng, g, total);
        let cut = rng.gen_range(0..total);
        if let Ok(s) = LinearTraceSetup::new(kl, ring, &word[..cut], &word[cut..]) {
            out.push((name.to_string(), s));
        }
    }
    out
}

