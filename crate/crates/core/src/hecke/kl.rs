use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::coxeter::{ElemId, FiniteGroup, Gen};
use crate::exactnum::LaurentPoly;

/// p_{w,y} for all y <= w, plus the nonzero mu(w, y) for y < w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlRow {
    pub w: ElemId,
    pub polys: BTreeMap<ElemId, LaurentPoly>,
    pub mu: Vec<(ElemId, i64)>,
}

impl KlRow {
    fn new(w: ElemId, polys: BTreeMap<ElemId, LaurentPoly>) -> Self {
        let mu = polys
            .iter()
            .filter(|(y, _)| **y != w)
            .filter_map(|(y, p)| match p.coeff_i64(1) {
                0 => None,
                m => Some((*y, m)),
            })
            .collect();
        KlRow { w, polys, mu }
    }

    pub fn get(&self, y: ElemId) -> Option<&LaurentPoly> {
        self.polys.get(&y)
    }
}

/// Lazily computed, memoized Kazhdan-Lusztig basis of a finite group.
/// Rows are computed outside the lock, so concurrent readers never block on
/// a long computation; a row computed twice is simply identical.
#[derive(Debug)]
pub struct KlTable {
    group: Arc<FiniteGroup>,
    rows: RwLock<HashMap<ElemId, Arc<KlRow>>>,
}

pub(crate) fn add_into(map: &mut BTreeMap<ElemId, LaurentPoly>, key: ElemId, p: &LaurentPoly) {
    if p.is_zero() {
        return;
    }
    let slot = map.entry(key).or_default();
    *slot += p;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl KlTable {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        KlTable { group, rows: RwLock::new(HashMap::new()) }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn cached_rows(&self) -> usize {
        self.rows.read().expect("kl lock").len()
    }

    pub(crate) fn snapshot(&self) -> Vec<Arc<KlRow>> {
        let mut rows: Vec<_> = self.rows.read().expect("kl lock").values().cloned().collect();
        rows.sort_by_key(|r| r.w);
        rows
    }

    pub(crate) fn insert_row(&self, w: ElemId, polys: BTreeMap<ElemId, LaurentPoly>) {
        self.rows.write().expect("kl lock").insert(w, Arc::new(KlRow::new(w, polys)));
    }

    /// The standard expansion b_w = sum_y p_{w,y} h_y, built by
    /// b_w = b_{ws} b_s - sum_{ys<y<ws} mu(ws, y) b_y.
    pub fn row(&self, w: ElemId) -> Arc<KlRow> {
        if let Some(r) = self.rows.read().expect("kl lock").get(&w) {
            return r.clone();
        }
        let g = &self.group;
        let polys = if w == ElemId::IDENTITY {
            BTreeMap::from([(w, LaurentPoly::one())])
        } else {
            let s = *g.word(w).letters().last().expect("nonidentity");
            let w1 = g.rmul(w, s);
            let r1 = self.row(w1);
            let mut acc = mul_standard_map_by_bs(g, &r1.polys, s);
            for &(y, m) in &r1.mu {
                if g.has_right_descent(y, s) {
                    let ry = self.row(y);
                    for (z, p) in &ry.polys {
                        add_into(&mut acc, *z, &p.scale(&(-m).into()));
                    }
                }
            }
            debug_assert_eq!(acc.get(&w), Some(&LaurentPoly::one()));
            debug_assert!(acc.iter().all(|(y, p)| *y == w || p.min_exp().map_or(false, |e| e > 0)));
            acc
        };
        let row = Arc::new(KlRow::new(w, polys));
        self.rows.write().expect("kl lock").entry(w).or_insert(row).clone()
    }

    /// Compute every row (in length order so recursion stays shallow).
    pub fn ensure_all(&self) {
        for w in self.group.elements() {
            self.row(w);
        }
    }

    /// p_{w,y}; zero unless y <= w.
    pub fn p(&self, w: ElemId, y: ElemId) -> LaurentPoly {
        self.row(w).get(y).cloned().unwrap_or_default()
    }

    /// Coefficient of v in p_{w,y} (zero unless y < w).
    pub fn mu(&self, w: ElemId, y: ElemId) -> i64 {
        if w == y {
            return 0;
        }
        self.row(w).get(y).map_or(0, |p| p.coeff_i64(1))
    }

    /// y <= w in Bruhat order, read off the support of b_w.
    pub fn leq(&self, y: ElemId, w: ElemId) -> bool {
        self.row(w).get(y).is_some()
    }

    /// Elements y with mu(w, y) != 0, y < w.
    pub fn mu_list(&self, w: ElemId) -> Vec<(ElemId, i64)> {
        self.row(w).mu.clone()
    }
}

/// h_x b_s = h_{xs} + v h_x if xs > x, h_{xs} + v^-1 h_x if xs < x.
pub(crate) fn mul_standard_map_by_bs(
    g: &FiniteGroup,
    map: &BTreeMap<ElemId, LaurentPoly>,
    s: Gen,
) -> BTreeMap<ElemId, LaurentPoly> {
    let mut out = BTreeMap::new();
    for (x, p) in map {
        let xs = g.rmul(*x, s);
        add_into(&mut out, xs, p);
        let shift = if g.len_of(xs) > g.len_of(*x) { 1 } else { -1 };
        add_into(&mut out, *x, &p.shift(shift));
    }
    out
}
