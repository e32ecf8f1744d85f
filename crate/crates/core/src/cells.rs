//! Left, right and two-sided Kazhdan-Lusztig cells, the a-function, and the
//! asymptotic algebra of a two-sided cell.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::coxeter::{ElemId, FiniteGroup};
use crate::error::{Error, Result};
use crate::hecke::{KlTable, ProductMemo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Two,
}

/// The cell partitions of a finite group. Cells are listed in order of their
/// smallest element id, elements within a cell sorted by (length, id).
#[derive(Debug)]
pub struct Cells {
    kl: Arc<KlTable>,
    left: Vec<Vec<ElemId>>,
    right: Vec<Vec<ElemId>>,
    two: Vec<Vec<ElemId>>,
    left_of: Vec<usize>,
    right_of: Vec<usize>,
    two_of: Vec<usize>,
    // below[i] = two-sided cells j with j <= i (ideal containment), i included.
    below: Vec<BTreeSet<usize>>,
    a_values: Vec<OnceLock<i32>>,
}

fn components(n: usize, edges: &[(usize, usize)], g: &FiniteGroup) -> (Vec<Vec<ElemId>>, Vec<usize>, DiGraph<(), ()>) {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        graph.add_node(());
    }
    for &(a, b) in edges {
        graph.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let mut comps: Vec<Vec<ElemId>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<ElemId> = c.into_iter().map(|i| ElemId(i.index() as u32)).collect();
            v.sort_by_key(|&w| (g.len_of(w), w));
            v
        })
        .collect();
    comps.sort_by_key(|c| c.iter().min().copied());
    let mut of = vec![0; n];
    for (k, c) in comps.iter().enumerate() {
        for w in c {
            of[w.index()] = k;
        }
    }
    (comps, of, graph)
}

impl Cells {
    /// Requires the full KL table; `bound` guards against huge groups.
    pub fn compute(kl: Arc<KlTable>, bound: usize) -> Result<Cells> {
        let g = kl.group().clone();
        let n = g.order();
        if n > bound {
            return Err(Error::GroupTooLarge { bound });
        }
        kl.ensure_all();
        // Edge w -> x means x <= w: b_x occurs in b_w b_s (right) or b_s b_w (left).
        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        for w in g.elements() {
            let mu = kl.mu_list(w);
            for s in g.system().matrix().generators() {
                if !g.has_right_descent(w, s) {
                    right_edges.push((w.index(), g.rmul(w, s).index()));
                    for &(y, _) in &mu {
                        if g.has_right_descent(y, s) {
                            right_edges.push((w.index(), y.index()));
                        }
                    }
                }
                if !g.has_left_descent(w, s) {
                    left_edges.push((w.index(), g.lmul(s, w).index()));
                    for &(y, _) in &mu {
                        if g.has_left_descent(y, s) {
                            left_edges.push((w.index(), y.index()));
                        }
                    }
                }
            }
        }
        let (left, left_of, _) = components(n, &left_edges, &g);
        let (right, right_of, _) = components(n, &right_edges, &g);
        let both: Vec<_> = left_edges.iter().chain(&right_edges).copied().collect();
        let (two, two_of, _) = components(n, &both, &g);

        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); two.len()];
        for &(a, b) in &both {
            if two_of[a] != two_of[b] {
                succ[two_of[a]].insert(two_of[b]);
            }
        }
        let below = (0..two.len())
            .map(|i| {
                let mut seen = BTreeSet::from([i]);
                let mut stack = vec![i];
                while let Some(c) = stack.pop() {
                    for &d in &succ[c] {
                        if seen.insert(d) {
                            stack.push(d);
                        }
                    }
                }
                seen
            })
            .collect();
        let a_values = (0..two.len()).map(|_| OnceLock::new()).collect();
        Ok(Cells { kl, left, right, two, left_of, right_of, two_of, below, a_values })
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.kl.group()
    }

    pub fn cells(&self, side: Side) -> &[Vec<ElemId>] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
            Side::Two => &self.two,
        }
    }

    pub fn cell_of(&self, side: Side, w: ElemId) -> usize {
        match side {
            Side::Left => self.left_of[w.index()],
            Side::Right => self.right_of[w.index()],
            Side::Two => self.two_of[w.index()],
        }
    }

    /// Two-sided cell i lies below (or equals) cell j in the ideal order.
    pub fn two_sided_leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(&i)
    }

    /// a(J): the largest v-degree of m^w_{x,y} with x, y, w in J.
    pub fn a_value(&self, cell: usize) -> i32 {
        *self.a_values[cell].get_or_init(|| {
            let members = &self.two[cell];
            let mut best = i32::MIN;
            for &x in members {
                let mut memo = ProductMemo::new(&self.kl, x);
                for &y in members {
                    for (w, c) in &memo.product(y).coeffs {
                        if self.two_of[w.index()] == cell {
                            best = best.max(c.max_exp().expect("nonzero coefficient"));
                        }
                    }
                }
            }
            best
        })
    }

    pub fn a_of(&self, w: ElemId) -> i32 {
        self.a_value(self.two_of[w.index()])
    }

    /// Elements d of a two-sided cell whose p_{d,e} has a v^a term.
    pub fn duflo_involutions(&self, cell: usize) -> Vec<ElemId> {
        let a = self.a_value(cell);
        self.two[cell].iter().copied().filter(|&d| self.kl.p(d, ElemId::IDENTITY).coeff_i64(a) != 0).collect()
    }

    /// Left cell of d intersected with its inverse set.
    pub fn diagonal_cell(&self, d: ElemId) -> Vec<ElemId> {
        let g = self.group();
        let l = self.left_of[d.index()];
        self.left[l].iter().copied().filter(|&x| self.left_of[g.inverse(x).index()] == l).collect()
    }

    /// Image of a cell under the longest element: left cells map by x -> x w0,
    /// right cells by x -> w0 x, two-sided cells either way.
    pub fn w0_dual(&self, side: Side, cell: usize) -> usize {
        let g = self.group();
        let x = self.cells(side)[cell][0];
        let y = match side {
            Side::Left => g.mul(x, g.w0()),
            Side::Right | Side::Two => g.mul(g.w0(), x),
        };
        self.cell_of(side, y)
    }

    /// w0-dual of the diagonal cell of d: (L w0) intersected with (w0 L^-1).
    pub fn w0_dual_diagonal(&self, d: ElemId) -> Vec<ElemId> {
        let g = self.group();
        let w0 = g.w0();
        let l = &self.left[self.left_of[d.index()]];
        let lw0: BTreeSet<ElemId> = l.iter().map(|&x| g.mul(x, w0)).collect();
        let mut out: Vec<ElemId> = l.iter().map(|&x| g.mul(w0, g.inverse(x))).filter(|y| lw0.contains(y)).collect();
        out.sort_by_key(|&w| (g.len_of(w), w));
        out
    }

    pub fn asymptotic_algebra(&self, cell: usize) -> AsymptoticAlgebra {
        let a = self.a_value(cell);
        let members = self.two[cell].clone();
        let mut gamma = BTreeMap::new();
        for &x in &members {
            let mut memo = ProductMemo::new(&self.kl, x);
            for &y in &members {
                let row: BTreeMap<ElemId, i64> = memo
                    .product(y)
                    .coeffs
                    .iter()
                    .filter(|(w, _)| self.two_of[w.index()] == cell)
                    .filter_map(|(w, c)| match c.coeff_i64(a) {
                        0 => None,
                        k => Some((*w, k)),
                    })
                    .collect();
                gamma.insert((x, y), row);
            }
        }
        AsymptoticAlgebra { cell, a, elements: members, gamma, duflo: self.duflo_involutions(cell) }
    }
}

/// Structure constants gamma^w_{x,y} of A_J in the basis {a_w}.
#[derive(Debug, Clone)]
pub struct AsymptoticAlgebra {
    pub cell: usize,
    pub a: i32,
    pub elements: Vec<ElemId>,
    gamma: BTreeMap<(ElemId, ElemId), BTreeMap<ElemId, i64>>,
    pub duflo: Vec<ElemId>,
}

impl AsymptoticAlgebra {
    pub fn contains(&self, w: ElemId) -> bool {
        self.elements.contains(&w)
    }

    pub fn gamma(&self, x: ElemId, y: ElemId, w: ElemId) -> Result<i64> {
        if !(self.contains(x) && self.contains(y) && self.contains(w)) {
            return Err(Error::NotSameCell);
        }
        Ok(self.gamma[&(x, y)].get(&w).copied().unwrap_or(0))
    }

    /// a_x a_y as a map w -> gamma^w_{x,y}.
    pub fn multiply(&self, x: ElemId, y: ElemId) -> Result<BTreeMap<ElemId, i64>> {
        self.gamma.get(&(x, y)).cloned().ok_or(Error::NotSameCell)
    }
}
