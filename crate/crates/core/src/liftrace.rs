//! Local intersection forms, branching graphs, and the linear / recursible
//! classification of reduced expressions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterOps, ElemId, FiniteGroup, Gen, Realization, Word};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::hecke::KlTable;

/// [k]_{i,j} for the given realization.
pub fn two_colored_quantum(real: &Realization, k: usize, i: Gen, j: Gen) -> Scalar {
    real.quantum(k, i, j)
}

/// The j with y j = x when (x, i, y) is recursible: y < x < xi, yi < y,
/// mu(x, y) >= 1.
pub fn recursible_j(kl: &KlTable, x: ElemId, i: Gen, y: ElemId) -> Option<Gen> {
    let g = kl.group();
    if g.has_right_descent(x, i) || !g.has_right_descent(y, i) || g.len_of(x) != g.len_of(y) + 1 {
        return None;
    }
    let j = g.system().matrix().generators().find(|&j| g.rmul(y, j) == x)?;
    if kl.mu(x, y) < 1 {
        return None;
    }
    debug_assert!(i != j && g.system().matrix().m(i, j) > 2);
    Some(j)
}

fn require_recursible(kl: &KlTable, x: ElemId, i: Gen, y: ElemId) -> Result<Gen> {
    recursible_j(kl, x, i, y).ok_or_else(|| {
        let g = kl.group();
        Error::NotRecursible(format!("({}, {i}, {})", g.word(x), g.word(y)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LifMethod {
    Closed,
    Recursive,
}

impl std::str::FromStr for LifMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(LifMethod::Closed),
            "recursive" => Ok(LifMethod::Recursive),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// -[n]_{i,j} / [n-1]_{j,i} with n the length of the dihedral part of x.
pub fn lif_closed(kl: &KlTable, real: &Realization, x: ElemId, i: Gen, y: ElemId) -> Result<Scalar> {
    let j = require_recursible(kl, x, i, y)?;
    let (_, tail) = kl.group().dihedral_coset_decompose(&x, i, j);
    let n = tail.len();
    let num = real.quantum(n, i, j);
    let den = real.quantum(n - 1, j, i);
    Ok(-&num.try_div(&den)?)
}

/// a_ij, minus LIF(y, j, yi)^-1 when yi j < yi.
pub fn lif_recursive(kl: &KlTable, real: &Realization, x: ElemId, i: Gen, y: ElemId) -> Result<Scalar> {
    let j = require_recursible(kl, x, i, y)?;
    let g = kl.group();
    let z = g.rmul(y, i);
    let base = real.a(i, j);
    if !g.has_right_descent(z, j) {
        return Ok(base);
    }
    let inner = lif_recursive(kl, real, y, j, z)?;
    Ok(&base - &inner.inverse()?)
}

/// LIF(x, i, y), with the convention LIF(x, i, xi) = 1.
pub fn lif(kl: &KlTable, real: &Realization, x: ElemId, i: Gen, y: ElemId, method: LifMethod) -> Result<Scalar> {
    let g = kl.group();
    if !g.has_right_descent(x, i) && g.rmul(x, i) == y {
        return Ok(Scalar::one());
    }
    match method {
        LifMethod::Closed => lif_closed(kl, real, x, i, y),
        LifMethod::Recursive => lif_recursive(kl, real, x, i, y),
    }
}

/// Targets of i-colored edges out of x: xi and every y < x with yi < y and
/// mu(x, y) != 0, paired with multiplicities.
pub fn out_edges(kl: &KlTable, x: ElemId, i: Gen) -> Vec<(ElemId, i64)> {
    let g = kl.group();
    if g.has_right_descent(x, i) {
        return Vec::new();
    }
    let mut out = vec![(g.rmul(x, i), 1)];
    out.extend(kl.mu_list(x).into_iter().filter(|&(y, _)| g.has_right_descent(y, i)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchMode {
    /// Every path subordinate to the word.
    Full,
    /// Spine plus the first step of each departure from it.
    Superspine,
}

impl std::str::FromStr for BranchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(BranchMode::Full),
            "superspine" => Ok(BranchMode::Superspine),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: ElemId,
    pub target: ElemId,
    pub color: Gen,
    pub mu: i64,
    pub spine: bool,
    pub lif: Option<Scalar>,
}

#[derive(Debug, Clone)]
pub struct BranchingGraph {
    pub word: Word,
    pub mode: BranchMode,
    /// Position in the word where the graph starts (0 = identity).
    pub start: usize,
    pub vertices: Vec<ElemId>,
    pub edges: Vec<Edge>,
    /// Spine vertices from the start vertex to the end of the word; empty if
    /// the word is not reduced.
    pub spine: Vec<ElemId>,
}

/// Prefix elements x_0 = e, ..., x_k of a reduced word.
fn prefixes(g: &FiniteGroup, word: &[Gen]) -> Result<Vec<ElemId>> {
    let mut xs = vec![ElemId::IDENTITY];
    for &s in word {
        g.system().matrix().check_gen(s as usize)?;
        let last = *xs.last().expect("nonempty");
        if g.has_right_descent(last, s) {
            return Err(Error::WordNotReduced(Word::new(word.to_vec()).to_string()));
        }
        xs.push(g.rmul(last, s));
    }
    Ok(xs)
}

pub fn branching_graph(kl: &KlTable, word: &[Gen], mode: BranchMode, start: usize) -> Result<BranchingGraph> {
    let g = kl.group();
    if start > word.len() {
        return Err(Error::Precondition(format!("start {start} exceeds word length {}", word.len())));
    }
    let spine_all = match (mode, prefixes(g, word)) {
        (_, Ok(xs)) => xs,
        (BranchMode::Full, Err(Error::WordNotReduced(_))) => Vec::new(),
        (_, Err(e)) => return Err(e),
    };
    let spine: Vec<ElemId> = spine_all.iter().skip(start).copied().collect();
    let on_spine = |k: usize, x: ElemId, y: ElemId| spine_all.len() > k + 1 && spine_all[k] == x && spine_all[k + 1] == y;
    let mut vertices: BTreeSet<ElemId> = BTreeSet::new();
    let mut edges = Vec::new();
    match mode {
        BranchMode::Superspine => {
            vertices.extend(&spine);
            for k in start..word.len() {
                let x = spine_all[k];
                for (y, mu) in out_edges(kl, x, word[k]) {
                    vertices.insert(y);
                    edges.push(Edge { source: x, target: y, color: word[k], mu, spine: on_spine(k, x, y), lif: None });
                }
            }
        }
        BranchMode::Full => {
            let first = if spine_all.is_empty() { prefixes(g, &word[..start])?[start] } else { spine_all[start] };
            let mut layer = BTreeSet::from([first]);
            vertices.insert(first);
            for (k, &s) in word.iter().enumerate().skip(start) {
                let mut next = BTreeSet::new();
                for &x in &layer {
                    for (y, mu) in out_edges(kl, x, s) {
                        next.insert(y);
                        let spine = on_spine(k, x, y);
                        let e = Edge { source: x, target: y, color: s, mu, spine, lif: None };
                        if !edges.contains(&e) {
                            edges.push(e);
                        }
                    }
                }
                vertices.extend(&next);
                layer = next;
            }
        }
    }
    let mut vertices: Vec<ElemId> = vertices.into_iter().collect();
    vertices.sort_by_key(|&w| (g.len_of(w), w));
    Ok(BranchingGraph { word: Word::new(word.to_vec()), mode, start, vertices, edges, spine })
}

const DOT_COLORS: [&str; 8] = ["red", "blue", "forestgreen", "orange", "purple", "brown", "deeppink", "cyan4"];

/// DOT color for a generator (1-based).
pub fn generator_color(s: Gen) -> &'static str {
    DOT_COLORS[(s as usize - 1) % DOT_COLORS.len()]
}

impl BranchingGraph {
    pub fn off_spine_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| !e.spine)
    }

    pub fn to_dot(&self, g: &FiniteGroup) -> String {
        let mut s = String::from("digraph branching {\n  rankdir=LR;\n");
        for &v in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", g.word(v));
        }
        for e in &self.edges {
            let mut attrs = vec![format!("color={}", generator_color(e.color))];
            if e.spine {
                attrs.push("style=dashed".into());
            }
            match (&e.lif, e.mu) {
                (Some(l), _) => attrs.push(format!("label=\"{l}\"")),
                (None, m) if m > 1 => attrs.push(format!("label=\"mu={m}\"")),
                _ => {}
            }
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [{}];", g.word(e.source), g.word(e.target), attrs.join(", "));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        let w = |x: ElemId| g.word(x).to_string();
        json!({
            "word": self.word.to_string(),
            "mode": self.mode,
            "start": self.start,
            "vertices": self.vertices.iter().map(|&v| w(v)).collect::<Vec<_>>(),
            "spine": self.spine.iter().map(|&v| w(v)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "source": w(e.source),
                "target": w(e.target),
                "color": e.color,
                "mu": e.mu,
                "spine": e.spine,
                "lif": e.lif.as_ref().map(|l| l.to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Linear,
    Recursible,
    Neither,
}

#[derive(Debug, Clone)]
pub struct Offending {
    pub source: ElemId,
    pub color: Gen,
    pub target: ElemId,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub shape: Shape,
    /// Superspine with closed-form LIF labels on recursible off-spine edges.
    pub graph: BranchingGraph,
    pub offending: Vec<Offending>,
}

impl Classification {
    pub fn to_json(&self, g: &FiniteGroup) -> Value {
        json!({
            "shape": self.shape,
            "graph": self.graph.to_json(g),
            "offending": self.offending.iter().map(|o| json!({
                "source": g.word(o.source).to_string(),
                "color": o.color,
                "target": g.word(o.target).to_string(),
                "reason": o.reason,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Classify a reduced word (from position `start`) as linear, recursible, or neither.
pub fn classify_expression(kl: &KlTable, real: &Realization, word: &[Gen], start: usize) -> Result<Classification> {
    let mut graph = branching_graph(kl, word, BranchMode::Superspine, start)?;
    let g = kl.group();
    let spine = graph.spine.clone();
    let mut offending = Vec::new();
    let mut linear = true;
    for e in graph.edges.iter_mut().filter(|e| !e.spine) {
        // Position of the source along the spine.
        let k = spine.iter().position(|&x| x == e.source).expect("superspine edges leave the spine");
        if k == 0 || spine[k - 1] != e.target {
            linear = false;
        }
        if e.mu > 1 {
            linear = false;
            offending.push(Offending { source: e.source, color: e.color, target: e.target, reason: format!("mu = {} > 1", e.mu) });
            continue;
        }
        match recursible_j(kl, e.source, e.color, e.target) {
            Some(_) => e.lif = Some(lif_closed(kl, real, e.source, e.color, e.target)?),
            None => {
                let gap = g.len_of(e.source) - g.len_of(e.target);
                offending.push(Offending {
                    source: e.source,
                    color: e.color,
                    target: e.target,
                    reason: format!("not recursible (length gap {gap})"),
                });
            }
        }
    }
    // Also at most one off-spine edge per spine vertex.
    for &x in &spine {
        if graph.off_spine_edges().filter(|e| e.source == x).count() > 1 {
            linear = false;
        }
    }
    let shape = match (offending.is_empty(), linear) {
        (true, true) => Shape::Linear,
        (true, false) => Shape::Recursible,
        (false, _) => Shape::Neither,
    };
    Ok(Classification { shape, graph, offending })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::{CoxeterMatrix, DEFAULT_ELEMENT_BOUND};

    fn setup(name: &str) -> (Arc<KlTable>, Realization) {
        let cm = CoxeterMatrix::preset(name).unwrap();
        let real = Realization::default_for(&cm).unwrap();
        let g = FiniteGroup::from_matrix(cm, DEFAULT_ELEMENT_BOUND).unwrap();
        (Arc::new(KlTable::new(Arc::new(g))), real)
    }

    #[test]
    fn g2_chain() {
        let (kl, real) = setup("G2");
        let g = kl.group();
        let id = |w: &[Gen]| g.id_from_word(w).unwrap();
        let chain = [
            (&[1, 2][..], 1, &[1][..], "-3"),
            (&[1, 2, 1], 2, &[1, 2], "-2/3"),
            (&[1, 2, 1, 2], 1, &[1, 2, 1], "-3/2"),
            (&[1, 2, 1, 2, 1], 2, &[1, 2, 1, 2], "-1/3"),
        ];
        for (x, i, y, want) in chain {
            for m in [LifMethod::Closed, LifMethod::Recursive] {
                assert_eq!(lif(&kl, &real, id(x), i, id(y), m).unwrap().to_string(), want);
            }
        }
        assert_eq!(recursible_j(&kl, id(&[1, 2]), 1, id(&[1])), Some(2));
    }

    #[test]
    fn s4_lif() {
        let (kl, real) = setup("A3");
        let g = kl.group();
        let x = g.id_from_word(&[3, 1, 2, 1, 3]).unwrap();
        let y = g.id_from_word(&[1, 2, 3, 2]).unwrap();
        assert_eq!(lif(&kl, &real, x, 2, y, LifMethod::Closed).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn twelve121_is_a_line() {
        let (kl, real) = setup("H2");
        let c = classify_expression(&kl, &real, &[1, 2, 1, 2, 1], 0).unwrap();
        assert_eq!(c.shape, Shape::Linear);
        assert_eq!(c.graph.off_spine_edges().count(), 3);
    }
}
