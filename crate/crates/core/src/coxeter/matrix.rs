use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Simple reflections are numbered from 1.
pub type Gen = u8;

/// Entry value standing for m = infinity.
pub const INFINITY: u32 = 0;

/// Symmetric Coxeter matrix; `m(s, s) = 1`, off-diagonal entries >= 2 or
/// `INFINITY`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
    name: Option<String>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 || rank > 32 {
            return Err(Error::InvalidCoxeterMatrix(format!("rank {rank} outside 1..=32")));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCoxeterMatrix("matrix is not square".into()));
            }
            for (j, &m) in row.iter().enumerate() {
                let ok = if i == j { m == 1 } else { m == INFINITY || m >= 2 };
                if !ok || m != rows[j][i] {
                    return Err(Error::InvalidCoxeterMatrix(format!("bad entry m({},{}) = {m}", i + 1, j + 1)));
                }
                entries.push(m);
            }
        }
        Ok(CoxeterMatrix { rank, entries, name: None })
    }

    /// Build from the edges with m >= 3 (all other pairs commute).
    fn from_edges(rank: usize, edges: &[(usize, usize, u32)], name: String) -> Self {
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, m) in edges {
            rows[i - 1][j - 1] = m;
            rows[j - 1][i - 1] = m;
        }
        let mut cm = CoxeterMatrix::new(rows).expect("preset matrix is valid");
        cm.name = Some(name);
        cm
    }

    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1, 3)).collect();
        CoxeterMatrix::from_edges(n, &edges, format!("A{n}"))
    }

    /// B_n with the 4-edge between n-1 and n.
    pub fn type_b(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1, 3)).collect();
        if let Some(last) = edges.last_mut() {
            last.2 = 4;
        }
        CoxeterMatrix::from_edges(n, &edges, format!("B{n}"))
    }

    /// D_n: a path 1..n-2 with n-1 and n both attached to n-2.
    pub fn type_d(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1, 3)).collect();
        edges.push((n - 2, n - 1, 3));
        edges.push((n - 2, n, 3));
        CoxeterMatrix::from_edges(n, &edges, format!("D{n}"))
    }

    pub fn type_f4() -> Self {
        CoxeterMatrix::from_edges(4, &[(1, 2, 3), (2, 3, 4), (3, 4, 3)], "F4".into())
    }

    pub fn type_g2() -> Self {
        CoxeterMatrix::from_edges(2, &[(1, 2, 6)], "G2".into())
    }

    pub fn type_i2(m: u32) -> Self {
        CoxeterMatrix::from_edges(2, &[(1, 2, m)], format!("I2:{m}"))
    }

    pub fn type_h3() -> Self {
        CoxeterMatrix::from_edges(3, &[(1, 2, 5), (2, 3, 3)], "H3".into())
    }

    pub fn type_h4() -> Self {
        CoxeterMatrix::from_edges(4, &[(1, 2, 5), (2, 3, 3), (3, 4, 3)], "H4".into())
    }

    /// Parse a preset name such as "A3", "B2", "D5", "F4", "G2", "H3", "H4",
    /// "H2" or "I2:5".
    pub fn preset(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown Coxeter type {name:?}"));
        let name = name.trim();
        if let Some(m) = name.strip_prefix("I2:").or_else(|| name.strip_prefix("I2(").and_then(|s| s.strip_suffix(')'))) {
            let m: u32 = m.parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(CoxeterMatrix::type_i2(m));
        }
        let (letter, num) = name.split_at(1.min(name.len()));
        let n: usize = num.parse().map_err(|_| bad())?;
        match (letter.to_ascii_uppercase().as_str(), n) {
            ("A", n) if n >= 1 => Ok(CoxeterMatrix::type_a(n)),
            ("B", n) if n >= 2 => Ok(CoxeterMatrix::type_b(n)),
            ("D", n) if n >= 4 => Ok(CoxeterMatrix::type_d(n)),
            ("F", 4) => Ok(CoxeterMatrix::type_f4()),
            ("G", 2) => Ok(CoxeterMatrix::type_g2()),
            ("H", 2) => Ok(CoxeterMatrix::type_i2(5)),
            ("H", 3) => Ok(CoxeterMatrix::type_h3()),
            ("H", 4) => Ok(CoxeterMatrix::type_h4()),
            _ => Err(bad()),
        }
    }

    /// Parse rows like "1,3;3,1" (use "inf" or 0 for infinity).
    pub fn parse_rows(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| match e.trim() {
                        "inf" | "oo" => Ok(INFINITY),
                        x => x.parse::<u32>().map_err(|_| Error::Parse(format!("bad matrix entry {x:?}"))),
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CoxeterMatrix::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// m(s, t) for 1-based generators.
    pub fn m(&self, s: Gen, t: Gen) -> u32 {
        self.entries[(s as usize - 1) * self.rank + t as usize - 1]
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> {
        1..=self.rank as Gen
    }

    pub fn check_gen(&self, s: usize) -> Result<Gen> {
        if s == 0 || s > self.rank {
            Err(Error::GeneratorOutOfRange { gen: s, rank: self.rank })
        } else {
            Ok(s as Gen)
        }
    }

    /// Restriction to a subset of generators (renumbered in the given order).
    pub fn restrict(&self, gens: &[Gen]) -> Result<CoxeterMatrix> {
        let rows = gens.iter().map(|&s| gens.iter().map(|&t| self.m(s, t)).collect()).collect();
        CoxeterMatrix::new(rows)
    }

    /// Connected components of the Coxeter graph (edges with m != 2).
    pub fn components(&self) -> Vec<Vec<Gen>> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for start in self.generators() {
            if seen[start as usize - 1] {
                continue;
            }
            let mut comp = vec![start];
            seen[start as usize - 1] = true;
            let mut k = 0;
            while k < comp.len() {
                let s = comp[k];
                for t in self.generators() {
                    if !seen[t as usize - 1] && s != t && self.m(s, t) != 2 {
                        seen[t as usize - 1] = true;
                        comp.push(t);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Finite-type test via the classification of connected Coxeter graphs.
    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| self.component_is_finite(c))
    }

    fn component_is_finite(&self, comp: &[Gen]) -> bool {
        let n = comp.len();
        if n == 1 {
            return true;
        }
        let mut edges = Vec::new();
        for (a, &s) in comp.iter().enumerate() {
            for &t in &comp[a + 1..] {
                let m = self.m(s, t);
                if m == INFINITY {
                    return false;
                }
                if m != 2 {
                    edges.push((s, t, m));
                }
            }
        }
        if n == 2 {
            return true;
        }
        if edges.len() != n - 1 {
            return false;
        }
        let degree = |s: Gen| edges.iter().filter(|e| e.0 == s || e.1 == s).count();
        let heavy: Vec<_> = edges.iter().filter(|e| e.2 >= 4).collect();
        let branch: Vec<Gen> = comp.iter().copied().filter(|&s| degree(s) >= 3).collect();
        if comp.iter().any(|&s| degree(s) > 3) || branch.len() > 1 || heavy.len() > 1 {
            return false;
        }
        if let Some(&c) = branch.first() {
            if !heavy.is_empty() {
                return false;
            }
            // Arm lengths of the star with center c.
            let mut arms: Vec<usize> = edges
                .iter()
                .filter(|e| e.0 == c || e.1 == c)
                .map(|e| {
                    let (mut prev, mut cur) = (c, if e.0 == c { e.1 } else { e.0 });
                    let mut len = 1;
                    loop {
                        let next = edges.iter().find_map(|f| match (f.0, f.1) {
                            (a, b) if a == cur && b != prev => Some(b),
                            (a, b) if b == cur && a != prev => Some(a),
                            _ => None,
                        });
                        match next {
                            Some(nx) => {
                                prev = cur;
                                cur = nx;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            return matches!(arms.as_slice(), [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4]);
        }
        let Some(h) = heavy.first() else { return true };
        let end_edge = degree(h.0) == 1 || degree(h.1) == 1;
        match h.2 {
            4 => end_edge || n == 4,
            5 => end_edge && n <= 4,
            _ => false,
        }
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            return write!(f, "{n}");
        }
        let rows: Vec<String> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| match self.entries[i * self.rank + j] {
                        INFINITY => "inf".to_string(),
                        m => m.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}
