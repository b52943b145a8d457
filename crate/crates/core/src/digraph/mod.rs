//! Weighted digraphs attached to Dyck words, their cycle covers, and the
//! cover and cycle indicator polynomials.

mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::partitions::Permutation;
use crate::words::{FlatWord, OpKind};

pub use poly::{
    cover_poly, cover_poly_with, cycle_cover_poly, cycle_cover_poly_with, cycle_covers,
    cycle_indicator, cycle_indicator_with, indicator_vars, CoverVariant, EdgeOrder, Method,
};

/// Vertex count limit of the bitmask representation.
pub const MAX_VERTICES: usize = 32;

/// A digraph on vertices `0..n` with loops allowed, no multi-edges, and a
/// positive weight on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedDigraph {
    weights: Vec<u32>,
    succ: Vec<u32>,
}

/// A permutation `σ` of the vertices with `v → σ(v)` an edge for every `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    pub sigma: Permutation,
}

impl WeightedDigraph {
    /// Edges are 0-based `(source, target)` pairs; duplicates collapse.
    pub fn new(weights: Vec<u32>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        if n > MAX_VERTICES {
            return domain(format!("{n} vertices exceed {MAX_VERTICES}"));
        }
        if weights.iter().any(|&w| w == 0) {
            return domain("vertex weights must be positive");
        }
        let mut succ = vec![0u32; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return domain(format!("edge {}->{} outside 1..{n}", a + 1, b + 1));
            }
            succ[a] |= 1 << b;
        }
        Ok(WeightedDigraph { weights, succ })
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(vec![1; n], edges)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a] >> b & 1 == 1
    }

    /// Successor set of `v` as a bitmask.
    pub fn successors(&self, v: usize) -> u32 {
        self.succ[v]
    }

    pub fn num_edges(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// 0-based edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for b in 0..self.n() {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The same graph with every weight set to 1.
    pub fn forget_weights(&self) -> Self {
        WeightedDigraph { weights: vec![1; self.n()], succ: self.succ.clone() }
    }

    /// Parses `"1->1 1->2 2->1"` with an optional `"w: 1 2"` weight line;
    /// the vertex count is the larger of the highest index and the number
    /// of weights.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut weights: Option<Vec<u32>> = None;
        let mut n = 0;
        for line in text.lines() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("w:") {
                let ws: std::result::Result<Vec<u32>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                weights = Some(ws.map_err(|_| Error::Parse { pos: 0, msg: format!("bad weight line {line:?}") })?);
                continue;
            }
            for item in line.split(|c: char| c.is_whitespace() || c == ',') {
                if item.is_empty() {
                    continue;
                }
                let bad = || Error::Parse { pos: 0, msg: format!("bad edge {item:?}") };
                let (a, b) = item.split_once("->").ok_or_else(bad)?;
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a == 0 || b == 0 {
                    return Err(bad());
                }
                n = n.max(a).max(b);
                edges.push((a - 1, b - 1));
            }
        }
        let weights = match weights {
            Some(w) if w.len() >= n => w,
            Some(w) => return domain(format!("{} weights for {n} vertices", w.len())),
            None => vec![1; n],
        };
        Self::new(weights, &edges)
    }

    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self.edges().iter().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect();
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("{}\nw: {}", edges.join(" "), weights.join(" "))
    }

    /// Deletes vertex `v`, renumbering the later vertices.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let squeeze = |m: u32| (m & ((1 << v) - 1)) | ((m >> (v + 1)) << v);
        let mut weights = self.weights.clone();
        weights.remove(v);
        let succ = self
            .succ
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &m)| squeeze(m))
            .collect();
        WeightedDigraph { weights, succ }
    }

    pub fn remove_edge(&self, a: usize, b: usize) -> Self {
        let mut g = self.clone();
        g.succ[a] &= !(1 << b);
        g
    }

    /// Fuses the endpoints of the non-loop edge `a → b` into one vertex of
    /// weight `w(a) + w(b)` that keeps the in-edges of `a` and the out-edges
    /// of `b`; edges leaving `a` or entering `b` are dropped, so `b → a`
    /// becomes a loop. The fused vertex takes the place of `a`.
    pub fn fuse(&self, a: usize, b: usize) -> Self {
        debug_assert!(a != b && self.has_edge(a, b));
        let mut g = self.clone();
        g.weights[a] += g.weights[b];
        g.succ[a] = g.succ[b];
        for (u, m) in g.succ.iter_mut().enumerate() {
            if u != a {
                *m &= !(1 << b);
            }
        }
        g.succ[a] &= !(1 << b);
        g.remove_vertex(b)
    }

    /// Necessary condition for coming from a word: vertices linked through
    /// shared successors have nested successor sets.
    pub fn realizability_check(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let (ri, rj) = (self.succ[i], self.succ[j]);
                let nested = ri & rj == ri || ri & rj == rj;
                if nested {
                    continue;
                }
                if (0..n).any(|k| ri & self.succ[k] != 0 && rj & self.succ[k] != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether some vertex bijection preserves edges and weights. Brute
    /// force over `n!` bijections after cheap invariant checks.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        let n = self.n();
        if n != other.n() {
            return Ok(false);
        }
        if n > 8 {
            return domain(format!("isomorphism test limited to 8 vertices, got {n}"));
        }
        let profile = |g: &Self| {
            let mut p: Vec<(u32, u32, u32, bool)> = (0..g.n())
                .map(|v| {
                    let indeg = (0..g.n()).filter(|&u| g.has_edge(u, v)).count() as u32;
                    (g.weights[v], g.succ[v].count_ones(), indeg, g.has_edge(v, v))
                })
                .collect();
            p.sort_unstable();
            p
        };
        if profile(self) != profile(other) {
            return Ok(false);
        }
        Ok(Permutation::all(n).iter().any(|p| {
            (0..n).all(|v| self.weights[v] == other.weights[p.apply(v)])
                && (0..n).all(|a| {
                    (0..n).all(|b| self.has_edge(a, b) == other.has_edge(p.apply(a), p.apply(b)))
                })
        }))
    }
}

impl fmt::Display for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    weights: Vec<u32>,
    edges: Vec<[usize; 2]>,
}

impl Serialize for WeightedDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            weights: self.weights.clone(),
            edges: self.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        let mut edges = Vec::with_capacity(g.edges.len());
        for [a, b] in g.edges {
            if a == 0 || b == 0 {
                return Err(serde::de::Error::custom("vertices are 1-based"));
            }
            edges.push((a - 1, b - 1));
        }
        WeightedDigraph::new(g.weights, &edges).map_err(serde::de::Error::custom)
    }
}

/// The digraph of a Dyck word: one vertex per annihilator `p(1) < … < p(n)`
/// and an edge `v_r → v_s` iff `color(p(r)) = color(π(p(s)))` and
/// `π(p(s)) > p(r)`, where `π` is the canonical matching. With `weighted`,
/// vertex `v_i` gets weight `k_{p(i)} + 1 + k_{π(p(i))}` from the token
/// weights.
pub fn word_digraph(w: &FlatWord, weighted: bool) -> Result<WeightedDigraph> {
    let matching = w.canonical_matching()?;
    let toks = w.tokens();
    let p: Vec<usize> = w.annihilator_positions();
    let partner: Vec<usize> = p.iter().map(|&x| matching.partner(x)).collect();
    let n = p.len();
    let mut edges = Vec::new();
    for r in 0..n {
        for s in 0..n {
            if toks[p[r] - 1].color == toks[partner[s] - 1].color && partner[s] > p[r] {
                edges.push((r, s));
            }
        }
    }
    let weights = (0..n)
        .map(|i| {
            if weighted {
                toks[p[i] - 1].weight + 1 + toks[partner[i] - 1].weight
            } else {
                1
            }
        })
        .collect();
    debug_assert!(p.iter().all(|&x| toks[x - 1].kind == OpKind::Annihilate));
    WeightedDigraph::new(weights, &edges)
}

#[cfg(test)]
mod tests;
