//! Operator words in creation, annihilation and gauge operators.
//!
//! Words are written in operator order: the leftmost token acts last. The
//! associated lattice path is therefore read from right to left, with a
//! creator of color `i` stepping up in coordinate `i`.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::partitions::{PairPartition, SetPartition};

pub use parse::{parse_word, ReadOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpKind {
    #[serde(rename = "c")]
    Create,
    #[serde(rename = "a")]
    Annihilate,
    #[serde(rename = "g")]
    Gauge,
}

/// A single operator. For gauges `color` is the first basis index the
/// gauge matrix acts on and `gauge` names the matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpToken {
    pub kind: OpKind,
    pub color: usize,
    #[serde(default)]
    pub weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<usize>,
}

impl OpToken {
    pub fn create(color: usize) -> Self {
        OpToken { kind: OpKind::Create, color, weight: 0, gauge: None }
    }

    pub fn annihilate(color: usize) -> Self {
        OpToken { kind: OpKind::Annihilate, color, weight: 0, gauge: None }
    }

    pub fn gauge(id: usize, offset: usize) -> Self {
        OpToken { kind: OpKind::Gauge, color: offset, weight: 0, gauge: Some(id) }
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }

    /// Height change of the path in this token's coordinate.
    pub fn step(&self) -> i64 {
        match self.kind {
            OpKind::Create => 1,
            OpKind::Annihilate => -1,
            OpKind::Gauge => 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.color == 0 {
            return domain("colors are 1-based");
        }
        match self.kind {
            OpKind::Gauge if self.gauge.is_none() => domain("gauge token without matrix id"),
            OpKind::Gauge if self.weight != 0 => domain("gauge tokens carry no weight"),
            OpKind::Create | OpKind::Annihilate if self.gauge.is_some() => {
                domain("only gauge tokens carry a matrix id")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OpToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OpKind::Create => write!(f, "c{}", self.color)?,
            OpKind::Annihilate => write!(f, "a{}", self.color)?,
            OpKind::Gauge => {
                write!(f, "g{}", self.gauge.unwrap_or(0))?;
                if self.color != 1 {
                    write!(f, "@{}", self.color)?;
                }
                return Ok(());
            }
        }
        if self.weight != 0 {
            write!(f, "({})", self.weight)?;
        }
        Ok(())
    }
}

/// A word of unit operators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlatWord(pub Vec<OpToken>);

/// `L_i^k`; negative `k` stands for `(L_i*)^{-k}` and zero for the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerFactor {
    pub color: usize,
    pub exponent: i32,
    #[serde(default)]
    pub weight: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerWord(pub Vec<PowerFactor>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Word {
    Flat(FlatWord),
    Power(PowerWord),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathClass {
    NotLattice,
    Lattice,
    Lukasiewicz,
    Dyck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathInfo {
    pub class: PathClass,
    pub irreducible: bool,
}

impl PathInfo {
    pub fn is_lattice(&self) -> bool {
        self.class != PathClass::NotLattice
    }
}

/// Classifies a path given by `(color, step)` pairs in reading order.
fn classify_steps(steps: &[(usize, i64)]) -> PathInfo {
    let mut height: BTreeMap<usize, i64> = BTreeMap::new();
    let mut total = 0i64;
    let mut nonneg = true;
    let mut irreducible = true;
    for (j, &(c, s)) in steps.iter().enumerate() {
        let h = height.entry(c).or_insert(0);
        *h += s;
        total += s;
        if *h < 0 {
            nonneg = false;
        }
        if j + 1 < steps.len() && total <= 0 {
            irreducible = false;
        }
    }
    let lattice = nonneg && height.values().all(|&h| h == 0);
    let class = if !lattice {
        PathClass::NotLattice
    } else if steps.iter().all(|&(_, s)| s == 1 || s == -1) {
        PathClass::Dyck
    } else if steps.iter().all(|&(_, s)| s >= -1) {
        PathClass::Lukasiewicz
    } else {
        PathClass::Lattice
    };
    PathInfo { class, irreducible }
}

fn is_lattice_steps(steps: &[(usize, i64)]) -> bool {
    classify_steps(steps).is_lattice()
}

fn has_proper_lattice_window(steps: &[(usize, i64)]) -> bool {
    let n = steps.len();
    (0..n).any(|i| (i + 1..=n).any(|j| j - i < n && is_lattice_steps(&steps[i..j])))
}

impl FlatWord {
    pub fn new(tokens: Vec<OpToken>) -> Result<Self> {
        for t in &tokens {
            t.validate()?;
        }
        Ok(FlatWord(tokens))
    }

    pub fn tokens(&self) -> &[OpToken] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest basis index touched, counting the span of each gauge matrix
    /// as given by `gauge_dim`.
    pub fn max_color(&self, gauge_dim: impl Fn(usize) -> usize) -> usize {
        self.0
            .iter()
            .map(|t| match t.gauge {
                Some(id) => t.color + gauge_dim(id).max(1) - 1,
                None => t.color,
            })
            .max()
            .unwrap_or(0)
    }

    /// Path steps in reading order, i.e. from the rightmost token.
    pub fn steps(&self) -> Vec<(usize, i64)> {
        self.0.iter().rev().map(|t| (t.color, t.step())).collect()
    }

    pub fn classify(&self) -> PathInfo {
        classify_steps(&self.steps())
    }

    /// Whether some contiguous proper subword of positive length is a
    /// lattice word on its own.
    pub fn has_nontrivial_lattice_subword(&self) -> bool {
        has_proper_lattice_window(&self.steps())
    }

    pub fn concat(&self, other: &FlatWord) -> FlatWord {
        let mut t = self.0.clone();
        t.extend(other.0.iter().cloned());
        FlatWord(t)
    }

    /// Adds `offset` to every color (and gauge offset).
    pub fn shift_colors(&self, offset: usize) -> FlatWord {
        FlatWord(
            self.0
                .iter()
                .map(|t| OpToken { color: t.color + offset, ..t.clone() })
                .collect(),
        )
    }

    /// Applies `f` to every color.
    pub fn map_colors(&self, f: impl Fn(usize) -> usize) -> FlatWord {
        FlatWord(self.0.iter().map(|t| OpToken { color: f(t.color), ..t.clone() }).collect())
    }

    pub fn reversed_order(&self) -> FlatWord {
        FlatWord(self.0.iter().rev().cloned().collect())
    }

    /// 1-based positions of the annihilators.
    pub fn annihilator_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, t)| t.kind == OpKind::Annihilate)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The noncrossing pairing obtained by repeatedly joining the rightmost
    /// remaining annihilator to its right neighbour, which must be a
    /// creator. Colors are ignored.
    pub fn canonical_matching(&self) -> Result<PairPartition> {
        if self.0.iter().any(|t| t.kind == OpKind::Gauge) {
            return domain(format!("{self} contains gauge operators"));
        }
        let blind: Vec<(usize, i64)> = self.0.iter().rev().map(|t| (1, t.step())).collect();
        if classify_steps(&blind).class != PathClass::Dyck {
            return domain(format!("{self} is not a Dyck word"));
        }
        let mut alive: Vec<usize> = (1..=self.len()).collect();
        let mut pairs = Vec::with_capacity(self.len() / 2);
        while !alive.is_empty() {
            let k = (0..alive.len())
                .rev()
                .find(|&k| self.0[alive[k] - 1].kind == OpKind::Annihilate)
                .expect("Dyck words start with an annihilator");
            let (p, q) = (alive[k], alive[k + 1]);
            debug_assert_eq!(self.0[q - 1].kind, OpKind::Create);
            pairs.push((p, q));
            alive.drain(k..k + 2);
        }
        PairPartition::new(self.len(), pairs)
    }
}

impl fmt::Display for FlatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl PowerWord {
    pub fn factors(&self) -> &[PowerFactor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> Vec<(usize, i64)> {
        self.0.iter().rev().map(|f| (f.color, f.exponent as i64)).collect()
    }

    pub fn classify(&self) -> PathInfo {
        classify_steps(&self.steps())
    }

    pub fn has_nontrivial_lattice_subword(&self) -> bool {
        has_proper_lattice_window(&self.steps())
    }

    /// Expands every power into unit operators; the returned interval
    /// partition groups the units coming from one factor. Identity factors
    /// contribute nothing.
    pub fn flatten(&self) -> (FlatWord, SetPartition) {
        let mut tokens = Vec::new();
        let mut blocks = Vec::new();
        for f in &self.0 {
            let start = tokens.len() + 1;
            for _ in 0..f.exponent.unsigned_abs() {
                let t = if f.exponent > 0 {
                    OpToken::create(f.color)
                } else {
                    OpToken::annihilate(f.color)
                };
                tokens.push(t.with_weight(f.weight));
            }
            if tokens.len() >= start {
                blocks.push((start..=tokens.len()).collect());
            }
        }
        let n = tokens.len();
        (
            FlatWord(tokens),
            SetPartition::new(n, blocks).expect("interval blocks cover the word"),
        )
    }
}

impl fmt::Display for PowerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|p| {
                let letter = if p.exponent < 0 { 'a' } else { 'c' };
                let mut s = format!("{letter}{}^{}", p.color, p.exponent.unsigned_abs());
                if p.weight != 0 {
                    s.push_str(&format!("({})", p.weight));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Word {
    pub fn classify(&self) -> PathInfo {
        match self {
            Word::Flat(w) => w.classify(),
            Word::Power(w) => w.classify(),
        }
    }

    pub fn has_nontrivial_lattice_subword(&self) -> bool {
        match self {
            Word::Flat(w) => w.has_nontrivial_lattice_subword(),
            Word::Power(w) => w.has_nontrivial_lattice_subword(),
        }
    }

    pub fn to_flat(&self) -> FlatWord {
        match self {
            Word::Flat(w) => w.clone(),
            Word::Power(w) => w.flatten().0,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Flat(w) => w.fmt(f),
            Word::Power(w) => w.fmt(f),
        }
    }
}

/// All color-blind Dyck shapes with `pairs` annihilators, in operator order
/// (a word is Dyck when read from the right, so it starts with `a`).
pub fn dyck_shapes(pairs: usize) -> Vec<Vec<OpKind>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * pairs);
    // Built in reading order, then reversed.
    fn rec(up: usize, height: usize, pairs: usize, cur: &mut Vec<OpKind>, out: &mut Vec<Vec<OpKind>>) {
        if cur.len() == 2 * pairs {
            out.push(cur.iter().rev().copied().collect());
            return;
        }
        if up < pairs {
            cur.push(OpKind::Create);
            rec(up + 1, height + 1, pairs, cur, out);
            cur.pop();
        }
        if height > 0 {
            cur.push(OpKind::Annihilate);
            rec(up, height - 1, pairs, cur, out);
            cur.pop();
        }
    }
    rec(0, 0, pairs, &mut cur, &mut out);
    out.sort();
    out
}

/// Every coloring of every Dyck shape with `pairs` pairs using colors
/// `1..=colors`. Includes colorings that are not lattice in every color.
pub fn colored_dyck_words(pairs: usize, colors: usize) -> Vec<FlatWord> {
    let mut out = Vec::new();
    for shape in dyck_shapes(pairs) {
        let len = shape.len();
        let total = colors.pow(len as u32);
        for mut code in 0..total {
            let mut tokens = Vec::with_capacity(len);
            for &k in &shape {
                let c = code % colors + 1;
                code /= colors;
                tokens.push(OpToken { kind: k, color: c, weight: 0, gauge: None });
            }
            out.push(FlatWord(tokens));
        }
    }
    out
}

/// Multidimensional Dyck words: colorings of Dyck shapes whose path stays
/// nonnegative and returns to zero in every coordinate.
pub fn multidimensional_dyck_words(pairs: usize, colors: usize) -> Vec<FlatWord> {
    colored_dyck_words(pairs, colors)
        .into_iter()
        .filter(|w| w.classify().is_lattice())
        .collect()
}

/// All lattice words of length `len` in creators and annihilators of
/// colors `1..=colors`.
pub fn lattice_words(len: usize, colors: usize) -> Vec<FlatWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    let mut height = vec![0usize; colors + 1];
    fn rec(
        len: usize,
        colors: usize,
        height: &mut Vec<usize>,
        cur: &mut Vec<OpToken>,
        out: &mut Vec<FlatWord>,
    ) {
        let open: usize = height.iter().sum();
        if cur.len() == len {
            if open == 0 {
                out.push(FlatWord(cur.iter().rev().cloned().collect()));
            }
            return;
        }
        if open > len - cur.len() {
            return;
        }
        for c in 1..=colors {
            cur.push(OpToken::create(c));
            height[c] += 1;
            rec(len, colors, height, cur, out);
            height[c] -= 1;
            cur.pop();
            if height[c] > 0 {
                cur.push(OpToken::annihilate(c));
                height[c] -= 1;
                rec(len, colors, height, cur, out);
                height[c] += 1;
                cur.pop();
            }
        }
    }
    rec(len, colors, &mut height, &mut cur, &mut out);
    out
}
