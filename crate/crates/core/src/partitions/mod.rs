//! Set partitions of `{1..n}`, the partition lattice and its Möbius
//! function, pair partitions and the crossing statistics built on them.

mod pair;
mod perm;
mod stats;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{domain, Error, Result};

pub use pair::{enumerate_pair_partitions, CycleStructure, PairPartition};
pub use perm::Permutation;
pub use stats::{connected_components, interval_inflation, kernel, rc, rrc, uncross_phi, uncross_rrc};

/// Largest ground set accepted by [`enumerate_partitions`].
pub const MAX_ENUMERATION: usize = 12;

/// A partition of `{1..n}` in canonical form: blocks are nonempty, sorted
/// internally, and ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes a block list over `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return domain("empty block");
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n {
                    return domain(format!("element {x} outside 1..{n}"));
                }
                if seen[x] {
                    return domain(format!("element {x} occurs twice"));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return domain(format!("element {x} missing"));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Infers `n` as the number of listed elements.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        Self::new(n, blocks)
    }

    /// The kernel of a labelling: `i ~ j` iff `labels[i-1] == labels[j-1]`.
    pub fn from_labels<T: Eq + Hash>(labels: &[T]) -> Self {
        let mut index: HashMap<&T, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            let next = index.len();
            let b = *index.entry(l).or_insert(next);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(i + 1);
        }
        SetPartition {
            n: labels.len(),
            blocks,
        }
    }

    /// `0̂_n`, all singletons.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// `1̂_n`, a single block.
    pub fn coarsest(n: usize) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(1..=n).collect()] },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// 0-based block index of every element, i.e. `labels()[i-1]` is the
    /// number of the block containing `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x - 1] = k;
            }
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| is_interval_block(b))
    }

    /// No two blocks interleave as `a < b < c < d` with `a, c` in one block
    /// and `b, d` in another.
    pub fn is_noncrossing(&self) -> bool {
        for (i, b1) in self.blocks.iter().enumerate() {
            for b2 in &self.blocks[i + 1..] {
                if blocks_cross(b1, b2) {
                    return false;
                }
            }
        }
        true
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return domain(format!("ground sets differ: {} vs {}", self.n, other.n));
        }
        Ok(())
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_n(other)?;
        let lab = other.labels();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| lab[x - 1] == lab[b[0] - 1])))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let nx = uf[y];
                uf[y] = r;
                y = nx;
            }
            r
        }
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for &x in &b[1..] {
                let (a, c) = (find(&mut uf, b[0] - 1), find(&mut uf, x - 1));
                uf[a] = c;
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|i| find(&mut uf, i)).collect();
        Ok(SetPartition::from_labels(&roots))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let a = self.labels();
        let b = other.labels();
        let pairs: Vec<(usize, usize)> = a.into_iter().zip(b).collect();
        Ok(SetPartition::from_labels(&pairs))
    }

    /// All partitions `σ ≤ self`, in restricted-growth order.
    pub fn refinements(&self) -> Vec<SetPartition> {
        let outer = self.labels();
        let mut out = Vec::new();
        let mut lab = vec![0usize; self.n];
        let mut owner: Vec<usize> = Vec::new();
        fn rec(
            i: usize,
            outer: &[usize],
            lab: &mut Vec<usize>,
            owner: &mut Vec<usize>,
            out: &mut Vec<SetPartition>,
        ) {
            if i == outer.len() {
                out.push(SetPartition::from_labels(lab));
                return;
            }
            for k in 0..owner.len() {
                if owner[k] == outer[i] {
                    lab[i] = k;
                    rec(i + 1, outer, lab, owner, out);
                }
            }
            lab[i] = owner.len();
            owner.push(outer[i]);
            rec(i + 1, outer, lab, owner, out);
            owner.pop();
        }
        rec(0, &outer, &mut lab, &mut owner, &mut out);
        out
    }

    /// Parses the compact form `"13|24"`; blocks are separated by `|` and
    /// hold single digits, or comma separated numbers (`"1,10|2"`).
    pub fn parse_compact(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut pos = 0;
        for part in text.trim().split('|') {
            let part = part.trim();
            let mut block = Vec::new();
            let bad = |pos: usize| Error::Parse {
                pos,
                msg: format!("bad block {part:?}"),
            };
            if part.contains(',') {
                for x in part.split(',') {
                    block.push(x.trim().parse::<usize>().map_err(|_| bad(pos))?);
                }
            } else {
                for ch in part.chars() {
                    block.push(ch.to_digit(10).ok_or_else(|| bad(pos))? as usize);
                }
            }
            pos += part.len() + 1;
            blocks.push(block);
        }
        SetPartition::from_blocks(blocks)
    }

    /// The compact form used by the CLI; the inverse of [`parse_compact`](Self::parse_compact).
    pub fn to_compact(&self) -> String {
        let wide = self.n > 9;
        self.blocks
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                parts.join(if wide { "," } else { "" })
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Views a partition with all blocks of size two as a pair partition.
    pub fn to_pair_partition(&self) -> Result<PairPartition> {
        PairPartition::from_set_partition(self)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        SetPartition::from_blocks(blocks).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_interval_block(b: &[usize]) -> bool {
    b.windows(2).all(|w| w[1] == w[0] + 1)
}

pub(crate) fn blocks_cross(b1: &[usize], b2: &[usize]) -> bool {
    let interleave = |x: &[usize], y: &[usize]| {
        for (ia, &a) in x.iter().enumerate() {
            for &c in &x[ia + 1..] {
                let inside = y.iter().any(|&b| a < b && b < c);
                let outside = y.iter().any(|&d| d > c);
                if inside && outside {
                    return true;
                }
            }
        }
        false
    };
    interleave(b1, b2) || interleave(b2, b1)
}

/// All partitions of `{1..n}`, each once, in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 || n > MAX_ENUMERATION {
        return domain(format!("n = {n} outside 1..={MAX_ENUMERATION}"));
    }
    Ok(SetPartition::coarsest(n).refinements())
}

/// The Möbius function `μ(σ, π)` of the partition lattice, as the product
/// over blocks `B` of `π` of `(-1)^(m-1) (m-1)!` where `m` counts the blocks
/// of `σ` inside `B`.
pub fn mobius(sigma: &SetPartition, pi: &SetPartition) -> Result<Rational> {
    if !sigma.leq(pi)? {
        return domain(format!("{sigma} is not finer than {pi}"));
    }
    let lab = pi.labels();
    let mut counts = vec![0usize; pi.num_blocks()];
    for b in sigma.blocks() {
        counts[lab[b[0] - 1]] += 1;
    }
    let mut acc = BigInt::from(1);
    for m in counts {
        for k in 1..m {
            acc *= BigInt::from(k);
        }
        if m % 2 == 0 {
            acc = -acc;
        }
    }
    Ok(Rational::from_integer(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn p(s: &str) -> SetPartition {
        SetPartition::parse_compact(s).unwrap()
    }

    fn bell_by_recursion(n: usize) -> usize {
        // B(n+1) = sum_k C(n,k) B(k)
        let mut bell = vec![1usize];
        for m in 0..n {
            let mut binom = 1usize;
            let mut s = 0;
            for k in 0..=m {
                s += binom * bell[k];
                binom = binom * (m - k) / (k + 1);
            }
            bell.push(s);
        }
        bell[n]
    }

    #[test]
    fn enumeration_counts_match_bell_numbers() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p("1")]);
        for n in 1..=7 {
            let all = enumerate_partitions(n).unwrap();
            assert_eq!(all.len(), bell_by_recursion(n));
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
        }
        assert_eq!(enumerate_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 15);
        assert!(enumerate_partitions(0).is_err());
        assert!(enumerate_partitions(13).is_err());
    }

    #[test]
    fn lattice_examples() {
        assert!(p("1|2").leq(&p("12")).unwrap());
        assert_eq!(p("12|3").join(&p("1|23")).unwrap(), p("123"));
        assert_eq!(p("123").meet(&p("12|3")).unwrap(), p("12|3"));
        assert!(p("12").leq(&p("123")).is_err());
    }

    #[test]
    fn validation() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![2]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 3]]).is_err());
        assert_eq!(
            SetPartition::new(4, vec![vec![4, 2], vec![3, 1]]).unwrap().blocks(),
            &[vec![1, 3], vec![2, 4]]
        );
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&p("13|2"), &p("13|2")).unwrap(), Rational::one());
        assert_eq!(mobius(&p("1|2"), &p("12")).unwrap(), -Rational::one());
        assert!(mobius(&p("12"), &p("1|2")).is_err());
    }

    /// Möbius function by its defining recursion
    /// `μ(σ,σ) = 1`, `μ(σ,π) = -Σ_{σ ≤ τ < π} μ(σ,τ)`.
    fn mobius_by_recursion(sigma: &SetPartition, pi: &SetPartition) -> i64 {
        if sigma == pi {
            return 1;
        }
        let mut s = 0;
        for tau in pi.refinements() {
            if tau != *pi && sigma.leq(&tau).unwrap() {
                s += mobius_by_recursion(sigma, &tau);
            }
        }
        -s
    }

    #[test]
    fn mobius_matches_defining_recursion() {
        assert_eq!(mobius_by_recursion(&SetPartition::finest(3), &SetPartition::coarsest(3)), 2);
        assert_eq!(
            mobius(&SetPartition::finest(3), &SetPartition::coarsest(3)).unwrap(),
            Rational::from_integer(2.into())
        );
        for n in 1..=4 {
            for pi in enumerate_partitions(n).unwrap() {
                for sigma in pi.refinements() {
                    assert_eq!(
                        mobius(&sigma, &pi).unwrap(),
                        Rational::from_integer(mobius_by_recursion(&sigma, &pi).into())
                    );
                }
            }
        }
    }

    #[test]
    fn mobius_sums_vanish_above_the_bottom() {
        for n in 1..=5 {
            for pi in enumerate_partitions(n).unwrap() {
                let s: Rational = pi.refinements().iter().map(|s| mobius(s, &pi).unwrap()).sum();
                if pi == SetPartition::finest(n) {
                    assert!(s.is_one());
                } else {
                    assert!(s.is_zero(), "{pi}");
                }
            }
        }
    }

    #[test]
    fn lattice_laws() {
        let all = enumerate_partitions(4).unwrap();
        let bot = SetPartition::finest(4);
        let top = SetPartition::coarsest(4);
        for a in &all {
            assert!(bot.leq(a).unwrap() && a.leq(&top).unwrap());
            assert_eq!(&a.join(a).unwrap(), a);
            assert_eq!(&a.meet(a).unwrap(), a);
            for b in &all {
                assert_eq!(&a.join(&a.meet(b).unwrap()).unwrap(), a);
                assert_eq!(&a.meet(&a.join(b).unwrap()).unwrap(), a);
                assert_eq!(a.leq(b).unwrap(), a.join(b).unwrap() == *b);
            }
        }
    }

    #[test]
    fn compact_round_trip_and_json() {
        let x = p("13|24");
        assert_eq!(x.to_string(), "13|24");
        assert_eq!(serde_json::to_string(&x).unwrap(), "[[1,3],[2,4]]");
        let back: SetPartition = serde_json::from_str("[[2,4],[1,3]]").unwrap();
        assert_eq!(back, x);
        let wide = SetPartition::parse_compact("1,10|2,3,4,5,6,7,8,9").unwrap();
        assert_eq!(wide.n(), 10);
        assert_eq!(SetPartition::parse_compact(&wide.to_compact()).unwrap(), wide);
    }

    #[test]
    fn refinements_are_exactly_the_lower_set() {
        let all = enumerate_partitions(5).unwrap();
        for pi in all.iter().step_by(7) {
            let mut expect: Vec<_> = all.iter().filter(|s| s.leq(pi).unwrap()).cloned().collect();
            let mut got = pi.refinements();
            expect.sort();
            got.sort();
            assert_eq!(got, expect);
        }
    }
}
