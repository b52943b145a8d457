use std::collections::BTreeMap;
use std::fmt;

use super::{Permutation, SetPartition};
use crate::error::{domain, Result};

/// Largest ground set accepted by [`enumerate_pair_partitions`].
pub const MAX_PAIR_ENUMERATION: usize = 16;

/// A partition of `{1..n}` into pairs `(l, r)` with `l < r`, listed in
/// increasing order of left points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

/// Cycle data of a pair partition relative to its noncrossing companion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    /// Number of cycles `c(π)`.
    pub cycles: usize,
    /// Cycle length `m` → `c_m(π)`.
    pub by_length: BTreeMap<usize, usize>,
    /// `σ(i) = j` iff `r_i = r̂_j`, pairs indexed by left points.
    pub sigma: Permutation,
}

impl PairPartition {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let blocks = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        let sp = SetPartition::new(n, blocks)?;
        Self::from_set_partition(&sp)
    }

    pub fn from_set_partition(sp: &SetPartition) -> Result<Self> {
        if sp.blocks().iter().any(|b| b.len() != 2) {
            return domain(format!("{sp} is not a pair partition"));
        }
        Ok(PairPartition {
            n: sp.n(),
            pairs: sp.blocks().iter().map(|b| (b[0], b[1])).collect(),
        })
    }

    pub fn to_set_partition(&self) -> SetPartition {
        SetPartition::new(self.n, self.pairs.iter().map(|&(a, b)| vec![a, b]).collect())
            .expect("pair partitions are valid set partitions")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Partner of the 1-based point `i`.
    pub fn partner(&self, i: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == i {
                return b;
            }
            if b == i {
                return a;
            }
        }
        panic!("point {i} outside the ground set")
    }

    /// Number of quadruples `i < j < k < l` with `(i,k)` and `(j,l)` paired.
    pub fn crossings(&self) -> usize {
        let mut c = 0;
        for (x, &(i, k)) in self.pairs.iter().enumerate() {
            for &(j, l) in &self.pairs[x + 1..] {
                if i < j && j < k && k < l {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossings() == 0
    }

    /// The unique noncrossing pair partition with the same left points,
    /// built by matching left points from the right to the nearest free
    /// right point.
    pub fn nc_hat(&self) -> PairPartition {
        let mut is_left = vec![false; self.n + 1];
        for &(l, _) in &self.pairs {
            is_left[l] = true;
        }
        let mut used = vec![false; self.n + 1];
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for &(l, _) in self.pairs.iter().rev() {
            let r = (l + 1..=self.n)
                .find(|&r| !is_left[r] && !used[r])
                .expect("left points of a pair partition admit a noncrossing matching");
            used[r] = true;
            pairs.push((l, r));
        }
        pairs.reverse();
        PairPartition { n: self.n, pairs }
    }

    /// Cycles of `π` relative to `π̂ = nc_hat(π)`.
    pub fn cycle_structure(&self) -> CycleStructure {
        let hat = self.nc_hat();
        let images: Vec<usize> = self
            .pairs
            .iter()
            .map(|&(_, r)| {
                hat.pairs
                    .iter()
                    .position(|&(_, rh)| rh == r)
                    .expect("same right point set")
            })
            .collect();
        let sigma = Permutation::from_images(images).expect("bijection between right points");
        CycleStructure {
            cycles: sigma.num_cycles(),
            by_length: sigma.cycle_type(),
            sigma,
        }
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `(n-1)!!` pair partitions of `{1..n}`; empty for odd `n`.
pub fn enumerate_pair_partitions(n: usize) -> Result<Vec<PairPartition>> {
    if n > MAX_PAIR_ENUMERATION {
        return domain(format!("n = {n} exceeds {MAX_PAIR_ENUMERATION}"));
    }
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut free = vec![true; n + 1];
    let mut cur = Vec::new();
    fn rec(n: usize, free: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<PairPartition>) {
        let Some(a) = (1..=n).find(|&i| free[i]) else {
            out.push(PairPartition { n, pairs: cur.clone() });
            return;
        };
        free[a] = false;
        for b in a + 1..=n {
            if free[b] {
                free[b] = false;
                cur.push((a, b));
                rec(n, free, cur, out);
                cur.pop();
                free[b] = true;
            }
        }
        free[a] = true;
    }
    rec(n, &mut free, &mut cur, &mut out);
    Ok(out)
}
