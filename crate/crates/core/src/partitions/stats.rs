use super::{blocks_cross, is_interval_block, SetPartition};
use crate::error::{domain, Result};

/// Right reduced crossings: ordered pairs of distinct blocks `(B, B')` and
/// points `i < i' < j < j'` with `i ∈ B`, `i' ∈ B'`, `j = max B`, `j' = max B'`.
pub fn rrc(pi: &SetPartition) -> usize {
    let mut count = 0;
    for b in pi.blocks() {
        let j = *b.last().unwrap();
        for b2 in pi.blocks() {
            let j2 = *b2.last().unwrap();
            if std::ptr::eq(b, b2) || j2 <= j {
                continue;
            }
            for &i in b {
                count += b2.iter().filter(|&&i2| i < i2 && i2 < j).count();
            }
        }
    }
    count
}

/// The last non-interval block in max order, with the points `(j1, j2)`
/// enclosing its last hole.
fn last_hole(pi: &SetPartition) -> Option<(Vec<usize>, usize, usize)> {
    let mut blocks: Vec<&Vec<usize>> = pi.blocks().iter().collect();
    blocks.sort_by_key(|b| *b.last().unwrap());
    let b = blocks.into_iter().rev().find(|b| !is_interval_block(b))?;
    let k = (1..b.len()).rev().find(|&k| b[k - 1] + 1 != b[k])?;
    Some((b.clone(), b[k - 1], b[k]))
}

fn relabel(pi: &SetPartition, f: impl Fn(usize) -> usize) -> SetPartition {
    let blocks = pi
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&x| f(x)).collect())
        .collect();
    SetPartition::new(pi.n(), blocks).expect("relabelling by a permutation")
}

/// One step of the un-crossing map moving the last hole of the last
/// non-interval block to its end. Returns the image and `c_b`.
pub fn uncross_phi(pi: &SetPartition) -> (SetPartition, i64) {
    let Some((b, j1, j2)) = last_hole(pi) else {
        return (pi.clone(), 0);
    };
    let top = *b.last().unwrap();
    let len = top - j1;
    let shift = top - j2 + 1;
    let alpha = |e: usize| {
        if e > j1 && e <= top {
            j1 + 1 + (e - j1 - 1 + shift) % len
        } else {
            e
        }
    };
    let ends = pi
        .blocks()
        .iter()
        .filter(|b| j1 < *b.last().unwrap() && *b.last().unwrap() < j2)
        .count() as i64;
    let starts = pi
        .blocks()
        .iter()
        .filter(|b| j1 < b[0] && b[0] < j2)
        .count() as i64;
    (relabel(pi, alpha), ends - starts)
}

/// Reduced crossings: the sum of `c_b` along the orbit of [`uncross_phi`]
/// down to an interval partition.
pub fn rc(pi: &SetPartition) -> i64 {
    let mut cur = pi.clone();
    let mut total = 0;
    while !cur.is_interval() {
        let (next, c) = uncross_phi(&cur);
        total += c;
        cur = next;
    }
    total
}

/// One step of the rotation `(j1, j1+1, …, j2-1) → (j1+1, …, j2-1, j1)` on the
/// last hole, with the number of right reduced crossings it removes.
pub fn uncross_rrc(pi: &SetPartition) -> (SetPartition, usize) {
    let Some((_, j1, j2)) = last_hole(pi) else {
        return (pi.clone(), 0);
    };
    let c = pi
        .blocks()
        .iter()
        .filter(|b| j1 < *b.last().unwrap() && *b.last().unwrap() < j2)
        .map(|b| b.len() - b.iter().filter(|&&x| j1 < x && x < j2).count())
        .sum();
    let f = |e: usize| {
        if e == j1 {
            j2 - 1
        } else if e > j1 && e < j2 {
            e - 1
        } else {
            e
        }
    };
    (relabel(pi, f), c)
}

/// Groups blocks into classes linked by crossings; each class is returned
/// relabelled onto `{1..k}`, ordered by smallest element.
pub fn connected_components(pi: &SetPartition) -> Vec<SetPartition> {
    let blocks = pi.blocks();
    let mut comp: Vec<usize> = (0..blocks.len()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                if comp[a] != comp[b] && blocks_cross(&blocks[a], &blocks[b]) {
                    let (lo, hi) = (comp[a].min(comp[b]), comp[a].max(comp[b]));
                    for c in comp.iter_mut() {
                        if *c == hi {
                            *c = lo;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    let mut ids: Vec<usize> = comp.clone();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|id| {
            let members: Vec<&Vec<usize>> = blocks
                .iter()
                .zip(&comp)
                .filter(|(_, &c)| c == id)
                .map(|(b, _)| b)
                .collect();
            let mut support: Vec<usize> = members.iter().flat_map(|b| b.iter().copied()).collect();
            support.sort_unstable();
            let rank = |x: usize| support.binary_search(&x).unwrap() + 1;
            let local = members
                .iter()
                .map(|b| b.iter().map(|&x| rank(x)).collect())
                .collect();
            SetPartition::new(support.len(), local).expect("induced partition")
        })
        .collect()
}

/// `ker h`: positions with equal values share a block.
pub fn kernel<T: Eq + std::hash::Hash>(h: &[T]) -> SetPartition {
    SetPartition::from_labels(h)
}

/// Replaces element `i` of `pi` by the `i`-th consecutive interval of length
/// `sizes[i-1]` and merges intervals along the blocks of `pi`.
pub fn interval_inflation(pi: &SetPartition, sizes: &[usize]) -> Result<SetPartition> {
    if sizes.len() != pi.n() {
        return domain(format!("{} sizes for a partition of {}", sizes.len(), pi.n()));
    }
    if sizes.iter().any(|&s| s == 0) {
        return domain("interval sizes must be positive");
    }
    let mut starts = Vec::with_capacity(sizes.len());
    let mut acc = 1;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    let blocks = pi
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .flat_map(|&i| starts[i - 1]..starts[i - 1] + sizes[i - 1])
                .collect()
        })
        .collect();
    SetPartition::new(acc - 1, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_pair_partitions, enumerate_partitions};

    fn sp(s: &str) -> SetPartition {
        SetPartition::parse_compact(s).unwrap()
    }

    #[test]
    fn rrc_examples() {
        assert_eq!(rrc(&sp("12|34")), 0);
        assert_eq!(rrc(&sp("123|4|56")), 0);
        assert_eq!(rrc(&sp("13|24")), 1);
        // (1,2,5,6), (1,4,5,6) and (3,4,5,6) all qualify
        assert_eq!(rrc(&sp("135|246")), 3);
    }

    #[test]
    fn rc_examples() {
        let p = sp("12|3");
        assert_eq!(uncross_phi(&p), (p.clone(), 0));
        assert_eq!(rc(&p), 0);
        assert_eq!(uncross_phi(&sp("13|24")), (sp("14|23"), 1));
        assert_eq!(uncross_phi(&sp("14|23")), (sp("12|34"), 0));
        assert_eq!(rc(&sp("13|24")), 1);
        assert_eq!(rc(&sp("14|23")), 0);
    }

    #[test]
    fn phi_moves_hole_to_block_end() {
        let (img, _) = uncross_phi(&sp("1256|34"));
        assert_eq!(img, sp("1234|56"));
        let (img, _) = uncross_phi(&sp("146|25|3"));
        assert_eq!(img, sp("145|26|3"));
    }

    #[test]
    fn rrc_uncrossing_step_accounts_for_removed_crossings() {
        for n in 1..=7 {
            for p in enumerate_partitions(n).unwrap() {
                let (img, c) = uncross_rrc(&p);
                assert_eq!(rrc(&p), rrc(&img) + c, "{p}");
            }
        }
    }

    #[test]
    fn phi_reaches_interval_partition_within_n_steps() {
        for n in 1..=7 {
            for p in enumerate_partitions(n).unwrap() {
                let mut cur = p.clone();
                let mut steps = 0;
                while !cur.is_interval() {
                    cur = uncross_phi(&cur).0;
                    steps += 1;
                }
                assert!(steps <= n, "{p}");
            }
        }
    }

    #[test]
    fn statistics_vanish_on_noncrossing_partitions() {
        for n in 1..=8 {
            for p in enumerate_partitions(n).unwrap() {
                if p.is_noncrossing() {
                    assert_eq!(rc(&p), 0, "{p}");
                    assert_eq!(rrc(&p), 0, "{p}");
                }
            }
        }
    }

    #[test]
    fn rrc_equals_crossings_on_pairings() {
        for n in (2..=8).step_by(2) {
            for p in enumerate_pair_partitions(n).unwrap() {
                assert_eq!(rrc(&p.to_set_partition()), p.crossings(), "{p}");
            }
        }
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(&sp("12|34")).len(), 2);
        assert_eq!(connected_components(&sp("13|24")), vec![sp("13|24")]);
        assert_eq!(
            connected_components(&sp("16|23|45")),
            vec![sp("12"), sp("12"), sp("12")]
        );
        assert_eq!(
            connected_components(&sp("15|24|36|7")),
            vec![sp("15|24|36"), sp("1")]
        );
        assert_eq!(
            connected_components(&sp("13|24|57|68")),
            vec![sp("13|24"), sp("13|24")]
        );
    }

    #[test]
    fn kernel_and_inflation_examples() {
        assert_eq!(kernel(&[5, 7, 5]), sp("13|2"));
        assert_eq!(interval_inflation(&sp("12"), &[2, 1]).unwrap(), sp("123"));
        assert_eq!(interval_inflation(&sp("1|2"), &[2, 2]).unwrap(), sp("12|34"));
        assert_eq!(interval_inflation(&sp("13|2"), &[1, 2, 1]).unwrap(), sp("14|23"));
        assert!(interval_inflation(&sp("1|2"), &[1]).is_err());
        assert!(interval_inflation(&sp("1|2"), &[1, 0]).is_err());
    }
}
