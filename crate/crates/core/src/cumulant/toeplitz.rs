use num_traits::One;
use serde::Serialize;

use super::{cumulant_table, Variable};
use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::{domain, Result};
use crate::fock::FockModel;
use crate::partitions::{rrc, SetPartition};
use crate::words::{FlatWord, OpToken};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ToeplitzKind {
    /// `q = 0`.
    Free,
    /// Symbolic `q`.
    Q,
    /// Symbolic `t = 1/N`.
    N,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToeplitzReport {
    pub partition: SetPartition,
    pub computed: MultiPoly,
    /// Closed form, where one is known for the model and partition.
    pub predicted: Option<MultiPoly>,
}

impl ToeplitzReport {
    pub fn agrees(&self) -> bool {
        self.predicted.as_ref() == Some(&self.computed)
    }
}

fn closed_b(kind: ToeplitzKind, param: &MultiPoly, k: usize) -> MultiPoly {
    let one = MultiPoly::one();
    let mut acc = one.clone();
    match kind {
        ToeplitzKind::Free => {}
        ToeplitzKind::Q => {
            for m in 1..k {
                let mut bracket = MultiPoly::zero();
                for i in 0..m {
                    bracket = bracket.plus(&param.pow(i as u32));
                }
                acc = acc.times(&bracket);
            }
        }
        ToeplitzKind::N => {
            for j in 1..k.saturating_sub(1) {
                acc = acc.times(&one.plus(&MultiPoly::from_int(j as i64).times(param)));
            }
        }
    }
    acc
}

/// Cumulant `K_π(T, …, T)` of the generalised Toeplitz operator
/// `T = L* + Σ_{k=1}^K u_k L^{k-1}` with indeterminates `u_k`, where `K` is
/// the largest block of `π`. Writing `α_k = u_k b_k` with
/// `b_k = ρ((L*)^{k-1} L^{k-1})` in closed form, the prediction is `α_n`
/// for a single block, and `q^{rrc(π)} Π_B α_{|B|}` in the q-models.
pub fn toeplitz_cumulant(kind: ToeplitzKind, pi: &SetPartition) -> Result<ToeplitzReport> {
    let n = pi.n();
    if n == 0 || n > 6 {
        return domain(format!("n = {n} outside 1..=6"));
    }
    let k_max = pi.block_sizes().into_iter().max().unwrap_or(1);
    let mut vars: Vec<String> = match kind {
        ToeplitzKind::Free => vec![],
        ToeplitzKind::Q => vec!["q".into()],
        ToeplitzKind::N => vec!["t".into()],
    };
    vars.extend((1..=k_max).map(|k| format!("u_{k}")));
    let param = match kind {
        ToeplitzKind::Free => MultiPoly::zero(),
        ToeplitzKind::Q => MultiPoly::var(&vars, "q")?,
        ToeplitzKind::N => MultiPoly::var(&vars, "t")?,
    };
    let model = match kind {
        ToeplitzKind::N => FockModel::n(param.clone(), n)?,
        _ => FockModel::q(param.clone(), n)?,
    }
    .with_truncation(2 * n + k_max);
    let mut terms = vec![(MultiPoly::constant_in(&vars, Rational::one()), FlatWord(vec![OpToken::annihilate(1)]))];
    for k in 1..=k_max {
        let u = MultiPoly::var(&vars, &format!("u_{k}"))?;
        terms.push((u, FlatWord(vec![OpToken::create(1); k - 1])));
    }
    let t = Variable { terms };
    let vars_t = vec![t; n];
    let table = cumulant_table(&model, &vars_t, pi)?;
    let computed = table[pi].clone();
    let alpha = |k: usize| -> Result<MultiPoly> {
        Ok(MultiPoly::var(&vars, &format!("u_{k}"))?.times(&closed_b(kind, &param, k)))
    };
    let predicted = if pi.num_blocks() == 1 {
        Some(alpha(n)?)
    } else if kind == ToeplitzKind::N {
        None
    } else {
        let mut acc = param.pow(rrc(pi) as u32);
        for b in pi.block_sizes() {
            acc = acc.times(&alpha(b)?);
        }
        Some(acc)
    };
    Ok(ToeplitzReport { partition: pi.clone(), computed, predicted })
}
