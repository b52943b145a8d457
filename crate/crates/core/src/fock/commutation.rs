use serde::Serialize;

use super::{FockModel, FockVector, ModelKind};
use crate::algebra::Scalar;
use crate::error::{domain, Result};
use crate::words::OpToken;

/// Operator identities checked by [`commutation_check`]; colors are
/// basis vectors `e_i` of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `L*(e_i)L(e_j) - q L(e_j)L*(e_i) = δ_ij I`.
    Qcr { i: usize, j: usize },
    /// `L_i* L_j = δ_ij I + t dΓ_ji`.
    Ncr { i: usize, j: usize },
    /// `R*(e_i)R(e_j) = δ_ij I + dΓ^{(1)}_ji`.
    Vkcr { i: usize, j: usize },
    /// `R_i^{(k)*} R_j^{(m)} = δ_ij Σ_z α_z^{m+k+1} I + dΓ_ji^{(m+k+1)}`.
    Vkgen { i: usize, j: usize, k: u32, m: u32 },
    /// `dΓ^{(k)}_ji R_l^{(m)} = R_l^{(m)} dΓ^{(k)}_ji + δ_il R_j^{(m+k)}`; in the
    /// N-model `k = m = 0` and `L` replaces `R`.
    Deriv { j: usize, i: usize, k: u32, l: usize, m: u32 },
}

impl Relation {
    pub fn id(&self) -> &'static str {
        match self {
            Relation::Qcr { .. } => "QCR",
            Relation::Ncr { .. } => "NCR",
            Relation::Vkcr { .. } => "VKCR",
            Relation::Vkgen { .. } => "VKGEN",
            Relation::Deriv { .. } => "DERIV",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub relation: Relation,
    /// Equality of both sides on each sample ket.
    pub per_sample: Vec<bool>,
}

impl CommutationReport {
    pub fn holds(&self) -> bool {
        self.per_sample.iter().all(|&b| b)
    }
}

/// Applies both sides of `relation` to every sample vector.
pub fn commutation_check<C: Scalar>(
    model: &FockModel<C>,
    relation: Relation,
    samples: &[FockVector<C>],
) -> Result<CommutationReport> {
    let cr = |c: usize, w: u32, v: &FockVector<C>| model.apply_token(&OpToken::create(c).with_weight(w), v);
    let an = |c: usize, w: u32, v: &FockVector<C>| model.apply_token(&OpToken::annihilate(c).with_weight(w), v);
    let delta = |a: usize, b: usize| if a == b { C::one() } else { C::zero() };
    let fits = matches!(
        (relation, model.kind()),
        (Relation::Qcr { .. }, ModelKind::Q { .. })
            | (Relation::Ncr { .. }, ModelKind::N { .. })
            | (Relation::Vkcr { .. } | Relation::Vkgen { .. }, ModelKind::Vk { .. })
            | (Relation::Deriv { .. }, ModelKind::N { .. } | ModelKind::Vk { .. })
    );
    if !fits {
        return domain(format!("relation {} does not belong to this model", relation.id()));
    }
    let mut per_sample = Vec::with_capacity(samples.len());
    for v in samples {
        let (lhs, rhs) = match (relation, model.kind()) {
            (Relation::Qcr { i, j }, ModelKind::Q { q }) => {
                let a = an(i, 0, &cr(j, 0, v)?)?;
                let b = cr(j, 0, &an(i, 0, v)?)?.scaled(q);
                (a.minus(&b), v.scaled(&delta(i, j)))
            }
            (Relation::Ncr { i, j }, ModelKind::N { t }) => {
                let a = an(i, 0, &cr(j, 0, v)?)?;
                let b = v.scaled(&delta(i, j)).plus(&model.dgamma(j, i, 0, v)?.scaled(t));
                (a, b)
            }
            (Relation::Vkcr { i, j }, ModelKind::Vk { .. }) => {
                let a = an(i, 0, &cr(j, 0, v)?)?;
                (a, v.scaled(&delta(i, j)).plus(&model.dgamma(j, i, 1, v)?))
            }
            (Relation::Vkgen { i, j, k, m }, ModelKind::Vk { .. }) => {
                let a = an(i, k, &cr(j, m, v)?)?;
                let mut s = C::zero();
                for z in model.letters() {
                    s.accumulate(&model.alpha_pow(z, m + k + 1));
                }
                (a, v.scaled(&delta(i, j).times(&s)).plus(&model.dgamma(j, i, m + k + 1, v)?))
            }
            (Relation::Deriv { j, i, k, l, m }, ModelKind::N { .. } | ModelKind::Vk { .. }) => {
                let a = model.dgamma(j, i, k, &cr(l, m, v)?)?;
                let b = cr(l, m, &model.dgamma(j, i, k, v)?)?;
                let extra = if i == l { cr(j, m + k, v)? } else { FockVector::zero() };
                (a, b.plus(&extra))
            }
            (r, _) => return domain(format!("relation {} does not belong to this model", r.id())),
        };
        per_sample.push(lhs == rhs);
    }
    Ok(CommutationReport { relation, per_sample })
}
