use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::{domain, Result};
use crate::partitions::PairPartition;
use crate::words::{FlatWord, OpKind};

/// Longest word accepted by [`pair_partition_expectation`].
pub const MAX_ORACLE_LEN: usize = 14;

/// Thoma parameters `(α, β)`. With `symbolic_n` the values `x_m` are
/// replaced by `t^{m-1}`, i.e. uniform `α` on `N = 1/t` letters.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ThomaParams {
    #[serde(default, with = "crate::algebra::rational_list")]
    pub alpha: Vec<Rational>,
    #[serde(default, with = "crate::algebra::rational_list")]
    pub beta: Vec<Rational>,
    #[serde(default)]
    pub symbolic_n: bool,
}

impl ThomaParams {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        let p = ThomaParams { alpha, beta, symbolic_n: false };
        p.validate()?;
        Ok(p)
    }

    /// `α_i = 1/n` for `i = 1..n`.
    pub fn uniform(n: usize) -> Self {
        let a = Rational::new(1.into(), (n as i64).into());
        ThomaParams { alpha: vec![a; n], beta: vec![], symbolic_n: false }
    }

    pub fn symbolic() -> Self {
        ThomaParams { alpha: vec![], beta: vec![], symbolic_n: true }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Rational::zero();
        if self.alpha.iter().chain(&self.beta).any(|a| *a < zero) {
            return domain("Thoma parameters must be nonnegative");
        }
        let total: Rational = self.alpha.iter().chain(&self.beta).sum();
        if total > Rational::one() {
            return domain("Thoma parameters must sum to at most 1");
        }
        Ok(())
    }

    /// `x_m = Σα_i^m + (-1)^{m+1} Σβ_i^m`, with `x_1 = 1`.
    pub fn x(&self, m: usize) -> MultiPoly {
        if self.symbolic_n {
            let t = MultiPoly::var(&["t"], "t").expect("t is a variable");
            return t.pow(m as u32 - 1);
        }
        if m <= 1 {
            return MultiPoly::one();
        }
        let p = |v: &[Rational]| -> Rational { v.iter().map(|a| a.pow(m as i32)).sum() };
        let mut x = p(&self.alpha);
        if m % 2 == 0 {
            x -= p(&self.beta);
        } else {
            x += p(&self.beta);
        }
        MultiPoly::constant(x)
    }
}

/// The function `t(π)` on pair partitions.
#[derive(Clone, Debug, PartialEq)]
pub enum TSpec {
    /// `q^{cr(π)}` with `q` symbolic.
    Q,
    /// `t^{|π| - c(π)}` with `t = 1/N` symbolic.
    N,
    /// `Π_cycles x_{w}`, `w` the total weight of the cycle.
    Thoma(ThomaParams),
}

/// `Σ_π t(π) Π Q(ε_k, ε_l)⟨ξ_k, ξ_l⟩` over pair partitions of the positions
/// of `w`. A pair is admissible when its left point is an annihilator and
/// its right point a creator of the same color.
pub fn pair_partition_expectation(w: &FlatWord, spec: &TSpec) -> Result<MultiPoly> {
    let toks = w.tokens();
    let n = toks.len();
    if n > MAX_ORACLE_LEN {
        return domain(format!("word length {n} exceeds {MAX_ORACLE_LEN}"));
    }
    if toks.iter().any(|t| t.kind == OpKind::Gauge) {
        return domain("gauge operators have no pair-partition expansion");
    }
    if !matches!(spec, TSpec::Thoma(_)) && toks.iter().any(|t| t.weight != 0) {
        return domain("weights need Thoma parameters");
    }
    if let TSpec::Thoma(p) = spec {
        p.validate()?;
    }
    let vars: &[&str] = match spec {
        TSpec::Q => &["q"],
        TSpec::N => &["t"],
        TSpec::Thoma(p) if p.symbolic_n => &["t"],
        TSpec::Thoma(_) => &[],
    };
    let var = vars.first().map(|v| MultiPoly::var(vars, v).expect("declared variable"));
    let mut acc = MultiPoly::zero_in(vars);
    if n % 2 == 1 {
        return Ok(acc);
    }
    let mut partner = vec![usize::MAX; n];
    let mut pairings = Vec::new();
    collect(toks, &mut partner, &mut Vec::new(), &mut pairings);
    for pairs in pairings {
        let pp = PairPartition::new(n, pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect())?;
        let term = match spec {
            TSpec::Q => var.as_ref().unwrap().pow(pp.crossings() as u32),
            TSpec::N => {
                let cs = pp.cycle_structure();
                var.as_ref().unwrap().pow((pp.len() - cs.cycles) as u32)
            }
            TSpec::Thoma(p) => {
                let cs = pp.cycle_structure();
                let mut prod = MultiPoly::constant_in(vars, Rational::one());
                for cycle in cs.sigma.cycles() {
                    let weight: usize = cycle
                        .iter()
                        .map(|&i| {
                            let (l, r) = pp.pairs()[i];
                            toks[l - 1].weight as usize + toks[r - 1].weight as usize + 1
                        })
                        .sum();
                    prod = prod.times(&p.x(weight));
                }
                prod
            }
        };
        acc = acc.plus(&term);
    }
    Ok(acc)
}

fn collect(
    toks: &[crate::words::OpToken],
    partner: &mut Vec<usize>,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(cur.clone());
        return;
    };
    if toks[i].kind != OpKind::Annihilate {
        return;
    }
    for j in i + 1..toks.len() {
        if partner[j] == usize::MAX && toks[j].kind == OpKind::Create && toks[j].color == toks[i].color {
            partner[i] = j;
            partner[j] = i;
            cur.push((i, j));
            collect(toks, partner, cur, out);
            cur.pop();
            partner[i] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
}
