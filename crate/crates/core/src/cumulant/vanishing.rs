use num_traits::{One, Zero};
use serde::Serialize;

use super::{cumulants_from_moments, moment_table, MomentTable, Variable};
use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::Result;
use crate::fock::{FockModel, GaugeMatrix};
use crate::partitions::SetPartition;
use crate::words::{FlatWord, OpKind, OpToken, PowerFactor, PowerWord};

/// Outcome of one exhaustively checked vanishing statement.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingCheck {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl VanishingCheck {
    fn new(name: &str) -> Self {
        VanishingCheck { name: name.to_string(), checked: 0, violations: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exponent sequences with `Σ|k_j| ≤ max_len` and at most `max_n` entries.
fn sequences(max_len: usize, max_n: usize, allowed: &[i32]) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(budget: usize, max_n: usize, allowed: &[i32], cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_n {
            return;
        }
        for &k in allowed {
            let w = k.unsigned_abs() as usize;
            if w <= budget {
                cur.push(k);
                rec(budget - w, max_n, allowed, cur, out);
                cur.pop();
            }
        }
    }
    rec(max_len, max_n, allowed, &mut cur, &mut out);
    out
}

fn power_word(ks: &[i32]) -> PowerWord {
    PowerWord(ks.iter().map(|&k| PowerFactor { color: 1, exponent: k, weight: 0 }).collect())
}

fn power_vars<C: Scalar>(ks: &[i32]) -> Vec<Variable<C>> {
    ks.iter()
        .map(|&k| Variable::atom(power_word(&[k]).flatten().0))
        .collect()
}

fn describe(ks: &[i32]) -> String {
    let parts: Vec<String> = ks
        .iter()
        .map(|&k| match k {
            -1 => "L*".to_string(),
            k if k < 0 => format!("L*^{}", -k),
            k => format!("L^{k}"),
        })
        .collect();
    parts.join(",")
}

fn tables<C: Scalar>(
    model: &FockModel<C>,
    vars: &[Variable<C>],
) -> Result<(MomentTable<C>, MomentTable<C>)> {
    let top = SetPartition::coarsest(vars.len());
    let moments = moment_table(model, vars, &top)?;
    let mut cumulants = MomentTable::new();
    for s in top.refinements() {
        let k = cumulants_from_moments(&moments, &s)?;
        cumulants.insert(s, k);
    }
    Ok((moments, cumulants))
}

fn symbolic_models(n: usize, dim: usize) -> Result<Vec<(&'static str, FockModel<MultiPoly>)>> {
    Ok(vec![
        ("q", FockModel::q_symbolic(dim)?.with_truncation(n + 2)),
        ("N", FockModel::n_symbolic(dim)?.with_truncation(n + 2)),
    ])
}

/// `K_n(L^{k_1}, …, L^{k_n}) = 0` for reducible lattice words.
fn reducible(max_len: usize) -> Result<VanishingCheck> {
    let mut check = VanishingCheck::new("reducible lattice words have vanishing cumulants");
    for ks in sequences(max_len, max_len, &[-3, -2, -1, 1, 2, 3]) {
        let info = power_word(&ks).classify();
        if ks.len() < 2 || !info.is_lattice() || info.irreducible {
            continue;
        }
        for (name, model) in symbolic_models(max_len, ks.len())? {
            let vars = power_vars(&ks);
            let k = cumulants_from_moments(
                &moment_table(&model, &vars, &SetPartition::coarsest(ks.len()))?,
                &SetPartition::coarsest(ks.len()),
            )?;
            check.checked += 1;
            if !k.is_zero() {
                check.violations.push(format!("{name}-model K({}) = {k}", describe(&ks)));
            }
        }
    }
    Ok(check)
}

/// Exponents compatible with `π`: the last element of a block `B` carries
/// `|B| - 1`, every other element `*`.
fn compatible(ks: &[i32], pi: &SetPartition) -> bool {
    pi.blocks().iter().all(|b| {
        let last = *b.last().unwrap();
        b.iter().all(|&j| ks[j - 1] == if j == last { b.len() as i32 - 1 } else { -1 })
    })
}

/// `K_π(L^{k_1}, …)` vanishes off compatible shapes and equals `φ_π` on them.
fn lukasiewicz(max_len: usize, max_n: usize) -> Result<VanishingCheck> {
    let mut check = VanishingCheck::new("Lukasiewicz cumulants vanish unless compatible with the partition");
    let allowed: Vec<i32> = (-1..=max_len as i32).collect();
    for ks in sequences(max_len, max_n, &allowed) {
        for (name, model) in symbolic_models(max_len, ks.len())? {
            let vars = power_vars(&ks);
            let (moments, cumulants) = tables(&model, &vars)?;
            for (pi, k) in &cumulants {
                check.checked += 1;
                let expected = if compatible(&ks, pi) { moments[pi].clone() } else { MultiPoly::zero() };
                if *k != expected {
                    check
                        .violations
                        .push(format!("{name}-model K_{pi}({}) = {k}, expected {expected}", describe(&ks)));
                }
            }
        }
    }
    Ok(check)
}

/// Free cumulants: `K_n = 0` with a proper lattice subword, `K_n = ρ(word)`
/// otherwise, and then `ρ = 1` exactly for lattice words.
fn free(max_len: usize, max_n: usize) -> Result<VanishingCheck> {
    let mut check = VanishingCheck::new("free cumulants are 1 exactly without a nontrivial lattice subword");
    let allowed: Vec<i32> = (-(max_len as i32)..=max_len as i32).collect();
    for ks in sequences(max_len, max_n, &allowed) {
        let n = ks.len();
        let model: FockModel<Rational> = FockModel::free(n)?.with_truncation(max_len + 2);
        let vars = power_vars(&ks);
        let top = SetPartition::coarsest(n);
        let moments = moment_table(&model, &vars, &top)?;
        let k = cumulants_from_moments(&moments, &top)?;
        let pw = power_word(&ks);
        let expected = if pw.has_nontrivial_lattice_subword() {
            Rational::zero()
        } else if pw.classify().is_lattice() {
            Rational::one()
        } else {
            Rational::zero()
        };
        check.checked += 1;
        if k != expected || (expected.is_one() && moments[&top] != k) {
            check.violations.push(format!("K({}) = {k}, expected {expected}", describe(&ks)));
        }
    }
    Ok(check)
}

/// Gauge words: `K_π(X_1, …, X_n)` for generators `L*`, `L`, `γ(λ)` vanishes
/// unless every block reads annihilator, gauges, creator; then `K_π = φ_π`.
fn gauge(max_n: usize) -> Result<VanishingCheck> {
    let mut check = VanishingCheck::new("gauge-word cumulants vanish off annihilator-gauges-creator blocks");
    let lambda = Rational::new(2.into(), 1.into());
    for n in 1..=max_n {
        let model = FockModel::q_symbolic(n)?
            .with_truncation(n + 2)
            .with_gauge(0, GaugeMatrix::scalar(lambda.clone()))?;
        let letters = [OpToken::annihilate(1), OpToken::create(1), OpToken::gauge(0, 1)];
        let mut idx = vec![0usize; n];
        loop {
            let toks: Vec<OpToken> = idx.iter().map(|&i| letters[i].clone()).collect();
            let vars: Vec<Variable<MultiPoly>> =
                toks.iter().map(|t| Variable::atom(FlatWord(vec![t.clone()]))).collect();
            let (moments, cumulants) = tables(&model, &vars)?;
            for (pi, k) in &cumulants {
                let shaped = pi.blocks().iter().all(|b| {
                    let (first, last) = (b[0], *b.last().unwrap());
                    b.len() >= 2
                        && toks[first - 1].kind == OpKind::Annihilate
                        && toks[last - 1].kind == OpKind::Create
                        && b[1..b.len() - 1].iter().all(|&j| toks[j - 1].kind == OpKind::Gauge)
                });
                let expected = if shaped { moments[pi].clone() } else { MultiPoly::zero() };
                check.checked += 1;
                if *k != expected {
                    let w = FlatWord(toks.clone());
                    check.violations.push(format!("K_{pi}({w}) = {k}, expected {expected}"));
                }
            }
            let mut i = 0;
            while i < n && idx[i] == 2 {
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            idx[i] += 1;
        }
    }
    Ok(check)
}

/// Runs every vanishing statement exhaustively: power words with total
/// length `≤ max_len`, at most `max_n` factors for the partitioned checks.
pub fn vanishing_suite(max_len: usize, max_n: usize) -> Result<Vec<VanishingCheck>> {
    Ok(vec![
        reducible(max_len)?,
        lukasiewicz(max_len, max_n)?,
        free(max_len, max_n)?,
        gauge(max_n)?,
    ])
}
