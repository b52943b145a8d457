//! Partitioned moments `φ_π` and cumulants `K_π` of operator families in a
//! [`FockModel`], realised on exchangeable copies.
//!
//! Copy `c` (0-based) of base color `b` is the basis vector
//! `b + c·base`, where `base` is the number of base colors used by the
//! variables. Gauge offsets move along with colors.

mod toeplitz;
mod vanishing;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::One;

use crate::algebra::{parse_rational, rational_to_string, Rational, Scalar};
use crate::error::{domain, Error, Result};
use crate::fock::{FockModel, FockVector};
use crate::partitions::{interval_inflation, mobius, SetPartition};
use crate::words::{parse_word, FlatWord, OpKind, Word};

pub use toeplitz::{toeplitz_cumulant, ToeplitzKind, ToeplitzReport};
pub use vanishing::{vanishing_suite, VanishingCheck};

/// Map from partitions to moments or cumulants.
pub type MomentTable<C> = BTreeMap<SetPartition, C>;

/// Linear combination of words with rational coefficients, parsed from
/// text such as `"a1+c1"`, `"2*c1 a1"`, `"-1/2*g1@1"`, `"1/2"` or `"c1^2"`.
/// A bare number is a multiple of the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct VariableTemplate {
    terms: Vec<(Rational, Word)>,
}

impl VariableTemplate {
    pub fn new(terms: Vec<(Rational, Word)>) -> Self {
        VariableTemplate { terms }
    }

    pub fn word(w: Word) -> Self {
        VariableTemplate { terms: vec![(Rational::one(), w)] }
    }

    pub fn terms(&self) -> &[(Rational, Word)] {
        &self.terms
    }

    pub fn realize<C: Scalar>(&self) -> Variable<C> {
        Variable {
            terms: self.terms.iter().map(|(c, w)| (C::from_rational(c), w.to_flat())).collect(),
        }
    }
}

impl FromStr for VariableTemplate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for part in text.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse { pos: 0, msg: format!("empty term in {text:?}") });
            }
            if let Some((c, w)) = part.split_once('*') {
                terms.push((parse_rational(c.trim())?, parse_word(w.trim())?));
            } else if let Ok(c) = parse_rational(part) {
                terms.push((c, Word::Flat(FlatWord(vec![]))));
            } else {
                terms.push((Rational::one(), parse_word(part)?));
            }
        }
        Ok(VariableTemplate { terms })
    }
}

impl fmt::Display for VariableTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                let flat = w.to_flat();
                if flat.is_empty() {
                    rational_to_string(c)
                } else {
                    if c.is_one() {
                        flat.to_string()
                    } else {
                        format!("{}*{}", rational_to_string(c), flat)
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A variable realised over the scalar type `C`: `Σ c_i w_i` in base colors.
#[derive(Clone, Debug, PartialEq)]
pub struct Variable<C> {
    pub terms: Vec<(C, FlatWord)>,
}

impl<C: Scalar> Variable<C> {
    pub fn atom(w: FlatWord) -> Self {
        Variable { terms: vec![(C::one(), w)] }
    }

    /// The product `X_1 X_2 ⋯ X_k`, expanded.
    pub fn product(factors: &[Variable<C>]) -> Self {
        let mut terms = vec![(C::one(), FlatWord(vec![]))];
        for f in factors {
            let mut next = Vec::with_capacity(terms.len() * f.terms.len());
            for (c, w) in &terms {
                for (d, v) in &f.terms {
                    next.push((c.times(d), w.concat(v)));
                }
            }
            terms = next;
        }
        Variable { terms }
    }

    fn max_color(&self, model: &FockModel<C>) -> usize {
        let dim = |id: usize| model.gauge(id).map(|g| g.size()).unwrap_or(1);
        self.terms.iter().map(|(_, w)| w.max_color(dim)).max().unwrap_or(0)
    }

    fn in_copy(&self, copy: usize, base: usize) -> Vec<(C, FlatWord)> {
        self.terms.iter().map(|(c, w)| (c.clone(), w.shift_colors(copy * base))).collect()
    }
}

/// Number of base colors used by `vars`, at least 1.
pub fn base_colors<C: Scalar>(model: &FockModel<C>, vars: &[Variable<C>]) -> usize {
    vars.iter().map(|v| v.max_color(model)).max().unwrap_or(0).max(1)
}

fn annihilators(w: &FlatWord) -> usize {
    w.tokens().iter().filter(|t| t.kind == OpKind::Annihilate).count()
}

/// `⟨Ω, F_1 F_2 ⋯ F_n Ω⟩` for linear combinations `F_j`. Kets holding more
/// particles than the remaining factors can remove are dropped, which does
/// not change the vacuum coefficient.
pub fn chain_expectation<C: Scalar>(model: &FockModel<C>, factors: &[Vec<(C, FlatWord)>]) -> Result<C> {
    let caps: Vec<usize> = factors
        .iter()
        .map(|f| f.iter().map(|(_, w)| annihilators(w)).max().unwrap_or(0))
        .collect();
    let mut remaining: usize = caps.iter().sum();
    let mut v = model.vacuum();
    for (f, cap) in factors.iter().zip(&caps).rev() {
        remaining -= cap;
        let mut next = FockVector::zero();
        for (c, w) in f {
            if c.is_zero() {
                continue;
            }
            let part = model.apply_word(w, &v)?;
            for (k, x) in part.terms() {
                if k.particles() <= remaining {
                    next.add_term(k.clone(), x.times(c));
                }
            }
        }
        v = next;
        if v.is_zero() {
            return Ok(C::zero());
        }
    }
    Ok(v.vacuum_coeff())
}

fn check_room<C: Scalar>(model: &FockModel<C>, base: usize, copies: usize) -> Result<()> {
    if base * copies > model.dim_h() {
        return domain(format!(
            "{copies} copies of {base} base colors need dim H >= {}, model has {}",
            base * copies,
            model.dim_h()
        ));
    }
    Ok(())
}

/// `φ_π(X_1, …, X_n)`: variable `j` is realised in the copy numbered by its
/// block.
pub fn phi_pi<C: Scalar>(model: &FockModel<C>, vars: &[Variable<C>], pi: &SetPartition) -> Result<C> {
    if pi.n() != vars.len() {
        return domain(format!("partition of {} for {} variables", pi.n(), vars.len()));
    }
    let base = base_colors(model, vars);
    check_room(model, base, pi.num_blocks())?;
    let labels = pi.labels();
    let factors: Vec<_> = vars.iter().zip(&labels).map(|(v, &l)| v.in_copy(l, base)).collect();
    chain_expectation(model, &factors)
}

/// `φ_σ` for every `σ ≤ top`.
pub fn moment_table<C: Scalar>(
    model: &FockModel<C>,
    vars: &[Variable<C>],
    top: &SetPartition,
) -> Result<MomentTable<C>> {
    top.refinements()
        .into_iter()
        .map(|s| phi_pi(model, vars, &s).map(|v| (s, v)))
        .collect()
}

/// `K_π = Σ_{σ≤π} φ_σ μ(σ, π)` from a table containing every `σ ≤ π`.
pub fn cumulants_from_moments<C: Scalar>(table: &MomentTable<C>, pi: &SetPartition) -> Result<C> {
    let mut acc = C::zero();
    for s in pi.refinements() {
        let phi = table
            .get(&s)
            .ok_or_else(|| Error::Domain(format!("moment table lacks {s}")))?;
        acc.accumulate(&phi.times(&C::from_rational(&mobius(&s, pi)?)));
    }
    Ok(acc)
}

/// `φ_π = Σ_{σ≤π} K_σ` from a table containing every `σ ≤ π`.
pub fn moments_from_cumulants<C: Scalar>(table: &MomentTable<C>, pi: &SetPartition) -> Result<C> {
    let mut acc = C::zero();
    for s in pi.refinements() {
        let k = table
            .get(&s)
            .ok_or_else(|| Error::Domain(format!("cumulant table lacks {s}")))?;
        acc.accumulate(k);
    }
    Ok(acc)
}

/// `K_π(X_1, …, X_n)` by Möbius inversion.
pub fn cumulant<C: Scalar>(model: &FockModel<C>, vars: &[Variable<C>], pi: &SetPartition) -> Result<C> {
    cumulants_from_moments(&moment_table(model, vars, pi)?, pi)
}

/// `K_σ` for every `σ ≤ top`.
pub fn cumulant_table<C: Scalar>(
    model: &FockModel<C>,
    vars: &[Variable<C>],
    top: &SetPartition,
) -> Result<MomentTable<C>> {
    let moments = moment_table(model, vars, top)?;
    top.refinements()
        .into_iter()
        .map(|s| cumulants_from_moments(&moments, &s).map(|k| (s, k)))
        .collect()
}

/// Cumulant by Good's formula: for `i` in the block `{k_1 < … < k_b}` use
/// `Σ_a ω_b^a X_i^{(k_a)}` with `ω_b = exp(2πi/b)`, then divide the moment
/// by `Π|B|`.
pub fn good_cumulant(
    model: &FockModel<Complex64>,
    vars: &[Variable<Complex64>],
    pi: &SetPartition,
) -> Result<Complex64> {
    let n = vars.len();
    if pi.n() != n {
        return domain(format!("partition of {} for {} variables", pi.n(), n));
    }
    let base = base_colors(model, vars);
    check_room(model, base, n)?;
    let mut factors = vec![Vec::new(); n];
    let mut norm = 1.0;
    for block in pi.blocks() {
        let b = block.len();
        norm *= b as f64;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / b as f64);
        for &i in block {
            for (a, &k) in block.iter().enumerate() {
                let w = omega.powu(a as u32 + 1);
                for (c, word) in vars[i - 1].in_copy(k - 1, base) {
                    factors[i - 1].push((c * w, word));
                }
            }
        }
    }
    Ok(chain_expectation(model, &factors)? / norm)
}

/// Right-hand side of the product formula: `Σ K_σ(atoms)` over `σ` with
/// `σ ∨ 0̃ = π̃`, where `0̃` groups the atoms of each group into an interval
/// and `π̃` inflates `π` along the groups.
pub fn product_formula_rhs<C: Scalar>(
    model: &FockModel<C>,
    groups: &[Vec<Variable<C>>],
    pi: &SetPartition,
) -> Result<C> {
    if pi.n() != groups.len() {
        return domain(format!("partition of {} for {} groups", pi.n(), groups.len()));
    }
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    let atoms: Vec<Variable<C>> = groups.iter().flatten().cloned().collect();
    let zero_tilde = interval_inflation(&SetPartition::finest(groups.len()), &sizes)?;
    let pi_tilde = interval_inflation(pi, &sizes)?;
    let table = cumulant_table(model, &atoms, &pi_tilde)?;
    let mut acc = C::zero();
    for (s, k) in &table {
        if s.join(&zero_tilde)? == pi_tilde {
            acc.accumulate(k);
        }
    }
    Ok(acc)
}

/// Left-hand side of the product formula: `K_π` of the group products.
pub fn product_formula_lhs<C: Scalar>(
    model: &FockModel<C>,
    groups: &[Vec<Variable<C>>],
    pi: &SetPartition,
) -> Result<C> {
    let products: Vec<Variable<C>> = groups.iter().map(|g| Variable::product(g)).collect();
    cumulant(model, &products, pi)
}

#[cfg(test)]
mod tests;
