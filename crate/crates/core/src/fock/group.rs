use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{FockModel, FockVector, Ket, ModelKind};
use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::error::{domain, Error, Result};
use crate::partitions::Permutation;
use crate::words::{FlatWord, OpToken, Word};

/// `[n]_q! = Π_{k=1}^n (1 + q + … + q^{k-1})`.
pub fn q_factorial<C: Scalar>(q: &C, n: usize) -> C {
    let mut acc = C::one();
    for k in 1..=n {
        let mut bracket = C::zero();
        for i in 0..k {
            bracket.accumulate(&q.pow(i as u32));
        }
        acc = acc.times(&bracket);
    }
    acc
}

/// `P_n^q` applied to a tensor word: `Σ_σ q^{inv σ} Ũ(σ)v` with
/// `(Ũ(σ)v)_i = v_{σ^{-1}(i)}`.
pub fn q_symmetrizer_apply(v: &[u8]) -> Result<FockVector<MultiPoly>> {
    let n = v.len();
    if n > 8 {
        return domain(format!("symmetrizer on {n} > 8 factors"));
    }
    let q = MultiPoly::var(&["q"], "q")?;
    let mut out = FockVector::zero();
    for sigma in Permutation::all(n) {
        let inv = sigma.inverse();
        let w: Vec<u8> = (0..n).map(|i| v[inv.apply(i)]).collect();
        out.add_term(Ket::Tensor(w), q.pow(sigma.inversions() as u32));
    }
    Ok(out)
}

type GroupElement = BTreeMap<Vec<usize>, MultiPoly>;

fn group_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut out: GroupElement = BTreeMap::new();
    for (s, x) in a {
        let s = Permutation::from_images(s.clone()).expect("stored permutation");
        for (t, y) in b {
            let t = Permutation::from_images(t.clone()).expect("stored permutation");
            let key = s.compose(&t).images().to_vec();
            let e = out.entry(key).or_insert_with(|| MultiPoly::zero_in(&["t"]));
            *e = e.plus(&x.times(y));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Checks `Σ_σ t^{n-cyc σ} σ = Π_{k=2}^n (e + t Σ_{j<k} (j k))` in the
/// group algebra of `S_n` over `Z[t]`.
pub fn symmetrizer_factorization_check(n: usize) -> Result<bool> {
    if n == 0 || n > 5 {
        return domain(format!("n = {n} outside 1..=5"));
    }
    let t = MultiPoly::var(&["t"], "t")?;
    let mut lhs: GroupElement = BTreeMap::new();
    for s in Permutation::all(n) {
        lhs.insert(s.images().to_vec(), t.pow((n - s.num_cycles()) as u32));
    }
    let mut rhs: GroupElement = BTreeMap::new();
    rhs.insert(Permutation::identity(n).images().to_vec(), MultiPoly::constant_in(&["t"], Rational::one()));
    for k in 1..n {
        let mut factor: GroupElement = BTreeMap::new();
        factor.insert(Permutation::identity(n).images().to_vec(), MultiPoly::constant_in(&["t"], Rational::one()));
        for j in 0..k {
            factor.insert(Permutation::transposition(n, j + 1, k + 1).images().to_vec(), t.clone());
        }
        rhs = group_mul(&rhs, &factor);
    }
    Ok(lhs == rhs)
}

/// `⟨U_n(σ)1_n, 1_n⟩` for the Vershik–Kerov representation with `β = 0`:
/// the `α`-measure of the words fixed by `σ`, checked against the product
/// `Π_m p_m(α)^{ρ_m(σ)}`.
pub fn vk_character(sigma: &Permutation, alpha: &[Rational]) -> Result<Rational> {
    let n = sigma.len();
    let m = alpha.len();
    if n > 8 || m == 0 || (m as f64).powi(n as i32) > 2.0e6 {
        return domain("fixed-point enumeration too large");
    }
    let mut fixed = Rational::zero();
    let mut x = vec![0usize; n];
    loop {
        if (0..n).all(|i| x[sigma.apply(i)] == x[i]) {
            fixed += x.iter().map(|&l| alpha[l].clone()).product::<Rational>();
        }
        let mut i = 0;
        while i < n && x[i] + 1 == m {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    let mut thoma = Rational::one();
    for (len, count) in sigma.cycle_type() {
        let p: Rational = alpha.iter().map(|a| a.pow(len as i32)).sum();
        thoma *= p.pow(count as i32);
    }
    if fixed != thoma {
        return Err(Error::Invariant(format!("fixed-point measure {fixed} differs from Thoma product {thoma}")));
    }
    Ok(fixed)
}

/// Closed form of `b_n = ρ((L*)^{n-1} L^{n-1})`: `[n-1]_q!` in the q-model,
/// `Π_{j=1}^{n-2}(1 + j t)` in the N-model, and the same product at
/// `t = Σα_z^2` for a uniform Vershik–Kerov alphabet. `None` for a
/// non-uniform alphabet.
pub fn deformed_factorial_closed_form<C: Scalar>(model: &FockModel<C>, n: usize) -> Option<C> {
    let product = |t: &C| {
        let mut acc = C::one();
        for j in 1..n.saturating_sub(1) {
            acc = acc.times(&C::one().plus(&C::from_int(j as i64).times(t)));
        }
        acc
    };
    match model.kind() {
        ModelKind::Q { q } => Some(q_factorial(q, n.saturating_sub(1))),
        ModelKind::N { t } => Some(product(t)),
        ModelKind::Vk { alpha } => {
            if alpha.iter().any(|a| *a != alpha[0]) {
                return None;
            }
            Some(product(&C::from_rational(&alpha[0])))
        }
    }
}

impl<C: Scalar> FockModel<C> {
    /// `b_n = ρ((L*)^{n-1} L^{n-1})` by simulation, in color 1.
    pub fn deformed_factorial(&self, n: usize) -> Result<C> {
        if n == 0 {
            return domain("b_n needs n >= 1");
        }
        let k = n - 1;
        let mut toks = vec![OpToken::annihilate(1); k];
        toks.extend(vec![OpToken::create(1); k]);
        self.vacuum_expectation(&Word::Flat(FlatWord::new(toks)?))
    }
}
