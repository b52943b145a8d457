//! Truncated simulators for deformed Fock spaces: the q-Fock space, the
//! N-deformed space attached to the character `t_N`, and the Vershik–Kerov
//! spaces attached to Thoma parameters. Vacuum expectations computed here
//! are compared against the pair-partition formula in [`oracle`].

mod commutation;
mod group;
mod oracle;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, MultiPoly, Rational, Scalar};
use crate::error::{domain, Error, Result};
use crate::words::{FlatWord, OpKind, OpToken, Word};

pub use commutation::{commutation_check, CommutationReport, Relation};
pub use group::{
    deformed_factorial_closed_form, q_factorial, q_symmetrizer_apply, symmetrizer_factorization_check,
    vk_character,
};
pub use oracle::{pair_partition_expectation, TSpec, ThomaParams};

/// Default particle-number cap.
pub const DEFAULT_TRUNCATION: usize = 10;

/// Basis vector of a truncated Fock space.
///
/// `Tensor` is a tensor word `e_{c_1} ⊗ … ⊗ e_{c_n}` (colors 1-based).
/// `Vk` represents the symmetric tensor `b_{x,y} ⊗_s e_{c_1} ⊗ … ⊗ e_{c_n}`,
/// which only depends on `y` and the multiset of pairs `(x_i, c_i)`; `pairs`
/// lists that multiset sorted. Its coefficient in a [`FockVector`] is the
/// coefficient of each plain tensor `b_{σx,y} ⊗ e_{σc}` in the expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ket {
    Tensor(Vec<u8>),
    Vk { pairs: Vec<(u8, u8)>, y: Vec<u8> },
}

impl Ket {
    pub fn particles(&self) -> usize {
        match self {
            Ket::Tensor(v) => v.len(),
            Ket::Vk { y, .. } => y.len(),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.particles() == 0
    }
}

/// Finite linear combination of basis kets.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<C> {
    terms: BTreeMap<Ket, C>,
}

impl<C: Scalar> FockVector<C> {
    pub fn zero() -> Self {
        FockVector { terms: BTreeMap::new() }
    }

    pub fn from_ket(ket: Ket) -> Self {
        Self::from_terms([(ket, C::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Ket, C)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, ket: Ket, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ket) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().accumulate(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Ket, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ket: &Ket) -> C {
        self.terms.get(ket).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the vacuum, which is the vacuum expectation when the
    /// vector is `XΩ`.
    pub fn vacuum_coeff(&self) -> C {
        self.terms
            .iter()
            .find(|(k, _)| k.is_vacuum())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), c.times(s))))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&C::one().negated()))
    }

    pub fn max_particles(&self) -> usize {
        self.terms.keys().map(Ket::particles).max().unwrap_or(0)
    }
}

/// Square matrix acting on the basis vectors `e_o, …, e_{o+s-1}` of `H`,
/// where the offset `o` is supplied by the gauge token.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct GaugeMatrix {
    rows: Vec<Vec<Rational>>,
}

impl GaugeMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let s = rows.len();
        if s == 0 || rows.iter().any(|r| r.len() != s) {
            return domain("gauge matrix must be square and nonempty");
        }
        Ok(GaugeMatrix { rows })
    }

    /// The 1×1 matrix `(λ)`.
    pub fn scalar(lambda: Rational) -> Self {
        GaugeMatrix { rows: vec![vec![lambda]] }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }
}

impl TryFrom<Vec<Vec<String>>> for GaugeMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<String>>) -> Result<Self> {
        let rows: Result<Vec<Vec<Rational>>> =
            rows.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect()).collect();
        GaugeMatrix::new(rows?)
    }
}

impl From<GaugeMatrix> for Vec<Vec<String>> {
    fn from(g: GaugeMatrix) -> Self {
        g.rows
            .iter()
            .map(|r| r.iter().map(crate::algebra::rational_to_string).collect())
            .collect()
    }
}

/// Which deformation a [`FockModel`] simulates.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind<C> {
    /// q-Fock space; `q = 0` is the free Fock space.
    Q { q: C },
    /// The space with deformed inner product `⟨ξ, P_N η⟩`, with `t = 1/N`.
    N { t: C },
    /// Vershik–Kerov space for letter probabilities `alpha` (summing to 1).
    Vk { alpha: Vec<Rational> },
}

/// A truncated Fock space model over the scalar type `C`.
#[derive(Clone, Debug)]
pub struct FockModel<C> {
    kind: ModelKind<C>,
    dim_h: usize,
    truncation: usize,
    gauges: BTreeMap<usize, GaugeMatrix>,
    alpha_c: Vec<C>,
}

impl<C: Scalar> FockModel<C> {
    fn build(kind: ModelKind<C>, dim_h: usize) -> Result<Self> {
        if dim_h == 0 || dim_h > u8::MAX as usize {
            return domain(format!("dim H = {dim_h} outside 1..=255"));
        }
        let alpha_c = match &kind {
            ModelKind::Vk { alpha } => alpha.iter().map(C::from_rational).collect(),
            _ => Vec::new(),
        };
        Ok(FockModel { kind, dim_h, truncation: DEFAULT_TRUNCATION, gauges: BTreeMap::new(), alpha_c })
    }

    pub fn q(q: C, dim_h: usize) -> Result<Self> {
        Self::build(ModelKind::Q { q }, dim_h)
    }

    pub fn free(dim_h: usize) -> Result<Self> {
        Self::q(C::zero(), dim_h)
    }

    /// The N-deformed model with `t = 1/N` (or a symbolic `t`).
    pub fn n(t: C, dim_h: usize) -> Result<Self> {
        Self::build(ModelKind::N { t }, dim_h)
    }

    /// Vershik–Kerov model; `alpha` must be nonnegative and sum to 1.
    pub fn vk(alpha: Vec<Rational>, dim_h: usize) -> Result<Self> {
        if alpha.is_empty() || alpha.len() > u8::MAX as usize {
            return domain("alphabet size must be in 1..=255");
        }
        if alpha.iter().any(|a| a < &Rational::zero()) {
            return domain("letter probabilities must be nonnegative");
        }
        if alpha.iter().sum::<Rational>() != Rational::one() {
            return domain("letter probabilities must sum to 1");
        }
        Self::build(ModelKind::Vk { alpha }, dim_h)
    }

    pub fn with_truncation(mut self, cap: usize) -> Self {
        self.truncation = cap;
        self
    }

    /// Registers gauge matrix `id`; only the q-model has gauge operators.
    pub fn with_gauge(mut self, id: usize, t: GaugeMatrix) -> Result<Self> {
        if !matches!(self.kind, ModelKind::Q { .. }) {
            return domain("gauge operators exist only in the q-model");
        }
        self.gauges.insert(id, t);
        Ok(self)
    }

    pub fn kind(&self) -> &ModelKind<C> {
        &self.kind
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn gauge(&self, id: usize) -> Option<&GaugeMatrix> {
        self.gauges.get(&id)
    }

    pub fn vacuum(&self) -> FockVector<C> {
        FockVector::from_ket(self.vacuum_ket())
    }

    pub fn vacuum_ket(&self) -> Ket {
        match self.kind {
            ModelKind::Vk { .. } => Ket::Vk { pairs: vec![], y: vec![] },
            _ => Ket::Tensor(vec![]),
        }
    }

    fn check_color(&self, c: usize) -> Result<u8> {
        if c == 0 || c > self.dim_h {
            return domain(format!("color {c} outside 1..={}", self.dim_h));
        }
        Ok(c as u8)
    }

    fn check_room(&self, v: &FockVector<C>) -> Result<()> {
        let needed = v.max_particles() + 1;
        if needed > self.truncation {
            return Err(Error::Truncation { needed, cap: self.truncation });
        }
        Ok(())
    }

    fn power(base: &C, k: usize) -> C {
        base.pow(k as u32)
    }

    fn alpha_pow(&self, letter: u8, k: u32) -> C {
        self.alpha_c[letter as usize - 1].pow(k)
    }

    fn letters(&self) -> std::ops::RangeInclusive<u8> {
        1..=self.alpha_c.len() as u8
    }

    /// Applies one operator.
    pub fn apply_token(&self, tok: &OpToken, v: &FockVector<C>) -> Result<FockVector<C>> {
        if tok.kind == OpKind::Gauge {
            return self.apply_gauge(tok, v);
        }
        let c = self.check_color(tok.color)?;
        if tok.weight != 0 && !matches!(self.kind, ModelKind::Vk { .. }) {
            return domain("weighted operators exist only in the Vershik–Kerov model");
        }
        let mut out = FockVector::zero();
        match (&self.kind, tok.kind) {
            (ModelKind::Q { .. } | ModelKind::N { .. }, OpKind::Create) => {
                self.check_room(v)?;
                for (ket, x) in v.terms() {
                    let Ket::Tensor(w) = ket else { return domain("ket from another model") };
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(c);
                    nw.extend_from_slice(w);
                    out.add_term(Ket::Tensor(nw), x.clone());
                }
            }
            (ModelKind::Q { q }, OpKind::Annihilate) => {
                for (ket, x) in v.terms() {
                    let Ket::Tensor(w) = ket else { return domain("ket from another model") };
                    for (k, &e) in w.iter().enumerate() {
                        if e == c {
                            let mut nw = w.clone();
                            nw.remove(k);
                            out.add_term(Ket::Tensor(nw), Self::power(q, k).times(x));
                        }
                    }
                }
            }
            (ModelKind::N { t }, OpKind::Annihilate) => {
                for (ket, x) in v.terms() {
                    let Ket::Tensor(w) = ket else { return domain("ket from another model") };
                    if w.is_empty() {
                        continue;
                    }
                    if w[0] == c {
                        out.add_term(Ket::Tensor(w[1..].to_vec()), x.clone());
                    }
                    let tx = t.times(x);
                    for k in 1..w.len() {
                        if w[k] == c {
                            let mut nw = w[1..].to_vec();
                            nw[k - 1] = w[0];
                            out.add_term(Ket::Tensor(nw), tx.clone());
                        }
                    }
                }
            }
            (ModelKind::Vk { .. }, OpKind::Create) => {
                self.check_room(v)?;
                for (ket, x) in v.terms() {
                    let Ket::Vk { pairs, y } = ket else { return domain("ket from another model") };
                    for z in self.letters() {
                        let pos = pairs.partition_point(|p| *p < (z, c));
                        let mut np = Vec::with_capacity(pairs.len() + 1);
                        np.extend_from_slice(&pairs[..pos]);
                        np.push((z, c));
                        np.extend_from_slice(&pairs[pos..]);
                        let mult = np.iter().filter(|p| **p == (z, c)).count() as i64;
                        let mut ny = y.clone();
                        ny.push(z);
                        let coeff = C::from_int(mult).times(&self.alpha_pow(z, tok.weight)).times(x);
                        out.add_term(Ket::Vk { pairs: np, y: ny }, coeff);
                    }
                }
            }
            (ModelKind::Vk { .. }, OpKind::Annihilate) => {
                for (ket, x) in v.terms() {
                    let Ket::Vk { pairs, y } = ket else { return domain("ket from another model") };
                    let Some(&a) = y.last() else { continue };
                    if let Ok(pos) = pairs.binary_search(&(a, c)) {
                        let mut np = pairs.clone();
                        np.remove(pos);
                        let ny = y[..y.len() - 1].to_vec();
                        out.add_term(Ket::Vk { pairs: np, y: ny }, self.alpha_pow(a, tok.weight + 1).times(x));
                    }
                }
            }
            (_, OpKind::Gauge) => unreachable!(),
        }
        Ok(out)
    }

    fn apply_gauge(&self, tok: &OpToken, v: &FockVector<C>) -> Result<FockVector<C>> {
        let ModelKind::Q { q } = &self.kind else {
            return domain("gauge operators exist only in the q-model");
        };
        let id = tok.gauge.unwrap_or(0);
        let t = self
            .gauges
            .get(&id)
            .ok_or_else(|| Error::Domain(format!("gauge matrix {id} is not defined")))?;
        let offset = tok.color;
        self.check_color(offset)?;
        self.check_color(offset + t.size() - 1)?;
        let mut out = FockVector::zero();
        for (ket, x) in v.terms() {
            let Ket::Tensor(w) = ket else { return domain("ket from another model") };
            for (k, &e) in w.iter().enumerate() {
                let e = e as usize;
                if e < offset || e >= offset + t.size() {
                    continue;
                }
                let col = e - offset;
                let qx = Self::power(q, k).times(x);
                for row in 0..t.size() {
                    let entry = t.entry(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    let mut nw = Vec::with_capacity(w.len());
                    nw.push((offset + row) as u8);
                    nw.extend(w.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &b)| b));
                    out.add_term(Ket::Tensor(nw), C::from_rational(entry).times(&qx));
                }
            }
        }
        Ok(out)
    }

    /// Applies a word in operator order: the rightmost token acts first.
    pub fn apply_word(&self, w: &FlatWord, v: &FockVector<C>) -> Result<FockVector<C>> {
        let mut cur = v.clone();
        for tok in w.tokens().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_token(tok, &cur)?;
        }
        Ok(cur)
    }

    /// `ρ(w) = ⟨Ω, wΩ⟩`.
    pub fn vacuum_expectation(&self, w: &Word) -> Result<C> {
        let flat = w.to_flat();
        Ok(self.apply_word(&flat, &self.vacuum())?.vacuum_coeff())
    }

    /// Weighted differential second quantisation `dΓ^{(k)}(|e_j⟩⟨e_i|)`; in
    /// the N-model only `k = 0` exists and the operator is unweighted.
    pub fn dgamma(&self, j: usize, i: usize, k: u32, v: &FockVector<C>) -> Result<FockVector<C>> {
        let (cj, ci) = (self.check_color(j)?, self.check_color(i)?);
        let mut out = FockVector::zero();
        match &self.kind {
            ModelKind::Q { .. } => return domain("the q-model uses gauge operators instead of dΓ"),
            ModelKind::N { .. } => {
                if k != 0 {
                    return domain("weighted dΓ exists only in the Vershik–Kerov model");
                }
                for (ket, x) in v.terms() {
                    let Ket::Tensor(w) = ket else { return domain("ket from another model") };
                    for s in 0..w.len() {
                        if w[s] == ci {
                            let mut nw = w.clone();
                            nw[s] = cj;
                            out.add_term(Ket::Tensor(nw), x.clone());
                        }
                    }
                }
            }
            ModelKind::Vk { .. } => {
                for (ket, x) in v.terms() {
                    let Ket::Vk { pairs, y } = ket else { return domain("ket from another model") };
                    let mut distinct = pairs.clone();
                    distinct.dedup();
                    for &(a, col) in &distinct {
                        if col != ci {
                            continue;
                        }
                        let mut np = pairs.clone();
                        let pos = np.binary_search(&(a, ci)).unwrap();
                        np.remove(pos);
                        let ins = np.partition_point(|p| *p < (a, cj));
                        np.insert(ins, (a, cj));
                        let mult = np.iter().filter(|p| **p == (a, cj)).count() as i64;
                        let coeff = C::from_int(mult).times(&self.alpha_pow(a, k)).times(x);
                        out.add_term(Ket::Vk { pairs: np, y: y.clone() }, coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The model's bilinear form; kets with different particle numbers are
    /// orthogonal.
    pub fn inner_product(&self, v: &FockVector<C>, w: &FockVector<C>) -> Result<C> {
        let mut acc = C::zero();
        for (a, x) in v.terms() {
            for (b, y) in w.terms() {
                if a.particles() != b.particles() {
                    continue;
                }
                let g = self.ket_product(a, b)?;
                if !g.is_zero() {
                    acc.accumulate(&g.times(x).times(y));
                }
            }
        }
        Ok(acc)
    }

    /// `⟨a, b⟩` on basis kets.
    pub fn ket_product(&self, a: &Ket, b: &Ket) -> Result<C> {
        match (&self.kind, a, b) {
            (ModelKind::Q { q }, Ket::Tensor(x), Ket::Tensor(y)) => {
                Ok(permutation_sum(x, y, |inv, _| Self::power(q, inv)))
            }
            (ModelKind::N { t }, Ket::Tensor(x), Ket::Tensor(y)) => {
                let n = x.len();
                Ok(permutation_sum(x, y, |_, cycles| Self::power(t, n - cycles)))
            }
            (ModelKind::Vk { .. }, Ket::Vk { pairs: p1, y: y1 }, Ket::Vk { pairs: p2, y: y2 }) => {
                if p1 != p2 || y1 != y2 {
                    return Ok(C::zero());
                }
                let mut acc = C::one();
                for &(l, _) in p1 {
                    acc = acc.times(&self.alpha_c[l as usize - 1]);
                }
                let mut denom = Rational::one();
                let mut run = 0i64;
                for (i, p) in p1.iter().enumerate() {
                    run = if i > 0 && p1[i - 1] == *p { run + 1 } else { 1 };
                    denom *= Rational::from_integer(run.into());
                }
                Ok(acc.times(&C::from_rational(&(Rational::one() / denom))))
            }
            _ => domain("kets from another model"),
        }
    }
}

impl FockModel<MultiPoly> {
    /// q-model with `q` an indeterminate.
    pub fn q_symbolic(dim_h: usize) -> Result<Self> {
        Self::q(MultiPoly::var(&["q"], "q")?, dim_h)
    }

    /// N-model with `t = 1/N` an indeterminate.
    pub fn n_symbolic(dim_h: usize) -> Result<Self> {
        Self::n(MultiPoly::var(&["t"], "t")?, dim_h)
    }
}

/// All tensor words of length `n` over colors `1..=d`, lexicographic.
pub fn tensor_basis(n: usize, d: usize) -> Vec<Ket> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (1..=d as u8).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Ket::Tensor).collect()
}

impl<C: Scalar> FockModel<C> {
    /// Matrix of `⟨a, b⟩` over the given kets.
    pub fn gram_matrix(&self, kets: &[Ket]) -> Result<Vec<Vec<C>>> {
        kets.iter()
            .map(|a| kets.iter().map(|b| self.ket_product(a, b)).collect())
            .collect()
    }
}

/// `Σ_σ f(inv σ, cyc σ)` over permutations with `x_i = y_{σ^{-1}(i)}`.
fn permutation_sum<C: Scalar>(x: &[u8], y: &[u8], f: impl Fn(usize, usize) -> C) -> C {
    let n = x.len();
    let mut acc = C::zero();
    let mut pre = vec![0usize; n];
    let mut used = vec![false; n];
    fn rec<C: Scalar>(
        i: usize,
        x: &[u8],
        y: &[u8],
        pre: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &dyn Fn(usize, usize) -> C,
        acc: &mut C,
    ) {
        let n = x.len();
        if i == n {
            // pre[i] = σ^{-1}(i); inversions and cycles are invariant under inversion
            let mut inv = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if pre[a] > pre[b] {
                        inv += 1;
                    }
                }
            }
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for s in 0..n {
                if !seen[s] {
                    cycles += 1;
                    let mut v = s;
                    while !seen[v] {
                        seen[v] = true;
                        v = pre[v];
                    }
                }
            }
            acc.accumulate(&f(inv, cycles));
            return;
        }
        for j in 0..n {
            if !used[j] && y[j] == x[i] {
                used[j] = true;
                pre[i] = j;
                rec(i + 1, x, y, pre, used, f, acc);
                used[j] = false;
            }
        }
    }
    rec(0, x, y, &mut pre, &mut used, &f, &mut acc);
    acc
}

#[cfg(test)]
mod tests;
