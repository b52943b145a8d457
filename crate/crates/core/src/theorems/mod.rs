//! Executable identities. Each check computes both sides along disjoint
//! paths (operator simulation, pair-partition sums, graph polynomials) and
//! reports whether they agree.

mod suites;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{MultiPoly, Rational, Scalar};
use crate::digraph::{cycle_cover_poly, cycle_indicator, word_digraph, Method, WeightedDigraph};
use crate::error::{domain, Result};
use crate::fock::{pair_partition_expectation, FockModel, GaugeMatrix, TSpec, ThomaParams};
use crate::partitions::{kernel, rc, SetPartition};
use crate::words::{FlatWord, OpKind, PathClass, Word};

pub use suites::{
    anshelevich_suite, cycle_cover_suite, cycle_indicator_suite, fock_oracle_suite, q_factorial_suite,
    SuiteReport,
};

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremReport {
    fn new(theorem: &str, instance: String, lhs: String, rhs: String, equal: bool) -> Self {
        TheoremReport { theorem: theorem.to_string(), instance, lhs, rhs, equal, note: None }
    }
}

fn require_dyck(w: &FlatWord) -> Result<()> {
    if w.classify().class != PathClass::Dyck {
        return domain(format!("{w} is not a Dyck word"));
    }
    if w.tokens().iter().any(|t| t.kind == OpKind::Gauge) {
        return domain("Dyck words carry no gauge operators");
    }
    Ok(())
}

/// `C_c(Γ; x) = Σ c_k x^k` rewritten as `t^n C_c(Γ; 1/t) = Σ c_k t^{n-k}`.
pub fn reciprocal_in_t(cc: &MultiPoly, n: usize) -> Result<MultiPoly> {
    let coeffs = cc.univariate_coeffs()?;
    let mut rev = vec![Rational::zero(); n + 1];
    for (k, c) in coeffs.into_iter().enumerate() {
        if k > n {
            if !c.is_zero() {
                return domain("cycle cover polynomial exceeds the vertex count");
            }
            continue;
        }
        rev[n - k] = c;
    }
    Ok(MultiPoly::from_univariate("t", &rev))
}

/// `ρ(w)` under `t_N` against `t^n C_c(Γ_w; 1/t)`, the cover polynomial
/// computed by `method`. With `n_value = Some(N)` the N-model and the
/// Vershik–Kerov model with uniform `α` on `N` letters are simulated too and
/// compared with the identity at `t = 1/N`.
pub fn thm_cycle_cover(w: &FlatWord, method: Method, n_value: Option<usize>) -> Result<TheoremReport> {
    require_dyck(w)?;
    let n = w.len() / 2;
    let lhs = pair_partition_expectation(w, &TSpec::N)?;
    let g = word_digraph(w, false)?;
    let rhs = reciprocal_in_t(&cycle_cover_poly(&g, method)?, n)?;
    let mut equal = lhs == rhs;
    let mut note = None;
    if let Some(big_n) = n_value {
        if big_n == 0 {
            return domain("N must be positive");
        }
        let t = Rational::new(1.into(), (big_n as i64).into());
        let at = rhs.substitute("t", &t)?.constant_term();
        let dim = w.max_color(|_| 1).max(1);
        let word = Word::Flat(w.clone());
        let nm = FockModel::n(t.clone(), dim)?.with_truncation(n + 1);
        let vk: FockModel<Rational> = FockModel::vk(vec![t.clone(); big_n], dim)?.with_truncation(n + 1);
        let (a, b) = (nm.vacuum_expectation(&word)?, vk.vacuum_expectation(&word)?);
        equal &= a == at && b == at;
        note = Some(format!("N = {big_n}: N-model {a}, VK {b}, identity {at}"));
    }
    let mut rep = TheoremReport::new("cycle cover", w.to_string(), lhs.to_string(), rhs.to_string(), equal);
    rep.note = note;
    Ok(rep)
}

/// Vershik–Kerov simulation of a weighted Dyck word against the cycle
/// indicator of its weighted digraph at `x_1 = 1`, `x_k = p_k(α)`.
pub fn thm_cycle_indicator(w: &FlatWord, params: &ThomaParams) -> Result<TheoremReport> {
    require_dyck(w)?;
    if !params.beta.is_empty() || params.symbolic_n {
        return domain("the operator side needs β = ∅ and explicit α");
    }
    let n = w.len() / 2;
    let dim = w.max_color(|_| 1).max(1);
    let vk: FockModel<Rational> = FockModel::vk(params.alpha.clone(), dim)?.with_truncation(n + 1);
    let lhs = vk.vacuum_expectation(&Word::Flat(w.clone()))?;
    let g = word_digraph(w, true)?;
    let rhs = eval_indicator(&cycle_indicator(&g, Method::CutFuse)?, params)?;
    Ok(TheoremReport::new("cycle indicator", w.to_string(), lhs.to_string(), rhs.to_string(), lhs == rhs))
}

/// Evaluates a cycle indicator polynomial at `x_k = params.x(k)`.
pub fn eval_indicator(poly: &MultiPoly, params: &ThomaParams) -> Result<Rational> {
    let mut assignment = BTreeMap::new();
    for name in poly.vars() {
        let k: usize = name
            .strip_prefix("x_")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| crate::error::Error::Domain(format!("unexpected variable {name}")))?;
        assignment.insert(name.clone(), params.x(k).constant_term());
    }
    poly.eval(&assignment)
}

/// A word whose colors label blocks: each block must read annihilator,
/// gauges, creator. Returns `None` when the shape is violated.
fn q_blocks(w: &FlatWord) -> Option<SetPartition> {
    let colors: Vec<usize> = w.tokens().iter().map(|t| t.color).collect();
    let pi = kernel(&colors);
    let ok = pi.blocks().iter().all(|b| {
        let toks: Vec<_> = b.iter().map(|&i| &w.tokens()[i - 1]).collect();
        b.len() >= 2
            && toks[0].kind == OpKind::Annihilate
            && toks[b.len() - 1].kind == OpKind::Create
            && toks[1..b.len() - 1].iter().all(|t| t.kind == OpKind::Gauge)
    });
    ok.then_some(pi)
}

/// `ρ(X_1 ⋯ X_n) = q^{rc(π)} Π_B ρ(X_B)` in the symbolic q-model, `π` the
/// kernel of the colors. Gauge token `g<id>@c` belongs to the block of
/// color `c`; `gauges` supplies the matrices.
pub fn thm_q_factorization(w: &FlatWord, gauges: &BTreeMap<usize, GaugeMatrix>) -> Result<TheoremReport> {
    let dim = w.max_color(|id| gauges.get(&id).map(|g| g.size()).unwrap_or(1)).max(1);
    let mut model = FockModel::q_symbolic(dim)?.with_truncation(w.len() + 1);
    for (id, g) in gauges {
        model = model.with_gauge(*id, g.clone())?;
    }
    let Some(pi) = q_blocks(w) else {
        let mut rep = TheoremReport::new("q factorization", w.to_string(), String::new(), String::new(), true);
        rep.note = Some("skipped: blocks do not read annihilator, gauges, creator".into());
        return Ok(rep);
    };
    let lhs = model.vacuum_expectation(&Word::Flat(w.clone()))?;
    let q = MultiPoly::var(&["q"], "q")?;
    let mut rhs = q.pow(rc(&pi) as u32);
    for b in pi.blocks() {
        let sub = FlatWord(b.iter().map(|&i| w.tokens()[i - 1].clone()).collect());
        rhs = rhs.times(&model.vacuum_expectation(&Word::Flat(sub))?);
    }
    let mut rep = TheoremReport::new("q factorization", w.to_string(), lhs.to_string(), rhs.to_string(), lhs == rhs);
    rep.note = Some(format!("pi = {pi}, rc = {}", rc(&pi)));
    Ok(rep)
}

/// Words with isomorphic weighted digraphs have equal expectations under
/// `t_N` and under the Thoma weights `params`.
pub fn thm_digraph_state_dependence(w1: &FlatWord, w2: &FlatWord, params: &ThomaParams) -> Result<TheoremReport> {
    require_dyck(w1)?;
    require_dyck(w2)?;
    let (g1, g2): (WeightedDigraph, WeightedDigraph) = (word_digraph(w1, true)?, word_digraph(w2, true)?);
    let iso = g1.is_isomorphic(&g2)?;
    let e = |w: &FlatWord| -> Result<(MultiPoly, MultiPoly)> {
        let weighted = w.tokens().iter().any(|t| t.weight != 0);
        let n = if weighted { MultiPoly::zero() } else { pair_partition_expectation(w, &TSpec::N)? };
        Ok((n, pair_partition_expectation(w, &TSpec::Thoma(params.clone()))?))
    };
    let (a, b) = (e(w1)?, e(w2)?);
    let same = a == b;
    let mut rep = TheoremReport::new(
        "digraph state dependence",
        format!("{w1} vs {w2}"),
        format!("{} / {}", a.0, a.1),
        format!("{} / {}", b.0, b.1),
        !iso || same,
    );
    rep.note = Some(if iso { "isomorphic digraphs".into() } else { "digraphs not isomorphic".into() });
    Ok(rep)
}

/// `q`-model value of `b_n = ρ((L*)^{n-1}L^{n-1})` with the closed form it
/// is checked against.
pub fn q_factorial_instance(n: usize) -> Result<TheoremReport> {
    let model = FockModel::q_symbolic(1)?.with_truncation(n.max(1));
    let sim = model.deformed_factorial(n)?;
    let q = MultiPoly::var(&["q"], "q")?;
    let closed = crate::fock::q_factorial(&q, n.saturating_sub(1));
    let equal = sim == closed;
    Ok(TheoremReport::new("q factorial", format!("n = {n}"), sim.to_string(), closed.to_string(), equal))
}
