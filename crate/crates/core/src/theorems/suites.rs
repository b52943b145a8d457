use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{eval_indicator, q_factorial_instance, thm_cycle_cover, thm_q_factorization, TheoremReport};
use crate::algebra::{MultiPoly, Rational};
use crate::digraph::{cycle_indicator, word_digraph, Method, WeightedDigraph};
use crate::error::Result;
use crate::fock::{pair_partition_expectation, FockModel, FockVector, GaugeMatrix, TSpec, ThomaParams};
use crate::partitions::enumerate_partitions;
use crate::words::{lattice_words, multidimensional_dyck_words, FlatWord, OpToken, Word};

/// Summary of a family of checked instances.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<TheoremReport>,
    /// Description of every checked instance, in order.
    pub instances: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    fn record(&mut self, rep: TheoremReport) {
        self.checked += 1;
        self.instances.push(rep.instance.clone());
        if !rep.equal {
            self.failures.push(rep);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// `ρ((L*)^{n-1} L^{n-1}) = [n-1]_q!` for `n = 2..=max_n`.
pub fn q_factorial_suite(max_n: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("q factorial");
    for n in 2..=max_n {
        rep.record(q_factorial_instance(n)?);
    }
    Ok(rep)
}

/// q- and N-model simulations against the pair-partition sums, for every
/// lattice word of length `≤ max_len` in `colors` colors.
pub fn fock_oracle_suite(max_len: usize, colors: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("Fock state oracle");
    let qm = FockModel::q_symbolic(colors)?.with_truncation(max_len / 2 + 1);
    let nm = FockModel::n_symbolic(colors)?.with_truncation(max_len / 2 + 1);
    for len in (2..=max_len).step_by(2) {
        for w in lattice_words(len, colors) {
            let word = Word::Flat(w.clone());
            for (model, spec) in [(&qm, TSpec::Q), (&nm, TSpec::N)] {
                let sim = model.vacuum_expectation(&word)?;
                let oracle = pair_partition_expectation(&w, &spec)?;
                let name = if spec == TSpec::Q { "q oracle" } else { "N oracle" };
                let equal = sim == oracle;
                rep.record(TheoremReport {
                    theorem: name.into(),
                    instance: w.to_string(),
                    lhs: sim.to_string(),
                    rhs: oracle.to_string(),
                    equal,
                    note: None,
                });
            }
        }
    }
    Ok(rep)
}

/// Cycle cover identity for all Dyck words of length `≤ max_len` in
/// `colors` colors, with the cover polynomial by cut-and-fuse and by brute
/// force.
pub fn cycle_cover_suite(max_len: usize, colors: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cycle cover");
    for pairs in 1..=max_len / 2 {
        for w in multidimensional_dyck_words(pairs, colors) {
            let a = thm_cycle_cover(&w, Method::CutFuse, None)?;
            let b = thm_cycle_cover(&w, Method::BruteForce, None)?;
            let mut r = a.clone();
            r.equal = a.equal && b.equal && a.rhs == b.rhs;
            if a.rhs != b.rhs {
                r.note = Some(format!("brute force gives {}", b.rhs));
            }
            rep.record(r);
        }
    }
    Ok(rep)
}

struct IndicatorDfs<'a> {
    model: &'a FockModel<Rational>,
    params: &'a ThomaParams,
    max_weight: u32,
    cache: &'a mut HashMap<WeightedDigraph, MultiPoly>,
    rep: &'a mut SuiteReport,
}

impl IndicatorDfs<'_> {
    /// Extends `suffix` (operator order reversed) to the left; `state` is
    /// the suffix applied to the vacuum.
    fn run(&mut self, suffix: &mut Vec<OpToken>, state: &FockVector<Rational>, remaining: usize, height: usize) -> Result<()> {
        if remaining == 0 {
            return self.leaf(suffix, state);
        }
        if height + 1 < remaining {
            for k in 0..=self.max_weight {
                let tok = OpToken::create(1).with_weight(k);
                let next = self.model.apply_token(&tok, state)?;
                suffix.push(tok);
                self.run(suffix, &next, remaining - 1, height + 1)?;
                suffix.pop();
            }
        }
        if height > 0 {
            for k in 0..=self.max_weight {
                let tok = OpToken::annihilate(1).with_weight(k);
                let next = self.model.apply_token(&tok, state)?;
                suffix.push(tok);
                self.run(suffix, &next, remaining - 1, height - 1)?;
                suffix.pop();
            }
        }
        Ok(())
    }

    fn leaf(&mut self, suffix: &[OpToken], state: &FockVector<Rational>) -> Result<()> {
        let w = FlatWord(suffix.iter().rev().cloned().collect());
        let lhs = state.vacuum_coeff();
        let g = word_digraph(&w, true)?;
        let poly = match self.cache.get(&g) {
            Some(p) => p.clone(),
            None => {
                let p = cycle_indicator(&g, Method::CutFuse)?;
                self.cache.insert(g, p.clone());
                p
            }
        };
        let rhs = eval_indicator(&poly, self.params)?;
        let equal = lhs == rhs;
        self.rep.record(TheoremReport {
            theorem: "cycle indicator".into(),
            instance: format!("{w} with alpha uniform on {}", self.params.alpha.len()),
            lhs: crate::algebra::rational_to_string(&lhs),
            rhs: crate::algebra::rational_to_string(&rhs),
            equal,
            note: None,
        });
        Ok(())
    }
}

/// Weighted cycle indicator identity for every one-color Dyck word of
/// length `≤ max_len` with weights `≤ max_weight`, simulated in the
/// Vershik–Kerov model with uniform `α` on `N` letters for each `N` in `ns`.
/// Words are grown from the right so that simulated states are shared
/// between words with a common suffix.
pub fn cycle_indicator_suite(max_len: usize, max_weight: u32, ns: &[usize]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cycle indicator");
    let mut cache = HashMap::new();
    for &n in ns {
        let params = ThomaParams::uniform(n);
        let model: FockModel<Rational> = FockModel::vk(params.alpha.clone(), 1)?.with_truncation(max_len / 2 + 1);
        let mut dfs = IndicatorDfs { model: &model, params: &params, max_weight, cache: &mut cache, rep: &mut rep };
        for len in (2..=max_len).step_by(2) {
            dfs.run(&mut Vec::with_capacity(len), &model.vacuum(), len, 0)?;
        }
    }
    Ok(rep)
}

/// The q-factorization identity for every word whose color classes read
/// annihilator, gauges, creator, with at most `max_blocks` blocks of size
/// `2..=max_size`. Block `b` uses color `b` and a scalar gauge of its own.
pub fn anshelevich_suite(max_blocks: usize, max_size: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("q factorization");
    let scalars = [(2, 1), (-1, 3), (5, 2), (3, 4), (-2, 1)];
    let mut gauges = BTreeMap::new();
    for b in 1..=max_blocks {
        let (p, q) = scalars[(b - 1) % scalars.len()];
        gauges.insert(b, GaugeMatrix::scalar(Rational::new(p.into(), q.into())));
    }
    for n in 2..=max_blocks * max_size {
        for pi in enumerate_partitions(n)? {
            if pi.num_blocks() > max_blocks || pi.block_sizes().iter().any(|&s| s < 2 || s > max_size) {
                continue;
            }
            let labels = pi.labels();
            let toks: Vec<OpToken> = (1..=n)
                .map(|i| {
                    let b = &pi.blocks()[labels[i - 1]];
                    let color = labels[i - 1] + 1;
                    if i == b[0] {
                        OpToken::annihilate(color)
                    } else if i == *b.last().unwrap() {
                        OpToken::create(color)
                    } else {
                        OpToken::gauge(color, color)
                    }
                })
                .collect();
            rep.record(thm_q_factorization(&FlatWord(toks), &gauges)?);
        }
    }
    Ok(rep)
}
