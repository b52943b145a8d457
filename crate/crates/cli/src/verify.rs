use std::path::PathBuf;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use fockcum::cumulant::{
    cumulant, good_cumulant, product_formula_lhs, product_formula_rhs, toeplitz_cumulant, vanishing_suite,
    ToeplitzKind, Variable, VariableTemplate,
};
use fockcum::digraph::{cover_poly, cycle_cover_poly, cycle_indicator, CoverVariant, Method};
use fockcum::partitions::enumerate_partitions;
use fockcum::theorems::{
    anshelevich_suite, cycle_cover_suite, cycle_indicator_suite, fock_oracle_suite, q_factorial_suite, SuiteReport,
};
use fockcum::{FockModel, GaugeMatrix, MultiPoly, Rational, Result, Scalar, SetPartition, WeightedDigraph};
use num_complex::Complex64;

use crate::{Failure, Outcome};

const GOOD_TOL: f64 = 1e-9;
const RANDOM_DIGRAPHS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    All,
    QFactorial,
    Oracle,
    CycleCover,
    CycleIndicator,
    Anshelevich,
    Toeplitz,
    Vanishing,
    ProductFormula,
    Good,
    GraphOracles,
}

#[derive(Debug, Default, Serialize)]
struct Suite {
    name: String,
    checked: usize,
    failures: Vec<Value>,
    #[serde(skip)]
    instances: Vec<String>,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite { name: name.into(), ..Default::default() }
    }

    fn check(&mut self, instance: String, ok: bool, detail: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.failures.push(json!({ "instance": instance, "detail": detail() }));
        }
        self.instances.push(instance);
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl From<SuiteReport> for Suite {
    fn from(r: SuiteReport) -> Self {
        Suite {
            name: r.name,
            checked: r.checked,
            failures: r.failures.iter().map(|f| serde_json::to_value(f).expect("reports serialize")).collect(),
            instances: r.instances,
        }
    }
}

fn var<C: Scalar>(s: &str) -> Variable<C> {
    s.parse::<VariableTemplate>().expect("fixed templates parse").realize()
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn same(a: &MultiPoly, b: &MultiPoly) -> bool {
    a.try_sub(b).map(|d| d.is_zero()).unwrap_or(false)
}

fn toeplitz(max_n: usize) -> Result<Suite> {
    let mut s = Suite::new("toeplitz cumulants");
    for (kind, all_partitions) in [(ToeplitzKind::Free, true), (ToeplitzKind::Q, true), (ToeplitzKind::N, false)] {
        for n in 1..=max_n.min(4) {
            let pis = if all_partitions { enumerate_partitions(n)? } else { vec![SetPartition::coarsest(n)] };
            for pi in pis {
                let rep = toeplitz_cumulant(kind, &pi)?;
                s.check(format!("{kind:?} {pi}"), rep.agrees(), || {
                    json!({ "computed": rep.computed.to_string(), "predicted": rep.predicted.as_ref().map(|p| p.to_string()) })
                });
            }
        }
    }
    Ok(s)
}

fn vanishing(max_len: usize, max_n: usize) -> Result<Vec<Suite>> {
    Ok(vanishing_suite(max_len, max_n)?
        .into_iter()
        .map(|c| Suite {
            name: c.name,
            checked: c.checked,
            failures: c.violations.into_iter().map(Value::String).collect(),
            instances: Vec::new(),
        })
        .collect())
}

fn product_formula(max_atoms: usize) -> Result<Suite> {
    let mut s = Suite::new("product formula");
    let model = FockModel::<MultiPoly>::q_symbolic(2 * max_atoms.max(1))?.with_gauge(1, GaugeMatrix::scalar(r(2, 1)))?;
    let names = ["a1", "c1", "g1@1", "a1+c1"];
    let atoms: Vec<Variable<MultiPoly>> = names.iter().map(|n| var(n)).collect();
    let k = atoms.len();
    for len in 1..=max_atoms {
        for choice in 0..k.pow(len as u32) {
            let idx: Vec<usize> = (0..len).map(|i| choice / k.pow(i as u32) % k).collect();
            for cuts in 0..1usize << (len - 1) {
                let mut groups = vec![vec![atoms[idx[0]].clone()]];
                let mut label = names[idx[0]].to_string();
                for i in 1..len {
                    if cuts >> (i - 1) & 1 == 1 {
                        groups.push(Vec::new());
                        label.push_str(" | ");
                    } else {
                        label.push_str(" . ");
                    }
                    groups.last_mut().expect("nonempty").push(atoms[idx[i]].clone());
                    label.push_str(names[idx[i]]);
                }
                for pi in enumerate_partitions(groups.len())? {
                    let lhs = product_formula_lhs(&model, &groups, &pi)?;
                    let rhs = product_formula_rhs(&model, &groups, &pi)?;
                    s.check(format!("[{label}] {pi}"), same(&lhs, &rhs), || {
                        json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() })
                    });
                }
            }
        }
    }
    Ok(s)
}

fn good(max_n: usize) -> Result<Suite> {
    let mut s = Suite::new("good formula");
    let gauge = GaugeMatrix::scalar(r(1, 3));
    let n_max = max_n.clamp(1, 4);
    let exact = FockModel::q(r(1, 2), n_max)?.with_gauge(1, gauge.clone())?;
    let float = FockModel::q(Complex64::new(0.5, 0.0), n_max)?.with_gauge(1, gauge)?;
    for text in ["a1+c1", "a1+c1+g1@1+1/2"] {
        for n in 1..=n_max {
            for pi in enumerate_partitions(n)? {
                let k = cumulant(&exact, &vec![var::<Rational>(text); n], &pi)?;
                let g = good_cumulant(&float, &vec![var::<Complex64>(text); n], &pi)?;
                let err = (g.re - k.to_f64().unwrap_or(f64::NAN)).abs().max(g.im.abs());
                s.check(format!("{text} {pi}"), err < GOOD_TOL, || {
                    json!({ "exact": k.to_string(), "good": [g.re, g.im] })
                });
            }
        }
    }
    Ok(s)
}

fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize, max_weight: u32) -> Result<WeightedDigraph> {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.15..0.6);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
    WeightedDigraph::new(weights, &edges)
}

fn graph_oracles(seed: u64) -> Result<Suite> {
    let mut s = Suite::new("graph polynomial oracles");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_DIGRAPHS {
        let g = random_digraph(&mut rng, 8, 1)?;
        let (a, b) = (cycle_cover_poly(&g, Method::BruteForce)?, cycle_cover_poly(&g, Method::CutFuse)?);
        s.check(format!("C_c {}", g.to_text().replace('\n', "; ")), same(&a, &b), || {
            json!({ "brute_force": a.to_string(), "cut_fuse": b.to_string() })
        });
        let g = random_digraph(&mut rng, 7, 3)?;
        let (a, b) = (cycle_indicator(&g, Method::BruteForce)?, cycle_indicator(&g, Method::CutFuse)?);
        s.check(format!("I_c {}", g.to_text().replace('\n', "; ")), same(&a, &b), || {
            json!({ "brute_force": a.to_string(), "cut_fuse": b.to_string() })
        });
        let g = random_digraph(&mut rng, 6, 1)?;
        for variant in [CoverVariant::Geometric, CoverVariant::Factorial] {
            let (a, b) = (cover_poly(&g, variant, Method::BruteForce)?, cover_poly(&g, variant, Method::CutFuse)?);
            s.check(format!("{variant:?} {}", g.to_text().replace('\n', "; ")), same(&a, &b), || {
                json!({ "brute_force": a.to_string(), "cut_fuse": b.to_string() })
            });
        }
    }
    let y = MultiPoly::var(&["x", "y"], "y")?;
    for n in 1..=7 {
        let g = WeightedDigraph::unweighted(n, &[])?;
        let mut falling = MultiPoly::one();
        for j in 0..n {
            falling = falling.times(&y.minus(&MultiPoly::constant(r(j as i64, 1))));
        }
        let geo = cover_poly(&g, CoverVariant::Geometric, Method::CutFuse)?;
        let fac = cover_poly(&g, CoverVariant::Factorial, Method::CutFuse)?;
        s.check(format!("edgeless geometric n={n}"), same(&geo, &y.pow(n as u32)), || json!(geo.to_string()));
        s.check(format!("edgeless factorial n={n}"), same(&fac, &falling), || json!(fac.to_string()));
    }
    Ok(s)
}

fn suites_for(target: Target, max_len: usize, max_n: usize, seed: u64) -> Result<Vec<Suite>> {
    let one = |s: Result<Suite>| s.map(|s| vec![s]);
    match target {
        Target::All => unreachable!("expanded by the caller"),
        Target::QFactorial => one(q_factorial_suite((max_len / 2 + 1).max(2)).map(Suite::from)),
        Target::Oracle => one(fock_oracle_suite(max_len, 2).map(Suite::from)),
        Target::CycleCover => one(cycle_cover_suite(max_len, 2).map(Suite::from)),
        Target::CycleIndicator => one(cycle_indicator_suite(max_len, 2, &[2, 3]).map(Suite::from)),
        Target::Anshelevich => one(anshelevich_suite(3, 3).map(Suite::from)),
        Target::Toeplitz => one(toeplitz(max_n)),
        Target::Vanishing => vanishing(max_len, max_n),
        Target::ProductFormula => one(product_formula(max_n.min(4))),
        Target::Good => one(good(max_n)),
        Target::GraphOracles => one(graph_oracles(seed)),
    }
}

pub fn run(target: Target, max_len: usize, max_n: usize, seed: u64, report: Option<PathBuf>) -> Outcome {
    let targets: Vec<Target> = match target {
        Target::All => Target::value_variants().iter().copied().filter(|t| *t != Target::All).collect(),
        t => vec![t],
    };
    let results: Vec<Result<Vec<Suite>>> =
        targets.par_iter().map(|&t| suites_for(t, max_len, max_n, seed)).collect();
    let mut suites = Vec::new();
    for r in results {
        suites.extend(r?);
    }
    let passed = suites.iter().all(Suite::passed);
    if let Some(path) = report {
        let full: Vec<Value> = suites
            .iter()
            .map(|s| json!({ "name": s.name, "checked": s.checked, "failures": s.failures, "instances": s.instances }))
            .collect();
        let doc = json!({ "passed": passed, "max_len": max_len, "max_n": max_n, "seed": seed, "suites": full });
        let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
        std::fs::write(&path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    let summary = json!({ "passed": passed, "suites": suites });
    if passed {
        Ok(summary)
    } else {
        Err(Failure::Counterexample(summary))
    }
}
