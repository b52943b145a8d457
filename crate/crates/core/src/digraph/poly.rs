use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CycleCover, WeightedDigraph};
use crate::algebra::{MultiPoly, Rational};
use crate::error::{domain, Result};
use crate::partitions::Permutation;

/// Vertex limits per method.
const BRUTE_COVER_CAP: usize = 10;
const BRUTE_PATH_CAP: usize = 12;
const CUT_FUSE_CAP: usize = 20;
const INDICATOR_CUT_FUSE_CAP: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    CutFuse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverVariant {
    Geometric,
    Factorial,
}

/// Edge choice in the cut-and-fuse recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    /// A loop if there is one, else an edge whose source has the fewest
    /// out-edges. Results are memoized.
    Heuristic,
    /// Lexicographically first edge, no memo.
    First,
    /// Lexicographically last edge, no memo.
    Last,
    /// A uniformly random edge from a seeded stream, no memo.
    Random(u64),
}

/// `x_1, …, x_w`.
pub fn indicator_vars(w: u32) -> Vec<String> {
    (1..=w.max(1)).map(|k| format!("x_{k}")).collect()
}

fn check_cap(g: &WeightedDigraph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return domain(format!("{} vertices exceed the limit {cap}", g.n()));
    }
    Ok(())
}

/// All cycle covers, by backtracking over successor choices.
pub fn cycle_covers(g: &WeightedDigraph) -> Result<Vec<CycleCover>> {
    check_cap(g, BRUTE_COVER_CAP)?;
    let n = g.n();
    let mut out = Vec::new();
    let mut image = vec![0usize; n];
    fn rec(v: usize, used: u32, g: &WeightedDigraph, image: &mut Vec<usize>, out: &mut Vec<CycleCover>) {
        if v == g.n() {
            let sigma = Permutation::from_images(image.clone()).expect("injective");
            out.push(CycleCover { sigma });
            return;
        }
        let mut free = g.successors(v) & !used;
        while free != 0 {
            let t = free.trailing_zeros() as usize;
            free &= free - 1;
            image[v] = t;
            rec(v + 1, used | 1 << t, g, image, out);
        }
    }
    rec(0, 0, g, &mut image, &mut out);
    Ok(out)
}

fn poly_from_counts(vars: &[String], counts: BTreeMap<Vec<u32>, i64>) -> MultiPoly {
    MultiPoly::from_terms(
        vars,
        counts
            .into_iter()
            .map(|(e, c)| (e, Rational::from_integer(BigInt::from(c)))),
    )
    .expect("exponent vectors match")
}

/// Cycle cover polynomial `C_c(Γ; x) = Σ_C x^{#cycles}`.
pub fn cycle_cover_poly(g: &WeightedDigraph, method: Method) -> Result<MultiPoly> {
    match method {
        Method::BruteForce => {
            let mut counts = BTreeMap::new();
            for c in cycle_covers(g)? {
                *counts.entry(vec![c.sigma.num_cycles() as u32]).or_insert(0) += 1;
            }
            Ok(poly_from_counts(&["x".to_string()], counts))
        }
        Method::CutFuse => cycle_cover_poly_with(g, EdgeOrder::Heuristic),
    }
}

pub fn cycle_cover_poly_with(g: &WeightedDigraph, order: EdgeOrder) -> Result<MultiPoly> {
    check_cap(g, CUT_FUSE_CAP)?;
    Ok(Engine::new(Mode::Cycles, vec!["x".into()], order).run(&g.forget_weights()))
}

/// Cycle-path cover polynomial in `x` (cycles) and `y` (paths); the
/// factorial variant replaces `y^k` by the falling factorial.
pub fn cover_poly(g: &WeightedDigraph, variant: CoverVariant, method: Method) -> Result<MultiPoly> {
    match method {
        Method::BruteForce => cover_poly_brute(g, variant),
        Method::CutFuse => cover_poly_with(g, variant, EdgeOrder::Heuristic),
    }
}

pub fn cover_poly_with(g: &WeightedDigraph, variant: CoverVariant, order: EdgeOrder) -> Result<MultiPoly> {
    check_cap(g, CUT_FUSE_CAP)?;
    Ok(Engine::new(Mode::Paths(variant), vec!["x".into(), "y".into()], order).run(&g.forget_weights()))
}

fn falling_factorial(vars: &Arc<[String]>, k: usize) -> MultiPoly {
    let y = MultiPoly::var(vars, "y").expect("y declared");
    let mut acc = MultiPoly::constant_in(vars, Rational::from_integer(1.into()));
    for j in 0..k {
        let factor = y
            .try_sub(&MultiPoly::constant(Rational::from_integer(BigInt::from(j))))
            .expect("same vars");
        acc = acc.try_mul(&factor).expect("same vars");
    }
    acc
}

/// Enumerates partial injective successor maps along edges; each is a cover
/// by cycles and paths, with one path per vertex lacking a successor.
fn cover_poly_brute(g: &WeightedDigraph, variant: CoverVariant) -> Result<MultiPoly> {
    check_cap(g, BRUTE_PATH_CAP)?;
    let n = g.n();
    let mut counts: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    let mut image: Vec<Option<usize>> = vec![None; n];
    fn rec(
        v: usize,
        used: u32,
        g: &WeightedDigraph,
        image: &mut Vec<Option<usize>>,
        counts: &mut BTreeMap<(u32, u32), i64>,
    ) {
        if v == g.n() {
            let paths = image.iter().filter(|x| x.is_none()).count() as u32;
            let cycles = count_cycles(image);
            *counts.entry((cycles, paths)).or_insert(0) += 1;
            return;
        }
        image[v] = None;
        rec(v + 1, used, g, image, counts);
        let mut free = g.successors(v) & !used;
        while free != 0 {
            let t = free.trailing_zeros() as usize;
            free &= free - 1;
            image[v] = Some(t);
            rec(v + 1, used | 1 << t, g, image, counts);
        }
        image[v] = None;
    }
    rec(0, 0, g, &mut image, &mut counts);
    let vars: Arc<[String]> = vec!["x".to_string(), "y".to_string()].into();
    let mut out = MultiPoly::zero_in(&vars);
    for ((c, p), k) in counts {
        let path_part = match variant {
            CoverVariant::Geometric => {
                MultiPoly::from_terms(&vars, [(vec![0, p], Rational::from_integer(1.into())) ]).unwrap()
            }
            CoverVariant::Factorial => falling_factorial(&vars, p as usize),
        };
        let term = MultiPoly::from_terms(&vars, [(vec![c, 0], Rational::from_integer(BigInt::from(k)))])
            .unwrap()
            .try_mul(&path_part)
            .unwrap();
        out = out.try_add(&term).unwrap();
    }
    Ok(out)
}

fn count_cycles(image: &[Option<usize>]) -> u32 {
    let n = image.len();
    let mut state = vec![0u8; n];
    let mut cycles = 0;
    for s in 0..n {
        let mut v = s;
        let mut trail = Vec::new();
        while state[v] == 0 {
            state[v] = 1;
            trail.push(v);
            match image[v] {
                Some(t) => v = t,
                None => break,
            }
        }
        if state[v] == 1 && image[v].is_some() && trail.contains(&v) {
            cycles += 1;
        }
        for t in trail {
            state[t] = 2;
        }
    }
    cycles
}

/// Weighted cycle indicator `I_c(Γ_w; x) = Σ_C Π_{γ∈C} x_{w(γ)}` with
/// `w(γ)` the total weight of the vertices on `γ`. Indeterminates are
/// `x_1, …, x_W` with `W` the total weight of `g`.
pub fn cycle_indicator(g: &WeightedDigraph, method: Method) -> Result<MultiPoly> {
    match method {
        Method::BruteForce => {
            let w = g.total_weight();
            let vars = indicator_vars(w);
            let mut counts = BTreeMap::new();
            for c in cycle_covers(g)? {
                let mut e = vec![0u32; vars.len()];
                for cyc in c.sigma.cycles() {
                    let cw: u32 = cyc.iter().map(|&v| g.weights()[v]).sum();
                    e[cw as usize - 1] += 1;
                }
                *counts.entry(e).or_insert(0) += 1;
            }
            Ok(poly_from_counts(&vars, counts))
        }
        Method::CutFuse => cycle_indicator_with(g, EdgeOrder::Heuristic),
    }
}

pub fn cycle_indicator_with(g: &WeightedDigraph, order: EdgeOrder) -> Result<MultiPoly> {
    check_cap(g, INDICATOR_CUT_FUSE_CAP)?;
    Ok(Engine::new(Mode::Indicator, indicator_vars(g.total_weight()), order).run(g))
}

#[derive(Clone, Copy)]
enum Mode {
    Cycles,
    Paths(CoverVariant),
    Indicator,
}

struct Engine {
    mode: Mode,
    vars: Arc<[String]>,
    order: EdgeOrder,
    memo: HashMap<WeightedDigraph, MultiPoly>,
    rng: ChaCha8Rng,
}

impl Engine {
    fn new(mode: Mode, vars: Vec<String>, order: EdgeOrder) -> Self {
        let seed = match order {
            EdgeOrder::Random(s) => s,
            _ => 0,
        };
        Engine {
            mode,
            vars: vars.into(),
            order,
            memo: HashMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn run(&mut self, g: &WeightedDigraph) -> MultiPoly {
        let p = self.rec(g);
        if p.is_constant() {
            MultiPoly::constant_in(&self.vars, p.constant_term())
        } else {
            p
        }
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::constant_in(&self.vars, Rational::from_integer(1.into()))
    }

    fn loop_factor(&self, g: &WeightedDigraph, v: usize) -> MultiPoly {
        let name = match self.mode {
            Mode::Indicator => format!("x_{}", g.weights()[v]),
            _ => "x".to_string(),
        };
        MultiPoly::var(&self.vars, &name).expect("weight within the declared range")
    }

    fn leaf(&self, n: usize) -> MultiPoly {
        match self.mode {
            Mode::Cycles | Mode::Indicator => {
                if n == 0 {
                    self.one()
                } else {
                    MultiPoly::zero_in(&self.vars)
                }
            }
            Mode::Paths(CoverVariant::Geometric) => {
                MultiPoly::from_terms(&self.vars, [(vec![0, n as u32], Rational::from_integer(1.into()))])
                    .unwrap()
            }
            Mode::Paths(CoverVariant::Factorial) => falling_factorial(&self.vars, n),
        }
    }

    fn choose_edge(&mut self, g: &WeightedDigraph) -> (usize, usize) {
        match self.order {
            EdgeOrder::Heuristic => {
                if let Some(v) = (0..g.n()).find(|&v| g.has_edge(v, v)) {
                    return (v, v);
                }
                let src = (0..g.n())
                    .filter(|&v| g.successors(v) != 0)
                    .min_by_key(|&v| g.successors(v).count_ones())
                    .expect("graph has edges");
                (src, g.successors(src).trailing_zeros() as usize)
            }
            EdgeOrder::First => g.edges()[0],
            EdgeOrder::Last => *g.edges().last().unwrap(),
            EdgeOrder::Random(_) => {
                let edges = g.edges();
                edges[self.rng.gen_range(0..edges.len())]
            }
        }
    }

    fn rec(&mut self, g: &WeightedDigraph) -> MultiPoly {
        let n = g.n();
        if n == 0 {
            return self.one();
        }
        if matches!(self.mode, Mode::Cycles | Mode::Indicator) {
            let has_in = (0..n).fold(0u32, |acc, v| acc | g.successors(v));
            let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            if has_in != full || (0..n).any(|v| g.successors(v) == 0) {
                return MultiPoly::zero_in(&self.vars);
            }
        }
        if g.num_edges() == 0 {
            return self.leaf(n);
        }
        let memo = self.order == EdgeOrder::Heuristic;
        if memo {
            if let Some(p) = self.memo.get(g) {
                return p.clone();
            }
        }
        let (a, b) = self.choose_edge(g);
        let out = if a == b {
            let with = self.rec(&g.remove_vertex(a));
            let with = self.loop_factor(g, a).try_mul(&with).unwrap();
            let without = self.rec(&g.remove_edge(a, a));
            with.try_add(&without).unwrap()
        } else {
            let cut = self.rec(&g.remove_edge(a, b));
            let fused = self.rec(&g.fuse(a, b));
            cut.try_add(&fused).unwrap()
        };
        if memo {
            self.memo.insert(g.clone(), out.clone());
        }
        out
    }
}
