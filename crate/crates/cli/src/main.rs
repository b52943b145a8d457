use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use fockcum::algebra::{parse_rational, rational_to_string};
use fockcum::cumulant::{cumulant, VariableTemplate};
use fockcum::digraph::{cover_poly, cycle_cover_poly, cycle_indicator, word_digraph, CoverVariant, Method};
use fockcum::theorems::eval_indicator;
use fockcum::words::ReadOrder;
use fockcum::{
    Error, FockModel, GaugeMatrix, MultiPoly, Rational, Scalar, SetPartition, ThomaParams, WeightedDigraph, Word,
};

mod verify;

const EXIT_DOMAIN: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "fock", version, about = "Moments, cumulants and graph polynomials on deformed Fock spaces")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// TOML file with `truncation`, `dim_h` and `alphabet` keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Reading direction of words.
    #[arg(long, global = true, value_enum, default_value_t = Order::Operator)]
    order: Order,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Operator,
    Temporal,
}

impl From<Order> for ReadOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Operator => ReadOrder::Operator,
            Order::Temporal => ReadOrder::Temporal,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vacuum expectation of a word.
    Expect {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        word: String,
    },
    /// Classical cumulant of a list of variables.
    Cumulant {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated variables such as `a1+c1,2*c1 a1+1/2`.
        #[arg(long)]
        vars: String,
        /// Compact partition such as `13|24`; the single block by default.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Cycle cover or cycle-path cover polynomial of a digraph.
    Coverpoly {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Variant::Cycle)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = MethodArg::CutFuse)]
        method: MethodArg,
    },
    /// Weighted cycle indicator, optionally evaluated at power sums of `--alpha`.
    Indicator {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::CutFuse)]
        method: MethodArg,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<String>>,
    },
    /// Digraph of a Dyck word.
    Digraph {
        #[arg(long)]
        word: String,
        #[arg(long)]
        unweighted: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        target: verify::Target,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Largest cumulant order in the cumulant suites.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Write every checked instance to this JSON file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Q)]
    model: ModelArg,
    /// Keep the deformation parameter as an indeterminate (the default).
    #[arg(long)]
    q_symbolic: bool,
    /// Numeric q for the q-model.
    #[arg(long)]
    q: Option<String>,
    /// `t = 1/N` for the N-model; `N` uniform letters for the VK model.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Letter frequencies for the VK model.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<String>>,
    /// Gauge operator `ID=VALUE` (a scalar) or `ID=[["a","b"],["c","d"]]`.
    #[arg(long)]
    gauge: Vec<String>,
    #[arg(long)]
    dim_h: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Q,
    #[value(name = "N", alias = "n")]
    N,
    Vk,
    Free,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge list such as `1->1 1->2`, with an optional `w: 1 2` line.
    #[arg(long, conflicts_with = "json")]
    edges: Option<String>,
    /// Graph as JSON `{"weights":[..],"edges":[[1,2],..]}`.
    #[arg(long)]
    json: Option<String>,
    /// Build the graph from a Dyck word.
    #[arg(long, conflicts_with_all = ["edges", "json"])]
    word: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Cycle,
    Geometric,
    Factorial,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    CutFuse,
    BruteForce,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::CutFuse => Method::CutFuse,
            MethodArg::BruteForce => Method::BruteForce,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    truncation: Option<usize>,
    dim_h: Option<usize>,
    alphabet: Option<Vec<String>>,
}

enum Failure {
    Domain(String),
    Counterexample(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

struct Ctx {
    order: ReadOrder,
    config: Config,
    seed: u64,
}

impl Ctx {
    fn word(&self, text: &str) -> fockcum::Result<Word> {
        self.order.parse(text)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.pretty;
    let (value, code) = match run(cli) {
        Ok(v) => (v, 0),
        Err(Failure::Domain(msg)) => (json!({ "error": msg }), EXIT_DOMAIN),
        Err(Failure::Counterexample(v)) => (v, EXIT_COUNTEREXAMPLE),
    };
    let text = if pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) };
    println!("{}", text.expect("JSON values serialize"));
    ExitCode::from(code)
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Domain(e.to_string()))?;
    }
    let config = match &cli.config {
        None => Config::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?
        }
    };
    let ctx = Ctx { order: cli.order.into(), config, seed: cli.seed };
    match cli.command {
        Command::Expect { model, word } => expect(&ctx, &model, &word),
        Command::Cumulant { model, vars, partition } => cumulant_cmd(&ctx, &model, &vars, partition.as_deref()),
        Command::Coverpoly { graph, variant, method } => {
            let g = load_graph(&ctx, &graph)?;
            let poly = match variant {
                Variant::Cycle => cycle_cover_poly(&g, method.into())?,
                Variant::Geometric => cover_poly(&g, CoverVariant::Geometric, method.into())?,
                Variant::Factorial => cover_poly(&g, CoverVariant::Factorial, method.into())?,
            };
            Ok(json!({ "poly": poly.to_string_descending() }))
        }
        Command::Indicator { graph, method, alpha } => {
            let g = load_graph(&ctx, &graph)?;
            let poly = cycle_indicator(&g, method.into())?;
            match alpha {
                None => Ok(json!({ "poly": poly.to_string_descending() })),
                Some(a) => {
                    let params = ThomaParams::new(rationals(&a)?, vec![])?;
                    let value = eval_indicator(&poly, &params)?;
                    Ok(json!({ "poly": poly.to_string_descending(), "value": rational_to_string(&value) }))
                }
            }
        }
        Command::Digraph { word, unweighted } => {
            let w = ctx.word(&word)?.to_flat();
            let g = word_digraph(&w, !unweighted)?;
            Ok(serde_json::to_value(&g).expect("digraphs serialize"))
        }
        Command::Verify { target, max_len, max_n, report } => verify::run(target, max_len, max_n, ctx.seed, report),
    }
}

fn rationals(items: &[String]) -> fockcum::Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s)).collect()
}

fn load_graph(ctx: &Ctx, args: &GraphArgs) -> std::result::Result<WeightedDigraph, Failure> {
    if let Some(text) = &args.edges {
        return Ok(WeightedDigraph::parse_text(&text.replace(';', "\n"))?);
    }
    if let Some(text) = &args.json {
        return serde_json::from_str(text).map_err(|e| Failure::Domain(format!("graph JSON: {e}")));
    }
    if let Some(word) = &args.word {
        return Ok(word_digraph(&ctx.word(word)?.to_flat(), true)?);
    }
    Err(Failure::Domain("one of --edges, --json or --word is required".into()))
}

fn gauges(specs: &[String]) -> std::result::Result<BTreeMap<usize, GaugeMatrix>, Failure> {
    let mut out = BTreeMap::new();
    for spec in specs {
        let bad = |msg: String| Failure::Domain(format!("gauge {spec:?}: {msg}"));
        let (id, value) = spec.split_once('=').ok_or_else(|| bad("expected ID=VALUE".into()))?;
        let id: usize = id.trim().parse().map_err(|_| bad("bad id".into()))?;
        let value = value.trim();
        let matrix = if value.starts_with('[') {
            serde_json::from_str(value).map_err(|e| bad(e.to_string()))?
        } else {
            GaugeMatrix::scalar(parse_rational(value)?)
        };
        out.insert(id, matrix);
    }
    Ok(out)
}

/// Smallest one-particle dimension that holds every color in `words`.
fn needed_dim(words: &[&Word], gauges: &BTreeMap<usize, GaugeMatrix>) -> usize {
    words
        .iter()
        .map(|w| w.to_flat().max_color(|id| gauges.get(&id).map_or(1, GaugeMatrix::size)))
        .max()
        .unwrap_or(1)
        .max(1)
}

enum Built {
    Exact(FockModel<Rational>),
    Symbolic(FockModel<MultiPoly>),
}

fn build<C: Scalar>(
    model: FockModel<C>,
    ctx: &Ctx,
    gauges: &BTreeMap<usize, GaugeMatrix>,
) -> fockcum::Result<FockModel<C>> {
    let mut model = model;
    if let Some(t) = ctx.config.truncation {
        model = model.with_truncation(t);
    }
    for (id, g) in gauges {
        model = model.with_gauge(*id, g.clone())?;
    }
    Ok(model)
}

fn model_for(ctx: &Ctx, args: &ModelArgs, words: &[&Word], min_dim: usize) -> std::result::Result<Built, Failure> {
    let gauges = gauges(&args.gauge)?;
    let dim = args.dim_h.or(ctx.config.dim_h).unwrap_or_else(|| needed_dim(words, &gauges).max(min_dim));
    let symbolic_conflict = |what: &str| Failure::Domain(format!("--q-symbolic conflicts with {what}"));
    let built = match args.model {
        ModelArg::Q => match &args.q {
            Some(_) if args.q_symbolic => return Err(symbolic_conflict("--q")),
            Some(q) => Built::Exact(build(FockModel::q(parse_rational(q)?, dim)?, ctx, &gauges)?),
            None => Built::Symbolic(build(FockModel::q_symbolic(dim)?, ctx, &gauges)?),
        },
        ModelArg::Free => Built::Exact(build(FockModel::free(dim)?, ctx, &gauges)?),
        ModelArg::N => match args.n {
            Some(_) if args.q_symbolic => return Err(symbolic_conflict("--N")),
            Some(0) => return Err(Failure::Domain("--N must be positive".into())),
            Some(n) => {
                let t = Rational::new(1.into(), (n as i64).into());
                Built::Exact(build(FockModel::n(t, dim)?, ctx, &gauges)?)
            }
            None => Built::Symbolic(build(FockModel::n_symbolic(dim)?, ctx, &gauges)?),
        },
        ModelArg::Vk => {
            let alpha = match (&args.alpha, args.n, &ctx.config.alphabet) {
                (Some(a), _, _) => rationals(a)?,
                (None, Some(n), _) if n > 0 => vec![Rational::new(1.into(), (n as i64).into()); n],
                (None, None, Some(a)) => rationals(a)?,
                _ => return Err(Failure::Domain("the vk model needs --alpha, --N or an alphabet".into())),
            };
            Built::Exact(build(FockModel::vk(alpha, dim)?, ctx, &gauges)?)
        }
    };
    Ok(built)
}

fn expect(ctx: &Ctx, args: &ModelArgs, text: &str) -> Outcome {
    let word = ctx.word(text)?;
    Ok(match model_for(ctx, args, &[&word], 1)? {
        Built::Exact(m) => json!({ "value": rational_to_string(&m.vacuum_expectation(&word)?) }),
        Built::Symbolic(m) => json!({ "poly": m.vacuum_expectation(&word)?.to_string() }),
    })
}

fn cumulant_cmd(ctx: &Ctx, args: &ModelArgs, vars: &str, partition: Option<&str>) -> Outcome {
    let mut templates = Vec::new();
    for item in vars.split(',') {
        let t: VariableTemplate = item.parse()?;
        let terms = t
            .terms()
            .iter()
            .map(|(c, w)| {
                let w = match ctx.order {
                    ReadOrder::Operator => w.clone(),
                    ReadOrder::Temporal => Word::Flat(w.to_flat().reversed_order()),
                };
                (c.clone(), w)
            })
            .collect();
        templates.push(VariableTemplate::new(terms));
    }
    let n = templates.len();
    let pi = match partition {
        Some(p) => SetPartition::parse_compact(p)?,
        None => SetPartition::coarsest(n),
    };
    let words: Vec<&Word> = templates.iter().flat_map(|t| t.terms().iter().map(|(_, w)| w)).collect();
    let base = needed_dim(&words, &gauges(&args.gauge)?);
    let min_dim = base * n;
    let part = pi.to_compact();
    Ok(match model_for(ctx, args, &words, min_dim)? {
        Built::Exact(m) => {
            let xs: Vec<_> = templates.iter().map(|t| t.realize()).collect();
            json!({ "partition": part, "value": rational_to_string(&cumulant(&m, &xs, &pi)?) })
        }
        Built::Symbolic(m) => {
            let xs: Vec<_> = templates.iter().map(|t| t.realize()).collect();
            json!({ "partition": part, "poly": cumulant(&m, &xs, &pi)?.to_string() })
        }
    })
}
