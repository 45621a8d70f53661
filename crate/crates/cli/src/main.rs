//! `crystalline`: JSON front end for the crystal library.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crystalline::crystal::{explore_component, Crystal, Window, DEFAULT_NODE_CAP};
use crystalline::extremal::{decompose_product, ExtremalPair};
use crystalline::glinf::{self, BinaryMatrix, ComponentLabel, Formula};
use crystalline::lr::{enumerate_lr, lr_coeff};
use crystalline::matrix::IntMatrix;
use crystalline::modified::{peter_weyl_label, peter_weyl_label_at, psi, Bimatrix};
use crystalline::rsk_jdt::{rsk, rsk_inverse};
use crystalline::shapes::{GeneralizedPartition, Partition};
use crystalline::switching::{skew_compose, skew_decompose, switch_full};
use crystalline::tableaux::{AnyTableau, Letter, Tableau, Word};
use crystalline::verify::{self, Size};
use crystalline::{Error, Result};

#[derive(Parser)]
#[command(name = "crystalline", version, about = "Crystal bases on tableaux, extremal pairs and 0/1 matrices")]
struct Cli {
    /// Letter window `p..q` (colors p..q-1); `decompose` also accepts a count `n`.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Maximum number of nodes explored by `graph`.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    /// Base point `r`: entries lie above it.
    #[arg(long, global = true, allow_negative_numbers = true)]
    base: Option<i64>,
    /// Output format for `graph`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Corrected,
    Statement,
    ProofLastLine,
}

/// Every JSON argument is inline JSON, a file path, or `-` for stdin.
#[derive(Subcommand)]
enum Command {
    /// RSK of a matrix, or its inverse on a pair of tableaux.
    Rsk {
        #[arg(long, conflicts_with = "inverse")]
        matrix: Option<String>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        inverse: Option<Vec<String>>,
    },
    /// Switches an inner tableau past an outer one.
    Switch {
        #[arg(long)]
        inner: String,
        #[arg(long)]
        outer: String,
    },
    /// Splits a skew tableau into its rectification and recorder, or composes them back.
    SkewDecompose {
        tableau: String,
        /// Treat the argument as the straight tableau and compose with this recorder.
        #[arg(long)]
        compose: Option<String>,
    },
    /// Littlewood-Richardson coefficient for shape λ/μ and content ν.
    LrCoeff {
        lambda: String,
        mu: String,
        nu: String,
        #[arg(long)]
        barred: bool,
    },
    /// Every Littlewood-Richardson tableau of shape λ/μ and content ν.
    LrList {
        lambda: String,
        mu: String,
        nu: String,
        #[arg(long)]
        barred: bool,
    },
    /// Inserts one extremal pair into another.
    InsertPair {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        arg: String,
        #[arg(long)]
        recording: bool,
    },
    /// Multiplicities of each component type in a tensor product with a dual.
    Decompose { mu: String, nu: String },
    /// The modified-crystal map on `S ⊗ T`.
    Psi {
        #[arg(long = "S")]
        s: String,
        #[arg(long = "T")]
        t: String,
    },
    /// The map on 0/1 matrices `A ⊗ A'`.
    PsiInf {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Component labels of a bimatrix.
    BimatrixLabel { bimatrix: String },
    /// Multiplicity of a component type in `B(Λ_μ) ⊗ B(-Λ_ν)`.
    GlinfMult {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        label: String,
        #[arg(long, value_enum, default_value = "corrected")]
        formula: FormulaArg,
    },
    /// The connected component of an element, as DOT or JSON.
    Graph { element: String },
    /// Runs acceptance suites: a suite name, a group (`paper-examples`, `tableaux`,
    /// `extremal`, `modified`, `glinf`) or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value = "small")]
        size: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Output { text, ok }) => {
            println!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            ExitCode::from(1)
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn out(v: Value) -> std::result::Result<Output, Failure> {
    Ok(Output { text: v.to_string(), ok: true })
}

fn load(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Malformed(format!("stdin: {e}")))?;
        s
    } else if arg.trim_start().starts_with(['[', '{']) || arg.trim().parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Malformed(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{arg}: {e}")))
}

fn partition(arg: &str) -> Result<Partition> {
    serde_json::from_value(load(arg)?).map_err(|e| Error::Malformed(format!("partition {arg}: {e}")))
}

fn generalized(arg: &str) -> Result<GeneralizedPartition> {
    serde_json::from_value(load(arg)?).map_err(|e| Error::Malformed(format!("generalized partition {arg}: {e}")))
}

fn tableau(arg: &str) -> Result<AnyTableau> {
    AnyTableau::from_json(&load(arg)?)
}

fn window(cli: &Cli) -> Result<Option<Window>> {
    cli.window.as_deref().map(str::parse).transpose()
}

fn run(cli: &Cli) -> std::result::Result<Output, Failure> {
    let base = cli.base.unwrap_or(0);
    match &cli.command {
        Command::Rsk { matrix, inverse } => match (matrix, inverse) {
            (Some(m), None) => {
                let (p, q) = rsk(&IntMatrix::from_json(&load(m)?)?);
                out(json!({ "P": p.to_json(), "Q": q.to_json() }))
            }
            (None, Some(pq)) => {
                let m = rsk_inverse(&tableau(&pq[0])?.plain()?, &tableau(&pq[1])?.plain()?)?;
                out(m.to_json())
            }
            _ => Err(Failure::Usage("rsk needs --matrix or --inverse P Q".into())),
        },
        Command::Switch { inner, outer } => {
            let (t2, s2) = switch_full(&tableau(inner)?.plain()?, &tableau(outer)?.plain()?)?;
            out(json!({ "inner": t2.to_json(), "outer": s2.to_json() }))
        }
        Command::SkewDecompose { tableau: t, compose } => match compose {
            None => {
                let (straight, recorder) = skew_decompose(&tableau(t)?.plain()?);
                out(json!({ "straight": straight.to_json(), "recorder": recorder.to_json() }))
            }
            Some(r) => out(skew_compose(&tableau(t)?.plain()?, &tableau(r)?.plain()?)?.to_json()),
        },
        Command::LrCoeff { lambda, mu, nu, barred } => {
            let (l, m, n) = (partition(lambda)?, partition(mu)?, partition(nu)?);
            let c = if *barred { enumerate_lr(&l, &m, &n, true).len() } else { lr_coeff(&l, &m, &n) };
            out(json!({ "c": c }))
        }
        Command::LrList { lambda, mu, nu, barred } => {
            let list = enumerate_lr(&partition(lambda)?, &partition(mu)?, &partition(nu)?, *barred);
            out(Value::from(list.iter().map(Tableau::to_json).collect::<Vec<_>>()))
        }
        Command::InsertPair { pair, arg, recording } => {
            let p = ExtremalPair::from_json(&load(pair)?, base)?;
            let q = ExtremalPair::from_json(&load(arg)?, base)?;
            let (res, rec) = p.insert_pair(&q)?;
            if *recording {
                out(json!({ "pair": res.to_json(), "recording": rec.to_json() }))
            } else {
                out(res.to_json())
            }
        }
        Command::Decompose { mu, nu } => {
            let (m, n) = (partition(mu)?, partition(nu)?);
            let hi = match cli.window.as_deref() {
                None => base + (m.len() + n.len()) as i64 + 2,
                Some(w) => match w.parse::<i64>() {
                    Ok(count) => base + count,
                    Err(_) => w.parse::<Window>()?.hi,
                },
            };
            let rows = decompose_product(&m, &n, base, hi)?;
            out(Value::from(
                rows.iter()
                    .map(|c| json!({ "sigma": c.sigma, "tau": c.tau, "multiplicity": c.formula, "counted": c.counted }))
                    .collect::<Vec<_>>(),
            ))
        }
        Command::Psi { s, t } => out(psi(&tableau(s)?.plain()?, &tableau(t)?.dual())?.to_json()),
        Command::PsiInf { a, b, mu, nu } => {
            let m = BinaryMatrix::from_json(&load(a)?)?.stack(&BinaryMatrix::from_json(&load(b)?)?);
            let (mu, nu) = (generalized(mu)?, generalized(nu)?);
            let res = match cli.base {
                Some(r) => glinf::psi_at(&m, &mu, &nu, r)?,
                None => glinf::psi_inf(&m, &mu, &nu)?,
            };
            out(res.to_json())
        }
        Command::BimatrixLabel { bimatrix } => {
            let b = Bimatrix::from_json(&load(bimatrix)?)?;
            let label = match cli.base {
                Some(r) => peter_weyl_label_at(&b, r)?,
                None => peter_weyl_label(&b)?,
            };
            out(label.to_json())
        }
        Command::GlinfMult { mu, nu, label, formula } => {
            let (mu, nu) = (generalized(mu)?, generalized(nu)?);
            let label = ComponentLabel::from_json(&load(label)?)?;
            match cli.base {
                Some(r) => out(json!({ "multiplicity": glinf::multiplicity_at(&mu, &nu, &label, r)?, "base": r })),
                None => {
                    let f = match formula {
                        FormulaArg::Corrected => Formula::Corrected,
                        FormulaArg::Statement => Formula::Statement,
                        FormulaArg::ProofLastLine => Formula::ProofLastLine,
                    };
                    let s = glinf::multiplicity(&mu, &nu, &label, f)?;
                    out(json!({ "multiplicity": s.value, "k": s.k, "formula": f }))
                }
            }
        }
        Command::Graph { element } => graph(cli, &load(element)?),
        Command::Verify { suite, size } => {
            let size: Size = size.parse().map_err(Failure::Usage)?;
            let seed = verify::seed_from_env();
            let names = verify::resolve(suite).ok_or_else(|| Failure::Usage(format!("unknown suite {suite}")))?;
            let mut reports = Vec::new();
            for name in names {
                reports.push(verify::run_suite(name, size, seed).expect("resolved suite"));
            }
            let doc = verify::reports_json(&reports, size, seed);
            Ok(Output { text: serde_json::to_string_pretty(&doc).expect("report serializes"), ok: doc["passed"] == true })
        }
    }
}

fn component<C: Crystal>(cli: &Cli, x: &C) -> std::result::Result<Output, Failure> {
    let w = match window(cli)? {
        Some(w) => w,
        None => match x.letter_span() {
            Some((lo, hi)) => Window::new(lo.min(1), hi.max(lo.min(1)) + 1)?,
            None => Window::new(1, 2)?,
        },
    };
    let g = explore_component(x, w, cli.node_cap)?;
    match cli.format.unwrap_or(Format::Dot) {
        Format::Dot => Ok(Output { text: g.to_dot().trim_end().to_string(), ok: true }),
        Format::Json => out(json!({
            "window": w,
            "nodes": g.nodes.iter().map(Crystal::to_json).collect::<Vec<_>>(),
            "edges": g.edges.iter().map(|&(a, i, b)| json!([a, i, b])).collect::<Vec<_>>(),
        })),
    }
}

/// Picks the element kind from the JSON layout.
fn graph(cli: &Cli, v: &Value) -> std::result::Result<Output, Failure> {
    let has = |k: &str| v.get(k).is_some();
    let rows_are_binary = v.get("rows").and_then(Value::as_array).and_then(|r| r.first()).is_some_and(|r| r.get("ldef").is_some());
    if rows_are_binary {
        return component(cli, &BinaryMatrix::from_json(v)?);
    }
    if has("rows") {
        return match AnyTableau::from_json(v)? {
            AnyTableau::Plain(t) => component(cli, &t),
            AnyTableau::Dual(t) => component(cli, &t),
        };
    }
    if has("s") || has("t") {
        return component(cli, &ExtremalPair::from_json(v, cli.base.unwrap_or(0))?);
    }
    if has("entries") {
        return component(cli, &IntMatrix::from_json(v)?);
    }
    if has("m") || has("n") {
        return component(cli, &Bimatrix::from_json(v)?);
    }
    if let Some(items) = v.as_array() {
        let word: Option<Word> = items
            .iter()
            .map(|e| match e {
                Value::Number(n) => n.as_i64().map(Letter::plain),
                Value::Object(o) => o.get("d").and_then(Value::as_i64).map(Letter::dual),
                _ => None,
            })
            .collect();
        return match word {
            Some(w) => component(cli, &w),
            None => Err(Error::Malformed("word entries must be integers or {\"d\": k}".into()).into()),
        };
    }
    Err(Error::Malformed("cannot tell which crystal this element belongs to".into()).into())
}
