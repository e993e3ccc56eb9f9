//! `flagcalc`: enumeration, densities, flattening, downward transfer and
//! sum-of-squares certificates from the command line.
//!
//! Exit status is 0 on success, 1 when a certificate is rejected or a
//! search finds nothing, and 2 for usage, parse and input errors.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use flagcalc::prover::Target;
use flagcalc::{
    alpha_dagger, density, enumerate_flags, enumerate_graphs, eval_on_graphon, eval_on_host, labelled_density,
    parse_assertion, parse_expr, prove_goodman, prove_mantel, search_certificate, to_linear_form_typed,
    verify_certificate, Certificate, Error, Flag, Graph, LinearForm, SearchConfig, StepGraphon, TypeGraph, Verdict,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "flagcalc", version, about = "Exact flag-algebra calculus on small graphs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List graphs (or τ-flags) on N vertices up to isomorphism, in basis order.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_name = "T")]
        tau: Option<String>,
    },
    /// Induced density of a pattern in a host; flags give the labelled density.
    Density {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
    },
    /// Evaluate an unlabelled expression on a host graph or a step graphon.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long, conflicts_with = "graphon", required_unless_present = "graphon")]
        host: Option<String>,
        #[arg(long, value_name = "FILE")]
        graphon: Option<String>,
    },
    /// Flatten an expression into a linear form over the level-N basis.
    Flatten {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        level: usize,
        #[arg(long = "type", value_name = "T")]
        tau: Option<String>,
    },
    /// Apply the downward operator to a labelled linear form (JSON file, `-` for stdin).
    Downward {
        #[arg(long, value_name = "FILE")]
        form: String,
    },
    /// Verify a certificate file exactly.
    CheckCert { file: String },
    /// Search for a certificate of a target assertion.
    Search {
        #[arg(long)]
        target: String,
        #[arg(long)]
        level: usize,
        /// Types of the SOS blocks; defaults to the one-vertex type.
        #[arg(long = "type", value_name = "T")]
        types: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        max_denominator: u64,
    },
    /// Replay one of the built-in proofs.
    Prove {
        theorem: Theorem,
        /// Print every derivation step.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Mantel,
    Goodman,
}

enum Failure {
    /// Rejection or an empty search: exit 1.
    Negative(String),
    /// Bad input: exit 2.
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFound(_) => Failure::Negative(e.to_string()),
            other => Failure::Input(other.into()),
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn parse_type(t: &Option<String>) -> Result<TypeGraph, Failure> {
    Ok(match t {
        Some(s) => s.parse::<TypeGraph>()?,
        None => TypeGraph::empty(),
    })
}

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json value serialises"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Enum { n, tau } => {
            let tau = parse_type(&tau)?;
            let items: Vec<String> = if tau.size() == 0 {
                enumerate_graphs(n)?.iter().map(|g| g.to_string()).collect()
            } else {
                enumerate_flags(&tau, n)?.iter().map(|f| f.to_string()).collect()
            };
            if json {
                print_json(json!({ "n": n, "type": tau.to_string(), "count": items.len(), "items": items }));
            } else {
                for s in items {
                    println!("{s}");
                }
            }
        }
        Command::Density { pattern, host } => {
            let value = if pattern.starts_with("f:") || host.starts_with("f:") {
                let (h, g): (Flag, Flag) = (pattern.parse()?, host.parse()?);
                labelled_density(&h, &g)?
            } else {
                let (h, g): (Graph, Graph) = (pattern.parse()?, host.parse()?);
                density(&h, &g)
            };
            if json {
                print_json(json!({ "pattern": pattern, "host": host, "density": value.to_string() }));
            } else {
                println!("{value}");
            }
        }
        Command::Eval { expr, host, graphon } => {
            let e = parse_expr(&expr)?;
            let value = match (host, graphon) {
                (Some(h), _) => eval_on_host(&e, &h.parse::<Graph>()?)?,
                (None, Some(file)) => eval_on_graphon(&e, &StepGraphon::from_json(&read_input(&file)?)?)?,
                (None, None) => unreachable!("clap requires a host or a graphon"),
            };
            if json {
                print_json(json!({ "expr": e.to_string(), "value": value.to_string() }));
            } else {
                println!("{value}");
            }
        }
        Command::Flatten { expr, level, tau } => {
            let e = parse_expr(&expr)?;
            let tau = match tau {
                Some(_) => parse_type(&tau)?,
                None => e.expr_type()?.unwrap_or_else(TypeGraph::empty),
            };
            let lf = to_linear_form_typed(&e, &tau, level)?;
            if json {
                println!("{}", lf.to_json());
            } else {
                print!("{}", lf.table());
            }
        }
        Command::Downward { form } => {
            let lf = LinearForm::from_json(&read_input(&form)?)?;
            let down = alpha_dagger(&lf)?;
            if json {
                println!("{}", down.to_json());
            } else {
                print!("{}", down.table());
            }
        }
        Command::CheckCert { file } => {
            let cert = Certificate::from_json(&read_input(&file)?)?;
            let verdict = verify_certificate(&cert)?;
            report(&verdict, json, false);
            if !verdict.accepted {
                return Err(Failure::Negative("certificate rejected".into()));
            }
        }
        Command::Search {
            target,
            level,
            types,
            max_denominator,
        } => {
            let a = parse_assertion(&target)?;
            Target::from_assertion(&a)?;
            let types = if types.is_empty() {
                vec![TypeGraph::vertex()]
            } else {
                types.iter().map(|t| t.parse()).collect::<flagcalc::Result<Vec<TypeGraph>>>()?
            };
            let cfg = SearchConfig {
                max_denominator,
                ..SearchConfig::default()
            };
            let cert = search_certificate(&a, level, &types, &cfg)?;
            if json {
                println!("{}", cert.to_json());
            } else {
                let verdict = verify_certificate(&cert)?;
                report(&verdict, false, false);
                println!("{}", cert.to_json());
            }
        }
        Command::Prove { theorem, trace } => {
            let verdict = match theorem {
                Theorem::Mantel => prove_mantel(),
                Theorem::Goodman => prove_goodman(),
            };
            report(&verdict, json, trace);
            if !verdict.accepted {
                return Err(Failure::Negative("built-in certificate rejected".into()));
            }
        }
    }
    Ok(())
}

fn report(v: &Verdict, json: bool, trace: bool) {
    if json {
        let residual: Vec<serde_json::Value> = v
            .residual
            .terms()
            .map(|(f, c)| json!({ "graph": f.graph().to_string(), "coefficient": c.to_string() }))
            .collect();
        let negative: Vec<String> = v.negative.iter().map(|(g, _)| g.to_string()).collect();
        let mut out = json!({
            "target": v.target.to_string(),
            "accepted": v.accepted,
            "bound": v.target.bound.to_string(),
            "residual": residual,
            "negative": negative,
        });
        if trace {
            out["trace"] = v
                .trace
                .iter()
                .map(|s| json!({ "step": s.kind.to_string(), "text": s.text }))
                .collect();
        }
        print_json(out);
        return;
    }
    if trace {
        print!("{}", v.trace_text());
    }
    println!("target: {}", v.target);
    println!("bound: {}", v.target.bound);
    println!("residual: {}", v.residual);
    if v.accepted {
        println!("accepted");
    } else {
        let neg: Vec<String> = v.negative.iter().map(|(g, r)| format!("{g} ({r})")).collect();
        println!("rejected: negative residual at {}", neg.join(", "));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
