//! Command-line front end. [`dispatch`] runs one parsed command and returns
//! its output and exit code without touching the process, so it can be
//! driven from tests.

use std::fmt::Write as _;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::counting::{
    asymptotic_count, estimate_count, estimate_rho, exact_count_with_budget, DEFAULT_EXACT_BUDGET,
};
use crate::error::Error;
use crate::exploration::{
    candidate_edges, explore, lukasiewicz, prefix_processes, rebuild_tree, w_of_counts, Vertex,
};
use crate::graph::{oracle_count_with_budget, BipartiteGraph, DEFAULT_ORACLE_BUDGET};
use crate::rng::{par_samples, RngStream, DEFAULT_SEED};
use crate::sampling::{sample_uniform_tree, sample_w, DEFAULT_RESOLUTION};
use crate::validate::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "bipartite-surplus",
    version,
    about = "Count connected labeled bipartite graphs with a fixed surplus"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Random seed
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Stream id under the seed
    #[arg(long, global = true, default_value_t = 0)]
    pub stream: u64,
    /// Number of Monte Carlo samples (default depends on the command)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (explore only)
    #[arg(long, global = true)]
    pub csv: bool,
    /// Work budget for exact and oracle counts
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact count by summing over child-count pairs
    CountExact(Instance),
    /// Exact count by enumerating edge subsets (small instances only)
    CountOracle(Instance),
    /// Monte Carlo estimate of the count
    CountEstimate(Instance),
    /// Large-n approximation of the count
    CountAsymptotic {
        #[command(flatten)]
        instance: Instance,
        /// rho_k; defaults to 1 for k = 0 and sqrt(pi/8) for k = 1
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Estimate rho_k from Brownian excursion areas
    RhoEstimate {
        k: u32,
        /// Steps per discrete excursion
        #[arg(long, default_value_t = DEFAULT_RESOLUTION, value_parser = parse_resolution)]
        resolution: usize,
    },
    /// Uniform random spanning trees of K_{n,m}, in graph file format
    SampleTree(Classes),
    /// W of uniform random spanning trees, one per line
    SampleW(Classes),
    /// Breadth-first exploration of a graph file (`-` reads stdin)
    Explore { file: String },
    /// Run a statistical validation suite
    Validate {
        #[arg(default_value = "all", value_parser = suite_names())]
        suite: String,
    },
}

#[derive(Debug, Args)]
pub struct Classes {
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    pub k: u64,
}

fn parse_resolution(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(r) if r >= 2 => Ok(r),
        Ok(_) => Err("resolution must be at least 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names = vec!["all"];
    names.extend(SUITES);
    clap::builder::PossibleValuesParser::new(names)
}

/// What a command printed and how it ended.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::OracleBudget { .. } | Error::ExactBudget { .. } => EXIT_BUDGET,
        Error::InvalidArgument(_) | Error::EmptyClass { .. } => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

impl From<Error> for Outcome {
    fn from(err: Error) -> Self {
        Outcome::failure(exit_code_for(&err), err.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    match run_command(cli) {
        Ok(out) => out,
        Err(err) => err.into(),
    }
}

fn samples_or(g: &GlobalArgs, default: usize) -> usize {
    g.samples.map_or(default, |s| s as usize)
}

fn run_command(cli: &Cli) -> crate::error::Result<Outcome> {
    let g = &cli.global;
    let stream = RngStream::new(g.seed, g.stream);
    let out = match &cli.command {
        Command::CountExact(i) => {
            let count = exact_count_with_budget(
                i.n as usize,
                i.m as usize,
                i.k as usize,
                g.budget.unwrap_or(DEFAULT_EXACT_BUDGET),
            )?;
            count_output(g, &count.to_string())
        }
        Command::CountOracle(i) => {
            let count = oracle_count_with_budget(
                i.n as usize,
                i.m as usize,
                i.k as usize,
                g.budget.unwrap_or(DEFAULT_ORACLE_BUDGET),
            )?;
            count_output(g, &count.to_string())
        }
        Command::CountEstimate(i) => {
            let samples = samples_or(g, 100_000);
            if samples < 2 {
                return Err(Error::InvalidArgument("count-estimate needs at least 2 samples".into()));
            }
            let (est, log) = estimate_count(i.n as usize, i.m as usize, i.k as usize, samples, stream);
            if g.json {
                json_line(&json!({
                    "mean": est.mean,
                    "stderr": est.stderr,
                    "samples": est.samples,
                    "seed": g.seed,
                    "stream": g.stream,
                    "log_value": log.ln(),
                }))
            } else {
                format!(
                    "E[binom(W,{})] = {:.6} +- {:.6}\nlog count = {:.6}\nsamples={} seed={} stream={}\n",
                    i.k,
                    est.mean,
                    est.stderr,
                    log.ln(),
                    est.samples,
                    g.seed,
                    g.stream
                )
            }
        }
        Command::CountAsymptotic { instance: i, rho } => {
            let rho = match (rho, i.k) {
                (Some(r), _) if *r > 0.0 => *r,
                (Some(_), _) => return Err(Error::InvalidArgument("--rho must be positive".into())),
                (None, 0) => 1.0,
                (None, 1) => (std::f64::consts::PI / 8.0).sqrt(),
                (None, k) => {
                    return Err(Error::InvalidArgument(format!(
                        "no default rho for k={k}; pass --rho (see rho-estimate)"
                    )))
                }
            };
            let log = asymptotic_count(i.n as usize, i.m as usize, i.k as usize, rho);
            if g.json {
                json_line(&json!({ "log_value": log.ln(), "rho": rho }))
            } else {
                format!("log count ~ {:.6}\n", log.ln())
            }
        }
        Command::RhoEstimate { k, resolution } => {
            let est = estimate_rho(*k, *resolution, samples_or(g, 100_000), stream);
            if g.json {
                json_line(&json!({
                    "value": est.mean,
                    "stderr": est.stderr,
                    "samples": est.samples,
                    "resolution": resolution,
                    "seed": g.seed,
                    "stream": g.stream,
                }))
            } else {
                format!(
                    "rho_{k} = {:.6} +- {:.6}\nresolution={resolution} samples={} seed={} stream={}\n",
                    est.mean, est.stderr, est.samples, g.seed, g.stream
                )
            }
        }
        Command::SampleTree(c) => {
            let (n, m) = (c.n as usize, c.m as usize);
            let trees = par_samples(stream, samples_or(g, 1), |rng| sample_uniform_tree(n, m, rng));
            let mut s = format!("# seed={} stream={}\n", g.seed, g.stream);
            for (idx, t) in trees.iter().enumerate() {
                if trees.len() > 1 {
                    let _ = writeln!(s, "# sample {}", idx + 1);
                }
                s.push_str(&t.to_string());
            }
            s
        }
        Command::SampleW(c) => {
            let (n, m) = (c.n as usize, c.m as usize);
            let ws = par_samples(stream, samples_or(g, 10), |rng| sample_w(n, m, rng));
            if g.json {
                json_line(&json!({ "w": ws, "seed": g.seed, "stream": g.stream }))
            } else {
                let mut out = Outcome::ok(ws.iter().map(|w| format!("{w}\n")).collect());
                out.stderr = format!("seed={} stream={}\n", g.seed, g.stream);
                return Ok(out);
            }
        }
        Command::Explore { file } => explore_output(g, &read_input(file)?)?,
        Command::Validate { suite } => {
            let reports = run_suite(suite, g.seed, g.samples.map(|s| s as usize))
                .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{suite}`")))?;
            let text = if g.json {
                json_line(&serde_json::to_value(&reports).expect("reports serialize"))
            } else {
                reports.iter().map(|r| format!("{r}\n")).collect()
            };
            let code = if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_VALIDATION_FAILED
            };
            return Ok(Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            });
        }
    };
    Ok(Outcome::ok(out))
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

fn count_output(g: &GlobalArgs, count: &str) -> String {
    if g.json {
        json_line(&json!({ "count": count }))
    } else {
        format!("{count}\n")
    }
}

fn read_input(file: &str) -> crate::error::Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

/// Renders the exploration of a graph file as text sections, JSON, or a
/// CSV of `(t, X°, X●, Z)` with blanks where a process is undefined.
pub fn explore_output(g: &GlobalArgs, text: &str) -> crate::error::Result<String> {
    let graph = BipartiteGraph::parse(text)?;
    let rec = explore(&graph)?;
    let (xw, xb) = prefix_processes(&rec.counts);
    let z = lukasiewicz(&rec.counts)?;
    let w = w_of_counts(&rec.counts)?;
    let tree = rebuild_tree(&rec)?;
    let candidates = candidate_edges(&tree)?;
    let fmt_pairs = |pairs: &[(Vertex, Vertex)]| {
        pairs.iter().map(|(a, b)| format!("{a}{b}")).collect::<Vec<_>>()
    };
    if g.csv {
        let mut s = String::from("t,X_white,X_black,Z\n");
        let cell = |v: &[i64], t: usize| v.get(t).map_or(String::new(), |x| x.to_string());
        for t in 0..=graph.n().max(graph.m()) {
            let _ = writeln!(
                s,
                "{t},{},{},{}",
                cell(xw.values(), t),
                cell(xb.values(), t),
                cell(z.values(), t)
            );
        }
        return Ok(s);
    }
    if g.json {
        return Ok(json_line(&json!({
            "n": graph.n(),
            "m": graph.m(),
            "chi_white": rec.counts.white(),
            "chi_black": rec.counts.black(),
            "gamma": rec.gamma.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            "white_order": rec.white_order,
            "black_order": rec.black_order,
            "X_white": xw.values(),
            "X_black": xb.values(),
            "Z": z.values(),
            "W": w,
            "surplus_edges": fmt_pairs(&rec.surplus_edges),
            "candidate_edges": fmt_pairs(&candidates),
        })));
    }
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let ujoin = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "[classes]\nn={} m={}", graph.n(), graph.m());
    let _ = writeln!(s, "[chi_white]\n{}", ujoin(rec.counts.white()));
    let _ = writeln!(s, "[chi_black]\n{}", ujoin(rec.counts.black()));
    let gamma: String = rec.gamma.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let _ = writeln!(s, "[gamma]\n{gamma}");
    let _ = writeln!(s, "[white_order]\n{}", ujoin(&rec.white_order));
    let _ = writeln!(s, "[black_order]\n{}", ujoin(&rec.black_order));
    let _ = writeln!(s, "[X_white]\n{}", join(xw.values()));
    let _ = writeln!(s, "[X_black]\n{}", join(xb.values()));
    let _ = writeln!(s, "[Z]\n{}", join(z.values()));
    let _ = writeln!(s, "[W]\n{w}");
    let _ = writeln!(s, "[surplus_edges]\n{}", fmt_pairs(&rec.surplus_edges).join(" "));
    let _ = writeln!(s, "[candidate_edges]\n{}", fmt_pairs(&candidates).join(" "));
    Ok(s)
}
