//! `segcount`: weighted counts of Motzkin paths, compositions and matrix
//! compositions from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3
//! enumeration bound exceeded.

mod weights;

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use segcount::bell::{partial_bell, partial_bell_oracle, WeightVector};
use segcount::compositions::{comp_weighted_closed, restricted_count};
use segcount::matrixcomp::{bipartite_weighted_closed, bounded_outdegree_tree_count, zero_one_count};
use segcount::motzkin::{enumerate_paths, weighted_sum_by_segments, weighted_sum_closed};
use segcount::verify::{self, Suite};
use segcount::{specialize, Error, Family, Integer, Polynomial, WeightSpec};

use weights::parse_weights;

#[derive(Parser)]
#[command(name = "segcount", version, about = "Weighted enumeration by up-run and flat-run statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial Bell polynomial B_{n,r}
    Bell(BellArgs),
    /// Motzkin paths with m up steps and k flat steps
    Motzkin {
        #[command(subcommand)]
        action: MotzkinAction,
    },
    /// Compositions with nonnegative parts
    Comp {
        #[command(subcommand)]
        action: CompAction,
    },
    /// Bipartite matrix compositions and bounded-outdegree plane trees
    Matcomp {
        #[command(subcommand)]
        action: MatcompAction,
    },
    /// Run identity suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BellArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// all-ones, symbolic, a named kind, or csv:<file>; x_i takes the t_i weight
    #[arg(long, default_value = "symbolic")]
    weights: String,
    /// Cross-check against the partition-sum evaluator
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct PathArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum MotzkinAction {
    /// Number of paths
    Count {
        #[command(flatten)]
        size: PathArgs,
        /// Count by enumeration instead of the closed form
        #[arg(long)]
        brute_force: bool,
    },
    /// Weighted sum over paths
    Weighted {
        #[command(flatten)]
        size: PathArgs,
        #[arg(long, default_value = "symbolic")]
        weights: String,
        /// Restrict to R u-segments and L h-segments, given as R,L
        #[arg(long, value_parser = parse_pair)]
        by_segments: Option<(usize, usize)>,
    },
    /// Weighted sums for every (m, k) with 2m+k = n, one row per n
    Table {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value = "all-ones")]
        weights: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CompAction {
    /// Number of compositions of m into j parts with k zeros
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Weighted sum over compositions of m into j parts with k zeros
    Weighted {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value = "symbolic")]
        weights: String,
    },
    /// Compositions into positive parts from an allowed set, or avoiding one part
    Restricted {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_delimiter = ',')]
        allowed: Option<Vec<usize>>,
        #[arg(long)]
        forbid: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MatcompAction {
    /// Number of p x j bipartite matrix compositions of m
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        j: usize,
    },
    /// Weighted sum over p x j bipartite matrix compositions of m
    Weighted {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value = "symbolic")]
        weights: String,
    },
    /// Number of p x j bipartite (0,1)-matrices with m ones
    ZeroOne {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        j: usize,
    },
    /// Plane trees on v vertices with every outdegree at most j
    Trees {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    CoreIdentities,
    Bell,
    Motzkin,
    Compositions,
    Matrixcomp,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Run identities one after another instead of in parallel
    #[arg(long)]
    sequential: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected R,L")?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// A command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => 3,
            Error::NotIntegral(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn all_ones() -> WeightSpec {
    parse_weights("all-ones").expect("built-in weights")
}

fn as_integer(p: &Polynomial, w: &WeightSpec) -> Result<Integer, Failure> {
    let v = specialize(p, w)?;
    if !v.is_integer() {
        return Err(Error::NotIntegral(v.to_string()).into());
    }
    Ok(v.to_integer())
}

fn bell(args: &BellArgs) -> Outcome {
    let w = parse_weights(&args.weights)?;
    let x = WeightVector::new(move |i| w.poly(Family::T, i as u32));
    let value = partial_bell(args.n, args.r, &x);
    if args.oracle {
        let oracle = partial_bell_oracle(args.n, args.r, &x)?;
        if oracle != value {
            return Err(Failure { code: 2, message: format!("oracle mismatch: recurrence {value}, partition sum {oracle}") });
        }
    }
    Ok(value.to_string())
}

fn render(format: Format, fields: serde_json::Value, value: String) -> String {
    match format {
        Format::Text => value,
        Format::Csv => {
            let keys: Vec<String> = fields.as_object().map(|o| o.values().map(|v| v.to_string()).collect()).unwrap_or_default();
            format!("{},{value}", keys.join(","))
        }
        Format::Json => {
            let mut obj = fields;
            obj["value"] = json!(value);
            obj.to_string()
        }
    }
}

fn motzkin(action: &MotzkinAction) -> Outcome {
    match action {
        MotzkinAction::Count { size, brute_force } => {
            let count = if *brute_force {
                Integer::from(enumerate_paths(size.m, size.k)?.count())
            } else {
                let w = all_ones();
                as_integer(&weighted_sum_closed(size.m, size.k, &w), &w)?
            };
            Ok(render(size.format, json!({"m": size.m, "k": size.k}), count.to_string()))
        }
        MotzkinAction::Weighted { size, weights, by_segments } => {
            let w = parse_weights(weights)?;
            let (p, fields) = match by_segments {
                Some((r, l)) => (
                    weighted_sum_by_segments(size.m, size.k, *r, *l, &w),
                    json!({"m": size.m, "k": size.k, "r": r, "l": l}),
                ),
                None => (weighted_sum_closed(size.m, size.k, &w), json!({"m": size.m, "k": size.k})),
            };
            Ok(render(size.format, fields, p.to_string()))
        }
        MotzkinAction::Table { max_n, weights, format } => {
            let w = parse_weights(weights)?;
            let rows: Vec<Vec<String>> = (0..=*max_n)
                .map(|n| (0..=n / 2).map(|m| weighted_sum_closed(m, n - 2 * m, &w).to_string()).collect())
                .collect();
            let out = match format {
                Format::Text => rows
                    .iter()
                    .enumerate()
                    .map(|(n, r)| format!("n={n}: {}", r.join(" | ")))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Csv => rows
                    .iter()
                    .enumerate()
                    .map(|(n, r)| format!("{n},{}", r.join(",")))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => json!(rows
                    .iter()
                    .enumerate()
                    .map(|(n, r)| json!({"n": n, "values": r}))
                    .collect::<Vec<_>>())
                .to_string(),
            };
            Ok(out)
        }
    }
}

fn comp(action: &CompAction) -> Outcome {
    match action {
        CompAction::Count { m, j, k } => {
            let w = all_ones();
            Ok(as_integer(&comp_weighted_closed(*m, *k, *j, &w), &w)?.to_string())
        }
        CompAction::Weighted { m, j, k, weights } => {
            let w = parse_weights(weights)?;
            Ok(comp_weighted_closed(*m, *k, *j, &w).to_string())
        }
        CompAction::Restricted { m, j, allowed, forbid } => {
            let allowed: Option<BTreeSet<usize>> = allowed.as_ref().map(|a| a.iter().copied().collect());
            Ok(restricted_count(*m, *j, allowed.as_ref(), *forbid)?.to_string())
        }
    }
}

fn matcomp(action: &MatcompAction) -> Outcome {
    match action {
        MatcompAction::Count { m, p, j } => {
            let w = all_ones();
            Ok(as_integer(&bipartite_weighted_closed(*m, *p, *j, &w), &w)?.to_string())
        }
        MatcompAction::Weighted { m, p, j, weights } => {
            let w = parse_weights(weights)?;
            Ok(bipartite_weighted_closed(*m, *p, *j, &w).to_string())
        }
        MatcompAction::ZeroOne { m, p, j } => Ok(zero_one_count(*p, *j, *m).to_string()),
        MatcompAction::Trees { v, j } => Ok(bounded_outdegree_tree_count(*v, *j)?.to_string()),
    }
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let suites = match args.suite {
        SuiteArg::CoreIdentities => vec![Suite::CoreIdentities],
        SuiteArg::Bell => vec![Suite::Bell],
        SuiteArg::Motzkin => vec![Suite::Motzkin],
        SuiteArg::Compositions => vec![Suite::Compositions],
        SuiteArg::Matrixcomp => vec![Suite::Matrixcomp],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let report = verify::run(&suites, args.max_n, !args.sequential)?;
    let out = match args.format {
        ReportFormat::Text => report.to_string(),
        ReportFormat::Json => serde_json::to_string_pretty(&report.records).expect("records serialize"),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure { code: 2, message: out })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Bell(args) => bell(args),
        Command::Motzkin { action } => motzkin(action),
        Command::Comp { action } => comp(action),
        Command::Matcomp { action } => matcomp(action),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code: 2, message }) if matches!(cli.command, Command::Verify(_)) => {
            println!("{message}");
            ExitCode::from(2)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
