//! `lrvanish`: decide whether Littlewood-Richardson polynomials vanish.
//!
//! Exit codes: 0 success or nonvanishing, 1 vanishes, 2 usage error,
//! 3 over a size budget, 4 census disagreement.

mod census;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lrvanish::lp::rational_string;
use lrvanish::poly::Poly;
use lrvanish::polytope::{build_constraints, decide_vanishing_with, DecideOptions, SystemJson};
use lrvanish::schur::{self, rewrite_in_beta};
use lrvanish::tableau::TableauJson;
use lrvanish::{parse_partition, Partition};
use serde::{Deserialize, Serialize};

pub const EXIT_VANISHES: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_DISAGREE: u8 = 4;

#[derive(Parser)]
#[command(name = "lrvanish", version, about = "Vanishing of Littlewood-Richardson polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether C^nu_{lambda,mu} vanishes.
    Vanish(VanishArgs),
    /// Expand s_lambda(X;Y) s_mu(X;Y) in factorial Schur polynomials.
    Expand(ExpandArgs),
    /// Cross-check every decision procedure over a box of triples.
    Census(census::CensusArgs),
    /// Print the constraint system for a triple.
    Dump(DumpArgs),
}

#[derive(Args)]
struct Triple {
    /// Comma-separated parts; "" is the empty partition.
    #[arg(short = 'l', long = "lambda", value_parser = parse_partition)]
    lambda: Partition,
    #[arg(short = 'm', long = "mu", value_parser = parse_partition)]
    mu: Partition,
    #[arg(short = 'n', long = "nu", value_parser = parse_partition)]
    nu: Partition,
}

#[derive(Args)]
struct Budget {
    /// Largest |lambda| + |mu| the expansion oracle will attempt.
    #[arg(long, default_value_t = 10)]
    max_size: u64,
    /// Largest number of x variables the expansion oracle will use.
    #[arg(long, default_value_t = 6)]
    max_vars: usize,
}

impl Budget {
    fn check(&self, lambda: &Partition, mu: &Partition, n: usize) -> Result<(), String> {
        let size = lambda.size() + mu.size();
        if size > self.max_size {
            return Err(format!("|lambda| + |mu| = {size} exceeds --max-size {}", self.max_size));
        }
        if n > self.max_vars {
            return Err(format!("{n} x variables exceed --max-vars {}", self.max_vars));
        }
        Ok(())
    }
}

#[derive(Args)]
struct VanishArgs {
    #[command(flatten)]
    triple: Triple,
    /// Search for an integer point and print the tableau it gives.
    #[arg(long)]
    witness: bool,
    /// Decide the classical coefficient c instead of C.
    #[arg(long)]
    classical: bool,
    /// Also expand with the factorial Schur oracle and compare.
    #[arg(long)]
    crosscheck: bool,
    #[arg(long)]
    json: bool,
    /// Node budget for the integer point search.
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(short = 'l', long = "lambda", value_parser = parse_partition)]
    lambda: Partition,
    #[arg(short = 'm', long = "mu", value_parser = parse_partition)]
    mu: Partition,
    /// Number of x variables; defaults to l(lambda) + l(mu).
    #[arg(long)]
    vars: Option<usize>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    triple: Triple,
    #[arg(long)]
    json: bool,
}

/// The `--json` report of `vanish`.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VanishReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub classical: bool,
    pub vanishes: bool,
    /// Coordinates as exact fraction strings.
    pub rational_point: Option<Vec<String>>,
    pub integer_point: Option<Vec<i64>>,
    pub witness: Option<TableauJson>,
    pub witness_budget_exceeded: bool,
    pub oracle_nonzero: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Vanish(args) => vanish(args),
        Command::Expand(args) => expand(args),
        Command::Census(args) => census::run(args),
        Command::Dump(args) => dump(args),
    }
}

fn oracle_vars(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    schur::variables_for(lambda, mu, nu)
}

fn vanish(args: VanishArgs) -> ExitCode {
    let Triple { lambda, mu, nu } = args.triple;
    let size_mismatch = lambda.size() + mu.size() != nu.size();
    let options = DecideOptions {
        witness: args.witness,
        max_nodes: args.max_nodes,
    };
    let verdict = if args.classical && size_mismatch {
        None
    } else {
        Some(decide_vanishing_with(&lambda, &mu, &nu, options))
    };
    let vanishes = verdict.as_ref().is_none_or(|v| v.vanishes);

    let oracle_nonzero = if args.crosscheck {
        let n = oracle_vars(&lambda, &mu, &nu);
        if let Err(msg) = args.budget.check(&lambda, &mu, n) {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_BUDGET);
        }
        match schur::coefficient(&lambda, &mu, &nu) {
            // The classical coefficient is C itself when the sizes balance.
            Ok(c) => Some(!c.is_zero() && !(args.classical && size_mismatch)),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    } else {
        None
    };

    let report = VanishReport {
        lambda,
        mu,
        nu,
        classical: args.classical,
        vanishes,
        rational_point: verdict
            .as_ref()
            .and_then(|v| v.rational_point.as_ref())
            .map(|pt| pt.iter().map(rational_string).collect()),
        integer_point: verdict.as_ref().and_then(|v| v.integer_point.clone()),
        witness: verdict.as_ref().and_then(|v| v.witness.as_ref()).map(|t| t.to_json()),
        witness_budget_exceeded: verdict.as_ref().is_some_and(|v| v.witness_budget_exceeded),
        oracle_nonzero,
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{}", if vanishes { "VANISHES" } else { "NONVANISHING" });
        if let Some(point) = &report.rational_point {
            println!("rational point: [{}]", point.join(", "));
        }
        if args.witness && !vanishes {
            if let Some(point) = &report.integer_point {
                let shown: Vec<String> = point.iter().map(i64::to_string).collect();
                println!("integer point: [{}]", shown.join(", "));
            }
            match verdict.as_ref().and_then(|v| v.witness.as_ref()) {
                Some(t) => print!("witness:\n{t}"),
                None if report.witness_budget_exceeded => println!("witness: search budget exceeded"),
                None => println!("witness: none found"),
            }
        }
        if let Some(nonzero) = oracle_nonzero {
            println!("oracle: {}", if nonzero { "nonzero" } else { "zero" });
        }
    }
    if oracle_nonzero.is_some_and(|nonzero| nonzero == vanishes) {
        eprintln!("error: the polytope and the oracle disagree");
        return ExitCode::from(EXIT_DISAGREE);
    }
    if vanishes {
        ExitCode::from(EXIT_VANISHES)
    } else {
        ExitCode::SUCCESS
    }
}

/// Polynomial text without a leading `+`.
pub fn plain(p: &Poly) -> String {
    let text = p.to_string();
    text.strip_prefix('+').map(str::to_string).unwrap_or(text)
}

fn expand(args: ExpandArgs) -> ExitCode {
    let n = args.vars.unwrap_or(args.lambda.len() + args.mu.len());
    if let Err(msg) = args.budget.check(&args.lambda, &args.mu, n) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_BUDGET);
    }
    let expansion = match schur::expand_product(&args.lambda, &args.mu, n) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut terms: Vec<_> = expansion.into_iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    let mut out = std::io::stdout().lock();
    for (nu, c) in terms {
        let line = if c.is_constant() {
            format!("({nu}): {}", plain(&c))
        } else {
            match rewrite_in_beta(&c) {
                Ok(b) => format!("({nu}): {} | beta: {}", plain(&c), plain(&b)),
                Err(e) => format!("({nu}): {} | beta: {e}", plain(&c)),
            }
        };
        let _ = writeln!(out, "{line}");
    }
    ExitCode::SUCCESS
}

fn dump(args: DumpArgs) -> ExitCode {
    let Triple { lambda, mu, nu } = args.triple;
    let system = build_constraints(&lambda, &mu, &nu);
    if args.json {
        let json: SystemJson = system.to_json();
        println!("{}", serde_json::to_string_pretty(&json).expect("system serializes"));
    } else {
        println!("# {} variables, {} rows", system.num_vars(), system.constraints().len());
        print!("{}", system.to_text());
    }
    ExitCode::SUCCESS
}
