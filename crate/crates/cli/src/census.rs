//! The `census` subcommand: every decision procedure on every triple in a
//! box, with a CSV of the per-triple results.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use lrvanish::polytope::{build_constraints, decide_vanishing_with, dilate_check, DecideOptions};
use lrvanish::schur::{is_graham_positive, variables_for, Expander};
use lrvanish::tableau::enumerate_tableaux;
use lrvanish::{Error, Partition};
use rayon::prelude::*;
use serde::Serialize;

use crate::{EXIT_BUDGET, EXIT_DISAGREE};

#[derive(Args)]
pub struct CensusArgs {
    /// Bounding box for lambda and nu, as ROWSxCOLS.
    #[arg(long = "box", value_parser = parse_box, default_value = "3x3")]
    bounds: (usize, u32),
    /// Largest |mu|.
    #[arg(long, default_value_t = 4)]
    mu_max: u32,
    /// Write one CSV row per triple here ("-" for stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn parse_box(text: &str) -> Result<(usize, u32), String> {
    let (r, c) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got {text:?}"))?;
    let rows = r.trim().parse().map_err(|e| format!("rows: {e}"))?;
    let cols = c.trim().parse().map_err(|e| format!("cols: {e}"))?;
    Ok((rows, cols))
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub lambda: String,
    pub mu: String,
    pub nu: String,
    pub lp_feasible: bool,
    pub tableau_count_found: usize,
    pub oracle_nonzero: bool,
    pub agree: bool,
}

#[derive(Debug, Clone)]
struct Failure {
    lambda: Partition,
    mu: Partition,
    nu: Partition,
    what: String,
}

impl Failure {
    fn weight(&self) -> (u64, Vec<u32>, Vec<u32>, Vec<u32>) {
        (
            self.lambda.size() + self.mu.size() + self.nu.size(),
            self.lambda.parts().to_vec(),
            self.mu.parts().to_vec(),
            self.nu.parts().to_vec(),
        )
    }
}

struct PairOutcome {
    rows: Vec<CensusRow>,
    failures: Vec<Failure>,
}

fn lp_verdict(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    let options = DecideOptions {
        witness: false,
        ..DecideOptions::default()
    };
    !decide_vanishing_with(lambda, mu, nu, options).vanishes
}

fn check_pair(
    expanders: &mut HashMap<usize, Expander>,
    lambda: &Partition,
    mu: &Partition,
    nus: &[Partition],
) -> Result<PairOutcome, Error> {
    let mut out = PairOutcome {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    let mut expansions = HashMap::new();
    for nu in nus {
        let fail = |what: String| Failure {
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu: nu.clone(),
            what,
        };
        let feasible = lp_verdict(lambda, mu, nu);
        let count = enumerate_tableaux(lambda, mu, nu)?.len();
        let n = variables_for(lambda, mu, nu);
        if let std::collections::hash_map::Entry::Vacant(slot) = expansions.entry(n) {
            let e = expanders.entry(n).or_insert_with(|| Expander::new(n)).expand(lambda, mu)?;
            for (rho, c) in &e {
                if !is_graham_positive(c) {
                    out.failures.push(Failure {
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        nu: rho.clone(),
                        what: format!("coefficient {c} is not Graham positive"),
                    });
                }
            }
            slot.insert(e);
        }
        let nonzero = expansions[&n].get(nu).is_some_and(|c| !c.is_zero());
        let agree = feasible == (count > 0) && feasible == nonzero;
        if !agree {
            out.failures.push(fail(format!(
                "lp feasible {feasible}, {count} tableaux, oracle nonzero {nonzero}"
            )));
        }
        for factor in [2, 3] {
            if lp_verdict(&lambda.scale(factor), &mu.scale(factor), &nu.scale(factor)) != feasible {
                out.failures.push(fail(format!("saturation fails at N = {factor}")));
            }
        }
        for factor in [1, 2, 3, 7] {
            if !dilate_check(lambda, mu, nu, factor) {
                out.failures.push(fail(format!("dilation identity fails at N = {factor}")));
            }
        }
        if !build_constraints(lambda, mu, nu).is_combinatorial() {
            out.failures.push(fail("coefficient outside {-1,0,1}".into()));
        }
        out.rows.push(CensusRow {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
            nu: nu.to_string(),
            lp_feasible: feasible,
            tableau_count_found: count,
            oracle_nonzero: nonzero,
            agree,
        });
    }
    Ok(out)
}

fn write_csv(path: &PathBuf, rows: &[CensusRow]) -> Result<(), String> {
    let sink: Box<dyn std::io::Write> = if path.as_os_str() == "-" {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?)
    };
    let mut writer = csv::Writer::from_writer(sink);
    for row in rows {
        writer.serialize(row).map_err(|e| e.to_string())?;
    }
    writer.flush().map_err(|e| e.to_string())
}

pub fn run(args: CensusArgs) -> ExitCode {
    let (rows, cols) = args.bounds;
    let boxed = Partition::in_box(rows, cols);
    let mus = Partition::up_to_size(args.mu_max);
    let pairs: Vec<(Partition, Partition)> = boxed
        .iter()
        .flat_map(|l| mus.iter().map(move |m| (l.clone(), m.clone())))
        .collect();

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(crate::EXIT_USAGE);
        }
    };
    let outcomes: Result<Vec<PairOutcome>, Error> = pool.install(|| {
        pairs
            .par_iter()
            .map_init(HashMap::new, |expanders, (l, m)| check_pair(expanders, l, m, &boxed))
            .collect()
    });
    let outcomes = match outcomes {
        Ok(o) => o,
        Err(e @ Error::BudgetExceeded { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_BUDGET);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DISAGREE);
        }
    };
    let mut census_rows = Vec::new();
    let mut failures = Vec::new();
    for o in outcomes {
        census_rows.extend(o.rows);
        failures.extend(o.failures);
    }
    if let Some(path) = &args.csv {
        if let Err(msg) = write_csv(path, &census_rows) {
            eprintln!("error: {msg}");
            return ExitCode::from(crate::EXIT_USAGE);
        }
    }
    let nonvanishing = census_rows.iter().filter(|r| r.lp_feasible).count();
    eprintln!(
        "census: lambda, nu in {rows}x{cols}, |mu| <= {}: {} triples, {nonvanishing} nonvanishing",
        args.mu_max,
        census_rows.len()
    );
    let disagreements = census_rows.iter().filter(|r| !r.agree).count();
    println!("{disagreements} disagreements");
    if failures.is_empty() {
        return ExitCode::SUCCESS;
    }
    let worst = failures.iter().min_by_key(|f| f.weight()).expect("nonempty");
    println!("{} failed checks", failures.len());
    println!(
        "minimal reproducer: lambda=({}) mu=({}) nu=({}): {}",
        worst.lambda, worst.mu, worst.nu, worst.what
    );
    ExitCode::from(EXIT_DISAGREE)
}
