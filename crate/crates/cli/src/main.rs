//! `beatty-dcs`: verify, analyze, and search disjoint covers of the
//! integers by rational Beatty sequences.
//!
//! Exit codes: 0 success, 1 semantic failure (not a cover), 2 input
//! error, 3 budget exhaustion.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use beatty_core::search::{search_conjecture, SearchConfig, DEFAULT_BUDGET};
use beatty_core::tg::TgSequence;
use beatty_core::{blocks_from_system, fraenkel_system, verify_dcs, BeattySystem, Error};
use beatty_dcs::document::{
    render, BoundDocument, PartitionDocument, SearchDocument, SystemDocument, TgDocument,
    VerifyDocument, WindowCheckDocument,
};

#[derive(Parser)]
#[command(name = "beatty-dcs", version, about = "Disjoint covers of the integers by rational Beatty sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a system document covers every integer exactly once
    Verify {
        /// System document path; stdin when omitted or "-"
        file: Option<PathBuf>,
        /// Cross-check the verdict by floor enumeration over [-W, W]
        #[arg(long, value_name = "W")]
        window: Option<i64>,
    },
    /// Print the canonical n-sequence cover with numerator 2^n - 1
    Fraenkel {
        #[arg(long)]
        n: u32,
    },
    /// Print the residue-block partition induced by a verified system
    Blocks {
        /// System document path; stdin when omitted or "-"
        file: Option<PathBuf>,
        /// Renormalize so the largest block is the prefix {0, .., q1-1}
        #[arg(long)]
        normalize: bool,
    },
    /// Analyze the gap structure of the orbit {a + i*d mod p}
    Tg {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        p: i64,
        /// Also evaluate the gap-count bound against this q1
        #[arg(long)]
        q1: Option<i64>,
    },
    /// Exhaustively search a numerator range for n-sequence covers
    Search {
        #[arg(long)]
        n: u32,
        /// Smallest numerator (defaults to n)
        #[arg(long)]
        pmin: Option<i64>,
        /// Largest numerator
        #[arg(long)]
        pmax: i64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Allow repeated denominators
        #[arg(long)]
        allow_multiplicity: bool,
        /// Cover-operation budget
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Verify { file, window } => cmd_verify(file, window),
        Command::Fraenkel { n } => cmd_fraenkel(n),
        Command::Blocks { file, normalize } => cmd_blocks(file, normalize),
        Command::Tg { a, d, q, p, q1 } => cmd_tg(a, d, q, p, q1),
        Command::Search {
            n,
            pmin,
            pmax,
            workers,
            allow_multiplicity,
            budget,
        } => cmd_search(n, pmin, pmax, workers, allow_multiplicity, budget),
    }
}

fn read_system(file: Option<PathBuf>) -> Result<BeattySystem> {
    let text = match file {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?,
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")?;
            text
        }
    };
    SystemDocument::parse(&text)?.build()
}

fn cmd_verify(file: Option<PathBuf>, window: Option<i64>) -> Result<ExitCode> {
    let system = read_system(file)?;
    let cert = verify_dcs(&system)?;
    let window_check = window.map(|w| window_check(&system, w, cert.ok));
    let agrees = window_check.as_ref().is_none_or(|c| c.agrees);
    let doc = VerifyDocument::new(&cert, system.len(), window_check);
    print!("{}", render(&doc));
    Ok(if cert.ok && agrees {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Counts cover multiplicity over `[-w, w]` by direct floor
/// enumeration, independently of the residue arithmetic.
fn window_check(system: &BeattySystem, w: i64, residue_verdict: bool) -> WindowCheckDocument {
    let w = w.abs();
    let mut counts = vec![0u32; (2 * w + 1) as usize];
    for spec in system.specs() {
        for v in spec.values_in_window(-w, w) {
            counts[(v + w) as usize] += 1;
        }
    }
    let exactly_one = counts.iter().all(|&c| c == 1);
    WindowCheckDocument {
        window: w,
        exactly_one,
        agrees: exactly_one == residue_verdict,
    }
}

fn cmd_fraenkel(n: u32) -> Result<ExitCode> {
    let system = fraenkel_system(n)?;
    let doc = SystemDocument::from_system(&system, Some(format!("fraenkel-{n}")));
    print!("{}", render(&doc));
    Ok(ExitCode::SUCCESS)
}

fn cmd_blocks(file: Option<PathBuf>, normalize: bool) -> Result<ExitCode> {
    let system = read_system(file)?;
    let partition = match blocks_from_system(&system) {
        Ok(partition) => partition,
        Err(Error::NotACover(failure)) => {
            eprintln!("not a disjoint cover: {failure}");
            return Ok(ExitCode::from(1));
        }
        Err(other) => return Err(other.into()),
    };
    let partition = if normalize {
        partition.normalize()
    } else {
        partition
    };
    print!("{}", render(&PartitionDocument::from(&partition)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_tg(a: i64, d: i64, q: i64, p: i64, q1: Option<i64>) -> Result<ExitCode> {
    let tg = TgSequence::new(a, d, q, p)?;
    let bound = match q1 {
        Some(q1) => Some(BoundDocument::new(
            q1,
            &tg.gap_bound(q1).context("--q1 hypothesis")?,
        )),
        None => None,
    };
    print!("{}", render(&TgDocument::new(&tg, bound)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(
    n: u32,
    pmin: Option<i64>,
    pmax: i64,
    workers: usize,
    allow_multiplicity: bool,
    budget: u64,
) -> Result<ExitCode> {
    let config = SearchConfig {
        n,
        p_min: pmin.unwrap_or(n as i64),
        p_max: pmax,
        require_distinct: !allow_multiplicity,
        workers,
        budget,
    };
    let report = match search_conjecture(&config) {
        Ok(report) => report,
        Err(err @ Error::BudgetProjection { .. }) => {
            eprintln!("error: {err}");
            return Ok(ExitCode::from(3));
        }
        Err(other) => return Err(other.into()),
    };
    print!("{}", render(&SearchDocument::from(&report)));
    Ok(if report.complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
