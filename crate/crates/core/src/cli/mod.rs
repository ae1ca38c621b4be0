//! The `reclab` command line: `run`, `verify` and `gen`.
//!
//! Exit codes: 0 on success, 1 when `--require-witness` (or
//! `--strict-precision`) is not met or a report fails verification, 2 on
//! configuration errors.

pub mod config;
pub mod report;
pub mod run;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{load_config, parse_config, ExperimentConfig};
pub use report::{canonical_hash, Report, ReportOutcome};
pub use run::{run_all, run_experiment};
pub use verify::{verify_path, verify_report};

#[derive(Debug, Parser)]
#[command(name = "reclab", version, about = "Recurrence sets, return times and finite witness search")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "RECLAB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiments in a TOML config and write a JSON report.
    Run {
        config: PathBuf,
        /// Report path; the report goes to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Exit 1 unless every searching experiment found a witness.
        #[arg(long)]
        require_witness: bool,
        /// Exit 1 when the orbit precision ran out anywhere.
        #[arg(long)]
        strict_precision: bool,
    },
    /// Recheck every witness in a report and its canonical hash.
    Verify { report: PathBuf },
    /// Print a set window as CSV (header `n`).
    Gen {
        /// fs, sg, delta-fs, delta-sg or ap.
        #[arg(long)]
        kind: String,
        /// Generator terms, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        p: Vec<i64>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        residue: i64,
        /// `lo:hi`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_window(s: &str) -> Option<(i64, i64)> {
    // the separator is the first ':' after the first character, so "-5:5" works
    let i = s.char_indices().skip(1).find(|&(_, c)| c == ':')?.0;
    Some((s[..i].trim().parse().ok()?, s[i + 1..].trim().parse().ok()?))
}

/// Runs the parsed command and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("reclab: cannot configure {n} threads: {e}");
            return 2;
        }
    }
    match cli.command {
        Command::Run { config, output, require_witness, strict_precision } => {
            let configs = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("reclab: {e}");
                    return 2;
                }
            };
            let report = match run_all(&configs) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("reclab: {e}");
                    return 2;
                }
            };
            let json = report.to_json();
            let written = match &output {
                Some(path) => run::write_atomic(path, json.as_bytes()),
                None => {
                    print!("{json}");
                    Ok(())
                }
            };
            if let Err(e) = written.and_then(|_| run::write_csv_dumps(&report)) {
                eprintln!("reclab: cannot write output: {e}");
                return 2;
            }
            let mut code = 0;
            for (i, r) in report.experiments.iter().enumerate() {
                if require_witness && r.outcome.has_witness() == Some(false) {
                    eprintln!("reclab: experiment {i} ({}) found no witness", r.config.kind());
                    code = 1;
                }
                if strict_precision && r.outcome.precision_failure() {
                    eprintln!("reclab: experiment {i} ({}) ran out of precision", r.config.kind());
                    code = 1;
                }
            }
            code
        }
        Command::Verify { report } => match verify_path(&report) {
            Ok(()) => {
                println!("ok");
                0
            }
            Err(f) => {
                eprintln!("reclab: verification failed: {f}");
                1
            }
        },
        Command::Gen { kind, p, d, modulus, residue, window, output } => {
            let Some((lo, hi)) = parse_window(&window) else {
                eprintln!("reclab: --window must be lo:hi");
                return 2;
            };
            let w = match run::gen_window(&kind, &p, d, modulus, residue, lo, hi) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("reclab: {e}");
                    return 2;
                }
            };
            let csv = run::window_csv(w.iter());
            match output {
                Some(path) => {
                    if let Err(e) = run::write_atomic(&path, &csv) {
                        eprintln!("reclab: cannot write output: {e}");
                        return 2;
                    }
                }
                None => print!("{}", String::from_utf8_lossy(&csv)),
            }
            0
        }
    }
}
