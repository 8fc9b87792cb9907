//! Batch front end: parse a session file describing rings, orders,
//! polynomials, ideals, valuations and commands; execute it; emit a JSON
//! report and optional SVG plots of planar bodies.

use clap::Parser;
use khovanskii_cli::{engine, session};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "khovanskii",
    about = "Subalgebra bases of quotient rings and Newton-Okounkov body volumes, exactly"
)]
struct Cli {
    /// Session file to execute.
    #[arg(long)]
    session: PathBuf,

    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Directory for SVG plots of 2-dimensional bodies.
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Degree bound for certificate checks (default: twice the basis degree).
    #[arg(long)]
    degree_bound: Option<u32>,

    /// Seed echoed into the report for reproducing randomized test runs.
    #[arg(long)]
    seed: Option<u64>,

    /// Include wall-clock timings in the report (off by default so reports
    /// are byte-stable).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.session) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", cli.session.display());
            return ExitCode::from(2);
        }
    };
    let parsed = match session::parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let opts = engine::RunOptions {
        degree_bound: cli.degree_bound,
        seed: cli.seed,
        timings: cli.timings,
        svg_dir: cli.svg,
    };
    let (report, ok) = engine::run_session(&parsed, &opts);
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{rendered}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
