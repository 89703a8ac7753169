use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use desing::drivers::{corpus::CORPUS, emit_json, emit_text, parse_problem, solve};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Text,
}

/// Resolve, principalize or embedded-resolve an ideal given in a problem file.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// Problem file.
    #[arg(required_unless_present = "seed_corpus")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    emit: Emit,
    /// Overrides the problem's stage cap.
    #[arg(long)]
    max_stages: Option<usize>,
    /// Include every chart's trace for each stage.
    #[arg(long)]
    trace: bool,
    /// Run the built-in golden problems and report pass/fail.
    #[arg(long)]
    seed_corpus: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed_corpus {
        let mut failed = 0;
        for golden in CORPUS {
            match golden.check() {
                Ok(Ok(())) => println!("PASS {}", golden.name),
                Ok(Err(msg)) => {
                    failed += 1;
                    println!("FAIL {}: {}", golden.name, msg);
                }
                Err(e) => {
                    failed += 1;
                    println!("FAIL {}: {}", golden.name, e);
                }
            }
        }
        return if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }
    let path = cli.input.expect("clap enforces the input");
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    };
    let mut problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    };
    if let Some(m) = cli.max_stages {
        problem.max_stages = m;
    }
    let tree = match solve(&problem, false, cli.trace) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match cli.emit {
        Emit::Json => println!("{}", emit_json(&tree)),
        Emit::Text => print!("{}", emit_text(&tree)),
    }
    ExitCode::SUCCESS
}
