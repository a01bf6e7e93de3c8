use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use primcover_cli::{error_message, exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("PRIMCOVER_THREADS").ok();
    let cfg = match RunConfig::from_cli(cli, threads.as_deref()) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(k) = cfg.threads {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    match run(&cfg) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {}", error_message(&err));
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
