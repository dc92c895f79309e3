use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use q2scaling_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(outcome) => {
            let _ = out.flush();
            if let Some(msg) = outcome.message {
                eprintln!("error: {msg}");
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(EXIT_USAGE)
        }
    }
}
