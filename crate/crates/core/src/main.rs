use std::process::ExitCode;

use clap::Parser;
use symgraph::cli::{execute, Cli};

fn main() -> ExitCode {
    let config = Cli::parse().into_config();
    match execute(&config, std::io::stdout().lock()) {
        Ok(output) => {
            for v in &output.violations {
                eprintln!("warning: {v}");
            }
            if config.strict && !output.violations.is_empty() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
