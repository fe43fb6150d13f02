use std::process::ExitCode;

use clap::Parser;
use latnp_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            eprintln!("latnp: error: {line}");
            ExitCode::FAILURE
        }
    }
}
