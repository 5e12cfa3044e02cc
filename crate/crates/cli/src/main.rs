use std::process::ExitCode;

use clap::Parser;
use edgestate_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("edgestate: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
