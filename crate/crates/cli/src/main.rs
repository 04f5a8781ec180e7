use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = vida_cli::Cli::parse();
    match vida_cli::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", vida_cli::error_chain(&e));
            ExitCode::FAILURE
        }
    }
}
