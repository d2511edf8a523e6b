use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use commtop_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.code as u8)
}
