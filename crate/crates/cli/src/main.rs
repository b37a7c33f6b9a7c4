use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use hurwitz_cli::{parse_args, run, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&config) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.output.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_IO as u8);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
