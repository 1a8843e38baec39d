use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rankcodes::cli::{run, Cli};
use rankcodes::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            eprint!("{}", out.stderr);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::WithReport(_, report) = &e {
                let _ = stdout.write_all(report.as_bytes());
            }
            let _ = stdout.flush();
            eprintln!("{}", e.one_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
