use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use friable_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.common().format;
    match run(cli) {
        Ok(report) => {
            let text = match report.render(format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(5);
                }
            };
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(5);
            }
            if report.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
