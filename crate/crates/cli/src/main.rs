use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtoric_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", report.render(cli.format));
    ExitCode::from(report.code as u8)
}
