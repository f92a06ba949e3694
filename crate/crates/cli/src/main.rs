mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("paircrofton {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let report = commands::execute(cli.command, &cli.run)?;
    let text = match cli.run.format {
        Format::Json => output::to_json(&report.json),
        Format::Csv => {
            let table = report.table.as_ref().ok_or_else(|| {
                CliError::Unsupported(format!("`{}` has no per-mode table; use --format json", cli.command.name()))
            })?;
            output::to_csv(table).map_err(|e| CliError::Io(e.to_string()))?
        }
    };
    match &cli.run.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
