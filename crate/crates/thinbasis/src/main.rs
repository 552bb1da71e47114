use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use thinbasis::cli::Cli;
use thinbasis::error::CliError;

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.command.output().out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thinbasis::execute(&cli).and_then(|run| emit(&cli, &run.rendered).map(|()| run.exit_code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
