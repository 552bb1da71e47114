//! Command-line driver for `thinbasis-core`: argument handling, the threaded
//! coverage runner, and JSON, CSV and text output.
//!
//! Exit codes: 0 when every check passes, 1 when verification finds a gap or
//! a failed check, 2 for invalid arguments, 3 when a resource cap is hit.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod record;
pub mod render;
pub mod runner;

use cli::{Cli, Command};
use commands::VerifyOptions;
use error::{CliResult, EXIT_GAP, EXIT_OK};
use record::{Envelope, Output, SCHEMA_VERSION};

/// A finished run: the rendered output and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub envelope: Envelope,
    pub rendered: String,
    pub exit_code: u8,
}

/// 1 for a verification run with a failed check or an invalid decomposition,
/// 0 otherwise.
pub fn exit_code_for(output: &Output) -> u8 {
    match output {
        Output::Verify(v) if !v.passed => EXIT_GAP,
        Output::Decompose(d) if !(d.sum_ok && d.members_ok) => EXIT_GAP,
        _ => EXIT_OK,
    }
}

pub fn execute(cli: &Cli) -> CliResult<Execution> {
    let (construction, output) = match &cli.command {
        Command::Construct { basis, rows, ells, preview, .. } => {
            let b = basis.build()?;
            let report = commands::construct(&b, *rows, *ells, preview)?;
            (b.construction, Output::Construct(report))
        }
        Command::Decompose { basis, n, .. } => {
            let b = basis.build()?;
            let report = commands::decompose(&b, n)?;
            (b.construction, Output::Decompose(report))
        }
        Command::Enumerate { basis, x, max_elements, .. } => {
            let b = basis.build()?;
            let report = commands::enumerate(&b, x, *max_elements)?;
            (b.construction, Output::Enumerate(report))
        }
        Command::Verify { basis, big_n, jobs, seed, samples, .. } => {
            let opts = VerifyOptions {
                n: *big_n,
                jobs: *jobs,
                seed: *seed,
                samples: *samples,
                mem_cap_bytes: commands::mem_cap_from_env()?,
            };
            let b = basis.build()?;
            let report = commands::verify(&b, &opts)?;
            (b.construction, Output::Verify(report))
        }
        Command::Profile { basis, schedule, .. } => {
            let b = basis.build()?;
            let report = commands::profile(&b, schedule)?;
            (b.construction, Output::Profile(report))
        }
        Command::Compare { basis, schedule, .. } => {
            let (b, report) = commands::compare(basis, schedule)?;
            (b.construction, Output::Compare(report))
        }
    };
    let exit_code = exit_code_for(&output);
    let envelope = Envelope { schema_version: SCHEMA_VERSION, construction, output };
    let rendered = render::render(&envelope, cli.command.output().format)?;
    Ok(Execution { envelope, rendered, exit_code })
}
