//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thinbasis_core::Nat;

fn parse_nat(s: &str) -> Result<Nat, String> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a nonnegative integer"));
    }
    s.parse::<Nat>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "thinbasis", version, about = "Construct, decompose and verify thin additive bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Shatrovskii,
    Gadic,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Construction parameters. The kind is inferred from `--aprime` or `--g`
/// when `--kind` is absent, and defaults to shatrovskii.
#[derive(Debug, Clone, Default, Args)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    /// Order of the basis.
    #[arg(long)]
    pub h: Option<usize>,

    /// Residues r_1 < ... < r_h, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_nat)]
    pub r: Option<Vec<Nat>>,

    /// Modulus step; defaults to the smallest valid choice.
    #[arg(long = "P", value_parser = parse_nat)]
    pub p: Option<Nat>,

    /// First scheme index; defaults to k0(h).
    #[arg(long, value_parser = parse_nat)]
    pub k1: Option<Nat>,

    /// Base of the digit construction.
    #[arg(long)]
    pub g: Option<u32>,

    /// Component (1-based) owning each digit position class mod h.
    #[arg(long = "class-of", value_delimiter = ',')]
    pub class_of: Option<Vec<usize>>,

    /// Coprime generators of the multiples construction.
    #[arg(long, value_delimiter = ',', value_parser = parse_nat)]
    pub aprime: Option<Vec<Nat>>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// Largest sampled x.
    #[arg(long, value_parser = parse_nat, default_value = "1048576")]
    pub x: Nat,

    /// First sampled x; later samples double.
    #[arg(long, value_parser = parse_nat, default_value = "1")]
    pub start: Nat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Show parameters, scheme rows and strata indices.
    Construct {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Scheme rows after k1 to list.
        #[arg(long, default_value_t = 5)]
        rows: u64,
        /// Largest strata index t to list.
        #[arg(long, default_value_t = 10)]
        ells: usize,
        /// Preview elements up to this bound.
        #[arg(long, value_parser = parse_nat, default_value = "100")]
        preview: Nat,
    },
    /// Write n as a sum of h basis elements.
    Decompose {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_parser = parse_nat)]
        n: Nat,
    },
    /// List basis elements up to x.
    Enumerate {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_parser = parse_nat)]
        x: Nat,
        #[arg(long, default_value_t = 10_000_000)]
        max_elements: u64,
    },
    /// Check coverage of [0, N], the counting lower bound and sampled decompositions.
    Verify {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long = "N", value_name = "N")]
        big_n: u64,
        /// Worker threads for coverage.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random n in [0, N] to decompose and re-check.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Tabulate A(x) and A(x) / x^(1/h) on a doubling schedule.
    Profile {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        schedule: ScheduleArgs,
    },
    /// Profile shatrovskii, g-adic and multiples bases of the same order.
    Compare {
        #[command(flatten)]
        basis: BasisArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        schedule: ScheduleArgs,
    },
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Self::Construct { output, .. }
            | Self::Decompose { output, .. }
            | Self::Enumerate { output, .. }
            | Self::Verify { output, .. }
            | Self::Profile { output, .. }
            | Self::Compare { output, .. } => output,
        }
    }
}
