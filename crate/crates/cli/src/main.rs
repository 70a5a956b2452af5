//! `beck`: check the partition identities, tabulate their statistics, apply
//! the bijections and print series coefficients.
//!
//! Exit codes: 0 when everything checked holds, 1 when some record fails
//! (failures go to standard error), 2 on a usage or parameter error.

mod render;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::Format;

#[derive(Debug, Parser)]
#[command(name = "beck", version, about = "Exact checks of Beck-type partition identities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Check identities over a range of n, r and j.
    Verify(VerifyArgs),
    /// Tabulate class counts and the statistics b, b', E and T.
    Stats(StatsArgs),
    /// Apply a bijection to one partition.
    Map(MapArgs),
    /// Print coefficients of a truncated generating function.
    Series(SeriesArgs),
    /// Check an Euler pair, or search a window for a counterexample.
    Euler(EulerArgs),
    /// Compare computed values with an OEIS b-file.
    Oeis(OeisArgs),
}

#[derive(Debug, Args, Serialize)]
struct Grid {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_min: u64,
    /// Largest n, at most 120.
    #[arg(long, default_value_t = 20, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_max: u64,
    /// Comma-separated moduli, each at least 2.
    #[arg(long, value_delimiter = ',', default_value = "2", value_parser = value_parser!(u64).range(2..))]
    r: Vec<u64>,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=60))]
    j_max: u64,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    /// Comma-separated theorem names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    theorem: Vec<String>,
    #[command(flatten)]
    grid: Grid,
    /// Restrict residue-indexed identities to this t.
    #[arg(long, value_parser = value_parser!(u64).range(1..))]
    t: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
struct StatsArgs {
    #[command(flatten)]
    grid: Grid,
    /// Residue used for the E column.
    #[arg(long, default_value_t = 1, value_parser = value_parser!(u64).range(1..))]
    t: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum BijectionArg {
    Psi,
    PsiInv,
    Phi,
    PhiInv,
    Zeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ZetaArg {
    /// adjoin `(m_i r)^{k_i}` to a partition of O_{1,r}
    DivisibleParts,
    /// adjoin `(m_i)^{r k_i}` to a partition with one part repeated r+1..2r-1 times
    RepeatedMults,
}

#[derive(Debug, Args, Serialize)]
struct MapArgs {
    #[arg(long, value_enum)]
    bijection: BijectionArg,
    #[arg(long, value_parser = value_parser!(u64).range(2..))]
    r: u64,
    /// Parts as `5,3^2,1` (part^multiplicity allowed).
    #[arg(long, allow_hyphen_values = true)]
    partition: String,
    /// Distinct values m_1..m_j for zeta.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
    /// Multiplicities k_1..k_j for zeta.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u64>,
    #[arg(long, value_enum, default_value_t = ZetaArg::DivisibleParts)]
    variant: ZetaArg,
}

#[derive(Debug, Args, Serialize)]
struct SeriesArgs {
    /// `O`, `D`, `O_rt`, `D_rt`, `O_r0`, `Dbar`, `Oprime`, `Dprime`, `E` or `T`.
    #[arg(long)]
    which: String,
    #[arg(long, value_parser = value_parser!(u64).range(2..))]
    r: u64,
    #[arg(long, value_parser = value_parser!(u64).range(1..))]
    t: Option<u64>,
    /// Truncation degree in q, at most 120.
    #[arg(long = "n-max", default_value_t = 40, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_max: u64,
    /// Truncation degree in w.
    #[arg(long = "j-max", default_value_t = 8, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=60))]
    j_max: u64,
}

#[derive(Debug, Args, Serialize)]
struct EulerArgs {
    #[arg(long, default_value_t = 2, value_parser = value_parser!(u64).range(2..))]
    r: u64,
    /// Window 1..=bound on which S1 and S2 are given.
    #[arg(long, default_value_t = 30, value_parser = value_parser!(u64).range(1..=120))]
    bound: u64,
    /// Explicit S1 (comma-separated). Default: every integer in the window.
    #[arg(long, value_delimiter = ',', group = "s1_source")]
    s1: Vec<u64>,
    /// S1 = multiples of d.
    #[arg(long, group = "s1_source", value_parser = value_parser!(u64).range(1..))]
    s1_multiples_of: Option<u64>,
    /// S1 = start, start+step, ...
    #[arg(long, group = "s1_source", value_delimiter = ',', value_name = "START,STEP")]
    s1_arithmetic: Vec<u64>,
    /// Read S1 from a file of integers separated by whitespace or commas.
    #[arg(long, group = "s1_source")]
    s1_file: Option<PathBuf>,
    /// Override S2 (default: S1 minus r S1).
    #[arg(long, value_delimiter = ',')]
    s2: Option<Vec<u64>>,
    /// Theorem item 1..4; all four when omitted.
    #[arg(long, value_parser = value_parser!(u8).range(1..=4))]
    item: Option<u8>,
    #[arg(long, default_value_t = 30, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_max: u64,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=60))]
    j_max: u64,
    /// Search the window for unequal class counts instead of checking items.
    #[arg(long)]
    search: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Quantity {
    /// |O_{j,r}(n)| (or D with --family d)
    Count,
    /// b_{j,r}(n)
    B,
    /// b'_{j,r}(n)
    BPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum FamilyArg {
    O,
    D,
}

#[derive(Debug, Args, Serialize)]
struct OeisArgs {
    #[arg(long, default_value = "A090867")]
    id: String,
    #[arg(long, value_enum, default_value_t = Quantity::Count)]
    quantity: Quantity,
    #[arg(long, value_enum, default_value_t = FamilyArg::O)]
    family: FamilyArg,
    #[arg(long, default_value_t = 2, value_parser = value_parser!(u64).range(2..))]
    r: u64,
    #[arg(long, default_value_t = 1)]
    j: u64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_min: u64,
    #[arg(long, default_value_t = 40, allow_negative_numbers = true, value_parser = value_parser!(u64).range(..=120))]
    n_max: u64,
    /// Fetch the b-file from oeis.org when no local copy exists.
    #[arg(long)]
    online: bool,
    /// b-file cache (default: $BECK_OEIS_CACHE).
    #[arg(long)]
    oeis_cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run::dispatch(&cli) {
        Ok(run::Status::Pass) => ExitCode::SUCCESS,
        Ok(run::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
