use clap::{Args, Parser, Subcommand, ValueEnum};

use arithderiv::factorint::DEFAULT_SIEVE_LIMIT;
use arithderiv::identities::OutputFormat;

/// Arithmetic derivative, Dirichlet convolution and identity sweeps.
///
/// Exit codes: 0 success or identity holds, 1 counterexample found,
/// 2 usage, domain or resource error.
#[derive(Debug, Parser)]
#[command(name = "arithderiv", version)]
pub struct Cli {
    /// Largest sieve or table any command may build.
    #[arg(long, global = true, env = "ARITHDERIV_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    pub sieve_limit: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Plain => OutputFormat::Plain,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one catalog function at n.
    Eval {
        /// delta, id, one, eps, phi, omega, mu, tau, sigma, B, phi_en
        function: String,
        n: String,
    },
    /// Tabulate catalog functions for n = 1..=max.
    Table {
        #[arg(required = true)]
        functions: Vec<String>,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dirichlet convolution (f*g)(n).
    Convolve {
        f: String,
        g: String,
        n: String,
        /// Use the multiplicative or derivative fast path and check it
        /// against the divisor sum.
        #[arg(long)]
        fast: bool,
    },
    /// Sweep an identity: theorem1, lemma2, prop6, series, eq11, leibniz.
    Verify(VerifyArgs),
    /// Truncated Dirichlet series of f, f*g, f.g or delta_tau.
    Series {
        term: String,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        terms: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub identity: String,
    #[arg(long)]
    pub max: Option<u64>,
    /// Multiplicative function for theorem1 and lemma2.
    #[arg(long = "f")]
    pub function: Option<String>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub terms: Option<u64>,
    #[arg(long)]
    pub coeff_max: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
