//! `fzeta`: build the supported compact sets from config, evaluate tube and
//! zeta functions, tabulate complex dimensions, run check suites and emit
//! reports.
//!
//! Exit codes: 0 all good, 1 check failure, 2 usage/parse error, 3 numeric
//! non-convergence.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};

use fzeta_core::Error;

#[derive(Parser)]
#[command(name = "fzeta", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
pub struct SetOpt {
    /// Set description: a config file path or `inline:kind=... key=value ...`.
    #[arg(long)]
    set: String,
}

#[derive(Subcommand)]
enum Command {
    /// Echo the normalized set description with dimension and gap data.
    Set {
        #[command(flatten)]
        set: SetOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Tube-function exports.
    Tube {
        #[command(subcommand)]
        cmd: TubeCmd,
    },
    /// Zeta-function evaluation.
    Zeta {
        #[command(subcommand)]
        cmd: ZetaCmd,
    },
    /// Complex-dimension tables.
    Dims {
        #[command(subcommand)]
        cmd: DimsCmd,
    },
    /// Run a named verification suite.
    Check {
        #[command(flatten)]
        set: SetOpt,
        /// One of: functional-eq, scaling, residue-content, closed-form, quasi, dti.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Quasiperiodic constructions.
    Quasi {
        #[command(subcommand)]
        cmd: QuasiCmd,
    },
    /// Full deterministic report for a set.
    Report {
        #[command(flatten)]
        set: SetOpt,
        /// Seed recorded in the report (reserved for sampled estimators).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum TubeCmd {
    /// Emit (t, |A_t|) columns, or (tau, G(tau)) with `--profile`.
    Export {
        #[command(flatten)]
        set: SetOpt,
        #[arg(long, default_value_t = 1e-6)]
        t_min: f64,
        #[arg(long, default_value_t = 1e-1)]
        t_max: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Emit the normalized log-profile G instead of the raw tube.
        #[arg(long)]
        profile: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Evaluate the zeta function on a grid of s values.
    Eval {
        #[command(flatten)]
        set: SetOpt,
        /// Real-part range `start:end:count`.
        #[arg(long)]
        re: String,
        /// Imaginary-part range `start:end:count`.
        #[arg(long, default_value = "0:0:1")]
        im: String,
        /// Neighborhood radius; family default when omitted.
        #[arg(long)]
        delta: Option<f64>,
        /// Evaluate the tube zeta instead of the distance zeta.
        #[arg(long)]
        tube: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum DimsCmd {
    /// Pole table: location, period, multiplicity, residue, principal flag.
    Table {
        #[command(flatten)]
        set: SetOpt,
        /// List lattice poles with |Im| up to this cap.
        #[arg(long, default_value_t = 15.0)]
        im_cap: f64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum QuasiCmd {
    /// Build a certified union of Cantor sets with common dimension.
    Build {
        /// Common box dimension in (0, 1).
        #[arg(long = "D", visible_alias = "dim")]
        dim: f64,
        /// Comma-separated integer moduli, e.g. 2,3,5.
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Periodogram of the union profile: (frequency, power) columns.
    Spectrum {
        #[arg(long = "D", visible_alias = "dim")]
        dim: f64,
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u32>,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        /// Record length in units of the longest period.
        #[arg(long, default_value_t = 5.0)]
        span_periods: f64,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::InvalidParameter(_)
        | Error::OverlappingHulls(_)
        | Error::NotSummable(_)
        | Error::MissingPoleData(_)
        | Error::Io(_)
        | Error::OutOfRange(_) => 2,
        Error::Divergent { .. } | Error::NonConvergent { .. } | Error::Inconclusive(_) => 3,
    }
}

fn main() {
    if let Ok(threads) = std::env::var("FRACTAL_ZETA_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Set { set, out } => commands::cmd_set(&set, &out),
        Command::Tube { cmd } => match cmd {
            TubeCmd::Export { set, t_min, t_max, samples, profile, out } => {
                commands::cmd_tube_export(&set, t_min, t_max, samples, profile, &out)
            }
        },
        Command::Zeta { cmd } => match cmd {
            ZetaCmd::Eval { set, re, im, delta, tube, out } => {
                commands::cmd_zeta_eval(&set, &re, &im, delta, tube, &out)
            }
        },
        Command::Dims { cmd } => match cmd {
            DimsCmd::Table { set, im_cap, out } => commands::cmd_dims_table(&set, im_cap, &out),
        },
        Command::Check { set, suite, out } => commands::cmd_check(&set, &suite, &out),
        Command::Quasi { cmd } => match cmd {
            QuasiCmd::Build { dim, moduli, out } => commands::cmd_quasi_build(dim, &moduli, &out),
            QuasiCmd::Spectrum { dim, moduli, samples, span_periods, out } => {
                commands::cmd_quasi_spectrum(dim, &moduli, samples, span_periods, &out)
            }
        },
        Command::Report { set, seed, out } => commands::cmd_report(&set, seed, &out),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}
