//! `cqe`: one-shot capacity regions, trade-off curves and bound checks.
//!
//! Exit codes: 0 success, 1 a check suite failed, 2 bad configuration or
//! input, 3 dimension mismatch.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cqe_core::closedform::CurveKind;
use cqe_core::Error;

use output::{Emission, Format};

#[derive(Parser, Debug)]
#[command(name = "cqe", version, about = "Classical-quantum-entanglement trade-off toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CurveArg {
    Ds,
    Cef,
    Ce,
}

impl From<CurveArg> for CurveKind {
    fn from(c: CurveArg) -> Self {
        match c {
            CurveArg::Ds => CurveKind::Ds,
            CurveArg::Cef => CurveKind::Cef,
            CurveArg::Ce => CurveKind::ShorCe,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Region constants, corner vertices and child-protocol points.
    Region {
        /// dephasing:P, zflip:Q, erasure:EPS[:D], depolarizing[:D], identity[:D] or a JSON file
        #[arg(long)]
        channel: String,
        /// mu:X or a JSON file
        #[arg(long)]
        ensemble: String,
        #[arg(long, default_value_t = 2.0)]
        e_max: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form dephasing trade-off curve sampled over a μ grid.
    Curve {
        #[arg(value_enum)]
        curve: CurveArg,
        #[arg(long)]
        p: f64,
        /// start:stop:count
        #[arg(long, default_value = "0:0.5:101")]
        grid: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// CEF against time-sharing HSW with EAQ at equal classical rate.
    Compare {
        /// Dephasing parameter.
        #[arg(long, conflicts_with = "channel", required_unless_present = "channel")]
        p: Option<f64>,
        /// dephasing:P or erasure:EPS
        #[arg(long)]
        channel: Option<String>,
        #[arg(long, default_value = "0:0.5:101")]
        grid: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded random sweeps of the entropic identities and bounds.
    Check {
        /// Suite names, repeatable or comma separated; default is all.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::DimMismatch(_) => 3,
        _ => 2,
    }
}

fn emit(e: &Emission, out: &OutputArgs, sig: usize) -> Result<(), String> {
    let text = e.render(out.format, sig);
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|err| format!("cannot write {}: {err}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|err| format!("cannot write output: {err}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sig = match output::precision_from_env() {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (result, out) = match &cli.command {
        Command::Region {
            channel,
            ensemble,
            e_max,
            out,
        } => (commands::region(channel, ensemble, *e_max).map(|e| (e, true)), out),
        Command::Curve { curve, p, grid, out } => (commands::curve((*curve).into(), *p, grid).map(|e| (e, true)), out),
        Command::Compare { p, channel, grid, out } => {
            (commands::compare(*p, channel.as_deref(), grid).map(|e| (e, true)), out)
        }
        Command::Check {
            suite,
            trials,
            seed,
            out,
        } => (commands::check(suite, *trials, *seed), out),
    };
    match result {
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
        Ok((emission, ok)) => {
            if let Err(msg) = emit(&emission, out, sig) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
