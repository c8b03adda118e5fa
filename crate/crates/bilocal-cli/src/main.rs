//! `bilocal`: assess two-qubit X states, simulate the entanglement swap,
//! evaluate the bilocal inequality, analyze local filtering, and run the
//! built-in region scans.
//!
//! Exit codes: 0 success, 2 invalid input, 3 I/O failure.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use bilocal_cli::{
    assess_report, bilocal_report, emit, filter_report, parse_state_spec, resolve_out_path,
    scan_config_from_args, swap_report, BilocalMode, CliError, Emitted, OutFormat,
};

/// State specs take the form `family:v1,v2,...` with families
/// `x:pop00,pop01,pop10,pop11,coh_outer,coh_inner`, `t:c1,c2,c3`,
/// `werner:visibility`, `alpha:alpha`, and `hidden:alpha`.
#[derive(Debug, Parser)]
#[command(name = "bilocal", version, about = "Bilocal network analysis for two-qubit X states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Assess one source state: CHSH reach, concurrence, plane margins, and
    /// the identical-copy steering report.
    Assess {
        /// State spec, e.g. `t:-1,-1,-1` or `x:0.47,0.03,0.03,0.47,0.24,0`.
        state: String,
    },
    /// Evaluate the bilocal inequality for a two-source network.
    Bilocal {
        /// First source state spec.
        state1: String,
        /// Second source state spec.
        state2: String,
        /// Closed-form bound, numeric settings maximum, or both.
        #[arg(long, value_enum, default_value_t = BilocalMode::Both)]
        mode: BilocalMode,
    },
    /// Print the four Bell branches of the swap with conditional states.
    Swap {
        /// First source state spec.
        state1: String,
        /// Second source state spec.
        state2: String,
    },
    /// Apply a local filter to one source and report the CHSH reach.
    Filter {
        /// State spec to filter.
        state: String,
        /// Filter strength on the first qubit, in (0, 1].
        #[arg(long)]
        l1: f64,
        /// Filter strength on the second qubit, in (0, 1].
        #[arg(long)]
        l2: f64,
    },
    /// Run a built-in region scan and emit its records.
    Scan {
        /// Built-in figure number (2..=6).
        #[arg(long)]
        fig: Option<u8>,
        /// Flat key-value config file for a customized scan.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Uniform step override applied to every axis.
        #[arg(long)]
        step: Option<f64>,
        /// Output encoding.
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        /// Output file; stdout when omitted. Relative paths resolve under
        /// `BILOCAL_OUT_DIR` when that variable is set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Assess { state } => {
            let x = parse_state_spec(&state)?;
            print!("{}", assess_report(&x)?);
        }
        Command::Bilocal { state1, state2, mode } => {
            let x1 = parse_state_spec(&state1)?;
            let x2 = parse_state_spec(&state2)?;
            print!("{}", bilocal_report(&x1, &x2, mode)?);
        }
        Command::Swap { state1, state2 } => {
            let x1 = parse_state_spec(&state1)?;
            let x2 = parse_state_spec(&state2)?;
            print!("{}", swap_report(&x1, &x2));
        }
        Command::Filter { state, l1, l2 } => {
            let x = parse_state_spec(&state)?;
            print!("{}", filter_report(&x, l1, l2)?);
        }
        Command::Scan { fig, config, step, format, out } => {
            let cfg = scan_config_from_args(fig, config.as_deref(), step)?;
            let table = bilocal_cli::execute_scan(&cfg)?;
            let out = out.map(|path| {
                let base = std::env::var_os("BILOCAL_OUT_DIR").map(PathBuf::from);
                resolve_out_path(&path, base.as_deref())
            });
            match emit(&table, format, out.as_deref())? {
                Emitted::Stdout(text) => print!("{text}"),
                Emitted::File(path) => {
                    println!("wrote {}: {} records", path.display(), table.records.len())
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
