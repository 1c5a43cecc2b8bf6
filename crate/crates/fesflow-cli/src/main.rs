//! `fesflow`: sweeps, tables and checks for single-channel exclusion
//! statistics transport and the associated information bounds.
//!
//! Every command writes a CSV data file and prints a one-line summary.
//! Exit status: 0 on success, 1 when a bound is violated or a check
//! fails, 2 on usage errors, 3 on IO errors.

mod commands;
mod config;
mod csvout;
mod matrixfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_grid_flags, RunConfig};

#[derive(Parser)]
#[command(
    name = "fesflow",
    version,
    about = "single-channel exclusion statistics transport and information bounds",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output CSV path (required here or in the config file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Trial count for qinfo-fuzz.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Grid override, repeatable: --grid key=value.
    #[arg(long = "grid", global = true, value_name = "KEY=VALUE")]
    grid: Vec<String>,

    /// Optional TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// General-bound ratio vs T_L/mu_L for degenerate channels (scaled right edge).
    Fig1,
    /// Tight-bound ratio vs the boson band edge -mu/T_L at three temperature ratios.
    Fig2,
    /// Tight-bound ratio vs T_L/mu for g in {1, 1/2, 1/4} at T_R = T_L/2.
    Fig3,
    /// Capacity-coefficient ratio curve over rational g.
    Fig4,
    /// Randomized bound sweep; keys: points, kind=general|tight.
    BoundsSweep,
    /// Exact vs asymptotic capacities; keys: nmax, time.
    Capacity,
    /// Exact partition counts vs the asymptotic count; keys: nmax, multiplicity.
    Partitions,
    /// Holevo-type fuzz checks; keys: kind=oneway|twoway|both, scenario=<file>.
    QinfoFuzz,
}

fn run() -> Result<ExitCode, (u8, String)> {
    let cli = Cli::parse();

    let usage = |m: String| (2u8, m);

    let file_cfg = match &cli.config {
        Some(path) => config::load_file(path).map_err(usage)?,
        None => config::FileConfig::default(),
    };

    let mut grid = file_cfg.grid;
    let flag_grid = parse_grid_flags(&cli.grid).map_err(|e| usage(e.0))?;
    grid.extend(flag_grid);

    let out = cli
        .out
        .or(file_cfg.out)
        .ok_or_else(|| usage("an output path is required (--out or config `out`)".to_owned()))?;

    let cfg = RunConfig {
        out,
        seed: cli.seed.or(file_cfg.seed).unwrap_or(0),
        trials: cli.trials.or(file_cfg.trials).unwrap_or(1000),
        grid,
    };

    let result = match cli.command {
        Command::Fig1 => commands::fig1(&cfg),
        Command::Fig2 => commands::fig2(&cfg),
        Command::Fig3 => commands::fig3(&cfg),
        Command::Fig4 => commands::fig4(&cfg),
        Command::BoundsSweep => commands::bounds_sweep(&cfg),
        Command::Capacity => commands::capacity(&cfg),
        Command::Partitions => commands::partitions(&cfg),
        Command::QinfoFuzz => commands::qinfo_fuzz(&cfg),
    }
    .map_err(|e| usage(e.0))?;

    std::fs::write(&cfg.out, result.csv.as_bytes())
        .map_err(|e| (3u8, format!("cannot write {}: {e}", cfg.out.display())))?;

    println!("{}", result.summary);
    Ok(if result.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
