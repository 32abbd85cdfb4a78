#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use secmimo::error::Result;
use secmimo::experiments::{
    crossover_report, preset_names, preset_source, run_sweep, write_crossover_csv, write_outputs, write_xi_opt_csv,
    xi_opt_report, ExperimentConfig,
};

/// Secrecy-rate sweeps for AN-aided massive MIMO downlinks with
/// low-resolution DACs.
#[derive(Parser)]
#[command(name = "secmimo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Master seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte-Carlo realizations per point (overrides the config).
    #[arg(long, global = true)]
    realizations: Option<usize>,

    /// Evaluate only the closed-form bounds.
    #[arg(long, global = true)]
    bounds_only: bool,

    /// Output directory.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,

    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Run { config: PathBuf },
    /// Run one of the shipped figure presets.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["fig1", "fig2", "fig3a", "fig3b", "fig4"]))]
        name: String,
        /// Print the preset's config text instead of running it.
        #[arg(long)]
        show: bool,
    },
    /// Closed-form optimal power allocation at every point of a config.
    XiOpt { config: PathBuf },
    /// Correlation level where the lowest-resolution DAC overtakes the highest.
    Crossover { config: PathBuf },
}

/// A config path, or a preset name when no such file exists.
fn load_config(arg: &Path) -> Result<ExperimentConfig> {
    if !arg.exists() {
        if let Some(name) = arg.to_str().filter(|n| preset_names().any(|p| p == *n)) {
            return ExperimentConfig::preset(name);
        }
    }
    ExperimentConfig::load(arg)
}

fn apply_overrides(cli: &Cli, mut config: ExperimentConfig) -> Result<ExperimentConfig> {
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(n) = cli.realizations {
        config.realizations = n;
    }
    config.bounds_only |= cli.bounds_only;
    config.validate()?;
    Ok(config)
}

fn sweep(cli: &Cli, config: ExperimentConfig) -> Result<()> {
    let config = apply_overrides(cli, config)?;
    let tables = run_sweep(&config)?;
    for path in write_outputs(&config, &tables, &cli.out)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn report(cli: &Cli, config: &ExperimentConfig, suffix: &str, write: impl Fn(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    std::fs::create_dir_all(&cli.out)?;
    let path = cli.out.join(format!("{}_{suffix}.csv", config.name));
    std::fs::write(&path, &buf)?;
    std::io::stdout().write_all(&buf)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run { config } => sweep(cli, load_config(config)?),
        Command::Preset { name, show: true } => {
            print!("{}", preset_source(name).unwrap_or_default());
            Ok(())
        }
        Command::Preset { name, show: false } => sweep(cli, ExperimentConfig::preset(name)?),
        Command::XiOpt { config } => {
            let config = apply_overrides(cli, load_config(config)?)?;
            let rows = xi_opt_report(&config)?;
            report(cli, &config, "xi_opt", |buf| write_xi_opt_csv(&rows, buf))
        }
        Command::Crossover { config } => {
            let config = apply_overrides(cli, load_config(config)?)?;
            let rows = crossover_report(&config)?;
            report(cli, &config, "crossover", |buf| write_crossover_csv(&rows, buf))
        }
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    eprintln!("error kind={kind} message={message:?}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error kind=usage message={first:?}");
            return ExitCode::from(2);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return fail("config", &e.to_string()),
    };
    match pool.install(|| execute(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}
