//! Argument definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::commands::{
    cmd_compare_measures, cmd_figure, cmd_simulate, cmd_verify, Figure, FigureOptions, Tolerances,
    VerifyOptions,
};
use crate::config::{KeyValues, Scenario};
use crate::error::CliError;
use crate::table::write_stdout;
use crate::{DEFAULT_OUT_DIR, OUT_DIR_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "djcm",
    version,
    about = "Entanglement dynamics of the double Jaynes-Cummings model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep a scenario over time and write the selected columns as CSV.
    Simulate(ScenarioArgs),
    /// Write the datasets behind a figure, one CSV per curve.
    Figure(FigureArgs),
    /// Run the invariant suite on a seeded random parameter grid.
    Verify(VerifyArgs),
    /// Compare entropy, atomic energy and negativity at resonance.
    CompareMeasures(ScenarioArgs),
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Key-value scenario file.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// `key=value` override applied on top of the file; repeatable.
    #[arg(short = 's', long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Number of time samples (same as `--set n_samples=N`).
    #[arg(short = 'n', long)]
    pub samples: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// fig4a, fig4b, fig5, fig6 or all.
    pub name: String,
    /// Destination directory [default: $DJCM_OUT_DIR or ./figures].
    #[arg(short = 'd', long)]
    pub out_dir: Option<PathBuf>,
    /// Samples per curve.
    #[arg(short = 'n', long, default_value_t = 401)]
    pub samples: usize,
    /// Entry angle for fig4b, replacing G = 0.75.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = crate::commands::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Random parameter sets.
    #[arg(long, default_value_t = 200)]
    pub param_sets: usize,
    /// Time points per parameter set.
    #[arg(long, default_value_t = 20)]
    pub times: usize,
    /// Time samples per non-invariance run.
    #[arg(long, default_value_t = 120)]
    pub noninvariance_samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol_oracle: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol_identity: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_sum: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_peak_time: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_noninvariance: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_null: f64,
    /// Report destination; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

impl ScenarioArgs {
    /// Config file, then `--set` overrides, then dedicated flags.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let mut kv = match &self.config {
            Some(path) => KeyValues::parse(&read(path)?)?,
            None => KeyValues::default(),
        };
        kv.apply_overrides(&self.set)?;
        if let Some(n) = self.samples {
            kv.insert("n_samples", n.to_string());
        }
        if let Some(path) = &self.output {
            kv.insert("output", path.display().to_string());
        }
        Scenario::from_key_values(&kv)
    }
}

impl VerifyArgs {
    pub fn options(&self) -> Result<VerifyOptions, CliError> {
        let tolerances = Tolerances {
            oracle: self.tol_oracle,
            identity: self.tol_identity,
            sum: self.tol_sum,
            peak_time: self.tol_peak_time,
            noninvariance: self.tol_noninvariance,
            null_direction: self.tol_null,
        };
        let all = [
            tolerances.oracle,
            tolerances.identity,
            tolerances.sum,
            tolerances.peak_time,
            tolerances.noninvariance,
            tolerances.null_direction,
        ];
        if all.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::Usage(
                "tolerances must be finite and non-negative".into(),
            ));
        }
        Ok(VerifyOptions {
            seed: self.seed,
            param_sets: self.param_sets,
            times: self.times,
            noninvariance_samples: self.noninvariance_samples,
            tolerances,
            ..VerifyOptions::default()
        })
    }
}

/// `--out-dir`, else the environment override, else the default.
pub fn figure_dir(flag: Option<&Path>) -> PathBuf {
    match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(&args.scenario()?),
        Command::CompareMeasures(args) => cmd_compare_measures(&args.scenario()?),
        Command::Verify(args) => cmd_verify(&args.options()?, args.output.as_deref()).map(|_| ()),
        Command::Figure(args) => {
            let figures = if args.name == "all" {
                Figure::ALL.to_vec()
            } else {
                vec![args.name.parse()?]
            };
            let dir = figure_dir(args.out_dir.as_deref());
            let opts = FigureOptions {
                samples: args.samples,
                alpha: args.alpha,
            };
            let mut listing = String::new();
            for fig in figures {
                for path in cmd_figure(fig, &dir, &opts)? {
                    listing.push_str(&format!("{}\n", path.display()));
                }
            }
            write_stdout(&listing)
        }
    }
}
