//! Figure datasets.
//!
//! Every curve is one CSV with columns `x,t,S_AB,S_ab,S_sum`, where `x = Λt`
//! (equal to `gt` at resonance) spans `[0, 2π]`. All curves use identical
//! cavities with `E = 1` and `g = 0.1`; a target `(λ/q)²` is realized through
//! the mode frequency and a target `G` through the entry angle.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use djcm::{derive_params, entropy_report, entry_function, Cavity, ModelParams};

use super::simulate::provenance;
use crate::error::CliError;
use crate::table::{format_value, SweepResult};

const ATOM_GAP: f64 = 1.0;
const COUPLING: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Resonance, `G = 1`.
    Fig4a,
    /// `(λ/q)² = 0.5`, `G = 0.75`.
    Fig4b,
    /// Resonance, three entry-function values.
    Fig5,
    /// `G = 1`, `(λ/q)² ∈ {1, 0.7, 0.5}`.
    Fig6,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig4a, Figure::Fig4b, Figure::Fig5, Figure::Fig6];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig4a => "fig4a",
            Figure::Fig4b => "fig4b",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
        }
    }

    fn curves(self) -> Vec<(String, f64, f64)> {
        match self {
            Figure::Fig4a => vec![("fig4a".into(), 1.0, 1.0)],
            Figure::Fig4b => vec![("fig4b".into(), 0.5, 0.75)],
            Figure::Fig5 => [1.0, 0.75, 0.5]
                .iter()
                .map(|&g| (format!("fig5_G{g}"), 1.0, g))
                .collect(),
            Figure::Fig6 => [1.0, 0.7, 0.5]
                .iter()
                .map(|&w| (format!("fig6_w{w}"), w, 1.0))
                .collect(),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!("unknown figure `{s}` (fig4a, fig4b, fig5, fig6)"))
            })
    }
}

#[derive(Debug, Clone)]
pub struct FigureOptions {
    pub samples: usize,
    /// Entry angle for fig4b in place of its `G = 0.75`.
    pub alpha: Option<f64>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            samples: 401,
            alpha: None,
        }
    }
}

/// Angle in `[0, π/4]` whose entry function equals `g`.
pub fn entry_angle_for(g: f64) -> Result<f64, CliError> {
    if !(0.0..=1.0).contains(&g) {
        return Err(CliError::Config(format!(
            "entry function value {g} outside [0, 1]"
        )));
    }
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_4);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entry_function(mid) < g {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let best = if (entry_function(lo) - g).abs() <= (entry_function(hi) - g).abs() {
        lo
    } else {
        hi
    };
    Ok(best)
}

/// Identical cavities with coupling weight `(λ/q)² = weight` at angle `alpha`.
pub fn figure_params(weight: f64, alpha: f64) -> Result<ModelParams<f64>, CliError> {
    if !(weight > 0.0 && weight <= 1.0) {
        return Err(CliError::Config(format!(
            "(lambda/q)^2 = {weight} outside (0, 1]"
        )));
    }
    let lambda = COUPLING / ATOM_GAP;
    let epsilon = 2.0 * lambda * (1.0 / weight - 1.0).sqrt();
    let cavity = Cavity::new(ATOM_GAP, ATOM_GAP * (1.0 + epsilon), COUPLING)?;
    Ok(ModelParams::identical(cavity, alpha)?)
}

fn curve(stem: &str, fig: Figure, p: &ModelParams<f64>, samples: usize) -> SweepResult {
    let d = derive_params(p);
    let rate = d.a.rabi_rate;
    let a = p.cavity_a();
    let metadata = vec![
        provenance(&format!("figure {fig}")),
        format!("curve {stem}"),
        format!("abscissa x: Lambda*t with Lambda {}", format_value(rate)),
        format!(
            "identical cavities: E {} omega {} g {} alpha {}",
            a.atom_gap,
            a.mode_frequency,
            a.coupling,
            p.alpha()
        ),
        format!(
            "coupling weight (lambda/q)^2 {} entry function G {}",
            format_value(d.a.coupling_weight()),
            format_value(entry_function(p.alpha()))
        ),
    ];
    let columns = ["x", "t", "S_AB", "S_ab", "S_sum"]
        .map(String::from)
        .to_vec();
    let mut out = SweepResult::new(metadata, columns);
    let last = (samples - 1) as f64;
    for k in 0..samples {
        let x = TAU * k as f64 / last;
        let t = x / rate;
        let r = entropy_report(&d, p, t);
        out.rows
            .push(vec![x, t, r.atoms, r.modes, r.atoms_plus_modes]);
    }
    out
}

/// File name and table of every curve of `fig`.
pub fn figure_datasets(
    fig: Figure,
    opts: &FigureOptions,
) -> Result<Vec<(String, SweepResult)>, CliError> {
    if opts.samples < 2 {
        return Err(CliError::Usage(format!(
            "need at least 2 samples, got {}",
            opts.samples
        )));
    }
    let mut out = Vec::new();
    for (stem, weight, g) in fig.curves() {
        let alpha = match (fig, opts.alpha) {
            (Figure::Fig4b, Some(a)) => a,
            _ => entry_angle_for(g)?,
        };
        let p = figure_params(weight, alpha)?;
        let table = curve(&stem, fig, &p, opts.samples);
        table.validate().map_err(CliError::Verification)?;
        out.push((format!("{stem}.csv"), table));
    }
    Ok(out)
}

/// Writes every curve of `fig` into `dir`, returning the paths.
pub fn cmd_figure(fig: Figure, dir: &Path, opts: &FigureOptions) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for (name, table) in figure_datasets(fig, opts)? {
        let path = dir.join(name);
        table.write(Some(&path))?;
        written.push(path);
    }
    Ok(written)
}
