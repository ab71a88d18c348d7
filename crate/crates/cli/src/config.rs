//! Scenario configuration.
//!
//! Grammar: one `key = value` per line; blank lines and lines starting with
//! `#` are ignored; keys may not repeat. Recognized keys:
//!
//! | key | meaning | default |
//! |---|---|---|
//! | `e_a`, `e_b` | atomic gaps | 1 |
//! | `omega_a`, `omega_b` | mode frequencies | 1 |
//! | `g_a`, `g_b` | couplings | 0.1 |
//! | `alpha` | entry angle in radians | π/4 |
//! | `t_start`, `t_end` | time range | 0, 20π |
//! | `n_samples` | number of time samples (≥ 2) | 201 |
//! | `outputs` | comma-separated columns, see [`Quantity`] | the six entropies |
//! | `output` | CSV path (stdout when absent) | — |
//!
//! Command-line `--set key=value` overrides are applied on top of the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use djcm::{Cavity, ModelParams};

use crate::error::CliError;

/// A column a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    EntropyAtoms,
    EntropyModes,
    EntropyAa,
    EntropyAb,
    EntropyBa,
    EntropyBb,
    ProbAtomA,
    ProbAtomB,
    ProbModeA,
    ProbModeB,
    AtomEnergy,
    Negativity,
}

impl Quantity {
    pub const ALL: [Quantity; 12] = [
        Quantity::EntropyAtoms,
        Quantity::EntropyModes,
        Quantity::EntropyAa,
        Quantity::EntropyAb,
        Quantity::EntropyBa,
        Quantity::EntropyBb,
        Quantity::ProbAtomA,
        Quantity::ProbAtomB,
        Quantity::ProbModeA,
        Quantity::ProbModeB,
        Quantity::AtomEnergy,
        Quantity::Negativity,
    ];

    pub const ENTROPIES: [Quantity; 6] = [
        Quantity::EntropyAtoms,
        Quantity::EntropyModes,
        Quantity::EntropyAa,
        Quantity::EntropyAb,
        Quantity::EntropyBa,
        Quantity::EntropyBb,
    ];

    pub fn column_name(self) -> &'static str {
        match self {
            Quantity::EntropyAtoms => "S_AB",
            Quantity::EntropyModes => "S_ab",
            Quantity::EntropyAa => "S_Aa",
            Quantity::EntropyAb => "S_Ab",
            Quantity::EntropyBa => "S_Ba",
            Quantity::EntropyBb => "S_Bb",
            Quantity::ProbAtomA => "P_A",
            Quantity::ProbAtomB => "P_B",
            Quantity::ProbModeA => "P_a",
            Quantity::ProbModeB => "P_b",
            Quantity::AtomEnergy => "U_AB",
            Quantity::Negativity => "N_AB",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column_name())
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.column_name() == s)
            .ok_or_else(|| format!("unknown output column `{s}`"))
    }
}

/// One simulation request.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: ModelParams<f64>,
    pub t_start: f64,
    pub t_end: f64,
    pub n_samples: usize,
    pub outputs: Vec<Quantity>,
    pub output: Option<PathBuf>,
}

const KEYS: [&str; 12] = [
    "e_a",
    "e_b",
    "omega_a",
    "omega_b",
    "g_a",
    "g_b",
    "alpha",
    "t_start",
    "t_end",
    "n_samples",
    "outputs",
    "output",
];

/// Raw key-value pairs before interpretation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = split_pair(line).ok_or_else(|| {
                CliError::Config(format!("line {}: expected `key = value`", n + 1))
            })?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::Config(format!(
                    "line {}: duplicate key `{k}`",
                    n + 1
                )));
            }
        }
        Ok(Self(map))
    }

    /// Applies `key=value` overrides; later entries win.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, overrides: &[S]) -> Result<(), CliError> {
        for o in overrides {
            let (k, v) = split_pair(o.as_ref()).ok_or_else(|| {
                CliError::Usage(format!("override `{}` is not key=value", o.as_ref()))
            })?;
            self.0.insert(k.to_string(), v.to_string());
        }
        Ok(())
    }

    pub fn insert(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    fn number(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("`{key}`: `{v}` is not a number"))),
        }
    }
}

fn split_pair(s: &str) -> Option<(&str, &str)> {
    let (k, v) = s.split_once('=')?;
    let (k, v) = (k.trim(), v.trim());
    (!k.is_empty() && !v.is_empty()).then_some((k, v))
}

impl Scenario {
    pub fn from_key_values(kv: &KeyValues) -> Result<Self, CliError> {
        if let Some(unknown) = kv.0.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Config(format!("unknown key `{unknown}`")));
        }
        let cavity = |e: &str, w: &str, g: &str| -> Result<Cavity<f64>, CliError> {
            Ok(Cavity::new(
                kv.number(e, 1.0)?,
                kv.number(w, 1.0)?,
                kv.number(g, 0.1)?,
            )?)
        };
        let params = ModelParams::new(
            cavity("e_a", "omega_a", "g_a")?,
            cavity("e_b", "omega_b", "g_b")?,
            kv.number("alpha", std::f64::consts::FRAC_PI_4)?,
        )?;
        let t_start = kv.number("t_start", 0.0)?;
        let t_end = kv.number("t_end", 20.0 * std::f64::consts::PI)?;
        let n_samples = match kv.0.get("n_samples") {
            None => 201,
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("`n_samples`: `{v}` is not a count")))?,
        };
        let outputs = match kv.0.get("outputs") {
            None => Quantity::ENTROPIES.to_vec(),
            Some(list) => list
                .split(',')
                .map(|s| s.trim().parse::<Quantity>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Config)?,
        };
        let scenario = Scenario {
            params,
            t_start,
            t_end,
            n_samples,
            outputs,
            output: kv.0.get("output").map(PathBuf::from),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        Self::from_key_values(&KeyValues::parse(text)?)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.t_start.is_finite() && self.t_end.is_finite()) {
            return Err(CliError::Config("time range must be finite".into()));
        }
        if self.t_start < 0.0 || self.t_end <= self.t_start {
            return Err(CliError::Config(format!(
                "need 0 <= t_start < t_end, got [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        if self.n_samples < 2 {
            return Err(CliError::Config(format!(
                "n_samples must be >= 2, got {}",
                self.n_samples
            )));
        }
        if self.outputs.is_empty() {
            return Err(CliError::Config("output selection is empty".into()));
        }
        Ok(())
    }

    /// Evenly spaced sample times including both endpoints.
    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let last = (self.n_samples - 1) as f64;
        (0..self.n_samples)
            .map(|k| {
                if k + 1 == self.n_samples {
                    self.t_end
                } else {
                    self.t_start + span * k as f64 / last
                }
            })
            .collect()
    }

    /// `key = value` lines that re-parse to this scenario.
    pub fn echo_lines(&self) -> Vec<String> {
        let a = self.params.cavity_a();
        let b = self.params.cavity_b();
        let mut lines = vec![
            format!("e_a = {}", a.atom_gap),
            format!("e_b = {}", b.atom_gap),
            format!("omega_a = {}", a.mode_frequency),
            format!("omega_b = {}", b.mode_frequency),
            format!("g_a = {}", a.coupling),
            format!("g_b = {}", b.coupling),
            format!("alpha = {}", self.params.alpha()),
            format!("t_start = {}", self.t_start),
            format!("t_end = {}", self.t_end),
            format!("n_samples = {}", self.n_samples),
            format!(
                "outputs = {}",
                self.outputs
                    .iter()
                    .map(|q| q.column_name())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        ];
        if let Some(path) = &self.output {
            lines.push(format!("output = {}", path.display()));
        }
        lines
    }

    /// Recovers the scenario from the `# key = value` lines of an emitted CSV.
    pub fn from_csv_header(csv: &str) -> Result<Self, CliError> {
        let echoed: String = csv
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim())
            .filter(|l| l.contains('='))
            .map(|l| format!("{l}\n"))
            .collect();
        Self::parse(&echoed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let s = Scenario::parse("").unwrap();
        assert!(s.params.is_identical());
        assert_eq!(s.n_samples, 201);
        assert_eq!(s.outputs, Quantity::ENTROPIES.to_vec());
        assert_eq!(s.output, None);
    }

    #[test]
    fn parses_full_config() {
        let text = "# detuned pair\n\
                    e_a = 1.0\n e_b = 1.3\nomega_a=0.9\nomega_b = 1\ng_a = 0.05\ng_b = 0.07\n\
                    alpha = 0.3\n\nt_start = 1\nt_end = 50\nn_samples = 11\n\
                    outputs = S_AB, P_A ,N_AB\noutput = out.csv\n";
        let s = Scenario::parse(text).unwrap();
        assert_eq!(s.params.cavity_b().atom_gap, 1.3);
        assert_eq!(s.params.cavity_a().mode_frequency, 0.9);
        assert_eq!(
            s.outputs,
            vec![
                Quantity::EntropyAtoms,
                Quantity::ProbAtomA,
                Quantity::Negativity
            ]
        );
        assert_eq!(s.times().len(), 11);
        assert_eq!(s.times()[0], 1.0);
        assert_eq!(*s.times().last().unwrap(), 50.0);
        assert_eq!(s.output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn config_errors() {
        for bad in [
            "e_a 1",
            "e_a = 1\ne_a = 2",
            "bogus = 1",
            "e_a = x",
            "g_a = -1",
            "alpha = 2",
            "t_start = 5\nt_end = 1",
            "t_start = -1",
            "n_samples = 1",
            "n_samples = 2.5",
            "outputs = S_XY",
        ] {
            assert!(
                matches!(Scenario::parse(bad), Err(CliError::Config(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn overrides_win() {
        let mut kv = KeyValues::parse("alpha = 0.2\ng_a = 0.3").unwrap();
        kv.apply_overrides(&["alpha=0.5", "n_samples = 3"]).unwrap();
        let s = Scenario::from_key_values(&kv).unwrap();
        assert_eq!(s.params.alpha(), 0.5);
        assert_eq!(s.params.cavity_a().coupling, 0.3);
        assert_eq!(s.n_samples, 3);
        assert!(matches!(
            kv.apply_overrides(&["novalue"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn echo_round_trip() {
        let s = Scenario::parse(
            "e_b = 1.3000000000000003\nalpha = 0.7853981633974483\nt_end = 0.1\n\
             outputs = S_ab,U_AB\noutput = x/y.csv",
        )
        .unwrap();
        let header: String = s.echo_lines().iter().map(|l| format!("# {l}\n")).collect();
        let csv = format!("# djcm simulate\n{header}t,S_ab,U_AB\n0,1,0\n");
        assert_eq!(Scenario::from_csv_header(&csv).unwrap(), s);
    }
}
