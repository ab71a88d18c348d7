//! Invariant suite over a seeded random parameter grid.
//!
//! Every check records its worst observation, the limit it is held to and
//! the parameters where the worst case occurred. The rendered report has no
//! timings, so equal options give byte-identical output.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

use djcm::oracle::{
    branch_entropy, build_hamiltonian, entropy_samples, initial_state, negativity,
    noninvariance_evidence, phase_aligned_max_diff, reduced_density, single_excitation_energies,
    smallest_centered_singular_value, Propagator,
};
use djcm::{
    amplitudes, atom_photon_entropies_identical, derive_params, entropy_report, entry_function,
    negativity_closed_form, probabilities, stationary_energies, u_ab, Amplitudes, Cavity,
    DerivedParams, ModelParams, SIX_PAIRS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::simulate::provenance;
use crate::error::CliError;

/// Closed-form amplitude evaluator under test.
pub type AmplitudeFn = fn(&DerivedParams<f64>, &ModelParams<f64>, f64) -> Amplitudes<f64>;

pub const DEFAULT_SEED: u64 = 0x0D1C_2024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Closed form against the oracle: amplitudes, energies, branch entropies, negativity.
    pub oracle: f64,
    /// Normalization and `P = |r|²`.
    pub identity: f64,
    /// Conserved sum, resonance transfer, peak values and ground floor.
    pub sum: f64,
    /// Location of the atomic peak, in units of `Λt`.
    pub peak_time: f64,
    /// Lower bound on the smallest singular value for distinct cavities.
    pub noninvariance: f64,
    /// Upper bound on the smallest singular value of the identical-cavity block.
    pub null_direction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oracle: 1e-10,
            identity: 1e-12,
            sum: 1e-9,
            peak_time: 1e-6,
            noninvariance: 1e-6,
            null_direction: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub param_sets: usize,
    pub times: usize,
    /// Time samples per non-invariance run.
    pub noninvariance_samples: usize,
    pub tolerances: Tolerances,
    pub amplitude_fn: AmplitudeFn,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            param_sets: 200,
            times: 20,
            noninvariance_samples: 120,
            tolerances: Tolerances::default(),
            amplitude_fn: amplitudes::<f64>,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Pass iff observed ≤ limit.
    AtMost,
    /// Pass iff observed > limit.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub bound: Bound,
    pub observed: f64,
    pub limit: f64,
    pub samples: usize,
    /// Parameters at the worst observation.
    pub worst_at: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, bound: Bound, limit: f64) -> Self {
        let observed = match bound {
            Bound::AtMost => 0.0,
            Bound::Above => f64::INFINITY,
        };
        Self {
            name,
            bound,
            observed,
            limit,
            samples: 0,
            worst_at: None,
        }
    }

    fn record(&mut self, value: f64, at: impl FnOnce() -> String) {
        self.samples += 1;
        if self.observed.is_nan() {
            return;
        }
        let worse = value.is_nan()
            || match self.bound {
                Bound::AtMost => value > self.observed,
                Bound::Above => value < self.observed,
            };
        if worse {
            self.observed = value;
            self.worst_at = Some(at());
        }
    }

    pub fn passed(&self) -> bool {
        self.samples > 0
            && match self.bound {
                Bound::AtMost => self.observed <= self.limit,
                Bound::Above => self.observed > self.limit,
            }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub param_sets: usize,
    pub times: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", provenance("verify"));
        let _ = writeln!(
            s,
            "# seed {} param_sets {} times {}",
            self.seed, self.param_sets, self.times
        );
        for c in &self.checks {
            let (verdict, rel) = match (c.passed(), c.bound) {
                (true, Bound::AtMost) => ("PASS", "<="),
                (true, Bound::Above) => ("PASS", ">"),
                (false, Bound::AtMost) => ("FAIL", "<="),
                (false, Bound::Above) => ("FAIL", ">"),
            };
            let _ = write!(
                s,
                "{verdict} {:<28} observed {:.6e} required {rel} {:.1e} samples {}",
                c.name, c.observed, c.limit, c.samples
            );
            if !c.passed() {
                if let Some(at) = &c.worst_at {
                    let _ = write!(s, " at {at}");
                }
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "verification FAILED"
            }
        );
        s
    }
}

fn describe(p: &ModelParams<f64>) -> String {
    let (a, b) = (p.cavity_a(), p.cavity_b());
    format!(
        "E_A={} omega_A={} g_A={} E_B={} omega_B={} g_B={} alpha={}",
        a.atom_gap,
        a.mode_frequency,
        a.coupling,
        b.atom_gap,
        b.mode_frequency,
        b.coupling,
        p.alpha()
    )
}

fn describe_at(p: &ModelParams<f64>, t: f64) -> String {
    format!("{} t={t}", describe(p))
}

fn random_cavity(rng: &mut ChaCha8Rng, resonant: bool) -> Cavity<f64> {
    let e = rng.random_range(0.5..2.0);
    let detune: f64 = if resonant {
        0.0
    } else {
        rng.random_range(-0.3..0.3)
    };
    Cavity::new(e, e * (1.0 + detune), rng.random_range(0.02..0.3)).expect("positive draw")
}

/// Cycles through distinct detuned, identical detuned, identical resonant and
/// distinct resonant cavity pairs.
fn random_params(rng: &mut ChaCha8Rng, index: usize) -> ModelParams<f64> {
    let alpha = rng.random_range(0.0..FRAC_PI_2);
    let (a, b) = match index % 4 {
        0 => (random_cavity(rng, false), random_cavity(rng, false)),
        1 => {
            let c = random_cavity(rng, false);
            (c, c)
        }
        2 => {
            let c = random_cavity(rng, true);
            (c, c)
        }
        _ => (random_cavity(rng, true), random_cavity(rng, true)),
    };
    ModelParams::new(a, b, alpha).expect("alpha in range")
}

fn random_times(rng: &mut ChaCha8Rng, d: &DerivedParams<f64>, n: usize) -> Vec<f64> {
    let horizon = 5.0 * TAU / d.a.rabi_rate.min(d.b.rabi_rate);
    let mut times = vec![0.0];
    times.extend((1..n).map(|_| rng.random_range(0.0..horizon)));
    times
}

/// Location of the maximum of a unimodal `f` on `[lo, hi]`.
pub fn argmax_golden(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-14 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

struct Suite {
    normalization: CheckResult,
    amplitudes: CheckResult,
    energies: CheckResult,
    probability_identity: CheckResult,
    branch: CheckResult,
    conserved_sum: CheckResult,
    peak_value: CheckResult,
    peak_time: CheckResult,
    peak_bound: CheckResult,
    ground_floor: CheckResult,
    resonance: CheckResult,
    atom_photon: CheckResult,
    ordering: CheckResult,
    negativity: CheckResult,
    noninvariance: CheckResult,
    null_direction: CheckResult,
    degenerate: CheckResult,
}

impl Suite {
    fn new(tol: Tolerances) -> Self {
        use Bound::*;
        Self {
            normalization: CheckResult::new("normalization", AtMost, tol.identity),
            amplitudes: CheckResult::new("amplitudes_vs_oracle", AtMost, tol.oracle),
            energies: CheckResult::new("energies_vs_spectrum", AtMost, tol.oracle),
            probability_identity: CheckResult::new("probability_identity", AtMost, tol.identity),
            branch: CheckResult::new("branch_entropies_vs_oracle", AtMost, tol.oracle),
            conserved_sum: CheckResult::new("conserved_sum", AtMost, tol.sum),
            peak_value: CheckResult::new("peak_value", AtMost, tol.sum),
            peak_time: CheckResult::new("peak_time", AtMost, tol.peak_time),
            peak_bound: CheckResult::new("peak_before_resonant_time", AtMost, 1e-12),
            ground_floor: CheckResult::new("ground_floor", AtMost, tol.sum),
            resonance: CheckResult::new("resonance_transfer", AtMost, tol.sum),
            atom_photon: CheckResult::new("atom_photon_ceiling", AtMost, tol.sum),
            ordering: CheckResult::new("entropy_exceeds_negativity", Above, 0.0),
            negativity: CheckResult::new("negativity_vs_oracle", AtMost, tol.oracle),
            noninvariance: CheckResult::new("noninvariance_distinct", Above, tol.noninvariance),
            null_direction: CheckResult::new(
                "null_direction_identical",
                AtMost,
                tol.null_direction,
            ),
            degenerate: CheckResult::new("degenerate_alpha", AtMost, tol.oracle),
        }
    }

    fn into_checks(self) -> Vec<CheckResult> {
        vec![
            self.normalization,
            self.amplitudes,
            self.energies,
            self.probability_identity,
            self.branch,
            self.conserved_sum,
            self.peak_value,
            self.peak_time,
            self.peak_bound,
            self.ground_floor,
            self.resonance,
            self.atom_photon,
            self.ordering,
            self.negativity,
            self.noninvariance,
            self.null_direction,
            self.degenerate,
        ]
    }

    /// Closed form against the oracle at the given times.
    fn oracle_sweep(
        &mut self,
        p: &ModelParams<f64>,
        times: &[f64],
        amp: AmplitudeFn,
    ) -> Result<(), CliError> {
        let d = derive_params(p);
        let h = build_hamiltonian(p);
        let prop = Propagator::new(&h)?;
        let psi0 = initial_state(p.alpha());

        let mut closed_e = stationary_energies(&d, p);
        closed_e.sort_by(f64::total_cmp);
        let oracle_e = single_excitation_energies(&h)?;
        let e_dev = closed_e
            .iter()
            .zip(oracle_e)
            .map(|(c, o)| (c - o).abs())
            .fold(0.0, f64::max);
        self.energies.record(e_dev, || describe(p));

        for &t in times {
            let psi = prop.evolve(&psi0, t);
            let r = amp(&d, p, t);
            let norm_dev = (r.norm_sqr() - 1.0)
                .abs()
                .max((psi.norm() - 1.0).abs())
                .max(psi.leakage());
            self.normalization.record(norm_dev, || describe_at(p, t));
            let diff = phase_aligned_max_diff(&psi.single_excitation(), &r.as_array());
            self.amplitudes.record(diff, || describe_at(p, t));

            let closed = probabilities(&d, p, t);
            let direct = r.probabilities();
            let pr_dev = djcm::Subsystem::ALL
                .iter()
                .map(|&s| (closed.get(s) - direct.get(s)).abs())
                .fold((closed.total() - 1.0).abs(), f64::max);
            self.probability_identity
                .record(pr_dev, || describe_at(p, t));

            let report = entropy_report(&d, p, t);
            let mut b_dev = 0.0f64;
            for (mu, xi) in SIX_PAIRS {
                b_dev = b_dev.max((branch_entropy(&psi, mu, xi)? - report.pair(mu, xi)).abs());
            }
            self.branch.record(b_dev, || describe_at(p, t));

            if p.is_identical() {
                let dev = (report.atoms + report.modes - entry_function(p.alpha())).abs();
                self.conserved_sum.record(dev, || describe_at(p, t));
            }
        }
        Ok(())
    }

    /// Peak value, location and ground floor for both cavities.
    fn peaks(&mut self, p: &ModelParams<f64>) {
        let d = derive_params(p);
        let (s2, c2) = (p.alpha().sin().powi(2), p.alpha().cos().powi(2));
        for (cavity, dressed, weight, is_a) in [
            (p.cavity_a(), &d.a, s2, true),
            (p.cavity_b(), &d.b, c2, false),
        ] {
            let t = dressed.peak_time();
            let pr = probabilities(&d, p, t);
            let (atom, mode) = if is_a {
                (pr.atom_a, pr.mode_a)
            } else {
                (pr.atom_b, pr.mode_b)
            };
            self.peak_value
                .record((atom - dressed.coupling_weight() * weight).abs(), || {
                    describe_at(p, t)
                });
            self.ground_floor
                .record((mode - dressed.ground_floor() * weight).abs(), || {
                    describe_at(p, t)
                });
            self.peak_bound
                .record(t * 2.0 * cavity.coupling / PI - 1.0, || describe(p));

            // Locate the maximum without the closed-form peak time.
            let rate = dressed.rabi_rate;
            let excitation = |x: f64| {
                let pr = probabilities(&d, p, x / rate);
                if is_a {
                    pr.atom_a
                } else {
                    pr.atom_b
                }
            };
            if weight > 1e-6 {
                let x = argmax_golden(excitation, 0.0, PI);
                self.peak_time.record((x - FRAC_PI_2).abs(), || describe(p));
            }
        }
    }

    /// Resonant identical cavities at `α = π/4`: transfer, ceiling and measures.
    fn resonant_quarter(&mut self, p: &ModelParams<f64>) -> Result<(), CliError> {
        let d = derive_params(p);
        let g = p.cavity_a().coupling;
        let prop = Propagator::new(&build_hamiltonian(p))?;
        let psi0 = initial_state(p.alpha());
        let steps = 200;
        for k in 0..=steps {
            let gt = FRAC_PI_2 * k as f64 / steps as f64;
            let t = gt / g;
            let r = entropy_report(&d, p, t);
            let s2 = gt.sin().powi(2);
            let dev = (r.atoms - s2).abs().max((r.modes - (1.0 - s2)).abs());
            self.resonance.record(dev, || describe_at(p, t));

            let ap = atom_photon_entropies_identical(&d, p, t)?;
            let vals = [
                ap.atom_a_mode_a,
                ap.atom_b_mode_b,
                ap.atom_a_mode_b,
                ap.atom_b_mode_a,
            ];
            let (lo, hi) = vals
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                });
            let mut dev = hi - lo;
            if k == 0 || k == steps {
                dev = dev.max(hi.abs());
            } else if k == steps / 2 {
                dev = dev.max((hi - 0.5).abs()).max((lo - 0.5).abs());
            }
            self.atom_photon.record(dev, || describe_at(p, t));

            let rho = reduced_density(
                &prop.evolve(&psi0, t),
                &[djcm::Subsystem::AtomA, djcm::Subsystem::AtomB],
            )?;
            let n_oracle = negativity(&rho, djcm::Subsystem::AtomA)?;
            let n_closed = negativity_closed_form(u_ab(&d, p, t));
            self.negativity
                .record((n_oracle - n_closed).abs(), || describe_at(p, t));
            if k == steps / 2 {
                let quarter = 0.5f64.sqrt() - 0.5;
                let dev = (n_closed - quarter).abs().max((n_oracle - quarter).abs());
                self.negativity.record(dev, || describe_at(p, t));
            }
            if k > 0 && k < steps {
                self.ordering
                    .record(r.atoms - n_closed.max(n_oracle), || describe_at(p, t));
            }
        }
        Ok(())
    }

    fn noninvariance(
        &mut self,
        base: &Cavity<f64>,
        alpha: f64,
        samples: usize,
    ) -> Result<(), CliError> {
        // Only the atomic gap changes; scaling ω with it would keep a resonant
        // pair resonant, and at resonance Λ = g does not depend on E.
        let other = Cavity::new(1.3 * base.atom_gap, base.mode_frequency, base.coupling)?;
        let distinct = ModelParams::new(*base, other, alpha)?;
        let d = derive_params(&distinct);
        let horizon = 6.0 * TAU / d.a.rabi_rate.min(d.b.rabi_rate);
        let times: Vec<f64> = (0..samples)
            .map(|k| horizon * k as f64 / samples as f64)
            .collect();
        let sv = noninvariance_evidence(&distinct, &times)?;
        self.noninvariance.record(sv, || describe(&distinct));

        let same = ModelParams::identical(*base, alpha)?;
        let block = entropy_samples(&same, &times)?.columns(0, 2).into_owned();
        let null = smallest_centered_singular_value(&block)?;
        self.null_direction.record(null, || describe(&same));
        Ok(())
    }

    /// `α ∈ {0, π/2}`: the photon never enters one cavity.
    fn degenerate(
        &mut self,
        p: &ModelParams<f64>,
        times: &[f64],
        amp: AmplitudeFn,
    ) -> Result<(), CliError> {
        for alpha in [0.0, FRAC_PI_2] {
            let q = p.with_alpha(alpha)?;
            let d = derive_params(&q);
            let prop = Propagator::new(&build_hamiltonian(&q))?;
            let psi0 = initial_state(alpha);
            for &t in times {
                let psi = prop.evolve(&psi0, t);
                let r = amp(&d, &q, t);
                let mut dev = phase_aligned_max_diff(&psi.single_excitation(), &r.as_array());
                let report = entropy_report(&d, &q, t);
                dev = dev.max(report.atoms.abs()).max(report.modes.abs());
                for (mu, xi) in SIX_PAIRS {
                    let closed = report.pair(mu, xi);
                    if !(closed.is_finite() && (0.0..=1.0).contains(&closed)) {
                        dev = f64::NAN;
                    }
                    dev = dev.max((branch_entropy(&psi, mu, xi)? - closed).abs());
                }
                self.degenerate.record(dev, || describe_at(&q, t));
            }
        }
        Ok(())
    }
}

/// Runs the full invariant suite.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    if opts.param_sets == 0 || opts.times == 0 {
        return Err(CliError::Usage(
            "param-sets and times must be positive".into(),
        ));
    }
    if opts.noninvariance_samples <= SIX_PAIRS.len() {
        return Err(CliError::Usage(format!(
            "non-invariance needs more than {} samples, got {}",
            SIX_PAIRS.len(),
            opts.noninvariance_samples
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut suite = Suite::new(opts.tolerances);
    let amp = opts.amplitude_fn;

    for i in 0..opts.param_sets {
        let p = random_params(&mut rng, i);
        let times = random_times(&mut rng, &derive_params(&p), opts.times);
        suite.oracle_sweep(&p, &times, amp)?;
        suite.peaks(&p);
        if i < 8 {
            suite.degenerate(&p, &times, amp)?;
        }
    }

    // Conserved sum on the fixed figure grid of angles and coupling weights.
    for alpha in [0.0, PI / 8.0, FRAC_PI_4, 3.0 * PI / 8.0, FRAC_PI_2] {
        for weight in [1.0, 0.7, 0.5] {
            let p = super::figure::figure_params(weight, alpha)?;
            let d = derive_params(&p);
            let g = entry_function(alpha);
            for k in 0..=400 {
                let t = TAU * k as f64 / 400.0 / d.a.rabi_rate;
                let r = entropy_report(&d, &p, t);
                suite
                    .conserved_sum
                    .record((r.atoms + r.modes - g).abs(), || describe_at(&p, t));
            }
        }
    }

    for _ in 0..4 {
        let c = random_cavity(&mut rng, true);
        suite.resonant_quarter(&ModelParams::identical(c, FRAC_PI_4)?)?;
    }

    for k in 0..3 {
        let c = random_cavity(&mut rng, k == 0);
        let alpha = rng.random_range(0.2..1.3);
        suite.noninvariance(&c, alpha, opts.noninvariance_samples)?;
    }

    Ok(VerifyReport {
        seed: opts.seed,
        param_sets: opts.param_sets,
        times: opts.times,
        checks: suite.into_checks(),
    })
}

/// Runs the suite and writes the report; failing checks become an error
/// after the report is written.
pub fn cmd_verify(opts: &VerifyOptions, output: Option<&Path>) -> Result<VerifyReport, CliError> {
    let report = run_verify(opts)?;
    let text = report.render();
    match output {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?,
        None => crate::table::write_stdout(&text)?,
    }
    if !report.passed() {
        let detail: Vec<String> = report
            .failures()
            .iter()
            .map(|c| {
                format!(
                    "{} observed {:e} limit {:e}{}",
                    c.name,
                    c.observed,
                    c.limit,
                    c.worst_at
                        .as_deref()
                        .map(|a| format!(" at {a}"))
                        .unwrap_or_default()
                )
            })
            .collect();
        return Err(CliError::Verification(detail.join("; ")));
    }
    Ok(report)
}
