use std::f64::consts::FRAC_PI_4;

use djcm::oracle::{build_hamiltonian, initial_state, negativity, reduced_density, Propagator};
use djcm::{derive_params, entropy_report, negativity_closed_form, u_ab, Subsystem};

use super::simulate::provenance;
use crate::config::Scenario;
use crate::error::CliError;
use crate::table::SweepResult;

/// Allowed gap between the closed-form and partial-transpose negativities.
pub const NEGATIVITY_AGREEMENT: f64 = 1e-10;

const CONDITION_TOL: f64 = 1e-12;

fn check_conditions(s: &Scenario) -> Result<(), CliError> {
    let p = &s.params;
    if !p.is_identical() {
        return Err(CliError::Config(
            "compare-measures needs identical cavities: the negativity closed form \
             only holds when both atom-mode pairs share E, omega and g"
                .into(),
        ));
    }
    let c = p.cavity_a();
    if (c.mode_frequency - c.atom_gap).abs() > CONDITION_TOL * c.atom_gap {
        return Err(CliError::Config(format!(
            "compare-measures needs resonance (omega = E), got omega = {} and E = {}",
            c.mode_frequency, c.atom_gap
        )));
    }
    if (p.alpha() - FRAC_PI_4).abs() > CONDITION_TOL {
        return Err(CliError::Config(format!(
            "compare-measures needs alpha = pi/4 (equal entry probabilities), got {}",
            p.alpha()
        )));
    }
    Ok(())
}

/// `(t, gt, U_AB, S_AB, N_closed, N_oracle)` for resonant identical cavities
/// with equal entry probabilities.
pub fn compare_measures(s: &Scenario) -> Result<SweepResult, CliError> {
    s.validate()?;
    check_conditions(s)?;
    let p = &s.params;
    let d = derive_params(p);
    let g = p.cavity_a().coupling;
    let prop = Propagator::new(&build_hamiltonian(p))?;
    let psi0 = initial_state(p.alpha());

    let mut metadata = vec![provenance("compare-measures")];
    metadata.extend(s.echo_lines());
    let columns = ["t", "gt", "U_AB", "S_AB", "N_closed", "N_oracle"]
        .map(String::from)
        .to_vec();
    let mut out = SweepResult::new(metadata, columns);
    for t in s.times() {
        let u = u_ab(&d, p, t);
        let entropy = entropy_report(&d, p, t).atoms;
        let closed = negativity_closed_form(u);
        let psi = prop.evolve(&psi0, t);
        let rho = reduced_density(&psi, &[Subsystem::AtomA, Subsystem::AtomB])?;
        let oracle = negativity(&rho, Subsystem::AtomA)?;
        if (closed - oracle).abs() > NEGATIVITY_AGREEMENT {
            return Err(CliError::Verification(format!(
                "negativity closed form {closed} and partial transpose {oracle} disagree at t = {t}"
            )));
        }
        out.rows
            .push(vec![t, g * t, u, entropy, closed, oracle.max(0.0)]);
    }
    out.validate().map_err(CliError::Verification)?;
    Ok(out)
}

pub fn cmd_compare_measures(s: &Scenario) -> Result<(), CliError> {
    compare_measures(s)?.write(s.output.as_deref())
}
