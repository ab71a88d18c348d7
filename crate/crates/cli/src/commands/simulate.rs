use djcm::oracle::{build_hamiltonian, initial_state, negativity, reduced_density, Propagator};
use djcm::{derive_params, entropy_report, probabilities, u_ab, Subsystem};

use crate::config::{Quantity, Scenario};
use crate::error::CliError;
use crate::table::SweepResult;

pub(crate) fn provenance(command: &str) -> String {
    format!(
        "{} {} {command}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION")
    )
}

/// Round-off allowance below zero for the oracle negativity.
const NEGATIVITY_FLOOR: f64 = -1e-12;

/// Evaluates the selected quantities on the scenario's time grid.
pub fn simulate(scenario: &Scenario) -> Result<SweepResult, CliError> {
    scenario.validate()?;
    let p = &scenario.params;
    let d = derive_params(p);
    let propagator = if scenario.outputs.contains(&Quantity::Negativity) {
        Some(Propagator::new(&build_hamiltonian(p))?)
    } else {
        None
    };
    let psi0 = initial_state(p.alpha());

    let mut metadata = vec![provenance("simulate")];
    metadata.extend(scenario.echo_lines());
    let mut columns = vec!["t".to_string()];
    columns.extend(scenario.outputs.iter().map(|q| q.column_name().to_string()));
    let mut result = SweepResult::new(metadata, columns);

    for t in scenario.times() {
        let report = entropy_report(&d, p, t);
        let pr = probabilities(&d, p, t);
        let mut row = Vec::with_capacity(scenario.outputs.len() + 1);
        row.push(t);
        for q in &scenario.outputs {
            let v = match q {
                Quantity::EntropyAtoms => report.atoms,
                Quantity::EntropyModes => report.modes,
                Quantity::EntropyAa => report.atom_a_mode_a,
                Quantity::EntropyAb => report.atom_a_mode_b,
                Quantity::EntropyBa => report.atom_b_mode_a,
                Quantity::EntropyBb => report.atom_b_mode_b,
                Quantity::ProbAtomA => pr.atom_a,
                Quantity::ProbAtomB => pr.atom_b,
                Quantity::ProbModeA => pr.mode_a,
                Quantity::ProbModeB => pr.mode_b,
                Quantity::AtomEnergy => u_ab(&d, p, t),
                Quantity::Negativity => {
                    let prop = propagator
                        .as_ref()
                        .expect("propagator built for negativity");
                    let psi = prop.evolve(&psi0, t);
                    let rho = reduced_density(&psi, &[Subsystem::AtomA, Subsystem::AtomB])?;
                    let n = negativity(&rho, Subsystem::AtomA)?;
                    if n < NEGATIVITY_FLOOR {
                        return Err(CliError::Verification(format!(
                            "negative negativity {n:e} at t = {t}"
                        )));
                    }
                    n.max(0.0)
                }
            };
            row.push(v);
        }
        result.rows.push(row);
    }
    result.validate().map_err(CliError::Verification)?;
    Ok(result)
}

pub fn cmd_simulate(scenario: &Scenario) -> Result<(), CliError> {
    simulate(scenario)?.write(scenario.output.as_deref())
}
