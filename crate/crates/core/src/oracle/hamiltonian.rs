use nalgebra::DMatrix;

use super::basis::SINGLE_EXCITATION;
use super::{hermitian_eigen, C64};
use crate::error::OracleError;
use crate::model::{Cavity, ModelParams};
use crate::subsystem::Subsystem;

fn op2(m: [[f64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, c| C64::new(m[r][c], 0.0))
}

/// Lifts a single-factor operator to the full tensor space.
fn embed(op: &DMatrix<C64>, at: Subsystem) -> DMatrix<C64> {
    let id = DMatrix::<C64>::identity(2, 2);
    Subsystem::ALL.iter().fold(
        DMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
        |acc, &s| acc.kronecker(if s == at { op } else { &id }),
    )
}

fn cavity_hamiltonian(c: &Cavity<f64>, atom: Subsystem, mode: Subsystem) -> DMatrix<C64> {
    // Atom basis (↓, ↑); mode basis (0, 1).
    let number = op2([[0.0, 0.0], [0.0, 1.0]]);
    let half_id = op2([[0.5, 0.0], [0.0, 0.5]]);
    let sigma_z = op2([[-1.0, 0.0], [0.0, 1.0]]);
    let raise = op2([[0.0, 0.0], [1.0, 0.0]]); // σ₊|↓⟩ = |↑⟩
    let lower = op2([[0.0, 1.0], [0.0, 0.0]]);
    let create = op2([[0.0, 0.0], [1.0, 0.0]]);
    let destroy = op2([[0.0, 1.0], [0.0, 0.0]]);

    let field = (embed(&number, mode) + embed(&half_id, mode)) * C64::from(c.mode_frequency);
    let atomic = embed(&sigma_z, atom) * C64::from(c.atom_gap / 2.0);
    let exchange = (embed(&create, mode) * embed(&lower, atom)
        + embed(&destroy, mode) * embed(&raise, atom))
        * C64::from(c.coupling);
    field + atomic + exchange
}

/// Full 16×16 rotating-wave Hamiltonian of both cavities.
pub fn build_hamiltonian(p: &ModelParams<f64>) -> DMatrix<C64> {
    cavity_hamiltonian(p.cavity_a(), Subsystem::AtomA, Subsystem::ModeA)
        + cavity_hamiltonian(p.cavity_b(), Subsystem::AtomB, Subsystem::ModeB)
}

/// Ascending eigenvalues of `H` restricted to the single-excitation sector.
pub fn single_excitation_energies(h: &DMatrix<C64>) -> Result<[f64; 4], OracleError> {
    let block = DMatrix::from_fn(4, 4, |r, c| h[(SINGLE_EXCITATION[r], SINGLE_EXCITATION[c])]);
    let (values, _) = hermitian_eigen(&block)?;
    Ok([values[0], values[1], values[2], values[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::basis::basis_index;
    use crate::oracle::hermiticity_deviation;

    fn params(ga: f64, gb: f64) -> ModelParams<f64> {
        ModelParams::new(
            Cavity::new(1.0, 0.9, ga).unwrap(),
            Cavity::new(1.3, 1.1, gb).unwrap(),
            0.3,
        )
        .unwrap()
    }

    #[test]
    fn hermitian_by_construction() {
        let h = build_hamiltonian(&params(0.1, 0.2));
        assert_eq!(hermiticity_deviation(&h), 0.0);
    }

    #[test]
    fn coupling_matrix_element() {
        let h = build_hamiltonian(&params(0.1, 0.2));
        let up_down_00 = basis_index(1, 0, 0, 0);
        let down_down_10 = basis_index(0, 0, 1, 0);
        assert_eq!(h[(up_down_00, down_down_10)], C64::new(0.1, 0.0));
        let down_up_00 = basis_index(0, 1, 0, 0);
        let down_down_01 = basis_index(0, 0, 0, 1);
        assert_eq!(h[(down_up_00, down_down_01)], C64::new(0.2, 0.0));
        // No cross-cavity coupling.
        assert_eq!(h[(up_down_00, down_down_01)], C64::new(0.0, 0.0));
    }

    #[test]
    fn uncoupled_is_diagonal_bare_energies() {
        let a = Cavity {
            atom_gap: 1.0,
            mode_frequency: 0.9,
            coupling: 0.0,
        };
        let b = Cavity {
            atom_gap: 1.3,
            mode_frequency: 1.1,
            coupling: 0.0,
        };
        let h = cavity_hamiltonian(&a, Subsystem::AtomA, Subsystem::ModeA)
            + cavity_hamiltonian(&b, Subsystem::AtomB, Subsystem::ModeB);
        for i in 0..16 {
            for j in 0..16 {
                if i != j {
                    assert_eq!(h[(i, j)], C64::new(0.0, 0.0));
                }
            }
            let level = |bit: usize| if (i >> bit) & 1 == 1 { 0.5 } else { -0.5 };
            let photons = |bit: usize| ((i >> bit) & 1) as f64 + 0.5;
            let bare = level(3) * 1.0 + level(2) * 1.3 + photons(1) * 0.9 + photons(0) * 1.1;
            assert!((h[(i, i)].re - bare).abs() < 1e-15);
        }
    }
}
