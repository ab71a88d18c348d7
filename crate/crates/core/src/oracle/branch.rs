//! Pair entanglement by branching over the complementary subsystems.
//!
//! The state is expanded over the product basis of the two factors outside
//! the pair. Each branch leaves the pair in some (unnormalized) pure state;
//! its Schmidt entropy is weighted by the branch probability.

use nalgebra::DMatrix;

use super::basis::{basis_index, DIM};
use super::state::StateVector;
use super::C64;
use crate::error::OracleError;
use crate::subsystem::Subsystem;

/// Branches lighter than this contribute nothing.
const BRANCH_WEIGHT_FLOOR: f64 = 1e-14;

fn index_of(levels: &[(Subsystem, usize)]) -> usize {
    let level = |s: Subsystem| {
        levels
            .iter()
            .find(|(x, _)| *x == s)
            .map(|(_, l)| *l)
            .unwrap_or(0)
    };
    basis_index(
        level(Subsystem::AtomA),
        level(Subsystem::AtomB),
        level(Subsystem::ModeA),
        level(Subsystem::ModeB),
    )
}

/// Squared Schmidt coefficients of a normalized bipartite pure state given as
/// its coefficient matrix `M[x][y]`.
pub fn schmidt_probabilities(coefficients: &DMatrix<C64>) -> Vec<f64> {
    coefficients
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .map(|s| s * s)
        .collect()
}

fn shannon_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Branch-weighted Schmidt entropy of the pair `(mu, xi)` in bits.
pub fn branch_entropy(psi: &StateVector, mu: Subsystem, xi: Subsystem) -> Result<f64, OracleError> {
    if mu == xi {
        return Err(OracleError::InvalidSubsystems(format!(
            "pair needs two distinct subsystems, got {mu} twice"
        )));
    }
    let rest: Vec<Subsystem> = Subsystem::ALL
        .into_iter()
        .filter(|&s| s != mu && s != xi)
        .collect();
    debug_assert_eq!(rest.len(), 2);

    let mut total = 0.0;
    let mut seen = 0.0;
    for e0 in 0..2 {
        for e1 in 0..2 {
            let branch = DMatrix::from_fn(2, 2, |x, y| {
                psi.amplitude(index_of(&[(mu, x), (xi, y), (rest[0], e0), (rest[1], e1)]))
            });
            let weight = branch.norm_squared();
            seen += weight;
            if weight < BRANCH_WEIGHT_FLOOR {
                continue;
            }
            let normalized = branch / C64::from(weight.sqrt());
            total += weight * shannon_bits(&schmidt_probabilities(&normalized));
        }
    }
    debug_assert!(
        (seen - 1.0).abs() < 1e-9,
        "branches cover {seen} of {DIM} states"
    );
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::initial_state;
    use std::f64::consts::FRAC_PI_4;
    use Subsystem::*;

    #[test]
    fn initial_state_pairs() {
        let psi = initial_state(FRAC_PI_4);
        assert!(branch_entropy(&psi, AtomA, AtomB).unwrap().abs() < 1e-14);
        assert!((branch_entropy(&psi, ModeA, ModeB).unwrap() - 1.0).abs() < 1e-14);
        assert!(branch_entropy(&psi, AtomA, ModeA).unwrap().abs() < 1e-14);
        let psi = initial_state(0.0);
        for (m, x) in crate::SIX_PAIRS {
            assert!(branch_entropy(&psi, m, x).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn symmetric_in_pair_order() {
        let psi = initial_state(0.3);
        let a = branch_entropy(&psi, ModeA, ModeB).unwrap();
        let b = branch_entropy(&psi, ModeB, ModeA).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_pair() {
        assert!(branch_entropy(&initial_state(0.3), ModeA, ModeA).is_err());
    }

    #[test]
    fn schmidt_of_bell_pair() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(s, 0.0),
                C64::new(0.0, s),
                C64::new(0.0, 0.0),
            ],
        );
        let p = schmidt_probabilities(&m);
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }
}
