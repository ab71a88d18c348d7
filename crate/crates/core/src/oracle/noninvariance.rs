//! Numerical evidence that no linear combination of the six pair entropies
//! is conserved.
//!
//! For samples `S(t_k)` stacked as rows, a conserved combination `c·S(t) = C`
//! is a null vector of the column-centered sample matrix. The smallest
//! singular value of that matrix, scaled by `1/sqrt(n)`, is the smallest RMS
//! time variation any unit-norm combination can achieve.

use nalgebra::DMatrix;

use super::branch::branch_entropy;
use super::hamiltonian::build_hamiltonian;
use super::state::{initial_state, Propagator};
use crate::error::OracleError;
use crate::model::ModelParams;
use crate::subsystem::SIX_PAIRS;

/// Smallest normalized singular value above which only the trivial
/// combination counts as time-independent.
pub const NONINVARIANCE_THRESHOLD: f64 = 1e-6;

/// Oracle pair entropies, one row per time, columns in [`SIX_PAIRS`] order.
pub fn entropy_samples(p: &ModelParams<f64>, times: &[f64]) -> Result<DMatrix<f64>, OracleError> {
    let prop = Propagator::new(&build_hamiltonian(p))?;
    let psi0 = initial_state(p.alpha());
    let mut out = DMatrix::zeros(times.len(), SIX_PAIRS.len());
    for (row, &t) in times.iter().enumerate() {
        let psi = prop.evolve(&psi0, t);
        for (col, &(mu, xi)) in SIX_PAIRS.iter().enumerate() {
            out[(row, col)] = branch_entropy(&psi, mu, xi)?;
        }
    }
    Ok(out)
}

pub fn smallest_centered_singular_value(samples: &DMatrix<f64>) -> Result<f64, OracleError> {
    let (n, m) = samples.shape();
    if m == 0 || n <= m {
        return Err(OracleError::DegenerateGrid {
            samples: n,
            columns: m,
        });
    }
    let mut centered = samples.clone();
    for mut col in centered.column_iter_mut() {
        let mean = col.mean();
        col.add_scalar_mut(-mean);
    }
    centered /= (n as f64).sqrt();
    let svd = centered.svd(false, false);
    Ok(svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

/// Smallest normalized singular value of the centered six-entropy samples.
///
/// Rejects identical cavities, where the atom-atom plus mode-mode sum is
/// conserved and the value is zero up to round-off.
pub fn noninvariance_evidence(p: &ModelParams<f64>, times: &[f64]) -> Result<f64, OracleError> {
    if p.is_identical() {
        return Err(OracleError::IdenticalCavities);
    }
    if times.len() <= SIX_PAIRS.len() {
        return Err(OracleError::DegenerateGrid {
            samples: times.len(),
            columns: SIX_PAIRS.len(),
        });
    }
    smallest_centered_singular_value(&entropy_samples(p, times)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Cavity;

    #[test]
    fn constant_column_is_null() {
        let samples = DMatrix::from_fn(
            20,
            3,
            |r, c| if c == 1 { 0.7 } else { (r * (c + 1)) as f64 },
        );
        assert!(smallest_centered_singular_value(&samples).unwrap() < 1e-15);
    }

    #[test]
    fn independent_columns_are_not_null() {
        let samples = DMatrix::from_fn(50, 2, |r, c| ((r as f64) * (0.3 + c as f64)).sin());
        assert!(smallest_centered_singular_value(&samples).unwrap() > 0.1);
    }

    #[test]
    fn degenerate_grids_rejected() {
        let samples = DMatrix::<f64>::zeros(3, 6);
        assert!(matches!(
            smallest_centered_singular_value(&samples),
            Err(OracleError::DegenerateGrid { .. })
        ));
        let p = ModelParams::new(
            Cavity::resonant(1.0, 0.1).unwrap(),
            Cavity::new(1.3, 1.0, 0.1).unwrap(),
            0.6,
        )
        .unwrap();
        assert!(noninvariance_evidence(&p, &[0.0, 1.0, 2.0]).is_err());
        let same = ModelParams::identical(Cavity::resonant(1.0, 0.1).unwrap(), 0.6).unwrap();
        let times: Vec<f64> = (0..60).map(|k| k as f64).collect();
        assert_eq!(
            noninvariance_evidence(&same, &times),
            Err(OracleError::IdenticalCavities)
        );
    }
}
