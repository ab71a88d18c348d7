use nalgebra::{DMatrix, DVector};

use super::basis::{occupation, DIM};
use super::state::StateVector;
use super::{hermitian_eigen, hermiticity_deviation, C64};
use crate::error::OracleError;
use crate::subsystem::Subsystem;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as round-off and set to 0.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Density operator over an ordered set of qubit-like factors.
///
/// The first listed subsystem is the most significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<C64>,
    subsystems: Vec<Subsystem>,
}

impl DensityMatrix {
    pub fn new(matrix: DMatrix<C64>, subsystems: Vec<Subsystem>) -> Result<Self, OracleError> {
        let dim = 1usize << subsystems.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(OracleError::Dimension {
                expected: dim,
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(Self { matrix, subsystems })
    }

    /// `|v⟩⟨v|` for a normalized vector over `subsystems`.
    pub fn from_pure(v: &DVector<C64>, subsystems: Vec<Subsystem>) -> Result<Self, OracleError> {
        Self::new(v * v.adjoint(), subsystems)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Checks Hermiticity and unit trace, then returns ascending eigenvalues
    /// with round-off negatives clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, OracleError> {
        let dev = hermiticity_deviation(&self.matrix);
        if dev > HERMITIAN_TOL {
            return Err(OracleError::NotHermitian(dev));
        }
        let tr_dev = (self.trace() - C64::new(1.0, 0.0)).norm();
        if tr_dev > TRACE_TOL {
            return Err(OracleError::Trace(tr_dev));
        }
        let (values, _) = hermitian_eigen(&self.matrix)?;
        values
            .into_iter()
            .map(|v| {
                if v >= 0.0 {
                    Ok(v)
                } else if v >= -EIGEN_CLAMP {
                    Ok(0.0)
                } else {
                    Err(OracleError::NegativeEigenvalue(v))
                }
            })
            .collect()
    }
}

/// Sub-index of `index` restricted to `factors`, first factor most significant.
fn sub_index(index: usize, factors: &[Subsystem]) -> usize {
    factors
        .iter()
        .fold(0, |acc, &s| (acc << 1) | occupation(index, s))
}

/// Partial trace of `|ψ⟩⟨ψ|` over every factor not in `keep`.
pub fn reduced_density(
    psi: &StateVector,
    keep: &[Subsystem],
) -> Result<DensityMatrix, OracleError> {
    let mut kept: Vec<Subsystem> = keep.to_vec();
    kept.sort();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(OracleError::InvalidSubsystems(format!(
            "duplicate subsystem in {keep:?}"
        )));
    }
    if kept.is_empty() || kept.len() == Subsystem::ALL.len() {
        return Err(OracleError::InvalidSubsystems(format!(
            "keep must be a nonempty proper subset, got {keep:?}"
        )));
    }
    let traced: Vec<Subsystem> = Subsystem::ALL
        .into_iter()
        .filter(|s| !kept.contains(s))
        .collect();

    let dim = 1usize << kept.len();
    let mut rho = DMatrix::zeros(dim, dim);
    let amps = psi.amplitudes();
    for i in 0..DIM {
        for j in 0..DIM {
            if sub_index(i, &traced) == sub_index(j, &traced) {
                rho[(sub_index(i, &kept), sub_index(j, &kept))] += amps[i] * amps[j].conj();
            }
        }
    }
    DensityMatrix::new(rho, kept)
}

/// `-Σ λ log₂ λ` over the eigenvalues of `rho`.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64, OracleError> {
    Ok(rho
        .eigenvalues()?
        .into_iter()
        .filter(|&v| v > 0.0)
        .map(|v| -v * v.log2())
        .sum())
}

/// `‖ρ^{T_X}‖₁ − 1` for a two-factor state, transposing factor `transpose_over`.
pub fn negativity(rho: &DensityMatrix, transpose_over: Subsystem) -> Result<f64, OracleError> {
    if rho.subsystems().len() != 2 || rho.dim() != 4 {
        return Err(OracleError::Dimension {
            expected: 4,
            rows: rho.matrix().nrows(),
            cols: rho.matrix().ncols(),
        });
    }
    let position = rho
        .subsystems()
        .iter()
        .position(|&s| s == transpose_over)
        .ok_or_else(|| {
            OracleError::InvalidSubsystems(format!(
                "{transpose_over} is not a factor of {:?}",
                rho.subsystems()
            ))
        })?;
    // Bit of the transposed factor within the 2-bit index.
    let bit = 1 - position;
    let m = rho.matrix();
    let swapped = |i: usize, j: usize| {
        let (bi, bj) = ((i >> bit) & 1, (j >> bit) & 1);
        let mask = !(1usize << bit);
        ((i & mask) | (bj << bit), (j & mask) | (bi << bit))
    };
    let pt = DMatrix::from_fn(4, 4, |i, j| {
        let (r, c) = swapped(i, j);
        m[(r, c)]
    });
    let dev = hermiticity_deviation(&pt);
    if dev > HERMITIAN_TOL {
        return Err(OracleError::NotHermitian(dev));
    }
    let (values, _) = hermitian_eigen(&pt)?;
    Ok(values.iter().map(|v| v.abs()).sum::<f64>() - 1.0)
}
