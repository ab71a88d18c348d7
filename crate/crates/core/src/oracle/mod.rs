//! Exact-diagonalization reference for the double Jaynes-Cummings model.
//!
//! Works on the full 16-dimensional space `|σ_A σ_B n_a n_b⟩` with each mode
//! truncated at one photon, which is exact for a single excitation. Nothing
//! here calls into [`crate::model`] except for reading [`ModelParams`].
//!
//! [`ModelParams`]: crate::ModelParams

mod basis;
mod branch;
mod density;
mod hamiltonian;
mod noninvariance;
mod state;

pub use basis::{basis_index, occupation, DIM, SINGLE_EXCITATION};
pub use branch::{branch_entropy, schmidt_probabilities};
pub use density::{negativity, reduced_density, vn_entropy, DensityMatrix, EIGEN_CLAMP};
pub use hamiltonian::{build_hamiltonian, single_excitation_energies};
pub use noninvariance::{
    entropy_samples, noninvariance_evidence, smallest_centered_singular_value,
    NONINVARIANCE_THRESHOLD,
};
pub use state::{evolve, initial_state, phase_aligned_max_diff, Propagator, StateVector};

pub use num_complex::Complex64 as C64;

/// Largest `|A - A†|` entry.
pub(crate) fn hermiticity_deviation(m: &nalgebra::DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Hermitian eigendecomposition; eigenvalues ascending.
pub(crate) fn hermitian_eigen(
    m: &nalgebra::DMatrix<C64>,
) -> Result<(Vec<f64>, nalgebra::DMatrix<C64>), crate::OracleError> {
    let eig = nalgebra::SymmetricEigen::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or(crate::OracleError::Eigendecomposition)?;
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(crate::OracleError::Eigendecomposition);
    }
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors =
        nalgebra::DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}
