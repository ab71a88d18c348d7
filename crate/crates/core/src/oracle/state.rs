use nalgebra::{DMatrix, DVector};

use super::basis::{DIM, SINGLE_EXCITATION};
use super::{hermitian_eigen, hermiticity_deviation, C64};
use crate::error::OracleError;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;

/// Pure state on the 16-dimensional tensor basis (see [`basis_index`]).
///
/// [`basis_index`]: super::basis_index
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: DVector<C64>,
}

impl StateVector {
    pub fn new(amps: DVector<C64>) -> Result<Self, OracleError> {
        if amps.len() != DIM {
            return Err(OracleError::Dimension {
                expected: DIM,
                rows: amps.len(),
                cols: 1,
            });
        }
        let dev = (amps.norm() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(OracleError::NotNormalized(dev));
        }
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// Components on `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`.
    pub fn single_excitation(&self) -> [C64; 4] {
        SINGLE_EXCITATION.map(|i| self.amps[i])
    }

    /// Norm of the part outside the single-excitation sector.
    pub fn leakage(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| !SINGLE_EXCITATION.contains(i))
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `cos α |↓↓01⟩ + sin α |↓↓10⟩`.
pub fn initial_state(alpha: f64) -> StateVector {
    let mut amps = DVector::zeros(DIM);
    amps[SINGLE_EXCITATION[2]] = C64::new(alpha.sin(), 0.0);
    amps[SINGLE_EXCITATION[3]] = C64::new(alpha.cos(), 0.0);
    StateVector { amps }
}

/// Spectral propagator `exp(-iHt)` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl Propagator {
    pub fn new(h: &DMatrix<C64>) -> Result<Self, OracleError> {
        if !h.is_square() {
            return Err(OracleError::Dimension {
                expected: h.nrows(),
                rows: h.nrows(),
                cols: h.ncols(),
            });
        }
        let dev = hermiticity_deviation(h);
        if dev > HERMITIAN_TOL {
            return Err(OracleError::NotHermitian(dev));
        }
        let (energies, vectors) = hermitian_eigen(h)?;
        // Guard against a silently wrong decomposition.
        let unitary_dev = (vectors.adjoint() * &vectors - DMatrix::identity(h.nrows(), h.ncols()))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if unitary_dev > 1e-10 {
            return Err(OracleError::Eigendecomposition);
        }
        Ok(Self { energies, vectors })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn evolve(&self, psi0: &StateVector, t: f64) -> StateVector {
        if t == 0.0 {
            return psi0.clone();
        }
        let mut coeffs = self.vectors.adjoint() * &psi0.amps;
        for (c, &e) in coeffs.iter_mut().zip(&self.energies) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        StateVector {
            amps: &self.vectors * coeffs,
        }
    }
}

/// `exp(-iHt) ψ₀` via a fresh spectral decomposition of `h`.
pub fn evolve(h: &DMatrix<C64>, psi0: &StateVector, t: f64) -> Result<StateVector, OracleError> {
    Ok(Propagator::new(h)?.evolve(psi0, t))
}

/// Largest componentwise difference after removing one global phase.
///
/// The phase is fixed on the largest-magnitude component of `reference`.
pub fn phase_aligned_max_diff(reference: &[C64], candidate: &[C64]) -> f64 {
    assert_eq!(reference.len(), candidate.len());
    let pivot = reference
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let ratio = candidate[pivot] * reference[pivot].conj();
    let rot = if ratio.norm() > 0.0 {
        ratio.conj() / ratio.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    reference
        .iter()
        .zip(candidate)
        .map(|(r, c)| (r - c * rot).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cavity, ModelParams};
    use crate::oracle::build_hamiltonian;
    use std::f64::consts::FRAC_PI_4;

    fn hamiltonian() -> DMatrix<C64> {
        let p = ModelParams::new(
            Cavity::new(1.0, 0.93, 0.11).unwrap(),
            Cavity::new(1.2, 1.25, 0.07).unwrap(),
            0.7,
        )
        .unwrap();
        build_hamiltonian(&p)
    }

    #[test]
    fn initial_state_weights() {
        let psi = initial_state(0.0);
        assert_eq!(psi.single_excitation()[3], C64::new(1.0, 0.0));
        assert_eq!(psi.single_excitation()[2], C64::new(0.0, 0.0));
        let psi = initial_state(FRAC_PI_4);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((psi.single_excitation()[2].re - s).abs() < 1e-15);
        assert!((psi.single_excitation()[3].re - s).abs() < 1e-15);
        for k in 0..=20 {
            let a = k as f64 * std::f64::consts::FRAC_PI_2 / 20.0;
            assert!((initial_state(a).norm() - 1.0).abs() < 1e-15);
            let nonzero = initial_state(a)
                .amplitudes()
                .iter()
                .filter(|z| z.norm() > 0.0)
                .count();
            assert!(nonzero <= 2);
        }
    }

    #[test]
    fn identity_at_zero_and_group_property() {
        let prop = Propagator::new(&hamiltonian()).unwrap();
        let psi0 = initial_state(0.7);
        assert_eq!(prop.evolve(&psi0, 0.0), psi0);
        let (t1, t2) = (3.7, 11.2);
        let composed = prop.evolve(&prop.evolve(&psi0, t1), t2);
        let direct = prop.evolve(&psi0, t1 + t2);
        let diff = (composed.amplitudes() - direct.amplitudes()).camax();
        assert!(diff < 1e-11, "{diff}");
    }

    #[test]
    fn norm_and_sector_conserved() {
        let prop = Propagator::new(&hamiltonian()).unwrap();
        let psi0 = initial_state(0.4);
        for k in 0..100 {
            let psi = prop.evolve(&psi0, k as f64 * 2.3);
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            assert!(psi.leakage() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut h = hamiltonian();
        h[(0, 1)] += C64::new(0.0, 1e-6);
        assert!(matches!(
            Propagator::new(&h),
            Err(OracleError::NotHermitian(_))
        ));
        let rect = DMatrix::<C64>::zeros(3, 4);
        assert!(matches!(
            Propagator::new(&rect),
            Err(OracleError::Dimension { .. })
        ));
    }

    #[test]
    fn state_vector_validation() {
        assert!(StateVector::new(DVector::zeros(15)).is_err());
        assert!(matches!(
            StateVector::new(DVector::zeros(16)),
            Err(OracleError::NotNormalized(_))
        ));
    }

    #[test]
    fn phase_alignment() {
        let a = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let rot = C64::from_polar(1.0, 1.234);
        let b = [a[0] * rot, a[1] * rot];
        assert!(phase_aligned_max_diff(&a, &b) < 1e-15);
        let c = [a[0] * rot, -a[1] * rot];
        assert!(phase_aligned_max_diff(&a, &c) > 1.0);
    }
}
