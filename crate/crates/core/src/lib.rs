//! Double Jaynes-Cummings model with a single shared photon.
//!
//! Two two-level atoms sit in separate cavities; one photon enters cavity A
//! with probability `sin²α` or cavity B with probability `cos²α`. The
//! [`model`] module evaluates the closed-form evolution and the six pairwise
//! von Neumann entropies. The [`oracle`] module is an independent
//! exact-diagonalization reference on the full 16-dimensional tensor space
//! and shares no computation with [`model`].
//!
//! Units: `ħ = 1`. Atomic gaps, mode frequencies and couplings share one
//! energy unit. Entropies are in bits.

pub mod error;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod subsystem;

pub use error::{ModelError, OracleError};
pub use model::{
    amplitudes, atom_photon_entropies_identical, derive_params, entropy_report, entry_function,
    identical_entropies, negativity_closed_form, pairwise_entropy, probabilities,
    stationary_energies, u_ab, u_ab_with_reference, Amplitudes, AtomPhotonEntropies, Cavity,
    DerivedParams, DressedCavity, EntropyReport, ModelParams, Probabilities,
};
pub use scalar::Real;
pub use subsystem::{Subsystem, SIX_PAIRS};

pub type ModelParams64 = ModelParams<f64>;
pub type ModelParams32 = ModelParams<f32>;
pub type Cavity64 = Cavity<f64>;
pub type Cavity32 = Cavity<f32>;
pub type DerivedParams64 = DerivedParams<f64>;
pub type DerivedParams32 = DerivedParams<f32>;
pub type Amplitudes64 = Amplitudes<f64>;
pub type Amplitudes32 = Amplitudes<f32>;
pub type Probabilities64 = Probabilities<f64>;
pub type EntropyReport64 = EntropyReport<f64>;
pub type EntropyReport32 = EntropyReport<f32>;
