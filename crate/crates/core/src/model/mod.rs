//! Closed-form evolution, probabilities and entropies.
//!
//! Every function here is generic over [`Real`](crate::Real) and evaluates
//! analytic expressions only.

mod dynamics;
mod energy;
mod entropy;
mod params;

pub use dynamics::{amplitudes, probabilities, Amplitudes, Probabilities};
pub use energy::{negativity_closed_form, u_ab, u_ab_with_reference};
pub use entropy::{
    atom_photon_entropies_identical, entropy_report, entry_function, identical_entropies,
    pairwise_entropy, AtomPhotonEntropies, EntropyReport,
};
pub use params::{
    derive_params, stationary_energies, Cavity, DerivedParams, DressedCavity, ModelParams,
    IDENTICAL_REL_TOL,
};
