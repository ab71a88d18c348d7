use super::dynamics::probabilities;
use super::params::{DerivedParams, ModelParams};
use crate::scalar::Real;

/// Atomic excitation energy in units of cavity A's atomic gap.
pub fn u_ab<T: Real>(d: &DerivedParams<T>, p: &ModelParams<T>, t: T) -> T {
    u_ab_with_reference(d, p, t, p.cavity_a().atom_gap)
}

/// `(P_A·E_A + P_B·E_B) / reference`.
pub fn u_ab_with_reference<T: Real>(
    d: &DerivedParams<T>,
    p: &ModelParams<T>,
    t: T,
    reference: T,
) -> T {
    let pr = probabilities(d, p, t);
    (pr.atom_a * p.cavity_a().atom_gap + pr.atom_b * p.cavity_b().atom_gap) / reference
}

/// Atom-atom negativity as a function of `U_AB`.
///
/// Valid only for resonant identical cavities with `α = π/4`, where
/// `U_AB ∈ [0, 1]`.
pub fn negativity_closed_form<T: Real>(u: T) -> T {
    let v = u - T::one();
    (v * v + u * u).sqrt() + v
}
