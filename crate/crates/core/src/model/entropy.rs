use super::dynamics::{probabilities, Probabilities};
use super::params::{DerivedParams, ModelParams};
use crate::error::ModelError;
use crate::scalar::Real;
use crate::subsystem::Subsystem;

/// `x·log₂x` with the `0·log₂0 = 0` convention.
fn xlog2x<T: Real>(x: T) -> T {
    if x > T::zero() {
        x * x.log2()
    } else {
        T::zero()
    }
}

/// `w·log₂x`, zero whenever the weight vanishes.
fn weighted_log2<T: Real>(w: T, x: T) -> T {
    if w > T::zero() {
        w * x.log2()
    } else {
        T::zero()
    }
}

/// Photon entry function `G(α)`: binary entropy of `sin²α` in bits.
pub fn entry_function<T: Real>(alpha: T) -> T {
    let (s, c) = alpha.sin_cos();
    -(xlog2x(s * s) + xlog2x(c * c))
}

/// Entropy of a pair whose branch weights are `p_mu` and `p_xi`.
///
/// `-p_mu·log₂(p_mu/(p_mu+p_xi)) - p_xi·log₂(p_xi/(p_mu+p_xi))`, zero when
/// both weights vanish.
pub fn pairwise_entropy<T: Real>(p_mu: T, p_xi: T) -> T {
    let total = p_mu + p_xi;
    if total <= T::zero() {
        return T::zero();
    }
    -(weighted_log2(p_mu, p_mu / total) + weighted_log2(p_xi, p_xi / total))
}

/// The six pairwise entropies at one instant, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport<T> {
    pub t: T,
    /// `S_AB`, atom-atom.
    pub atoms: T,
    /// `S_ab`, mode-mode.
    pub modes: T,
    pub atom_a_mode_a: T,
    pub atom_a_mode_b: T,
    pub atom_b_mode_a: T,
    pub atom_b_mode_b: T,
    /// `S_AB + S_ab`; equals `G(α)` for identical cavities.
    pub atoms_plus_modes: T,
}

impl<T: Real> EntropyReport<T> {
    pub fn from_probabilities(pr: &Probabilities<T>, t: T) -> Self {
        let atoms = pairwise_entropy(pr.atom_a, pr.atom_b);
        let modes = pairwise_entropy(pr.mode_a, pr.mode_b);
        Self {
            t,
            atoms,
            modes,
            atom_a_mode_a: pairwise_entropy(pr.atom_a, pr.mode_a),
            atom_a_mode_b: pairwise_entropy(pr.atom_a, pr.mode_b),
            atom_b_mode_a: pairwise_entropy(pr.atom_b, pr.mode_a),
            atom_b_mode_b: pairwise_entropy(pr.atom_b, pr.mode_b),
            atoms_plus_modes: atoms + modes,
        }
    }

    /// Entropy of an unordered pair. Panics if `mu == xi`.
    pub fn pair(&self, mu: Subsystem, xi: Subsystem) -> T {
        use Subsystem::*;
        let key = if mu <= xi { (mu, xi) } else { (xi, mu) };
        match key {
            (AtomA, AtomB) => self.atoms,
            (ModeA, ModeB) => self.modes,
            (AtomA, ModeA) => self.atom_a_mode_a,
            (AtomA, ModeB) => self.atom_a_mode_b,
            (AtomB, ModeA) => self.atom_b_mode_a,
            (AtomB, ModeB) => self.atom_b_mode_b,
            _ => panic!("pair entropy needs two distinct subsystems, got {mu} and {xi}"),
        }
    }

    /// Entropies in the order atoms, modes, Aa, Ab, Bb, Ba.
    pub fn as_array(&self) -> [T; 6] {
        [
            self.atoms,
            self.modes,
            self.atom_a_mode_a,
            self.atom_a_mode_b,
            self.atom_b_mode_b,
            self.atom_b_mode_a,
        ]
    }
}

pub fn entropy_report<T: Real>(d: &DerivedParams<T>, p: &ModelParams<T>, t: T) -> EntropyReport<T> {
    EntropyReport::from_probabilities(&probabilities(d, p, t), t)
}

/// Fraction of the entering photon absorbed by its atom at time `t`.
fn absorbed<T: Real>(d: &DerivedParams<T>, t: T) -> T {
    let s = (d.a.rabi_rate * t).sin();
    d.a.coupling_weight() * s * s
}

/// `(S_AB, S_ab)` for identical cavities, factored through `G(α)`.
pub fn identical_entropies<T: Real>(
    d: &DerivedParams<T>,
    p: &ModelParams<T>,
    t: T,
) -> Result<(T, T), ModelError> {
    p.require_identical()?;
    let g = entry_function(p.alpha());
    let f1 = absorbed(d, t);
    Ok((g * f1, g * (T::one() - f1)))
}

/// The four atom-photon entropies for identical cavities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPhotonEntropies<T> {
    pub atom_a_mode_a: T,
    pub atom_b_mode_b: T,
    pub atom_a_mode_b: T,
    pub atom_b_mode_a: T,
}

pub fn atom_photon_entropies_identical<T: Real>(
    d: &DerivedParams<T>,
    p: &ModelParams<T>,
    t: T,
) -> Result<AtomPhotonEntropies<T>, ModelError> {
    p.require_identical()?;
    let alpha = p.alpha();
    let (s, c) = alpha.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let f1 = absorbed(d, t);
    let f2 = T::one() - f1;
    let like = -(xlog2x(f1) + xlog2x(f2));

    // tan²α and cot²α blow up on the boundary, and f1/f2 when the photon is
    // fully absorbed; fall back to the branch-weight form there.
    let interior = alpha > T::zero() && alpha < T::FRAC_PI_2() && f2 > T::zero();
    let (cross_ab, cross_ba) = if interior {
        let ratio = f1 / f2;
        let k = s2 / c2 * ratio;
        let l = c2 / s2 * ratio;
        let ab = -(weighted_log2(s2 * f1, k / (k + T::one()))
            + weighted_log2(c2 * f2, T::one() / (T::one() + k)));
        let ba = -(weighted_log2(c2 * f1, l / (l + T::one()))
            + weighted_log2(s2 * f2, T::one() / (T::one() + l)));
        (ab, ba)
    } else {
        (
            pairwise_entropy(s2 * f1, c2 * f2),
            pairwise_entropy(c2 * f1, s2 * f2),
        )
    };
    Ok(AtomPhotonEntropies {
        atom_a_mode_a: s2 * like,
        atom_b_mode_b: c2 * like,
        atom_a_mode_b: cross_ab,
        atom_b_mode_a: cross_ba,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::params::{derive_params, Cavity};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn identical(w: f64, alpha: f64) -> (DerivedParams<f64>, ModelParams<f64>) {
        let p = ModelParams::identical(Cavity::new(1.0, w, 0.1).unwrap(), alpha).unwrap();
        (derive_params(&p), p)
    }

    #[test]
    fn entry_function_values() {
        assert_abs_diff_eq!(entry_function(FRAC_PI_4), 1.0, epsilon = 1e-15);
        assert_eq!(entry_function(0.0), 0.0);
        assert_abs_diff_eq!(entry_function(FRAC_PI_2), 0.0, epsilon = 1e-30);
        for k in 0..=40 {
            let a = FRAC_PI_2 * k as f64 / 40.0;
            let g = entry_function(a);
            assert!((0.0..=1.0 + 1e-15).contains(&g));
            assert_abs_diff_eq!(g, entry_function(FRAC_PI_2 - a), epsilon = 1e-14);
        }
    }

    #[test]
    fn pairwise_values() {
        assert_abs_diff_eq!(pairwise_entropy(0.5, 0.5), 1.0, epsilon = 1e-15);
        assert_eq!(pairwise_entropy(0.0, 0.3), 0.0);
        assert_eq!(pairwise_entropy(0.3, 0.0), 0.0);
        assert_eq!(pairwise_entropy(0.0, 0.0), 0.0);
        assert_abs_diff_eq!(pairwise_entropy(0.125, 0.125), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn report_at_time_zero() {
        let (d, p) = identical(0.9, 0.5);
        let r = entropy_report(&d, &p, 0.0);
        assert_eq!(r.atoms, 0.0);
        assert_abs_diff_eq!(r.modes, entry_function(0.5), epsilon = 1e-15);
        assert_eq!(r.atom_a_mode_a, 0.0);
        assert_eq!(r.atom_b_mode_a, 0.0);
    }

    #[test]
    fn resonance_entropy_transfer() {
        let (d, p) = identical(1.0, FRAC_PI_4);
        for k in 0..100 {
            let t = k as f64 * 0.613;
            let r = entropy_report(&d, &p, t);
            let s = (0.1 * t).sin().powi(2);
            assert_abs_diff_eq!(r.atoms, s, epsilon = 1e-12);
            assert_abs_diff_eq!(r.modes, 1.0 - s, epsilon = 1e-12);
        }
        let r = entropy_report(&d, &p, FRAC_PI_4 / 0.1);
        for v in [
            r.atom_a_mode_a,
            r.atom_a_mode_b,
            r.atom_b_mode_a,
            r.atom_b_mode_b,
        ] {
            assert_abs_diff_eq!(v, 0.5, epsilon = 1e-12);
        }
        let (sab, _) = identical_entropies(&d, &p, FRAC_PI_2 / 0.1).unwrap();
        assert_abs_diff_eq!(sab, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn detuned_peak() {
        // (λ/q)² = 0.5 with G = 0.75 gives a peak of 0.375 at Λt = π/2.
        let (d, p) = identical(0.8, FRAC_PI_4);
        let g = 0.75;
        let f1 = |t: f64| d.a.coupling_weight() * (d.a.rabi_rate * t).sin().powi(2);
        assert_abs_diff_eq!(g * f1(d.a.peak_time()), 0.375, epsilon = 1e-14);
        let (sab, sab_modes) = identical_entropies(&d, &p, d.a.peak_time()).unwrap();
        assert_abs_diff_eq!(sab, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(sab_modes, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn atom_photon_values() {
        let (d, p) = identical(1.0, FRAC_PI_4);
        let z = atom_photon_entropies_identical(&d, &p, 0.0).unwrap();
        assert_eq!(
            [
                z.atom_a_mode_a,
                z.atom_b_mode_b,
                z.atom_a_mode_b,
                z.atom_b_mode_a
            ],
            [0.0; 4]
        );
        let h = atom_photon_entropies_identical(&d, &p, FRAC_PI_2 / 0.1).unwrap();
        for v in [
            h.atom_a_mode_a,
            h.atom_b_mode_b,
            h.atom_a_mode_b,
            h.atom_b_mode_a,
        ] {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
        }
        let m = atom_photon_entropies_identical(&d, &p, 3.3).unwrap();
        assert_abs_diff_eq!(m.atom_a_mode_a, m.atom_b_mode_b, epsilon = 1e-14);
        assert_abs_diff_eq!(m.atom_a_mode_a, m.atom_a_mode_b, epsilon = 1e-14);
        assert_abs_diff_eq!(m.atom_a_mode_a, m.atom_b_mode_a, epsilon = 1e-14);
    }

    #[test]
    fn specialized_forms_reject_unequal_cavities() {
        let p = ModelParams::new(
            Cavity::resonant(1.0, 0.1).unwrap(),
            Cavity::resonant(1.3, 0.1).unwrap(),
            0.4,
        )
        .unwrap();
        let d = derive_params(&p);
        assert!(identical_entropies(&d, &p, 1.0).is_err());
        assert!(atom_photon_entropies_identical(&d, &p, 1.0).is_err());
    }

    #[test]
    #[should_panic]
    fn pair_rejects_same_subsystem() {
        let (d, p) = identical(1.0, 0.3);
        entropy_report(&d, &p, 1.0).pair(Subsystem::ModeA, Subsystem::ModeA);
    }

    proptest! {
        #[test]
        fn specialized_forms_match_general(
            w in 0.7..1.3f64,
            alpha in prop_oneof![Just(0.0), Just(FRAC_PI_2), Just(FRAC_PI_8), 0.0..FRAC_PI_2],
            t in 0.0..150.0f64,
        ) {
            let (d, p) = identical(w, alpha);
            let r = entropy_report(&d, &p, t);
            let (sab, smodes) = identical_entropies(&d, &p, t).unwrap();
            prop_assert!((sab - r.atoms).abs() <= 1e-12);
            prop_assert!((smodes - r.modes).abs() <= 1e-12);
            prop_assert!((r.atoms_plus_modes - entry_function(alpha)).abs() <= 1e-9);
            let ap = atom_photon_entropies_identical(&d, &p, t).unwrap();
            prop_assert!((ap.atom_a_mode_a - r.atom_a_mode_a).abs() <= 1e-12);
            prop_assert!((ap.atom_b_mode_b - r.atom_b_mode_b).abs() <= 1e-12);
            prop_assert!((ap.atom_a_mode_b - r.atom_a_mode_b).abs() <= 1e-12);
            prop_assert!((ap.atom_b_mode_a - r.atom_b_mode_a).abs() <= 1e-12);
            for v in r.as_array() {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
            }
        }

        #[test]
        fn atom_entropy_factors_through_entry_function(
            w in 0.7..1.3f64,
            a1 in 0.05..1.5f64,
            a2 in 0.05..1.5f64,
            t in 0.0..150.0f64,
        ) {
            let (d1, p1) = identical(w, a1);
            let (d2, p2) = identical(w, a2);
            let s1 = entropy_report(&d1, &p1, t).atoms / entry_function(a1);
            let s2 = entropy_report(&d2, &p2, t).atoms / entry_function(a2);
            prop_assert!((s1 - s2).abs() <= 1e-10);
        }
    }
}
