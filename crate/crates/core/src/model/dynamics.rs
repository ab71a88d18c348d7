use num_complex::Complex;

use super::params::{stationary_energies, DerivedParams, ModelParams};
use crate::scalar::Real;
use crate::subsystem::Subsystem;

/// Coefficients of the evolved state on the single-excitation basis
/// `|↑↓00⟩, |↓↑00⟩, |↓↓10⟩, |↓↓01⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes<T> {
    pub r1: Complex<T>,
    pub r2: Complex<T>,
    pub r3: Complex<T>,
    pub r4: Complex<T>,
    pub t: T,
}

impl<T: Real> Amplitudes<T> {
    pub fn as_array(&self) -> [Complex<T>; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }

    pub fn norm_sqr(&self) -> T {
        self.as_array()
            .iter()
            .fold(T::zero(), |acc, r| acc + r.norm_sqr())
    }

    /// Occupation probabilities as `|r_s|²`.
    pub fn probabilities(&self) -> Probabilities<T> {
        Probabilities {
            atom_a: self.r1.norm_sqr(),
            atom_b: self.r2.norm_sqr(),
            mode_a: self.r3.norm_sqr(),
            mode_b: self.r4.norm_sqr(),
        }
    }
}

/// Excitation probability of each atom and occupation of each mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities<T> {
    pub atom_a: T,
    pub atom_b: T,
    pub mode_a: T,
    pub mode_b: T,
}

impl<T: Real> Probabilities<T> {
    pub fn get(&self, s: Subsystem) -> T {
        match s {
            Subsystem::AtomA => self.atom_a,
            Subsystem::AtomB => self.atom_b,
            Subsystem::ModeA => self.mode_a,
            Subsystem::ModeB => self.mode_b,
        }
    }

    pub fn total(&self) -> T {
        self.atom_a + self.atom_b + self.mode_a + self.mode_b
    }
}

fn phase<T: Real>(energy: T, t: T) -> Complex<T> {
    Complex::from_polar(T::one(), -(energy * t))
}

/// Closed-form amplitudes at time `t` for the photon entering at angle `α`.
pub fn amplitudes<T: Real>(d: &DerivedParams<T>, p: &ModelParams<T>, t: T) -> Amplitudes<T> {
    let [e1, e2, e3, e4] = stationary_energies(d, p);
    let (sin_a, cos_a) = p.alpha().sin_cos();
    let half = T::lit(0.5);
    let (st_a, ct_a) = d.a.theta.sin_cos();
    let (st_b, ct_b) = d.b.theta.sin_cos();
    let (p1, p2, p3, p4) = (phase(e1, t), phase(e2, t), phase(e3, t), phase(e4, t));

    let mix_a = half * sin_a * (T::lit(2.0) * d.a.theta).sin();
    let mix_b = half * cos_a * (T::lit(2.0) * d.b.theta).sin();
    Amplitudes {
        r1: (p4 - p2) * mix_a,
        r2: (p3 - p1) * mix_b,
        r3: (p2 * (st_a * st_a) + p4 * (ct_a * ct_a)) * sin_a,
        r4: (p1 * (st_b * st_b) + p3 * (ct_b * ct_b)) * cos_a,
        t,
    }
}

/// Closed-form occupation probabilities at time `t`.
pub fn probabilities<T: Real>(d: &DerivedParams<T>, p: &ModelParams<T>, t: T) -> Probabilities<T> {
    let (sin_a, cos_a) = p.alpha().sin_cos();
    let (sin2_a, cos2_a) = (sin_a * sin_a, cos_a * cos_a);
    let excited = |c: &super::params::DressedCavity<T>| {
        let s = (c.rabi_rate * t).sin();
        c.coupling_weight() * s * s
    };
    let (fa, fb) = (excited(&d.a), excited(&d.b));
    Probabilities {
        atom_a: fa * sin2_a,
        atom_b: fb * cos2_a,
        mode_a: sin2_a * (T::one() - fa),
        mode_b: cos2_a * (T::one() - fb),
    }
}
