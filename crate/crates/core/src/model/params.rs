use crate::error::ModelError;
use crate::scalar::Real;

/// Relative tolerance under which two cavities count as identical.
pub const IDENTICAL_REL_TOL: f64 = 1e-12;

/// Physical inputs for one atom-mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cavity<T> {
    /// Atomic level splitting `E_j`.
    pub atom_gap: T,
    /// Photon mode angular frequency `ω_j`.
    pub mode_frequency: T,
    /// Atom-photon coupling `g_j`.
    pub coupling: T,
}

impl<T: Real> Cavity<T> {
    pub fn new(atom_gap: T, mode_frequency: T, coupling: T) -> Result<Self, ModelError> {
        check_positive("atom_gap", atom_gap)?;
        check_positive("mode_frequency", mode_frequency)?;
        check_positive("coupling", coupling)?;
        Ok(Self {
            atom_gap,
            mode_frequency,
            coupling,
        })
    }

    /// Cavity whose mode is tuned to the atomic splitting.
    pub fn resonant(atom_gap: T, coupling: T) -> Result<Self, ModelError> {
        Self::new(atom_gap, atom_gap, coupling)
    }

    fn mismatch(&self, other: &Self) -> Option<&'static str> {
        let differs = |x: T, y: T| {
            let scale = x.abs().max(y.abs());
            (x - y).abs() > T::lit(IDENTICAL_REL_TOL) * scale
        };
        if differs(self.atom_gap, other.atom_gap) {
            Some("atom_gap")
        } else if differs(self.mode_frequency, other.mode_frequency) {
            Some("mode_frequency")
        } else if differs(self.coupling, other.coupling) {
            Some("coupling")
        } else {
            None
        }
    }
}

fn check_positive<T: Real>(name: &'static str, value: T) -> Result<(), ModelError> {
    if value.is_finite() && value > T::zero() {
        Ok(())
    } else {
        Err(ModelError::NonPositive {
            name,
            value: value.as_f64(),
        })
    }
}

/// Both cavities plus the photon entry angle `α`.
///
/// Construction validates every invariant, so downstream functions are total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    a: Cavity<T>,
    b: Cavity<T>,
    alpha: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(a: Cavity<T>, b: Cavity<T>, alpha: T) -> Result<Self, ModelError> {
        // Re-validate: `Cavity` fields are public.
        let a = Cavity::new(a.atom_gap, a.mode_frequency, a.coupling)?;
        let b = Cavity::new(b.atom_gap, b.mode_frequency, b.coupling)?;
        if !(alpha >= T::zero() && alpha <= T::FRAC_PI_2()) {
            return Err(ModelError::AlphaOutOfRange(alpha.as_f64()));
        }
        Ok(Self { a, b, alpha })
    }

    pub fn identical(cavity: Cavity<T>, alpha: T) -> Result<Self, ModelError> {
        Self::new(cavity, cavity, alpha)
    }

    pub fn cavity_a(&self) -> &Cavity<T> {
        &self.a
    }

    pub fn cavity_b(&self) -> &Cavity<T> {
        &self.b
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn with_alpha(&self, alpha: T) -> Result<Self, ModelError> {
        Self::new(self.a, self.b, alpha)
    }

    /// True when every cavity parameter agrees to [`IDENTICAL_REL_TOL`].
    pub fn is_identical(&self) -> bool {
        self.a.mismatch(&self.b).is_none()
    }

    pub(crate) fn require_identical(&self) -> Result<(), ModelError> {
        match self.a.mismatch(&self.b) {
            None => Ok(()),
            Some(field) => Err(ModelError::NotIdentical(field)),
        }
    }
}

/// Dimensionless dressed-state quantities for one cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedCavity<T> {
    /// Detuning `ε = (ω − E)/E`.
    pub epsilon: T,
    /// Coupling `λ = g/E`.
    pub lambda: T,
    /// Dressed splitting parameter `q = sqrt(λ² + ε²/4)`.
    pub q: T,
    /// Mixing angle, `cos²θ = 1/2 + ε/(4q)`.
    pub theta: T,
    /// Rabi rate `Λ = q·E`.
    pub rabi_rate: T,
}

impl<T: Real> DressedCavity<T> {
    fn from_cavity(c: &Cavity<T>) -> Self {
        let two = T::lit(2.0);
        let epsilon = (c.mode_frequency - c.atom_gap) / c.atom_gap;
        let lambda = c.coupling / c.atom_gap;
        let q = lambda.hypot(epsilon / two);
        // cos 2θ = ε/(2q), sin 2θ = λ/q
        let theta = lambda.atan2(epsilon / two) / two;
        Self {
            epsilon,
            lambda,
            q,
            theta,
            rabi_rate: q * c.atom_gap,
        }
    }

    /// `(λ/q)²`, the peak fraction of the entering photon absorbed by the atom.
    pub fn coupling_weight(&self) -> T {
        let r = self.lambda / self.q;
        r * r
    }

    /// First time the atomic excitation peaks, `π/(2Λ)`.
    pub fn peak_time(&self) -> T {
        T::FRAC_PI_2() / self.rabi_rate
    }

    /// Floor of the no-atom-excited probability, `ε²/(4q²)`.
    pub fn ground_floor(&self) -> T {
        let r = self.epsilon / (T::lit(2.0) * self.q);
        r * r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    pub a: DressedCavity<T>,
    pub b: DressedCavity<T>,
}

pub fn derive_params<T: Real>(p: &ModelParams<T>) -> DerivedParams<T> {
    DerivedParams {
        a: DressedCavity::from_cavity(&p.a),
        b: DressedCavity::from_cavity(&p.b),
    }
}

/// The four single-excitation energies `[E_1, E_2, E_3, E_4]`.
///
/// `E_1`/`E_3` are the lower/upper dressed states of cavity B with cavity A
/// in its ground-vacuum state; `E_2`/`E_4` are the same for cavity A. The
/// zero of energy puts each atom halfway between its levels and includes the
/// `ω/2` vacuum energy of both modes.
pub fn stationary_energies<T: Real>(d: &DerivedParams<T>, p: &ModelParams<T>) -> [T; 4] {
    let (b_minus, b_plus) = dressed_pair(&d.a, &p.a, &d.b, &p.b);
    let (a_minus, a_plus) = dressed_pair(&d.b, &p.b, &d.a, &p.a);
    [b_minus, a_minus, b_plus, a_plus]
}

/// `E_±` with cavity `ground` unexcited and cavity `dressed` holding the quantum.
fn dressed_pair<T: Real>(
    ground: &DressedCavity<T>,
    ground_raw: &Cavity<T>,
    dressed: &DressedCavity<T>,
    dressed_raw: &Cavity<T>,
) -> (T, T) {
    let base = ground.epsilon * ground_raw.atom_gap / T::lit(2.0)
        + (T::one() + dressed.epsilon) * dressed_raw.atom_gap;
    let split = dressed.q * dressed_raw.atom_gap;
    (base - split, base + split)
}
