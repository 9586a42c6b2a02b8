//! Physical inputs, unit conversions, and derived coupling constants.
//!
//! All internal dynamics run in angular-frequency units (energies divided by
//! ħ, rad/s); SI values appear only at this boundary.

use crate::scalar::Scalar;
use thiserror::Error;

/// Reduced Planck constant, J·s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant, J·s (exact).
pub const PLANCK_H: f64 = 6.626_070_15e-34;
/// Atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_KG: f64 = 1.660_539_066_60e-27;
/// Hartree energy, J (CODATA 2018).
pub const HARTREE_J: f64 = 4.359_744_722_2071e-18;
/// Bohr radius, m (CODATA 2018).
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

/// Largest admissible ion-displacement expansion parameter. Beyond this the
/// dropped third-order terms are no longer negligible against the fidelity
/// tolerance.
pub const BETA_MAX: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("atom {atom}: beta = {beta} outside perturbative range (0, {max}); \
             increase |z{atom}| or the trap frequency")]
    BetaOutOfRange { atom: u8, beta: f64, max: f64 },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("z1 and z2 must sit on opposite sides of the ion (signs differ)")]
    SameSidePositions,
    #[error("n_max must be at least 2, got {0}")]
    NMaxTooSmall(usize),
    #[error("gamma must be nonnegative, got {0}")]
    NegativeGamma(f64),
}

/// All physical inputs: masses, trap and tweezer geometry, long-range
/// coefficients, laser settings, decay, and the phonon truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams<T: Scalar> {
    /// Ion mass, kg.
    pub ion_mass: T,
    /// Atom mass, kg. Recorded for provenance; the atomic motion is frozen.
    pub atom_mass: T,
    /// Ion axial trap angular frequency, rad/s.
    pub omega_i: T,
    /// Tweezer-center position of atom 1 on the z axis, m.
    pub z1: T,
    /// Tweezer-center position of atom 2 on the z axis, m (opposite sign).
    pub z2: T,
    /// Ion–Rydberg-atom long-range coefficient C4, J·m^4 (negative = attractive).
    pub c4: T,
    /// Rydberg–Rydberg van der Waals coefficient C6, J·m^6.
    pub c6: T,
    /// Laser Rabi angular frequency on atom 1, rad/s.
    pub rabi1: T,
    /// Laser Rabi angular frequency on atom 2, rad/s.
    pub rabi2: T,
    /// Laser detuning on atom 1, rad/s.
    pub detuning1: T,
    /// Laser detuning on atom 2, rad/s.
    pub detuning2: T,
    /// Rydberg-level population decay rate, 1/s (norm² of a resting Rydberg
    /// state decays as exp(-gamma t)).
    pub gamma: T,
    /// Phonon truncation index: Fock states 0..=n_max are kept.
    pub n_max: usize,
}

/// Couplings derived from [`SystemParams`], all in angular units.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedCouplings<T: Scalar> {
    /// Width of the ion's motional ground state, m.
    pub lambda_i: T,
    /// Displacement expansion parameter of atom 1, 4 lambda_i / |z1|.
    pub beta1: T,
    /// Displacement expansion parameter of atom 2, 4 lambda_i / |z2|.
    pub beta2: T,
    /// Static ion-induced shift of atom 1's Rydberg level, V1 / ħ, rad/s.
    pub v0_1: T,
    /// Static ion-induced shift of atom 2's Rydberg level, V2 / ħ, rad/s.
    pub v0_2: T,
    /// Phonon-coupling amplitude of atom 1, U1 / ħ = v0_1 beta1, rad/s.
    pub u0_1: T,
    /// Phonon-coupling amplitude of atom 2, U2 / ħ = v0_2 beta2, rad/s.
    pub u0_2: T,
    /// Direct Rydberg-Rydberg interaction -C6/(ħ|z1-z2|^6), signed, rad/s.
    pub v_rr_direct: T,
    /// Peak of the mediated interaction envelope, 2 u0_1 u0_2 / omega_i, rad/s.
    pub v_med_peak: T,
    /// Dimensionless atom-phonon coupling, max_j |u0_j| Omega_j / (4 omega_i^2).
    pub kappa: T,
}

impl<T: Scalar> SystemParams<T> {
    /// Operating point of the Rb + Ca+ + Rb system: 40 u ion at
    /// 2π×0.32 MHz, tweezers at ±10.5 µm, C4 = 5.07e10 × (-160 a.u.),
    /// C6 = -h×16.69 THz µm^6, Ω = 2π×0.16 MHz, Rydberg lifetime 100 µs.
    /// Detunings pre-compensate the static ion-induced shift (δ_j = v0_j).
    pub fn rb_ca_default() -> Self {
        let f = T::from_f64c;
        let two_pi = T::TAU();
        let c4 = atomic_units_to_si_c4(f(-160.0 * 5.07e10));
        let z1 = f(10.5e-6);
        let z2 = f(-10.5e-6);
        let v0_1 = c4 / (f(HBAR) * z1.powi(4));
        let v0_2 = c4 / (f(HBAR) * z2.powi(4));
        Self {
            ion_mass: f(40.0) * f(ATOMIC_MASS_KG),
            atom_mass: f(86.909_180_52) * f(ATOMIC_MASS_KG),
            omega_i: two_pi * f(0.32e6),
            z1,
            z2,
            c4,
            c6: f(-16.69) * f(PLANCK_H) * f(1e12) * f(1e-36),
            rabi1: two_pi * f(0.16e6),
            rabi2: two_pi * f(0.16e6),
            detuning1: v0_1,
            detuning2: v0_2,
            gamma: f(1.0e4),
            n_max: 5,
        }
    }

    /// Check every structural invariant; called before any derivation.
    pub fn validate(&self) -> Result<(), ParamsError> {
        let chk_pos = |name: &'static str, v: T| {
            if v > T::zero() {
                Ok(())
            } else {
                Err(ParamsError::NonPositive { name, value: v.to_f64().unwrap_or(f64::NAN) })
            }
        };
        chk_pos("ion_mass", self.ion_mass)?;
        chk_pos("omega_i", self.omega_i)?;
        chk_pos("|z1|", self.z1.abs())?;
        chk_pos("|z2|", self.z2.abs())?;
        if self.z1.signum() == self.z2.signum() {
            return Err(ParamsError::SameSidePositions);
        }
        if self.gamma < T::zero() {
            return Err(ParamsError::NegativeGamma(self.gamma.to_f64().unwrap_or(f64::NAN)));
        }
        if self.n_max < 2 {
            return Err(ParamsError::NMaxTooSmall(self.n_max));
        }
        Ok(())
    }
}

/// Ground-state width of the ion wavepacket, sqrt(ħ / (m omega)).
pub fn ion_ground_width<T: Scalar>(ion_mass: T, omega_i: T) -> T {
    (T::from_f64c(HBAR) / (ion_mass * omega_i)).sqrt()
}

/// Convert a C4 long-range coefficient from atomic units to J·m^4
/// (multiplication by Hartree × Bohr^4).
pub fn atomic_units_to_si_c4<T: Scalar>(value_au: T) -> T {
    let a0 = T::from_f64c(BOHR_RADIUS_M);
    value_au * T::from_f64c(HARTREE_J) * a0.powi(4)
}

/// Direct Rydberg-Rydberg interaction strength -C6/(ħ|z1-z2|^6), signed, rad/s.
pub fn direct_vdw_strength<T: Scalar>(params: &SystemParams<T>) -> T {
    let d = (params.z1 - params.z2).abs();
    -params.c6 / (T::from_f64c(HBAR) * d.powi(6))
}

/// Compute every derived coupling. Rejects parameters outside the
/// perturbative regime (beta_j >= 0.1).
pub fn derive_couplings<T: Scalar>(
    params: &SystemParams<T>,
) -> Result<DerivedCouplings<T>, ParamsError> {
    params.validate()?;
    let hbar = T::from_f64c(HBAR);
    let four = T::from_f64c(4.0);
    let lambda_i = ion_ground_width(params.ion_mass, params.omega_i);
    let beta1 = four * lambda_i / params.z1.abs();
    let beta2 = four * lambda_i / params.z2.abs();
    let beta_max = T::from_f64c(BETA_MAX);
    for (atom, beta) in [(1u8, beta1), (2u8, beta2)] {
        if beta <= T::zero() || beta >= beta_max {
            return Err(ParamsError::BetaOutOfRange {
                atom,
                beta: beta.to_f64().unwrap_or(f64::NAN),
                max: BETA_MAX,
            });
        }
    }
    let v0_1 = params.c4 / (hbar * params.z1.powi(4));
    let v0_2 = params.c4 / (hbar * params.z2.powi(4));
    let u0_1 = v0_1 * beta1;
    let u0_2 = v0_2 * beta2;
    let v_med_peak = T::from_f64c(2.0) * u0_1 * u0_2 / params.omega_i;
    let kappa = (u0_1.abs() * params.rabi1).max(u0_2.abs() * params.rabi2)
        / (four * params.omega_i * params.omega_i);
    Ok(DerivedCouplings {
        lambda_i,
        beta1,
        beta2,
        v0_1,
        v0_2,
        u0_1,
        u0_2,
        v_rr_direct: direct_vdw_strength(params),
        v_med_peak,
        kappa,
    })
}
