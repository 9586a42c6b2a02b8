//! Simulator for a hybrid system of two tweezer-trapped atomic qubits coupled
//! through the motion of a single trapped ion via Rydberg excitation, and for
//! the three-pulse controlled-phase gate built on the mediated interaction.
//!
//! The numerical core is generic over the real scalar type ([`Scalar`]);
//! concrete f64 aliases for the main entry types live at the crate root.

pub mod gate;
pub mod hamiltonian;
pub mod hilbert;
pub mod magnus;
pub mod observables;
pub mod params;
pub mod propagator;
pub mod scalar;

pub use scalar::{Scalar, C};

/// Default-precision system parameters.
pub type SystemParams64 = params::SystemParams<f64>;
/// Default-precision derived couplings.
pub type DerivedCouplings64 = params::DerivedCouplings<f64>;
/// Default-precision dense operator over the joint basis.
pub type JointOperator64 = hilbert::JointOperator<f64>;
/// Default-precision Hamiltonian term sum.
pub type TermSum64 = hamiltonian::TermSum<f64>;
/// Default-precision state vector.
pub type StateVector64 = propagator::StateVector<f64>;
