//! Time-ordered propagation of state vectors and propagator matrices under a
//! [`TermSum`] Hamiltonian.
//!
//! Fixed-step classical Runge-Kutta on i dψ/dt = H(t) ψ, with the midpoint
//! Hamiltonian shared by the two interior stages. Deterministic: identical
//! inputs produce bit-identical traces.

use ndarray::{Array1, Array2};
use thiserror::Error;

use crate::hamiltonian::TermSum;
use crate::hilbert::{BasisState, JointBasis, JointOperator};
use crate::scalar::{cr, im, C, Scalar};

/// Smallest admissible integration step, s.
pub const DT_FLOOR: f64 = 1e-15;

#[derive(Debug, Error, PartialEq)]
pub enum PropagationError {
    #[error("integration step {dt:.3e} s fell below {floor:.0e} s for window [{t0:.3e}, {t1:.3e}]")]
    StepUnderflow { dt: f64, floor: f64, t0: f64, t1: f64 },
    #[error("time window is empty or reversed: t0 = {t0:.6e}, t1 = {t1:.6e}")]
    EmptyWindow { t0: f64, t1: f64 },
    #[error("dt_max must be positive, got {0:.3e}")]
    NonPositiveStep(f64),
    #[error("state dimension {state} does not match Hamiltonian dimension {ham}")]
    DimensionMismatch { state: usize, ham: usize },
}

/// Complex amplitudes over a [`JointBasis`] with a time stamp.
#[derive(Clone, Debug)]
pub struct StateVector<T: Scalar> {
    pub basis: JointBasis,
    pub amplitudes: Array1<C<T>>,
    /// Time stamp, s.
    pub time: T,
}

impl<T: Scalar> StateVector<T> {
    /// Unit basis state |a1 a2⟩ ⊗ |n⟩ at t = 0.
    pub fn basis_state(basis: JointBasis, state: BasisState) -> Self {
        let mut amplitudes = Array1::zeros(basis.dim());
        amplitudes[basis.index_of(state)] = C::new(T::one(), T::zero());
        Self { basis, amplitudes, time: T::zero() }
    }

    pub fn norm(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude on a single basis state.
    pub fn amplitude(&self, state: BasisState) -> C<T> {
        self.amplitudes[self.basis.index_of(state)]
    }
}

/// Sampled times with the full amplitude list and norm at each.
#[derive(Clone, Debug)]
pub struct EvolutionTrace<T: Scalar> {
    pub basis: JointBasis,
    /// Strictly increasing sample times, s.
    pub times: Vec<T>,
    /// One amplitude vector per sample.
    pub amplitudes: Vec<Array1<C<T>>>,
}

impl<T: Scalar> EvolutionTrace<T> {
    pub fn new(basis: JointBasis) -> Self {
        Self { basis, times: Vec::new(), amplitudes: Vec::new() }
    }

    pub fn push(&mut self, t: T, amps: Array1<C<T>>) {
        debug_assert!(self.times.last().map_or(true, |&last| t > last));
        self.times.push(t);
        self.amplitudes.push(amps);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn norm_sqr_at(&self, k: usize) -> T {
        self.amplitudes[k].iter().map(|a| a.norm_sqr()).sum()
    }

    /// Concatenate a later trace, shifting its local times by `offset` and
    /// dropping its first sample (which duplicates this trace's last).
    pub fn append_shifted(&mut self, other: &EvolutionTrace<T>, offset: T) {
        for (k, &t) in other.times.iter().enumerate() {
            let t_global = t + offset;
            if self.times.last().map_or(false, |&last| t_global <= last) {
                continue;
            }
            self.times.push(t_global);
            self.amplitudes.push(other.amplitudes[k].clone());
        }
    }
}

fn step_count<T: Scalar>(t0: T, t1: T, dt_max: T) -> Result<(usize, T), PropagationError> {
    if !(t1 > t0) {
        return Err(PropagationError::EmptyWindow {
            t0: t0.to_f64().unwrap_or(f64::NAN),
            t1: t1.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(dt_max > T::zero()) {
        return Err(PropagationError::NonPositiveStep(dt_max.to_f64().unwrap_or(f64::NAN)));
    }
    let span = t1 - t0;
    let n = (span / dt_max).ceil().to_f64().unwrap_or(f64::NAN);
    if !n.is_finite() {
        return Err(PropagationError::NonPositiveStep(dt_max.to_f64().unwrap_or(f64::NAN)));
    }
    let n = (n as usize).max(1);
    let dt = span / T::from_f64c(n as f64);
    if dt.to_f64().unwrap_or(0.0) < DT_FLOOR {
        return Err(PropagationError::StepUnderflow {
            dt: dt.to_f64().unwrap_or(f64::NAN),
            floor: DT_FLOOR,
            t0: t0.to_f64().unwrap_or(f64::NAN),
            t1: t1.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((n, dt))
}

/// Workspace holding the matrices one RK4 step needs.
struct Rk4Workspace<T: Scalar> {
    h_t: Array2<C<T>>,
    h_mid: Array2<C<T>>,
    h_next: Array2<C<T>>,
}

impl<T: Scalar> Rk4Workspace<T> {
    fn new(dim: usize) -> Self {
        Self {
            h_t: Array2::zeros((dim, dim)),
            h_mid: Array2::zeros((dim, dim)),
            h_next: Array2::zeros((dim, dim)),
        }
    }

    fn load(&mut self, h: &TermSum<T>, t: T, dt: T, reuse_last: bool) {
        if reuse_last {
            std::mem::swap(&mut self.h_t, &mut self.h_next);
        } else {
            h.eval_into(t, &mut self.h_t);
        }
        let half = T::from_f64c(0.5);
        h.eval_into(t + dt * half, &mut self.h_mid);
        h.eval_into(t + dt, &mut self.h_next);
    }
}

fn rhs<T: Scalar>(h: &Array2<C<T>>, psi: &Array1<C<T>>) -> Array1<C<T>> {
    h.dot(psi).mapv(|x| -im::<T>() * x)
}

fn rk4_step<T: Scalar>(ws: &Rk4Workspace<T>, psi: &Array1<C<T>>, dt: T) -> Array1<C<T>> {
    let half = T::from_f64c(0.5);
    let sixth = T::from_f64c(1.0 / 6.0);
    let two = T::from_f64c(2.0);
    let k1 = rhs(&ws.h_t, psi);
    let k2 = rhs(&ws.h_mid, &(psi + &k1.mapv(|x| x * cr(half * dt))));
    let k3 = rhs(&ws.h_mid, &(psi + &k2.mapv(|x| x * cr(half * dt))));
    let k4 = rhs(&ws.h_next, &(psi + &k3.mapv(|x| x * cr(dt))));
    let mut incr = k1;
    incr.zip_mut_with(&k2, |a, &b| *a = *a + b * cr(two));
    incr.zip_mut_with(&k3, |a, &b| *a = *a + b * cr(two));
    incr.zip_mut_with(&k4, |a, &b| *a = *a + b);
    psi + &incr.mapv(|x| x * cr(dt * sixth))
}

/// Integrate the state from t0 to t1 with steps no longer than dt_max,
/// recording every step in the returned trace (t is the Hamiltonian's own
/// clock; the trace carries the same local times).
pub fn evolve<T: Scalar>(
    state: &StateVector<T>,
    h: &TermSum<T>,
    t0: T,
    t1: T,
    dt_max: T,
) -> Result<(StateVector<T>, EvolutionTrace<T>), PropagationError> {
    if state.amplitudes.len() != h.dim() {
        return Err(PropagationError::DimensionMismatch {
            state: state.amplitudes.len(),
            ham: h.dim(),
        });
    }
    let (n, dt) = step_count(t0, t1, dt_max)?;
    let mut trace = EvolutionTrace::new(h.basis);
    let mut psi = state.amplitudes.clone();
    trace.push(t0, psi.clone());
    let mut ws = Rk4Workspace::new(h.dim());
    for k in 0..n {
        let t = t0 + dt * T::from_f64c(k as f64);
        ws.load(h, t, dt, k > 0);
        psi = rk4_step(&ws, &psi, dt);
        trace.push(t + dt, psi.clone());
    }
    let final_state = StateVector { basis: h.basis, amplitudes: psi, time: t1 };
    Ok((final_state, trace))
}

/// Propagator matrix over [t0, t1]: all basis columns evolved together.
/// Unitary to integration accuracy when the Hamiltonian is Hermitian.
pub fn propagator_matrix<T: Scalar>(
    h: &TermSum<T>,
    t0: T,
    t1: T,
    dt_max: T,
) -> Result<JointOperator<T>, PropagationError> {
    let (n, dt) = step_count(t0, t1, dt_max)?;
    let dim = h.dim();
    let mut u: Array2<C<T>> = Array2::from_diag_elem(dim, C::new(T::one(), T::zero()));
    let mut ws = Rk4Workspace::new(dim);
    let half = T::from_f64c(0.5);
    let sixth = T::from_f64c(1.0 / 6.0);
    let two = C::new(T::from_f64c(2.0), T::zero());
    let mi = -im::<T>();
    for k in 0..n {
        let t = t0 + dt * T::from_f64c(k as f64);
        ws.load(h, t, dt, k > 0);
        let k1 = ws.h_t.dot(&u).mapv(|x| mi * x);
        let u1 = &u + &k1.mapv(|x| x * cr(half * dt));
        let k2 = ws.h_mid.dot(&u1).mapv(|x| mi * x);
        let u2 = &u + &k2.mapv(|x| x * cr(half * dt));
        let k3 = ws.h_mid.dot(&u2).mapv(|x| mi * x);
        let u3 = &u + &k3.mapv(|x| x * cr(dt));
        let k4 = ws.h_next.dot(&u3).mapv(|x| mi * x);
        let mut incr = k1;
        incr.zip_mut_with(&k2, |a, &b| *a = *a + b * two);
        incr.zip_mut_with(&k3, |a, &b| *a = *a + b * two);
        incr.zip_mut_with(&k4, |a, &b| *a = *a + b);
        u.zip_mut_with(&incr, |a, &b| *a = *a + b * cr(dt * sixth));
    }
    Ok(u)
}
