//! Time-dependent Hamiltonians as term sums H(t) = Σ c_k(t) M_k.
//!
//! Every coefficient in this model is a sum of atoms amp·t^p·e^{i f t} with
//! p ∈ {0, 1}, which keeps evaluation, quadrature, and closed-form checks
//! exact. All energies are divided by ħ (angular units, rad/s).

use ndarray::Array2;
use thiserror::Error;

use crate::hilbert::{
    atomic_pair, embed_product, kron, ladder_ops, level_op, level_proj, pi0, AtomId, AtomLevel,
    JointBasis, JointOperator,
};
use crate::params::{derive_couplings, ParamsError, SystemParams};
use crate::scalar::{cr, im, C, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum HamiltonianError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("pulse config activates atom {0} whose Rabi frequency is zero")]
    InactiveLaser(u8),
}

/// One additive piece of a coefficient: amp · t^power · e^{i freq t}.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CoeffAtom<T: Scalar> {
    pub amp: C<T>,
    /// 0 or 1.
    pub power: u8,
    /// Angular frequency of the phase factor, rad/s.
    pub freq: T,
}

impl<T: Scalar> CoeffAtom<T> {
    pub fn constant(amp: C<T>) -> Self {
        Self { amp, power: 0, freq: T::zero() }
    }

    pub fn oscillating(amp: C<T>, freq: T) -> Self {
        Self { amp, power: 0, freq }
    }

    pub fn ramped(amp: C<T>, freq: T) -> Self {
        Self { amp, power: 1, freq }
    }

    pub fn eval(&self, t: T) -> C<T> {
        let phase = C::from_polar(T::one(), self.freq * t);
        let ramp = if self.power == 0 { T::one() } else { t };
        self.amp * phase * cr(ramp)
    }
}

/// Perturbative bookkeeping class of a term, by power of the displacement
/// parameter beta it carries.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Laser and static terms (beta^0).
    Zeroth,
    /// Linear phonon coupling (beta^1).
    First,
    /// Mediated couplings and quadratic shifts (beta^2), present only in the
    /// effective Hamiltonian.
    Second,
    /// Anti-Hermitian amplitude damping.
    Decay,
}

/// A constant matrix with a scalar time coefficient.
#[derive(Clone, Debug)]
pub struct Term<T: Scalar> {
    pub label: String,
    pub order: TermOrder,
    pub coeff: Vec<CoeffAtom<T>>,
    pub matrix: JointOperator<T>,
}

impl<T: Scalar> Term<T> {
    pub fn eval_coeff(&self, t: T) -> C<T> {
        self.coeff.iter().map(|a| a.eval(t)).fold(C::new(T::zero(), T::zero()), |s, x| s + x)
    }

    /// Human-readable coefficient formula for diagnostics.
    pub fn coeff_formula(&self) -> String {
        let pieces: Vec<String> = self
            .coeff
            .iter()
            .map(|a| {
                let mut s = format!("({:+.6e}{:+.6e}i)", a.amp.re, a.amp.im);
                if a.power == 1 {
                    s.push_str("*t");
                }
                if a.freq != T::zero() {
                    s.push_str(&format!("*exp({:+.6e}i*t)", a.freq));
                }
                s
            })
            .collect();
        pieces.join(" + ")
    }
}

/// Sum of (coefficient, matrix) pairs over a fixed joint basis.
#[derive(Clone, Debug)]
pub struct TermSum<T: Scalar> {
    pub basis: JointBasis,
    pub terms: Vec<Term<T>>,
}

impl<T: Scalar> TermSum<T> {
    pub fn new(basis: JointBasis) -> Self {
        Self { basis, terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn push(
        &mut self,
        label: impl Into<String>,
        order: TermOrder,
        coeff: Vec<CoeffAtom<T>>,
        matrix: JointOperator<T>,
    ) {
        debug_assert_eq!(matrix.dim(), (self.dim(), self.dim()));
        self.terms.push(Term { label: label.into(), order, coeff, matrix });
    }

    /// Append all terms of another sum over the same basis.
    pub fn extend(&mut self, other: TermSum<T>) {
        assert_eq!(self.basis, other.basis, "term sums over different bases");
        self.terms.extend(other.terms);
    }

    /// Evaluate H(t) into a fresh matrix.
    pub fn eval(&self, t: T) -> JointOperator<T> {
        let mut out = Array2::zeros((self.dim(), self.dim()));
        self.eval_into(t, &mut out);
        out
    }

    /// Evaluate H(t) into a caller-provided buffer (zeroed first).
    pub fn eval_into(&self, t: T, out: &mut JointOperator<T>) {
        out.fill(C::new(T::zero(), T::zero()));
        for term in &self.terms {
            let c = term.eval_coeff(t);
            if c.norm_sqr() == T::zero() {
                continue;
            }
            out.zip_mut_with(&term.matrix, |o, &m| *o = *o + c * m);
        }
    }

    /// Restrict to terms of the given orders (used by the Magnus bookkeeping).
    pub fn filtered(&self, keep: impl Fn(TermOrder) -> bool) -> TermSum<T> {
        TermSum {
            basis: self.basis,
            terms: self.terms.iter().filter(|t| keep(t.order)).cloned().collect(),
        }
    }
}

/// Which atoms a pulse drives and whether the Rydberg-pair terms are included.
/// An inactive atom contributes no terms at all: the pulse Hamiltonian acts as
/// the identity on it.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PulseConfig {
    pub atom1_active: bool,
    pub atom2_active: bool,
    /// Include the direct and mediated |rr⟩⟨rr| interaction terms.
    pub rr_terms: bool,
}

impl PulseConfig {
    /// Both lasers on, pair terms included: the configuration the
    /// second-order derivation is written for.
    pub fn both_active() -> Self {
        Self { atom1_active: true, atom2_active: true, rr_terms: true }
    }

    pub fn single(atom: AtomId, rr_terms: bool) -> Self {
        Self {
            atom1_active: atom == AtomId::Atom1,
            atom2_active: atom == AtomId::Atom2,
            rr_terms,
        }
    }

    pub fn is_active(&self, atom: AtomId) -> bool {
        match atom {
            AtomId::Atom1 => self.atom1_active,
            AtomId::Atom2 => self.atom2_active,
        }
    }
}

/// Signed per-atom quantities the builders need, in angular units.
struct DynCouplings<T: Scalar> {
    /// Static shifts v0_j.
    v0: [T; 2],
    /// Signed phonon-coupling amplitudes v0_j · 4 lambda_i / z_j. The sign of
    /// z_j carries the push direction of each atom on the shared ion; for the
    /// opposite-side geometry the two couplings have opposite signs.
    u: [T; 2],
    rabi: [T; 2],
    detuning: [T; 2],
}

fn dyn_couplings<T: Scalar>(params: &SystemParams<T>) -> Result<DynCouplings<T>, ParamsError> {
    let d = derive_couplings(params)?;
    let u1 = d.u0_1 * params.z1.signum();
    let u2 = d.u0_2 * params.z2.signum();
    Ok(DynCouplings {
        v0: [d.v0_1, d.v0_2],
        u: [u1, u2],
        rabi: [params.rabi1, params.rabi2],
        detuning: [params.detuning1, params.detuning2],
    })
}

fn atom_ids() -> [AtomId; 2] {
    AtomId::BOTH
}

fn projector_r_term<T: Scalar>(basis: &JointBasis, atom: AtomId) -> JointOperator<T> {
    let pr = level_proj::<T>(AtomLevel::Rydberg);
    let other = Array2::from_diag_elem(3, cr(T::one()));
    let pair = match atom {
        AtomId::Atom1 => atomic_pair(&pr, &other),
        AtomId::Atom2 => atomic_pair(&other, &pr),
    };
    embed_product(basis, &pair, &Array2::from_diag_elem(basis.phonon_dim(), cr(T::one())))
}

/// |r⟩_j⟨1| + |1⟩_j⟨r| on the joint space.
fn sigma_x_term<T: Scalar>(basis: &JointBasis, atom: AtomId) -> JointOperator<T> {
    let sx = &level_op::<T>(AtomLevel::Rydberg, AtomLevel::One)
        + &level_op::<T>(AtomLevel::One, AtomLevel::Rydberg);
    let eye3 = Array2::from_diag_elem(3, cr(T::one()));
    let pair = match atom {
        AtomId::Atom1 => atomic_pair(&sx, &eye3),
        AtomId::Atom2 => atomic_pair(&eye3, &sx),
    };
    embed_product(basis, &pair, &Array2::from_diag_elem(basis.phonon_dim(), cr(T::one())))
}

/// Anti-symmetric flip |r⟩_j⟨1| − |1⟩_j⟨r| on the atomic factor only (9×9).
fn sigma_y_like_atomic<T: Scalar>(atom: AtomId) -> Array2<C<T>> {
    let flip = &level_op::<T>(AtomLevel::Rydberg, AtomLevel::One)
        - &level_op::<T>(AtomLevel::One, AtomLevel::Rydberg);
    let eye3 = Array2::from_diag_elem(3, cr(T::one()));
    match atom {
        AtomId::Atom1 => atomic_pair(&flip, &eye3),
        AtomId::Atom2 => atomic_pair(&eye3, &flip),
    }
}

fn rr_pair_term<T: Scalar>(basis: &JointBasis) -> JointOperator<T> {
    crate::hilbert::rr_projector(basis)
}

/// Laser term of one atom: −δ_j |r⟩_j⟨r| + (Ω_j/2)(|r⟩_j⟨1| + h.c.).
pub fn laser_term<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    rabi: T,
    detuning: T,
) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    let half = T::from_f64c(0.5);
    h.push(
        format!("laser_detuning[{}]", atom.number()),
        TermOrder::Zeroth,
        vec![CoeffAtom::constant(cr(-detuning))],
        projector_r_term(basis, atom),
    );
    h.push(
        format!("laser_coupling[{}]", atom.number()),
        TermOrder::Zeroth,
        vec![CoeffAtom::constant(cr(rabi * half))],
        sigma_x_term(basis, atom),
    );
    h
}

/// Static ion-induced shift plus the linear phonon coupling of one atom:
/// (v0_j + u_j ξ̂(t)) |r⟩_j⟨r| with ξ̂(t) = (a e^{−iωt} + a† e^{iωt})/√2.
fn ion_shift_terms<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    v0: T,
    u_signed: T,
    omega_i: T,
) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    let j = atom.number();
    h.push(
        format!("static_shift[{j}]"),
        TermOrder::Zeroth,
        vec![CoeffAtom::constant(cr(v0))],
        projector_r_term(basis, atom),
    );
    let (a, adag) = ladder_ops::<T>(basis.n_max);
    let pr = level_proj::<T>(AtomLevel::Rydberg);
    let eye3 = Array2::from_diag_elem(3, cr(T::one()));
    let pair = match atom {
        AtomId::Atom1 => atomic_pair(&pr, &eye3),
        AtomId::Atom2 => atomic_pair(&eye3, &pr),
    };
    let amp = cr(u_signed / T::SQRT_2());
    h.push(
        format!("phonon_coupling_a[{j}]"),
        TermOrder::First,
        vec![CoeffAtom::oscillating(amp, -omega_i)],
        embed_product(basis, &pair, &a),
    );
    h.push(
        format!("phonon_coupling_adag[{j}]"),
        TermOrder::First,
        vec![CoeffAtom::oscillating(amp, omega_i)],
        embed_product(basis, &pair, &adag),
    );
    h
}

/// Direct Rydberg-pair interaction v_rr |rr⟩⟨rr|.
fn direct_rr_term<T: Scalar>(basis: &JointBasis, v_rr: T) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    h.push(
        "vdw_direct",
        TermOrder::Zeroth,
        vec![CoeffAtom::constant(cr(v_rr))],
        rr_pair_term(basis),
    );
    h
}

/// Pre-expansion Hamiltonian of the whole system (both lasers, both phonon
/// couplings, direct pair interaction); the brute-force reference the
/// second-order machinery is validated against.
pub fn full_hamiltonian<T: Scalar>(
    params: &SystemParams<T>,
) -> Result<TermSum<T>, HamiltonianError> {
    full_hamiltonian_config(params, PulseConfig::both_active())
}

/// Pre-expansion Hamiltonian restricted to a pulse configuration. Inactive
/// atoms contribute no terms.
pub fn full_hamiltonian_config<T: Scalar>(
    params: &SystemParams<T>,
    config: PulseConfig,
) -> Result<TermSum<T>, HamiltonianError> {
    let dc = dyn_couplings(params)?;
    let basis = JointBasis::new(params.n_max);
    let mut h = TermSum::new(basis);
    for (k, atom) in atom_ids().into_iter().enumerate() {
        if !config.is_active(atom) {
            continue;
        }
        h.extend(laser_term(&basis, atom, dc.rabi[k], dc.detuning[k]));
        h.extend(ion_shift_terms(&basis, atom, dc.v0[k], dc.u[k], params.omega_i));
    }
    if config.rr_terms {
        let d = derive_couplings(params)?;
        h.extend(direct_rr_term(&basis, d.v_rr_direct));
    }
    Ok(h)
}

/// Second-order effective Hamiltonian for a pulse configuration: the
/// first-order terms of the active atoms plus the mediated Rydberg-qubit
/// coupling, the quadratic shifts, and the mediated pair interaction, with
/// t measured from the pulse start.
pub fn effective_hamiltonian<T: Scalar>(
    params: &SystemParams<T>,
    config: PulseConfig,
) -> Result<TermSum<T>, HamiltonianError> {
    let dc = dyn_couplings(params)?;
    for (k, atom) in atom_ids().into_iter().enumerate() {
        if config.is_active(atom) && dc.rabi[k] == T::zero() {
            return Err(HamiltonianError::InactiveLaser(atom.number()));
        }
    }
    let basis = JointBasis::new(params.n_max);
    let mut h = full_hamiltonian_config(params, config)?;
    let omega = params.omega_i;
    for (k, atom) in atom_ids().into_iter().enumerate() {
        if !config.is_active(atom) {
            continue;
        }
        h.extend(mediated_rabi_terms(&basis, atom, dc.u[k], dc.rabi[k], omega));
        h.extend(quadratic_shift_terms(&basis, atom, dc.u[k], omega));
    }
    if config.rr_terms {
        h.extend(mediated_rr_terms(&basis, dc.u[0], dc.u[1], omega));
    }
    Ok(h)
}

/// Ion-mediated coupling of |r⟩_j and |1⟩_j (second order):
/// −(i u_j Ω_j / 4) [ξ̂(t)·t + π̂(t)/ω + π̂(0)/ω] (|r⟩_j⟨1| − |1⟩_j⟨r|).
fn mediated_rabi_terms<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    u_signed: T,
    rabi: T,
    omega: T,
) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    let j = atom.number();
    let (a, adag) = ladder_ops::<T>(basis.n_max);
    let flip = sigma_y_like_atomic::<T>(atom);
    let quarter = T::from_f64c(0.25);
    // prefactor −i u Ω / 4
    let p = -im::<T>() * cr(u_signed * rabi * quarter);
    let inv_s2 = cr(T::SQRT_2().recip());
    let inv_s2w = inv_s2 / cr(omega);
    // a-side coefficient: [ t e^{−iωt} + (−i/ω) e^{−iωt} + (−i/ω) ] / √2
    let coeff_a = vec![
        CoeffAtom::ramped(p * inv_s2, -omega),
        CoeffAtom::oscillating(p * (-im::<T>()) * inv_s2w, -omega),
        CoeffAtom::constant(p * (-im::<T>()) * inv_s2w),
    ];
    // a†-side coefficient: [ t e^{iωt} + (i/ω) e^{iωt} + (i/ω) ] / √2
    let coeff_adag = vec![
        CoeffAtom::ramped(p * inv_s2, omega),
        CoeffAtom::oscillating(p * im::<T>() * inv_s2w, omega),
        CoeffAtom::constant(p * im::<T>() * inv_s2w),
    ];
    h.push(
        format!("mediated_rabi_a[{j}]"),
        TermOrder::Second,
        coeff_a,
        embed_product(basis, &flip, &a),
    );
    h.push(
        format!("mediated_rabi_adag[{j}]"),
        TermOrder::Second,
        coeff_adag,
        embed_product(basis, &flip, &adag),
    );
    h
}

/// Single-atom second-order shift −(u_j²/2ω)[1 − cos ωt] |r⟩_j⟨r|.
fn quadratic_shift_terms<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    u_signed: T,
    omega: T,
) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    let j = atom.number();
    let amp = u_signed * u_signed / (T::from_f64c(2.0) * omega);
    let half = T::from_f64c(0.5);
    h.push(
        format!("quadratic_shift[{j}]"),
        TermOrder::Second,
        one_minus_cos_coeff(-amp, omega, half),
        projector_r_term(basis, atom),
    );
    h
}

/// Mediated pair interaction −(u_1 u_2/ω)[1 − cos ωt] |rr⟩⟨rr|. With the
/// atoms on opposite sides of the ion the signed couplings make this
/// repulsive, reinforcing the direct interaction.
fn mediated_rr_terms<T: Scalar>(basis: &JointBasis, u1: T, u2: T, omega: T) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    let amp = u1 * u2 / omega;
    let half = T::from_f64c(0.5);
    h.push(
        "vdw_mediated",
        TermOrder::Second,
        one_minus_cos_coeff(-amp, omega, half),
        rr_pair_term(basis),
    );
    h
}

/// amp·[1 − cos ωt] expanded into constant and e^{±iωt} atoms.
fn one_minus_cos_coeff<T: Scalar>(amp: T, omega: T, half: T) -> Vec<CoeffAtom<T>> {
    vec![
        CoeffAtom::constant(cr(amp)),
        CoeffAtom::oscillating(cr(-amp * half), omega),
        CoeffAtom::oscillating(cr(-amp * half), -omega),
    ]
}

/// Anti-Hermitian amplitude-damping term −i(γ/2) Σ_j |r⟩_j⟨r|; the norm loss
/// of a propagated state is the cumulative decay probability.
pub fn decay_term<T: Scalar>(basis: &JointBasis, gamma: T) -> TermSum<T> {
    assert!(gamma >= T::zero(), "decay rate must be nonnegative");
    let mut h = TermSum::new(*basis);
    if gamma == T::zero() {
        return h;
    }
    for atom in atom_ids() {
        h.extend(decay_term_atom(basis, atom, gamma));
    }
    h
}

/// Damping restricted to one atom's Rydberg level.
pub fn decay_term_atom<T: Scalar>(basis: &JointBasis, atom: AtomId, gamma: T) -> TermSum<T> {
    let mut h = TermSum::new(*basis);
    if gamma == T::zero() {
        return h;
    }
    let half = T::from_f64c(0.5);
    h.push(
        format!("decay[{}]", atom.number()),
        TermOrder::Decay,
        vec![CoeffAtom::constant(-im::<T>() * cr(gamma * half))],
        projector_r_term(basis, atom),
    );
    h
}

/// Convenience: ξ̂(0) = (a + a†)/√2 embedded on the phonon factor, used by
/// diagnostics and tests.
pub fn xi0_joint<T: Scalar>(basis: &JointBasis) -> JointOperator<T> {
    let x = crate::hilbert::xi0::<T>(basis.n_max);
    crate::hilbert::phonon_embed(basis, &x)
}

/// π̂(0) embedded on the phonon factor.
pub fn pi0_joint<T: Scalar>(basis: &JointBasis) -> JointOperator<T> {
    let p = pi0::<T>(basis.n_max);
    crate::hilbert::phonon_embed(basis, &p)
}

/// Build |a⟩⟨b| ⊗ identity-phonon for one atom on the joint space; shared by
/// tests and reporting.
pub fn atom_flip_joint<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    ket: AtomLevel,
    bra: AtomLevel,
) -> JointOperator<T> {
    let op = level_op::<T>(ket, bra);
    let eye3 = Array2::from_diag_elem(3, cr(T::one()));
    let pair = match atom {
        AtomId::Atom1 => atomic_pair(&op, &eye3),
        AtomId::Atom2 => atomic_pair(&eye3, &op),
    };
    embed_product(basis, &pair, &Array2::from_diag_elem(basis.phonon_dim(), cr(T::one())))
}

// Keep kron referenced for doc purposes in this module's helpers.
#[allow(unused_imports)]
use kron as _kron_alias;
