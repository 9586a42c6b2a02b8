//! Truncated joint Hilbert space |a1 a2⟩ ⊗ |n⟩ and the operator toolkit.
//!
//! The ion's internal state is a single level throughout, so it never appears
//! as a tensor factor. Flattening convention:
//! `flat = (a1·3 + a2)·(n_max+1) + n` with (|0⟩, |1⟩, |r⟩) → (0, 1, 2).

use std::fmt;

use ndarray::Array2;
use thiserror::Error;

use crate::scalar::{cr, C, Scalar};

/// Internal level of one atom.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomLevel {
    /// Hyperfine qubit state |0⟩; never laser-coupled.
    Zero,
    /// Hyperfine qubit state |1⟩; laser-coupled to |r⟩.
    One,
    /// Rydberg state |r⟩.
    Rydberg,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; 3] = [AtomLevel::Zero, AtomLevel::One, AtomLevel::Rydberg];

    pub fn index(self) -> usize {
        match self {
            AtomLevel::Zero => 0,
            AtomLevel::One => 1,
            AtomLevel::Rydberg => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(AtomLevel::Zero),
            '1' => Some(AtomLevel::One),
            'r' => Some(AtomLevel::Rydberg),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            AtomLevel::Zero => '0',
            AtomLevel::One => '1',
            AtomLevel::Rydberg => 'r',
        }
    }
}

/// Which atom an embedding targets.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AtomId {
    Atom1,
    Atom2,
}

impl AtomId {
    pub const BOTH: [AtomId; 2] = [AtomId::Atom1, AtomId::Atom2];

    pub fn number(self) -> u8 {
        match self {
            AtomId::Atom1 => 1,
            AtomId::Atom2 => 2,
        }
    }
}

/// One basis state |a1 a2⟩ ⊗ |n⟩.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub a1: AtomLevel,
    pub a2: AtomLevel,
    pub n: usize,
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{},n={}", self.a1.to_char(), self.a2.to_char(), self.n)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LabelError {
    #[error("unknown basis label {0:?}; expected e.g. \"11,n=0\" or \"r0,n=2\"")]
    Malformed(String),
    #[error("phonon index {n} exceeds n_max = {n_max}")]
    PhononOutOfRange { n: usize, n_max: usize },
}

/// Enumeration of the joint basis at a fixed phonon truncation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct JointBasis {
    pub n_max: usize,
}

impl JointBasis {
    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    /// Number of phonon levels kept, n_max + 1.
    pub fn phonon_dim(&self) -> usize {
        self.n_max + 1
    }

    /// Full dimension 9 (n_max + 1).
    pub fn dim(&self) -> usize {
        9 * self.phonon_dim()
    }

    /// Flat index of |a1 a2⟩ ⊗ |n⟩.
    pub fn index(&self, a1: AtomLevel, a2: AtomLevel, n: usize) -> usize {
        debug_assert!(n <= self.n_max);
        (a1.index() * 3 + a2.index()) * self.phonon_dim() + n
    }

    pub fn index_of(&self, s: BasisState) -> usize {
        self.index(s.a1, s.a2, s.n)
    }

    /// Inverse of [`Self::index`].
    pub fn state_at(&self, flat: usize) -> BasisState {
        let np = self.phonon_dim();
        let n = flat % np;
        let atoms = flat / np;
        BasisState {
            a1: AtomLevel::from_index(atoms / 3).expect("flat index in range"),
            a2: AtomLevel::from_index(atoms % 3).expect("flat index in range"),
            n,
        }
    }

    /// Iterate all basis states in flat order.
    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(|i| self.state_at(i))
    }

    /// Parse a label like "r0,n=2".
    pub fn parse_label(&self, label: &str) -> Result<BasisState, LabelError> {
        let bad = || LabelError::Malformed(label.to_string());
        let (atoms, phonon) = label.trim().split_once(',').ok_or_else(bad)?;
        let mut chars = atoms.trim().chars();
        let a1 = chars.next().and_then(AtomLevel::from_char).ok_or_else(bad)?;
        let a2 = chars.next().and_then(AtomLevel::from_char).ok_or_else(bad)?;
        if chars.next().is_some() {
            return Err(bad());
        }
        let n: usize = phonon
            .trim()
            .strip_prefix("n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(bad)?;
        if n > self.n_max {
            return Err(LabelError::PhononOutOfRange { n, n_max: self.n_max });
        }
        Ok(BasisState { a1, a2, n })
    }
}

/// Dense complex square matrix over a [`JointBasis`].
pub type JointOperator<T> = Array2<C<T>>;

/// Single-atom operator |a⟩⟨b| on the 3-level factor.
pub fn level_op<T: Scalar>(ket: AtomLevel, bra: AtomLevel) -> Array2<C<T>> {
    let mut m = Array2::zeros((3, 3));
    m[[ket.index(), bra.index()]] = cr(T::one());
    m
}

/// Single-atom projector |a⟩⟨a|.
pub fn level_proj<T: Scalar>(level: AtomLevel) -> Array2<C<T>> {
    level_op(level, level)
}

/// Annihilation and creation operators on the (n_max+1)-dimensional phonon
/// factor with hard truncation (a†|n_max⟩ = 0).
pub fn ladder_ops<T: Scalar>(n_max: usize) -> (Array2<C<T>>, Array2<C<T>>) {
    assert!(n_max >= 2, "phonon truncation requires n_max >= 2");
    let np = n_max + 1;
    let mut a = Array2::zeros((np, np));
    for n in 1..np {
        a[[n - 1, n]] = cr(T::from_f64c(n as f64).sqrt());
    }
    let adag = a.t().mapv(|x| x.conj());
    (a, adag)
}

/// Dimensionless position quadrature at t = 0, (a + a†)/√2.
pub fn xi0<T: Scalar>(n_max: usize) -> Array2<C<T>> {
    let (a, adag) = ladder_ops::<T>(n_max);
    (&a + &adag).mapv(|x| x / C::new(T::SQRT_2(), T::zero()))
}

/// Dimensionless momentum quadrature at t = 0, (a - a†)/(i√2).
pub fn pi0<T: Scalar>(n_max: usize) -> Array2<C<T>> {
    let (a, adag) = ladder_ops::<T>(n_max);
    let denom = C::new(T::zero(), T::SQRT_2());
    (&a - &adag).mapv(|x| x / denom)
}

/// Kronecker product (row-major, left factor outermost).
pub fn kron<T: Scalar>(a: &Array2<C<T>>, b: &Array2<C<T>>) -> Array2<C<T>> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for ((i, j), &av) in a.indexed_iter() {
        if av == C::new(T::zero(), T::zero()) {
            continue;
        }
        for ((k, l), &bv) in b.indexed_iter() {
            out[[i * rb + k, j * cb + l]] = av * bv;
        }
    }
    out
}

fn eye<T: Scalar>(n: usize) -> Array2<C<T>> {
    Array2::from_diag_elem(n, cr(T::one()))
}

/// Embed a single-atom 3×3 operator as op ⊗ 1 ⊗ 1 (or 1 ⊗ op ⊗ 1) on the
/// full space, honoring the flattening convention.
pub fn embed<T: Scalar>(
    basis: &JointBasis,
    atom: AtomId,
    op: &Array2<C<T>>,
) -> JointOperator<T> {
    assert_eq!(op.dim(), (3, 3), "single-atom operator must be 3x3");
    let atomic = match atom {
        AtomId::Atom1 => kron(op, &eye(3)),
        AtomId::Atom2 => kron(&eye(3), op),
    };
    kron(&atomic, &eye(basis.phonon_dim()))
}

/// Embed a phonon-factor operator as 1 ⊗ 1 ⊗ op.
pub fn phonon_embed<T: Scalar>(basis: &JointBasis, op: &Array2<C<T>>) -> JointOperator<T> {
    let np = basis.phonon_dim();
    assert_eq!(op.dim(), (np, np), "phonon operator dimension mismatch");
    kron(&eye(9), op)
}

/// Embed atomic_op ⊗ phonon_op in one step (atomic_op is 9×9 over both atoms).
pub fn embed_product<T: Scalar>(
    basis: &JointBasis,
    atomic_both: &Array2<C<T>>,
    phonon_op: &Array2<C<T>>,
) -> JointOperator<T> {
    assert_eq!(atomic_both.dim(), (9, 9));
    assert_eq!(phonon_op.dim(), (basis.phonon_dim(), basis.phonon_dim()));
    kron(atomic_both, phonon_op)
}

/// Two-atom atomic-factor operator op1 ⊗ op2 (9×9).
pub fn atomic_pair<T: Scalar>(op1: &Array2<C<T>>, op2: &Array2<C<T>>) -> Array2<C<T>> {
    kron(op1, op2)
}

/// Projector onto span{|rr⟩ ⊗ |n⟩}; identity on the phonon factor.
pub fn rr_projector<T: Scalar>(basis: &JointBasis) -> JointOperator<T> {
    let pr = level_proj::<T>(AtomLevel::Rydberg);
    embed_product(basis, &atomic_pair(&pr, &pr), &eye(basis.phonon_dim()))
}

/// Identity on the full joint space.
pub fn identity<T: Scalar>(basis: &JointBasis) -> JointOperator<T> {
    eye(basis.dim())
}
