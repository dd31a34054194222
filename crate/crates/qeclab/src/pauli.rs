//! n-qubit Pauli operators in the binary-symplectic representation.
//!
//! An operator is stored as `i^sigma * X^x * Z^z` where `x`, `z` are length-n
//! bit-vectors and `sigma` is a power of i tracked mod 4. A `Y` on qubit j is
//! `x[j] = z[j] = 1` with the extra `i` from `Y = iXZ` absorbed into `sigma`,
//! so the displayed sign of a Pauli string is `i^(sigma - #Y mod 4)`.
//!
//! Values are immutable in spirit: all operations return new operators, so
//! they can be shared freely across threads.

use crate::bits::BitVec;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit-count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid Pauli string: {0}")]
    Parse(String),
}

/// Phase factor i^k, k mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_i_power(k: u8) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn i_power(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Phase::PlusOne => "",
            Phase::PlusI => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn xz_bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
    /// Power of i in the internal `i^sigma X^x Z^z` form.
    sigma: u8,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            sigma: 0,
        }
    }

    /// Single-qubit Pauli embedded in n qubits, with sign +1.
    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Self {
        assert!(qubit < n, "qubit index out of range");
        let mut p = Self::identity(n);
        let (xb, zb) = kind.xz_bits();
        p.x.set(qubit, xb);
        p.z.set(qubit, zb);
        if xb && zb {
            p.sigma = 1; // Y = iXZ
        }
        p
    }

    /// Build from x/z bit-vectors with displayed sign +1.
    pub fn from_xz(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        let sigma = (x.and_popcount(&z) % 4) as u8;
        PauliOp { x, z, sigma }
    }

    /// Build a pure-X (or pure-Z) operator from a support bit-vector.
    pub fn x_support(bits: BitVec) -> Self {
        let n = bits.len();
        PauliOp {
            x: bits,
            z: BitVec::zeros(n),
            sigma: 0,
        }
    }

    pub fn z_support(bits: BitVec) -> Self {
        let n = bits.len();
        PauliOp {
            x: BitVec::zeros(n),
            z: bits,
            sigma: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn kind_at(&self, qubit: usize) -> PauliKind {
        match (self.x.get(qubit), self.z.get(qubit)) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    fn y_count(&self) -> usize {
        self.x.and_popcount(&self.z)
    }

    /// Displayed sign: the `s` in `P = s * P_1 x ... x P_n`.
    pub fn sign(&self) -> Phase {
        Phase::from_i_power((self.sigma + 4 - (self.y_count() % 4) as u8) % 4)
    }

    /// Replace the displayed sign, keeping the tensor part.
    pub fn with_sign(mut self, sign: Phase) -> Self {
        self.sigma = (sign.i_power() + (self.y_count() % 4) as u8) % 4;
        self
    }

    pub fn negate(mut self) -> Self {
        self.sigma = (self.sigma + 2) % 4;
        self
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.or_popcount(&self.z)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Value of the symplectic form `x_P.z_Q + z_P.x_Q mod 2`; 1 means the
    /// operators anticommute.
    pub fn symplectic(&self, other: &PauliOp) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::DimensionMismatch(self.n(), other.n()));
        }
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool, PauliError> {
        Ok(!self.symplectic(other)?)
    }

    /// Group product with exact phase tracking.
    ///
    /// `(i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^(a+b) (-1)^(z1.x2) X^(x1+x2) Z^(z1+z2)`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::DimensionMismatch(self.n(), other.n()));
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let cross = if self.z.dot(&other.x) { 2 } else { 0 };
        Ok(PauliOp {
            x,
            z,
            sigma: (self.sigma + other.sigma + cross) % 4,
        })
    }

    /// In-place product, for hot loops over same-size operators.
    pub fn mul_assign(&mut self, other: &PauliOp) {
        debug_assert_eq!(self.n(), other.n());
        if self.z.dot(&other.x) {
            self.sigma = (self.sigma + 2) % 4;
        }
        self.sigma = (self.sigma + other.sigma) % 4;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// The x|z row used by GF(2) linear algebra (phase dropped).
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_row(row: &BitVec) -> PauliOp {
        let (x, z) = row.split(row.len() / 2);
        PauliOp::from_xz(x, z)
    }

    /// True when the operator is a tensor of I and X only (resp. I and Z).
    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// Embed into a larger register at the given qubit offset, keeping the
    /// displayed sign.
    pub fn embedded(&self, n_total: usize, offset: usize) -> PauliOp {
        assert!(offset + self.n() <= n_total);
        let mut x = BitVec::zeros(n_total);
        let mut z = BitVec::zeros(n_total);
        for i in self.x.iter_ones() {
            x.set(offset + i, true);
        }
        for i in self.z.iter_ones() {
            z.set(offset + i, true);
        }
        PauliOp::from_xz(x, z).with_sign(self.sign())
    }

    // Conjugation by the Clifford generators, exact in the i^sigma X^x Z^z
    // form: H sends X^x Z^z -> (-1)^(xz) X^z Z^x, S sends X -> iXZ, and CNOT
    // is phase-free in this form.
    pub(crate) fn conj_h(&mut self, q: usize) {
        let (xb, zb) = (self.x.get(q), self.z.get(q));
        if xb & zb {
            self.sigma = (self.sigma + 2) % 4;
        }
        self.x.set(q, zb);
        self.z.set(q, xb);
    }

    pub(crate) fn conj_s(&mut self, q: usize) {
        if self.x.get(q) {
            self.sigma = (self.sigma + 1) % 4;
            self.z.flip(q);
        }
    }

    pub(crate) fn conj_cnot(&mut self, c: usize, t: usize) {
        if self.x.get(c) {
            self.x.flip(t);
        }
        if self.z.get(t) {
            self.z.flip(c);
        }
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign().prefix())?;
        for q in 0..self.n() {
            let c = match self.kind_at(q) {
                PauliKind::I => 'I',
                PauliKind::X => 'X',
                PauliKind::Y => 'Y',
                PauliKind::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse a Pauli string: an optional sign prefix (`+`, `-`, `i`, `-i`, `+i`)
/// followed by one of `IXYZ` per qubit. The qubit count is inferred from the
/// string length.
pub fn parse_pauli(s: &str) -> Result<PauliOp, PauliError> {
    let t = s.trim();
    let (sign, rest) = if let Some(r) = t.strip_prefix("-i") {
        (Phase::MinusI, r)
    } else if let Some(r) = t.strip_prefix("+i") {
        (Phase::PlusI, r)
    } else if let Some(r) = t.strip_prefix('i') {
        (Phase::PlusI, r)
    } else if let Some(r) = t.strip_prefix('-') {
        (Phase::MinusOne, r)
    } else if let Some(r) = t.strip_prefix('+') {
        (Phase::PlusOne, r)
    } else {
        (Phase::PlusOne, t)
    };
    if rest.is_empty() {
        return Err(PauliError::Parse("empty Pauli string".into()));
    }
    let n = rest.len();
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    for (q, c) in rest.chars().enumerate() {
        let (xb, zb) = match c {
            'I' => (false, false),
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            other => {
                return Err(PauliError::Parse(format!(
                    "illegal character '{other}' in \"{t}\""
                )))
            }
        };
        x.set(q, xb);
        z.set(q, zb);
    }
    Ok(PauliOp::from_xz(x, z).with_sign(sign))
}

/// Inverse of `parse_pauli`; round-trips every valid string up to sign
/// normalization (`+X` prints as `X`).
pub fn format_pauli(p: &PauliOp) -> String {
    p.to_string()
}
