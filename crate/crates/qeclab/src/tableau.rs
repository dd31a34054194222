//! Stabilizer-tableau simulation of Clifford circuits and Pauli measurements.
//!
//! A `Tableau` tracks n stabilizer generators plus the n conjugate
//! destabilizers of the current state, with exact signs. Gates conjugate
//! every row; a Pauli measurement either reports the determined eigenvalue
//! (when the operator commutes with the whole stabilizer group) or flips a
//! fair coin and updates the group by the usual anticommuting-row
//! replacement.

use crate::pauli::{parse_pauli, PauliError, PauliKind, PauliOp, Phase};
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("CNOT control and target coincide: {0}")]
    DegenerateCnot(usize),
    #[error("measured operator must be Hermitian with sign +/-1, got {0}")]
    NonHermitianMeasurement(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    X(usize),
    Z(usize),
    Measure(PauliOp),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CliffordCircuit {
    pub gates: Vec<Gate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasOutcome {
    /// +1 or -1 eigenvalue.
    pub value: i8,
    pub deterministic: bool,
}

#[derive(Clone)]
pub struct Tableau {
    n: usize,
    stab: Vec<PauliOp>,
    destab: Vec<PauliOp>,
}

impl Tableau {
    /// The all-zeros state: stabilizers Z_i, destabilizers X_i.
    pub fn zero_state(n: usize) -> Self {
        Tableau {
            n,
            stab: (0..n).map(|q| PauliOp::single(n, q, PauliKind::Z)).collect(),
            destab: (0..n).map(|q| PauliOp::single(n, q, PauliKind::X)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOp] {
        &self.stab
    }

    pub fn destabilizers(&self) -> &[PauliOp] {
        &self.destab
    }

    fn check_index(&self, q: usize) -> Result<(), CircuitError> {
        if q >= self.n {
            Err(CircuitError::IndexOutOfRange { index: q, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Apply a unitary gate to the state. Measurement gates must go through
    /// `measure_pauli` (they need an rng).
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), CircuitError> {
        match *gate {
            Gate::H(q) => {
                self.check_index(q)?;
                self.rows_mut(|row| row.conj_h(q));
            }
            Gate::S(q) => {
                self.check_index(q)?;
                self.rows_mut(|row| row.conj_s(q));
            }
            Gate::Cnot(c, t) => {
                self.check_index(c)?;
                self.check_index(t)?;
                if c == t {
                    return Err(CircuitError::DegenerateCnot(c));
                }
                self.rows_mut(|row| row.conj_cnot(c, t));
            }
            Gate::X(q) => {
                self.check_index(q)?;
                self.rows_mut(|row| {
                    if row.z_bits().get(q) {
                        *row = row.clone().negate();
                    }
                });
            }
            Gate::Z(q) => {
                self.check_index(q)?;
                self.rows_mut(|row| {
                    if row.x_bits().get(q) {
                        *row = row.clone().negate();
                    }
                });
            }
            Gate::Measure(_) => {
                panic!("apply_gate cannot measure; use run_circuit or measure_pauli")
            }
        }
        Ok(())
    }

    fn rows_mut(&mut self, mut f: impl FnMut(&mut PauliOp)) {
        for row in self.stab.iter_mut().chain(self.destab.iter_mut()) {
            f(row);
        }
    }

    /// Measure a Hermitian Pauli operator.
    ///
    /// Deterministic outcomes report the exact eigenvalue (including -1 on
    /// erred states) and leave the state untouched.
    pub fn measure_pauli(
        &mut self,
        p: &PauliOp,
        rng: &mut impl Rng,
    ) -> Result<MeasOutcome, CircuitError> {
        if p.n() != self.n {
            return Err(PauliError::DimensionMismatch(p.n(), self.n).into());
        }
        match p.sign() {
            Phase::PlusOne | Phase::MinusOne => {}
            _ => return Err(CircuitError::NonHermitianMeasurement(p.to_string())),
        }
        let anti: Vec<usize> = (0..self.n)
            .filter(|&i| self.stab[i].symplectic(p).unwrap())
            .collect();
        if let Some(&pivot) = anti.first() {
            // Random outcome; absorb the pivot row into every other
            // anticommuting row, then replace the pivot by +/-P.
            let pivot_row = self.stab[pivot].clone();
            for &i in &anti[1..] {
                self.stab[i] = pivot_row.mul(&self.stab[i]).unwrap();
            }
            for i in 0..self.n {
                if i != pivot && self.destab[i].symplectic(p).unwrap() {
                    self.destab[i] = pivot_row.mul(&self.destab[i]).unwrap();
                }
            }
            let value: i8 = if rng.gen::<bool>() { 1 } else { -1 };
            self.destab[pivot] = pivot_row;
            self.stab[pivot] = if value == 1 {
                p.clone()
            } else {
                p.clone().negate()
            };
            Ok(MeasOutcome {
                value,
                deterministic: false,
            })
        } else {
            // P commutes with the whole group, so +/-P is a product of
            // stabilizer rows; the destabilizers tell us which ones.
            let mut acc = PauliOp::identity(self.n);
            for i in 0..self.n {
                if self.destab[i].symplectic(p).unwrap() {
                    acc.mul_assign(&self.stab[i]);
                }
            }
            debug_assert_eq!(acc.x_bits(), p.x_bits());
            debug_assert_eq!(acc.z_bits(), p.z_bits());
            let value = if acc == *p { 1 } else { -1 };
            Ok(MeasOutcome {
                value,
                deterministic: true,
            })
        }
    }

    /// Internal consistency: stabilizers commute, destabilizer i anticommutes
    /// with stabilizer i only, rows full-rank over GF(2). Exercised by tests
    /// after every kind of operation.
    pub fn invariants_hold(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.stab[i].symplectic(&self.stab[j]).unwrap() {
                    return false;
                }
                let want = i == j;
                if self.destab[i].symplectic(&self.stab[j]).unwrap() != want {
                    return false;
                }
            }
        }
        let rows: Vec<_> = self
            .stab
            .iter()
            .chain(&self.destab)
            .map(|p| p.symplectic_row())
            .collect();
        crate::gf2::rank(&rows, 2 * self.n) == 2 * self.n
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.stab.iter().enumerate() {
            writeln!(f, "stab[{i}]   = {row}")?;
        }
        for (i, row) in self.destab.iter().enumerate() {
            writeln!(f, "destab[{i}] = {row}")?;
        }
        Ok(())
    }
}

impl CliffordCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Run against a tableau, returning measurement outcomes in program order.
    pub fn run(
        &self,
        t: &mut Tableau,
        rng: &mut impl Rng,
    ) -> Result<Vec<MeasOutcome>, CircuitError> {
        let mut outcomes = Vec::new();
        for g in &self.gates {
            match g {
                Gate::Measure(p) => outcomes.push(t.measure_pauli(p, rng)?),
                other => t.apply_gate(other)?,
            }
        }
        Ok(outcomes)
    }

    /// Parse the one-gate-per-line text format: `H 3`, `S 0`, `CNOT 0 4`,
    /// `X 1`, `Z 2`, `MEAS XXII`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CircuitError> {
        let mut gates = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| CircuitError::Parse {
                line: lineno + 1,
                msg,
            };
            let index = |i: usize, what: &str| -> Result<usize, CircuitError> {
                parts
                    .get(i)
                    .ok_or_else(|| parse_err(format!("missing {what}")))?
                    .parse()
                    .map_err(|_| parse_err(format!("bad {what}")))
            };
            let arity = |want: usize| -> Result<(), CircuitError> {
                if parts.len() != want + 1 {
                    Err(parse_err(format!(
                        "expected {} argument(s), got {}",
                        want,
                        parts.len() - 1
                    )))
                } else {
                    Ok(())
                }
            };
            let gate = match parts[0] {
                "H" => {
                    arity(1)?;
                    Gate::H(index(1, "qubit")?)
                }
                "S" => {
                    arity(1)?;
                    Gate::S(index(1, "qubit")?)
                }
                "X" => {
                    arity(1)?;
                    Gate::X(index(1, "qubit")?)
                }
                "Z" => {
                    arity(1)?;
                    Gate::Z(index(1, "qubit")?)
                }
                "CNOT" => {
                    arity(2)?;
                    Gate::Cnot(index(1, "control")?, index(2, "target")?)
                }
                "MEAS" => {
                    arity(1)?;
                    Gate::Measure(parse_pauli(parts[1]).map_err(|e| parse_err(e.to_string()))?)
                }
                other => return Err(parse_err(format!("unknown gate '{other}'"))),
            };
            gates.push(gate);
        }
        Ok(CliffordCircuit { gates })
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match g {
                Gate::H(q) => writeln!(f, "H {q}")?,
                Gate::S(q) => writeln!(f, "S {q}")?,
                Gate::X(q) => writeln!(f, "X {q}")?,
                Gate::Z(q) => writeln!(f, "Z {q}")?,
                Gate::Cnot(c, t) => writeln!(f, "CNOT {c} {t}")?,
                Gate::Measure(p) => writeln!(f, "MEAS {p}")?,
            }
        }
        Ok(())
    }
}

/// Ancilla-based realization of a Pauli measurement: on n+1 qubits with the
/// ancilla last, a Hadamard-conjugated controlled-P followed by a Z readout
/// of the ancilla. Equivalent to measuring P directly; tests exercise the
/// equivalence against `measure_pauli`.
pub fn parity_check_circuit(p: &PauliOp) -> Result<CliffordCircuit, CircuitError> {
    let n = p.n();
    let anc = n;
    let mut c = CliffordCircuit::new();
    c.push(Gate::H(anc));
    for q in 0..n {
        match p.kind_at(q) {
            PauliKind::I => {}
            PauliKind::X => c.push(Gate::Cnot(anc, q)),
            PauliKind::Z => {
                c.push(Gate::H(q));
                c.push(Gate::Cnot(anc, q));
                c.push(Gate::H(q));
            }
            PauliKind::Y => {
                // Controlled-Y = (I x S) CNOT (I x S^dag), with S^dag = Z S.
                c.push(Gate::Z(q));
                c.push(Gate::S(q));
                c.push(Gate::Cnot(anc, q));
                c.push(Gate::S(q));
            }
        }
    }
    match p.sign() {
        Phase::PlusOne => {}
        Phase::MinusOne => c.push(Gate::Z(anc)),
        _ => return Err(CircuitError::NonHermitianMeasurement(p.to_string())),
    }
    c.push(Gate::H(anc));
    c.push(Gate::Measure(PauliOp::single(n + 1, anc, PauliKind::Z)));
    Ok(c)
}
