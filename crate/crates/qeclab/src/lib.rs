//! Stabilizer-code laboratory: exact Pauli/Clifford algebra, a catalogue of
//! stabilizer and subsystem codes, decoders (maximum-likelihood, exhaustive
//! minimum-weight, blossom matching, recursive clustering, Bacon-Shor 1D),
//! and a seeded Monte Carlo harness for logical-error-rate and threshold
//! estimation.

pub mod bits;
pub mod gf2;
pub mod mc;
pub mod pauli;
pub mod codes;
pub mod decode;
pub mod noise;
pub mod tableau;

pub use pauli::{format_pauli, parse_pauli, PauliError, PauliKind, PauliOp, Phase};
pub use tableau::{parity_check_circuit, CliffordCircuit, Gate, MeasOutcome, Tableau};
