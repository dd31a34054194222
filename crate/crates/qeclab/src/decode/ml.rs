//! Exact maximum-likelihood decoding by full enumeration of the
//! error-equivalence group.
//!
//! For each logical class the coset probability is the partition sum
//! `sum_g Prob(E L g)` over the stabilizer group (gauge group for subsystem
//! codes); the common `(1-p)^n` prefactor is dropped and each term becomes
//! `r^w` with r the per-letter odds of the model. Group elements are walked
//! in Gray-code order so each step is a single generator multiplication.

use super::{canonical_error, Correction, DecodeError};
use crate::bits::BitVec;
use crate::codes::StabilizerCode;
use crate::noise::{ErrorModel, LogicalClass, NoiseKind, Syndrome};
use crate::pauli::PauliOp;

/// Largest enumerable group (2^26 elements).
pub const MAX_GROUP_GENS: usize = 26;

pub fn decode_ml(
    code: &StabilizerCode,
    syndrome: &Syndrome,
    model: &ErrorModel,
) -> Result<Correction, DecodeError> {
    let p = model.kind.p();
    if !(0.0..1.0).contains(&p) {
        return Err(DecodeError::DegenerateModel(p));
    }
    let gens = code.error_equivalence_gens();
    if gens.len() > MAX_GROUP_GENS {
        return Err(DecodeError::GroupTooLarge {
            gens: gens.len(),
            cap: MAX_GROUP_GENS,
        });
    }
    let n = code.n();
    let reference = canonical_error(code, syndrome)?;

    // Odds per non-identity letter; powers precomputed. An r of zero is
    // handled by 0^0 = 1 (only the identity contributes).
    let r = match model.kind {
        NoiseKind::Depolarizing { p } => p / (3.0 * (1.0 - p)),
        NoiseKind::IndependentXZ { p } | NoiseKind::BitFlip { p } => p / (1.0 - p),
    };
    let pow: Vec<f64> = (0..=2 * n as i32).map(|w| r.powi(w)).collect();
    let term = |x: &BitVec, z: &BitVec| -> f64 {
        match model.kind {
            NoiseKind::Depolarizing { .. } => pow[x.or_popcount(z)],
            NoiseKind::IndependentXZ { .. } => pow[x.popcount() + z.popcount()],
            NoiseKind::BitFlip { .. } => {
                if z.is_zero() {
                    pow[x.popcount()]
                } else {
                    0.0
                }
            }
        }
    };

    let k = code.k();
    let mut best_class = 0u64;
    let mut best_prob = f64::NEG_INFINITY;
    let mut best_rep: Option<PauliOp> = None;
    for class_bits in 0u64..(1 << (2 * k)) {
        let mut rep = reference.clone();
        for (i, pair) in code.logicals().iter().enumerate() {
            if class_bits >> (2 * i) & 1 == 1 {
                rep = rep.mul(&pair.x)?;
            }
            if class_bits >> (2 * i + 1) & 1 == 1 {
                rep = rep.mul(&pair.z)?;
            }
        }
        let mut x = rep.x_bits().clone();
        let mut z = rep.z_bits().clone();
        let mut total = term(&x, &z);
        // Gray-code walk over the group: one generator flip per step.
        let mut gray = 0u64;
        for step in 1u64..(1 << gens.len()) {
            let next = step ^ (step >> 1);
            let flip = (gray ^ next).trailing_zeros() as usize;
            gray = next;
            x.xor_assign(gens[flip].x_bits());
            z.xor_assign(gens[flip].z_bits());
            total += term(&x, &z);
        }
        if total > best_prob {
            best_prob = total;
            best_class = class_bits;
            best_rep = Some(rep);
        }
    }
    Ok(Correction {
        pauli: best_rep.unwrap(),
        class: LogicalClass {
            bits: best_class,
            k,
        },
        decoder_failure: false,
        exact: true,
    })
}
