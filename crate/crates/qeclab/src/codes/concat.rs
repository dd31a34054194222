//! Code concatenation: replace the qubits of an outer code by logical qubits
//! of inner-code blocks.
//!
//! The grouping partitions the outer qubits into consecutive blocks, one per
//! inner-code instance; position j inside a block maps to logical qubit j of
//! that instance. Checks of the new code are the inner checks of every block
//! followed by the inner-encoded outer checks, in that order.

use super::{CodeError, LogicalPair, StabilizerCode};
use crate::pauli::{PauliOp, Phase};

pub fn concatenate(
    outer: &StabilizerCode,
    inner: &StabilizerCode,
    grouping: &[Vec<usize>],
) -> Result<StabilizerCode, CodeError> {
    let blocks = grouping.len();
    let mut seen = vec![false; outer.n()];
    for block in grouping {
        if block.len() != inner.k() {
            return Err(CodeError::GroupingMismatch(format!(
                "block {block:?} has {} qubits, inner code encodes {}",
                block.len(),
                inner.k()
            )));
        }
        for &q in block {
            if q >= outer.n() || seen[q] {
                return Err(CodeError::GroupingMismatch(format!(
                    "outer qubit {q} repeated or out of range"
                )));
            }
            seen[q] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(CodeError::GroupingMismatch(
            "grouping does not cover all outer qubits".into(),
        ));
    }

    let n = blocks * inner.n();
    // Where each outer qubit ends up: (block, logical index).
    let mut slot = vec![(0usize, 0usize); outer.n()];
    for (b, block) in grouping.iter().enumerate() {
        for (j, &q) in block.iter().enumerate() {
            slot[q] = (b, j);
        }
    }

    // Encode an outer-code operator: X on outer qubit q becomes the inner
    // logical X of its slot, likewise Z; Y picks up the i from Y = iXZ.
    let encode = |op: &PauliOp| -> PauliOp {
        let y_count = op.x_bits().and_popcount(op.z_bits());
        let sign = Phase::from_i_power(op.sign().i_power() + (y_count % 4) as u8);
        let mut acc = PauliOp::identity(n).with_sign(sign);
        for q in op.x_bits().iter_ones() {
            let (b, j) = slot[q];
            acc = acc
                .mul(&inner.logicals()[j].x.embedded(n, b * inner.n()))
                .unwrap();
        }
        for q in op.z_bits().iter_ones() {
            let (b, j) = slot[q];
            acc = acc
                .mul(&inner.logicals()[j].z.embedded(n, b * inner.n()))
                .unwrap();
        }
        acc
    };

    let mut checks: Vec<PauliOp> = Vec::new();
    for b in 0..blocks {
        for s in inner.stabilizer_gens() {
            checks.push(s.embedded(n, b * inner.n()));
        }
    }
    for s in outer.stabilizer_gens() {
        checks.push(encode(s));
    }

    let logicals: Vec<LogicalPair> = outer
        .logicals()
        .iter()
        .map(|pair| LogicalPair {
            x: encode(&pair.x),
            z: encode(&pair.z),
        })
        .collect();

    let mut gauge: Vec<PauliOp> = Vec::new();
    for b in 0..blocks {
        for g in inner.gauge_gens() {
            gauge.push(g.embedded(n, b * inner.n()));
        }
    }
    for g in outer.gauge_gens() {
        gauge.push(encode(g));
    }
    if !gauge.is_empty() {
        // The stabilizers of the concatenated code must sit inside the gauge
        // span; extend the gauge generating set with them.
        for c in &checks {
            gauge.push(c.clone());
        }
    }

    Ok(StabilizerCode::new(
        n,
        checks,
        logicals,
        gauge,
        format!("concat({}; {})", outer.label, inner.label),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_named_code, Family};

    #[test]
    fn trivial_inner_is_identity() {
        let outer = build_named_code(&Family::Steane7).unwrap();
        let trivial = build_named_code(&Family::Trivial).unwrap();
        let grouping: Vec<Vec<usize>> = (0..7).map(|q| vec![q]).collect();
        let code = concatenate(&outer, &trivial, &grouping).unwrap();
        assert_eq!(code.n(), 7);
        assert_eq!(code.stabilizer_gens(), outer.stabilizer_gens());
        assert_eq!(code.logicals(), outer.logicals());
    }

    #[test]
    fn grouping_errors() {
        let outer = build_named_code(&Family::C6).unwrap();
        let inner = build_named_code(&Family::C4).unwrap();
        assert!(concatenate(&outer, &inner, &[vec![0, 1], vec![2, 3]]).is_err());
        assert!(concatenate(&outer, &inner, &[vec![0], vec![1], vec![2]]).is_err());
        assert!(
            concatenate(&outer, &inner, &[vec![0, 1], vec![2, 3], vec![4, 4]]).is_err()
        );
    }
}
