//! CSS construction: a quantum code from two mutually orthogonal classical
//! parity check matrices. Rows of H1 become Z-checks, rows of H2 become
//! X-checks, and the code encodes k1 + k2 - n qubits.

use super::{complete_logicals, CodeError, StabilizerCode};
use crate::bits::BitVec;
use crate::gf2;
use crate::pauli::PauliOp;

/// A classical binary linear code given by its parity check matrix
/// (independent rows).
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    n: usize,
    rows: Vec<BitVec>,
}

impl ClassicalCode {
    pub fn new(n: usize, rows: Vec<BitVec>) -> Result<Self, CodeError> {
        for r in &rows {
            if r.len() != n {
                return Err(CodeError::Construction(format!(
                    "parity check row of length {} in a length-{n} code",
                    r.len()
                )));
            }
        }
        if gf2::rank(&rows, n) != rows.len() {
            return Err(CodeError::DependentRows);
        }
        Ok(ClassicalCode { n, rows })
    }

    /// Convenience constructor from 0/1 literals.
    pub fn from_bits(rows: &[&[u8]]) -> Result<Self, CodeError> {
        let n = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
            .collect();
        Self::new(n, rows)
    }

    /// The empty (no-checks) code on n bits.
    pub fn empty(n: usize) -> Self {
        ClassicalCode { n, rows: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }
}

/// Steane's [7,4,3] Hamming parity check matrix.
pub fn steane_hamming() -> ClassicalCode {
    ClassicalCode::from_bits(&[
        &[0, 0, 0, 1, 1, 1, 1],
        &[0, 1, 1, 0, 0, 1, 1],
        &[1, 0, 1, 0, 1, 0, 1],
    ])
    .unwrap()
}

pub fn css_from_classical(
    h1: &ClassicalCode,
    h2: &ClassicalCode,
) -> Result<StabilizerCode, CodeError> {
    if h1.n() != h2.n() {
        return Err(CodeError::Construction(format!(
            "H1 has {} columns, H2 has {}",
            h1.n(),
            h2.n()
        )));
    }
    let n = h1.n();
    for (i, r1) in h1.rows().iter().enumerate() {
        for (j, r2) in h2.rows().iter().enumerate() {
            if r1.dot(r2) {
                return Err(CodeError::CssOrthogonality { row1: i, row2: j });
            }
        }
    }
    let mut checks: Vec<PauliOp> = h1
        .rows()
        .iter()
        .map(|r| PauliOp::z_support(r.clone()))
        .collect();
    checks.extend(h2.rows().iter().map(|r| PauliOp::x_support(r.clone())));
    let logicals = complete_logicals(n, &checks, &[]);
    let k = h1.k() + h2.k() - n;
    debug_assert_eq!(logicals.len(), k);
    Ok(StabilizerCode::new(
        n,
        checks,
        logicals,
        vec![],
        format!("css n={n} k={k}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Distance;

    #[test]
    fn steane_code_from_css() {
        let h = steane_hamming();
        let code = css_from_classical(&h, &h).unwrap();
        assert_eq!((code.n(), code.k()), (7, 1));
        assert!(code.validate().passed());
        assert_eq!(code.distance(4), Distance::Exact(3));
        // Printed checks: Z-checks from H rows, then the X mirrors.
        let got: Vec<String> = code.stabilizer_gens().iter().map(|s| s.to_string()).collect();
        assert_eq!(
            got,
            vec!["IIIZZZZ", "IZZIIZZ", "ZIZIZIZ", "IIIXXXX", "IXXIIXX", "XIXIXIX"]
        );
    }

    #[test]
    fn repetition_from_h1_only() {
        let h1 = ClassicalCode::from_bits(&[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        let code = css_from_classical(&h1, &ClassicalCode::empty(3)).unwrap();
        assert_eq!((code.n(), code.k()), (3, 1));
        assert!(code.validate().passed());
    }

    #[test]
    fn odd_overlap_rejected() {
        let h1 = ClassicalCode::from_bits(&[&[1, 1]]).unwrap();
        let h2 = ClassicalCode::from_bits(&[&[1, 0]]).unwrap();
        match css_from_classical(&h1, &h2) {
            Err(CodeError::CssOrthogonality { row1: 0, row2: 0 }) => {}
            other => panic!("expected orthogonality error, got {other:?}"),
        }
        // Even overlap is fine: H1 = H2 = {11} commute.
        let code = css_from_classical(&h1, &h1).unwrap();
        assert_eq!((code.n(), code.k()), (2, 0));
    }

    #[test]
    fn dependent_rows_rejected() {
        assert!(matches!(
            ClassicalCode::from_bits(&[&[1, 1, 0], &[1, 1, 0]]),
            Err(CodeError::DependentRows)
        ));
    }
}
