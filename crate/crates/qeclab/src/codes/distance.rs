//! Exact code distance by iterative-deepening weight search.
//!
//! Candidates are enumerated in a fixed order (supports ascending, letters
//! X, Y, Z per site); a candidate counts when it commutes with every check
//! but lies outside the error-equivalence group (stabilizer group, or gauge
//! group for subsystem codes).

use super::StabilizerCode;
use crate::bits::BitVec;
use crate::pauli::PauliOp;
use std::fmt;
use std::ops::ControlFlow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// No logical operator of weight <= cap exists; d > cap.
    GreaterThan(usize),
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::GreaterThan(c) => write!(f, "> {c}"),
        }
    }
}

/// Visit every n-qubit Pauli of exactly the given weight, as (x, z) support
/// bit-vectors, until the visitor breaks. Sites ascend; at each site the
/// letter order is X, Y, Z.
pub(crate) fn for_each_pauli_of_weight<B>(
    n: usize,
    weight: usize,
    visit: &mut impl FnMut(&BitVec, &BitVec) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    fn rec<B>(
        n: usize,
        start: usize,
        remaining: usize,
        x: &mut BitVec,
        z: &mut BitVec,
        visit: &mut impl FnMut(&BitVec, &BitVec) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if remaining == 0 {
            return visit(x, z);
        }
        // Not enough sites left to place the remaining letters.
        if start + remaining > n {
            return ControlFlow::Continue(());
        }
        for site in start..=(n - remaining) {
            for (xb, zb) in [(true, false), (true, true), (false, true)] {
                x.set(site, xb);
                z.set(site, zb);
                rec(n, site + 1, remaining - 1, x, z, visit)?;
            }
            x.set(site, false);
            z.set(site, false);
        }
        ControlFlow::Continue(())
    }
    rec(n, 0, weight, &mut x, &mut z, visit)
}

pub(crate) fn distance(code: &StabilizerCode, weight_cap: usize) -> Distance {
    let n = code.n();
    let checks: Vec<&PauliOp> = code.stabilizer_gens().iter().collect();
    let equivalence = code.equivalence_space();
    for w in 1..=weight_cap.min(n) {
        let mut found = false;
        let _ = for_each_pauli_of_weight::<()>(n, w, &mut |x, z| {
            let commutes_all = checks
                .iter()
                .all(|s| !(s.x_bits().dot(z) ^ s.z_bits().dot(x)));
            if commutes_all {
                let row = x.concat(z);
                if !equivalence.contains(&row) {
                    found = true;
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if found {
            return Distance::Exact(w);
        }
    }
    Distance::GreaterThan(weight_cap.min(n))
}
