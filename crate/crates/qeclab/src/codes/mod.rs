//! Stabilizer and subsystem codes: the code type and its invariants, logical
//! operator completion, gauge-group centers, exact distance, and the
//! catalogue text format.

mod concat;
mod css;
mod distance;
mod families;

pub use concat::concatenate;
pub use css::{css_from_classical, ClassicalCode};
pub use distance::Distance;
pub(crate) use distance::for_each_pauli_of_weight;

/// Visit every n-qubit Pauli of exactly the given weight as (x, z) support
/// bit-vectors, in the deterministic order used by the weight searches.
pub fn each_pauli_of_weight<B>(
    n: usize,
    weight: usize,
    visit: &mut impl FnMut(&crate::bits::BitVec, &crate::bits::BitVec) -> std::ops::ControlFlow<B>,
) -> std::ops::ControlFlow<B> {
    distance::for_each_pauli_of_weight(n, weight, visit)
}
pub use families::{build_named_code, catalogue, Family};

use crate::bits::BitVec;
use crate::gf2::{self, RowSpace};
use crate::pauli::{parse_pauli, PauliOp, Phase};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("unknown code family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameter for {family}: {msg}")]
    InvalidParameter { family: String, msg: String },
    #[error("CSS construction: row {row1} of H1 and row {row2} of H2 overlap on an odd number of columns")]
    CssOrthogonality { row1: usize, row2: usize },
    #[error("classical parity check matrix has dependent rows")]
    DependentRows,
    #[error("concatenation grouping mismatch: {0}")]
    GroupingMismatch(String),
    #[error("malformed catalogue entry: {0}")]
    CatalogueFormat(String),
    #[error("construction error: {0}")]
    Construction(String),
}

/// Swap the x and z halves of a symplectic row; `dot(swap(a), b)` is the
/// symplectic form of the underlying Pauli operators.
pub(crate) fn swap_halves(row: &BitVec) -> BitVec {
    let (x, z) = row.split(row.len() / 2);
    z.concat(&x)
}

pub(crate) fn symp_rows(a: &BitVec, b: &BitVec) -> bool {
    swap_halves(a).dot(b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogicalPair {
    pub x: PauliOp,
    pub z: PauliOp,
}

/// A stabilizer code, optionally with a gauge group (subsystem code).
///
/// `stabilizer_gens` are the independent commuting parity checks with sign
/// +1. For a subsystem code `gauge_gens` generate the full (non-Abelian)
/// gauge group, whose center modulo phases is the stabilizer group; logical
/// operators commute with every gauge generator.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stabilizer_gens: Vec<PauliOp>,
    logicals: Vec<LogicalPair>,
    gauge_gens: Vec<PauliOp>,
    /// Display label, e.g. `surface L=3`.
    pub label: String,
    /// Optional 2D coordinate per qubit for display.
    pub coords: Option<Vec<(i32, i32)>>,
    /// Optional 2D coordinate per check, used by lattice decoders.
    pub check_coords: Option<Vec<(i32, i32)>>,
    /// Measured checks that are products of the generators (the dependent
    /// plaquette/star of a periodic lattice). They carry no new syndrome
    /// information but close the decoders' detector graphs.
    pub closing_checks: Vec<(PauliOp, (i32, i32))>,
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        stabilizer_gens: Vec<PauliOp>,
        logicals: Vec<LogicalPair>,
        gauge_gens: Vec<PauliOp>,
        label: impl Into<String>,
    ) -> Self {
        let k = logicals.len();
        StabilizerCode {
            n,
            k,
            stabilizer_gens,
            logicals,
            gauge_gens,
            label: label.into(),
            coords: None,
            check_coords: None,
            closing_checks: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stabilizer_gens(&self) -> &[PauliOp] {
        &self.stabilizer_gens
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    pub fn gauge_gens(&self) -> &[PauliOp] {
        &self.gauge_gens
    }

    pub fn is_subsystem(&self) -> bool {
        !self.gauge_gens.is_empty()
    }

    /// Number of gauge qubits: (rank of gauge group - rank of stabilizer)/2.
    pub fn gauge_qubit_count(&self) -> usize {
        if self.gauge_gens.is_empty() {
            return 0;
        }
        let rows: Vec<BitVec> = self
            .gauge_gens
            .iter()
            .map(|p| p.symplectic_row())
            .collect();
        let rank_g = gf2::rank(&rows, 2 * self.n);
        (rank_g - self.stabilizer_gens.len()) / 2
    }

    /// The group to reduce errors by: gauge group for subsystem codes,
    /// stabilizer group otherwise.
    pub fn error_equivalence_gens(&self) -> &[PauliOp] {
        if self.gauge_gens.is_empty() {
            &self.stabilizer_gens
        } else {
            &self.gauge_gens
        }
    }

    /// Row space spanned by the error-equivalence group (phases dropped).
    pub fn equivalence_space(&self) -> RowSpace {
        RowSpace::from_rows(
            2 * self.n,
            self.error_equivalence_gens()
                .iter()
                .map(|p| p.symplectic_row())
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n2 = 2 * self.n;

        for p in self
            .stabilizer_gens
            .iter()
            .chain(self.gauge_gens.iter())
            .chain(self.logicals.iter().flat_map(|l| [&l.x, &l.z]))
        {
            if p.n() != self.n {
                violations.push(Violation::new(
                    "operator-length",
                    format!("{p} acts on {} qubits, code has {}", p.n(), self.n),
                ));
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }

        // Stabilizers commute pairwise and carry sign +1.
        for (i, a) in self.stabilizer_gens.iter().enumerate() {
            if a.sign() != Phase::PlusOne {
                violations.push(Violation::new(
                    "stabilizer-sign",
                    format!("generator {i} = {a} has sign {}", a.sign().prefix()),
                ));
            }
            for (j, b) in self.stabilizer_gens.iter().enumerate().skip(i + 1) {
                if a.symplectic(b).unwrap() {
                    violations.push(Violation::new(
                        "stabilizer-commutation",
                        format!("generators {i} and {j} anticommute: {a} vs {b}"),
                    ));
                }
            }
        }

        // Independence over GF(2).
        let stab_rows: Vec<BitVec> = self
            .stabilizer_gens
            .iter()
            .map(|p| p.symplectic_row())
            .collect();
        if gf2::rank(&stab_rows, n2) != self.stabilizer_gens.len() {
            violations.push(Violation::new(
                "stabilizer-independence",
                "stabilizer generators are linearly dependent".into(),
            ));
        }

        // Logical algebra: commute with all checks (and gauge ops), pair
        // anticommutation, cross-pair commutation.
        for (li, pair) in self.logicals.iter().enumerate() {
            for (name, op) in [("X", &pair.x), ("Z", &pair.z)] {
                for (si, s) in self.stabilizer_gens.iter().enumerate() {
                    if op.symplectic(s).unwrap() {
                        violations.push(Violation::new(
                            "logical-stabilizer-commutation",
                            format!("logical {name}{li} = {op} anticommutes with generator {si} = {s}"),
                        ));
                    }
                }
                for (gi, g) in self.gauge_gens.iter().enumerate() {
                    if op.symplectic(g).unwrap() {
                        violations.push(Violation::new(
                            "logical-gauge-commutation",
                            format!("logical {name}{li} = {op} anticommutes with gauge generator {gi} = {g}"),
                        ));
                    }
                }
            }
            for (lj, other) in self.logicals.iter().enumerate() {
                let want_anti = li == lj;
                if pair.x.symplectic(&other.z).unwrap() != want_anti {
                    violations.push(Violation::new(
                        "logical-pairing",
                        format!(
                            "X{li} = {} vs Z{lj} = {}: expected {}",
                            pair.x,
                            other.z,
                            if want_anti { "anticommute" } else { "commute" }
                        ),
                    ));
                }
                if !pair.x.commutes(&other.x).unwrap() || !pair.z.commutes(&other.z).unwrap() {
                    violations.push(Violation::new(
                        "logical-pairing",
                        format!("same-type logicals {li} and {lj} anticommute"),
                    ));
                }
            }
        }

        // Gauge structure: the stabilizer generators span the center of the
        // gauge group, and counting works out.
        if !self.gauge_gens.is_empty() {
            let center = derive_center(&self.gauge_gens);
            let center_rows: Vec<BitVec> = center.iter().map(|p| p.symplectic_row()).collect();
            let center_space = RowSpace::from_rows(n2, center_rows.iter());
            let stab_space = RowSpace::from_rows(n2, stab_rows.iter());
            if center_space.rank() != stab_space.rank()
                || !stab_rows.iter().all(|r| center_space.contains(r))
            {
                violations.push(Violation::new(
                    "gauge-center",
                    format!(
                        "stabilizer group (rank {}) does not match gauge-group center (rank {})",
                        stab_space.rank(),
                        center_space.rank()
                    ),
                ));
            }
        }
        let m = self.gauge_qubit_count();
        if self.stabilizer_gens.len() + self.k + m != self.n {
            violations.push(Violation::new(
                "counting",
                format!(
                    "{} checks + {} logical + {} gauge qubits != {} qubits",
                    self.stabilizer_gens.len(),
                    self.k,
                    m,
                    self.n
                ),
            ));
        }

        ValidationReport { violations }
    }

    /// Exact code distance by iterative-deepening weight search; see
    /// `Distance`.
    pub fn distance(&self, weight_cap: usize) -> Distance {
        distance::distance(self, weight_cap)
    }

    /// Catalogue text format: header `n k label`, then one line per
    /// operator (`S:` checks, `GX:`/`GZ:`/`G:` gauge generators, `LX:`/`LZ:`
    /// logicals).
    pub fn to_catalogue_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.label);
        for s in &self.stabilizer_gens {
            out.push_str(&format!("S: {s}\n"));
        }
        for g in &self.gauge_gens {
            let tag = if g.is_x_type() {
                "GX"
            } else if g.is_z_type() {
                "GZ"
            } else {
                "G"
            };
            out.push_str(&format!("{tag}: {g}\n"));
        }
        for pair in &self.logicals {
            out.push_str(&format!("LX: {}\n", pair.x));
            out.push_str(&format!("LZ: {}\n", pair.z));
        }
        out
    }

    pub fn from_catalogue_text(text: &str) -> Result<StabilizerCode, CodeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| CodeError::CatalogueFormat("empty entry".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CodeError::CatalogueFormat("bad n in header".into()))?;
        let k: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CodeError::CatalogueFormat("bad k in header".into()))?;
        let label = it.collect::<Vec<_>>().join(" ");
        let mut stab = Vec::new();
        let mut gauge = Vec::new();
        let mut lx = Vec::new();
        let mut lz = Vec::new();
        for line in lines {
            let (tag, rest) = line
                .split_once(':')
                .ok_or_else(|| CodeError::CatalogueFormat(format!("missing tag: {line}")))?;
            let op = parse_pauli(rest.trim())
                .map_err(|e| CodeError::CatalogueFormat(e.to_string()))?;
            if op.n() != n {
                return Err(CodeError::CatalogueFormat(format!(
                    "operator length {} != n = {n}",
                    op.n()
                )));
            }
            match tag.trim() {
                "S" => stab.push(op),
                "GX" | "GZ" | "G" => gauge.push(op),
                "LX" => lx.push(op),
                "LZ" => lz.push(op),
                other => {
                    return Err(CodeError::CatalogueFormat(format!("unknown tag '{other}'")))
                }
            }
        }
        if lx.len() != k || lz.len() != k {
            return Err(CodeError::CatalogueFormat(format!(
                "expected {k} logical pairs, got {} LX and {} LZ",
                lx.len(),
                lz.len()
            )));
        }
        let logicals = lx
            .into_iter()
            .zip(lz)
            .map(|(x, z)| LogicalPair { x, z })
            .collect();
        Ok(StabilizerCode::new(n, stab, logicals, gauge, label))
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}]] {}", self.n, self.k, self.label)
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(rule: &'static str, detail: String) -> Self {
        Violation { rule, detail }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{}: {}", v.rule, v.detail)?;
            }
            Ok(())
        }
    }
}

/// Independent generating set of the center of the group generated by
/// `gauge_gens`, modulo phases but with the sign of each returned product
/// tracked exactly.
pub fn derive_center(gauge_gens: &[PauliOp]) -> Vec<PauliOp> {
    assert!(!gauge_gens.is_empty());
    let n2 = 2 * gauge_gens[0].n();
    // Independent basis of the gauge span, keeping the Pauli products so
    // signs survive.
    let mut basis: Vec<(BitVec, PauliOp)> = Vec::new();
    for g in gauge_gens {
        let mut row = g.symplectic_row();
        let mut op = g.clone();
        for (brow, bop) in &basis {
            if let Some(p) = brow.first_one() {
                if row.get(p) {
                    row.xor_assign(brow);
                    op = op.mul(bop).unwrap();
                }
            }
        }
        if !row.is_zero() {
            basis.push((row, op));
        }
    }
    // An element sum_j c_j b_j is central iff it commutes with every gauge
    // generator: kernel of the (#gens x rank) matrix of symplectic products.
    let rank = basis.len();
    let mut eqs: Vec<BitVec> = Vec::with_capacity(gauge_gens.len());
    for g in gauge_gens {
        let swapped = swap_halves(&g.symplectic_row());
        let mut row = BitVec::zeros(rank);
        for (j, (brow, _)) in basis.iter().enumerate() {
            if swapped.dot(brow) {
                row.set(j, true);
            }
        }
        eqs.push(row);
    }
    let combos = gf2::kernel(&eqs, rank);
    let mut out = Vec::new();
    let mut seen = RowSpace::new(n2);
    for c in combos {
        let mut op = PauliOp::identity(n2 / 2);
        for j in c.iter_ones() {
            op = op.mul(&basis[j].1).unwrap();
        }
        if !op.is_identity_up_to_phase() && seen.insert(&op.symplectic_row()) {
            out.push(op);
        }
    }
    out
}

/// Complete k logical (X, Z) pairs for a code given its checks (and gauge
/// generators, if any), by symplectic Gram-Schmidt with deterministic
/// pivoting. Returned operators have sign +1.
pub fn complete_logicals(
    n: usize,
    stabilizer_gens: &[PauliOp],
    gauge_gens: &[PauliOp],
) -> Vec<LogicalPair> {
    let n2 = 2 * n;
    // Centralizer of the full gauge group (or stabilizer group).
    let constraint_rows: Vec<BitVec> = stabilizer_gens
        .iter()
        .chain(gauge_gens.iter())
        .map(|p| swap_halves(&p.symplectic_row()))
        .collect();
    let centralizer = gf2::kernel(&constraint_rows, n2);
    // Quotient by the stabilizer span: what survives is the logical algebra.
    let stab_space = RowSpace::from_rows(
        n2,
        stabilizer_gens
            .iter()
            .map(|p| p.symplectic_row())
            .collect::<Vec<_>>()
            .iter(),
    );
    let mut cands: Vec<BitVec> = Vec::new();
    let mut reduced_space = stab_space.clone();
    for v in centralizer {
        let r = reduced_space.reduce(&v);
        if !r.is_zero() {
            reduced_space.insert(&r);
            cands.push(r);
        }
    }
    let mut pairs = Vec::new();
    while !cands.is_empty() {
        let u = cands.remove(0);
        let Some(pos) = cands.iter().position(|w| symp_rows(&u, w)) else {
            // Commutes with everything left: an element of the stabilizer
            // span leaked in (shouldn't happen) or numerical leftovers.
            continue;
        };
        let w = cands.remove(pos);
        for v in cands.iter_mut() {
            if symp_rows(v, &w) {
                v.xor_assign(&u);
            }
            if symp_rows(v, &u) {
                v.xor_assign(&w);
            }
        }
        let up = PauliOp::from_symplectic_row(&u).with_sign(Phase::PlusOne);
        let wp = PauliOp::from_symplectic_row(&w).with_sign(Phase::PlusOne);
        // Prefer the convention where a pure-Z representative is the Z
        // logical and a pure-X one the X logical.
        let pair = if up.is_z_type() && !wp.is_z_type() {
            LogicalPair { x: wp, z: up }
        } else if wp.is_x_type() && !up.is_x_type() {
            LogicalPair { x: wp, z: up }
        } else {
            LogicalPair { x: up, z: wp }
        };
        pairs.push(pair);
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliKind;

    fn p(s: &str) -> PauliOp {
        parse_pauli(s).unwrap()
    }

    #[test]
    fn four_two_two_center() {
        // Gauge view of the [[4,2,2]] code: center contains the weight-4
        // checks.
        let gauge = vec![p("ZZII"), p("IIZZ"), p("XIXI"), p("IXIX")];
        let center = derive_center(&gauge);
        let space = RowSpace::from_rows(
            8,
            center
                .iter()
                .map(|c| c.symplectic_row())
                .collect::<Vec<_>>()
                .iter(),
        );
        assert!(space.contains(&p("XXXX").symplectic_row()));
        assert!(space.contains(&p("ZZZZ").symplectic_row()));
        assert_eq!(space.rank(), 2);
        for c in &center {
            assert_eq!(c.sign(), Phase::PlusOne);
            for g in &gauge {
                assert!(c.commutes(g).unwrap());
            }
        }
    }

    #[test]
    fn complete_logicals_on_422() {
        let stab = vec![p("XXXX"), p("ZZZZ")];
        let pairs = complete_logicals(4, &stab, &[]);
        assert_eq!(pairs.len(), 2);
        for (i, a) in pairs.iter().enumerate() {
            for s in &stab {
                assert!(a.x.commutes(s).unwrap());
                assert!(a.z.commutes(s).unwrap());
            }
            for (j, b) in pairs.iter().enumerate() {
                assert_eq!(a.x.symplectic(&b.z).unwrap(), i == j);
                assert!(a.x.commutes(&b.x).unwrap());
            }
        }
    }

    #[test]
    fn catalogue_roundtrip() {
        let code = StabilizerCode::new(
            2,
            vec![p("XX")],
            vec![LogicalPair {
                x: p("XI"),
                z: p("ZZ"),
            }],
            vec![],
            "two-qubit",
        );
        let text = code.to_catalogue_text();
        let back = StabilizerCode::from_catalogue_text(&text).unwrap();
        assert_eq!(back.n(), 2);
        assert_eq!(back.k(), 1);
        assert_eq!(back.stabilizer_gens(), code.stabilizer_gens());
        assert_eq!(back.to_catalogue_text(), text);
        assert!(back.validate().passed());
    }

    #[test]
    fn validate_flags_anticommuting_checks() {
        let code = StabilizerCode::new(2, vec![p("XI"), p("ZI")], vec![], vec![], "broken");
        let report = code.validate();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "stabilizer-commutation"));
    }

    #[test]
    fn validate_flags_signed_check() {
        let code = StabilizerCode::new(
            1,
            vec![PauliOp::single(1, 0, PauliKind::Z).negate()],
            vec![],
            vec![],
            "signed",
        );
        assert!(code
            .validate()
            .violations
            .iter()
            .any(|v| v.rule == "stabilizer-sign"));
    }
}
