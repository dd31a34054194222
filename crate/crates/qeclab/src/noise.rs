//! Pauli error models, syndrome extraction, logical-class classification,
//! and noisy repeated-measurement histories.
//!
//! A `DefectRecord` is the decoder-visible view of a history: the set of
//! space-time points where a check outcome differs from the previous round.
//! Ground truth (the cumulative physical error) rides along for scoring but
//! is never exposed through the decoder-facing accessors.

use crate::bits::BitVec;
use crate::codes::StabilizerCode;
use crate::pauli::{PauliError, PauliOp};
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("operator anticommutes with stabilizer generator {0}: not in the centralizer")]
    NotInCentralizer(usize),
    #[error("malformed defect record: {0}")]
    RecordFormat(String),
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Which single-qubit channels fire, and with what probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseKind {
    /// X, Y, Z each with probability p/3.
    Depolarizing { p: f64 },
    /// X with probability p and, independently, Z with probability p.
    IndependentXZ { p: f64 },
    /// X with probability p only.
    BitFlip { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    pub kind: NoiseKind,
    /// Probability, per check per round, that a measured outcome is wrong.
    pub q: f64,
}

impl ErrorModel {
    pub fn new(kind: NoiseKind, q: f64) -> Result<Self, NoiseError> {
        let p = kind.p();
        if !(0.0..=1.0).contains(&p) {
            return Err(NoiseError::BadProbability(p));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(NoiseError::BadProbability(q));
        }
        Ok(ErrorModel { kind, q })
    }

    pub fn noise_free_measurement(kind: NoiseKind) -> Self {
        ErrorModel { kind, q: 0.0 }
    }
}

impl NoiseKind {
    pub fn p(&self) -> f64 {
        match *self {
            NoiseKind::Depolarizing { p } => p,
            NoiseKind::IndependentXZ { p } => p,
            NoiseKind::BitFlip { p } => p,
        }
    }

    /// Marginal probability that a qubit's X component flips (X or Y).
    pub fn x_flip_prob(&self) -> f64 {
        match *self {
            NoiseKind::Depolarizing { p } => 2.0 * p / 3.0,
            NoiseKind::IndependentXZ { p } => p,
            NoiseKind::BitFlip { p } => p,
        }
    }

    /// Marginal probability that a qubit's Z component flips (Z or Y).
    pub fn z_flip_prob(&self) -> f64 {
        match *self {
            NoiseKind::Depolarizing { p } => 2.0 * p / 3.0,
            NoiseKind::IndependentXZ { p } => p,
            NoiseKind::BitFlip { .. } => 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NoiseKind::Depolarizing { .. } => "depolarizing",
            NoiseKind::IndependentXZ { .. } => "independent-xz",
            NoiseKind::BitFlip { .. } => "bitflip",
        }
    }
}

/// One bit per stabilizer generator; 1 means eigenvalue -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome(pub BitVec);

impl Syndrome {
    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn defects(&self) -> Vec<usize> {
        self.0.iter_ones().collect()
    }
}

/// Coset label of an operator in the centralizer: bit 2i is the Xbar_i
/// component, bit 2i+1 the Zbar_i component. All-zero means trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LogicalClass {
    pub bits: u64,
    pub k: usize,
}

impl LogicalClass {
    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    /// True if any Xbar component is present (the residual acts as a bit
    /// flip on some encoded qubit).
    pub fn has_x(&self) -> bool {
        (0..self.k).any(|i| self.bits >> (2 * i) & 1 == 1)
    }

    pub fn has_z(&self) -> bool {
        (0..self.k).any(|i| self.bits >> (2 * i + 1) & 1 == 1)
    }
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "I");
        }
        for i in 0..self.k {
            if self.bits >> (2 * i) & 1 == 1 {
                write!(f, "X{}", i + 1)?;
            }
            if self.bits >> (2 * i + 1) & 1 == 1 {
                write!(f, "Z{}", i + 1)?;
            }
        }
        Ok(())
    }
}

/// Sample an i.i.d. Pauli error, sign +1.
pub fn sample_error(model: &ErrorModel, n: usize, rng: &mut impl Rng) -> PauliOp {
    let mut x = BitVec::zeros(n);
    let mut z = BitVec::zeros(n);
    match model.kind {
        NoiseKind::Depolarizing { p } => {
            for q in 0..n {
                let u: f64 = rng.gen();
                if u < p {
                    // Equal thirds: X, Y, Z.
                    if u < p / 3.0 {
                        x.set(q, true);
                    } else if u < 2.0 * p / 3.0 {
                        x.set(q, true);
                        z.set(q, true);
                    } else {
                        z.set(q, true);
                    }
                }
            }
        }
        NoiseKind::IndependentXZ { p } => {
            for q in 0..n {
                if rng.gen::<f64>() < p {
                    x.set(q, true);
                }
                if rng.gen::<f64>() < p {
                    z.set(q, true);
                }
            }
        }
        NoiseKind::BitFlip { p } => {
            for q in 0..n {
                if rng.gen::<f64>() < p {
                    x.set(q, true);
                }
            }
        }
    }
    PauliOp::from_xz(x, z).with_sign(crate::pauli::Phase::PlusOne)
}

/// Syndrome of an error: bit c is the symplectic form with check c.
pub fn syndrome(code: &StabilizerCode, error: &PauliOp) -> Result<Syndrome, NoiseError> {
    let mut bits = BitVec::zeros(code.stabilizer_gens().len());
    for (c, s) in code.stabilizer_gens().iter().enumerate() {
        if s.symplectic(error)? {
            bits.set(c, true);
        }
    }
    Ok(Syndrome(bits))
}

/// Reduce an operator in the centralizer to its logical coset label.
///
/// The label is gauge- and stabilizer-invariant: it is read off from the
/// symplectic form with the logical pairs, which every equivalence-group
/// element commutes with.
pub fn logical_class(code: &StabilizerCode, op: &PauliOp) -> Result<LogicalClass, NoiseError> {
    for (c, s) in code.stabilizer_gens().iter().enumerate() {
        if s.symplectic(op)? {
            return Err(NoiseError::NotInCentralizer(c));
        }
    }
    let mut bits = 0u64;
    for (i, pair) in code.logicals().iter().enumerate() {
        // Anticommuting with Zbar_i witnesses an Xbar_i component and vice
        // versa.
        if op.symplectic(&pair.z)? {
            bits |= 1 << (2 * i);
        }
        if op.symplectic(&pair.x)? {
            bits |= 1 << (2 * i + 1);
        }
    }
    Ok(LogicalClass {
        bits,
        k: code.k(),
    })
}

/// A space-time record of syndrome-change events over R measurement rounds.
#[derive(Debug, Clone)]
pub struct DefectRecord {
    rounds: usize,
    n_checks: usize,
    /// (round in 1..=R, check index), sorted; round r compares the round-r
    /// outcome with round r-1 (round 0 is the all-+1 reference).
    events: Vec<(u32, u32)>,
    /// Scorer-only ground truth: cumulative error after each round.
    truth: Vec<PauliOp>,
    final_round_perfect: bool,
}

impl DefectRecord {
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    /// Decoder-visible view.
    pub fn events(&self) -> &[(u32, u32)] {
        &self.events
    }

    pub fn final_round_perfect(&self) -> bool {
        self.final_round_perfect
    }

    /// Scorer-only: the physical error accumulated by the end of the record.
    pub fn true_final_error(&self) -> &PauliOp {
        self.truth
            .last()
            .expect("record sampled with at least one round")
    }

    /// Scorer-only: cumulative error after each round.
    pub fn true_errors_per_round(&self) -> &[PauliOp] {
        &self.truth
    }

    /// Fold the event columns down to the final-round syndrome (the XOR of
    /// all events in a column is the final measured value of that check).
    pub fn final_syndrome(&self) -> Syndrome {
        let mut bits = BitVec::zeros(self.n_checks);
        for &(_, c) in &self.events {
            bits.flip(c as usize);
        }
        Syndrome(bits)
    }

    /// Build a single-round record from a bare syndrome (no ground truth;
    /// for decode-from-fixture paths).
    pub fn from_syndrome(code: &StabilizerCode, s: &Syndrome) -> DefectRecord {
        DefectRecord {
            rounds: 1,
            n_checks: s.0.len(),
            events: s.0.iter_ones().map(|c| (1u32, c as u32)).collect(),
            truth: vec![PauliOp::identity(code.n())],
            final_round_perfect: true,
        }
    }

    /// Serialize as `R n_checks` header plus one `r c` line per event.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.rounds, self.n_checks);
        for &(r, c) in &self.events {
            out.push_str(&format!("{r} {c}\n"));
        }
        out
    }

    /// Parse the `serialize` format. The record carries no ground truth, so
    /// it scores only against decoder-relative expectations.
    pub fn parse(text: &str, n_qubits: usize) -> Result<DefectRecord, NoiseError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| NoiseError::RecordFormat("empty record".into()))?;
        let mut it = header.split_whitespace();
        let rounds: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| NoiseError::RecordFormat("bad round count".into()))?;
        let n_checks: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| NoiseError::RecordFormat("bad check count".into()))?;
        let mut events = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let r: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| NoiseError::RecordFormat(format!("bad event line: {line}")))?;
            let c: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| NoiseError::RecordFormat(format!("bad event line: {line}")))?;
            if r as usize > rounds || c as usize >= n_checks {
                return Err(NoiseError::RecordFormat(format!(
                    "event ({r}, {c}) outside record bounds"
                )));
            }
            events.push((r, c));
        }
        events.sort_unstable();
        Ok(DefectRecord {
            rounds,
            n_checks,
            events,
            truth: vec![PauliOp::identity(n_qubits)],
            final_round_perfect: true,
        })
    }
}

/// Sample a noisy measurement history: per round, fresh data errors
/// accumulate onto the running error, then every check outcome flips
/// independently with probability q (the last round is noise-free when
/// `final_round_perfect`). Events difference-encode consecutive rounds.
pub fn sample_history(
    code: &StabilizerCode,
    model: &ErrorModel,
    rounds: usize,
    final_round_perfect: bool,
    rng: &mut impl Rng,
) -> DefectRecord {
    assert!(rounds >= 1);
    let n_checks = code.stabilizer_gens().len();
    let mut cumulative = PauliOp::identity(code.n());
    let mut prev = BitVec::zeros(n_checks);
    let mut events = Vec::new();
    let mut truth = Vec::with_capacity(rounds);
    for r in 1..=rounds {
        let fresh = sample_error(model, code.n(), rng);
        cumulative = cumulative.mul(&fresh).unwrap();
        let mut measured = syndrome(code, &cumulative).unwrap().0;
        let noisy = model.q > 0.0 && !(final_round_perfect && r == rounds);
        if noisy {
            for c in 0..n_checks {
                if rng.gen::<f64>() < model.q {
                    measured.flip(c);
                }
            }
        }
        for c in 0..n_checks {
            if measured.get(c) != prev.get(c) {
                events.push((r as u32, c as u32));
            }
        }
        prev = measured;
        truth.push(cumulative.clone());
    }
    DefectRecord {
        rounds,
        n_checks,
        events,
        truth,
        final_round_perfect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_named_code, Family};
    use crate::pauli::{parse_pauli, PauliKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn zero_and_one_rates() {
        let mut r = rng();
        let m0 = ErrorModel::noise_free_measurement(NoiseKind::Depolarizing { p: 0.0 });
        assert!(sample_error(&m0, 20, &mut r).is_identity_up_to_phase());
        let m1 = ErrorModel::noise_free_measurement(NoiseKind::BitFlip { p: 1.0 });
        let e = sample_error(&m1, 8, &mut r);
        assert_eq!(e.x_bits().popcount(), 8);
        assert!(e.z_bits().is_zero());
    }

    #[test]
    fn depolarizing_marginals() {
        let mut r = rng();
        let p = 0.3;
        let m = ErrorModel::noise_free_measurement(NoiseKind::Depolarizing { p });
        let trials = 200_000usize;
        let mut counts = [0usize; 3]; // X, Y, Z on qubit 0
        for _ in 0..trials {
            let e = sample_error(&m, 1, &mut r);
            match (e.x_bits().get(0), e.z_bits().get(0)) {
                (true, false) => counts[0] += 1,
                (true, true) => counts[1] += 1,
                (false, true) => counts[2] += 1,
                _ => {}
            }
        }
        let expect = p / 3.0;
        let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
        for c in counts {
            let freq = c as f64 / trials as f64;
            assert!(
                (freq - expect).abs() < 4.0 * sigma,
                "marginal {freq} vs {expect}"
            );
        }
    }

    #[test]
    fn shor9_syndromes() {
        let code = build_named_code(&Family::Shor9).unwrap();
        // A stabilizer element has trivial syndrome.
        let s0 = syndrome(&code, &code.stabilizer_gens()[0]).unwrap();
        assert!(s0.is_trivial());
        // Z_1 fires exactly the first weight-6 X check (index 6).
        let z1 = PauliOp::single(9, 0, PauliKind::Z);
        let s = syndrome(&code, &z1).unwrap();
        assert_eq!(s.defects(), vec![6]);
    }

    #[test]
    fn surface_bulk_x_error_two_defects() {
        let code = build_named_code(&Family::Surface { l: 3 }).unwrap();
        // Pick an interior qubit: coordinates (2, 2) on the 5x5 grid.
        let coords = code.coords.as_ref().unwrap();
        let q = coords.iter().position(|&c| c == (2, 2)).unwrap();
        let s = syndrome(&code, &PauliOp::single(code.n(), q, PauliKind::X)).unwrap();
        assert_eq!(s.defects().len(), 2);
        // Both fired checks are plaquette Z-checks.
        for c in s.defects() {
            assert!(code.stabilizer_gens()[c].is_z_type());
        }
    }

    #[test]
    fn logical_class_examples() {
        let code = build_named_code(&Family::Shor9).unwrap();
        let zbar = parse_pauli("ZIIZIIZII").unwrap();
        let cls = logical_class(&code, &zbar).unwrap();
        assert!(!cls.is_trivial());
        assert!(cls.has_z() && !cls.has_x());
        // Z1 Z2 is a parity check: trivial class.
        let z12 = parse_pauli("ZZIIIIIII").unwrap();
        assert!(logical_class(&code, &z12).unwrap().is_trivial());
        // Z1 alone anticommutes with a check.
        let z1 = PauliOp::single(9, 0, PauliKind::Z);
        assert!(matches!(
            logical_class(&code, &z1),
            Err(NoiseError::NotInCentralizer(_))
        ));
    }

    #[test]
    fn class_is_gauge_invariant() {
        let code = build_named_code(&Family::BaconShor { n: 3 }).unwrap();
        let zbar = &code.logicals()[0].z;
        let cls = logical_class(&code, zbar).unwrap();
        for g in code.gauge_gens() {
            let shifted = zbar.mul(g).unwrap();
            if syndrome(&code, &shifted).unwrap().is_trivial() {
                assert_eq!(logical_class(&code, &shifted).unwrap(), cls);
            }
        }
    }

    #[test]
    fn history_noise_free_single_error() {
        let code = build_named_code(&Family::Surface { l: 3 }).unwrap();
        // p = 0, q = 0: empty record.
        let m = ErrorModel::noise_free_measurement(NoiseKind::BitFlip { p: 0.0 });
        let rec = sample_history(&code, &m, 3, true, &mut rng());
        assert!(rec.events().is_empty());
        assert!(rec.true_final_error().is_identity_up_to_phase());
    }

    #[test]
    fn history_difference_encoding_consistency() {
        let code = build_named_code(&Family::Toric { l: 3 }).unwrap();
        let model = ErrorModel::new(NoiseKind::IndependentXZ { p: 0.05 }, 0.03).unwrap();
        let mut r = rng();
        for _ in 0..50 {
            let rec = sample_history(&code, &model, 5, true, &mut r);
            // Column XOR equals the true final syndrome (final round perfect).
            let folded = rec.final_syndrome();
            let truth = syndrome(&code, rec.true_final_error()).unwrap();
            assert_eq!(folded, truth);
        }
    }

    #[test]
    fn isolated_measurement_flip_makes_defect_pair() {
        // With p = 0 and one measurement flip at (r, c), events appear at
        // (r, c) and (r+1, c). Scan seeds until a single flip happens.
        let code = build_named_code(&Family::Surface { l: 3 }).unwrap();
        let model = ErrorModel::new(NoiseKind::BitFlip { p: 0.0 }, 0.02).unwrap();
        let mut found = false;
        for seed in 0..200 {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let rec = sample_history(&code, &model, 4, true, &mut r);
            if rec.events().len() == 2 {
                let (r1, c1) = rec.events()[0];
                let (r2, c2) = rec.events()[1];
                if c1 == c2 && r2 == r1 + 1 {
                    found = true;
                    break;
                }
            }
        }
        assert!(found, "no isolated defect pair over 200 seeds");
    }

    #[test]
    fn record_serialization_roundtrip() {
        let code = build_named_code(&Family::Toric { l: 2 }).unwrap();
        let model = ErrorModel::new(NoiseKind::Depolarizing { p: 0.1 }, 0.05).unwrap();
        let rec = sample_history(&code, &model, 4, true, &mut rng());
        let text = rec.serialize();
        let back = DefectRecord::parse(&text, code.n()).unwrap();
        assert_eq!(back.events(), rec.events());
        assert_eq!(back.rounds(), rec.rounds());
        assert!(DefectRecord::parse("", 4).is_err());
        assert!(DefectRecord::parse("2 4\n3 0\n", 4).is_err());
    }

    #[test]
    fn syndrome_linearity() {
        let code = build_named_code(&Family::Steane7).unwrap();
        let model = ErrorModel::noise_free_measurement(NoiseKind::Depolarizing { p: 0.4 });
        let mut r = rng();
        for _ in 0..200 {
            let a = sample_error(&model, 7, &mut r);
            let b = sample_error(&model, 7, &mut r);
            let mut want = syndrome(&code, &a).unwrap().0;
            want.xor_assign(&syndrome(&code, &b).unwrap().0);
            let got = syndrome(&code, &a.mul(&b).unwrap()).unwrap().0;
            assert_eq!(got, want);
        }
    }
}
