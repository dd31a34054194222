//! Decoders: exact maximum-likelihood, exhaustive minimum-weight,
//! minimum-weight perfect matching on defect records, recursive clustering,
//! and the Bacon-Shor 1D matcher.
//!
//! Every decoder returns a `Correction` whose Pauli reproduces the decoded
//! syndrome; the attached class is the coset choice relative to the
//! canonical reference error of that syndrome, so fixtures can assert
//! decoder outputs without ground truth.

pub mod bacon_shor;
pub mod blossom;
pub mod graph;
pub mod minweight;
pub mod ml;
pub mod mwpm;
pub mod rg;

pub use blossom::{max_weight_matching, min_weight_perfect_matching, MatchingError};
pub use graph::{DetectorGraph, Sector, WeightedSector};

use crate::bits::BitVec;
use crate::codes::{CodeError, StabilizerCode};
use crate::gf2;
use crate::noise::{logical_class, DefectRecord, ErrorModel, LogicalClass, NoiseError, Syndrome};
use crate::pauli::{PauliError, PauliOp};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("single errors on qubit {qubit} flip {checks} checks; no matching structure")]
    NotMatchable { qubit: usize, checks: usize },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("group too large for exact enumeration: {gens} generators (cap {cap})")]
    GroupTooLarge { gens: usize, cap: usize },
    #[error("no error of weight <= {cap} matches the syndrome")]
    SearchCapExceeded { cap: usize },
    #[error("error rate {0} leaves the maximum-likelihood weights undefined")]
    DegenerateModel(f64),
    #[error("syndrome is inconsistent with the check matrix")]
    InconsistentSyndrome,
    #[error("this decoder needs per-check lattice coordinates")]
    NeedsCoordinates,
    #[error("unknown decoder '{0}' (expected ml, minweight, mwpm, rg, or bs1d)")]
    UnknownDecoder(String),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A decoder's output: a Pauli consistent with the decoded syndrome, and
/// its logical class relative to the canonical reference error for that
/// syndrome.
#[derive(Debug, Clone)]
pub struct Correction {
    pub pauli: PauliOp,
    pub class: LogicalClass,
    /// The cluster decoder ran out of growth rounds; counted as a logical
    /// failure regardless of the class.
    pub decoder_failure: bool,
    /// False when the matching graph was truncated by the large-problem
    /// distance cutoff.
    pub exact: bool,
}

impl Correction {
    pub(crate) fn relative_to_reference(
        code: &StabilizerCode,
        pauli: PauliOp,
        reference: &PauliOp,
    ) -> Result<Self, DecodeError> {
        let class = logical_class(code, &pauli.mul(reference)?)?;
        Ok(Correction {
            pauli,
            class,
            decoder_failure: false,
            exact: true,
        })
    }
}

/// Deterministic reference error for a syndrome, from a GF(2) solve against
/// the check matrix (free variables zero).
pub fn canonical_error(code: &StabilizerCode, syndrome: &Syndrome) -> Result<PauliOp, DecodeError> {
    let n2 = 2 * code.n();
    let rows: Vec<BitVec> = code
        .stabilizer_gens()
        .iter()
        .map(|s| crate::codes::swap_halves(&s.symplectic_row()))
        .collect();
    let solution = gf2::solve(&rows, &syndrome.0, n2).ok_or(DecodeError::InconsistentSyndrome)?;
    Ok(PauliOp::from_symplectic_row(&solution))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Ml,
    MinWeight,
    Mwpm,
    Rg,
    Bs1d,
}

impl FromStr for DecoderKind {
    type Err = DecodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ml" => DecoderKind::Ml,
            "minweight" => DecoderKind::MinWeight,
            "mwpm" => DecoderKind::Mwpm,
            "rg" => DecoderKind::Rg,
            "bs1d" => DecoderKind::Bs1d,
            other => return Err(DecodeError::UnknownDecoder(other.into())),
        })
    }
}

impl DecoderKind {
    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::Ml => "ml",
            DecoderKind::MinWeight => "minweight",
            DecoderKind::Mwpm => "mwpm",
            DecoderKind::Rg => "rg",
            DecoderKind::Bs1d => "bs1d",
        }
    }

    pub fn all() -> [DecoderKind; 5] {
        [
            DecoderKind::Ml,
            DecoderKind::MinWeight,
            DecoderKind::Mwpm,
            DecoderKind::Rg,
            DecoderKind::Bs1d,
        ]
    }
}

/// A decoder bound to a code and error model, with its per-configuration
/// state (sector graphs, shortest-path tables) built once. Instances are
/// immutable and safe to share across Monte Carlo workers.
pub struct Decoder {
    kind: DecoderKind,
    code: StabilizerCode,
    model: ErrorModel,
    sectors: Option<[WeightedSector; 2]>,
    /// Cluster-growth round cap for the recursive decoder.
    pub rg_max_rounds: usize,
}

impl Decoder {
    pub fn new(
        kind: DecoderKind,
        code: &StabilizerCode,
        model: &ErrorModel,
    ) -> Result<Decoder, DecodeError> {
        let sectors = match kind {
            DecoderKind::Mwpm | DecoderKind::Rg | DecoderKind::Bs1d => Some([
                WeightedSector::new(code, Sector::XErrors, model)?,
                WeightedSector::new(code, Sector::ZErrors, model)?,
            ]),
            DecoderKind::Ml | DecoderKind::MinWeight => None,
        };
        // Default growth schedule: ceil(log2(linear size)) + 1 rounds.
        let n_side = (code.n() as f64).sqrt().ceil().max(2.0) as usize;
        let rg_max_rounds = (usize::BITS - (n_side - 1).leading_zeros()) as usize + 1;
        Ok(Decoder {
            kind,
            code: code.clone(),
            model: *model,
            sectors,
            rg_max_rounds,
        })
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn model(&self) -> &ErrorModel {
        &self.model
    }

    pub fn decode(&self, record: &DefectRecord) -> Result<Correction, DecodeError> {
        match self.kind {
            DecoderKind::Ml => ml::decode_ml(&self.code, &record.final_syndrome(), &self.model),
            DecoderKind::MinWeight => {
                minweight::decode_minweight_exhaustive(&self.code, &record.final_syndrome(), None)
            }
            DecoderKind::Mwpm => {
                mwpm::decode_matching(&self.code, self.sectors.as_ref().unwrap(), record)
            }
            DecoderKind::Rg => rg::decode_rg(
                &self.code,
                self.sectors.as_ref().unwrap(),
                record,
                self.rg_max_rounds,
            ),
            DecoderKind::Bs1d => {
                bacon_shor::decode_bacon_shor(&self.code, self.sectors.as_ref().unwrap(), record)
            }
        }
    }
}
