//! Minimum-weight perfect matching decoding of defect records.
//!
//! Defects are matched pairwise (or to the boundary) with minus-log-odds
//! path weights; matched paths are converted to qubit flips on the final
//! Pauli frame. With noise-free measurement the record collapses to its
//! final syndrome; otherwise matching runs on the space-time lattice where
//! time-like steps cost the measurement-error odds.

use super::graph::{scale_weight, Sector, WeightedSector};
use super::{blossom, canonical_error, Correction, DecodeError};
use crate::bits::BitVec;
use crate::codes::StabilizerCode;
use crate::noise::DefectRecord;
use crate::pauli::PauliOp;

/// Above this defect count the pairwise graph is truncated to nearest
/// neighbours and the result is flagged as inexact.
const MAX_EXACT_DEFECTS: usize = 10_000;
const TRUNCATED_NEIGHBOURS: usize = 24;

/// Decode both error sectors of a record and combine the corrections.
pub fn decode_matching(
    code: &StabilizerCode,
    sectors: &[WeightedSector; 2],
    record: &DefectRecord,
) -> Result<Correction, DecodeError> {
    let mut x_flips = BitVec::zeros(code.n());
    let mut z_flips = BitVec::zeros(code.n());
    let mut exact = true;
    for ws in sectors {
        let defects = sector_defects(ws, record);
        if defects.is_empty() {
            continue;
        }
        let flips = match ws.graph.sector {
            Sector::XErrors => &mut x_flips,
            Sector::ZErrors => &mut z_flips,
        };
        exact &= match_sector(ws, &defects, flips)?;
    }
    let pauli = PauliOp::from_xz(x_flips, z_flips);
    let reference = canonical_error(code, &record.final_syndrome())?;
    let mut correction = Correction::relative_to_reference(code, pauli, &reference)?;
    correction.exact = exact;
    Ok(correction)
}

/// Defect events restricted to one sector's checks, as (round, node).
/// With reliable measurement the space-time record folds down to the final
/// cumulative syndrome. Virtual closing-check nodes fire whenever the
/// per-round parity over the stored nodes is odd.
pub(crate) fn sector_defects(ws: &WeightedSector, record: &DefectRecord) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    let mut virtual_parity: std::collections::BTreeMap<u32, bool> = Default::default();
    if record.rounds() == 1 || !ws.w_time.is_finite() {
        let folded = record.final_syndrome();
        let r = record.rounds() as u32;
        for c in folded.0.iter_ones() {
            if let Some(node) = ws.graph.node_of_check[c] {
                out.push((r, node));
                *virtual_parity.entry(r).or_default() ^= true;
            }
        }
    } else {
        for &(r, c) in record.events() {
            if let Some(node) = ws.graph.node_of_check[c as usize] {
                out.push((r, node));
                *virtual_parity.entry(r).or_default() ^= true;
            }
        }
    }
    if let [vnode] = ws.graph.virtual_nodes[..] {
        for (r, odd) in virtual_parity {
            if odd {
                out.push((r, vnode));
            }
        }
        out.sort_unstable();
    }
    out
}

/// Match one sector's defects; XOR the correction into `flips`. Returns
/// false when the truncation heuristic kicked in.
pub(crate) fn match_sector(
    ws: &WeightedSector,
    defects: &[(u32, u32)],
    flips: &mut BitVec,
) -> Result<bool, DecodeError> {
    let d = defects.len();
    let has_boundary = ws.graph.has_boundary();
    if !has_boundary && d % 2 == 1 {
        return Err(blossom::MatchingError::Infeasible.into());
    }
    let exact = d <= MAX_EXACT_DEFECTS;
    let n_nodes = if has_boundary { 2 * d } else { d };
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    // Defect-defect edges: spatial metric plus time-like steps.
    for i in 0..d {
        let (ri, ci) = defects[i];
        let mut candidates: Vec<(usize, f64)> = Vec::new();
        for (j, &(rj, cj)) in defects.iter().enumerate().skip(i + 1) {
            let spatial = ws.spatial_dist(ci, cj);
            let dt = (ri as i64 - rj as i64).unsigned_abs() as f64;
            let time = if dt == 0.0 { 0.0 } else { dt * ws.w_time };
            let w = spatial + time;
            if w.is_finite() {
                candidates.push((j, w));
            }
        }
        if !exact && candidates.len() > TRUNCATED_NEIGHBOURS {
            candidates
                .sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            candidates.truncate(TRUNCATED_NEIGHBOURS);
            candidates.sort_by_key(|&(j, _)| j);
        }
        for (j, w) in candidates {
            edges.push((i, j, scale_weight(w)));
        }
        if has_boundary {
            let bw = ws.boundary_dist[ci as usize];
            if bw.is_finite() {
                edges.push((i, d + i, scale_weight(bw)));
            }
        }
    }
    if has_boundary {
        // Unused boundary copies pair off at zero cost.
        for i in 0..d {
            for j in i + 1..d {
                edges.push((d + i, d + j, 0));
            }
        }
    }
    let pairs = blossom::min_weight_perfect_matching(n_nodes, &edges)?;
    for (a, b) in pairs {
        match (a < d, b < d) {
            (true, true) => ws.walk_path(defects[a].1, defects[b].1, flips),
            (true, false) => ws.walk_to_boundary(defects[a].1, flips),
            (false, true) => ws.walk_to_boundary(defects[b].1, flips),
            (false, false) => {}
        }
    }
    Ok(exact)
}
