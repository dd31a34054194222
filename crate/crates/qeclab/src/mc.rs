//! Seeded Monte Carlo: trial execution, logical-error-rate estimation with
//! Wilson intervals, pseudo-threshold and threshold-crossing estimation,
//! and the sweep result formats (CSV and JSON mirror).
//!
//! Determinism: every trial derives its own rng stream from (base seed,
//! trial index), and aggregation is a commutative fold, so results are
//! byte-identical regardless of worker count.

use crate::codes::{build_named_code, Family, StabilizerCode};
use crate::decode::{DecodeError, Decoder, DecoderKind};
use crate::noise::{logical_class, sample_history, ErrorModel};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Code(#[from] crate::codes::CodeError),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("no crossing in range: {0}")]
    NoCrossing(String),
    #[error("pseudo-threshold not bracketed: {0}")]
    NotBracketed(String),
    #[error("malformed results CSV: {0}")]
    CsvFormat(String),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub family: Family,
    pub model: ErrorModel,
    pub decoder: DecoderKind,
    pub trials: u64,
    /// Measurement rounds per trial; the last round is noise-free.
    pub rounds: usize,
    pub base_seed: u64,
    /// Worker cap; 0 means one worker per available core.
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    /// Residual class nontrivial in any component, or decoder gave up.
    pub failures: u64,
    /// Residual acts as a logical X (bit-flip) on some encoded qubit.
    pub failures_xbar: u64,
    /// Residual acts as a logical Z.
    pub failures_zbar: u64,
    pub decoder_failures: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl TrialStats {
    fn finish(mut self) -> Self {
        let (e, lo, hi) = logical_error_rate(self.failures, self.trials);
        self.estimate = e;
        self.ci_low = lo;
        self.ci_high = hi;
        self
    }
}

/// Wilson 95% score interval: (estimate, low, high).
pub fn logical_error_rate(failures: u64, trials: u64) -> (f64, f64, f64) {
    assert!(trials >= 1);
    let n = trials as f64;
    let p = failures as f64 / n;
    let z = 1.959963984540054_f64;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (p, (center - half).max(0.0), (center + half).min(1.0))
}

fn trial_seed(base: u64, index: u64) -> u64 {
    // splitmix64 of the combined words: independent streams per trial.
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run the configured number of trials: sample a history, decode it, score
/// the residual class against the hidden true error.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<TrialStats, McError> {
    if cfg.trials == 0 {
        return Err(McError::BadConfig("trials must be >= 1".into()));
    }
    if cfg.rounds == 0 {
        return Err(McError::BadConfig("rounds must be >= 1".into()));
    }
    let code = build_named_code(&cfg.family)?;
    let decoder = Decoder::new(cfg.decoder, &code, &cfg.model)?;
    let body = |idx: u64| -> TrialStats {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(trial_seed(cfg.base_seed, idx));
        let record = sample_history(&code, &cfg.model, cfg.rounds, true, &mut rng);
        let correction = decoder
            .decode(&record)
            .expect("decode failed on sampled record");
        let residual = record
            .true_final_error()
            .mul(&correction.pauli)
            .expect("dimension mismatch");
        let class = logical_class(&code, &residual).expect("residual outside centralizer");
        let fail_x = class.has_x();
        let fail_z = class.has_z();
        let fail = correction.decoder_failure || !class.is_trivial();
        TrialStats {
            trials: 1,
            failures: fail as u64,
            failures_xbar: fail_x as u64,
            failures_zbar: fail_z as u64,
            decoder_failures: correction.decoder_failure as u64,
            ..Default::default()
        }
    };
    let merge = |a: TrialStats, b: TrialStats| TrialStats {
        trials: a.trials + b.trials,
        failures: a.failures + b.failures,
        failures_xbar: a.failures_xbar + b.failures_xbar,
        failures_zbar: a.failures_zbar + b.failures_zbar,
        decoder_failures: a.decoder_failures + b.decoder_failures,
        ..Default::default()
    };
    // Fail fast on configuration problems before spawning workers.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(trial_seed(cfg.base_seed, 0));
        let record = sample_history(&code, &cfg.model, cfg.rounds, true, &mut rng);
        decoder.decode(&record)?;
    }
    let stats = if cfg.jobs == 1 {
        (0..cfg.trials)
            .map(body)
            .fold(TrialStats::default(), merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| McError::BadConfig(e.to_string()))?;
        pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(body)
                .reduce(TrialStats::default, merge)
        })
    };
    Ok(stats.finish())
}

use rand::SeedableRng;

/// One measured point of a logical-error-rate curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub p: f64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub failures: u64,
}

/// A curve at fixed code size, labelled for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct Curve {
    pub label: String,
    pub points: Vec<CurvePoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdEstimate {
    pub median: f64,
    pub spread_low: f64,
    pub spread_high: f64,
    pub crossings: Vec<(String, String, f64)>,
}

fn log_rate(point: &CurvePoint) -> f64 {
    // Zero-failure points enter as if half a failure had been seen, so the
    // interpolation stays finite.
    let floor = 0.5 / point.trials.max(1) as f64;
    point.estimate.max(floor).ln()
}

/// Pairwise crossings of log-linearly interpolated curves; the estimate is
/// the median crossing with min-max spread.
pub fn estimate_threshold(curves: &[Curve]) -> Result<ThresholdEstimate, McError> {
    if curves.len() < 2 {
        return Err(McError::BadConfig("need at least two curves".into()));
    }
    for c in curves {
        if c.points.len() < 3 {
            return Err(McError::BadConfig(format!(
                "curve {} has fewer than 3 points",
                c.label
            )));
        }
    }
    let mut crossings = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let (a, b) = (&curves[i], &curves[j]);
            let ps: Vec<f64> = a
                .points
                .iter()
                .map(|pt| pt.p)
                .filter(|p| b.points.iter().any(|q| (q.p - p).abs() < 1e-12))
                .collect();
            if ps.len() < 2 {
                return Err(McError::BadConfig(format!(
                    "curves {} and {} share fewer than 2 p-points",
                    a.label, b.label
                )));
            }
            let diff: Vec<(f64, f64)> = ps
                .iter()
                .map(|&p| {
                    let pa = a.points.iter().find(|pt| (pt.p - p).abs() < 1e-12).unwrap();
                    let pb = b.points.iter().find(|pt| (pt.p - p).abs() < 1e-12).unwrap();
                    (p, log_rate(pa) - log_rate(pb))
                })
                .collect();
            let mut found = None;
            for w in diff.windows(2) {
                let (p0, d0) = w[0];
                let (p1, d1) = w[1];
                if d0 == 0.0 {
                    found = Some(p0);
                    break;
                }
                if d0 * d1 < 0.0 {
                    found = Some(p0 + (p1 - p0) * d0 / (d0 - d1));
                    break;
                }
            }
            match found {
                Some(p) => crossings.push((a.label.clone(), b.label.clone(), p)),
                None => {
                    return Err(McError::NoCrossing(format!(
                        "curves {} (ends {:.4e}..{:.4e}) and {} (ends {:.4e}..{:.4e}) do not cross",
                        a.label,
                        a.points.first().unwrap().estimate,
                        a.points.last().unwrap().estimate,
                        b.label,
                        b.points.first().unwrap().estimate,
                        b.points.last().unwrap().estimate,
                    )))
                }
            }
        }
    }
    let mut ps: Vec<f64> = crossings.iter().map(|c| c.2).collect();
    ps.sort_by(f64::total_cmp);
    let median = ps[ps.len() / 2];
    Ok(ThresholdEstimate {
        median,
        spread_low: ps[0],
        spread_high: ps[ps.len() - 1],
        crossings,
    })
}

/// Break-even point where the logical error rate equals the physical rate.
pub fn pseudo_threshold(points: &[CurvePoint]) -> Result<f64, McError> {
    if points.len() < 2 {
        return Err(McError::BadConfig("need at least 2 points".into()));
    }
    let diff: Vec<(f64, f64)> = points
        .iter()
        .map(|pt| (pt.p, log_rate(pt) - pt.p.ln()))
        .collect();
    for w in diff.windows(2) {
        let (p0, d0) = w[0];
        let (p1, d1) = w[1];
        if d0 == 0.0 {
            return Ok(p0);
        }
        if d0 * d1 < 0.0 {
            return Ok(p0 + (p1 - p0) * d0 / (d0 - d1));
        }
    }
    Err(McError::NotBracketed(format!(
        "curve stays on one side of the diagonal over [{:.4}, {:.4}]",
        points.first().unwrap().p,
        points.last().unwrap().p
    )))
}

/// One row of a sweep result.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub decoder: String,
    pub p: f64,
    pub q: f64,
    pub rounds: usize,
    pub stats: TrialStats,
    pub seed: u64,
    /// Measured only when timing is requested; excluded from the CSV by
    /// default so reruns are byte-identical.
    pub wall_time_s: Option<f64>,
}

pub const CSV_HEADER: &str =
    "family,params,decoder,p,q,R,trials,failures,p_logical,ci_low,ci_high,seed,wall_time_s";

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("# schema=1\n");
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let wall = r
            .wall_time_s
            .map(|w| format!("{w:.3}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{:.6},{},{},{},{:.6e},{:.6e},{:.6e},{},{}",
            r.family,
            r.params,
            r.decoder,
            r.p,
            r.q,
            r.rounds,
            r.stats.trials,
            r.stats.failures,
            r.stats.estimate,
            r.stats.ci_low,
            r.stats.ci_high,
            r.seed,
            wall,
        );
    }
    out
}

/// Parse rows back from the CSV (schema comments tolerated). Returns curves
/// grouped by (family, params), ordered by first appearance.
pub fn curves_from_csv(text: &str) -> Result<Vec<Curve>, McError> {
    let mut curves: Vec<Curve> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with("family,") {
            continue;
        }
        let fields: Vec<&str> = t.split(',').collect();
        if fields.len() < 13 {
            return Err(McError::CsvFormat(format!(
                "expected 13 fields, got {}: {t}",
                fields.len()
            )));
        }
        let parse_f = |s: &str, what: &str| -> Result<f64, McError> {
            s.parse()
                .map_err(|_| McError::CsvFormat(format!("bad {what}: {s}")))
        };
        let parse_u = |s: &str, what: &str| -> Result<u64, McError> {
            s.parse()
                .map_err(|_| McError::CsvFormat(format!("bad {what}: {s}")))
        };
        let label = format!("{} {}", fields[0], fields[1]);
        let point = CurvePoint {
            p: parse_f(fields[3], "p")?,
            estimate: parse_f(fields[8], "p_logical")?,
            ci_low: parse_f(fields[9], "ci_low")?,
            ci_high: parse_f(fields[10], "ci_high")?,
            trials: parse_u(fields[6], "trials")?,
            failures: parse_u(fields[7], "failures")?,
        };
        match curves.iter_mut().find(|c| c.label == label) {
            Some(c) => c.points.push(point),
            None => curves.push(Curve {
                label,
                points: vec![point],
            }),
        }
    }
    for c in &mut curves {
        c.points.sort_by(|a, b| a.p.total_cmp(&b.p));
    }
    Ok(curves)
}

/// Split a family display label like `toric L=8` into the CSV's family and
/// params columns.
pub fn family_columns(family: &Family) -> (String, String) {
    let label = family.to_string();
    match label.split_once(' ') {
        Some((f, p)) => (f.to_string(), p.to_string()),
        None => (label, String::new()),
    }
}

/// Convenience: build a code once for config validation/error reporting.
pub fn resolve_code(family: &Family) -> Result<StabilizerCode, McError> {
    Ok(build_named_code(family)?)
}
