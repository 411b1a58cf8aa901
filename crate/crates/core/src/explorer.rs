//! Numerical monotonicity scan of
//! `F_{α,β,γ}(x) = (γ + (1+x)^β)·arccos x / (1−x)^α` over `x ∈ (0,1)`.
//!
//! Verdicts are sampled evidence, not proofs. Differences below a relative
//! threshold of [`SIGN_THRESHOLD`] carry no sign, and a family whose
//! differences all fall below it is reported as [`Verdict::Undetermined`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::acos_ratio;
use crate::error::{check_finite, check_unit_open, Error, Result};
use crate::grid::GridSpec;
use crate::verifier::unit_points;

/// Relative threshold on forward differences.
pub const SIGN_THRESHOLD: f64 = 1e-12;

/// Above this `α` the scan works with `ln |F|`.
pub const LOG_SPACE_ALPHA: f64 = 10.0;

/// Appended to every rendered verdict.
pub const EVIDENCE_NOTE: &str = "numerical evidence on a sampled grid, not a proof";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Increasing,
    Decreasing,
    NonMonotone,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Increasing => "Increasing",
            Verdict::Decreasing => "Decreasing",
            Verdict::NonMonotone => "NonMonotone",
            Verdict::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`classify_abc`].
///
/// `margin` is the smallest signed relative difference in the direction of
/// the verdict for monotone verdicts, the relative size of the strongest
/// counter-sign difference for `NonMonotone`, and the largest relative
/// difference for `Undetermined`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanClassification {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub verdict: Verdict,
    /// Strongest sample of the minority sign (NaN unless `NonMonotone`).
    pub evidence_x: f64,
    /// Strongest sample of the majority sign (NaN if there is none).
    pub witness_x: f64,
    pub margin: f64,
    /// Whether the differences were taken of `ln |F|`.
    pub log_space: bool,
}

/// Rejects families whose numerator `γ + (1+x)^β` vanishes somewhere in
/// `(0,1)` or identically.
pub fn check_family(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    check_finite("gamma", gamma)?;
    let lo = gamma + 1.0;
    let hi = gamma + 2f64.powf(beta);
    if lo * hi < 0.0 || (lo == 0.0 && hi == 0.0) {
        return Err(Error::SingularFamily { beta, gamma });
    }
    Ok(())
}

fn numerator(beta: f64, gamma: f64, x: f64) -> f64 {
    gamma + (1.0 + x).powf(beta)
}

/// `F_{α,β,γ}(x)`.
pub fn f_abc(alpha: f64, beta: f64, gamma: f64, x: f64) -> Result<f64> {
    check_family(alpha, beta, gamma)?;
    check_unit_open(x)?;
    Ok(f_abc_unchecked(alpha, beta, gamma, x))
}

fn f_abc_unchecked(alpha: f64, beta: f64, gamma: f64, x: f64) -> f64 {
    numerator(beta, gamma, x) * acos_ratio(x) * (1.0 - x).powf(0.5 - alpha)
}

/// `ln |F_{α,β,γ}(x)|`.
fn ln_f_abc(alpha: f64, beta: f64, gamma: f64, x: f64) -> f64 {
    numerator(beta, gamma, x).abs().ln() + acos_ratio(x).ln() + (0.5 - alpha) * (-x).ln_1p()
}

#[derive(Debug, Clone, Copy)]
struct Extremes {
    pos: usize,
    neg: usize,
    /// `(relative difference, x)` of the strongest positive sample.
    best_pos: (f64, f64),
    best_neg: (f64, f64),
    /// Extremes of all relative differences, sub-threshold ones included.
    min_rel: f64,
    max_rel: f64,
    max_abs_rel: f64,
}

impl Extremes {
    fn identity() -> Self {
        Extremes {
            pos: 0,
            neg: 0,
            best_pos: (0.0, f64::NAN),
            best_neg: (0.0, f64::NAN),
            min_rel: f64::INFINITY,
            max_rel: f64::NEG_INFINITY,
            max_abs_rel: 0.0,
        }
    }

    fn stronger(p: (f64, f64), q: (f64, f64)) -> (f64, f64) {
        match p.0.total_cmp(&q.0) {
            std::cmp::Ordering::Greater => p,
            std::cmp::Ordering::Less => q,
            _ if q.1 < p.1 => q,
            _ => p,
        }
    }

    fn push(mut self, (x, rel): (f64, f64)) -> Self {
        if rel > SIGN_THRESHOLD {
            self.pos += 1;
            self.best_pos = Self::stronger(self.best_pos, (rel, x));
        } else if rel < -SIGN_THRESHOLD {
            self.neg += 1;
            self.best_neg = Self::stronger(self.best_neg, (-rel, x));
        }
        self.min_rel = self.min_rel.min(rel);
        self.max_rel = self.max_rel.max(rel);
        self.max_abs_rel = self.max_abs_rel.max(rel.abs());
        self
    }

    fn join(self, o: Extremes) -> Self {
        Extremes {
            pos: self.pos + o.pos,
            neg: self.neg + o.neg,
            best_pos: Self::stronger(self.best_pos, o.best_pos),
            best_neg: Self::stronger(self.best_neg, o.best_neg),
            min_rel: self.min_rel.min(o.min_rel),
            max_rel: self.max_rel.max(o.max_rel),
            max_abs_rel: self.max_abs_rel.max(o.max_abs_rel),
        }
    }
}

/// Classifies the monotonicity of `F_{α,β,γ}` from the signs of its forward
/// differences on `grid`.
pub fn classify_abc(alpha: f64, beta: f64, gamma: f64, grid: &GridSpec) -> Result<ScanClassification> {
    check_family(alpha, beta, gamma)?;
    let xs = unit_points(grid)?;
    let log_space = alpha > LOG_SPACE_ALPHA;
    // With a negative numerator F and ln|F| move in opposite directions.
    let orient = if numerator(beta, gamma, 0.5) < 0.0 { -1.0 } else { 1.0 };
    let values: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            if log_space {
                ln_f_abc(alpha, beta, gamma, x)
            } else {
                f_abc_unchecked(alpha, beta, gamma, x)
            }
        })
        .collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { x: xs[i] });
    }
    let ext = (0..xs.len() - 1)
        .into_par_iter()
        .map(|i| {
            let d = values[i + 1] - values[i];
            let rel = if log_space {
                orient * d
            } else {
                d / values[i].abs().max(values[i + 1].abs())
            };
            (xs[i], if rel.is_nan() { 0.0 } else { rel })
        })
        .fold(Extremes::identity, Extremes::push)
        .reduce(Extremes::identity, Extremes::join);

    let (verdict, evidence_x, witness_x, margin) = match (ext.pos, ext.neg) {
        (0, 0) => (Verdict::Undetermined, f64::NAN, f64::NAN, ext.max_abs_rel),
        (_, 0) => (Verdict::Increasing, f64::NAN, ext.best_pos.1, ext.min_rel),
        (0, _) => (Verdict::Decreasing, f64::NAN, ext.best_neg.1, -ext.max_rel),
        (p, n) if n <= p => (Verdict::NonMonotone, ext.best_neg.1, ext.best_pos.1, ext.best_neg.0),
        _ => (Verdict::NonMonotone, ext.best_pos.1, ext.best_neg.1, ext.best_pos.0),
    };
    Ok(ScanClassification {
        alpha,
        beta,
        gamma,
        verdict,
        evidence_x,
        witness_x,
        margin,
        log_space,
    })
}

/// Values along one scan axis: a single value `v` or `lo:hi:n` with `n`
/// evenly spaced values including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisRange {
    pub fn single(v: f64) -> Self {
        AxisRange { lo: v, hi: v, n: 1 }
    }

    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || n == 0 || (n == 1 && lo != hi) {
            return Err(Error::Grid(format!(
                "axis range needs finite ends and n ≥ 1 (n = 1 only for lo = hi), got {lo}:{hi}:{n}"
            )));
        }
        Ok(AxisRange { lo, hi, n })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        let mut v: Vec<f64> = (0..self.n).map(|i| self.lo + step * i as f64).collect();
        v[self.n - 1] = self.hi;
        v
    }
}

impl FromStr for AxisRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Grid(format!("cannot parse axis range `{s}` (expected v or lo:hi:n)"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v: f64 = v.trim().parse().map_err(|_| bad())?;
                AxisRange::new(v, v, 1)
            }
            [lo, hi, n] => AxisRange::new(
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
                n.trim().parse().map_err(|_| bad())?,
            ),
            _ => Err(bad()),
        }
    }
}

/// One triple of a scan with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub result: Result<ScanClassification>,
}

/// The Cartesian product of the axes in row-major order (`γ` fastest).
pub fn scan_triples(alpha: &AxisRange, beta: &AxisRange, gamma: &AxisRange) -> Vec<(f64, f64, f64)> {
    let (av, bv, gv) = (alpha.values(), beta.values(), gamma.values());
    let mut out = Vec::with_capacity(av.len() * bv.len() * gv.len());
    for &a in &av {
        for &b in &bv {
            for &g in &gv {
                out.push((a, b, g));
            }
        }
    }
    out
}

pub fn classify_entry((alpha, beta, gamma): (f64, f64, f64), grid: &GridSpec) -> ScanEntry {
    ScanEntry {
        alpha,
        beta,
        gamma,
        result: classify_abc(alpha, beta, gamma, grid),
    }
}

/// Classifies every triple. A failing triple records its error and the scan
/// continues.
pub fn scan_grid(alpha: &AxisRange, beta: &AxisRange, gamma: &AxisRange, grid: &GridSpec) -> Vec<ScanEntry> {
    scan_triples(alpha, beta, gamma)
        .into_par_iter()
        .map(|t| classify_entry(t, grid))
        .collect()
}
