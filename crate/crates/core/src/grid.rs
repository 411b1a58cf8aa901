//! Sampling grids on `(0,1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Width of the endpoint zones of an [`Spacing::EndpointRefined`] grid.
pub const REFINE_ZONE: f64 = 1e-3;

/// Default interior range `(1e-9, 1 − 1e-9)`.
pub const DEFAULT_LO: f64 = 1e-9;
pub const DEFAULT_HI: f64 = 1.0 - 1e-9;

/// Default number of samples for verification.
pub const DEFAULT_N: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Uniform,
    /// A quarter of the points are spaced geometrically in `x` over
    /// `[lo, 1e-3)`, a quarter geometrically in `1−x` over `(1 − 1e-3, hi]`,
    /// and the rest uniformly in between.
    #[serde(rename = "refined")]
    EndpointRefined,
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Uniform => "uniform",
            Spacing::EndpointRefined => "refined",
        })
    }
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Spacing::Uniform),
            "refined" | "endpoint-refined" => Ok(Spacing::EndpointRefined),
            other => Err(Error::Grid(format!("unknown spacing `{other}` (expected uniform|refined)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::refined(DEFAULT_N)
    }
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Result<Self> {
        let g = GridSpec { lo, hi, n, spacing };
        g.validate()?;
        Ok(g)
    }

    /// Uniform grid on the default interior range.
    pub fn uniform(n: usize) -> Self {
        GridSpec {
            lo: DEFAULT_LO,
            hi: DEFAULT_HI,
            n,
            spacing: Spacing::Uniform,
        }
    }

    /// Endpoint-refined grid on the default interior range.
    pub fn refined(n: usize) -> Self {
        GridSpec {
            lo: DEFAULT_LO,
            hi: DEFAULT_HI,
            n,
            spacing: Spacing::EndpointRefined,
        }
    }

    pub fn with_n(self, n: usize) -> Self {
        GridSpec { n, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::Grid(format!("need lo < hi, got lo = {}, hi = {}", self.lo, self.hi)));
        }
        if self.n < 2 {
            return Err(Error::Grid(format!("need n ≥ 2, got {}", self.n)));
        }
        if self.spacing == Spacing::EndpointRefined && !(self.lo > 0.0 && self.hi < 1.0) {
            return Err(Error::Grid("endpoint-refined grids must lie inside (0, 1)".into()));
        }
        Ok(())
    }

    /// The sample abscissae, strictly increasing, first `lo` and last `hi`.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(match self.spacing {
            Spacing::Uniform => uniform(self.lo, self.hi, self.n),
            Spacing::EndpointRefined => refined(self.lo, self.hi, self.n),
        })
    }
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[n - 1] = hi;
    v
}

/// `k` points `start·r^i`, `i = 0..k`, geometric from `start` towards `end`
/// (exclusive).
fn geometric(start: f64, end: f64, k: usize) -> impl Iterator<Item = f64> {
    let ratio = (end / start).ln() / k as f64;
    (0..k).map(move |i| start * (ratio * i as f64).exp())
}

fn refined(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let left = lo < REFINE_ZONE;
    let right = 1.0 - hi < REFINE_ZONE;
    let mid_lo = if left { REFINE_ZONE } else { lo };
    let mid_hi = if right { 1.0 - REFINE_ZONE } else { hi };
    let quarter = n / 4;
    let k_left = if left { quarter } else { 0 };
    let k_right = if right { quarter } else { 0 };
    let k_mid = n - k_left - k_right;
    if mid_lo >= mid_hi || k_mid < 2 || (k_left == 0 && k_right == 0) {
        return uniform(lo, hi, n);
    }
    let mut v = Vec::with_capacity(n);
    v.extend(geometric(lo, REFINE_ZONE, k_left));
    v.extend(uniform(mid_lo, mid_hi, k_mid));
    let mut tail: Vec<f64> = geometric(1.0 - hi, REFINE_ZONE, k_right).map(|d| 1.0 - d).collect();
    tail.reverse();
    v.extend(tail);
    if let Some(first) = v.first_mut() {
        *first = lo;
    }
    if let Some(last) = v.last_mut() {
        *last = hi;
    }
    v
}
