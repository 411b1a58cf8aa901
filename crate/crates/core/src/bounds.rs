//! The Carlson family `F_a(x) = (a + √(1+x))·arccos x / √(1−x)` on `(0,1)`,
//! its monotonicity regimes, and the two-sided arccos bounds it yields.
//!
//! Every bound shares the template `c·√(1−x) / (a + √(1+x))`. The constants
//! `c` are the endpoint limits of `F_a`:
//!
//! * `F_a(0⁺) = π(1+a)/2`
//! * `F_a(1⁻) = 2 + √2·a`
//!
//! and, in the interior-minimum regime, the lower estimate `8(1 − 2/a²)` of
//! the minimum value.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;

use serde::Serialize;

use crate::error::{check_finite, check_unit_open, domain, Result};

/// `2(π−2)/(4−π)`: at or below it `F_a` is strictly increasing.
pub const A_STAR: f64 = 2.0 * (PI - 2.0) / (4.0 - PI);

/// `2√2`: at or above it `F_a` is strictly decreasing.
pub const TWO_SQRT_2: f64 = 2.0 * SQRT_2;

/// Monotonicity of `x ↦ F_a(x)` on `(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    Increasing,
    Decreasing,
    InteriorMinimum,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Increasing => "Increasing",
            Regime::Decreasing => "Decreasing",
            Regime::InteriorMinimum => "InteriorMinimum",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Lower and upper arccos bounds at `x` together with the constants that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPair {
    pub x: f64,
    pub a: f64,
    pub lower: f64,
    pub upper: f64,
    pub c_lower: f64,
    pub c_upper: f64,
}

impl BoundPair {
    /// Signed containment margin `min(v − lower, upper − v)`.
    pub fn margin(&self, v: f64) -> f64 {
        (v - self.lower).min(self.upper - v)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// `arccos x`, evaluated as `2·asin(√((1−x)/2))` for `|x| > 1/2`.
///
/// The half-angle form keeps full relative accuracy as `x → 1⁻`, where
/// `acos` loses relative accuracy.
pub fn arccos_stable(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain("x", x, "[-1, 1]"));
    }
    Ok(if x > 0.5 {
        2.0 * ((1.0 - x) * 0.5).sqrt().asin()
    } else if x < -0.5 {
        PI - 2.0 * ((1.0 + x) * 0.5).sqrt().asin()
    } else {
        x.acos()
    })
}

/// `arccos x / √(1−x)` for `x ∈ [0, 1]`, finite (→ √2) at `x = 1`.
///
/// With `t = √((1−x)/2)` the quotient is `√2·asin(t)/t`, which has no
/// cancellation anywhere on the interval.
pub(crate) fn acos_ratio(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    let t = ((1.0 - x) * 0.5).sqrt();
    if t == 0.0 {
        SQRT_2
    } else {
        SQRT_2 * t.asin() / t
    }
}

/// The shared bound template `c·√(1−x) / (a + √(1+x))`.
pub fn bound_template(c: f64, a: f64, x: f64) -> f64 {
    c * (1.0 - x).sqrt() / (a + (1.0 + x).sqrt())
}

/// `F_a(x) = (a + √(1+x))·arccos x / √(1−x)` for `x ∈ (0,1)`.
pub fn f_a(a: f64, x: f64) -> Result<f64> {
    check_finite("a", a)?;
    check_unit_open(x)?;
    Ok((a + (1.0 + x).sqrt()) * acos_ratio(x))
}

/// Monotonicity regime of `F_a`. The thresholds belong to the monotone
/// regimes: `a = A_STAR` is increasing and `a = 2√2` is decreasing.
///
/// `a` must be finite; NaN has no regime.
pub fn classify_regime(a: f64) -> Regime {
    debug_assert!(a.is_finite(), "classify_regime needs a finite a");
    if a <= A_STAR {
        Regime::Increasing
    } else if a >= TWO_SQRT_2 {
        Regime::Decreasing
    } else {
        Regime::InteriorMinimum
    }
}

/// `lim_{x→0⁺} F_a(x)`.
pub fn left_limit(a: f64) -> f64 {
    FRAC_PI_2 * (1.0 + a)
}

/// `lim_{x→1⁻} F_a(x)`.
pub fn right_limit(a: f64) -> f64 {
    2.0 + SQRT_2 * a
}

/// Lower estimate `8(1 − 2/a²)` of `min F_a` in the interior-minimum regime.
pub fn interior_min_estimate(a: f64) -> f64 {
    8.0 * (1.0 - 2.0 / (a * a))
}

fn check_bound_a(a: f64) -> Result<()> {
    check_finite("a", a)?;
    if a > -1.0 {
        Ok(())
    } else {
        Err(domain("a", a, "(-1, ∞)"))
    }
}

/// Best constant `c` with `c·√(1−x)/(a+√(1+x)) < arccos x` on `(0,1)`.
pub fn lower_constant(a: f64) -> Result<f64> {
    check_bound_a(a)?;
    Ok(match classify_regime(a) {
        Regime::Increasing => left_limit(a),
        Regime::Decreasing => right_limit(a),
        Regime::InteriorMinimum => interior_min_estimate(a),
    })
}

/// Best constant `c` with `arccos x < c·√(1−x)/(a+√(1+x))` on `(0,1)`.
pub fn upper_constant(a: f64) -> Result<f64> {
    check_bound_a(a)?;
    Ok(match classify_regime(a) {
        Regime::Increasing => right_limit(a),
        Regime::Decreasing => left_limit(a),
        Regime::InteriorMinimum => right_limit(a).max(left_limit(a)),
    })
}

/// Two-sided arccos bound at `x` from the family member `a`.
pub fn bound_pair(a: f64, x: f64) -> Result<BoundPair> {
    let c_lower = lower_constant(a)?;
    let c_upper = upper_constant(a)?;
    check_unit_open(x)?;
    Ok(BoundPair {
        x,
        a,
        lower: bound_template(c_lower, a, x),
        upper: bound_template(c_upper, a, x),
        c_lower,
        c_upper,
    })
}
