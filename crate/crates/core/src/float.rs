//! Floating-point tolerance helpers.
//!
//! Strict inequalities are checked up to a few units in the last place of the
//! compared quantities, never with a fixed absolute tolerance.

/// Number of ulps granted to a strict inequality.
pub const TOLERANCE_ULPS: f64 = 4.0;

/// Spacing between `v` and the next representable value away from zero.
pub fn ulp(v: f64) -> f64 {
    let m = v.abs();
    if !m.is_finite() {
        return f64::NAN;
    }
    if m == f64::MAX {
        return m - f64::from_bits(m.to_bits() - 1);
    }
    f64::from_bits(m.to_bits() + 1) - m
}

/// The floating-point slack `4 ulp(v)` used by every strict check.
pub fn fp_tol(v: f64) -> f64 {
    TOLERANCE_ULPS * ulp(v)
}

/// Slack for the sign of `p − q` where both sides carry their own rounding
/// error: `4 ulp(|p| + |q|)`.
pub fn diff_tol(p: f64, q: f64) -> f64 {
    fp_tol(p.abs() + q.abs())
}
