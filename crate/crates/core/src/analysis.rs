//! Auxiliary functions behind the monotonicity of `F_a`, and the interior
//! minimum in the middle regime.
//!
//! With `s = √(1+x)`:
//!
//! ```text
//! F_a'(x) = √(1−x²)(a·s + 2) / (2(x−1)²(x+1)) · G_a(x)
//! G_a(x)  = arccos x − 2√(1−x)(a + s)/(a·s + 2)
//! G_a'(x) ∝ H_a(x) = a²s − a·x − a − 4s
//! F_a'(x) = √(1−x²) / (2(x−1)²(x+1)) · Q_a(x)
//! Q_a(x)  = (a·s + 2)·arccos x − 2√(1−x)(a + s)
//! Q_a'(x) ∝ a − P(x),   P(x) = 4√(1−x)/arccos x
//! P'(x)   ∝ R(x) = 2√(1−x²)/(x+1) − arccos x
//! ```
//!
//! `G_a` and `Q_a` are evaluated as `√(1−x)·(…)` with the arccos quotient
//! taken from [`crate::bounds`], so both stay accurate as `x → 1⁻` where
//! their two terms cancel.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::bounds::{acos_ratio, arccos_stable, f_a, interior_min_estimate, A_STAR, TWO_SQRT_2};
use crate::error::{check_finite, check_unit_open, domain, Error, Result};
use crate::root::bisect;

/// Width at which the bisection for the minimum stops.
pub const MINIMUM_XTOL: f64 = 1e-13;

/// The interior minimum of `F_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimumResult {
    pub a: f64,
    pub x0: f64,
    pub f_min: f64,
    /// `|arccos x₀ − 2(1−x₀)(a√(1+x₀)+x₀+1) / (√(1−x₀²)(a√(1+x₀)+2))|`.
    pub residual: f64,
    pub iterations: u32,
}

fn check_aux_a(a: f64) -> Result<()> {
    check_finite("a", a)?;
    if a > -2.0 && a < -SQRT_2 {
        Err(domain("a", a, "ℝ \\ (-2, -√2)"))
    } else {
        Ok(())
    }
}

/// `G_a(x) / √(1−x)`. Same sign as `G_a`, finite at `x → 1⁻`.
fn g_scaled(a: f64, x: f64) -> f64 {
    let s = (1.0 + x).sqrt();
    acos_ratio(x) - 2.0 * (a + s) / (a * s + 2.0)
}

/// `G_a(x)`; `F_a'` has the sign of `G_a` wherever `a√(1+x) + 2 > 0`.
pub fn g_a(a: f64, x: f64) -> Result<f64> {
    check_aux_a(a)?;
    check_unit_open(x)?;
    Ok((1.0 - x).sqrt() * g_scaled(a, x))
}

/// `H_a(x) = a²√(1+x) − a·x − a − 4√(1+x)`.
pub fn h_a(a: f64, x: f64) -> Result<f64> {
    check_finite("a", a)?;
    check_unit_open(x)?;
    let s = (1.0 + x).sqrt();
    Ok(a * a * s - a * x - a - 4.0 * s)
}

/// `Q_a(x)`; `F_a'` has the sign of `Q_a` for every `a`.
pub fn q_a(a: f64, x: f64) -> Result<f64> {
    check_aux_a(a)?;
    check_unit_open(x)?;
    let s = (1.0 + x).sqrt();
    Ok((1.0 - x).sqrt() * ((a * s + 2.0) * acos_ratio(x) - 2.0 * (a + s)))
}

/// `P(x) = 4√(1−x)/arccos x`, increasing from `8/π` to `2√2`.
pub fn p_fn(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok(4.0 / acos_ratio(x))
}

/// `R(x) = 2√(1−x²)/(x+1) − arccos x`, positive and decreasing to 0.
pub fn r_fn(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok((1.0 - x).sqrt() * (2.0 / (1.0 + x).sqrt() - acos_ratio(x)))
}

fn disc(x: f64) -> f64 {
    (x * x + 18.0 * x + 17.0).sqrt()
}

/// Smaller zero of `a ↦ H_a(x)`: `(x+1 − √(x²+18x+17)) / (2√(x+1))`.
pub fn a1(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok((x + 1.0 - disc(x)) / (2.0 * (x + 1.0).sqrt()))
}

/// Larger zero of `a ↦ H_a(x)`: `(x+1 + √(x²+18x+17)) / (2√(x+1))`.
pub fn a2(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok((x + 1.0 + disc(x)) / (2.0 * (x + 1.0).sqrt()))
}

fn check_middle_regime(a: f64) -> Result<()> {
    if a > A_STAR && a < TWO_SQRT_2 {
        Ok(())
    } else {
        Err(Error::Regime {
            a,
            lo: A_STAR,
            hi: TWO_SQRT_2,
        })
    }
}

/// Right-hand side of the critical-point equation
/// `arccos x₀ = 2(1−x₀)(a√(x₀+1) + x₀ + 1) / (√(1−x₀²)(a√(x₀+1) + 2))`.
pub fn critical_rhs(a: f64, x: f64) -> f64 {
    let s = (x + 1.0).sqrt();
    2.0 * (1.0 - x) * (a * s + x + 1.0) / ((1.0 - x * x).sqrt() * (a * s + 2.0))
}

/// `F_a` at a critical point, rewritten through `u = √(1+x₀)`:
/// `2(a+u)² / (a·u + 2)`.
pub fn critical_value(a: f64, u: f64) -> f64 {
    2.0 * (a + u) * (a + u) / (a * u + 2.0)
}

/// Locates the unique interior minimum of `F_a` for `A_STAR < a < 2√2` by
/// bisecting the sign change of `G_a`.
///
/// The initial bracket is `(1e-9, 1 − 1e-9)`; it is widened towards the
/// endpoints one decade at a time, down to `1e-15`, since `x₀` drifts to 0
/// (to 1) as `a` approaches `A_STAR` (`2√2`).
pub fn find_minimum(a: f64) -> Result<MinimumResult> {
    check_middle_regime(a)?;
    let g = |x: f64| g_scaled(a, x);
    let mut bracket = None;
    for k in 9..=15 {
        let gap = 10f64.powi(-k);
        let (lo, hi) = (gap, 1.0 - gap);
        if g(lo) < 0.0 && g(hi) > 0.0 {
            bracket = bisect(g, lo, hi, MINIMUM_XTOL);
            break;
        }
    }
    let b = bracket.ok_or(Error::NoSignChange { a, gap: 1e-15 })?;
    let x0 = b.midpoint();
    let f_min = f_a(a, x0)?;
    let residual = (arccos_stable(x0)? - critical_rhs(a, x0)).abs();
    Ok(MinimumResult {
        a,
        x0,
        f_min,
        residual,
        iterations: b.iterations,
    })
}

/// `8(1 − 2/a²)`, the lower estimate of `min F_a` for `A_STAR < a < 2√2`.
pub fn min_value_lower(a: f64) -> Result<f64> {
    check_middle_regime(a)?;
    Ok(interior_min_estimate(a))
}

/// `min_u 2(a+u)²/(a·u+2) − 8(1 − 2/a²)` over `n` interior points of
/// `u ∈ (1, √2)`; non-negative for every `a > 0`, with equality only at
/// `u = a − 4/a`.
pub fn critical_value_margin(a: f64, n: usize) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain("a", a, "(0, ∞)"));
    }
    if n == 0 {
        return Err(domain("n", 0.0, "n ≥ 1"));
    }
    let floor = interior_min_estimate(a);
    let step = (SQRT_2 - 1.0) / (n + 1) as f64;
    let min = (1..=n)
        .map(|i| critical_value(a, 1.0 + step * i as f64))
        .fold(f64::INFINITY, f64::min);
    Ok(min - floor)
}
