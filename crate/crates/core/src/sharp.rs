//! Sharpened arccos bounds obtained by optimising the family parameter `a`.
//!
//! Three named instances of the bound template are exposed:
//!
//! * `a = A_STAR`: the increasing-regime pair whose lower bound is sharp at
//!   `x → 0⁺`,
//! * `a = 2√2`: the classical pair whose lower constant 6 is sharp at `x → 1⁻`,
//! * `a = 1+√3`: the middle-regime lower bound `8(1 − 2/a²)`.
//!
//! Maximising the middle-regime lower bound over `a` at fixed `x` gives the
//! pointwise optimum `a = 2√2·λ(x)` with `λ(x) = cos(⅓·arctan √((1−x)/(1+x)))`.
//! The resulting λ-bound and the `a = A_STAR` lower bound cross once on
//! `(0,1)`, so their maximum is the best lower bound available from the family.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::bounds::{bound_template, interior_min_estimate, A_STAR, TWO_SQRT_2};
use crate::error::{check_unit_open, domain, Error, Result};
use crate::root::{bisect, Bracket};

/// `1 + √3`, the `a` at which `h_x` stops being increasing for every `x`.
pub const ONE_PLUS_SQRT_3: f64 = 2.732_050_807_568_877;

/// `a` at which the two middle-regime upper constants coincide:
/// `2 + √2·a = π(1+a)/2` ⇔ `a = (4−π)/(π−2√2)`.
pub const A_UPPER_BEST: f64 = (4.0 - PI) / (PI - TWO_SQRT_2);

/// The sharp bounds at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpBounds {
    pub x: f64,
    pub lower_lambda: f64,
    pub lower_pi2: f64,
    pub lower_best: f64,
    pub upper_best: f64,
}

/// `λ(x) = cos(⅓·arctan √((1−x)/(1+x)))`, strictly between `cos(π/12)` and 1.
pub fn lambda_fn(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok(lambda_unchecked(x))
}

fn lambda_unchecked(x: f64) -> f64 {
    (((1.0 - x) / (1.0 + x)).sqrt().atan() / 3.0).cos()
}

/// Lower bound `2(4λ²−1)√(1−x) / ((2√2λ + √(1+x))λ²)`.
pub fn sharp_lower_lambda(x: f64) -> Result<f64> {
    let l = lambda_fn(x)?;
    let l2 = l * l;
    Ok(2.0 * (4.0 * l2 - 1.0) * (1.0 - x).sqrt() / ((TWO_SQRT_2 * l + (1.0 + x).sqrt()) * l2))
}

/// Upper bound `π(2−√2)√(1−x) / ((4−π) + (π−2√2)√(1+x))`, the middle-regime
/// upper bound at `a = A_UPPER_BEST` with `4−π` cleared.
pub fn sharp_upper_best(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    Ok(PI * (2.0 - SQRT_2) * (1.0 - x).sqrt() / ((4.0 - PI) + (PI - TWO_SQRT_2) * (1.0 + x).sqrt()))
}

/// The pair at `a = A_STAR`, written with `4−π` cleared:
/// `π²√(1−x) / (2[2(π−2) + (4−π)√(1+x)])` and
/// `2[2(2−√2) + (√2−1)π]√(1−x) / (2(π−2) + (4−π)√(1+x))`.
pub fn sharp_pair_a_star(x: f64) -> Result<(f64, f64)> {
    check_unit_open(x)?;
    let d = 2.0 * (PI - 2.0) + (4.0 - PI) * (1.0 + x).sqrt();
    let r = (1.0 - x).sqrt();
    let lower = PI * PI * r / (2.0 * d);
    let upper = 2.0 * (2.0 * (2.0 - SQRT_2) + (SQRT_2 - 1.0) * PI) * r / d;
    Ok((lower, upper))
}

/// The pair at `a = 2√2`: `6√(1−x)/(2√2+√(1+x))` and
/// `π(1+2√2)√(1−x) / (2[2√2+√(1+x)])`.
pub fn sharp_pair_2sqrt2(x: f64) -> Result<(f64, f64)> {
    check_unit_open(x)?;
    let d = TWO_SQRT_2 + (1.0 + x).sqrt();
    let r = (1.0 - x).sqrt();
    Ok((6.0 * r / d, PI * (1.0 + TWO_SQRT_2) * r / (2.0 * d)))
}

/// Taylor coefficients of `((2 + √(1−u))·asin(√u)/√u − 3)` in `u`, from
/// `u²` on; the constant and linear terms vanish.
const CARLSON_SERIES: [f64; 12] = [
    0.016666666666666666,
    0.013095238095238096,
    0.009970238095238095,
    0.007803481240981241,
    0.00628950043012543,
    0.005196864767177267,
    0.004382453659366573,
    0.003758041683303662,
    0.0032676624405897775,
    0.0028746089831595567,
    0.0025540309914257394,
    0.002288617890702907,
];

/// Below this `u = (1−x)/2` the Carlson excess is summed as a series.
const CARLSON_SERIES_CUTOFF: f64 = 1e-2;

/// `F_{2√2}(x) − 6`, evaluated without cancellation as `x → 1⁻`, where it
/// vanishes like `(1−x)²/120`.
pub fn carlson_excess(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    let u = (1.0 - x) * 0.5;
    if u < CARLSON_SERIES_CUTOFF {
        let tail = CARLSON_SERIES.iter().rev().fold(0.0, |acc, &c| acc * u + c);
        Ok(2.0 * u * u * tail)
    } else {
        Ok((TWO_SQRT_2 + (1.0 + x).sqrt()) * crate::bounds::acos_ratio(x) - 6.0)
    }
}

/// `arccos x − 6√(1−x)/(2√2+√(1+x))`, accurate to a few ulp of itself.
pub fn carlson_lower_margin(x: f64) -> Result<f64> {
    Ok((1.0 - x).sqrt() * carlson_excess(x)? / (TWO_SQRT_2 + (1.0 + x).sqrt()))
}

/// Lower bound `8[1 − 2/(1+√3)²]√(1−x) / (1+√3+√(1+x))`.
pub fn sharp_lower_1plus_sqrt3(x: f64) -> Result<f64> {
    check_unit_open(x)?;
    let a = ONE_PLUS_SQRT_3;
    Ok(bound_template(interior_min_estimate(a), a, x))
}

/// `h_x(a) = (1 − 2/a²) / (a + √(1+x))` on `A_STAR < a ≤ 2√2`.
///
/// `8·h_x(a)·√(1−x)` is the middle-regime lower bound for parameter `a`.
pub fn hx_value(a: f64, x: f64) -> Result<f64> {
    check_unit_open(x)?;
    if !(a > A_STAR && a <= TWO_SQRT_2) {
        return Err(domain("a", a, "(A_STAR, 2√2]"));
    }
    Ok((1.0 - 2.0 / (a * a)) / (a + (1.0 + x).sqrt()))
}

/// Maximiser `2√2·λ(x)` of `a ↦ h_x(a)`, inside `(1+√3, 2√2)`.
pub fn hx_maximizer(x: f64) -> Result<f64> {
    Ok(TWO_SQRT_2 * lambda_fn(x)?)
}

/// Closed form of `max_a h_x(a)`: `(4λ²−1) / (4(2√2λ + √(1+x))λ²)`.
pub fn hx_max_value(x: f64) -> Result<f64> {
    let l = lambda_fn(x)?;
    let l2 = l * l;
    Ok((4.0 * l2 - 1.0) / (4.0 * (TWO_SQRT_2 * l + (1.0 + x).sqrt()) * l2))
}

/// `max(λ-bound, A_STAR lower bound)`.
pub fn best_lower(x: f64) -> Result<f64> {
    let (pi2, _) = sharp_pair_a_star(x)?;
    Ok(sharp_lower_lambda(x)?.max(pi2))
}

pub fn best_pair(x: f64) -> Result<SharpBounds> {
    let lower_lambda = sharp_lower_lambda(x)?;
    let (lower_pi2, _) = sharp_pair_a_star(x)?;
    Ok(SharpBounds {
        x,
        lower_lambda,
        lower_pi2,
        lower_best: lower_lambda.max(lower_pi2),
        upper_best: sharp_upper_best(x)?,
    })
}

/// Bisection tolerance, in `x`, for [`lower_crossover`].
pub const CROSSOVER_XTOL: f64 = 1e-10;

/// `λ-bound − A_STAR lower bound` at `x ∈ (0,1)`.
pub fn lower_gap(x: f64) -> Result<f64> {
    let (pi2, _) = sharp_pair_a_star(x)?;
    Ok(sharp_lower_lambda(x)? - pi2)
}

/// Bracket of width ≤ [`CROSSOVER_XTOL`] around the abscissa where the
/// λ-bound overtakes the `A_STAR` lower bound. Below it the `A_STAR` bound is
/// larger, above it the λ-bound is.
pub fn lower_crossover_bracket() -> Result<Bracket> {
    let gap = |x: f64| lower_gap(x).expect("bisection stays inside (0,1)");
    bisect(gap, 1e-9, 1.0 - 1e-9, CROSSOVER_XTOL)
        .ok_or_else(|| Error::Grid("lower bound families do not cross on (1e-9, 1-1e-9)".into()))
}

/// Midpoint of [`lower_crossover_bracket`].
pub fn lower_crossover() -> Result<f64> {
    lower_crossover_bracket().map(|b| b.midpoint())
}
