//! Registry of every checkable statement about the arccos bound family,
//! keyed by a stable claim id so that any subset can be run and traced.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use rayon::prelude::*;

use crate::analysis::{
    a1, a2, critical_value_margin, find_minimum, g_a, h_a, p_fn, q_a, r_fn, MinimumResult,
};
use crate::bounds::{
    acos_ratio, arccos_stable, classify_regime, f_a, interior_min_estimate, left_limit, lower_constant,
    right_limit, upper_constant, Regime, A_STAR, TWO_SQRT_2,
};
use crate::error::{domain, Error, Result};
use crate::explorer::{classify_abc, Verdict};
use crate::float::{diff_tol, fp_tol};
use crate::grid::{GridSpec, Spacing};
use crate::sharp::{
    best_lower, carlson_lower_margin, hx_max_value, hx_maximizer, hx_value, sharp_lower_lambda,
    sharp_pair_2sqrt2, sharp_pair_a_star, sharp_upper_best, ONE_PLUS_SQRT_3,
};
use crate::verifier::{
    check_cells, check_points, report_checks, unit_points, verify_bounds, verify_lambda_dominance,
    verify_limits_and_sharpness, verify_lower_constant, verify_monotonicity, verify_non_inclusion,
    verify_upper_constant, verify_upper_dominance, PointCheck, VerificationReport, DEFAULT_EPS,
};

/// Settings shared by all claims of one run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClaimOptions {
    /// Replaces the default parameter list of claims that take `a`.
    pub a: Option<f64>,
    pub grid: GridSpec,
}

impl ClaimOptions {
    fn grid_capped(&self, n: usize) -> GridSpec {
        self.grid.with_n(self.grid.n.min(n))
    }
}

type Runner = fn(&ClaimOptions) -> Result<VerificationReport>;

/// One registry entry.
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    /// Default parameter values, or `-` for claims without `a`.
    pub parameters: &'static str,
    run: Runner,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim").field("id", &self.id).finish_non_exhaustive()
    }
}

impl Claim {
    pub fn run(&self, opts: &ClaimOptions) -> Result<VerificationReport> {
        let mut r = (self.run)(opts)?;
        r.claim_id = self.id.to_string();
        Ok(r)
    }
}

const fn claim(id: &'static str, statement: &'static str, parameters: &'static str, run: Runner) -> Claim {
    Claim {
        id,
        statement,
        parameters,
        run,
    }
}

static REGISTRY: [Claim; 27] = [
    claim(
        "carlson-lower",
        "6√(1−x)/(2√2+√(1+x)) < arccos x on (0,1)",
        "-",
        carlson_lower,
    ),
    claim(
        "carlson-upper",
        "arccos x < (1/2+√2)π√(1−x)/(2√2+√(1+x)) on (0,1)",
        "-",
        carlson_upper,
    ),
    claim(
        "thm1-increasing",
        "F_a is strictly increasing on (0,1) for a ≤ A_STAR",
        "a ∈ {-3, 0, 2, A_STAR}",
        thm1_increasing,
    ),
    claim(
        "thm1-decreasing",
        "F_a is strictly decreasing on (0,1) for a ≥ 2√2",
        "a ∈ {2√2, 4}",
        thm1_decreasing,
    ),
    claim(
        "thm1-interior-minimum",
        "F_a decreases then increases on (0,1) for A_STAR < a < 2√2",
        "a ∈ {2.7, 2.75, 2.8}",
        thm1_interior_minimum,
    ),
    claim(
        "thm1-derivative-sign",
        "forward differences of F_a have the sign of G_a",
        "a ∈ {0, 2, 2.7, 4}",
        thm1_derivative_sign,
    ),
    claim(
        "thm1-proof-g-limit",
        "G_a(0+) = ((π−4)a + 2(π−2)) / (2(a+2))",
        "a ∈ {0, 1, 3}",
        thm1_g_limit,
    ),
    claim(
        "thm1-proof-h-sign",
        "H_a > 0 for a ≥ 2√2 and H_a < 0 for −√2 ≤ a ≤ (1+√17)/2",
        "a ∈ {-√2, 0, 1, (1+√17)/2, 2√2, 3, 5}",
        thm1_h_sign,
    ),
    claim(
        "thm1-proof-q-sign",
        "Q_a > 0 for a ≤ 8/π and Q_a < 0 for a ≥ 2√2",
        "a ∈ {-3, 0, 1, 8/π, 2√2, 3, 5}",
        thm1_q_sign,
    ),
    claim(
        "thm1-proof-p-r",
        "P increases from 8/π to 2√2; R is positive, decreasing, R(1−) = 0",
        "-",
        thm1_p_r,
    ),
    claim(
        "thm1-proof-a1a2",
        "a1, a2 are increasing zeros of a ↦ H_a(x) with limits (1∓√17)/2 at 0 and −√2, 2√2 at 1",
        "-",
        thm1_a1a2,
    ),
    claim(
        "thm2-eq5-lower",
        "π(1+a)/2·√(1−x)/(a+√(1+x)) < arccos x for −1 < a ≤ A_STAR",
        "a ∈ {-0.5, 0, 1, A_STAR}",
        increasing_lower,
    ),
    claim(
        "thm2-eq5-upper",
        "arccos x < (2+√2a)·√(1−x)/(a+√(1+x)) for −1 < a ≤ A_STAR",
        "a ∈ {-0.5, 0, 1, A_STAR}",
        increasing_upper,
    ),
    claim(
        "thm2-eq5-reversed",
        "(2+√2a)·√(1−x)/(a+√(1+x)) < arccos x < π(1+a)/2·√(1−x)/(a+√(1+x)) for a ≥ 2√2",
        "a ∈ {2√2, 3, 5}",
        reversed_pair,
    ),
    claim(
        "thm2-eq6-lower",
        "8(1−2/a²)·√(1−x)/(a+√(1+x)) < arccos x",
        "a ∈ {2.3, 2.5, 2.7, 2.8}",
        middle_lower,
    ),
    claim(
        "thm2-eq6-upper",
        "arccos x < max(π(1+a)/2, 2+√2a)·√(1−x)/(a+√(1+x)) for A_STAR < a < 2√2",
        "a ∈ {2.7, 2.75, 2.8}",
        middle_upper,
    ),
    claim(
        "thm2-best-constants",
        "F_a(0+) = π(1+a)/2 and F_a(1−) = 2+√2a are attained as limits, so the constants are best possible",
        "a ∈ {-0.5, 0, 1, A_STAR, 2√2, 3, 5}",
        thm2_best_constants,
    ),
    claim(
        "thm2-minimum",
        "the interior minimum x0 solves the critical equation and 8(1−2/a²) ≤ F_a(x0) < both endpoint limits",
        "20 values of a spanning (A_STAR, 2√2)",
        thm2_minimum,
    ),
    claim(
        "rem2-sharp-pairs",
        "the pairs at a = A_STAR and a = 2√2 bracket arccos x",
        "-",
        rem2_sharp_pairs,
    ),
    claim(
        "rem3-maximizer",
        "a = 2√2·λ(x) maximises h_x(a) on (A_STAR, 2√2] and tends to 1+√3 as x → 0+",
        "-",
        rem3_maximizer,
    ),
    claim(
        "rem3-closed-form",
        "max_a h_x(a) equals its closed form in λ(x), and the λ-bound is 8·√(1−x)·max_a h_x(a)",
        "-",
        rem3_closed_form,
    ),
    claim(
        "rem4-containment",
        "max(λ-bound, A_STAR lower) < arccos x < best middle-regime upper bound",
        "-",
        rem4_containment,
    ),
    claim(
        "rem4-item1",
        "the λ-bound dominates the lower bounds at a = 2√2 and a = 1+√3",
        "-",
        rem4_item1,
    ),
    claim(
        "rem4-item2",
        "the λ-bound and the A_STAR lower bound do not dominate each other",
        "-",
        rem4_item2,
    ),
    claim(
        "rem4-item3",
        "the best middle-regime upper bound lies below the A_STAR and 2√2 upper bounds",
        "-",
        rem4_item3,
    ),
    claim(
        "min-lower-algebra",
        "2(a+u)²/(au+2) ≥ 8(1−2/a²) for u ∈ (1, √2)",
        "a ∈ {2.7, 2.75, 2.8, 2√2 − 1e-3}",
        min_lower_algebra,
    ),
    claim(
        "open-slice-consistency",
        "scan verdicts for (α, β) = (1/2, 1/2) match the regime of γ",
        "50 values of γ at least 1e-3 from either threshold",
        open_slice,
    ),
];

/// All claims in registry order.
pub fn registry() -> &'static [Claim] {
    &REGISTRY
}

pub fn find_claim(id: &str) -> Result<&'static Claim> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Parses `all` or a comma-separated list of ids.
pub fn select(list: &str) -> Result<Vec<&'static Claim>> {
    if list.trim() == "all" {
        return Ok(REGISTRY.iter().collect());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(find_claim)
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if v.is_empty() { Err(Error::UnknownClaim(list.to_string())) } else { Ok(v) })
}

/// Runs `claims` in order.
pub fn run_claims(claims: &[&Claim], opts: &ClaimOptions) -> Result<Vec<VerificationReport>> {
    claims.iter().map(|c| c.run(opts)).collect()
}

/// `opts.a` if set and admissible, otherwise `defaults`.
fn a_values(opts: &ClaimOptions, defaults: &[f64], admissible: fn(f64) -> bool, what: &'static str) -> Result<Vec<f64>> {
    match opts.a {
        Some(a) if admissible(a) => Ok(vec![a]),
        Some(a) => Err(domain("a", a, what)),
        None => Ok(defaults.to_vec()),
    }
}

fn per_a<F>(values: &[f64], f: F) -> Result<VerificationReport>
where
    F: Fn(f64) -> Result<VerificationReport>,
{
    let parts = values.iter().map(|&a| f(a)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::merge("", parts))
}

fn increasing(a: f64) -> bool {
    a.is_finite() && classify_regime(a) == Regime::Increasing
}

fn decreasing(a: f64) -> bool {
    a.is_finite() && classify_regime(a) == Regime::Decreasing
}

fn middle(a: f64) -> bool {
    a.is_finite() && classify_regime(a) == Regime::InteriorMinimum
}

fn carlson_lower(opts: &ClaimOptions) -> Result<VerificationReport> {
    let xs = unit_points(&opts.grid)?;
    Ok(check_points(
        "carlson-lower",
        &xs,
        format!(
            "strict margin > 0, margin evaluated without cancellation near x = 1; {} grid, n = {}",
            opts.grid.spacing, opts.grid.n
        ),
        |x| PointCheck::new(x, carlson_lower_margin(x).expect("x in (0,1)"), 0.0),
    ))
}

fn carlson_upper(opts: &ClaimOptions) -> Result<VerificationReport> {
    verify_upper_constant("carlson-upper", TWO_SQRT_2, (0.5 + SQRT_2) * PI, &opts.grid)
}

fn thm1_increasing(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[-3.0, 0.0, 2.0, A_STAR], increasing, "(-∞, A_STAR]")?;
    per_a(&v, |a| verify_monotonicity(a, &opts.grid))
}

fn thm1_decreasing(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[TWO_SQRT_2, 4.0], decreasing, "[2√2, ∞)")?;
    per_a(&v, |a| verify_monotonicity(a, &opts.grid))
}

fn thm1_interior_minimum(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[2.7, 2.75, 2.8], middle, "(A_STAR, 2√2)")?;
    per_a(&v, |a| verify_monotonicity(a, &opts.grid))
}

fn thm1_derivative_sign(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[0.0, 2.0, 2.7, 4.0], |a| a.is_finite() && a > -SQRT_2, "(-√2, ∞)")?;
    let grid = opts.grid_capped(10_000);
    let xs = unit_points(&grid)?;
    per_a(&v, |a| {
        let fs = xs.iter().map(|&x| f_a(a, x)).collect::<Result<Vec<_>>>()?;
        let gs = xs.iter().map(|&x| g_a(a, x)).collect::<Result<Vec<_>>>()?;
        Ok(check_cells(
            &format!("derivative-sign[a={a}]"),
            &xs,
            format!("cells where G_a changes sign are skipped; n = {}", grid.n),
            |i| {
                let s = gs[i].signum();
                if gs[i] == 0.0 || gs[i + 1].signum() != s {
                    return PointCheck::skip(xs[i]);
                }
                PointCheck::new(xs[i], s * (fs[i + 1] - fs[i]), diff_tol(fs[i], fs[i + 1]))
            },
        ))
    })
}

/// Absolute-error check `tol − |got − want|` at `x`.
fn close(x: f64, got: f64, want: f64, tol: f64) -> PointCheck {
    PointCheck::new(x, tol - (got - want).abs(), 0.0)
}

fn thm1_g_limit(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[0.0, 1.0, 3.0], |a| a.is_finite() && !(a > -2.0 && a < -SQRT_2), "ℝ \\ (-2, -√2)")?;
    let x = 1e-10;
    let checks = v
        .iter()
        .map(|&a| {
            let want = ((PI - 4.0) * a + 2.0 * (PI - 2.0)) / (2.0 * (a + 2.0));
            Ok(close(x, g_a(a, x)?, want, 1e-5))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report_checks("g-limit", &checks, "G_a(1e-10) against the limit, tolerance 1e-5"))
}

fn sign_check(claim_id: &str, grid: &GridSpec, sign: f64, f: impl Fn(f64) -> (f64, f64) + Sync) -> Result<VerificationReport> {
    let xs = unit_points(grid)?;
    Ok(check_points(claim_id, &xs, format!("sign {sign:+}; n = {}", grid.n), |x| {
        let (v, scale) = f(x);
        PointCheck::new(x, sign * v, fp_tol(scale))
    }))
}

fn thm1_h_sign(opts: &ClaimOptions) -> Result<VerificationReport> {
    let upper_neg = (1.0 + 17f64.sqrt()) / 2.0;
    let admissible = |a: f64| a >= TWO_SQRT_2 || (-SQRT_2..=(1.0 + 17f64.sqrt()) / 2.0).contains(&a);
    let v = a_values(
        opts,
        &[-SQRT_2, 0.0, 1.0, upper_neg, TWO_SQRT_2, 3.0, 5.0],
        admissible,
        "[-√2, (1+√17)/2] ∪ [2√2, ∞)",
    )?;
    per_a(&v, |a| {
        let sign = if a >= TWO_SQRT_2 { 1.0 } else { -1.0 };
        sign_check(&format!("h-sign[a={a}]"), &opts.grid, sign, |x| {
            let s = (1.0 + x).sqrt();
            let scale = a * a * s + a.abs() * (x + 1.0) + 4.0 * s;
            (h_a(a, x).expect("x in (0,1)"), scale)
        })
    })
}

fn thm1_q_sign(opts: &ClaimOptions) -> Result<VerificationReport> {
    let eight_over_pi = 8.0 * FRAC_1_PI;
    let admissible = |a: f64| a.is_finite() && !(a > -2.0 && a < -SQRT_2) && (a <= 8.0 * FRAC_1_PI || a >= TWO_SQRT_2);
    let v = a_values(
        opts,
        &[-3.0, 0.0, 1.0, eight_over_pi, TWO_SQRT_2, 3.0, 5.0],
        admissible,
        "(-∞, -2] ∪ [-√2, 8/π] ∪ [2√2, ∞)",
    )?;
    per_a(&v, |a| {
        let sign = if a >= TWO_SQRT_2 { -1.0 } else { 1.0 };
        sign_check(&format!("q-sign[a={a}]"), &opts.grid, sign, |x| {
            let s = (1.0 + x).sqrt();
            let scale = (1.0 - x).sqrt() * (a.abs() * s + 2.0) * acos_ratio(x);
            (q_a(a, x).expect("x in (0,1)"), scale)
        })
    })
}

fn thm1_p_r(opts: &ClaimOptions) -> Result<VerificationReport> {
    let xs = unit_points(&opts.grid)?;
    let ps: Vec<f64> = xs.par_iter().map(|&x| p_fn(x).expect("x in (0,1)")).collect();
    let rs: Vec<f64> = xs.par_iter().map(|&x| r_fn(x).expect("x in (0,1)")).collect();
    let lo = 8.0 * FRAC_1_PI;
    let r_scale = |x: f64| fp_tol(SQRT_2 * (1.0 - x).sqrt());
    let parts = vec![
        check_cells("p-increasing", &xs, "", |i| PointCheck::new(xs[i], ps[i + 1] - ps[i], diff_tol(ps[i], ps[i + 1]))),
        check_points("p-range", &xs, "", |x| {
            let p = p_fn(x).expect("x in (0,1)");
            PointCheck::new(x, (p - lo).min(TWO_SQRT_2 - p), diff_tol(p, TWO_SQRT_2))
        }),
        check_points("r-positive", &xs, "", |x| PointCheck::new(x, r_fn(x).expect("x in (0,1)"), r_scale(x))),
        check_cells("r-decreasing", &xs, "", |i| PointCheck::new(xs[i], rs[i] - rs[i + 1], r_scale(xs[i]))),
        report_checks(
            "p-r-limits",
            &[
                close(1e-10, p_fn(1e-10)?, lo, 1e-5),
                close(1.0 - 1e-10, p_fn(1.0 - 1e-10)?, TWO_SQRT_2, 1e-5),
                close(1.0 - 1e-10, r_fn(1.0 - 1e-10)?, 0.0, 1e-5),
            ],
            "",
        ),
    ];
    Ok(VerificationReport::merge("", parts))
}

fn thm1_a1a2(opts: &ClaimOptions) -> Result<VerificationReport> {
    let sqrt17 = 17f64.sqrt();
    let (e0, e1) = (1e-10, 1.0 - 1e-10);
    let limits = report_checks(
        "a1a2-limits",
        &[
            close(e0, a1(e0)?, (1.0 - sqrt17) / 2.0, 1e-6),
            close(e0, a2(e0)?, (1.0 + sqrt17) / 2.0, 1e-6),
            close(e1, a1(e1)?, -SQRT_2, 1e-6),
            close(e1, a2(e1)?, TWO_SQRT_2, 1e-6),
        ],
        "endpoint limits, tolerance 1e-6",
    );
    let sample = GridSpec::new(0.005, 0.995, 100, Spacing::Uniform)?.points()?;
    let zeros = sample
        .iter()
        .flat_map(|&x| [(x, a1(x)), (x, a2(x))])
        .map(|(x, r)| Ok(close(x, h_a(r?, x)?, 0.0, 1e-10)))
        .collect::<Result<Vec<_>>>()?;
    let zeros = report_checks("a1a2-zeros", &zeros, "H at both zeros, 100 points, tolerance 1e-10");
    let xs = unit_points(&opts.grid)?;
    let r1: Vec<f64> = xs.par_iter().map(|&x| a1(x).expect("x in (0,1)")).collect();
    let r2: Vec<f64> = xs.par_iter().map(|&x| a2(x).expect("x in (0,1)")).collect();
    let mono1 = check_cells("a1-increasing", &xs, "", |i| PointCheck::new(xs[i], r1[i + 1] - r1[i], diff_tol(r1[i], r1[i + 1])));
    let mono2 = check_cells("a2-increasing", &xs, "", |i| PointCheck::new(xs[i], r2[i + 1] - r2[i], diff_tol(r2[i], r2[i + 1])));
    Ok(VerificationReport::merge("", vec![limits, zeros, mono1, mono2]))
}

fn increasing_lower(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[-0.5, 0.0, 1.0, A_STAR], |a| a > -1.0 && increasing(a), "(-1, A_STAR]")?;
    per_a(&v, |a| verify_lower_constant(&format!("increasing-lower[a={a}]"), a, left_limit(a), &opts.grid))
}

fn increasing_upper(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[-0.5, 0.0, 1.0, A_STAR], |a| a > -1.0 && increasing(a), "(-1, A_STAR]")?;
    per_a(&v, |a| verify_upper_constant(&format!("increasing-upper[a={a}]"), a, right_limit(a), &opts.grid))
}

fn reversed_pair(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[TWO_SQRT_2, 3.0, 5.0], decreasing, "[2√2, ∞)")?;
    per_a(&v, |a| verify_bounds(a, &opts.grid))
}

fn middle_lower(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[2.3, 2.5, 2.7, 2.8], |a| a > SQRT_2 && a < TWO_SQRT_2, "(√2, 2√2)")?;
    per_a(&v, |a| verify_lower_constant(&format!("middle-lower[a={a}]"), a, interior_min_estimate(a), &opts.grid))
}

fn middle_upper(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[2.7, 2.75, 2.8], middle, "(A_STAR, 2√2)")?;
    per_a(&v, |a| {
        debug_assert_eq!(lower_constant(a)?, interior_min_estimate(a));
        verify_upper_constant(&format!("middle-upper[a={a}]"), a, upper_constant(a)?, &opts.grid)
    })
}

fn thm2_best_constants(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(
        opts,
        &[-0.5, 0.0, 1.0, A_STAR, TWO_SQRT_2, 3.0, 5.0],
        |a| a.is_finite() && a > -1.0,
        "(-1, ∞)",
    )?;
    per_a(&v, |a| verify_limits_and_sharpness(a, &DEFAULT_EPS))
}

/// Argmin of `F_a` by successive grid refinement: `levels` rounds of `n`
/// uniform points, each on the two cells around the previous argmin.
pub fn brute_force_minimum(a: f64, n: usize, levels: usize) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
    let mut best = (f64::NAN, f64::INFINITY);
    for _ in 0..levels {
        let xs = GridSpec::new(lo, hi, n, Spacing::Uniform)?.points()?;
        let fs = xs.par_iter().map(|&x| f_a(a, x)).collect::<Result<Vec<_>>>()?;
        let i = (0..n).fold(0, |b, i| if fs[i] < fs[b] { i } else { b });
        best = (xs[i], fs[i]);
        lo = xs[i.saturating_sub(1)];
        hi = xs[(i + 1).min(n - 1)];
    }
    Ok(best)
}

/// Tolerances for agreement between [`find_minimum`] and a grid argmin.
pub const MINIMUM_X_TOL: f64 = 1e-6;
pub const MINIMUM_F_TOL: f64 = 1e-10;
/// Bound on the critical-equation residual at the located minimum.
pub const RESIDUAL_TOL: f64 = 1e-12;

fn minimum_checks(m: &MinimumResult) -> Result<Vec<PointCheck>> {
    let a = m.a;
    let (bx, bf) = brute_force_minimum(a, 10_001, 3)?;
    let floor = interior_min_estimate(a);
    let ceiling = left_limit(a).min(right_limit(a));
    Ok(vec![
        PointCheck::new(m.x0, RESIDUAL_TOL - m.residual, 0.0),
        PointCheck::new(m.x0, m.f_min - floor, diff_tol(m.f_min, floor)),
        PointCheck::new(m.x0, ceiling - m.f_min, diff_tol(ceiling, m.f_min)),
        close(m.x0, m.x0, bx, MINIMUM_X_TOL),
        close(m.x0, m.f_min, bf, MINIMUM_F_TOL),
        // The grid never beats the located minimum by more than rounding.
        PointCheck::new(bx, bf - m.f_min, diff_tol(bf, m.f_min)),
    ])
}

fn thm2_minimum(opts: &ClaimOptions) -> Result<VerificationReport> {
    let defaults: Vec<f64> = (1..=20).map(|k| A_STAR + (TWO_SQRT_2 - A_STAR) * k as f64 / 21.0).collect();
    let v = a_values(opts, &defaults, middle, "(A_STAR, 2√2)")?;
    per_a(&v, |a| {
        let m = find_minimum(a)?;
        Ok(report_checks(
            &format!("minimum[a={a}]"),
            &minimum_checks(&m)?,
            format!("x0 = {}, F(x0) = {}, residual = {:e}", m.x0, m.f_min, m.residual),
        ))
    })
}

fn min_lower_algebra(opts: &ClaimOptions) -> Result<VerificationReport> {
    let v = a_values(opts, &[2.7, 2.75, 2.8, TWO_SQRT_2 - 1e-3], |a| a.is_finite() && a > 0.0, "(0, ∞)")?;
    let checks = v
        .iter()
        .map(|&a| Ok(PointCheck::new(a, critical_value_margin(a, 100_000)?, fp_tol(8.0))))
        .collect::<Result<Vec<_>>>()?;
    Ok(report_checks("min-lower-algebra", &checks, "min over 1e5 values of u; worst_x holds a"))
}

fn rem2_sharp_pairs(opts: &ClaimOptions) -> Result<VerificationReport> {
    let xs = unit_points(&opts.grid)?;
    let pair = |id: &str, f: fn(f64) -> Result<(f64, f64)>| {
        check_points(id, &xs, "", |x| {
            let (lo, hi) = f(x).expect("x in (0,1)");
            let ac = arccos_stable(x).expect("x in (0,1)");
            PointCheck::new(x, (ac - lo).min(hi - ac), diff_tol(ac, hi))
        })
    };
    Ok(VerificationReport::merge(
        "",
        vec![pair("pair-a-star", sharp_pair_a_star), pair("pair-2sqrt2", sharp_pair_2sqrt2)],
    ))
}

/// `n` midpoints of equal cells of `(0,1)`.
fn midpoints(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect()
}

fn rem3_maximizer(_opts: &ClaimOptions) -> Result<VerificationReport> {
    let a_grid = GridSpec::new(A_STAR, TWO_SQRT_2, 10_001, Spacing::Uniform)?.points()?;
    let a_grid = &a_grid[1..];
    let xs = midpoints(100);
    let dominance = check_points("hx-maximum", &xs, "", |x| {
        let best = hx_value(hx_maximizer(x).expect("x in (0,1)"), x).expect("maximizer in range");
        let grid_max = a_grid
            .iter()
            .map(|&a| hx_value(a, x).expect("a in range"))
            .fold(f64::NEG_INFINITY, f64::max);
        PointCheck::new(x, best - grid_max, diff_tol(best, grid_max))
    });
    let range = check_points("maximizer-range", &xs, "", |x| {
        let m = hx_maximizer(x).expect("x in (0,1)");
        PointCheck::new(x, (m - ONE_PLUS_SQRT_3).min(TWO_SQRT_2 - m), diff_tol(m, TWO_SQRT_2))
    });
    let x0 = 1e-12;
    let limit = report_checks("maximizer-limit", &[close(x0, hx_maximizer(x0)?, ONE_PLUS_SQRT_3, 1e-8)], "");
    let mut r = VerificationReport::merge("", vec![dominance, range, limit]);
    r.notes = format!("100 values of x against 1e4 values of a; {}", r.notes);
    Ok(r)
}

fn rem3_closed_form(opts: &ClaimOptions) -> Result<VerificationReport> {
    let xs = unit_points(&opts.grid_capped(10_000))?;
    let closed = check_points("hx-closed-form", &xs, "", |x| {
        let v = hx_max_value(x).expect("x in (0,1)");
        let w = hx_value(hx_maximizer(x).expect("x in (0,1)"), x).expect("maximizer in range");
        PointCheck::new(x, -(v - w).abs(), 8.0 * fp_tol(v))
    });
    let bound = check_points("lambda-bound", &xs, "", |x| {
        let v = 8.0 * hx_max_value(x).expect("x in (0,1)") * (1.0 - x).sqrt();
        let w = sharp_lower_lambda(x).expect("x in (0,1)");
        PointCheck::new(x, -(v - w).abs(), 8.0 * fp_tol(v))
    });
    Ok(VerificationReport::merge("", vec![closed, bound]))
}

fn rem4_containment(opts: &ClaimOptions) -> Result<VerificationReport> {
    let xs = unit_points(&opts.grid)?;
    Ok(check_points("containment", &xs, "", |x| {
        let ac = arccos_stable(x).expect("x in (0,1)");
        let lo = best_lower(x).expect("x in (0,1)");
        let hi = sharp_upper_best(x).expect("x in (0,1)");
        PointCheck::new(x, (ac - lo).min(hi - ac), diff_tol(ac, hi))
    }))
}

fn rem4_item1(opts: &ClaimOptions) -> Result<VerificationReport> {
    verify_lambda_dominance(&opts.grid)
}

fn rem4_item2(opts: &ClaimOptions) -> Result<VerificationReport> {
    verify_non_inclusion(&opts.grid)
}

fn rem4_item3(opts: &ClaimOptions) -> Result<VerificationReport> {
    verify_upper_dominance(&opts.grid)
}

/// The regime read as a scan verdict.
pub fn expected_verdict(gamma: f64) -> Verdict {
    match classify_regime(gamma) {
        Regime::Increasing => Verdict::Increasing,
        Regime::Decreasing => Verdict::Decreasing,
        Regime::InteriorMinimum => Verdict::NonMonotone,
    }
}

/// 50 values of `γ` kept at least `1e-3` away from `A_STAR` and `2√2`.
pub fn slice_gammas() -> Vec<f64> {
    let gap = 1e-3;
    let span = |lo: f64, hi: f64, n: usize| (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64);
    span(-0.9, A_STAR - gap, 16)
        .chain(span(A_STAR + gap, TWO_SQRT_2 - gap, 17))
        .chain(span(TWO_SQRT_2 + gap, 5.0, 17))
        .collect()
}

fn open_slice(opts: &ClaimOptions) -> Result<VerificationReport> {
    let gammas = match opts.a {
        Some(g) => vec![g],
        None => slice_gammas(),
    };
    let checks = gammas
        .iter()
        .map(|&g| {
            let c = classify_abc(0.5, 0.5, g, &opts.grid)?;
            Ok(PointCheck::new(g, if c.verdict == expected_verdict(g) { 1.0 } else { -1.0 }, 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report_checks(
        "slice",
        &checks,
        format!(
            "margin +1 on agreement, -1 on disagreement; worst_x holds gamma; {} grid, n = {}",
            opts.grid.spacing, opts.grid.n
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> ClaimOptions {
        ClaimOptions {
            a: None,
            grid: GridSpec::refined(20_000),
        }
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = registry().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
    }

    #[test]
    fn selection() {
        assert_eq!(select("all").unwrap().len(), registry().len());
        let s = select("rem4-item3, thm2-eq5-lower").unwrap();
        assert_eq!(s[0].id, "rem4-item3");
        assert_eq!(s[1].id, "thm2-eq5-lower");
        assert!(matches!(select("nope"), Err(Error::UnknownClaim(_))));
        assert!(select("").is_err());
    }

    #[test]
    fn every_claim_passes_on_a_small_grid() {
        for c in registry() {
            let r = c.run(&quick()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.claim_id, c.id);
        }
    }

    #[test]
    fn a_override_is_validated() {
        let opts = ClaimOptions { a: Some(2.7), ..quick() };
        assert!(matches!(find_claim("thm2-eq5-lower").unwrap().run(&opts), Err(Error::Domain { .. })));
        let opts = ClaimOptions { a: Some(0.0), ..quick() };
        let r = find_claim("thm2-eq5-lower").unwrap().run(&opts).unwrap();
        assert!(r.passed);
        assert!(r.worst_margin > 0.0);
    }

    #[test]
    fn slice_gammas_avoid_thresholds() {
        let g = slice_gammas();
        assert_eq!(g.len(), 50);
        assert!(g.iter().all(|&v| (v - A_STAR).abs() >= 1e-3 - 1e-15 && (v - TWO_SQRT_2).abs() >= 1e-3 - 1e-15));
    }

    #[test]
    fn brute_force_finds_the_minimum() {
        let m = find_minimum(2.7).unwrap();
        let (x, f) = brute_force_minimum(2.7, 10_001, 3).unwrap();
        assert!((x - m.x0).abs() < MINIMUM_X_TOL);
        assert!((f - m.f_min).abs() < MINIMUM_F_TOL);
    }
}
