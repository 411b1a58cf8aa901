//! Grid and limit checks that turn each inequality, monotonicity, sharpness
//! and dominance statement into a [`VerificationReport`].
//!
//! A pointwise check produces, at each abscissa, a signed margin (positive
//! when the statement holds) and a floating-point slack. A point passes when
//! `margin > −slack`; the slack is 4 ulp of the summed magnitudes of the
//! two sides of the comparison ([`diff_tol`]).
//!
//! Grid points are evaluated in parallel. The reduction picks the worst point
//! by the total order (violated first, then smaller margin, then smaller `x`),
//! so reports do not depend on the thread count or evaluation order.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    arccos_stable, bound_pair, bound_template, classify_regime, f_a, interior_min_estimate, left_limit,
    right_limit, Regime,
};
use crate::error::{check_finite, domain, Error, Result};
use crate::float::{diff_tol, fp_tol};
use crate::grid::{GridSpec, Spacing};
use crate::sharp::{
    lower_crossover_bracket, sharp_lower_1plus_sqrt3, sharp_lower_lambda, sharp_pair_2sqrt2, sharp_pair_a_star,
    sharp_upper_best,
};

/// Absolute tolerance on `|F_a(ε) − π(1+a)/2|` and `|F_a(1−ε) − (2+√2a)|` at
/// the smallest `ε`.
pub const LIMIT_TOL: f64 = 1e-6;

/// Absolute tolerance between grid extrema of `F_a` and the best constants.
pub const EXTREMA_TOL: f64 = 1e-4;

/// Default `ε` sequence for limit checks.
pub const DEFAULT_EPS: [f64; 9] = [1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12];

/// Outcome of one claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub passed: bool,
    pub samples: usize,
    /// Signed; positive means satisfied.
    pub worst_margin: f64,
    pub worst_x: f64,
    pub notes: String,
}

impl VerificationReport {
    /// Folds several sub-checks into one report under `claim_id`.
    pub fn merge(claim_id: impl Into<String>, parts: Vec<VerificationReport>) -> VerificationReport {
        let passed = parts.iter().all(|r| r.passed);
        let samples = parts.iter().map(|r| r.samples).sum();
        let worst = parts
            .iter()
            .min_by(|p, q| {
                p.passed
                    .cmp(&q.passed)
                    .then(p.worst_margin.total_cmp(&q.worst_margin))
                    .then(p.worst_x.total_cmp(&q.worst_x))
            })
            .cloned();
        let notes = parts
            .iter()
            .map(|r| format!("{}: {}", r.claim_id, if r.passed { "ok" } else { "FAILED" }))
            .collect::<Vec<_>>()
            .join("; ");
        let (worst_margin, worst_x) = worst.map_or((f64::INFINITY, f64::NAN), |w| (w.worst_margin, w.worst_x));
        VerificationReport {
            claim_id: claim_id.into(),
            passed,
            samples,
            worst_margin,
            worst_x,
            notes,
        }
    }
}

/// Margin and slack of one sample.
#[derive(Debug, Clone, Copy)]
pub struct PointCheck {
    pub x: f64,
    pub margin: f64,
    pub slack: f64,
}

impl PointCheck {
    pub fn new(x: f64, margin: f64, slack: f64) -> Self {
        PointCheck { x, margin, slack }
    }

    /// A sample that takes no part in the verdict.
    pub fn skip(x: f64) -> Self {
        PointCheck {
            x,
            margin: f64::INFINITY,
            slack: 0.0,
        }
    }

    pub fn ok(&self) -> bool {
        self.margin > -self.slack
    }

    fn worse(self, other: PointCheck) -> PointCheck {
        let ord = self
            .ok()
            .cmp(&other.ok())
            .then(self.margin.total_cmp(&other.margin))
            .then(self.x.total_cmp(&other.x));
        if ord == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    worst: PointCheck,
    violations: usize,
}

impl Tally {
    fn identity() -> Self {
        Tally {
            worst: PointCheck::new(f64::NAN, f64::INFINITY, 0.0),
            violations: 0,
        }
    }

    fn push(self, c: PointCheck) -> Self {
        Tally {
            worst: self.worst.worse(c),
            violations: self.violations + usize::from(!c.ok()),
        }
    }

    fn join(self, other: Tally) -> Self {
        Tally {
            worst: self.worst.worse(other.worst),
            violations: self.violations + other.violations,
        }
    }
}

fn report_from(claim_id: &str, samples: usize, tally: Tally, notes: String) -> VerificationReport {
    VerificationReport {
        claim_id: claim_id.to_string(),
        passed: tally.violations == 0,
        samples,
        worst_margin: tally.worst.margin,
        worst_x: tally.worst.x,
        notes: if tally.violations == 0 {
            notes
        } else {
            format!("{notes}; {} violating samples", tally.violations)
        },
    }
}

/// Runs `check` at every point of `xs` in parallel.
pub fn check_points<F>(claim_id: &str, xs: &[f64], notes: impl Into<String>, check: F) -> VerificationReport
where
    F: Fn(f64) -> PointCheck + Sync,
{
    let tally = xs
        .par_iter()
        .map(|&x| check(x))
        .fold(Tally::identity, Tally::push)
        .reduce(Tally::identity, Tally::join);
    report_from(claim_id, xs.len(), tally, notes.into())
}

/// Runs `check` on every consecutive pair `(i, i+1)` of `xs`.
pub fn check_cells<F>(claim_id: &str, xs: &[f64], notes: impl Into<String>, check: F) -> VerificationReport
where
    F: Fn(usize) -> PointCheck + Sync,
{
    let tally = (0..xs.len() - 1)
        .into_par_iter()
        .map(&check)
        .fold(Tally::identity, Tally::push)
        .reduce(Tally::identity, Tally::join);
    report_from(claim_id, xs.len(), tally, notes.into())
}

/// Folds explicitly computed checks into one report.
pub fn report_checks(claim_id: &str, checks: &[PointCheck], notes: impl Into<String>) -> VerificationReport {
    let tally = checks.iter().copied().fold(Tally::identity(), Tally::push);
    report_from(claim_id, checks.len(), tally, notes.into())
}

/// Grid abscissae, rejecting grids that leave `(0,1)`.
pub fn unit_points(grid: &GridSpec) -> Result<Vec<f64>> {
    if !(grid.lo > 0.0 && grid.hi < 1.0) {
        return Err(Error::Grid(format!(
            "verification grids must lie inside (0, 1), got [{}, {}]",
            grid.lo, grid.hi
        )));
    }
    grid.points()
}

fn acos(x: f64) -> f64 {
    arccos_stable(x).expect("grid point inside (0,1)")
}

fn grid_note(grid: &GridSpec) -> String {
    format!("{} grid, n = {}, [{:e}, 1 - {:e}]", grid.spacing, grid.n, grid.lo, 1.0 - grid.hi)
}

/// Checks `lower(x) < arccos x` on the grid.
pub fn verify_lower<F>(claim_id: &str, grid: &GridSpec, lower: F) -> Result<VerificationReport>
where
    F: Fn(f64) -> f64 + Sync,
{
    let xs = unit_points(grid)?;
    Ok(check_points(claim_id, &xs, format!("lower < arccos; {}", grid_note(grid)), |x| {
        let (ac, lo) = (acos(x), lower(x));
        PointCheck::new(x, ac - lo, diff_tol(ac, lo))
    }))
}

/// Checks `arccos x < upper(x)` on the grid.
pub fn verify_upper<F>(claim_id: &str, grid: &GridSpec, upper: F) -> Result<VerificationReport>
where
    F: Fn(f64) -> f64 + Sync,
{
    let xs = unit_points(grid)?;
    Ok(check_points(claim_id, &xs, format!("arccos < upper; {}", grid_note(grid)), |x| {
        let (ac, hi) = (acos(x), upper(x));
        PointCheck::new(x, hi - ac, diff_tol(ac, hi))
    }))
}

/// Containment of arccos in [`bound_pair`]`(a, ·)` on the grid. The
/// orientation of the constants follows the regime of `a`.
pub fn verify_bounds(a: f64, grid: &GridSpec) -> Result<VerificationReport> {
    bound_pair(a, 0.5)?;
    let xs = unit_points(grid)?;
    let regime = classify_regime(a);
    let notes = format!(
        "bound_pair containment, a = {a}, regime {regime}{}; {}",
        if regime == Regime::Decreasing { " (reversed)" } else { "" },
        grid_note(grid)
    );
    Ok(check_points(&format!("bounds[a={a}]"), &xs, notes, |x| {
        let bp = bound_pair(a, x).expect("validated a and x");
        let ac = acos(x);
        PointCheck::new(x, bp.margin(ac), diff_tol(ac, bp.upper))
    }))
}

/// Signs of the forward differences of `F_a` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceSigns {
    /// Changes between strictly positive and strictly negative differences,
    /// ignoring differences within [`diff_tol`] of the two values.
    pub sign_changes: usize,
    /// Sign of the first difference beyond the slack (−1, 0 or 1).
    pub first_sign: i8,
    /// Grid argmin of `F_a`.
    pub argmin_x: f64,
    /// The cell `[x_i, x_{i+1}]` where the (first) sign change happens.
    pub change_cell: Option<(f64, f64)>,
}

fn f_values(a: f64, xs: &[f64]) -> Result<Vec<f64>> {
    xs.par_iter().map(|&x| f_a(a, x)).collect()
}

fn cell_slack(fs: &[f64], i: usize) -> f64 {
    diff_tol(fs[i], fs[i + 1])
}

fn first_argmin(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, &f)| if f < bv { (i, f) } else { (bi, bv) })
        .0
}

fn signs_of(xs: &[f64], fs: &[f64]) -> DifferenceSigns {
    let mut prev = 0i8;
    let mut first = 0i8;
    let mut changes = 0;
    let mut cell = None;
    let mut last_nonzero = 0usize;
    for i in 0..fs.len() - 1 {
        let d = fs[i + 1] - fs[i];
        let s = if d > cell_slack(fs, i) {
            1
        } else if d < -cell_slack(fs, i) {
            -1
        } else {
            0
        };
        if s == 0 {
            continue;
        }
        if first == 0 {
            first = s;
        }
        if prev != 0 && s != prev {
            changes += 1;
            if cell.is_none() {
                cell = Some((xs[last_nonzero], xs[i + 1]));
            }
        }
        prev = s;
        last_nonzero = i;
    }
    DifferenceSigns {
        sign_changes: changes,
        first_sign: first,
        argmin_x: xs[first_argmin(fs)],
        change_cell: cell,
    }
}

/// Counts sign changes of the forward differences of `F_a` on the grid.
pub fn difference_signs(a: f64, grid: &GridSpec) -> Result<DifferenceSigns> {
    check_finite("a", a)?;
    let xs = unit_points(grid)?;
    let fs = f_values(a, &xs)?;
    Ok(signs_of(&xs, &fs))
}

/// Checks that the forward differences of `F_a` behave as the regime of `a`
/// requires: one sign throughout for the monotone regimes, exactly one
/// − to + change for the interior-minimum regime.
pub fn verify_monotonicity(a: f64, grid: &GridSpec) -> Result<VerificationReport> {
    check_finite("a", a)?;
    let xs = unit_points(grid)?;
    let fs = f_values(a, &xs)?;
    let regime = classify_regime(a);
    let id = format!("monotonicity[a={a}]");
    let base = format!("regime {regime}; {}", grid_note(grid));
    let diff = |i: usize| fs[i + 1] - fs[i];
    Ok(match regime {
        Regime::Increasing => check_cells(&id, &xs, base, |i| PointCheck::new(xs[i], diff(i), cell_slack(&fs, i))),
        Regime::Decreasing => check_cells(&id, &xs, base, |i| PointCheck::new(xs[i], -diff(i), cell_slack(&fs, i))),
        Regime::InteriorMinimum => {
            let n = xs.len();
            let split = first_argmin(&fs).clamp(1, n.saturating_sub(2).max(1));
            let signs = signs_of(&xs, &fs);
            let mut r = check_cells(&id, &xs, base, |i| {
                let d = if i < split { -diff(i) } else { diff(i) };
                PointCheck::new(xs[i], d, cell_slack(&fs, i))
            });
            let shape_ok = signs.sign_changes == 1 && signs.first_sign == -1;
            r.passed &= shape_ok;
            r.notes = format!(
                "{}; sign changes = {}, first sign = {}, grid argmin x = {}",
                r.notes, signs.sign_changes, signs.first_sign, signs.argmin_x
            );
            r
        }
    })
}

/// Checks `F_a(ε) → π(1+a)/2` and `F_a(1−ε) → 2+√2·a` monotonically along
/// the decreasing `eps_list`, to [`LIMIT_TOL`] at its last entry, and that grid
/// extrema of `F_a` on `[ε_min, 1−ε_min]` converge to the best constants
/// within [`EXTREMA_TOL`] without crossing them.
///
/// The report margin is the smallest remaining headroom over all sub-checks;
/// the claim passes when it is positive.
pub fn verify_limits_and_sharpness(a: f64, eps_list: &[f64]) -> Result<VerificationReport> {
    bound_pair(a, 0.5)?;
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0 && e < 0.5)) {
        return Err(domain("eps", eps_list.first().copied().unwrap_or(f64::NAN), "non-empty list in (0, 1/2)"));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Grid("eps_list must be strictly decreasing".into()));
    }
    let left = left_limit(a);
    let right = right_limit(a);
    let mut checks = Vec::new();

    let mut prev: Option<(f64, f64)> = None;
    for &e in eps_list {
        let el = (f_a(a, e)? - left).abs();
        let er = (f_a(a, 1.0 - e)? - right).abs();
        if let Some((pl, pr)) = prev {
            // Errors may only shrink, up to rounding of the constants.
            checks.push(PointCheck::new(e, pl - el, fp_tol(left)));
            checks.push(PointCheck::new(1.0 - e, pr - er, fp_tol(right)));
        }
        prev = Some((el, er));
    }
    let e_min = *eps_list.last().unwrap();
    let (el, er) = prev.unwrap();
    checks.push(PointCheck::new(e_min, LIMIT_TOL - el, 0.0));
    checks.push(PointCheck::new(1.0 - e_min, LIMIT_TOL - er, 0.0));

    // Grid extrema against the constants of the regime.
    let grid = GridSpec::new(e_min, 1.0 - e_min, 20_000, Spacing::EndpointRefined)?;
    let xs = grid.points()?;
    let fs = f_values(a, &xs)?;
    let (imin, imax) = fs.iter().enumerate().fold((0, 0), |(lo, hi), (i, &f)| {
        (if f < fs[lo] { i } else { lo }, if f > fs[hi] { i } else { hi })
    });
    let (inf, sup) = (fs[imin], fs[imax]);
    let (c_inf, c_sup, inf_sharp) = match classify_regime(a) {
        Regime::Increasing => (left, right, true),
        Regime::Decreasing => (right, left, true),
        Regime::InteriorMinimum => (interior_min_estimate(a), left.max(right), false),
    };
    // The constants bound the grid values...
    checks.push(PointCheck::new(xs[imin], inf - c_inf, diff_tol(inf, c_inf)));
    checks.push(PointCheck::new(xs[imax], c_sup - sup, diff_tol(c_sup, sup)));
    // ...and are approached by them.
    checks.push(PointCheck::new(xs[imax], EXTREMA_TOL - (c_sup - sup), 0.0));
    if inf_sharp {
        checks.push(PointCheck::new(xs[imin], EXTREMA_TOL - (inf - c_inf), 0.0));
    }

    let worst = checks.iter().copied().fold(Tally::identity(), Tally::push);
    Ok(report_from(
        &format!("limits[a={a}]"),
        eps_list.len() * 2 + xs.len(),
        worst,
        format!(
            "F(0+) = {left}, F(1-) = {right}; errors at eps = {e_min:e}: {el:e}, {er:e}; grid inf {inf}, sup {sup}"
        ),
    ))
}

/// Names of the lower-bound candidates, in column order.
pub const LOWER_NAMES: [&str; 4] = ["a_star", "two_sqrt2", "one_plus_sqrt3", "lambda"];
/// Names of the upper-bound candidates, in column order.
pub const UPPER_NAMES: [&str; 3] = ["a_star", "two_sqrt2", "best"];

/// Every bound candidate at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceRow {
    pub x: f64,
    pub arccos: f64,
    /// `a = A_STAR`, `a = 2√2`, `a = 1+√3`, λ-bound.
    pub lower: [f64; 4],
    /// `a = A_STAR`, `a = 2√2`, best middle-regime upper bound.
    pub upper: [f64; 3],
    /// Index into [`LOWER_NAMES`] of the largest lower bound.
    pub best_lower: usize,
    /// Index into [`UPPER_NAMES`] of the smallest upper bound.
    pub best_upper: usize,
}

impl DominanceRow {
    pub fn at(x: f64) -> Result<DominanceRow> {
        let (l7, u7) = sharp_pair_a_star(x)?;
        let (l8, u8) = sharp_pair_2sqrt2(x)?;
        let lower = [l7, l8, sharp_lower_1plus_sqrt3(x)?, sharp_lower_lambda(x)?];
        let upper = [u7, u8, sharp_upper_best(x)?];
        let best_lower = (0..4).fold(0, |b, i| if lower[i] > lower[b] { i } else { b });
        let best_upper = (0..3).fold(0, |b, i| if upper[i] < upper[b] { i } else { b });
        Ok(DominanceRow {
            x,
            arccos: arccos_stable(x)?,
            lower,
            upper,
            best_lower,
            best_upper,
        })
    }
}

/// Per-point comparison of all bound candidates plus the aggregate verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceTable {
    pub rows: Vec<DominanceRow>,
    pub reports: Vec<VerificationReport>,
    /// Bisected abscissa where the λ-bound overtakes the `A_STAR` lower bound.
    pub crossover: f64,
    pub crossover_width: f64,
}

/// λ-bound dominates the `a = 2√2` and `a = 1+√3` lower bounds.
pub fn verify_lambda_dominance(grid: &GridSpec) -> Result<VerificationReport> {
    let xs = unit_points(grid)?;
    Ok(check_points(
        "rem4-item1",
        &xs,
        format!("lambda lower >= 2√2 and 1+√3 lower bounds; {}", grid_note(grid)),
        |x| {
            let lam = sharp_lower_lambda(x).expect("x in (0,1)");
            let other = sharp_pair_2sqrt2(x).expect("x in (0,1)").0.max(sharp_lower_1plus_sqrt3(x).expect("x in (0,1)"));
            PointCheck::new(x, lam - other, diff_tol(lam, other))
        },
    ))
}

/// The best middle-regime upper bound lies below the `A_STAR` and `2√2` ones.
pub fn verify_upper_dominance(grid: &GridSpec) -> Result<VerificationReport> {
    let xs = unit_points(grid)?;
    Ok(check_points(
        "rem4-item3",
        &xs,
        format!("best upper <= A_STAR and 2√2 upper bounds; {}", grid_note(grid)),
        |x| {
            let best = sharp_upper_best(x).expect("x in (0,1)");
            let other = sharp_pair_a_star(x).expect("x in (0,1)").1.min(sharp_pair_2sqrt2(x).expect("x in (0,1)").1);
            PointCheck::new(x, other - best, diff_tol(other, best))
        },
    ))
}

/// Witnesses of both orderings between the λ-bound and the `A_STAR` lower
/// bound. The margin is the weaker of the two strongest witnesses.
pub fn verify_non_inclusion(grid: &GridSpec) -> Result<VerificationReport> {
    let xs = unit_points(grid)?;
    let gaps: Vec<(f64, f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            let lam = sharp_lower_lambda(x).expect("x in (0,1)");
            let pi2 = sharp_pair_a_star(x).expect("x in (0,1)").0;
            (x, lam - pi2, diff_tol(lam, pi2))
        })
        .collect();
    let best = |sign: f64| {
        gaps.iter()
            .map(|&(x, g, s)| (x, sign * g, s))
            .fold((f64::NAN, f64::NEG_INFINITY, 0.0), |b, c| if c.1 > b.1 { c } else { b })
    };
    let above = best(1.0);
    let below = best(-1.0);
    let weaker = if above.1 - above.2 < below.1 - below.2 { above } else { below };
    let bracket = lower_crossover_bracket()?;
    let passed = above.1 > above.2 && below.1 > below.2;
    Ok(VerificationReport {
        claim_id: "rem4-item2".into(),
        passed,
        samples: xs.len(),
        worst_margin: weaker.1,
        worst_x: weaker.0,
        notes: format!(
            "lambda > A_STAR lower at x = {} (by {:e}); A_STAR lower > lambda at x = {} (by {:e}); crossover x = {} (bracket width {:e}); {}",
            above.0,
            above.1,
            below.0,
            below.1,
            bracket.midpoint(),
            bracket.width(),
            grid_note(grid)
        ),
    })
}

/// Evaluates every lower and upper bound candidate on the grid and reports
/// the three dominance statements.
pub fn compare_bounds(grid: &GridSpec) -> Result<DominanceTable> {
    let xs = unit_points(grid)?;
    let rows = xs.par_iter().map(|&x| DominanceRow::at(x)).collect::<Result<Vec<_>>>()?;
    let reports = vec![
        verify_lambda_dominance(grid)?,
        verify_non_inclusion(grid)?,
        verify_upper_dominance(grid)?,
    ];
    let bracket = lower_crossover_bracket()?;
    Ok(DominanceTable {
        rows,
        reports,
        crossover: bracket.midpoint(),
        crossover_width: bracket.width(),
    })
}

/// `c·√(1−x)/(a+√(1+x)) < arccos x` for an explicit constant `c`.
pub fn verify_lower_constant(claim_id: &str, a: f64, c: f64, grid: &GridSpec) -> Result<VerificationReport> {
    bound_pair(a, 0.5)?;
    verify_lower(claim_id, grid, |x| bound_template(c, a, x))
}

/// `arccos x < c·√(1−x)/(a+√(1+x))` for an explicit constant `c`.
pub fn verify_upper_constant(claim_id: &str, a: f64, c: f64, grid: &GridSpec) -> Result<VerificationReport> {
    bound_pair(a, 0.5)?;
    verify_upper(claim_id, grid, |x| bound_template(c, a, x))
}
