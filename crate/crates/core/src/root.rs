//! Sign-change bisection on a bracketing interval.

/// Result of a bisection run: the final bracket and the number of halvings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Halves `[lo, hi]` until its width is at most `xtol`, keeping `f(lo)` and
/// `f(hi)` of opposite sign. Returns `None` when the endpoints do not
/// straddle a sign change.
///
/// Stops early if the midpoint is no longer strictly inside the bracket or
/// `f` is exactly zero there.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Option<Bracket>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() || flo == 0.0 || fhi == 0.0 {
        if flo == 0.0 {
            return Some(Bracket { lo, hi: lo, iterations: 0 });
        }
        if fhi == 0.0 {
            return Some(Bracket { lo: hi, hi, iterations: 0 });
        }
        return None;
    }
    let lo_negative = flo < 0.0;
    let mut iterations = 0;
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        iterations += 1;
        if fm == 0.0 {
            return Some(Bracket { lo: mid, hi: mid, iterations });
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(Bracket { lo, hi, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let b = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!(b.width() <= 1e-14);
        assert!((b.midpoint() - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn decreasing_function() {
        let b = bisect(|x| 1.0 - x, 0.0, 3.0, 1e-12).unwrap();
        assert!((b.midpoint() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-10).is_none());
    }

    #[test]
    fn exact_root_at_endpoint() {
        let b = bisect(|x| x, 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(b.midpoint(), 0.0);
    }

    #[test]
    fn tolerance_below_resolution_terminates() {
        let b = bisect(|x| x - 0.3, 0.0, 1.0, 0.0).unwrap();
        assert!(b.iterations < 70);
        assert!((b.midpoint() - 0.3).abs() < 1e-16);
    }
}
