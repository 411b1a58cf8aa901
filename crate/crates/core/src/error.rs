use thiserror::Error;

/// Errors raised by the bound, analysis, verification and scanning routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// `a` is not in the interior-minimum regime `(A_STAR, 2√2)`.
    #[error("a = {a} is not in the interior-minimum regime ({lo}, {hi})")]
    Regime { a: f64, lo: f64, hi: f64 },

    /// The sign change of G_a could not be bracketed. The monotonicity
    /// theorem guarantees one, so this points to a numerical fault.
    #[error("no sign change of G_a bracketed for a = {a} down to endpoint gap {gap:e}")]
    NoSignChange { a: f64, gap: f64 },

    /// `gamma + (1+x)^beta` vanishes somewhere in `(0,1)`.
    #[error("singular family: gamma + (1+x)^beta vanishes in (0,1) for beta = {beta}, gamma = {gamma}")]
    SingularFamily { beta: f64, gamma: f64 },

    /// A sampled function value overflowed or was NaN.
    #[error("non-finite function value at x = {x}")]
    NonFinite { x: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        domain,
    }
}

/// Rejects `x` unless `0 < x < 1`.
pub(crate) fn check_unit_open(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(domain("x", x, "(0, 1)"))
    }
}

pub(crate) fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(name, v, "finite reals"))
    }
}
