//! Two-sided bounds for `arccos x` on `(0,1)` built from the family
//! `F_a(x) = (a + √(1+x))·arccos x / √(1−x)`, together with the tools that
//! check them numerically: regime classification, sharp bound instances,
//! the proof apparatus behind the monotonicity of `F_a`, a grid verifier, a
//! registry of checkable claims and a scanner for the three-parameter
//! family `(γ + (1+x)^β)·arccos x / (1−x)^α`.
//!
//! ```
//! use arccos_bounds::{bound_pair, classify_regime, Regime};
//!
//! let b = bound_pair(0.0, 0.5).unwrap();
//! let ac = 0.5f64.acos();
//! assert!(b.lower < ac && ac < b.upper);
//! assert_eq!(classify_regime(3.0), Regime::Decreasing);
//! ```

pub mod analysis;
pub mod bounds;
pub mod claims;
pub mod error;
pub mod explorer;
pub mod float;
pub mod grid;
pub mod root;
pub mod sharp;
pub mod verifier;

pub use analysis::{find_minimum, min_value_lower, MinimumResult};
pub use bounds::{
    arccos_stable, bound_pair, classify_regime, f_a, lower_constant, upper_constant, BoundPair, Regime, A_STAR,
    TWO_SQRT_2,
};
pub use claims::{registry, run_claims, select, Claim, ClaimOptions};
pub use error::{Error, Result};
pub use explorer::{classify_abc, f_abc, scan_grid, AxisRange, ScanClassification, ScanEntry, Verdict};
pub use grid::{GridSpec, Spacing};
pub use sharp::{best_pair, lambda_fn, SharpBounds};
pub use verifier::{compare_bounds, DominanceRow, DominanceTable, VerificationReport};
