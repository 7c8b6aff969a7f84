//! Numerical toolkit for alternating Mathieu-type series
//!
//! ```text
//! S(r) = Σ_{k≥1} 2(−1)^{k−1} k^β / (k^α + r²)^μ
//! ```
//!
//! together with the Euler-polynomial asymptotic expansion of the shifted
//! series, the Bessel-type kernels of the associated Laplace-integral
//! representation, and a certified scan that exhibits the failure of the
//! bound `S(r) ≤ 2/(1+r²)^μ` for `β = 4m+5` at large `r`.
//!
//! Module map:
//! - [`polynomials`]: exact Bernoulli/Euler numbers and polynomials.
//! - [`series`]: cancellation-aware summation of the alternating series.
//! - [`asymptotics`]: expansion terms, leading coefficients and `s_n`.
//! - [`kernels`]: kernels, sign changes and both weighted integrals.
//! - [`refutation`]: certified margin checks and scans over `r`.

// Reference constants keep their published digits; `!(x > 0.0)` is used
// on purpose so that NaN fails validation.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod kernels;
pub mod polynomials;
pub mod refutation;
pub mod series;
mod summation;

pub use asymptotics::{ExpansionTerm, LeadingCoeff, SnConstant};
pub use error::{Error, Result};
pub use kernels::{KernelSpec, QuadratureResult};
pub use polynomials::{ExactRational, PolynomialCoeffs};
pub use refutation::{RefutationParams, RefutationReport, RowStatus, ScanRow, Verdict};
pub use series::{AsymptoticParams, CaseTag, InequalityParams, SeriesMethod, SeriesValue};
