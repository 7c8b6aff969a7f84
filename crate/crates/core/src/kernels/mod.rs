//! Kernels `K(u)` of the Laplace-integral representation and the two
//! weighted integrals
//!
//! ```text
//! ∫₀^∞ x^{s−1}/(eˣ+1) · K(r x^{α/2}) dx    and    ∫₀^∞ x^{s−1} e^{−x} · K(r x^{α/2}) dx
//! ```
//!
//! with `s = μα − β`. For the three parameter cases with a known kernel,
//! `K` is `sin u / u` or a normalised Bessel function `j_λ(u) = J_λ(u)/u^λ`
//! up to an unknown positive constant. That constant is never assumed:
//! every cross-check against the series is a ratio or a sign.

pub mod bessel;
mod quadrature;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{self, CaseTag, InequalityParams};

pub use bessel::{bessel_j, normalized_bessel};

/// Largest number of Gauss–Kronrod segments per integral.
const MAX_SEGMENTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum KernelSpec {
    Sinc,
    NormalizedBessel { lambda: f64 },
}

impl KernelSpec {
    pub fn normalized_bessel(lambda: f64) -> Result<Self> {
        if !(-0.5..=bessel::MAX_ORDER).contains(&lambda) {
            return Err(Error::invalid(format!(
                "normalised Bessel kernel needs −1/2 ≤ λ ≤ 50, got {lambda}"
            )));
        }
        Ok(KernelSpec::NormalizedBessel { lambda })
    }

    /// `K(|u|)`; both kernels are even.
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            KernelSpec::Sinc => sinc(u),
            KernelSpec::NormalizedBessel { lambda } => {
                bessel::normalized_bessel_unchecked(lambda, u.abs())
            }
        }
    }

    /// Bound on `sup |K|` used for truncating the integrals.
    pub fn sup_abs(&self) -> f64 {
        match *self {
            KernelSpec::Sinc => 1.0,
            KernelSpec::NormalizedBessel { lambda } => self.eval(0.0).max(if lambda < 0.0 {
                (2.0 / std::f64::consts::PI).sqrt()
            } else {
                0.0
            }),
        }
    }

    /// Positive roots in `(0, u_max]`, known in closed form for `Sinc`.
    fn roots_up_to(&self, u_max: f64) -> Result<Vec<f64>> {
        match self {
            KernelSpec::Sinc => {
                let pi = std::f64::consts::PI;
                Ok((1..)
                    .map(|j| j as f64 * pi)
                    .take_while(|u| *u <= u_max)
                    .collect())
            }
            KernelSpec::NormalizedBessel { .. } => find_sign_changes(self, u_max, 0.1),
        }
    }
}

/// `sin u / u` with the removable singularity filled.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// Kernel of cases 1–3 with the positive constant factor dropped.
pub fn kernel_for_case(case: CaseTag, mu: f64) -> Result<KernelSpec> {
    match case {
        CaseTag::Case1 => Ok(KernelSpec::Sinc),
        CaseTag::Case2 if mu > 0.5 => KernelSpec::normalized_bessel(mu - 0.5),
        CaseTag::Case3 if mu > 1.0 => KernelSpec::normalized_bessel(mu - 1.5),
        CaseTag::Case2 | CaseTag::Case3 => Err(Error::invalid(format!(
            "{case:?} needs μ > {}, got {mu}",
            if case == CaseTag::Case2 { "1/2" } else { "1" }
        ))),
        CaseTag::Case4 | CaseTag::Case5 | CaseTag::Custom => Err(Error::Unsupported(format!(
            "kernel for {case:?} is not available in closed form"
        ))),
    }
}

/// Ascending points in `(0, u_max]` where the kernel changes sign, each
/// refined by bisection.
pub fn find_sign_changes(kernel: &KernelSpec, u_max: f64, grid_step: f64) -> Result<Vec<f64>> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::invalid(format!(
            "grid step must lie in (0, 0.1], got {grid_step}"
        )));
    }
    if !(u_max > 0.0) || !u_max.is_finite() {
        return Err(Error::invalid(format!(
            "u_max must be positive, got {u_max}"
        )));
    }
    let steps = (u_max / grid_step).ceil() as usize;
    let mut roots = Vec::new();
    let mut prev_u = 0.0;
    let mut prev_v = kernel.eval(0.0);
    for i in 1..=steps {
        let u = (i as f64 * grid_step).min(u_max);
        let v = kernel.eval(u);
        if v == 0.0 {
            // exact zero on the grid: count it if the sign flips across it
            let next = kernel.eval(u + grid_step);
            if prev_v * next < 0.0 {
                roots.push(u);
            }
        } else if prev_v * v < 0.0 {
            roots.push(bisect(|x| kernel.eval(x), prev_u, u, prev_v));
        }
        if v != 0.0 {
            prev_v = v;
        }
        prev_u = u;
    }
    Ok(roots)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_positive = f_lo > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-14 * hi.max(1.0) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Gauss–Kronrod estimate plus the truncation tail bound.
    pub abs_error_estimate: f64,
    pub panels: usize,
    pub truncation_point: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Weight {
    Fermi,
    Exponential,
}

/// Smallest `X` with `sup|K| · X^{s−1} e^{−X} / (1 − (s−1)/X) ≤ bound`,
/// which dominates `sup|K| ∫_X^∞ x^{s−1} e^{−x} dx`.
fn truncation_point(s: f64, sup: f64, bound: f64) -> (f64, f64) {
    let mut x = (2.0 * (s - 1.0)).max(1.0) + 1.0;
    loop {
        let tail = sup * ((s - 1.0) * x.ln() - x).exp() / (1.0 - (s - 1.0) / x);
        if tail <= bound || x > 1e4 {
            return (x, tail);
        }
        x += 0.5;
    }
}

fn weighted_integral(
    weight: Weight,
    s: f64,
    alpha: f64,
    kernel: &KernelSpec,
    r: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::invalid(format!("need s = μα − β ≥ 1, got {s}")));
    }
    if !(alpha > 0.0) || !(r > 0.0) || !r.is_finite() || !(tol > 0.0) {
        return Err(Error::invalid(format!(
            "need α > 0, r > 0, tol > 0; got α={alpha}, r={r}, tol={tol}"
        )));
    }
    let (x_max, tail) = truncation_point(s, kernel.sup_abs(), tol / 10.0);

    // kernel roots mapped through x = (u/r)^{2/α}
    let u_max = r * x_max.powf(alpha / 2.0);
    let mut breaks = vec![0.0];
    for u in kernel.roots_up_to(u_max)? {
        let x = (u / r).powf(2.0 / alpha);
        if x > 0.0 && x < x_max {
            breaks.push(x);
        }
    }
    breaks.push(x_max);

    let integrand = |x: f64| {
        let w = match weight {
            Weight::Fermi => 1.0 / (x.exp() + 1.0),
            Weight::Exponential => (-x).exp(),
        };
        let power = if s == 1.0 { 1.0 } else { x.powf(s - 1.0) };
        power * w * kernel.eval(r * x.powf(alpha / 2.0))
    };
    let outcome = quadrature::integrate_panels(integrand, &breaks, tol - tail, MAX_SEGMENTS);
    let error = outcome.error + tail;
    if !outcome.converged {
        return Err(Error::NoConvergence {
            reason: format!("quadrature budget of {MAX_SEGMENTS} segments exhausted"),
            estimate: outcome.value,
            error,
        });
    }
    Ok(QuadratureResult {
        value: outcome.value,
        abs_error_estimate: error,
        panels: outcome.segments,
        truncation_point: x_max,
    })
}

/// `∫₀^∞ x^{s−1}/(eˣ+1) · K(r x^{α/2}) dx`.
pub fn integral_fermi(
    s: f64,
    alpha: f64,
    kernel: &KernelSpec,
    r: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    weighted_integral(Weight::Fermi, s, alpha, kernel, r, tol)
}

/// `∫₀^∞ x^{s−1} e^{−x} · K(r x^{α/2}) dx`.
pub fn integral_exp(
    s: f64,
    alpha: f64,
    kernel: &KernelSpec,
    r: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    weighted_integral(Weight::Exponential, s, alpha, kernel, r, tol)
}

/// Both sides of the integral inequality and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralComparison {
    pub kernel: KernelSpec,
    pub s: f64,
    pub fermi: QuadratureResult,
    pub exponential: QuadratureResult,
    /// `exponential − fermi`; a value below `−error_bound` means the
    /// integral inequality fails at this point.
    pub margin: f64,
    pub error_bound: f64,
}

/// Identifies which of cases 1–3 the parameters belong to.
fn case_of(params: &InequalityParams) -> Result<CaseTag> {
    if let Some(tag) = params.case_tag {
        if matches!(tag, CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3) {
            return Ok(tag);
        }
        return Err(Error::Unsupported(format!(
            "kernel for {tag:?} is not available in closed form"
        )));
    }
    [CaseTag::Case1, CaseTag::Case2, CaseTag::Case3]
        .into_iter()
        .find(|c| params.satisfies(*c))
        .ok_or_else(|| Error::Unsupported("parameters match none of cases 1–3".into()))
}

pub fn compare_integral_inequality(
    params: &InequalityParams,
    r: f64,
    tol: f64,
) -> Result<IntegralComparison> {
    let case = case_of(params)?;
    let kernel = kernel_for_case(case, params.mu)?;
    let s = params.decay_margin();
    let fermi = integral_fermi(s, params.alpha, &kernel, r, tol)?;
    let exponential = integral_exp(s, params.alpha, &kernel, r, tol)?;
    Ok(IntegralComparison {
        kernel,
        s,
        fermi,
        exponential,
        margin: exponential.value - fermi.value,
        error_bound: fermi.abs_error_estimate + exponential.abs_error_estimate,
    })
}

/// Margin of the series inequality `rhs − lhs` at the same point, for
/// comparing signs with [`compare_integral_inequality`].
pub fn series_margin(params: &InequalityParams, r: f64, tol: f64) -> Result<f64> {
    let lhs = series::lhs_series(params, r, tol)?;
    Ok(series::rhs_bound(params.mu, r) - lhs.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15 / PI * 10.0);
        assert!((sinc(PI / 2.0) - 2.0 / PI).abs() < 1e-15);
        assert!((sinc(5e-5) - (5e-5f64).sin() / 5e-5).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn kernel_mapping() {
        assert_eq!(
            kernel_for_case(CaseTag::Case1, 2.0).unwrap(),
            KernelSpec::Sinc
        );
        assert_eq!(
            kernel_for_case(CaseTag::Case2, 1.0).unwrap(),
            KernelSpec::NormalizedBessel { lambda: 0.5 }
        );
        assert_eq!(
            kernel_for_case(CaseTag::Case3, 2.0).unwrap(),
            KernelSpec::NormalizedBessel { lambda: 0.5 }
        );
        assert!(matches!(
            kernel_for_case(CaseTag::Case4, 2.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            kernel_for_case(CaseTag::Case5, 2.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            kernel_for_case(CaseTag::Case3, 1.0),
            Err(Error::InvalidParams(_))
        ));
    }

    /// Independent oracle for the first positive zero of `J_{3/2}`:
    /// bisection of `tan x − x` on `(π, 3π/2)`.
    fn tan_root() -> f64 {
        let (mut lo, mut hi) = (PI + 1e-9, 1.5 * PI - 1e-9);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.tan() - mid < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn sign_changes() {
        let roots = find_sign_changes(&KernelSpec::Sinc, 10.0, 0.05).unwrap();
        assert_eq!(roots.len(), 3);
        for (i, r) in roots.iter().enumerate() {
            assert!((r - (i + 1) as f64 * PI).abs() < 1e-9);
        }
        let half =
            find_sign_changes(&KernelSpec::NormalizedBessel { lambda: 0.5 }, 10.0, 0.05).unwrap();
        assert_eq!(half.len(), 3);
        for (a, b) in half.iter().zip(&roots) {
            assert!((a - b).abs() < 1e-9);
        }
        let three =
            find_sign_changes(&KernelSpec::NormalizedBessel { lambda: 1.5 }, 10.0, 0.05).unwrap();
        assert!((three[0] - tan_root()).abs() < 1e-9);
        assert!((three[0] - 4.4934).abs() < 1e-4);
        assert!(find_sign_changes(&KernelSpec::Sinc, 10.0, 0.2).is_err());
    }

    #[test]
    fn exponential_side_closed_form() {
        // ∫ x² e^{−x} sin(rx)/(rx) dx = 2/(1+r²)²
        for r in [0.5, 1.0, 2.0] {
            let q = integral_exp(3.0, 2.0, &KernelSpec::Sinc, r, 1e-12).unwrap();
            let expect = 2.0 / (1.0 + r * r).powi(2);
            assert!((q.value - expect).abs() < 1e-11, "r={r}: {}", q.value);
            assert!(q.abs_error_estimate <= 1e-12);
        }
        let q = integral_exp(1.0, 2.0, &KernelSpec::Sinc, 1e-9, 1e-12).unwrap();
        assert!((q.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fermi_side_small_r_limit() {
        let q = integral_fermi(1.0, 2.0, &KernelSpec::Sinc, 1e-9, 1e-12).unwrap();
        assert!((q.value - std::f64::consts::LN_2).abs() < 1e-10);
        let far = integral_fermi(3.0, 2.0, &KernelSpec::Sinc, 50.0, 1e-10).unwrap();
        assert!(far.value.abs() < 1e-4);
    }

    #[test]
    fn rejects_singular_exponent() {
        assert!(integral_fermi(0.5, 2.0, &KernelSpec::Sinc, 1.0, 1e-8).is_err());
    }

    #[test]
    fn comparison_requires_known_kernel() {
        let p = InequalityParams::tagged(CaseTag::Case4, 2.0, 9.0, 6.0).unwrap();
        assert!(matches!(
            compare_integral_inequality(&p, 1.0, 1e-8),
            Err(Error::Unsupported(_))
        ));
    }
}
