//! Asymptotic expansion of the shifted alternating series as `t → ∞`,
//! its leading coefficient for odd powers, and the lower-bound constants
//! `s_n = 4(2ⁿ−1)/(n·2ⁿ) · n!/πⁿ`.
//!
//! The expansion
//!
//! ```text
//! Σ_k (−1)^{k(α+1)+γ} Γ(μ+k+1) E_{kα+γ}(−u) / (Γ(μ+1) Γ(k+1)) · t^{−α(k+μ+1)}
//! ```
//!
//! is divergent in general; [`evaluate_expansion`] sums exactly the number of
//! terms it is asked for.

use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomials::{self, ExactRational};
use crate::series::AsymptoticParams;

/// Lanczos coefficients (g = 7, n = 9).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for `0 < x ≤ 170`.
///
/// Integer arguments return the exactly rounded factorial; everything else
/// goes through the Lanczos sum, with the power split in two halves so that
/// `w^{x+1/2}` does not overflow before the exponential damps it.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || x > 170.0 || !x.is_finite() {
        return Err(Error::Overflow(format!(
            "gamma_fn needs 0 < x ≤ 170, got {x}"
        )));
    }
    if x.fract() == 0.0 {
        let n = x as u32;
        return Ok((2..n).fold(1.0, |acc, k| acc * f64::from(k)));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the argument inside the Lanczos range
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    let half = w.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (half * (-w).exp()) * sum
}

/// `Γ(μ+k+1) / (Γ(μ+1) Γ(k+1)) = Π_{i=1}^{k} (μ+i)/i`.
fn gamma_ratio(mu: f64, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (mu + f64::from(i)) / f64::from(i))
}

/// Exact `Π_{i=1}^{k} (μ+i)/i` for integer μ.
fn gamma_ratio_exact(mu: i64, k: u32) -> ExactRational {
    (1..=k).fold(ExactRational::one(), |acc, i| {
        acc * ExactRational::new(BigInt::from(mu + i64::from(i)), BigInt::from(i))
    })
}

/// One term `coefficient · t^{−exponent}` of the expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub index: u32,
    pub coefficient: f64,
    /// Power of `1/t`: `α(k + μ + 1)`.
    pub exponent: f64,
    /// Exact coefficient when μ is an integer and `u` is a float (always a
    /// dyadic rational).
    pub exact: Option<ExactRational>,
}

/// Term `k` of the expansion.
pub fn expansion_term(k: u32, params: &AsymptoticParams) -> Result<ExpansionTerm> {
    let n = (k as usize) * (params.alpha as usize) + params.gamma as usize;
    let euler = polynomials::euler_poly(n)?;
    let sign_exp = u64::from(k) * (u64::from(params.alpha) + 1) + u64::from(params.gamma);
    let negative = sign_exp % 2 == 1;
    let neg_u =
        ExactRational::from_f64(-params.u).ok_or_else(|| Error::invalid("u must be finite"))?;
    let e_val = euler.eval_exact(&neg_u);
    let exponent = f64::from(params.alpha) * (f64::from(k) + params.mu_thm + 1.0);

    let mu = params.mu_thm;
    let exact = if mu.fract() == 0.0 && mu.abs() < 1e9 {
        let ratio = gamma_ratio_exact(mu as i64, k);
        let c = ratio * e_val.clone();
        Some(if negative { -c } else { c })
    } else {
        None
    };
    let coefficient = match &exact {
        Some(q) => q.to_f64(),
        None => {
            let c = gamma_ratio(mu, k) * e_val.to_f64();
            if negative {
                -c
            } else {
                c
            }
        }
    };
    if !coefficient.is_finite() {
        return Err(Error::Overflow(format!(
            "expansion coefficient {k} overflows"
        )));
    }
    Ok(ExpansionTerm {
        index: k,
        coefficient,
        exponent,
        exact,
    })
}

/// Terms `0..=n` of the expansion.
pub fn expansion_terms(params: &AsymptoticParams, n: u32) -> Result<Vec<ExpansionTerm>> {
    (0..=n).map(|k| expansion_term(k, params)).collect()
}

/// `Σ_{k=0}^{n} coefficient_k / t^{exponent_k}`.
pub fn evaluate_expansion(params: &AsymptoticParams, t: f64, n: u32) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("need t > 0, got {t}")));
    }
    let log_t = t.ln();
    let mut sum = 0.0;
    for term in expansion_terms(params, n)? {
        if term.coefficient != 0.0 {
            sum += term.coefficient * (-term.exponent * log_t).exp();
        }
    }
    Ok(sum)
}

/// `(2^{2p} − 1) B_{2p} / p`, the limit of `S(r)·r^{2μ}` for `β = 2p − 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingCoeff {
    pub p: u32,
    pub exact: ExactRational,
    pub value: f64,
}

pub fn leading_coeff_odd_beta(p: u32) -> Result<LeadingCoeff> {
    if p == 0 {
        return Err(Error::invalid("p must be positive"));
    }
    let n = 2 * p as usize;
    let b = polynomials::bernoulli_number(n)?;
    let factor = (BigInt::from(1) << n) - BigInt::from(1);
    let exact = ExactRational::from_integer(factor) * b / ExactRational::from_integer(i64::from(p));
    let value = exact.to_f64();
    Ok(LeadingCoeff { p, exact, value })
}

/// Limit of `S(r)·r^{2μ}` as `r → ∞` for a non-negative integer `β`:
/// `(−1)^β E_β(0)`. For odd `β = 2p−1` this equals
/// [`leading_coeff_odd_beta`]`(p)`.
pub fn leading_coeff(beta: u32) -> Result<ExactRational> {
    let e = polynomials::euler_at_zero(beta as usize)?;
    Ok(if beta % 2 == 1 { -e } else { e })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnConstant {
    pub n: u32,
    pub value: f64,
}

/// `s_n = 4(2ⁿ−1)/(n·2ⁿ) · n!/πⁿ` for `1 ≤ n ≤ 170`.
pub fn s_constant(n: u32) -> Result<SnConstant> {
    if n == 0 || n > 170 {
        return Err(Error::Overflow(format!(
            "s_constant needs 1 ≤ n ≤ 170, got {n}"
        )));
    }
    // n!/πⁿ as a running product stays in range up to n = 170
    let fact_over_pow = (1..=n).fold(1.0, |acc, i| acc * (f64::from(i) / PI));
    let frac = -(-f64::from(n) * std::f64::consts::LN_2).exp_m1(); // 1 − 2^{−n}
    let value = 4.0 * frac / f64::from(n) * fact_over_pow;
    Ok(SnConstant { n, value })
}

/// `s_{n+1}/s_n = (2 + 1/(2ⁿ−1)) · n/(2π)`.
pub fn s_ratio(n: u32) -> f64 {
    let n = f64::from(n.max(1));
    let denom = (n * std::f64::consts::LN_2).exp_m1(); // 2ⁿ − 1
    (2.0 + 1.0 / denom) * n / (2.0 * PI)
}

/// `(s_{n+1}/s_n) / (n/π) = (2^{n+1}−1)/(2^{n+1}−2)` exactly; the excess
/// over 1 drops below double precision near `n = 50`.
pub fn s_ratio_over_n_pi(n: u32) -> Result<ExactRational> {
    if n == 0 || n > 4096 {
        return Err(Error::invalid(format!("need 1 ≤ n ≤ 4096, got {n}")));
    }
    let top = (BigInt::from(1) << (n as usize + 1)) - BigInt::from(1);
    Ok(ExactRational::new(top.clone(), top - BigInt::from(1)))
}
