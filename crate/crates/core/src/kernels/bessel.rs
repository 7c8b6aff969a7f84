//! Bessel functions of the first kind `J_λ(u)` for real order
//! `−1/2 ≤ λ ≤ 50` and `u ≥ 0`.
//!
//! Three regimes:
//! - ascending series while its terms decrease from the start
//!   (`u ≤ 2√(λ+1)` or `u ≤ 3`), where there is no cancellation;
//! - Hankel's large-argument expansion for `u ≥ max(25, 2λ²)`;
//! - Miller's backward recurrence in between, normalised with
//!   `(u/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! · J_{ν+2k}(u)`.

use std::f64::consts::PI;

use crate::asymptotics::gamma_fn;
use crate::error::{Error, Result};

pub const MAX_ORDER: f64 = 50.0;

fn check_args(lambda: f64, u: f64) -> Result<()> {
    if !(-0.5..=MAX_ORDER).contains(&lambda) {
        return Err(Error::invalid(format!(
            "order λ must lie in [−1/2, 50], got {lambda}"
        )));
    }
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::invalid(format!(
            "argument must be finite and ≥ 0, got {u}"
        )));
    }
    Ok(())
}

/// Largest argument served by the ascending series.
pub fn series_limit(lambda: f64) -> f64 {
    (2.0 * (lambda + 1.0).sqrt()).max(3.0)
}

/// Smallest argument served by the Hankel expansion.
pub fn asymptotic_limit(lambda: f64) -> f64 {
    (2.0 * lambda * lambda).max(25.0)
}

/// `J_λ(u)`.
pub fn bessel_j(lambda: f64, u: f64) -> Result<f64> {
    check_args(lambda, u)?;
    Ok(bessel_j_unchecked(lambda, u))
}

/// `j_λ(u) = J_λ(u)/u^λ`, with `j_λ(0) = 1/(2^λ Γ(λ+1))`.
pub fn normalized_bessel(lambda: f64, u: f64) -> Result<f64> {
    check_args(lambda, u)?;
    Ok(normalized_bessel_unchecked(lambda, u))
}

pub(crate) fn bessel_j_unchecked(lambda: f64, u: f64) -> f64 {
    if u == 0.0 {
        return if lambda == 0.0 {
            1.0
        } else if lambda > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if u <= series_limit(lambda) {
        u.powf(lambda) * normalized_series(lambda, u)
    } else if u >= asymptotic_limit(lambda) {
        hankel(lambda, u)
    } else {
        miller(lambda, u)
    }
}

pub(crate) fn normalized_bessel_unchecked(lambda: f64, u: f64) -> f64 {
    if u <= series_limit(lambda) {
        normalized_series(lambda, u)
    } else {
        bessel_j_unchecked(lambda, u) / u.powf(lambda)
    }
}

/// `Σ_m (−1)^m (u²/4)^m / (m! Γ(λ+m+1)) · 2^{−λ}`.
pub fn normalized_series(lambda: f64, u: f64) -> f64 {
    let q = 0.25 * u * u;
    let lead = (-lambda * std::f64::consts::LN_2).exp()
        / gamma_fn(lambda + 1.0).expect("λ + 1 lies in (0, 51]");
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for m in 1..500 {
        let m = f64::from(m);
        term *= -q / (m * (lambda + m));
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * (sum + comp)
}

/// Ascending series for `J_λ` at any argument (loses accuracy as `u`
/// grows past [`series_limit`]).
pub fn bessel_j_series(lambda: f64, u: f64) -> f64 {
    u.powf(lambda) * normalized_series(lambda, u)
}

/// Hankel expansion with P/Q corrections, truncated at the smallest term.
pub fn hankel(lambda: f64, u: f64) -> f64 {
    let mu4 = 4.0 * lambda * lambda;
    let mut p = 0.0;
    let mut q = 0.0;
    // a_k(λ)/u^k, accumulated with alternating signs in pairs
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60u32 {
        if k > 0 {
            let odd = f64::from(2 * k - 1);
            term *= (mu4 - odd * odd) / (f64::from(k) * 8.0 * u);
        }
        let mag = term.abs();
        if mag > prev && k > 4 {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if mag < 1e-17 || term == 0.0 {
            break;
        }
        prev = mag;
    }
    let phase = (0.5 * lambda + 0.25) * PI;
    let (su, cu) = u.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cu * cp + su * sp;
    let sin_chi = su * cp - cu * sp;
    (2.0 / (PI * u)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Miller's backward recurrence.
pub fn miller(lambda: f64, u: f64) -> f64 {
    let base = lambda.floor();
    let nu0 = lambda - base; // in [0, 1)
    let n = base as i64; // ≥ −1
    let reach = u.max(n as f64);
    let mut top = (reach + 16.0 * reach.max(1.0).cbrt() + 30.0).ceil() as usize;
    top += top % 2;

    // backward sweep: values[k] ∝ J_{ν0+k}(u), k = 0..=top
    let mut values = vec![0.0f64; top + 2];
    values[top + 1] = 0.0;
    values[top] = 1e-30;
    for k in (1..=top).rev() {
        let next = 2.0 * (nu0 + k as f64) / u * values[k] - values[k + 1];
        values[k - 1] = next;
        if next.abs() > 1e250 {
            for v in values[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }

    // normalisation
    let g1 = gamma_fn(nu0 + 1.0).expect("ν0 + 1 in [1, 2)");
    let mut norm = g1 * values[0];
    let mut c = g1; // Γ(ν0+k)/k!
    let mut k = 1usize;
    while 2 * k <= top {
        norm += (nu0 + 2.0 * k as f64) * c * values[2 * k];
        c *= (nu0 + k as f64) / (k as f64 + 1.0);
        k += 1;
    }
    let scale = (nu0 * (0.5 * u).ln()).exp() / norm;

    if n >= 0 {
        values[n as usize] * scale
    } else {
        // J_{ν0−1} = (2ν0/u) J_{ν0} − J_{ν0+1}
        (2.0 * nu0 / u * values[0] - values[1]) * scale
    }
}
