//! Certified comparison of `S(r)` against `2/(1+r²)^μ` over a range of `r`.
//!
//! For `β = 2p − 1` the scaled sum `S(r)·r^{2μ}` tends to
//! `(2^{2p}−1)B_{2p}/p`, so the bound fails for all large `r` exactly when
//! that coefficient exceeds 2. The family `β = 4m + 5` (odd `p = 2m + 3`,
//! `2p ≥ 10`) is the one where this happens.
//!
//! A row is only reported as a violation (or as holding) when `|rhs − lhs|`
//! exceeds the total error bound of `lhs`; otherwise it is inconclusive.

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::series::{self, InequalityParams, SeriesValue};

/// Member `β = 4m + 5` of the refuting family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefutationParams {
    pub m: u32,
    pub alpha: u32,
    pub mu: f64,
}

impl RefutationParams {
    pub fn new(m: u32, alpha: u32, mu: f64) -> Result<Self> {
        if m == 0 || alpha == 0 {
            return Err(Error::invalid("m and α must be positive integers"));
        }
        let p = Self { m, alpha, mu };
        // convergence of the series needs αμ − β > 1
        if !mu.is_finite() || f64::from(alpha) * mu - f64::from(p.beta()) <= 1.0 {
            return Err(Error::invalid(format!(
                "need αμ − (4m+5) > 1, got {}",
                f64::from(alpha) * mu - f64::from(p.beta())
            )));
        }
        Ok(p)
    }

    pub fn beta(&self) -> u32 {
        4 * self.m + 5
    }

    /// `p = (β+1)/2 = 2m + 3`.
    pub fn p(&self) -> u32 {
        2 * self.m + 3
    }

    pub fn inequality_params(&self) -> InequalityParams {
        InequalityParams::new(f64::from(self.alpha), f64::from(self.beta()), self.mu)
            .expect("validated on construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    /// `lhs < rhs` with margin above the error bound.
    Holds,
    /// `lhs > rhs` with margin above the error bound.
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub r: f64,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    /// `lhs · r^{2μ}`.
    pub scaled_lhs: f64,
    pub status: RowStatus,
    /// The requested tolerance was below the rounding floor.
    pub floor_limited: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ViolationFound,
    NoViolationInRange,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefutationReport {
    pub params: InequalityParams,
    /// Set when the parameters come from the `β = 4m+5` family.
    pub family: Option<RefutationParams>,
    pub rows: Vec<ScanRow>,
    /// Limit of `lhs · r^{2μ}` (integer β only).
    pub limit_coeff: Option<f64>,
    pub limit_coeff_exact: Option<String>,
    pub threshold_r: Option<f64>,
    pub verdict: Verdict,
}

impl RefutationReport {
    /// Whether the leading asymptotic coefficient predicts a large-`r`
    /// violation (coefficient > 2).
    pub fn predicts_violation(&self) -> Option<bool> {
        self.limit_coeff.map(|c| c > 2.0)
    }
}

/// Limit of `S(r)·r^{2μ}` when `β` and `α` are integers.
pub fn limit_coefficient(params: &InequalityParams) -> Option<(f64, String)> {
    let integral = params.beta.fract() == 0.0 && params.alpha.fract() == 0.0;
    if !integral || params.beta > 60.0 {
        return None;
    }
    let exact = asymptotics::leading_coeff(params.beta as u32).ok()?;
    Some((exact.to_f64(), exact.to_string()))
}

fn lhs_best_effort(params: &InequalityParams, r: f64, tol: f64) -> Result<(SeriesValue, bool)> {
    match series::lhs_series(params, r, tol) {
        Ok(v) => Ok((v, false)),
        Err(Error::PrecisionFloor { estimate, .. }) => Ok((*estimate, true)),
        Err(e) => Err(e),
    }
}

/// One certified row; `rel_tol` is relative to the right-hand side.
pub fn check_point(params: &InequalityParams, r: f64, rel_tol: f64) -> Result<ScanRow> {
    if !(rel_tol > 0.0) {
        return Err(Error::invalid(format!(
            "tolerance must be positive, got {rel_tol}"
        )));
    }
    let rhs = series::rhs_bound(params.mu, r);
    let (lhs, floor_limited) = lhs_best_effort(params, r, rel_tol * rhs)?;
    let margin = rhs - lhs.value;
    let bound = lhs.error_bound + 4.0 * f64::EPSILON * rhs;
    let status = if margin > bound {
        RowStatus::Holds
    } else if margin < -bound {
        RowStatus::Violated
    } else {
        RowStatus::Inconclusive
    };
    Ok(ScanRow {
        r,
        lhs: lhs.value,
        lhs_error: lhs.error_bound,
        rhs,
        margin,
        scaled_lhs: lhs.value * (2.0 * params.mu * r.ln()).exp(),
        status,
        floor_limited,
    })
}

/// Geometric grid of `points` values from `r_min` to `r_max` inclusive.
pub fn geometric_grid(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || points < 2 {
        return Err(Error::invalid(format!(
            "need 0 < r_min < r_max and at least 2 points; got [{r_min}, {r_max}] with {points}"
        )));
    }
    let ratio = (r_max / r_min).ln();
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                r_max
            } else {
                r_min * (ratio * i as f64 / last).exp()
            }
        })
        .collect())
}

/// Smallest row index from which every conclusive row is a violation.
fn threshold_index(rows: &[ScanRow]) -> Option<usize> {
    let mut threshold = None;
    for (i, row) in rows.iter().enumerate().rev() {
        match row.status {
            RowStatus::Violated => threshold = Some(i),
            RowStatus::Holds => break,
            RowStatus::Inconclusive => {}
        }
    }
    threshold
}

/// Scan over explicit `r` values (sorted ascending in the report).
pub fn scan_points(
    params: &InequalityParams,
    r_values: &[f64],
    rel_tol: f64,
) -> Result<RefutationReport> {
    let mut rows = r_values
        .par_iter()
        .map(|&r| check_point(params, r, rel_tol))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.r.total_cmp(&b.r));

    if !rows.is_empty() && rows.iter().all(|r| r.status == RowStatus::Inconclusive) {
        let worst = rows.iter().map(|r| r.lhs_error).fold(0.0f64, f64::max);
        return Err(Error::PrecisionFloor {
            achievable: worst,
            tol: rows
                .iter()
                .map(|r| r.margin.abs())
                .fold(f64::INFINITY, f64::min),
            estimate: Box::new(SeriesValue {
                value: rows[0].lhs,
                error_bound: rows[0].lhs_error,
                rounding_bound: rows[0].lhs_error,
                terms_used: 1,
                method: series::SeriesMethod::Paired,
            }),
        });
    }

    let threshold_r = threshold_index(&rows).map(|i| rows[i].r);
    let limit = limit_coefficient(params);
    Ok(RefutationReport {
        params: *params,
        family: None,
        rows,
        limit_coeff: limit.as_ref().map(|l| l.0),
        limit_coeff_exact: limit.map(|l| l.1),
        threshold_r,
        verdict: if threshold_r.is_some() {
            Verdict::ViolationFound
        } else {
            Verdict::NoViolationInRange
        },
    })
}

/// Scan on a geometric grid.
pub fn scan(
    params: &InequalityParams,
    r_min: f64,
    r_max: f64,
    points: usize,
    rel_tol: f64,
) -> Result<RefutationReport> {
    let grid = geometric_grid(r_min, r_max, points)?;
    scan_points(params, &grid, rel_tol)
}

/// [`scan`] for a member of the `β = 4m+5` family.
pub fn scan_family(
    params: &RefutationParams,
    r_min: f64,
    r_max: f64,
    points: usize,
    rel_tol: f64,
) -> Result<RefutationReport> {
    let mut report = scan(&params.inequality_params(), r_min, r_max, points, rel_tol)?;
    report.family = Some(*params);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub r: f64,
    pub scaled_lhs: f64,
    /// `|scaled_lhs − limit| / |limit|`.
    pub relative_gap: f64,
    /// Error bound of `scaled_lhs`.
    pub scaled_error: f64,
    /// False unless the error bound is below half of `|lhs|`.
    pub conclusive: bool,
}

/// Convergence of `lhs · r^{2μ}` towards its limit.
pub fn scaled_limit_diagnostic(
    params: &InequalityParams,
    r_list: &[f64],
    rel_tol: f64,
) -> Result<Vec<DiagnosticRow>> {
    let (limit, _) = limit_coefficient(params)
        .ok_or_else(|| Error::invalid("limit coefficient needs integer α and β"))?;
    r_list
        .par_iter()
        .map(|&r| {
            let row = check_point(params, r, rel_tol)?;
            let scale = (2.0 * params.mu * r.ln()).exp();
            let scaled_error = row.lhs_error * scale;
            Ok(DiagnosticRow {
                r,
                scaled_lhs: row.scaled_lhs,
                relative_gap: (row.scaled_lhs - limit).abs() / limit.abs(),
                scaled_error,
                conclusive: row.lhs_error < 0.5 * row.lhs.abs(),
            })
        })
        .collect()
}
