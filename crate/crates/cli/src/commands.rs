use mathieu_core::asymptotics::{
    evaluate_expansion, expansion_terms, leading_coeff_odd_beta, s_constant, s_ratio,
    s_ratio_over_n_pi,
};
use mathieu_core::kernels::{self, find_sign_changes, kernel_for_case, KernelSpec};
use mathieu_core::polynomials::{
    bernoulli_number, bernoulli_poly, euler_at_zero, euler_poly, ExactRational, PolynomialCoeffs,
};
use mathieu_core::refutation::{self, RefutationParams, RefutationReport, RowStatus};
use mathieu_core::series::{
    self, generalized_series, lhs_series, AsymptoticParams, CaseTag, InequalityParams, SeriesValue,
};
use mathieu_core::{Error, Result};

use crate::output::{Cell, Report};
use crate::{AsymArgs, ConstantsArgs, IntegralArgs, KernelArgs, PolyArgs, RefuteArgs, SeriesArgs};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn case_tag(index: u8) -> Result<CaseTag> {
    CaseTag::from_index(index).ok_or_else(|| invalid(format!("unknown case {index}")))
}

fn input_obj(entries: &[(&str, Cell)]) -> Cell {
    Cell::Obj(
        entries
            .iter()
            .map(|(k, v)| ((*k).to_owned(), v.clone()))
            .collect(),
    )
}

fn opt_input(x: Option<f64>) -> Cell {
    x.map_or(Cell::Null, Cell::Input)
}

fn kernel_name(k: &KernelSpec) -> String {
    match k {
        KernelSpec::Sinc => "sinc".into(),
        KernelSpec::NormalizedBessel { lambda } => format!("normalized_bessel({lambda})"),
    }
}

fn coeff_list(p: &PolynomialCoeffs) -> Cell {
    Cell::List(p.coeffs().iter().map(|c| Cell::S(c.to_string())).collect())
}

pub fn poly(a: &PolyArgs) -> Result<Report> {
    let n = a.terms;
    let b = bernoulli_poly(n)?;
    let e = euler_poly(n)?;
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[("terms", Cell::I(n as i64)), ("u", opt_input(a.u))]),
    )
    .field("n", n)
    .field("bernoulli_number", bernoulli_number(n)?.to_string())
    .field("euler_at_zero", euler_at_zero(n)?.to_string());
    if let Some(u) = a.u {
        let x = ExactRational::from_f64(u).ok_or_else(|| invalid("--u must be finite"))?;
        let bv = b.eval_exact(&x);
        let ev = e.eval_exact(&x);
        r.field("bernoulli_at_u", bv.to_f64())
            .field("bernoulli_at_u_exact", bv.to_string())
            .field("euler_at_u", ev.to_f64())
            .field("euler_at_u_exact", ev.to_string());
    }
    // coefficients of x^k, lowest degree first
    let rows = (0..=n)
        .map(|k| {
            vec![
                Cell::I(k as i64),
                Cell::S(b.coeff(k).to_string()),
                Cell::S(e.coeff(k).to_string()),
            ]
        })
        .collect();
    r.field("bernoulli_coeffs", coeff_list(&b))
        .field("euler_coeffs", coeff_list(&e))
        .table(&["power", "bernoulli", "euler"], rows);
    Ok(r)
}

fn inequality_params(a: &SeriesArgs) -> Result<InequalityParams> {
    match a.case.map(case_tag).transpose()? {
        Some(case) if a.alpha.is_none() && a.beta.is_none() => {
            InequalityParams::for_case(case, a.mu)
        }
        Some(case) => {
            let (alpha, beta) = a
                .alpha
                .zip(a.beta)
                .ok_or_else(|| invalid("give both --alpha and --beta, or neither"))?;
            InequalityParams::tagged(case, alpha, beta, a.mu)
        }
        None => {
            let alpha = a.alpha.ok_or_else(|| invalid("--alpha is required"))?;
            let beta = a.beta.ok_or_else(|| invalid("--beta is required"))?;
            InequalityParams::new(alpha, beta, a.mu)
        }
    }
}

fn value_fields(r: &mut Report, v: &SeriesValue) {
    r.field("value", v.value)
        .field("error_bound", v.error_bound)
        .field("rounding_bound", v.rounding_bound)
        .field("terms_used", v.terms_used)
        .field("method", format!("{:?}", v.method));
}

pub fn series(a: &SeriesArgs, tol: f64) -> Result<Report> {
    if let Some(t) = a.t {
        return shifted_series(a, t, tol);
    }
    let params = inequality_params(a)?;
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[
            ("alpha", Cell::Input(params.alpha)),
            ("beta", Cell::Input(params.beta)),
            ("mu", Cell::Input(params.mu)),
            ("case", a.case.map_or(Cell::Null, |c| Cell::I(i64::from(c)))),
            ("r", opt_input(a.r)),
            ("r_min", opt_input(a.r_min)),
            ("r_max", opt_input(a.r_max)),
            ("points", a.points.map_or(Cell::Null, Cell::from)),
            ("tol", Cell::Input(tol)),
        ]),
    );
    match (a.r, a.r_min, a.r_max) {
        (Some(x), None, None) => {
            let v = lhs_series(&params, x, tol)?;
            let rhs = series::rhs_bound(params.mu, x);
            value_fields(&mut r, &v);
            r.field("rhs", rhs).field("margin", rhs - v.value);
        }
        (None, Some(lo), Some(hi)) => {
            let grid = refutation::geometric_grid(lo, hi, a.points.unwrap_or(16))?;
            let mut rows = Vec::with_capacity(grid.len());
            for x in grid {
                let v = lhs_series(&params, x, tol)?;
                let rhs = series::rhs_bound(params.mu, x);
                rows.push(vec![
                    Cell::F(x),
                    Cell::F(v.value),
                    Cell::F(v.error_bound),
                    Cell::F(rhs),
                    Cell::F(rhs - v.value),
                ]);
            }
            r.table(&["r", "lhs", "error_bound", "rhs", "margin"], rows);
        }
        _ => return Err(invalid("give either --r or both --r-min and --r-max")),
    }
    Ok(r)
}

fn shifted_params(gamma: u32, alpha: f64, mu: f64, u: f64) -> Result<AsymptoticParams> {
    if alpha.fract() != 0.0 || !(1.0..=64.0).contains(&alpha) {
        return Err(invalid(format!(
            "α must be a positive integer here, got {alpha}"
        )));
    }
    AsymptoticParams::new(gamma, alpha as u32, mu, u)
}

fn shifted_series(a: &SeriesArgs, t: f64, tol: f64) -> Result<Report> {
    let gamma = a
        .gamma
        .ok_or_else(|| invalid("--gamma is required with --t"))?;
    let alpha = a.alpha.ok_or_else(|| invalid("--alpha is required"))?;
    let params = shifted_params(gamma, alpha, a.mu, a.u)?;
    let v = generalized_series(&params, t, tol)?;
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[
            ("gamma", Cell::from(gamma)),
            ("alpha", Cell::Input(alpha)),
            ("mu", Cell::Input(a.mu)),
            ("u", Cell::Input(a.u)),
            ("t", Cell::Input(t)),
            ("tol", Cell::Input(tol)),
        ]),
    );
    value_fields(&mut r, &v);
    Ok(r)
}

pub fn asym(a: &AsymArgs, tol: f64) -> Result<Report> {
    let params = AsymptoticParams::new(a.gamma, a.alpha, a.mu, a.u)?;
    let terms = expansion_terms(&params, a.terms)?;
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[
            ("gamma", Cell::from(a.gamma)),
            ("alpha", Cell::from(a.alpha)),
            ("mu", Cell::Input(a.mu)),
            ("u", Cell::Input(a.u)),
            ("terms", Cell::from(a.terms)),
            ("t", opt_input(a.t)),
            ("tol", Cell::Input(tol)),
        ]),
    );
    if let Some(t) = a.t {
        let s = generalized_series(&params, t, tol)?;
        let approx = evaluate_expansion(&params, t, a.terms)?;
        r.field("series", s.value)
            .field("series_error_bound", s.error_bound)
            .field("expansion", approx)
            .field("remainder", s.value - approx);
    }
    let rows = terms
        .iter()
        .map(|term| {
            vec![
                Cell::from(term.index),
                Cell::F(term.coefficient),
                term.exact
                    .as_ref()
                    .map_or(Cell::Null, |q| Cell::S(q.to_string())),
                Cell::F(term.exponent),
            ]
        })
        .collect();
    r.table(&["k", "coefficient", "exact", "exponent"], rows);
    Ok(r)
}

pub fn kernel(a: &KernelArgs) -> Result<Report> {
    let spec = kernel_for_case(case_tag(a.case)?, a.mu)?;
    if a.u.is_nan() || a.u <= 0.0 || !a.u.is_finite() || a.points < 2 {
        return Err(invalid("need --u > 0 and --points ≥ 2"));
    }
    let roots = find_sign_changes(&spec, a.u, 0.05)?;
    let step = a.u / (a.points - 1) as f64;
    let rows = (0..a.points)
        .map(|i| {
            let u = if i + 1 == a.points {
                a.u
            } else {
                step * i as f64
            };
            vec![Cell::F(u), Cell::F(spec.eval(u))]
        })
        .collect();
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[
            ("case", Cell::I(i64::from(a.case))),
            ("mu", Cell::Input(a.mu)),
            ("u", Cell::Input(a.u)),
            ("points", Cell::from(a.points)),
        ]),
    )
    .field("kernel", kernel_name(&spec))
    .field(
        "sign_changes",
        Cell::List(roots.into_iter().map(Cell::F).collect()),
    )
    .table(&["u", "value"], rows);
    Ok(r)
}

pub fn integral(a: &IntegralArgs, tol: f64) -> Result<Report> {
    let params = InequalityParams::for_case(case_tag(a.case)?, a.mu)?;
    let cmp = kernels::compare_integral_inequality(&params, a.r, tol)?;
    let lhs = lhs_series(&params, a.r, tol)?;
    let rhs = series::rhs_bound(params.mu, a.r);
    let mut r = Report::default();
    r.field(
        "input",
        input_obj(&[
            ("case", Cell::I(i64::from(a.case))),
            ("mu", Cell::Input(a.mu)),
            ("r", Cell::Input(a.r)),
            ("tol", Cell::Input(tol)),
        ]),
    )
    .field("kernel", kernel_name(&cmp.kernel))
    .field("s", cmp.s)
    .field("fermi", cmp.fermi.value)
    .field("fermi_error", cmp.fermi.abs_error_estimate)
    .field("exponential", cmp.exponential.value)
    .field("exponential_error", cmp.exponential.abs_error_estimate)
    .field("integral_margin", cmp.margin)
    .field("integral_error_bound", cmp.error_bound)
    .field("series_lhs", lhs.value)
    .field("series_rhs", rhs)
    .field("series_margin", rhs - lhs.value);
    Ok(r)
}

fn status_name(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Holds => "holds",
        RowStatus::Violated => "violated",
        RowStatus::Inconclusive => "inconclusive",
    }
}

pub fn refute(a: &RefuteArgs, tol: f64) -> Result<Report> {
    let (report, params_cell): (RefutationReport, Cell) = match a.beta {
        Some(beta) => {
            let params = InequalityParams::new(f64::from(a.alpha), beta, a.mu)?;
            let report = refutation::scan(&params, a.r_min, a.r_max, a.points, tol)?;
            let cell = input_obj(&[
                ("beta", Cell::Input(beta)),
                ("alpha", Cell::from(a.alpha)),
                ("mu", Cell::Input(a.mu)),
            ]);
            (report, cell)
        }
        None => {
            let params = RefutationParams::new(a.m, a.alpha, a.mu)?;
            let report = refutation::scan_family(&params, a.r_min, a.r_max, a.points, tol)?;
            let cell = input_obj(&[
                ("m", Cell::from(a.m)),
                ("alpha", Cell::from(a.alpha)),
                ("mu", Cell::Input(a.mu)),
                ("beta", Cell::from(params.beta())),
            ]);
            (report, cell)
        }
    };
    let mut r = Report::default();
    r.field("params", params_cell)
        .field(
            "grid",
            input_obj(&[
                ("r_min", Cell::Input(a.r_min)),
                ("r_max", Cell::Input(a.r_max)),
                ("points", Cell::from(a.points)),
                ("tol", Cell::Input(tol)),
            ]),
        )
        .field("limit_coeff", report.limit_coeff)
        .field(
            "limit_coeff_exact",
            report.limit_coeff_exact.clone().map_or(Cell::Null, Cell::S),
        )
        .field("threshold_r", report.threshold_r)
        .field("verdict", format!("{:?}", report.verdict));
    let rows = report
        .rows
        .iter()
        .map(|row| {
            vec![
                Cell::F(row.r),
                Cell::F(row.lhs),
                Cell::F(row.lhs_error),
                Cell::F(row.rhs),
                Cell::F(row.margin),
                Cell::F(row.scaled_lhs),
                Cell::from(status_name(row.status)),
            ]
        })
        .collect();
    r.table(
        &[
            "r",
            "lhs",
            "lhs_error",
            "rhs",
            "margin",
            "scaled_lhs",
            "status",
        ],
        rows,
    );
    Ok(r)
}

pub fn constants(a: &ConstantsArgs) -> Result<Report> {
    let s = s_constant(a.s_n)?;
    let mut r = Report::default();
    r.field("input", input_obj(&[("s_n", Cell::from(a.s_n))]))
        .field("n", s.n)
        .field("value", s.value)
        .field("exceeds_two", s.value > 2.0)
        .field("ratio_next", s_ratio(a.s_n))
        .field("ratio_over_n_pi", s_ratio_over_n_pi(a.s_n)?.to_string());
    if a.s_n.is_multiple_of(2) {
        let lead = leading_coeff_odd_beta(a.s_n / 2)?;
        r.field("leading_coeff", lead.value)
            .field("leading_coeff_exact", lead.exact.to_string());
    }
    Ok(r)
}
