use mathieu_core::asymptotics::evaluate_expansion;
use mathieu_core::series::{generalized_series, AsymptoticParams};

fn params() -> AsymptoticParams {
    AsymptoticParams::new(1, 2, 1.0, 0.0).unwrap()
}

#[test]
fn leading_behaviour_at_twenty() {
    let s = generalized_series(&params(), 20.0, 1e-16).unwrap();
    assert!((s.value * 20f64.powi(4) - 0.5).abs() < 0.02);
}

#[test]
fn remainder_slopes_follow_next_order() {
    let p = params();
    let ts = [20.0f64, 25.0, 30.0, 35.0, 40.0];
    let values: Vec<f64> = ts
        .iter()
        .map(|&t| generalized_series(&p, t, 1e-16).unwrap().value)
        .collect();
    for n in 0..=1u32 {
        // least-squares slope of log|R_N| against log t
        let pts: Vec<(f64, f64)> = ts
            .iter()
            .zip(&values)
            .map(|(&t, &s)| {
                let r = s - evaluate_expansion(&p, t, n).unwrap();
                (t.ln(), r.abs().ln())
            })
            .collect();
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        let expected = -2.0 * (f64::from(n) + 1.0 + 2.0);
        assert!(
            ((slope - expected) / expected).abs() < 0.1,
            "N={n}: slope {slope}"
        );
    }
}

#[test]
fn expansion_improves_with_order() {
    let p = params();
    let t = 30.0;
    let s = generalized_series(&p, t, 1e-16).unwrap().value;
    let errs: Vec<f64> = (0..4)
        .map(|n| (s - evaluate_expansion(&p, t, n).unwrap()).abs())
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] < w[0], "{errs:?}");
    }
}
