mod common;

use std::f64::consts::LN_2;

use common::{full_grid, integrate_support, naive_cdf, naive_pdf, naive_survival, p};
use ntle::{ModeKind, NtleError, NtleParams, UCoord};
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = NtleParams> {
    (0.05f64..5.0, 0.2f64..5.0, -0.99f64..0.99).prop_map(|(l, b, d)| p(l, b, d))
}

#[test]
fn pointwise_examples() {
    let e = p(1.0, 1.0, 0.0);
    assert!((e.pdf(LN_2).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(p(1.0, 1.0, 0.5).pdf(0.0).unwrap(), 1.5);
    assert_eq!(p(1.0, 2.0, 0.0).pdf(0.0).unwrap(), 0.0);
    assert_eq!(p(1.0, 0.5, 0.0).pdf(0.0).unwrap(), f64::INFINITY);
    assert!(e.pdf(-1.0).is_err());

    assert!((e.log_pdf(2.0).unwrap() + 2.0).abs() < 1e-15);
    assert!((e.log_pdf(LN_2).unwrap() - 0.5f64.ln()).abs() < 1e-15);
    assert!(e.log_pdf(0.0).is_err());

    assert!((e.cdf(LN_2).unwrap() - 0.5).abs() < 1e-15);
    assert!((p(1.0, 1.0, 0.5).cdf(LN_2).unwrap() - 0.625).abs() < 1e-15);
    assert!((p(1.0, 1.0, 0.5).survival(LN_2).unwrap() - 0.375).abs() < 1e-15);
    for q in full_grid() {
        assert_eq!(q.cdf(0.0).unwrap(), 0.0);
        assert_eq!(q.survival(0.0).unwrap(), 1.0);
    }
    assert!(e.cdf(-0.1).is_err());
    assert!(e.survival(-0.1).is_err());
}

#[test]
fn log_pdf_at_table_fit() {
    let q = p(0.0085, 0.4732, -0.5830);
    let direct = naive_pdf(&q, 100.0).ln();
    assert!((q.log_pdf(100.0).unwrap() - direct).abs() < 1e-10);
    assert!((q.log_pdf(100.0).unwrap() - q.pdf(100.0).unwrap().ln()).abs() < 1e-10);
}

#[test]
fn hazard_against_ratio_oracle() {
    let q = p(1.0, 1.0, 0.5);
    let oracle = naive_pdf(&q, LN_2) / naive_survival(&q, LN_2);
    assert!((q.hazard(LN_2).unwrap() - oracle).abs() < 1e-12 * oracle);
    for q in full_grid() {
        for &y in &[0.01, 0.3, 1.0, 4.0, 20.0] {
            let y = y / q.lambda();
            let oracle = naive_pdf(&q, y) / naive_survival(&q, y);
            if naive_survival(&q, y) > 1e-300 && oracle.is_finite() {
                let h = q.hazard(y).unwrap();
                assert!((h - oracle).abs() <= 1e-10 * oracle, "{q} y={y}: {h} vs {oracle}");
            }
        }
    }
}

#[test]
fn u_coordinate_round_trip() {
    let q = p(1.0, 2.0, 0.3);
    assert!((q.to_u(LN_2).unwrap().value() - 1.0).abs() < 1e-15);
    assert!((q.from_u(UCoord::new(1.0).unwrap()) - LN_2).abs() < 1e-15);
    for &y in &[1e-6, 1.0, 50.0] {
        let back = q.from_u(q.to_u(y).unwrap());
        assert!((back - y).abs() < 1e-12 * y.max(1.0), "{y} -> {back}");
    }
    assert!(UCoord::new(-1.0).is_err());
}

#[test]
fn quantile_examples() {
    assert!((p(1.0, 1.0, 0.5).quantile(0.625).unwrap() - LN_2).abs() < 1e-14);
    assert!((p(1.0, 1.0, 0.0).quantile(0.5).unwrap() - LN_2).abs() < 1e-15);
    for q in full_grid() {
        assert!(q.quantile(0.001).unwrap() < q.quantile(0.999).unwrap());
    }
    assert!(p(1.0, 1.0, 0.0).quantile(0.0).is_err());
    assert!(p(1.0, 1.0, 0.0).quantile(1.0).is_err());
}

#[test]
fn density_integrates_to_one_on_grid() {
    for q in full_grid() {
        let total = integrate_support(&q, |y| naive_pdf(&q, y));
        assert!((total - 1.0).abs() < 1e-8, "{q}: {total}");
        let lib = integrate_support(&q, |y| q.pdf(y).unwrap());
        assert!((lib - 1.0).abs() < 1e-8, "{q}: {lib}");
    }
}

#[test]
fn cdf_and_survival_match_displayed_forms() {
    for q in full_grid() {
        for k in 1..=50 {
            let y = k as f64 / q.lambda();
            let g = q.cdf(y).unwrap();
            let s = q.survival(y).unwrap();
            assert!((g + s - 1.0).abs() < 1e-12, "{q} y={y}");
            if y * q.lambda() < 30.0 {
                assert!((g - naive_cdf(&q, y)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn submodel_reductions() {
    for &l in &[0.5, 1.0, 3.0] {
        for &y in &[0.01, 0.5, 2.0, 7.0] {
            let e = p(l, 1.0, 0.0);
            assert!((e.cdf(y).unwrap() - (1.0 - (-l * y).exp())).abs() < 1e-12);
            for &b in &[0.5, 2.0] {
                let u = (l * y).exp_m1().powf(b);
                assert!((p(l, b, 0.0).cdf(y).unwrap() - u / (1.0 + u)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn derivative_of_cdf_is_pdf() {
    for q in full_grid() {
        for k in 1..=25 {
            let y = 0.2 * k as f64 / q.lambda();
            let h = 1e-6 * y;
            let fd = (q.cdf(y + h).unwrap() - q.cdf(y - h).unwrap()) / (2.0 * h);
            let g = q.pdf(y).unwrap();
            assert!((fd - g).abs() < 1e-6 * (1.0 + g), "{q} y={y}: {fd} vs {g}");
        }
    }
}

#[test]
fn sampler_determinism_and_mean() {
    let q = p(1.3, 0.8, -0.2);
    assert_eq!(q.sample(5, 7).unwrap(), q.sample(5, 7).unwrap());
    assert_ne!(q.sample(5, 7).unwrap(), q.sample(5, 8).unwrap());
    assert!(q.sample(0, 1).is_err());
    let xs = p(1.0, 1.0, 0.0).sample(100_000, 1).unwrap();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 1.0).abs() < 3.0 / (xs.len() as f64).sqrt(), "{mean}");
}

#[test]
fn mode_regimes() {
    let m = p(1.0, 1.0, -0.5).mode().unwrap();
    assert_eq!(m.kind, ModeKind::Interior);
    assert!((m.location - (4.0f64 / 3.0).ln()).abs() < 1e-10);
    let m = p(2.0, 0.5, 0.0).mode().unwrap();
    assert_eq!((m.location, m.kind), (0.0, ModeKind::UnboundedAtZero));
    let m = p(1.0, 1.0, 0.0).mode().unwrap();
    assert_eq!(m.kind, ModeKind::BoundaryAtZero);
}

/// Golden-section maximisation of the density, independent of the modal equation.
fn golden_max(q: &NtleParams, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if naive_pdf(q, c) > naive_pdf(q, d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

#[test]
fn interior_mode_is_a_density_maximum() {
    for q in [p(1.0, 2.0, 0.0), p(0.5, 3.0, 0.9), p(2.0, 1.5, -0.9), p(1.0, 1.2, 0.5)] {
        let m = q.mode().unwrap();
        assert_eq!(m.kind, ModeKind::Interior);
        let y = m.location;
        let h = 1e-5 * y;
        let slope = (q.log_pdf(y + h).unwrap() - q.log_pdf(y - h).unwrap()) / (2.0 * h);
        assert!(slope.abs() < 1e-6, "{q}: slope {slope}");
        let grid_best = (1..2000)
            .map(|k| k as f64 * 10.0 / q.lambda() / 2000.0)
            .max_by(|a, b| naive_pdf(&q, *a).total_cmp(&naive_pdf(&q, *b)))
            .unwrap();
        let step = 10.0 / q.lambda() / 2000.0;
        let refined = golden_max(&q, grid_best - step, grid_best + step);
        assert!((refined - y).abs() < 1e-6 * (1.0 + y), "{q}: {refined} vs {y}");
    }
}

#[test]
fn unbounded_density_is_reported_not_guessed() {
    let q = p(1.0, 0.3, 0.2);
    assert_eq!(q.pdf(0.0).unwrap(), f64::INFINITY);
    assert!(matches!(q.log_pdf(0.0), Err(NtleError::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cdf_is_monotone(q in params_strategy(), a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (lo, hi) = (lo / q.lambda(), hi / q.lambda());
        prop_assert!(q.cdf(lo).unwrap() <= q.cdf(hi).unwrap());
    }

    #[test]
    fn cdf_plus_survival_is_one(q in params_strategy(), t in 0.0f64..50.0) {
        let y = t / q.lambda();
        prop_assert!((q.cdf(y).unwrap() + q.survival(y).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_inverts_cdf(q in params_strategy(), prob in 1e-6f64..(1.0 - 1e-6)) {
        let y = q.quantile(prob).unwrap();
        prop_assert!((q.cdf(y).unwrap() - prob).abs() < 1e-10);
    }

    #[test]
    fn cdf_inverts_quantile(q in params_strategy(), t in 0.01f64..10.0) {
        let y = t / q.lambda();
        let g = q.cdf(y).unwrap();
        prop_assume!(g > 1e-12 && g < 1.0 - 1e-9);
        let back = q.quantile(g).unwrap();
        // rounding g itself moves y by about eps / g'(y)
        let tol = 1e-10 * y + 1e-13 / q.pdf(y).unwrap();
        prop_assert!((back - y).abs() <= tol, "{} vs {}", back, y);
    }

    #[test]
    fn log_pdf_matches_pdf(q in params_strategy(), t in 0.001f64..30.0) {
        let y = t / q.lambda();
        let g = q.pdf(y).unwrap();
        prop_assume!(g > 1e-300);
        prop_assert!((q.log_pdf(y).unwrap() - g.ln()).abs() < 1e-10 * (1.0 + g.ln().abs()));
    }

    #[test]
    fn pdf_is_nonnegative_and_finite(q in params_strategy(), t in 1e-6f64..700.0) {
        let g = q.pdf(t / q.lambda()).unwrap();
        prop_assert!(g >= 0.0 && g.is_finite());
    }
}

#[test]
fn displayed_survival_is_one_minus_displayed_cdf() {
    for q in full_grid() {
        for &y in &[1e-4, 0.05, 0.4, 1.0, 3.0, 10.0] {
            let y = y / q.lambda();
            let gap = naive_survival(&q, y) + naive_cdf(&q, y) - 1.0;
            assert!(gap.abs() < 1e-12, "{q} y={y}: {gap:e}");
        }
    }
}
