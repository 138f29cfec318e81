//! Zero-density counter and moment quadrature checks.

use motohashi_core::density::{
    count_k_zeros, fx_moment, largevalue_scan, zeta_moment, DensityQuery, FxMomentQuery,
    MomentQuery,
};
use motohashi_core::product::ProductEvaluator;
use motohashi_core::{Complex64, SpectralParams};

fn evaluator(t1: f64, t2: f64, z: f64) -> ProductEvaluator {
    ProductEvaluator::new(SpectralParams::new(t1, t2, z).unwrap()).unwrap()
}

/// The count is additive over a vertical split of (0, T].
#[test]
fn count_additive_over_split() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let p = *ev.params();
    let total = count_k_zeros(&ev, &DensityQuery::new(0.51, 25.3, p).unwrap()).unwrap();
    let low = count_k_zeros(&ev, &DensityQuery::new(0.51, 11.7, p).unwrap()).unwrap();
    // Zeros with 11.7 < Im <= 25.3 via a shifted query: count difference.
    let high = total - low;
    // Cross-check the upper band by brute subdivision into 0.1-high cells.
    let mut brute = 0u32;
    let mut t0: f64 = 11.7;
    while t0 < 25.3 - 1e-9 {
        let t1 = (t0 + 0.1).min(25.3);
        // A thin-band query: count(T = t1) - count(T = t0).
        let a = count_k_zeros(&ev, &DensityQuery::new(0.51, t1, p).unwrap()).unwrap();
        let b = count_k_zeros(&ev, &DensityQuery::new(0.51, t0, p).unwrap()).unwrap();
        brute += a - b;
        t0 = t1;
    }
    assert_eq!(high, brute);
    assert!(total >= low);
}

/// Monotonicity in sigma: moving the left edge right can only lose zeros.
#[test]
fn count_monotone_in_sigma() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let p = *ev.params();
    let wide = count_k_zeros(&ev, &DensityQuery::new(0.6, 20.7, p).unwrap()).unwrap();
    let narrow = count_k_zeros(&ev, &DensityQuery::new(0.8, 20.7, p).unwrap()).unwrap();
    assert!(wide >= narrow, "wide {wide} < narrow {narrow}");
    // There are actual zeros with Re > 0.6 below 20.7 for this mollifier.
    assert!(wide > 0);
}

/// Acceptance window for the second moment: k = 1, T = 100 lands inside
/// [0.3, 1.5] of T log T and is stable under step halving.
#[test]
fn second_moment_window_and_stability() {
    let q = MomentQuery::new(1.0, 100.0, 0.05).unwrap();
    let r = zeta_moment(&q).unwrap();
    let t_log_t = 100.0 * 100.0f64.ln();
    let ratio = r.value / t_log_t;
    // Frozen quadrature reference: 295.635 over [0, 100].
    assert!((r.value - 295.635099).abs() < 0.05, "value {}", r.value);
    assert!((0.3..=1.5).contains(&ratio), "ratio {ratio}");
    assert!(!r.step_warning, "step change {}", r.step_change);
    assert!(r.step_change < 0.005);
}

/// f_X moments: tiny on a far-right line, decreasing as the line moves right.
#[test]
fn fx_moment_tail_dominance() {
    let ev = evaluator(0.3, -0.8, 20.0);
    // z = 20: coefficients vanish below 20, so on Re s = 3 the integrand is
    // uniformly below the coefficient tail.
    let far = fx_moment(&ev, &FxMomentQuery::new(0.6, 10.0, 3.0, 0.05).unwrap()).unwrap();
    assert!(far.value < 1e-2, "far-line moment {}", far.value);
    assert!(far.excluded.is_empty());
    let mut prev = f64::INFINITY;
    for line in [1.5, 2.0, 3.0] {
        let r = fx_moment(&ev, &FxMomentQuery::new(0.6, 10.0, line, 0.05).unwrap()).unwrap();
        assert!(r.value >= 0.0);
        assert!(r.value <= prev, "moment increased at line {line}");
        prev = r.value;
    }
    // Both kappa endpoints stay finite.
    for kappa in [0.51, 0.74] {
        let r = fx_moment(&ev, &FxMomentQuery::new(kappa, 10.0, 1.5, 0.05).unwrap()).unwrap();
        assert!(r.value.is_finite());
    }
}

/// Pole windows on the Re = 1 line are excluded and reported.
#[test]
fn fx_moment_excludes_pole_windows() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let r = fx_moment(&ev, &FxMomentQuery::new(0.6, 5.0, 1.0, 0.05).unwrap()).unwrap();
    // Poles of J on Re = 1 at t in {0, 1, -2, -1}: two fall in (0, 5].
    assert_eq!(r.excluded.len(), 2, "windows: {:?}", r.excluded);
    assert!(r.value.is_finite());
}

/// Scan symmetry: with T1 = T2 the product is conjugate-symmetric, so |JK|
/// is even in t0.
#[test]
fn scan_symmetric_in_t0_for_equal_shifts() {
    let ev = evaluator(1.5, 1.5, 4.0);
    let rows = largevalue_scan(&ev, (-6.0, 6.0), (0.5, 1.0), 7, 2, 10.0).unwrap();
    assert_eq!(rows.len(), 14);
    for i in 0..rows.len() {
        let r = &rows[i];
        let mirror = rows
            .iter()
            .find(|m| (m.t0 + r.t0).abs() < 1e-12 && (m.e0 - r.e0).abs() < 1e-12)
            .unwrap();
        match (r.abs_jk, mirror.abs_jk) {
            (Some(a), Some(b)) => assert!((a - b).abs() < 1e-10 * (1.0 + a)),
            (None, None) => {}
            _ => panic!("asymmetric skip at t0 = {}", r.t0),
        }
    }
}

/// E0 = 0 row evaluates on the line Re s = 1 exactly.
#[test]
fn scan_e0_zero_is_re_one_line() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let rows = largevalue_scan(&ev, (3.0, 3.0), (0.0, 0.0), 1, 1, 7.0).unwrap();
    assert_eq!(rows[0].sigma0, 1.0);
    let direct = ev.z_eval(Complex64::new(1.0, 3.0)).unwrap().norm();
    assert_eq!(rows[0].abs_jk, Some(direct));
}
