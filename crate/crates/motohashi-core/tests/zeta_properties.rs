//! Seeded-random property checks for the zeta evaluator.

use motohashi_core::oracle;
use motohashi_core::zeta::{refine_zero, zeta, zeta_and_deriv, zeta_log_deriv, ZeroTable};
use motohashi_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// conj(zeta(conj s)) = zeta(s) at 100 random points in the strip.
#[test]
fn reflection_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..100 {
        let s = Complex64::new(rng.gen_range(-2.0..3.0), rng.gen_range(-100.0..100.0));
        if (s - Complex64::new(1.0, 0.0)).norm() < 1e-3 {
            continue;
        }
        let a = zeta(s).unwrap();
        let b = zeta(s.conj()).unwrap().conj();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()), "s = {s}");
    }
}

/// Euler–Maclaurin tail bound: |zeta(s) - partial sum| <= N^{1-Re s}/(Re s - 1).
#[test]
fn series_consistency_right_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let n = 1000usize;
    for _ in 0..25 {
        let s = Complex64::new(rng.gen_range(2.0..5.0), rng.gen_range(-50.0..50.0));
        let z = zeta(s).unwrap();
        let mut partial = Complex64::new(0.0, 0.0);
        for m in 1..=n {
            partial += (-s * (m as f64).ln()).exp();
        }
        let bound = (n as f64).powf(1.0 - s.re) / (s.re - 1.0);
        assert!(
            (z - partial).norm() <= bound * (1.0 + 1e-9) + 1e-12,
            "s = {s}: |diff| = {} > {bound}",
            (z - partial).norm()
        );
    }
}

/// The analytic derivative against a central difference of log zeta.
#[test]
fn derivative_matches_central_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let table = ZeroTable::empty();
    let mut checked = 0;
    while checked < 50 {
        let s = Complex64::new(rng.gen_range(-0.5..3.0), rng.gen_range(2.0..60.0));
        if (s - Complex64::new(1.0, 0.0)).norm() < 0.1 {
            continue;
        }
        let z = zeta(s).unwrap();
        if z.norm() < 1e-3 {
            continue; // too close to a zero for the difference quotient
        }
        let ld = zeta_log_deriv(s, &table).unwrap();
        let h = 1e-6;
        let zp = zeta(s + Complex64::new(h, 0.0)).unwrap();
        let zm = zeta(s - Complex64::new(h, 0.0)).unwrap();
        let fd = (zp.ln() - zm.ln()) / (2.0 * h);
        assert!((ld - fd).norm() < 1e-4, "s = {s}: {ld} vs {fd}");
        checked += 1;
    }
}

/// zeta'/zeta at 2 and 3 against the truncated von Mangoldt series.
#[test]
fn log_deriv_von_mangoldt_oracle() {
    let table = ZeroTable::empty();
    // s = 2, series to N = 1e6: agreement below 1e-6 (the truncated tail is
    // itself ~1/N; adding the integral estimate back sharpens the check).
    let n_cut = 1_000_000usize;
    let v2 = zeta_log_deriv(Complex64::new(2.0, 0.0), &table).unwrap();
    let mut sum2 = 0.0;
    for n in 2..=n_cut {
        let l = oracle::von_mangoldt(n);
        if l != 0.0 {
            sum2 += l / (n * n) as f64;
        }
    }
    assert!((v2.re + sum2).abs() < 1.1e-6, "{} vs {}", v2.re, -sum2);
    let tail = 1.0 / n_cut as f64; // psi(t) ~ t gives the 1/N tail integral
    assert!((v2.re + sum2 + tail).abs() < 1e-8);
    assert!(v2.im.abs() < 1e-12);

    // s = 3, series to 1e4: agreement below 1e-8.
    let v3 = zeta_log_deriv(Complex64::new(3.0, 0.0), &table).unwrap();
    let mut sum3 = 0.0;
    for n in 2..=10_000usize {
        let l = oracle::von_mangoldt(n);
        if l != 0.0 {
            sum3 += l / ((n * n * n) as f64);
        }
    }
    assert!((v3.re + sum3).abs() < 1e-8, "{} vs {}", v3.re, -sum3);
}

/// Refined zeros land on the zeros of the Hardy function and stay inside
/// their brackets under re-refinement.
#[test]
fn refine_first_three_zeros() {
    let expect = [
        14.13472514173469379,
        21.02203963877155499,
        25.01085758014568876,
    ];
    for (approx, exact) in [(14.2, expect[0]), (21.1, expect[1]), (24.9, expect[2])] {
        let got = refine_zero(approx, 1e-11).unwrap();
        assert!((got - exact).abs() < 1e-8, "{got} vs {exact}");
        assert!((got - approx).abs() <= 0.5);
    }
}

/// The derivative pair is consistent: d/ds of the pair's first component via
/// finite differences matches the second at scattered points, including the
/// reflected region.
#[test]
fn pair_derivative_consistency_left() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..20 {
        let s = Complex64::new(rng.gen_range(-30.0..-1.5), rng.gen_range(0.3..20.0));
        let (_, dz) = zeta_and_deriv(s).unwrap();
        let h = 1e-6;
        let zp = zeta(s + Complex64::new(h, 0.0)).unwrap();
        let zm = zeta(s - Complex64::new(h, 0.0)).unwrap();
        let fd = (zp - zm) / (2.0 * h);
        assert!(
            (dz - fd).norm() < 1e-4 * (1.0 + fd.norm()),
            "s = {s}: {dz} vs {fd}"
        );
    }
}
