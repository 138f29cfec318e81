//! Cross-checks for J, K, Z'/Z and the singularity machinery.

use motohashi_core::arith::{log_deriv_coefficients, z_coefficients, Sieve};
use motohashi_core::oracle;
use motohashi_core::product::ProductEvaluator;
use motohashi_core::singularity::RectRegion;
use motohashi_core::zeta::ZeroTable;
use motohashi_core::{Complex64, Error, SpectralParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn evaluator(t1: f64, t2: f64, z: f64) -> ProductEvaluator {
    ProductEvaluator::new(SpectralParams::new(t1, t2, z).unwrap()).unwrap()
}

/// J at Re s = 3 against the Ramanujan-identity series
/// sum sigma_{iT1}(n) sigma_{-iT2}(n) n^{-s} (n <= 1e4).
#[test]
fn j_matches_ramanujan_series() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let sieve = Sieve::new(10_000).unwrap();
    let a1 = Complex64::new(0.0, 1.0);
    let a2 = Complex64::new(0.0, -2.0);
    for s in [Complex64::new(3.0, 0.0), Complex64::new(3.0, 4.0)] {
        let mut series = Complex64::new(0.0, 0.0);
        for n in 1..=10_000usize {
            let term = motohashi_core::arith::complex_divisor_sum(&sieve, n, a1).unwrap()
                * motohashi_core::arith::complex_divisor_sum(&sieve, n, a2).unwrap()
                * (-s * (n as f64).ln()).exp();
            series += term;
        }
        let j = ev.j_eval(s).unwrap();
        assert!((j - series).norm() < 1e-6, "s = {s}: {j} vs {series}");
    }
}

/// Identity J*K = 1 + tail: at Re s = 3 the product matches the truncated
/// coefficient series to 1e-6.
#[test]
fn jk_is_one_plus_tail() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let table = z_coefficients(ev.params(), 10_000).unwrap();
    for s in [Complex64::new(3.0, 0.0), Complex64::new(3.0, -7.5)] {
        let mut series = Complex64::new(1.0, 0.0);
        for n in 2..=10_000usize {
            let c = table.get(n);
            if c.norm_sqr() > 0.0 {
                series += c * (-s * (n as f64).ln()).exp();
            }
        }
        let prod = ev.j_eval(s).unwrap() * ev.k_eval(s).unwrap();
        assert!((prod - series).norm() < 1e-6, "s = {s}");
    }
}

/// f_X bounded by the absolute coefficient tail (head vanishes below z).
#[test]
fn f_x_tail_bound() {
    let ev = evaluator(0.6, -1.9, 20.0);
    let table = z_coefficients(ev.params(), 10_000).unwrap();
    let s = Complex64::new(3.0, 2.0);
    let f = ev.f_x_eval(s).unwrap();
    let mut bound = 0.0;
    for n in 20..=10_000usize {
        bound += table.get(n).norm() * (n as f64).powf(-3.0);
    }
    assert!(f.norm() <= bound + 1e-4, "|f_X| = {} > {bound}", f.norm());
    // Far right the product collapses to 1.
    let far = ev.f_x_eval(Complex64::new(25.0, 0.0)).unwrap();
    assert!(far.norm() < 1e-8);
}

/// Z'/Z against the truncated Sigma(n) series (the acceptance points).
#[test]
fn z_log_deriv_matches_sigma_series() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let zeros = ZeroTable::empty();
    let c = z_coefficients(ev.params(), 10_000).unwrap();
    let sigma = log_deriv_coefficients(&c).unwrap();
    for s in [
        Complex64::new(3.0, 0.0),
        Complex64::new(3.0, 5.0),
        Complex64::new(2.5, -3.0),
    ] {
        let mut series = Complex64::new(0.0, 0.0);
        for n in 2..=10_000usize {
            let v = sigma.get(n);
            if v.norm_sqr() > 0.0 {
                series += v * (-s * (n as f64).ln()).exp();
            }
        }
        let lhs = ev.z_log_deriv(s, &zeros).unwrap();
        assert!(
            (lhs - series).norm() < 1e-6,
            "s = {s}: |diff| = {}",
            (lhs - series).norm()
        );
    }
}

/// Z'/Z equals the numerical log-derivative of J*K at random admissible
/// points.
#[test]
fn z_log_deriv_matches_central_difference() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let zeros = ZeroTable::empty();
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd_0001);
    let mut checked = 0;
    while checked < 20 {
        let s = Complex64::new(rng.gen_range(1.5..4.0), rng.gen_range(-8.0..8.0));
        let ld = match ev.z_log_deriv(s, &zeros) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let h = 1e-6;
        let zp = ev.z_eval(s + Complex64::new(h, 0.0)).unwrap();
        let zm = ev.z_eval(s - Complex64::new(h, 0.0)).unwrap();
        let fd = (zp.ln() - zm.ln()) / (2.0 * h);
        assert!((ld - fd).norm() < 1e-4, "s = {s}: {ld} vs {fd}");
        checked += 1;
    }
}

/// K evaluated by a different summation order (descending d with Kahan
/// compensation) agrees to near machine precision.
#[test]
fn k_summation_reorder_oracle() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let s = Complex64::new(2.0, 0.0);
    let k = ev.k_eval(s).unwrap();
    let weights = ev.weights();
    let mut terms: Vec<Complex64> = Vec::new();
    for (d, lam) in weights.support() {
        if d == 1 {
            terms.push(Complex64::new(lam, 0.0));
            continue;
        }
        let mut prod = Complex64::new(lam, 0.0);
        let mut m = d;
        let mut p = 2u32;
        while m > 1 {
            if m % p as usize == 0 {
                m /= p as usize;
                prod *= ev.local_factor(p, s).unwrap();
            } else {
                p += 1;
            }
        }
        terms.push(prod);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for t in terms.iter().rev() {
        let y = *t - comp;
        let tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    }
    assert!((k - sum).norm() < 1e-12, "{k} vs {sum}");
}

/// The simple pole at i*pi/ln2 (z = 4, T1 = T2 = 1): multiplicity from the
/// winding protocol matches a Laurent projection on circle samples (the
/// c_{-2} component must vanish relative to the residue, and the residue
/// must clear the filter's smallness screen).
#[test]
fn residue_filter_against_laurent_fit() {
    let ev = evaluator(1.0, 1.0, 4.0);
    let nu = ev.nu_location(2, 1);
    let mult = ev.residue_filter(nu).unwrap();
    assert_eq!(mult, 1);

    let coeffs = oracle::laurent_fit(|s| ev.k_eval(s).unwrap(), nu, 1e-3, 2, 2);
    let c_m2 = coeffs[0].norm();
    let c_m1 = coeffs[1].norm();
    assert!(c_m1 > 1e-8, "residue magnitude {c_m1}");
    assert!(c_m2 < 1e-6 * c_m1, "double-pole component {c_m2} vs residue {c_m1}");
}

/// Zero search is stable under a refined initial subdivision, and the
/// boundary winding equals zeros minus poles on seeded rectangles.
#[test]
fn find_k_zeros_stability_and_winding() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let rect = RectRegion::new(-1.0, 2.0, -5.0, 5.0).unwrap();
    let zeros_a = ev.find_k_zeros(&rect).unwrap();
    // A split search over two half rectangles must find the same zeros.
    let cut = 0.137; // keep the cut away from structure
    let lower = RectRegion::new(-1.0, 2.0, -5.0, cut).unwrap();
    let upper = RectRegion::new(-1.0, 2.0, cut, 5.0).unwrap();
    let mut zeros_b = ev.find_k_zeros(&lower).unwrap();
    zeros_b.extend(ev.find_k_zeros(&upper).unwrap());
    zeros_b.sort_by(|a, b| (a.0.im, a.0.re).partial_cmp(&(b.0.im, b.0.re)).unwrap());
    assert_eq!(zeros_a.len(), zeros_b.len(), "{zeros_a:?} vs {zeros_b:?}");
    for (a, b) in zeros_a.iter().zip(zeros_b.iter()) {
        assert!((a.0 - b.0).norm() < 1e-6);
        assert_eq!(a.1, b.1);
    }
}

/// Argument-principle integer identity on 20 random admissible rectangles.
#[test]
fn winding_equals_zeros_minus_poles() {
    let ev = evaluator(1.0, 2.0, 4.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd_0002);
    let mut done = 0;
    let mut attempts = 0;
    while done < 20 && attempts < 200 {
        attempts += 1;
        let re0 = rng.gen_range(-0.9..1.5);
        let im0 = rng.gen_range(-6.0..4.0);
        let rect = RectRegion::new(
            re0,
            re0 + rng.gen_range(0.4..1.4),
            im0,
            im0 + rng.gen_range(0.4..2.0),
        )
        .unwrap();
        let zeros = match ev.find_k_zeros(&rect) {
            Ok(z) => z,
            Err(Error::BoundaryTooClose(_)) | Err(Error::NonConvergence(_)) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        };
        let poles = ev.poles_in_band(rect.im_min, rect.im_max).unwrap();
        let pole_sum: i64 = poles
            .iter()
            .filter(|(p, _)| rect.contains(*p))
            .map(|(_, m)| *m as i64)
            .sum();
        let zero_sum: i64 = zeros.iter().map(|(_, m)| *m as i64).sum();
        // One-shot boundary winding of K over the whole rectangle.
        let w = ev.k_boundary_winding(&rect).unwrap();
        assert_eq!(w, zero_sum - pole_sum, "rect {rect:?}");
        done += 1;
    }
    assert!(done >= 20, "only {done} admissible rectangles out of {attempts}");
}
