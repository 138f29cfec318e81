//! Riemann zeta evaluation, critical-line zero handling, and contour probes.
//!
//! On `Re s ≥ −1`, ζ(s) and ζ′(s) come from a single Euler–Maclaurin pass
//! (Bernoulli correction order 8, cutoff N = max(50, 2|Im s|)) with every
//! term differentiated analytically — no finite differences anywhere. Left
//! of that line the pass is reflected through the functional equation
//! ζ(s) = χ(s)ζ(1−s): the straight Euler–Maclaurin sum cancels through
//! N^{1−σ}-sized partial terms there and loses all binary64 significance
//! around σ ≈ −5, while the reflected argument 1−s sits deep in the
//! absolutely convergent half-plane. χ is assembled from log-space pieces
//! (Lanczos log-Γ, stable log-sin) so nothing overflows until the true
//! value itself leaves f64 range.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::singularity::SingularityClass;
use crate::{check_finite, Error, Result};

/// B_{2k}/(2k)! for k = 1..=80 (index 0 unused). These multiply the odd
/// derivatives of x^{-s} in the Euler–Maclaurin correction.
const B2K_OVER_FACT: [f64; 14] = [
    0.0,
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
];

/// Bernoulli correction order of the Euler–Maclaurin pass.
const EM_ORDER: usize = 8;

/// Lanczos coefficients (g = 7, 9 terms), accurate to ~1e-13 relative for
/// Re z > 0.5; here always applied with Re z ≥ 2.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Whether a requested evaluation meets the guaranteed-accuracy contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accuracy {
    /// Absolute error below 1e-10 (cutoff ≥ adaptive threshold, Re s ≥ −1).
    Guaranteed,
    /// Cutoff below the adaptive threshold; the value is best-effort only.
    Degraded,
}

/// A zeta value together with its accuracy status.
#[derive(Debug, Clone, Copy)]
pub struct ZetaEval {
    pub value: Complex64,
    pub accuracy: Accuracy,
}

/// Adaptive Euler–Maclaurin cutoff: N = max(50, ⌈2|Im s|⌉).
pub fn adaptive_terms(s: Complex64) -> usize {
    let t = s.im.abs();
    let n = (2.0 * t).ceil() as usize;
    n.max(50)
}

/// log Γ(z) by Lanczos, principal branch; requires Re z ≥ 0.5 (callers pass
/// Re z ≥ 2).
fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + (k as f64 - 1.0));
    }
    let t = z + (LANCZOS_G - 0.5);
    0.5 * (2.0 * PI).ln() + (z - 0.5) * t.ln() - t + a.ln()
}

/// Digamma ψ(z) from the differentiated Lanczos form; Re z ≥ 2 here.
fn lanczos_digamma(z: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    let mut da = Complex64::new(0.0, 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        let d = z + (k as f64 - 1.0);
        a += c / d;
        da -= c / (d * d);
    }
    let t = z + (LANCZOS_G - 0.5);
    t.ln() + (z - 0.5) / t - 1.0 + da / a
}

/// Pieces of the functional equation ζ(s) = χ(s)ζ(1−s) with the growing
/// exponential of sin(πs/2) folded into the prefactor:
///   χ(s)  = scale · sin_hat,
///   χ′(s) = scale · [ sin_hat (ln 2π − ψ(1−s)) + (π/2) cos_hat ],
/// where scale = 2^s π^{s−1} Γ(1−s) e^{μ}, μ = |Im(πs/2)|, and
/// sin_hat = sin(πs/2) e^{−μ}, cos_hat = cos(πs/2) e^{−μ} stay bounded.
struct ReflectParts {
    scale: Complex64,
    sin_hat: Complex64,
    cos_hat: Complex64,
    psi: Complex64,
}

fn reflect_parts(s: Complex64) -> Result<ReflectParts> {
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let log_a = s * core::f64::consts::LN_2 + (s - 1.0) * PI.ln() + lanczos_log_gamma(one_minus_s);
    let w = 0.5 * PI * s;
    let (x, y) = (w.re, w.im);
    let mu = y.abs();
    let em = (-2.0 * mu).exp();
    let cosh_hat = 0.5 * (1.0 + em);
    let sinh_hat = 0.5 * (1.0 - em) * y.signum();
    let sin_hat = Complex64::new(x.sin() * cosh_hat, x.cos() * sinh_hat);
    let cos_hat = Complex64::new(x.cos() * cosh_hat, -x.sin() * sinh_hat);
    let scale = (log_a + mu).exp();
    if !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(Error::NotFinite);
    }
    Ok(ReflectParts {
        scale,
        sin_hat,
        cos_hat,
        psi: lanczos_digamma(one_minus_s),
    })
}

/// ζ and ζ′ for `Re s < −1` through the functional equation.
fn zeta_and_deriv_reflected(s: Complex64, cutoff: usize) -> Result<(Complex64, Complex64)> {
    let parts = reflect_parts(s)?;
    let (z1, dz1) = euler_maclaurin(Complex64::new(1.0, 0.0) - s, cutoff, EM_ORDER);
    let chi = parts.scale * parts.sin_hat;
    let chi_prime = parts.scale
        * (parts.sin_hat * ((2.0 * PI).ln() - parts.psi) + (0.5 * PI) * parts.cos_hat);
    // d/ds zeta(1-s) = -zeta'(1-s): inner chain factor -1.
    Ok((chi * z1, chi_prime * z1 - chi * dz1))
}

/// One Euler–Maclaurin pass producing ζ(s) and ζ′(s) together.
///
/// ζ(s) = Σ_{n<N} n^{-s} + N^{-s}/2 + N^{1-s}/(s-1)
///        + Σ_k B_{2k}/(2k)! · (s)(s+1)…(s+2k-2) · N^{-s-2k+1},
/// with every term differentiated in s analytically. Terms are accumulated
/// through a ratio recurrence so intermediate products never overflow.
fn euler_maclaurin(s: Complex64, cutoff: usize, order: usize) -> (Complex64, Complex64) {
    let n = cutoff as f64;
    let ln_n = n.ln();

    let mut zeta = Complex64::new(0.0, 0.0);
    let mut dzeta = Complex64::new(0.0, 0.0);
    for m in 1..cutoff {
        let ln_m = (m as f64).ln();
        let term = (-s * ln_m).exp();
        zeta += term;
        dzeta -= term * ln_m;
    }

    let n_pow = (-s * ln_n).exp(); // N^{-s}
    zeta += 0.5 * n_pow;
    dzeta -= 0.5 * n_pow * ln_n;

    let sm1 = s - 1.0;
    let integral = n_pow * n / sm1; // N^{1-s}/(s-1)
    zeta += integral;
    dzeta += -integral * ln_n - integral / sm1;

    // Correction terms via the recurrences
    //   P_1 = s, P_{k+1} = P_k (s+2k-1)(s+2k),  P'_{k+1} = P'_k (…) + P_k (2s+4k-1)
    //   pw_1 = N^{-s-1},  pw_{k+1} = pw_k / N².
    let inv_n2 = 1.0 / (n * n);
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut pw = n_pow / n;
    for k in 1..=order {
        let coeff = B2K_OVER_FACT[k];
        let term = coeff * p * pw;
        zeta += term;
        dzeta += coeff * (dp * pw + p * pw * (-ln_n));
        if term.norm_sqr() < 1e-36 * (zeta.norm_sqr() + 1.0) {
            break;
        }
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        dp = dp * (a * b) + p * (a + b);
        p = p * a * b;
        pw *= inv_n2;
    }

    (zeta, dzeta)
}

/// ζ(s) with the adaptive cutoff and correction order.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_with_terms(s, adaptive_terms(s))?.value)
}

/// ζ(s) with an explicit series cutoff (`terms ≥ 10`).
///
/// When `terms` is below the adaptive threshold or `Re s < −1`, the result is
/// flagged [`Accuracy::Degraded`] instead of the 1e-10 guarantee.
pub fn zeta_with_terms(s: Complex64, terms: usize) -> Result<ZetaEval> {
    if terms < 10 {
        return Err(Error::InvalidParameter("terms must be at least 10"));
    }
    let (value, _) = zeta_pair(s, terms)?;
    let accuracy = if terms >= adaptive_terms(s) {
        Accuracy::Guaranteed
    } else {
        Accuracy::Degraded
    };
    Ok(ZetaEval { value, accuracy })
}

/// ζ(s) and ζ′(s) from one pass with the adaptive cutoff.
pub fn zeta_and_deriv(s: Complex64) -> Result<(Complex64, Complex64)> {
    zeta_pair(s, adaptive_terms(s))
}

fn zeta_pair(s: Complex64, terms: usize) -> Result<(Complex64, Complex64)> {
    check_finite(s)?;
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::PoleAtOne);
    }
    let (z, dz) = if s.re >= -1.0 {
        euler_maclaurin(s, terms, EM_ORDER)
    } else {
        zeta_and_deriv_reflected(s, terms)?
    };
    if !z.re.is_finite() || !z.im.is_finite() || !dz.re.is_finite() || !dz.im.is_finite() {
        return Err(Error::NotFinite);
    }
    Ok((z, dz))
}

/// Guard distance around the pole, trivial zeros and tabulated critical
/// zeros for [`zeta_log_deriv`].
pub const LOG_DERIV_GUARD: f64 = 1e-8;

/// ζ′/ζ(s), refusing points within [`LOG_DERIV_GUARD`] of s = 1, a trivial
/// zero −2q, or any zero ordinate listed in `zeros`.
pub fn zeta_log_deriv(s: Complex64, zeros: &ZeroTable) -> Result<Complex64> {
    check_finite(s)?;
    let pole = Complex64::new(1.0, 0.0);
    if (s - pole).norm() < LOG_DERIV_GUARD {
        return Err(Error::NearSingularity {
            class: SingularityClass::S1,
            location: pole,
        });
    }
    if s.re < -1.0 {
        let q = (-s.re / 2.0).round();
        if q >= 1.0 {
            let trivial = Complex64::new(-2.0 * q, 0.0);
            if (s - trivial).norm() < LOG_DERIV_GUARD {
                return Err(Error::NearSingularity {
                    class: SingularityClass::Sm2q,
                    location: trivial,
                });
            }
        }
    }
    if let Some(gamma) = zeros.nearest_ordinate(s.im.abs()) {
        let zero = Complex64::new(0.5, gamma * s.im.signum());
        if (s - zero).norm() < LOG_DERIV_GUARD {
            return Err(Error::NearSingularity {
                class: SingularityClass::Srho,
                location: zero,
            });
        }
    }
    let (z, dz) = zeta_and_deriv(s)?;
    if z.norm() == 0.0 {
        return Err(Error::NotFinite);
    }
    Ok(dz / z)
}

// ---------------------------------------------------------------------------
// Hardy function and zero refinement
// ---------------------------------------------------------------------------

/// Riemann–Siegel theta via its asymptotic expansion; good to ~1e-10 for
/// t ≥ 10 (all shipped zero ordinates are above 14).
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let t2 = t * t;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430080.0 * t * t2 * t2 * t2)
}

/// Hardy's function Z(t) = e^{iθ(t)} ζ(1/2 + it), real on the critical line.
pub fn hardy_z(t: f64) -> Result<f64> {
    if !(t >= 2.0) {
        return Err(Error::InvalidParameter(
            "hardy_z requires t >= 2 (theta expansion validity)",
        ));
    }
    let z = zeta(Complex64::new(0.5, t))?;
    let rot = Complex64::new(0.0, riemann_siegel_theta(t)).exp();
    Ok((rot * z).re)
}

/// Bisection + clamped secant polish on a sign-change bracket of the Hardy
/// function. The result stays inside [a, b].
pub fn refine_bracket(a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a < b) || !(a >= 2.0) {
        return Err(Error::InvalidParameter("bracket must be ordered and above 2"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive"));
    }
    let fa = hardy_z(a)?;
    let fb = hardy_z(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { bracket: (a, b) });
    }
    polish_bracket(a, b, fa, fb, tol)
}

fn polish_bracket(mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, tol: f64) -> Result<f64> {
    let lo = a;
    let hi = b;
    let tol = tol.max(1e-13);
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = hardy_z(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa.signum() != fm.signum() {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    // Secant polish, clamped to the original bracket.
    let mut x0 = a;
    let mut x1 = b;
    let mut f0 = fa;
    let mut f1 = fb;
    for _ in 0..3 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 >= lo && x2 <= hi) {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = hardy_z(x1)?;
        if f1 == 0.0 {
            break;
        }
    }
    Ok(x1)
}

/// Refines a critical-line zero ordinate from an approximation.
///
/// Scans `gamma_approx ± 0.5` for a sign change of the Hardy function,
/// bisects to `tol`, then polishes with a bracket-clamped secant step. The
/// result always lies inside the detected bracket.
pub fn refine_zero(gamma_approx: f64, tol: f64) -> Result<f64> {
    if !(gamma_approx > 3.0) || !gamma_approx.is_finite() {
        return Err(Error::InvalidParameter("gamma_approx must exceed 3"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive"));
    }
    const SCAN: usize = 64;
    let lo = gamma_approx - 0.5;
    let hi = gamma_approx + 0.5;
    let step = (hi - lo) / SCAN as f64;
    let mut prev_t = lo;
    let mut prev_v = hardy_z(prev_t)?;
    let mut bracket: Option<(f64, f64, f64, f64)> = None;
    let mut best_dist = f64::INFINITY;
    for i in 1..=SCAN {
        let t = lo + step * i as f64;
        let v = hardy_z(t)?;
        if prev_v == 0.0 {
            return Ok(prev_t);
        }
        if v == 0.0 {
            return Ok(t);
        }
        if prev_v.signum() != v.signum() {
            let mid = 0.5 * (prev_t + t);
            let dist = (mid - gamma_approx).abs();
            if dist < best_dist {
                best_dist = dist;
                bracket = Some((prev_t, t, prev_v, v));
            }
        }
        prev_t = t;
        prev_v = v;
    }
    let (a, b, fa, fb) = bracket.ok_or(Error::NoSignChange { bracket: (lo, hi) })?;
    polish_bracket(a, b, fa, fb, tol)
}

// ---------------------------------------------------------------------------
// Zero tables
// ---------------------------------------------------------------------------

/// A zero of ζ on the critical line, ρ = 1/2 + iγ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaZero {
    /// The ordinate γ > 0.
    pub ordinate: f64,
    /// 1-based rank by height.
    pub index: usize,
}

/// Ordered list of positive zero ordinates with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: String,
}

impl ZeroTable {
    /// Builds a table from ascending positive ordinates. Duplicates within
    /// 1e-9 are rejected, as is anything at or below the first-zero floor
    /// for index 1 (the first zero ordinate exceeds 14).
    pub fn new(ordinates: Vec<f64>, source: String) -> Result<Self> {
        if let Some(&first) = ordinates.first() {
            if !(first > 14.0) {
                return Err(Error::InvalidParameter(
                    "first zero ordinate must exceed 14",
                ));
            }
        }
        for w in ordinates.windows(2) {
            if !(w[1] - w[0] > 1e-9) {
                return Err(Error::InvalidParameter(
                    "zero ordinates must be strictly ascending (separation > 1e-9)",
                ));
            }
        }
        if ordinates.iter().any(|g| !g.is_finite()) {
            return Err(Error::NotFinite);
        }
        Ok(ZeroTable { ordinates, source })
    }

    pub fn empty() -> Self {
        ZeroTable {
            ordinates: Vec::new(),
            source: String::from("empty"),
        }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn max_ordinate(&self) -> Option<f64> {
        self.ordinates.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ZetaZero> + '_ {
        self.ordinates
            .iter()
            .enumerate()
            .map(|(i, &g)| ZetaZero {
                ordinate: g,
                index: i + 1,
            })
    }

    /// Ordinate closest to `t` (None when the table is empty).
    pub fn nearest_ordinate(&self, t: f64) -> Option<f64> {
        if self.ordinates.is_empty() {
            return None;
        }
        let idx = self.ordinates.partition_point(|&g| g < t);
        let mut best = f64::INFINITY;
        let mut best_g = self.ordinates[0];
        for j in idx.saturating_sub(1)..=idx.min(self.ordinates.len() - 1) {
            let g = self.ordinates[j];
            if (g - t).abs() < best {
                best = (g - t).abs();
                best_g = g;
            }
        }
        Some(best_g)
    }

    /// Distance from `t` to the nearest tabulated ordinate (∞ when empty).
    pub fn distance_to(&self, t: f64) -> f64 {
        self.nearest_ordinate(t)
            .map(|g| (g - t).abs())
            .unwrap_or(f64::INFINITY)
    }
}

// ---------------------------------------------------------------------------
// Contour probe (empirical sup of |ζ'/ζ| / log² m)
// ---------------------------------------------------------------------------

/// Deterministic admissible ordinate in (m + 0.1, m + 0.9): the candidate on
/// a 64-point grid maximizing the distance to tabulated zero ordinates.
pub fn select_t_m(m: u32, zeros: &ZeroTable) -> f64 {
    let m = m as f64;
    let mut best = m + 0.1;
    let mut best_dist = -1.0;
    for i in 0..64 {
        let t = m + 0.1 + 0.8 * (i as f64) / 63.0;
        let d = zeros.distance_to(t);
        if d > best_dist {
            best_dist = d;
            best = t;
        }
    }
    best
}

/// Empirical supremum of |ζ′/ζ(s)| / log²m along the rectangular contour
/// `σ ∈ [−m−1/2, 3], t = ±T_m` plus `σ = −m−1/2, |t| < T_m`, with `T_m`
/// chosen by [`select_t_m`]. Diagnostic only: the ratio is reported, nothing
/// is asserted about the implied constant.
pub fn probe_contour_bound(m: u32, samples: usize, zeros: &ZeroTable) -> Result<f64> {
    if !(2..=50).contains(&m) {
        return Err(Error::InvalidParameter("m must lie in 2..=50"));
    }
    if samples < 4 {
        return Err(Error::InvalidParameter("samples must be at least 4"));
    }
    let t_m = select_t_m(m, zeros);
    let sigma_left = -(m as f64) - 0.5;
    let log2m = (m as f64).ln().powi(2);

    let mut sup: f64 = 0.0;
    let mut eval = |s: Complex64| -> Result<()> {
        let (z, dz) = zeta_and_deriv(s)?;
        if z.norm() > 0.0 {
            let r = (dz / z).norm() / log2m;
            if r > sup {
                sup = r;
            }
        }
        Ok(())
    };

    for i in 0..samples {
        let sigma = sigma_left + (3.0 - sigma_left) * (i as f64) / (samples - 1) as f64;
        eval(Complex64::new(sigma, t_m))?;
        eval(Complex64::new(sigma, -t_m))?;
    }
    for i in 1..samples {
        let t = -t_m + 2.0 * t_m * (i as f64) / samples as f64;
        eval(Complex64::new(sigma_left, t))?;
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_classical_values() {
        let pi2_6 = PI * PI / 6.0;
        let z2 = zeta(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z2 - Complex64::new(pi2_6, 0.0)).norm() < 1e-12);
        let z0 = zeta(Complex64::new(0.0, 0.0)).unwrap();
        assert!((z0 - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
        // Trivial zeros and negative-axis values.
        let zm1 = zeta(Complex64::new(-1.0, 0.0)).unwrap();
        assert!((zm1.re + 1.0 / 12.0).abs() < 1e-12, "zeta(-1) = {zm1}");
        let zm2 = zeta(Complex64::new(-2.0, 0.0)).unwrap();
        assert!(zm2.norm() < 1e-12);
        let zm3 = zeta(Complex64::new(-3.0, 0.0)).unwrap();
        assert!((zm3.re - 1.0 / 120.0).abs() < 1e-12, "zeta(-3) = {zm3}");
    }

    #[test]
    fn zeta_small_at_first_zero() {
        let z = zeta(Complex64::new(0.5, 14.134725)).unwrap();
        assert!(z.norm() < 1e-5, "|zeta| = {}", z.norm());
        // Frozen reference |zeta(1/2 + 14.134725 i)| = 1.124183502e-7.
        assert!((z.norm() - 1.124183502e-7).abs() < 1e-10);
    }

    #[test]
    fn zeta_deep_left_reference_values() {
        // Frozen 30-digit references for the reflected region.
        let a = zeta(Complex64::new(-20.5, 0.7)).unwrap();
        let expect_a = Complex64::new(-11.649117478134649, 228.21205928166225);
        assert!((a - expect_a).norm() / expect_a.norm() < 1e-12, "{a}");
        let b = zeta(Complex64::new(-3.0, 0.5)).unwrap();
        let expect_b = Complex64::new(0.010045376193027521, 0.0033279397266725823);
        assert!((b - expect_b).norm() < 1e-14, "{b}");
    }

    #[test]
    fn log_deriv_deep_left_reference_values() {
        let t = ZeroTable::empty();
        let cases = [
            (
                Complex64::new(-3.0, 0.5),
                Complex64::new(0.62874084497742283, -0.86244554226179227),
            ),
            (
                Complex64::new(-11.0, 0.25),
                Complex64::new(-0.60485168249116871, -0.56523081657115758),
            ),
            (
                Complex64::new(-50.5, 3.0),
                Complex64::new(-2.0959450618600448, -1.5120423550401724),
            ),
        ];
        for (s, expect) in cases {
            let v = zeta_log_deriv(s, &t).unwrap();
            assert!((v - expect).norm() < 1e-11, "at {s}: {v} vs {expect}");
        }
    }

    #[test]
    fn zeta_pole_guard() {
        assert!(matches!(
            zeta(Complex64::new(1.0, 1e-13)),
            Err(Error::PoleAtOne)
        ));
    }

    #[test]
    fn zeta_terms_validation_and_accuracy_flag() {
        assert!(zeta_with_terms(Complex64::new(2.0, 0.0), 5).is_err());
        let e = zeta_with_terms(Complex64::new(2.0, 300.0), 50).unwrap();
        assert_eq!(e.accuracy, Accuracy::Degraded);
        let g = zeta_with_terms(Complex64::new(2.0, 300.0), 600).unwrap();
        assert_eq!(g.accuracy, Accuracy::Guaranteed);
    }

    #[test]
    fn log_deriv_reference_value() {
        // Frozen: zeta'(2)/zeta(2) = -0.5699609930945328.
        let v = zeta_log_deriv(Complex64::new(2.0, 0.0), &ZeroTable::empty()).unwrap();
        assert!((v - Complex64::new(-0.5699609930945328, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn log_deriv_guards() {
        let table = ZeroTable::new(
            alloc::vec![14.134725141734694],
            String::from("test"),
        )
        .unwrap();
        assert!(zeta_log_deriv(Complex64::new(1.0 + 1e-9, 0.0), &table).is_err());
        assert!(zeta_log_deriv(Complex64::new(-4.0, 1e-9), &table).is_err());
        assert!(zeta_log_deriv(Complex64::new(0.5, 14.134725141734694), &table).is_err());
        // Inside the left region but away from excluded circles: finite.
        let v = zeta_log_deriv(Complex64::new(-3.0, 0.5), &table).unwrap();
        assert!(v.norm().is_finite());
    }

    #[test]
    fn hardy_sign_change_at_first_zero() {
        let a = hardy_z(14.0).unwrap();
        let b = hardy_z(14.3).unwrap();
        assert!(a.signum() != b.signum());
    }

    #[test]
    fn refine_zero_reference_ordinates() {
        let g1 = refine_zero(14.1, 1e-10).unwrap();
        assert!((g1 - 14.13472514173469379).abs() < 1e-8, "g1 = {g1}");
        let g2 = refine_zero(21.0, 1e-10).unwrap();
        assert!((g2 - 21.02203963877155499).abs() < 1e-8, "g2 = {g2}");
        // Idempotence: feeding a converged ordinate back reproduces it.
        let again = refine_zero(g1, 1e-10).unwrap();
        assert!((again - g1).abs() < 1e-9);
        // Output lies inside the scanned bracket.
        assert!(g1 > 14.1 - 0.5 && g1 < 14.1 + 0.5);
    }

    #[test]
    fn refine_zero_no_sign_change() {
        assert!(matches!(
            refine_zero(16.5, 1e-9),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn zero_table_validation() {
        assert!(ZeroTable::new(alloc::vec![13.0], String::from("t")).is_err());
        assert!(ZeroTable::new(alloc::vec![15.0, 15.0], String::from("t")).is_err());
        let t = ZeroTable::new(alloc::vec![14.13, 21.02], String::from("t")).unwrap();
        assert_eq!(t.len(), 2);
        assert!((t.distance_to(20.0) - 1.02).abs() < 1e-12);
    }

    #[test]
    fn probe_contour_deterministic_and_finite() {
        let table = ZeroTable::empty();
        let a = probe_contour_bound(2, 10, &table).unwrap();
        let b = probe_contour_bound(2, 10, &table).unwrap();
        assert_eq!(a, b);
        assert!(a.is_finite() && a > 0.0);
        let r3 = probe_contour_bound(3, 200, &table).unwrap();
        assert!(r3.is_finite() && r3 > 0.0);
    }

    #[test]
    fn probe_same_order_of_magnitude() {
        let table = ZeroTable::empty();
        let r10 = probe_contour_bound(10, 60, &table).unwrap();
        let r20 = probe_contour_bound(20, 60, &table).unwrap();
        let ratio = r10.max(r20) / r10.min(r20);
        assert!(ratio < 10.0, "r10 = {r10}, r20 = {r20}");
    }

    #[test]
    fn select_t_m_in_window() {
        let t = select_t_m(5, &ZeroTable::empty());
        assert!(t > 5.1 - 1e-12 && t < 5.9 + 1e-12);
    }
}
