//! Brute-force reference computations for tests (feature `oracle`).
//!
//! Everything here is deliberately independent of the main evaluation paths:
//! trial-division factorizations, direct divisor loops, series convolutions
//! and quadrature, so that agreement with the library is a genuine
//! cross-check rather than a tautology.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::SpectralParams;

/// Trial-division smallest prime factor.
fn trial_spf(n: usize) -> usize {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Von Mangoldt Λ(n) by trial division.
pub fn von_mangoldt(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = trial_spf(n);
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

/// Möbius μ(n) by trial division.
pub fn mobius(n: usize) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Direct evaluation of the tapered mollifier weight λ_d(z).
pub fn lambda_reference(d: usize, z: f64) -> f64 {
    let mu = mobius(d) as f64;
    if mu == 0.0 {
        return 0.0;
    }
    let df = d as f64;
    if df < z {
        mu
    } else if df < z * z {
        mu * (z * z / df).ln() / z.ln()
    } else {
        0.0
    }
}

/// σ_a(n) by a direct loop over divisors.
pub fn divisor_sum_brute(n: usize, a: Complex64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for d in 1..=n {
        if n % d == 0 {
            total += (a * (d as f64).ln()).exp();
        }
    }
    total
}

/// Σ(n) for the degenerate product (K ≡ 1, T₁ = T₂ = 0), where
/// Z = ζ(s)⁴/ζ(2s): Σ(n) = −4Λ(n) + 2Λ(√n) for square n.
pub fn degenerate_sigma(n: usize) -> f64 {
    let mut v = -4.0 * von_mangoldt(n);
    let r = (n as f64).sqrt().round() as usize;
    if r * r == n {
        v += 2.0 * von_mangoldt(r);
    }
    v
}

/// Dirichlet convolution (a ⋆ b)_n = Σ_{de=n} a_d b_e on 1-indexed tables.
pub fn dirichlet_convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for d in 1..=n {
        if a[d].norm_sqr() == 0.0 {
            continue;
        }
        let mut e = 1;
        while d * e <= n {
            out[d * e] += a[d] * b[e];
            e += 1;
        }
    }
    out
}

/// Dirichlet inverse of a table with g₁ = 1.
pub fn dirichlet_inverse(g: &[Complex64]) -> Vec<Complex64> {
    let n = g.len() - 1;
    let mut h = vec![Complex64::new(0.0, 0.0); n + 1];
    h[1] = Complex64::new(1.0, 0.0);
    for m in 2..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for d in 2..=m {
            if m % d == 0 {
                acc += g[d] * h[m / d];
            }
        }
        h[m] = -acc;
    }
    h
}

/// Coefficients of Z = J·K to `nmax` by brute-force series algebra: the four
/// shifted zeta lines convolved, divided by the doubled-line series, then
/// convolved with the Euler-type expansion of K.
pub fn z_coefficients_by_convolution(params: &SpectralParams, nmax: usize) -> Vec<Complex64> {
    let t1 = params.t1();
    let t2 = params.t2();
    let delta = params.delta();
    let one = Complex64::new(1.0, 0.0);

    let line = |phase: f64| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); nmax + 1];
        for n in 1..=nmax {
            v[n] = (Complex64::new(0.0, phase) * (n as f64).ln()).exp();
        }
        v
    };
    // zeta(s) * zeta(s - iT1) * zeta(s + iT2) * zeta(s - i delta)
    let mut j_num = line(0.0);
    j_num = dirichlet_convolve(&j_num, &line(t1));
    j_num = dirichlet_convolve(&j_num, &line(-t2));
    j_num = dirichlet_convolve(&j_num, &line(delta));

    // zeta(2s - i delta) = sum over squares m^2 with coefficient m^{i delta}.
    let mut doubled = vec![Complex64::new(0.0, 0.0); nmax + 1];
    doubled[1] = one;
    let mut m = 2usize;
    while m * m <= nmax {
        doubled[m * m] = (Complex64::new(0.0, delta) * (m as f64).ln()).exp();
        m += 1;
    }
    let j_coeffs = dirichlet_convolve(&j_num, &dirichlet_inverse(&doubled));

    let k_coeffs = k_coefficients_by_expansion(params, nmax);
    dirichlet_convolve(&j_coeffs, &k_coeffs)
}

/// Dirichlet coefficients of K to `nmax` from per-prime power series: each
/// local factor is 1 minus a quartic in p^{-s} times a geometric series from
/// the inverted doubled-line factor.
pub fn k_coefficients_by_expansion(params: &SpectralParams, nmax: usize) -> Vec<Complex64> {
    let t1 = params.t1();
    let t2 = params.t2();
    let delta = params.delta();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    // Power series of the local factor in u = p^{-s}, up to u^jmax.
    let local_series = |p: usize, jmax: usize| -> Vec<Complex64> {
        let lp = (p as f64).ln();
        let ph = |a: f64| (Complex64::new(0.0, a) * lp).exp(); // p^{ia}
        // (1 - u)(1 - alpha u)(1 - beta u)(1 - alpha beta u)
        let mut quartic = vec![one];
        for root in [one, ph(t1), ph(-t2), ph(delta)] {
            let mut next = vec![zero; quartic.len() + 1];
            for (i, &c) in quartic.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * root;
            }
            quartic = next;
        }
        // times sum_j (p^{i delta})^j u^{2j}
        let gd = ph(delta);
        let mut series = vec![zero; jmax + 1];
        let mut geo = one;
        let mut j2 = 0;
        while j2 <= jmax {
            for (i, &c) in quartic.iter().enumerate() {
                if i + j2 <= jmax {
                    series[i + j2] += c * geo;
                }
            }
            geo *= gd;
            j2 += 2;
        }
        // local factor = 1 - series
        let mut out = series.iter().map(|c| -c).collect::<Vec<_>>();
        out[0] += one;
        out
    };

    // Series of P_d as an n-indexed table supported on d-smooth numbers.
    let p_d_table = |d: usize| -> Vec<Complex64> {
        let mut table = vec![zero; nmax + 1];
        table[1] = one;
        let mut m = d;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                let jmax = (nmax as f64).ln() / (p as f64).ln();
                let series = local_series(p, jmax as usize);
                let mut next = vec![zero; nmax + 1];
                for n in 1..=nmax {
                    if table[n].norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut pj = 1usize;
                    for coeff in &series {
                        if n * pj > nmax {
                            break;
                        }
                        next[n * pj] += table[n] * coeff;
                        match pj.checked_mul(p) {
                            Some(v) => pj = v,
                            None => break,
                        }
                    }
                }
                table = next;
            }
            p += 1;
        }
        table
    };

    let mut k = vec![zero; nmax + 1];
    let end = params.support_end();
    for d in 1..=end {
        let lam = lambda_reference(d, params.z());
        if lam == 0.0 {
            continue;
        }
        let pd = p_d_table(d);
        for n in 1..=nmax {
            k[n] += lam * pd[n];
        }
    }
    k
}

/// Rebuilds Z-coefficients from Σ(n) by the inverse recursion
/// c_n = −(1/log n) Σ_{e|n, e≥2} c_{n/e} Σ(e), c₁ = 1.
pub fn exp_from_log_deriv(sigma: &[Complex64]) -> Vec<Complex64> {
    let n = sigma.len() - 1;
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[1] = Complex64::new(1.0, 0.0);
    for m in 2..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for e in 2..=m {
            if m % e == 0 {
                acc += c[m / e] * sigma[e];
            }
        }
        c[m] = -acc / (m as f64).ln();
    }
    c
}

/// The smoothing weight recovered from its Mellin-type kernel by quadrature
/// along Re w = 2: (1/2π) ∫ x^w (1−x^w)² / (log²x · w³) · n^{−w} dv over
/// w = 2 + iv, |v| ≤ 2000.
pub fn weight_by_kernel_quadrature(n: f64, x: f64) -> f64 {
    let lx = x.ln();
    let ln_n = n.ln();
    let integrand = |v: f64| -> f64 {
        let w = Complex64::new(2.0, v);
        let xw = (w * lx).exp();
        let one = Complex64::new(1.0, 0.0);
        let kern = xw * (one - xw) * (one - xw) / (lx * lx * w * w * w);
        (kern * (-w * ln_n).exp()).re
    };
    // Composite Simpson, step fine enough for the e^{iv(3 ln x - ln n)}
    // oscillation.
    let h = 0.005;
    let half = 2000.0;
    let steps = (2.0 * half / h) as usize;
    let steps = if steps % 2 == 1 { steps + 1 } else { steps };
    let hh = 2.0 * half / steps as f64;
    let mut sum = integrand(-half) + integrand(half);
    for i in 1..steps {
        let v = -half + hh * i as f64;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * integrand(v);
    }
    sum * hh / 3.0 / (2.0 * core::f64::consts::PI)
}

/// Least-squares Laurent fit on circle samples: fits coefficients c_j,
/// j = −order..=deg, of f(s) ≈ Σ c_j (s−center)^j from uniform samples, and
/// returns the fitted coefficients ordered from c_{−order} upward.
///
/// On uniform circle samples the monomials are orthogonal, so the fit is a
/// discrete Fourier projection: c_j = mean_k f(s_k) (s_k−center)^{−j}.
pub fn laurent_fit<F>(f: F, center: Complex64, radius: f64, order: usize, deg: usize) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let n = 64usize;
    let mut out = Vec::new();
    for j in -(order as i64)..=(deg as i64) {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let th = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
            let dz = radius * Complex64::new(th.cos(), th.sin());
            acc += f(center + dz) * dz.powi(-(j as i32));
        }
        out.push(acc / n as f64);
    }
    out
}
