//! Integer substrate and Dirichlet-series coefficient algebra.
//!
//! Provides the linear sieve (smallest prime factors + Möbius), the tapered
//! mollifier weights λ_d(z), complex-parameter divisor sums σ_a(n), the
//! Dirichlet coefficients c_n of Z, the log-derivative coefficients Σ(n) via
//! the convolution recursion, and the smoothed truncation Σ_x(n).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result, SpectralParams};

/// Hard cap for sieve limits and table lengths.
pub const MAX_SIEVE: usize = 10_000_000;
/// Hard cap for coefficient-table lengths.
pub const MAX_TABLE: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Sieve
// ---------------------------------------------------------------------------

/// Linear sieve holding smallest prime factors and exact Möbius values.
#[derive(Debug, Clone)]
pub struct Sieve {
    limit: usize,
    spf: Vec<u32>,
    mobius: Vec<i8>,
    primes: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Result<Self> {
        if limit > MAX_SIEVE {
            return Err(Error::LimitTooLarge {
                requested: limit as u64,
                max: MAX_SIEVE as u64,
            });
        }
        let n = limit.max(1);
        let mut spf = vec![0u32; n + 1];
        let mut mobius = vec![0i8; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        if n >= 1 {
            mobius[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mobius[i] = -1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
                mobius[i * p] = if i % p == 0 { 0 } else { -mobius[i] };
            }
        }
        Ok(Sieve {
            limit: n,
            spf,
            mobius,
            primes,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn mobius(&self, n: usize) -> i8 {
        self.mobius[n]
    }

    pub fn mobius_values(&self) -> &[i8] {
        &self.mobius
    }

    pub fn smallest_prime_factor(&self, n: usize) -> u32 {
        self.spf[n]
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_squarefree(&self, n: usize) -> bool {
        self.mobius[n] != 0
    }

    /// Prime factorization (p, e) pairs, ascending p.
    pub fn factorize(&self, n: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m];
            let mut e = 0;
            while m % p as usize == 0 {
                m /= p as usize;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// Distinct prime divisors, ascending.
    pub fn prime_divisors(&self, n: usize) -> Vec<u32> {
        self.factorize(n).into_iter().map(|(p, _)| p).collect()
    }

    /// All divisors of n, ascending.
    pub fn divisors(&self, n: usize) -> Vec<usize> {
        let mut divs = vec![1usize];
        for (p, e) in self.factorize(n) {
            let len = divs.len();
            let mut pk = 1usize;
            for _ in 0..e {
                pk *= p as usize;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Exact Möbius values μ(1..=limit) by linear sieve.
pub fn mobius_sieve(limit: usize) -> Result<Vec<i8>> {
    let sieve = Sieve::new(limit)?;
    Ok(sieve.mobius_values().to_vec())
}

// ---------------------------------------------------------------------------
// Mollifier weights
// ---------------------------------------------------------------------------

/// Tapered mollifier weights: λ_d = μ(d) for d < z, μ(d)·log(z²/d)/log z on
/// [z, z²), and 0 beyond (in particular for every non-squarefree d).
#[derive(Debug, Clone)]
pub struct MollifierWeights {
    z: f64,
    values: Vec<f64>,
}

impl MollifierWeights {
    pub fn z(&self) -> f64 {
        self.z
    }

    /// λ_d, zero outside the stored support.
    pub fn get(&self, d: usize) -> f64 {
        self.values.get(d).copied().unwrap_or(0.0)
    }

    /// Largest d with d < z².
    pub fn support_end(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Nonzero entries (d, λ_d), ascending d.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(d, &v)| (d, v))
    }
}

/// Builds the weight table for `params` (exact piecewise evaluation).
pub fn lambda_weights(params: &SpectralParams) -> Result<MollifierWeights> {
    let z = params.z();
    let end = params.support_end();
    let sieve = Sieve::new(end)?;
    let mut values = vec![0.0f64; end + 1];
    let log_z = z.ln();
    let z2 = z * z;
    for d in 1..=end {
        let mu = sieve.mobius(d);
        if mu == 0 {
            continue;
        }
        let df = d as f64;
        values[d] = if df < z {
            mu as f64
        } else {
            // z <= d < z^2 guaranteed by the support bound.
            mu as f64 * (z2 / df).ln() / log_z
        };
    }
    Ok(MollifierWeights { z, values })
}

// ---------------------------------------------------------------------------
// Divisor sums
// ---------------------------------------------------------------------------

/// σ_a(n) = Σ_{d|n} d^a for complex a, via multiplicativity.
pub fn complex_divisor_sum(sieve: &Sieve, n: usize, a: Complex64) -> Result<Complex64> {
    if n == 0 || n > sieve.limit() {
        return Err(Error::LimitTooLarge {
            requested: n as u64,
            max: sieve.limit() as u64,
        });
    }
    let mut total = Complex64::new(1.0, 0.0);
    for (p, e) in sieve.factorize(n) {
        let pa = (a * (p as f64).ln()).exp();
        let mut local = Complex64::new(1.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for _ in 0..e {
            pow *= pa;
            local += pow;
        }
        total *= local;
    }
    Ok(total)
}

/// Table of σ_a(n) for all n ≤ nmax, built by multiplicative recursion on the
/// smallest-prime-factor decomposition (two complex exps per prime power).
fn divisor_sum_table(sieve: &Sieve, nmax: usize, a: Complex64) -> Vec<Complex64> {
    let mut table = vec![Complex64::new(0.0, 0.0); nmax + 1];
    if nmax >= 1 {
        table[1] = Complex64::new(1.0, 0.0);
    }
    // spf_pow[n] = largest power of spf(n) dividing n.
    let mut spf_pow = vec![0u32; nmax + 1];
    for n in 2..=nmax {
        let p = sieve.smallest_prime_factor(n) as usize;
        let m = n / p;
        spf_pow[n] = if m % p == 0 {
            spf_pow[m] * p as u32
        } else {
            p as u32
        };
        let q = spf_pow[n] as usize;
        table[n] = if q == n {
            // prime power: sigma_a(p^e) = sigma_a(p^{e-1}) + (p^e)^a
            table[n / p] + (a * (n as f64).ln()).exp()
        } else {
            table[q] * table[n / q]
        };
    }
    table
}

// ---------------------------------------------------------------------------
// Coefficient tables
// ---------------------------------------------------------------------------

/// Which series a [`CoefficientTable`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// c_n of Z(s) = Σ c_n n^{-s} (c₁ = 1).
    ZCoefficients,
    /// Σ(n) of Z′/Z(s) = Σ_{n≥2} Σ(n) n^{-s}.
    LogDeriv,
    /// Σ_x(n): the smoothed truncation, supported on n < x³.
    Smoothed,
}

/// Dense Dirichlet coefficients indexed by n (entry 0 unused, entry 1 only
/// meaningful for the Z kind; the log-derivative series starts at n = 2).
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    kind: TableKind,
    params: SpectralParams,
    values: Vec<Complex64>,
    x: Option<f64>,
}

impl CoefficientTable {
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn params(&self) -> &SpectralParams {
        &self.params
    }

    /// Smoothing length for the [`TableKind::Smoothed`] kind.
    pub fn smoothing_x(&self) -> Option<f64> {
        self.x
    }

    pub fn nmax(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Coefficient at n (0 outside the stored range).
    pub fn get(&self, n: usize) -> Complex64 {
        self.values.get(n).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Rebuilds a table from raw parts (used by caches; invariants are the
    /// caller's responsibility beyond basic shape checks).
    pub fn from_parts(
        kind: TableKind,
        params: SpectralParams,
        values: Vec<Complex64>,
        x: Option<f64>,
    ) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter("coefficient table too short"));
        }
        if kind == TableKind::Smoothed && x.is_none() {
            return Err(Error::ParameterMismatch("smoothed table requires x"));
        }
        Ok(CoefficientTable {
            kind,
            params,
            values,
            x,
        })
    }
}

/// Builds c_n = σ_{iT₁}(n)·σ_{−iT₂}(n)·Σ_{d|n} λ_d(z) for n ≤ nmax.
pub fn z_coefficients(params: &SpectralParams, nmax: usize) -> Result<CoefficientTable> {
    if nmax < 1 {
        return Err(Error::InvalidParameter("nmax must be at least 1"));
    }
    if nmax > MAX_TABLE {
        return Err(Error::LimitTooLarge {
            requested: nmax as u64,
            max: MAX_TABLE as u64,
        });
    }
    let sieve = Sieve::new(nmax)?;
    let weights = lambda_weights(params)?;

    // xi_sum[n] = sum over d | n of lambda_d.
    let mut xi_sum = vec![0.0f64; nmax + 1];
    for (d, lam) in weights.support() {
        let mut m = d;
        while m <= nmax {
            xi_sum[m] += lam;
            m += d;
        }
    }

    let s1 = divisor_sum_table(&sieve, nmax, Complex64::new(0.0, params.t1()));
    let s2 = divisor_sum_table(&sieve, nmax, Complex64::new(0.0, -params.t2()));

    let mut values = vec![Complex64::new(0.0, 0.0); nmax + 1];
    values[1] = Complex64::new(1.0, 0.0);
    for n in 2..=nmax {
        if xi_sum[n] != 0.0 {
            values[n] = s1[n] * s2[n] * xi_sum[n];
        }
    }
    Ok(CoefficientTable {
        kind: TableKind::ZCoefficients,
        params: *params,
        values,
        x: None,
    })
}

/// Σ(n) from the coefficient identity Z′ = Z·(Z′/Z):
/// Σ(n) = −c_n log n − Σ_{d|n, 1<d<n} Σ(d)·c_{n/d}, for 2 ≤ n ≤ nmax.
pub fn log_deriv_coefficients(c: &CoefficientTable) -> Result<CoefficientTable> {
    if c.kind() != TableKind::ZCoefficients {
        return Err(Error::ParameterMismatch("expected a Z-coefficient table"));
    }
    if (c.get(1) - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::Normalization);
    }
    let nmax = c.nmax();
    let mut sigma = vec![Complex64::new(0.0, 0.0); nmax + 1];
    // acc[n] accumulates sum over proper divisors e of n (1 < e < n) of
    // Sigma(e) * c_{n/e}; contributions are pushed forward as each Sigma(e)
    // is finalized, keeping the pass O(nmax log nmax).
    let mut acc = vec![Complex64::new(0.0, 0.0); nmax + 1];
    for e in 2..=nmax {
        let val = -c.get(e) * (e as f64).ln() - acc[e];
        sigma[e] = val;
        if val.norm_sqr() > 0.0 {
            let mut k = 2;
            while k * e <= nmax {
                let ck = c.get(k);
                if ck.norm_sqr() > 0.0 {
                    acc[k * e] += ck * val;
                }
                k += 1;
            }
        }
    }
    Ok(CoefficientTable {
        kind: TableKind::LogDeriv,
        params: *c.params(),
        values: sigma,
        x: None,
    })
}

/// The smoothing weight w(n) = Σ_x(n)/Σ(n): 1 on [1, x], the two-log taper on
/// [x, x²], log²(x³/n)/(2log²x) on [x², x³], and 0 beyond.
pub fn smoothing_weight(n: f64, x: f64) -> f64 {
    let l = x.ln();
    if n <= x {
        1.0
    } else if n <= x * x {
        let a = (x * x * x / n).ln();
        let b = (x * x / n).ln();
        (a * a - 2.0 * b * b) / (2.0 * l * l)
    } else if n <= x * x * x {
        let a = (x * x * x / n).ln();
        a * a / (2.0 * l * l)
    } else {
        0.0
    }
}

/// Σ_x(n) = Σ(n)·w(n) on 2 ≤ n < x³ from a log-derivative table.
pub fn selberg_smooth(sigma_table: &CoefficientTable, x: f64) -> Result<CoefficientTable> {
    if sigma_table.kind() != TableKind::LogDeriv {
        return Err(Error::ParameterMismatch("expected a log-derivative table"));
    }
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::InvalidParameter("x must be finite and > 1"));
    }
    let x3 = x * x * x;
    // Largest n strictly below x^3.
    let mut top = x3.floor() as usize;
    if (top as f64) >= x3 {
        top -= 1;
    }
    if sigma_table.nmax() < top {
        return Err(Error::Coverage {
            requested: top as f64,
            available: sigma_table.nmax() as f64,
        });
    }
    let len = top.max(1);
    let mut values = vec![Complex64::new(0.0, 0.0); len + 1];
    for n in 2..=len {
        let w = smoothing_weight(n as f64, x);
        if w != 0.0 {
            values[n] = sigma_table.get(n) * w;
        }
    }
    Ok(CoefficientTable {
        kind: TableKind::Smoothed,
        params: *sigma_table.params(),
        values,
        x: Some(x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(t1: f64, t2: f64, z: f64) -> SpectralParams {
        SpectralParams::new(t1, t2, z).unwrap()
    }

    #[test]
    fn mobius_small_values() {
        let mu = mobius_sieve(30).unwrap();
        assert_eq!(mu[1], 1);
        assert_eq!(mu[2], -1);
        assert_eq!(mu[12], 0);
        assert_eq!(mu[30], -1);
    }

    #[test]
    fn mobius_limit_guard() {
        assert!(mobius_sieve(MAX_SIEVE + 1).is_err());
    }

    #[test]
    fn lambda_piecewise_values() {
        let w = lambda_weights(&params(0.0, 0.0, 4.0)).unwrap();
        assert_eq!(w.get(1), 1.0);
        assert_eq!(w.get(2), -1.0);
        // Frozen reference: lambda_6(z=4) = log(16/6)/log 4.
        assert!((w.get(6) - 0.70751874963942190).abs() < 1e-15);
        assert_eq!(w.get(16), 0.0);
        assert_eq!(w.get(4), 0.0); // non-squarefree
        assert!((w.get(5) + 0.839035952556318909).abs() < 1e-15);
    }

    #[test]
    fn lambda_bounded_by_one() {
        for z in [1.5, 2.5, 7.3, 19.0] {
            let w = lambda_weights(&params(0.0, 0.0, z)).unwrap();
            for (_, v) in w.support() {
                assert!(v.abs() <= 1.0 + 1e-15);
            }
        }
    }

    #[test]
    fn divisor_sum_examples() {
        let sieve = Sieve::new(100).unwrap();
        let d6 = complex_divisor_sum(&sieve, 6, Complex64::new(0.0, 0.0)).unwrap();
        assert!((d6 - Complex64::new(4.0, 0.0)).norm() < 1e-14);
        let s4 = complex_divisor_sum(&sieve, 4, Complex64::new(1.0, 0.0)).unwrap();
        assert!((s4 - Complex64::new(7.0, 0.0)).norm() < 1e-12);
        // Brute-force oracle for a = i.
        let a = Complex64::new(0.0, 1.0);
        let brute: Complex64 = [1.0f64, 2.0, 3.0, 6.0]
            .iter()
            .map(|d| (a * d.ln()).exp())
            .sum();
        let v = complex_divisor_sum(&sieve, 6, a).unwrap();
        assert!((v - brute).norm() < 1e-14);
    }

    #[test]
    fn z_coefficients_basics() {
        let p = params(1.0, 2.0, 4.0);
        let table = z_coefficients(&p, 100).unwrap();
        assert!((table.get(1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // lambda_1 + lambda_2 = 0, so c_2 = 0.
        assert!(table.get(2).norm() < 1e-15);
        assert!(table.get(3).norm() < 1e-15);
    }

    #[test]
    fn head_vanishing_below_z() {
        let p = params(0.7, -1.3, 20.0);
        let table = z_coefficients(&p, 400).unwrap();
        for n in 2..20 {
            assert!(
                table.get(n).norm() < 1e-12,
                "c_{n} = {} should vanish",
                table.get(n)
            );
        }
        assert!(table.get(23).norm() > 1e-6); // prime above z survives
    }

    #[test]
    fn log_deriv_degenerate_von_mangoldt() {
        // z = 1.4 (support ends below 2) with T1 = T2 = 0 gives
        // Z = zeta(s)^4/zeta(2s), so Sigma(n) = -4*Lambda(n) + 2*Lambda(sqrt n).
        let p = params(0.0, 0.0, 1.4);
        let c = z_coefficients(&p, 200).unwrap();
        let sig = log_deriv_coefficients(&c).unwrap();
        for prime in [2usize, 3, 5, 7, 11, 13] {
            let expect = -4.0 * (prime as f64).ln();
            assert!(
                (sig.get(prime) - Complex64::new(expect, 0.0)).norm() < 1e-12,
                "Sigma({prime})"
            );
        }
        let expect4 = -2.0 * 2.0f64.ln(); // -4 ln2 + 2 ln2
        assert!((sig.get(4) - Complex64::new(expect4, 0.0)).norm() < 1e-12);
        assert!(sig.get(6).norm() < 1e-12); // not a prime power
        assert!(sig.get(1).norm() == 0.0); // series starts at n = 2
    }

    #[test]
    fn log_deriv_requires_normalized_table() {
        let p = params(0.0, 0.0, 1.4);
        let mut c = z_coefficients(&p, 50).unwrap();
        c.values[1] = Complex64::new(2.0, 0.0);
        assert!(matches!(
            log_deriv_coefficients(&c),
            Err(Error::Normalization)
        ));
    }

    #[test]
    fn smoothing_weight_law() {
        let x = 10.0f64;
        assert_eq!(smoothing_weight(3.0, x), 1.0);
        // Continuity at the breakpoints, and the exact half at x^2.
        let at_x_mid = {
            let a = (x * x * x / x).ln();
            let b = (x * x / x).ln();
            (a * a - 2.0 * b * b) / (2.0 * x.ln() * x.ln())
        };
        assert!((at_x_mid - 1.0).abs() < 1e-12);
        assert!((smoothing_weight(x * x, x) - 0.5).abs() < 1e-12);
        assert_eq!(smoothing_weight(x * x * x, x), 0.0);
        assert_eq!(smoothing_weight(x * x * x + 1.0, x), 0.0);
    }

    #[test]
    fn selberg_smooth_coverage_guard() {
        let p = params(0.0, 0.0, 1.4);
        let c = z_coefficients(&p, 500).unwrap();
        let sig = log_deriv_coefficients(&c).unwrap();
        assert!(matches!(
            selberg_smooth(&sig, 10.0),
            Err(Error::Coverage { .. })
        ));
        let ok = selberg_smooth(&sig, 7.0).unwrap();
        assert_eq!(ok.kind(), TableKind::Smoothed);
        assert_eq!(ok.smoothing_x(), Some(7.0));
        assert_eq!(ok.nmax(), 342); // largest n < 343
    }

    #[test]
    fn hermitian_symmetry_equal_shifts() {
        let p = params(1.7, 1.7, 4.0);
        let table = z_coefficients(&p, 300).unwrap();
        for n in 1..=300 {
            assert!(
                table.get(n).im.abs() < 1e-12,
                "c_{n} should be real, got {}",
                table.get(n)
            );
        }
    }
}
