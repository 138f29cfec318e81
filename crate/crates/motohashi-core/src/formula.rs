//! Assembly of the Selberg-type identity for Z'/Z: the smoothed Dirichlet
//! sum, the signed kernel sums over the singularity inventory, and the
//! residual against the analytic left-hand side.

use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arith::{CoefficientTable, TableKind};
use crate::product::ProductEvaluator;
use crate::singularity::{SingularityClass, SingularityInventory, TruncationPolicy};
use crate::zeta::ZeroTable;
use crate::{check_finite, Error, Result};

/// Evaluation request: smoothing length, evaluation point, truncation.
#[derive(Debug, Clone, Copy)]
pub struct ExplicitFormulaParams {
    pub x: f64,
    pub s: Complex64,
    pub policy: TruncationPolicy,
}

impl ExplicitFormulaParams {
    pub fn new(x: f64, s: Complex64, policy: TruncationPolicy) -> Result<Self> {
        if !(x > 1.0) || !x.is_finite() {
            return Err(Error::InvalidParameter("x must be finite and > 1"));
        }
        check_finite(s)?;
        Ok(ExplicitFormulaParams { x, s, policy })
    }
}

/// Kernel-sum partial per singularity family.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PerClassSums {
    pub s1: Complex64,
    pub s1bar: Complex64,
    pub srho: Complex64,
    pub srhobar: Complex64,
    pub sm2q: Complex64,
    pub sm2qbar: Complex64,
    pub snu: Complex64,
    pub sr: Complex64,
}

impl PerClassSums {
    pub fn get(&self, class: SingularityClass) -> Complex64 {
        match class {
            SingularityClass::S1 => self.s1,
            SingularityClass::S1bar => self.s1bar,
            SingularityClass::Srho => self.srho,
            SingularityClass::Srhobar => self.srhobar,
            SingularityClass::Sm2q => self.sm2q,
            SingularityClass::Sm2qbar => self.sm2qbar,
            SingularityClass::Snu => self.snu,
            SingularityClass::Sr => self.sr,
        }
    }

    fn set(&mut self, class: SingularityClass, v: Complex64) {
        match class {
            SingularityClass::S1 => self.s1 = v,
            SingularityClass::S1bar => self.s1bar = v,
            SingularityClass::Srho => self.srho = v,
            SingularityClass::Srhobar => self.srhobar = v,
            SingularityClass::Sm2q => self.sm2q = v,
            SingularityClass::Sm2qbar => self.sm2qbar = v,
            SingularityClass::Snu => self.snu = v,
            SingularityClass::Sr => self.sr = v,
        }
    }
}

/// Both sides of the identity at one point, with per-family kernel partials
/// and the residual lhs − rhs.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Z'/Z(s), the analytic side.
    pub lhs: Complex64,
    /// Σ_{n<x³} Σ_x(n) n^{−s}.
    pub dirichlet_sum: Complex64,
    /// Kernel sum over the sign-(+1) families S₁ ∪ S̄_ρ ∪ S̄_{−2q} ∪ S_ν.
    pub kernel_sum_plus: Complex64,
    /// Kernel sum over the sign-(−1) families S̄₁ ∪ S_ρ ∪ S_{−2q} ∪ S_r.
    pub kernel_sum_minus: Complex64,
    pub per_class: PerClassSums,
    /// lhs − (dirichlet_sum + kernel_sum_plus − kernel_sum_minus).
    pub residual: Complex64,
    pub policy: TruncationPolicy,
    pub x: f64,
    pub s: Complex64,
}

impl ResidualReport {
    pub fn rhs(&self) -> Complex64 {
        self.dirichlet_sum + self.kernel_sum_plus - self.kernel_sum_minus
    }

    pub fn residual_abs(&self) -> f64 {
        self.residual.norm()
    }
}

/// The cubic kernel x^{u−s}(1−x^{u−s})² / (log²x · (u−s)³).
pub fn kernel_term(u: Complex64, s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::InvalidParameter("x must be finite and > 1"));
    }
    check_finite(u)?;
    check_finite(s)?;
    let w = u - s;
    if w.norm() < 1e-8 {
        return Err(Error::Coincidence { u });
    }
    let lx = x.ln();
    let xw = (w * lx).exp();
    let one = Complex64::new(1.0, 0.0);
    Ok(xw * (one - xw) * (one - xw) / (lx * lx * w * w * w))
}

/// The finite smoothed sum Σ_{2 ≤ n < x³} Σ_x(n) n^{−s}, ascending n.
pub fn dirichlet_side(params: &ExplicitFormulaParams, table: &CoefficientTable) -> Result<Complex64> {
    if table.kind() != TableKind::Smoothed {
        return Err(Error::ParameterMismatch("expected a smoothed table"));
    }
    match table.smoothing_x() {
        Some(x) if x == params.x => {}
        _ => return Err(Error::ParameterMismatch("table built with a different x")),
    }
    let x3 = params.x * params.x * params.x;
    let mut top = x3.floor() as usize;
    if (top as f64) >= x3 {
        top -= 1;
    }
    if table.nmax() < top {
        return Err(Error::Coverage {
            requested: top as f64,
            available: table.nmax() as f64,
        });
    }
    let s = params.s;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 2..=top {
        let c = table.get(n);
        if c.norm_sqr() > 0.0 {
            sum += c * (-s * (n as f64).ln()).exp();
        }
    }
    Ok(sum)
}

fn kahan_add(sum: &mut Complex64, comp: &mut Complex64, term: Complex64) {
    let y = term - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Assembles the full residual report at `params.s`.
///
/// Kernel terms are weighted by multiplicity and accumulated per family with
/// compensated summation over the inventory's fixed (class, Im, Re) order;
/// the family totals are then combined in the listing order of the identity.
/// Points of the inventory closer than 1e-6 to `s` are refused.
pub fn rhs_assemble(
    evaluator: &ProductEvaluator,
    zeros: &ZeroTable,
    params: &ExplicitFormulaParams,
    inventory: &SingularityInventory,
    table: &CoefficientTable,
) -> Result<ResidualReport> {
    if inventory.params != *evaluator.params() {
        return Err(Error::ParameterMismatch(
            "inventory built with different spectral parameters",
        ));
    }
    for p in &inventory.points {
        if (p.location - params.s).norm() < 1e-6 {
            return Err(Error::NearSingularity {
                class: p.class,
                location: p.location,
            });
        }
    }
    let dirichlet_sum = dirichlet_side(params, table)?;
    let lhs = evaluator.z_log_deriv(params.s, zeros)?;

    let mut per_class = PerClassSums::default();
    for class in SingularityClass::ALL {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for point in inventory.class_points(class) {
            let k = kernel_term(point.location, params.s, params.x)?;
            kahan_add(&mut sum, &mut comp, k * point.multiplicity as f64);
        }
        per_class.set(class, sum);
    }
    let kernel_sum_plus = per_class.s1 + per_class.srhobar + per_class.sm2qbar + per_class.snu;
    let kernel_sum_minus = per_class.s1bar + per_class.srho + per_class.sm2q + per_class.sr;
    let rhs = dirichlet_sum + kernel_sum_plus - kernel_sum_minus;
    Ok(ResidualReport {
        lhs,
        dirichlet_sum,
        kernel_sum_plus,
        kernel_sum_minus,
        per_class,
        residual: lhs - rhs,
        policy: params.policy,
        x: params.x,
        s: params.s,
    })
}

/// Residual reports for a grid of requests sharing one evaluator, reusing
/// the inventory and smoothed table across items where the policy and x
/// repeat (items are processed in order; equality is exact).
pub fn residual_sweep(
    evaluator: &ProductEvaluator,
    zeros: &ZeroTable,
    items: &[ExplicitFormulaParams],
) -> Result<Vec<ResidualReport>> {
    let mut reports = Vec::with_capacity(items.len());
    let mut cached_inventory: Option<(TruncationPolicy, SingularityInventory)> = None;
    let mut cached_table: Option<(f64, CoefficientTable)> = None;
    for item in items {
        let inventory = match &cached_inventory {
            Some((policy, inv)) if *policy == item.policy => inv.clone(),
            _ => {
                let inv = evaluator.enumerate_singularities(&item.policy, zeros)?;
                cached_inventory = Some((item.policy, inv.clone()));
                inv
            }
        };
        let table = match &cached_table {
            Some((x, tab)) if *x == item.x => tab.clone(),
            _ => {
                let tab = smoothed_table_for(evaluator, item.x)?;
                cached_table = Some((item.x, tab.clone()));
                tab
            }
        };
        reports.push(rhs_assemble(evaluator, zeros, item, &inventory, &table)?);
    }
    Ok(reports)
}

/// Builds the Σ_x table (coefficients to just below x³, log-derivative
/// recursion, then smoothing).
pub fn smoothed_table_for(evaluator: &ProductEvaluator, x: f64) -> Result<CoefficientTable> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::InvalidParameter("x must be finite and > 1"));
    }
    let x3 = x * x * x;
    let mut top = x3.floor() as usize;
    if (top as f64) >= x3 {
        top -= 1;
    }
    let c = crate::arith::z_coefficients(evaluator.params(), top.max(2))?;
    let sigma = crate::arith::log_deriv_coefficients(&c)?;
    crate::arith::selberg_smooth(&sigma, x)
}

/// Conservative bound on the kernel mass discarded by the truncation policy:
/// the S_ρ/S̄_ρ families beyond `gamma_max` (via the zero-counting density
/// log(T/2π)/2π), the trivial-zero families beyond `q_max` (geometric), and
/// the S_ν grid beyond `k_max` (integral tail per prime). Zeros of K outside
/// the search rectangle are not estimated: no density for them is available.
pub fn kernel_tail_estimate(
    evaluator: &ProductEvaluator,
    policy: &TruncationPolicy,
    s: Complex64,
    x: f64,
) -> f64 {
    let lx2 = x.ln() * x.ln();
    let t = s.im;
    let sigma = s.re;
    let two_pi = 2.0 * core::f64::consts::PI;

    // |kernel(u)| <= x^{Re(u)-sigma} * (1 + x^{Re(u)-sigma})^2 / (lx2 |u-s|^3).
    let kernel_bound = |re_u: f64, dist: f64| -> f64 {
        let a = x.powf(re_u - sigma);
        a * (1.0 + a) * (1.0 + a) / (lx2 * dist * dist * dist)
    };

    // S_rho tail: 4 shifted points per zero at heights ~ ±gamma (+ shift play
    // absorbed by shrinking the distance by the largest shift), plus the
    // S_rho-bar point at height ±gamma/2.
    let shift_slack = evaluator.params().t1().abs().max(evaluator.params().t2().abs())
        + evaluator.params().delta().abs();
    let mut rho_tail = 0.0;
    let mut g = policy.gamma_max;
    let step = 1.0;
    // Direct sum over the density out to where terms stop mattering.
    while g < 1.0e7 {
        let density = ((g / two_pi).ln() / two_pi).max(0.0) * step;
        let d_plus = (g - t.abs() - shift_slack).max(1.0);
        let d_minus = g + t.abs() - shift_slack; // conjugate side, never small
        let per_zero = 4.0 * (kernel_bound(0.5, d_plus) + kernel_bound(0.5, d_minus.max(1.0)))
            + kernel_bound(0.25, (0.5 * g - t.abs() - shift_slack).max(1.0))
            + kernel_bound(0.25, (0.5 * g + t.abs() - shift_slack).max(1.0));
        rho_tail += density * per_zero;
        if density * per_zero < 1e-18 * (1.0 + rho_tail) {
            break;
        }
        g += step;
    }

    // Trivial-zero tails: Re u = -2q decays geometrically in q.
    let mut trivial_tail = 0.0;
    for q in (policy.q_max + 1)..(policy.q_max + 200) {
        let qf = q as f64;
        let dist = ((2.0 * qf + sigma).powi(2)).sqrt().max(1.0);
        let term = 4.0 * kernel_bound(-2.0 * qf, dist) + kernel_bound(-qf, (qf + sigma).abs().max(1.0));
        trivial_tail += term;
        if term < 1e-18 * (1.0 + trivial_tail) {
            break;
        }
    }

    // S_nu tail per prime: heights pi*k/ln p + delta/2, |k| > k_max; bound the
    // sum by the integral 1/(2a(aK - |t|)^2) with a = pi/ln p.
    let mut nu_tail = 0.0;
    for &p in evaluator.primes() {
        let a = core::f64::consts::PI / (p as f64).ln();
        let edge = a * policy.k_max as f64 - t.abs() - evaluator.params().delta().abs();
        if edge <= 1.0 {
            nu_tail = f64::INFINITY;
            break;
        }
        let x0 = x.powf(-sigma);
        let amp = x0 * (1.0 + x0) * (1.0 + x0) / lx2;
        nu_tail += 2.0 * amp / (2.0 * a * edge * edge); // both signs of k
    }

    rho_tail + trivial_tail + nu_tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SpectralParams;

    #[test]
    fn kernel_reference_value() {
        // Frozen: u - s = -ln2/ln10, x = 10 gives -0.8642697617287012.
        let x = 10.0f64;
        let s = Complex64::new(0.0, 0.0);
        let u = Complex64::new(-(2.0f64.ln()) / x.ln(), 0.0);
        let k = kernel_term(u, s, x).unwrap();
        assert!((k - Complex64::new(-0.8642697617287012, 0.0)).norm() < 1e-13, "{k}");
    }

    #[test]
    fn kernel_coincidence_guard() {
        let s = Complex64::new(1.0, 1.0);
        assert!(kernel_term(s + Complex64::new(1e-9, 0.0), s, 10.0).is_err());
    }

    #[test]
    fn kernel_magnitude_bound_left() {
        // For u - s real negative: |k| <= x^{Re w} * 4 / (log^2 x |w|^3).
        let x = 50.0f64;
        let s = Complex64::new(3.0, 0.0);
        for d in [0.5f64, 1.0, 2.0, 7.5] {
            let u = s - Complex64::new(d, 0.0);
            let k = kernel_term(u, s, x).unwrap().norm();
            let bound = x.powf(-d) * 4.0 / (x.ln() * x.ln() * d * d * d);
            assert!(k <= bound * (1.0 + 1e-12), "d = {d}: {k} > {bound}");
        }
    }

    #[test]
    fn kernel_conjugation_symmetry() {
        let u = Complex64::new(0.5, 14.1);
        let s = Complex64::new(2.0, -3.0);
        let a = kernel_term(u, s, 10.0).unwrap();
        let b = kernel_term(u.conj(), s.conj(), 10.0).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn dirichlet_side_empty_below_two() {
        // x^3 < 2: the sum over 2 <= n < x^3 is empty.
        let params = SpectralParams::new(0.0, 0.0, 1.2).unwrap();
        let ev = ProductEvaluator::new(params).unwrap();
        let x = 1.2f64;
        let table = smoothed_table_for(&ev, x).unwrap();
        let policy = TruncationPolicy::default_for(Complex64::new(3.0, 0.0));
        let efp = ExplicitFormulaParams::new(x, Complex64::new(3.0, 0.0), policy).unwrap();
        let sum = dirichlet_side(&efp, &table).unwrap();
        assert_eq!(sum, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn dirichlet_side_x_mismatch() {
        let params = SpectralParams::new(0.0, 0.0, 1.4).unwrap();
        let ev = ProductEvaluator::new(params).unwrap();
        let table = smoothed_table_for(&ev, 5.0).unwrap();
        let policy = TruncationPolicy::default_for(Complex64::new(3.0, 0.0));
        let efp = ExplicitFormulaParams::new(6.0, Complex64::new(3.0, 0.0), policy).unwrap();
        assert!(matches!(
            dirichlet_side(&efp, &table),
            Err(Error::ParameterMismatch(_))
        ));
    }
}
