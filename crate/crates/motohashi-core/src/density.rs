//! Zero-density counting for K and finite-T moment quadratures.

use alloc::vec::Vec;

use num_complex::Complex64;
// f64 math through the trait in no_std builds; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::product::ProductEvaluator;
use crate::singularity::RectRegion;
use crate::zeta::zeta;
use crate::{Error, Result, SpectralParams};

/// Right edge of the counting rectangle; K has no zeros to the right of it
/// at desk scale (certified at runtime by the boundary-modulus check).
pub const SIGMA_RIGHT: f64 = 3.0;

/// Query for N_K(σ, T): zeros r of K with Re r > σ, 0 < Im r ≤ T.
#[derive(Debug, Clone, Copy)]
pub struct DensityQuery {
    pub sigma: f64,
    pub t: f64,
    pub params: SpectralParams,
}

impl DensityQuery {
    pub fn new(sigma: f64, t: f64, params: SpectralParams) -> Result<Self> {
        if !(sigma >= 0.5) || !sigma.is_finite() {
            return Err(Error::InvalidParameter("sigma must be >= 1/2"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter("T must be positive"));
        }
        if sigma >= SIGMA_RIGHT {
            return Err(Error::InvalidParameter("sigma must be below the right edge 3"));
        }
        Ok(DensityQuery { sigma, t, params })
    }
}

/// N_K(σ, T) with multiplicity, via the argument-principle zero search on
/// (σ, 3] × (0, T]. Errors suggest nudging σ or T by 1e-3 when the boundary
/// runs too close to a zero or pole.
pub fn count_k_zeros(evaluator: &ProductEvaluator, query: &DensityQuery) -> Result<u32> {
    if *evaluator.params() != query.params {
        return Err(Error::ParameterMismatch(
            "evaluator and query parameters differ",
        ));
    }
    if evaluator.params().is_degenerate() {
        return Ok(0);
    }
    let rect = RectRegion::new(query.sigma, SIGMA_RIGHT, 0.0, query.t)?;
    let zeros = evaluator.find_k_zeros(&rect).map_err(|e| match e {
        Error::BoundaryTooClose(_) => Error::BoundaryTooClose(
            "counting rectangle grazes a zero or pole of K; nudge sigma or T by 1e-3",
        ),
        other => other,
    })?;
    let mut count = 0u32;
    for (z, m) in zeros {
        if z.re > query.sigma && z.im > 0.0 && z.im <= query.t {
            count += m;
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Sample abscissas and the adjusted step for composite Simpson on [a, b]
/// with an even number of panels and step ≤ max_step.
pub fn simpson_points(a: f64, b: f64, max_step: f64) -> (Vec<f64>, f64) {
    let span = b - a;
    let mut n = (span / max_step).ceil() as usize;
    n = n.max(2);
    if n % 2 == 1 {
        n += 1;
    }
    let h = span / n as f64;
    let pts = (0..=n).map(|i| a + h * i as f64).collect();
    (pts, h)
}

/// Composite Simpson combination for samples on a uniform grid (odd length).
pub fn simpson_combine(h: f64, values: &[f64]) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n >= 2 && n % 2 == 0);
    let mut sum = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

/// |ζ(1/2 + it)|^{2k}, the moment integrand on the critical line.
pub fn zeta_moment_integrand(t: f64, k: f64) -> Result<f64> {
    let z = zeta(Complex64::new(0.5, t))?;
    Ok(z.norm_sqr().powf(k))
}

/// Query for the critical-line moment ∫₀^T |ζ(1/2+it)|^{2k} dt.
#[derive(Debug, Clone, Copy)]
pub struct MomentQuery {
    pub k: f64,
    pub t: f64,
    pub quad_step: f64,
}

impl MomentQuery {
    pub fn new(k: f64, t: f64, quad_step: f64) -> Result<Self> {
        if !(k > 0.0) || k > 4.0 {
            return Err(Error::InvalidParameter("k must lie in (0, 4]"));
        }
        if !(t > 0.0) || t > 500.0 {
            return Err(Error::InvalidParameter("T must lie in (0, 500]"));
        }
        if !(quad_step > 0.0) || quad_step > 0.05 {
            return Err(Error::InvalidParameter("quad_step must lie in (0, 0.05]"));
        }
        Ok(MomentQuery { k, t, quad_step })
    }
}

/// Moment value plus diagnostics: the ratio to T·(log T)^{k²} (None for
/// T ≤ 1 where the normalization degenerates) and the Richardson step check.
#[derive(Debug, Clone, Copy)]
pub struct MomentResult {
    /// Simpson value at the halved step (the better of the two).
    pub value: f64,
    /// value / (T (log T)^{k²}), when defined.
    pub ratio: Option<f64>,
    /// |value(h) − value(h/2)| / value(h/2).
    pub step_change: f64,
    /// True when the step check exceeds 0.5% (step too coarse).
    pub step_warning: bool,
}

/// The two Simpson grids (full step and half step) a moment run samples.
pub fn moment_grids(q: &MomentQuery) -> ((Vec<f64>, f64), (Vec<f64>, f64)) {
    (
        simpson_points(0.0, q.t, q.quad_step),
        simpson_points(0.0, q.t, q.quad_step / 2.0),
    )
}

/// Assembles the moment result from pre-evaluated integrand samples on the
/// grids of [`moment_grids`] (lets front ends farm the sampling out to
/// threads and still reproduce the sequential result bit for bit).
pub fn moment_from_samples(
    q: &MomentQuery,
    h_coarse: f64,
    coarse: &[f64],
    h_fine: f64,
    fine: &[f64],
) -> MomentResult {
    let coarse_v = simpson_combine(h_coarse, coarse);
    let fine_v = simpson_combine(h_fine, fine);
    let denom = fine_v.abs().max(f64::MIN_POSITIVE);
    let step_change = (coarse_v - fine_v).abs() / denom;
    let ratio = if q.t > 1.0 {
        Some(fine_v / (q.t * q.t.ln().powf(q.k * q.k)))
    } else {
        None
    };
    MomentResult {
        value: fine_v,
        ratio,
        step_change,
        step_warning: step_change > 0.005,
    }
}

/// Composite-Simpson moment with a half-step self check.
pub fn zeta_moment(q: &MomentQuery) -> Result<MomentResult> {
    let ((pts_c, h_c), (pts_f, h_f)) = moment_grids(q);
    let mut coarse = Vec::with_capacity(pts_c.len());
    for t in pts_c {
        coarse.push(zeta_moment_integrand(t, q.k)?);
    }
    let mut fine = Vec::with_capacity(pts_f.len());
    for t in pts_f {
        fine.push(zeta_moment_integrand(t, q.k)?);
    }
    Ok(moment_from_samples(q, h_c, &coarse, h_f, &fine))
}

// ---------------------------------------------------------------------------
// f_X moments
// ---------------------------------------------------------------------------

/// Query for ∫₀^T |f_X(σ_line + it)|^{1/κ} dt.
#[derive(Debug, Clone, Copy)]
pub struct FxMomentQuery {
    pub kappa: f64,
    pub t: f64,
    pub sigma_line: f64,
    pub quad_step: f64,
}

impl FxMomentQuery {
    pub fn new(kappa: f64, t: f64, sigma_line: f64, quad_step: f64) -> Result<Self> {
        if !(kappa > 0.5) || !(kappa < 0.75) {
            return Err(Error::InvalidParameter("kappa must lie in (1/2, 3/4)"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter("T must be positive"));
        }
        if !(sigma_line > 0.5) || !sigma_line.is_finite() {
            return Err(Error::InvalidParameter("sigma_line must exceed 1/2"));
        }
        if !(quad_step > 0.0) || quad_step > 0.05 {
            return Err(Error::InvalidParameter("quad_step must lie in (0, 0.05]"));
        }
        Ok(FxMomentQuery {
            kappa,
            t,
            sigma_line,
            quad_step,
        })
    }
}

/// f_X moment value with the excluded singular windows, if any.
#[derive(Debug, Clone)]
pub struct FxMomentResult {
    pub value: f64,
    /// Skipped (lo, hi) ordinate windows around singular points on the line.
    pub excluded: Vec<(f64, f64)>,
}

/// Quadrature of |f_X(σ_line + it)|^{1/κ} over (0, T], skipping
/// 1e-3-neighborhoods of singular ordinates on the line (only the shifted
/// poles at Re u = 1 can intersect; the poles of K sit on Re s = 0 and the
/// zeros of J are regular points of f_X).
pub fn fx_moment(evaluator: &ProductEvaluator, q: &FxMomentQuery) -> Result<FxMomentResult> {
    const WINDOW: f64 = 1e-3;
    let mut windows: Vec<(f64, f64)> = Vec::new();
    if (q.sigma_line - 1.0).abs() < WINDOW {
        for u in evaluator.s1_points() {
            if u.im > -WINDOW && u.im < q.t + WINDOW {
                windows.push(((u.im - WINDOW).max(0.0), (u.im + WINDOW).min(q.t)));
            }
        }
        windows.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        windows.dedup_by(|a, b| {
            if a.0 <= b.1 {
                b.1 = b.1.max(a.1);
                true
            } else {
                false
            }
        });
    }
    let excluded_len: f64 = windows.iter().map(|(a, b)| b - a).sum();
    if excluded_len > 0.1 * q.t {
        return Err(Error::BoundaryTooClose(
            "excluded pole windows cover more than 10% of the integration range",
        ));
    }

    let mut segments: Vec<(f64, f64)> = Vec::new();
    let mut cursor = 0.0;
    for &(a, b) in &windows {
        if a > cursor {
            segments.push((cursor, a));
        }
        cursor = cursor.max(b);
    }
    if cursor < q.t {
        segments.push((cursor, q.t));
    }

    let mut value = 0.0;
    for (a, b) in segments {
        if b - a < 1e-12 {
            continue;
        }
        let (pts, h) = simpson_points(a, b, q.quad_step);
        let mut vals = Vec::with_capacity(pts.len());
        for t in pts {
            let f = evaluator.f_x_eval(Complex64::new(q.sigma_line, t))?;
            vals.push(f.norm().powf(1.0 / q.kappa));
        }
        value += simpson_combine(h, &vals);
    }
    Ok(FxMomentResult {
        value,
        excluded: windows,
    })
}

// ---------------------------------------------------------------------------
// Large-value scan
// ---------------------------------------------------------------------------

/// One row of the |JK| grid scan on σ₀ = 1 − E₀/L.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub t0: f64,
    pub e0: f64,
    pub sigma0: f64,
    /// |J·K| at the grid point, or None when a singularity guard fired.
    pub abs_jk: Option<f64>,
    /// Guard description for skipped points, empty otherwise.
    pub note: &'static str,
}

/// The deterministic grid of (t₀, E₀) pairs a scan visits, row-major.
pub fn scan_grid(
    t_range: (f64, f64),
    e_range: (f64, f64),
    grid_t: usize,
    grid_e: usize,
) -> Result<Vec<(f64, f64)>> {
    if grid_t == 0 || grid_e == 0 || grid_t * grid_e > 10_000 {
        return Err(Error::LimitTooLarge {
            requested: (grid_t * grid_e) as u64,
            max: 10_000,
        });
    }
    if !(t_range.0 <= t_range.1) || !(e_range.0 <= e_range.1) {
        return Err(Error::InvalidParameter("ranges must be ordered"));
    }
    let mut grid = Vec::with_capacity(grid_t * grid_e);
    for i in 0..grid_t {
        let t0 = if grid_t == 1 {
            t_range.0
        } else {
            t_range.0 + (t_range.1 - t_range.0) * i as f64 / (grid_t - 1) as f64
        };
        for j in 0..grid_e {
            let e0 = if grid_e == 1 {
                e_range.0
            } else {
                e_range.0 + (e_range.1 - e_range.0) * j as f64 / (grid_e - 1) as f64
            };
            grid.push((t0, e0));
        }
    }
    Ok(grid)
}

/// One scan point: |J·K| at σ₀ = 1 − E₀/scale_l; singularity guards produce
/// a skip note instead of failing the row.
pub fn scan_point(
    evaluator: &ProductEvaluator,
    t0: f64,
    e0: f64,
    scale_l: f64,
) -> Result<ScanRow> {
    if !(scale_l > 0.0) || !scale_l.is_finite() {
        return Err(Error::InvalidParameter("scale L must be positive"));
    }
    let sigma0 = 1.0 - e0 / scale_l;
    let s = Complex64::new(sigma0, t0);
    match evaluator.z_eval(s) {
        Ok(v) => Ok(ScanRow {
            t0,
            e0,
            sigma0,
            abs_jk: Some(v.norm()),
            note: "",
        }),
        Err(Error::NearSingularity { .. }) | Err(Error::LocalPole { .. }) | Err(Error::PoleAtOne) => {
            Ok(ScanRow {
                t0,
                e0,
                sigma0,
                abs_jk: None,
                note: "singularity guard",
            })
        }
        Err(e) => Err(e),
    }
}

/// Evaluates |J·K| on the (t₀, E₀) grid with σ₀ = 1 − E₀/scale_l. Points
/// refused by the singularity guards are recorded, not fatal.
pub fn largevalue_scan(
    evaluator: &ProductEvaluator,
    t_range: (f64, f64),
    e_range: (f64, f64),
    grid_t: usize,
    grid_e: usize,
    scale_l: f64,
) -> Result<Vec<ScanRow>> {
    let grid = scan_grid(t_range, e_range, grid_t, grid_e)?;
    let mut rows = Vec::with_capacity(grid.len());
    for (t0, e0) in grid {
        rows.push(scan_point(evaluator, t0, e0, scale_l)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_matches_polynomial() {
        // Simpson is exact on cubics.
        let (pts, h) = simpson_points(0.0, 2.0, 0.05);
        let vals: Vec<f64> = pts.iter().map(|&t| t * t * t - t + 2.0).collect();
        let got = simpson_combine(h, &vals);
        assert!((got - (4.0 - 2.0 + 4.0)).abs() < 1e-12);
    }

    #[test]
    fn moment_query_validation() {
        assert!(MomentQuery::new(1.0, 100.0, 0.04).is_ok());
        assert!(MomentQuery::new(0.0, 100.0, 0.04).is_err());
        assert!(MomentQuery::new(1.0, 600.0, 0.04).is_err());
        assert!(MomentQuery::new(1.0, 100.0, 0.2).is_err());
    }

    #[test]
    fn small_t_moment_is_small() {
        let q = MomentQuery::new(1.0, 0.05, 0.05).unwrap();
        let r = zeta_moment(&q).unwrap();
        // |zeta(1/2)|^2 is about 2.13, so the integral over (0, 0.05) is ~0.1.
        assert!(r.value > 0.0 && r.value < 0.2);
        assert!(r.ratio.is_none());
    }

    #[test]
    fn moment_nonnegative_and_monotone() {
        let a = zeta_moment(&MomentQuery::new(1.0, 10.0, 0.05).unwrap()).unwrap();
        let b = zeta_moment(&MomentQuery::new(1.0, 20.0, 0.05).unwrap()).unwrap();
        assert!(a.value >= 0.0);
        assert!(b.value >= a.value);
    }

    #[test]
    fn density_query_validation() {
        let p = SpectralParams::new(0.0, 0.0, 1.4).unwrap();
        assert!(DensityQuery::new(0.4, 10.0, p).is_err());
        assert!(DensityQuery::new(0.6, -1.0, p).is_err());
        assert!(DensityQuery::new(0.6, 10.0, p).is_ok());
    }

    #[test]
    fn degenerate_count_is_zero() {
        let p = SpectralParams::new(0.0, 0.0, 1.4).unwrap();
        let ev = ProductEvaluator::new(p).unwrap();
        let q = DensityQuery::new(0.6, 25.0, p).unwrap();
        assert_eq!(count_k_zeros(&ev, &q).unwrap(), 0);
    }

    #[test]
    fn fx_query_validation() {
        assert!(FxMomentQuery::new(0.6, 10.0, 1.5, 0.05).is_ok());
        assert!(FxMomentQuery::new(0.5, 10.0, 1.5, 0.05).is_err());
        assert!(FxMomentQuery::new(0.76, 10.0, 1.5, 0.05).is_err());
        assert!(FxMomentQuery::new(0.6, 10.0, 0.5, 0.05).is_err());
    }

    #[test]
    fn scan_single_point_matches_direct() {
        let p = SpectralParams::new(1.0, 2.0, 4.0).unwrap();
        let ev = ProductEvaluator::new(p).unwrap();
        let rows = largevalue_scan(&ev, (5.0, 5.0), (0.5, 0.5), 1, 1, 10.0).unwrap();
        assert_eq!(rows.len(), 1);
        let direct = ev.z_eval(Complex64::new(0.95, 5.0)).unwrap().norm();
        assert_eq!(rows[0].abs_jk, Some(direct));
    }
}
