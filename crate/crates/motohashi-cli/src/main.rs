//! Command-line front end for the J·K product engine.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use motohashi_cli::cache::{self, CacheKey};
use motohashi_cli::config::{resolve, FileConfig, OutputFormat, RunConfig};
use motohashi_cli::emit::{fmt_f64, to_json_pretty, Cx, Table};
use motohashi_cli::{par_map_ordered, zeros_file};
use motohashi_core::arith::{log_deriv_coefficients, smoothing_weight, z_coefficients};
use motohashi_core::density::{
    count_k_zeros, fx_moment, moment_from_samples, moment_grids, scan_grid, scan_point,
    zeta_moment_integrand, DensityQuery, FxMomentQuery, MomentQuery,
};
use motohashi_core::formula::{rhs_assemble, smoothed_table_for, ExplicitFormulaParams};
use motohashi_core::product::ProductEvaluator;
use motohashi_core::singularity::{RectRegion, TruncationPolicy};
use motohashi_core::zeta::{hardy_z, refine_bracket, ZeroTable};
use motohashi_core::Complex64;

#[derive(Parser)]
#[command(
    name = "motohashi",
    version,
    about = "Shifted-zeta product engine: evaluate J, K and Z = J*K, build coefficient tables, enumerate singularities, verify the explicit formula, count K zeros, and integrate moments"
)]
struct Cli {
    /// First zeta shift T1.
    #[arg(long, global = true)]
    t1: Option<f64>,
    /// Second zeta shift T2.
    #[arg(long, global = true)]
    t2: Option<f64>,
    /// Mollifier length z (> 1; moduli d < z^2 contribute).
    #[arg(long, global = true)]
    z: Option<f64>,
    /// Zeros file: ascending ordinates, one per line, '#' comments.
    #[arg(long, global = true)]
    zeros_file: Option<PathBuf>,
    /// Cache directory (env MOTOHASHI_CACHE_DIR overrides the default).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format override where the command supports both.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Worker threads for sample evaluation (results are identical for any
    /// thread count).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML config file; explicit flags win over file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate J, K, Z = J*K and Z'/Z at a point.
    Eval {
        /// Evaluation point as RE,IM.
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Emit the coefficient table c_n, Sigma(n) and the smoothing weight.
    Coeffs {
        #[arg(long)]
        nmax: usize,
        /// Smoothing length for the weight column.
        #[arg(long, default_value_t = 10.0)]
        x: f64,
    },
    /// Enumerate the singularities of Z'/Z inside a truncation window.
    Singularities {
        #[arg(long, default_value_t = 200.0)]
        gamma_max: f64,
        #[arg(long, default_value_t = 50)]
        qmax: u32,
        #[arg(long, default_value_t = 200)]
        kmax: u32,
        /// K-zero search window as RE_MIN,RE_MAX,IM_MIN,IM_MAX.
        #[arg(long, value_parser = parse_rect)]
        rect: Option<RectRegion>,
    },
    /// Assemble both sides of the explicit formula and report the residual.
    VerifyEf {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 200.0)]
        gamma_max: f64,
        #[arg(long, default_value_t = 50)]
        qmax: u32,
        #[arg(long, default_value_t = 200)]
        kmax: u32,
        /// Defaults to [-1, 3] x [Im s - 50, Im s + 50].
        #[arg(long, value_parser = parse_rect)]
        rect: Option<RectRegion>,
    },
    /// Locate critical-line zero ordinates by Hardy-function sign changes.
    ScanZeros {
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Count zeros of K with Re r > sigma, 0 < Im r <= T.
    Nk {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Critical-line moment integral of |zeta(1/2+it)|^{2k}.
    Moments {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Integral of |f_X(sigma_line + it)|^{1/kappa} over (0, T].
    FxIntegral {
        #[arg(long)]
        sigma_line: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Grid scan of |J*K| on sigma0 = 1 - E0/L.
    LargevalueScan {
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        e_min: f64,
        #[arg(long)]
        e_max: f64,
        #[arg(long)]
        grid_t: usize,
        #[arg(long)]
        grid_e: usize,
        /// Scale L standing in for log log T in sigma0 = 1 - E0/L.
        #[arg(long)]
        scale_l: f64,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("expected RE,IM".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| "bad real part")?;
    let im: f64 = parts[1].trim().parse().map_err(|_| "bad imaginary part")?;
    Ok(Complex64::new(re, im))
}

fn parse_rect(text: &str) -> Result<RectRegion, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err("expected RE_MIN,RE_MAX,IM_MIN,IM_MAX".into());
    }
    let vals: Result<Vec<f64>, String> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| "bad number".to_string()))
        .collect();
    let v = vals?;
    RectRegion::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

/// Error wrapper carrying the exit status (2 precondition, 3 inconclusive).
struct CliError {
    exit: i32,
    kind: String,
    message: String,
}

impl From<motohashi_core::Error> for CliError {
    fn from(e: motohashi_core::Error) -> Self {
        CliError {
            exit: if e.is_inconclusive() { 3 } else { 2 },
            kind: error_kind(&e).to_string(),
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError {
            exit: 2,
            kind: "usage".into(),
            message: format!("{e:#}"),
        }
    }
}

fn error_kind(e: &motohashi_core::Error) -> &'static str {
    use motohashi_core::Error::*;
    match e {
        PoleAtOne => "pole-at-one",
        NotFinite => "not-finite",
        NearSingularity { .. } => "near-singularity",
        LocalPole { .. } => "local-pole",
        LimitTooLarge { .. } => "limit-too-large",
        InvalidParameter(_) => "invalid-parameter",
        Normalization => "normalization",
        Coverage { .. } => "coverage",
        ParameterMismatch(_) => "parameter-mismatch",
        NoSignChange { .. } => "no-sign-change",
        BoundaryTooClose(_) => "boundary-too-close",
        NonConvergence(_) => "non-convergence",
        Inconclusive(_) => "inconclusive",
        OffGridCandidate(_) => "off-grid-candidate",
        Coincidence { .. } => "coincidence",
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            let payload = serde_json::json!({
                "error": err.kind,
                "message": err.message,
                "exit": err.exit,
            });
            eprintln!("{payload}");
            std::process::exit(err.exit);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let cfg = resolve(
        &file_cfg,
        cli.t1,
        cli.t2,
        cli.z,
        cli.zeros_file,
        cli.cache_dir,
        cli.out,
        cli.output,
        cli.threads,
    )?;
    let artifact = dispatch(&cli.command, &cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, artifact).map_err(|e| CliError {
            exit: 2,
            kind: "io".into(),
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => {
            print!("{artifact}");
        }
    }
    Ok(())
}

fn load_zeros(cfg: &RunConfig) -> Result<ZeroTable, CliError> {
    zeros_file::ingest_zeros(&cfg.zeros_path).map_err(|e| CliError {
        exit: 2,
        kind: "zeros-file".into(),
        message: e.to_string(),
    })
}

fn want(
    cfg: &RunConfig,
    default: OutputFormat,
    allows_csv: bool,
) -> Result<OutputFormat, CliError> {
    match cfg.output {
        None => Ok(default),
        Some(OutputFormat::Json) => Ok(OutputFormat::Json),
        Some(OutputFormat::Csv) if allows_csv => Ok(OutputFormat::Csv),
        Some(OutputFormat::Csv) => Err(CliError {
            exit: 2,
            kind: "usage".into(),
            message: "this command has no CSV form".into(),
        }),
    }
}

fn render(table: Table, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    }
}

#[derive(Serialize)]
struct ParamsOut {
    t1: f64,
    t2: f64,
    z: f64,
}

#[derive(Serialize)]
struct EvalOut {
    s: Cx,
    params: ParamsOut,
    j: Option<Cx>,
    k: Cx,
    z: Option<Cx>,
    f_x: Option<Cx>,
    z_log_deriv: Option<Cx>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct PolicyOut {
    gamma_max: f64,
    q_max: u32,
    k_max: u32,
    rect: [f64; 4],
}

#[derive(Serialize)]
struct SingularityOut {
    class: &'static str,
    re: f64,
    im: f64,
    sign: i8,
    multiplicity: u32,
}

#[derive(Serialize)]
struct PerClassOut {
    s1: Cx,
    s1bar: Cx,
    srho: Cx,
    srhobar: Cx,
    sm2q: Cx,
    sm2qbar: Cx,
    snu: Cx,
    sr: Cx,
}

#[derive(Serialize)]
struct VerifyOut {
    s: Cx,
    x: f64,
    params: ParamsOut,
    policy: PolicyOut,
    lhs: Cx,
    dirichlet_sum: Cx,
    kernel_sum_plus: Cx,
    kernel_sum_minus: Cx,
    per_class: PerClassOut,
    rhs: Cx,
    residual: Cx,
    residual_abs: f64,
}

fn params_out(cfg: &RunConfig) -> ParamsOut {
    ParamsOut {
        t1: cfg.spectral.t1(),
        t2: cfg.spectral.t2(),
        z: cfg.spectral.z(),
    }
}

fn policy_out(p: &TruncationPolicy) -> PolicyOut {
    PolicyOut {
        gamma_max: p.gamma_max,
        q_max: p.q_max,
        k_max: p.k_max,
        rect: [p.rect.re_min, p.rect.re_max, p.rect.im_min, p.rect.im_max],
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<String, CliError> {
    match command {
        Command::Eval { s } => {
            want(cfg, OutputFormat::Json, false)?;
            let zeros = load_zeros(cfg)?;
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let mut warnings = Vec::new();
            let k = ev.k_eval(*s)?;
            let j = match ev.j_eval(*s) {
                Ok(v) => Some(v),
                Err(e) => {
                    warnings.push(format!("j: {e}"));
                    None
                }
            };
            let z = j.map(|jv| jv * k);
            let f_x = z.map(|zv| zv - Complex64::new(1.0, 0.0));
            let z_log_deriv = match ev.z_log_deriv(*s, &zeros) {
                Ok(v) => Some(v),
                Err(e) => {
                    warnings.push(format!("z_log_deriv: {e}"));
                    None
                }
            };
            Ok(to_json_pretty(&EvalOut {
                s: (*s).into(),
                params: params_out(cfg),
                j: j.map(Into::into),
                k: k.into(),
                z: z.map(Into::into),
                f_x: f_x.map(Into::into),
                z_log_deriv: z_log_deriv.map(Into::into),
                warnings,
            }))
        }

        Command::Coeffs { nmax, x } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            if *nmax < 2 {
                return Err(CliError {
                    exit: 2,
                    kind: "usage".into(),
                    message: "--nmax must be at least 2".into(),
                });
            }
            let key = CacheKey::new("coeffs")
                .f64("t1", cfg.spectral.t1())
                .f64("t2", cfg.spectral.t2())
                .f64("z", cfg.spectral.z())
                .u64("nmax", *nmax as u64)
                .f64("x", *x)
                .text(
                    "format",
                    if format == OutputFormat::Csv { "csv" } else { "json" },
                );
            if let Some(hit) = cache::load(&cfg.cache_dir, &key) {
                eprintln!("cache hit: {}", key.describe());
                return Ok(hit);
            }
            let c = z_coefficients(&cfg.spectral, *nmax)?;
            let sigma = log_deriv_coefficients(&c)?;
            let mut table = Table::new(vec![
                "n",
                "re_c",
                "im_c",
                "re_sigma",
                "im_sigma",
                "weight_x",
            ]);
            for n in 1..=*nmax {
                let cv = c.get(n);
                let sv = sigma.get(n);
                table.push(vec![
                    n.to_string(),
                    fmt_f64(cv.re),
                    fmt_f64(cv.im),
                    fmt_f64(sv.re),
                    fmt_f64(sv.im),
                    fmt_f64(smoothing_weight(n as f64, *x)),
                ]);
            }
            let artifact = render(table, format);
            if let Err(e) = cache::store(&cfg.cache_dir, &key, &artifact) {
                eprintln!("cache store failed: {e}");
            }
            Ok(artifact)
        }

        Command::Singularities {
            gamma_max,
            qmax,
            kmax,
            rect,
        } => {
            want(cfg, OutputFormat::Json, false)?;
            let zeros = load_zeros(cfg)?;
            let rect = rect.unwrap_or(RectRegion {
                re_min: -1.0,
                re_max: 3.0,
                im_min: -50.0,
                im_max: 50.0,
            });
            let policy = TruncationPolicy::new(*gamma_max, *qmax, *kmax, rect)?;
            let zeros_digest = std::fs::read(&cfg.zeros_path)
                .map(|bytes| {
                    use sha2::{Digest, Sha256};
                    format!("{:x}", Sha256::digest(&bytes))
                })
                .unwrap_or_default();
            let key = CacheKey::new("singularities")
                .f64("t1", cfg.spectral.t1())
                .f64("t2", cfg.spectral.t2())
                .f64("z", cfg.spectral.z())
                .f64("gamma_max", *gamma_max)
                .u64("qmax", *qmax as u64)
                .u64("kmax", *kmax as u64)
                .f64("re_min", rect.re_min)
                .f64("re_max", rect.re_max)
                .f64("im_min", rect.im_min)
                .f64("im_max", rect.im_max)
                .text("zeros", &zeros_digest);
            if let Some(hit) = cache::load(&cfg.cache_dir, &key) {
                eprintln!("cache hit: {}", key.describe());
                return Ok(hit);
            }
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let inventory = ev.enumerate_singularities(&policy, &zeros)?;
            for w in &inventory.warnings {
                eprintln!(
                    "collision warning: {} and {} within {:.3e}",
                    w.first.class.name(),
                    w.second.class.name(),
                    w.distance
                );
            }
            let points: Vec<SingularityOut> = inventory
                .points
                .iter()
                .map(|p| SingularityOut {
                    class: p.class.name(),
                    re: p.location.re,
                    im: p.location.im,
                    sign: p.sign(),
                    multiplicity: p.multiplicity,
                })
                .collect();
            let artifact = to_json_pretty(&points);
            if let Err(e) = cache::store(&cfg.cache_dir, &key, &artifact) {
                eprintln!("cache store failed: {e}");
            }
            Ok(artifact)
        }

        Command::VerifyEf {
            s,
            x,
            gamma_max,
            qmax,
            kmax,
            rect,
        } => {
            want(cfg, OutputFormat::Json, false)?;
            let zeros = load_zeros(cfg)?;
            let rect = rect.unwrap_or(RectRegion {
                re_min: -1.0,
                re_max: 3.0,
                im_min: s.im - 50.0,
                im_max: s.im + 50.0,
            });
            let policy = TruncationPolicy::new(*gamma_max, *qmax, *kmax, rect)?;
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let efp = ExplicitFormulaParams::new(*x, *s, policy)?;
            let table = smoothed_table_for(&ev, *x)?;
            let inventory = ev.enumerate_singularities(&policy, &zeros)?;
            let report = rhs_assemble(&ev, &zeros, &efp, &inventory, &table)?;
            Ok(to_json_pretty(&VerifyOut {
                s: (*s).into(),
                x: *x,
                params: params_out(cfg),
                policy: policy_out(&policy),
                lhs: report.lhs.into(),
                dirichlet_sum: report.dirichlet_sum.into(),
                kernel_sum_plus: report.kernel_sum_plus.into(),
                kernel_sum_minus: report.kernel_sum_minus.into(),
                per_class: PerClassOut {
                    s1: report.per_class.s1.into(),
                    s1bar: report.per_class.s1bar.into(),
                    srho: report.per_class.srho.into(),
                    srhobar: report.per_class.srhobar.into(),
                    sm2q: report.per_class.sm2q.into(),
                    sm2qbar: report.per_class.sm2qbar.into(),
                    snu: report.per_class.snu.into(),
                    sr: report.per_class.sr.into(),
                },
                rhs: report.rhs().into(),
                residual: report.residual.into(),
                residual_abs: report.residual_abs(),
            }))
        }

        Command::ScanZeros {
            t_min,
            t_max,
            step,
            tol,
        } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            if !(*t_min >= 2.0) || !(*t_max > *t_min) || *t_max > 2000.0 {
                return Err(CliError {
                    exit: 2,
                    kind: "usage".into(),
                    message: "need 2 <= t-min < t-max <= 2000".into(),
                });
            }
            if !(*step > 0.0) || *step > 0.5 {
                return Err(CliError {
                    exit: 2,
                    kind: "usage".into(),
                    message: "--step must lie in (0, 0.5]".into(),
                });
            }
            let n = ((t_max - t_min) / step).ceil() as usize;
            let ts: Vec<f64> = (0..=n)
                .map(|i| (t_min + i as f64 * step).min(*t_max))
                .collect();
            let samples = par_map_ordered(cfg.threads, ts.clone(), |t| hardy_z(*t));
            let mut brackets = Vec::new();
            for i in 0..n {
                let (a, b) = match (&samples[i], &samples[i + 1]) {
                    (Ok(a), Ok(b)) => (*a, *b),
                    (Err(e), _) | (_, Err(e)) => return Err(e.clone().into()),
                };
                if a == 0.0 || a.signum() != b.signum() {
                    brackets.push((ts[i], ts[i + 1]));
                }
            }
            let tol = *tol;
            let refined = par_map_ordered(cfg.threads, brackets, |(a, b)| {
                refine_bracket(*a, *b, tol)
            });
            let mut table = Table::new(vec!["index", "gamma"]);
            for (i, r) in refined.into_iter().enumerate() {
                let gamma = r?;
                table.push(vec![(i + 1).to_string(), fmt_f64(gamma)]);
            }
            Ok(render(table, format))
        }

        Command::Nk { sigma, t } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let query = DensityQuery::new(*sigma, *t, cfg.spectral)?;
            let count = count_k_zeros(&ev, &query)?;
            let mut table = Table::new(vec!["sigma", "t_max", "count"]);
            table.push(vec![fmt_f64(*sigma), fmt_f64(*t), count.to_string()]);
            Ok(render(table, format))
        }

        Command::Moments { k, t, step } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            let query = MomentQuery::new(*k, *t, *step)?;
            let ((pts_c, h_c), (pts_f, h_f)) = moment_grids(&query);
            let kk = *k;
            let coarse: Result<Vec<f64>, motohashi_core::Error> =
                par_map_ordered(cfg.threads, pts_c, |t| zeta_moment_integrand(*t, kk))
                    .into_iter()
                    .collect();
            let fine: Result<Vec<f64>, motohashi_core::Error> =
                par_map_ordered(cfg.threads, pts_f, |t| zeta_moment_integrand(*t, kk))
                    .into_iter()
                    .collect();
            let result = moment_from_samples(&query, h_c, &coarse?, h_f, &fine?);
            let mut table = Table::new(vec![
                "k",
                "t_max",
                "step",
                "value",
                "ratio_to_t_logt_k2",
                "step_change",
                "step_warning",
            ]);
            table.push(vec![
                fmt_f64(*k),
                fmt_f64(*t),
                fmt_f64(*step),
                fmt_f64(result.value),
                result.ratio.map(fmt_f64).unwrap_or_default(),
                fmt_f64(result.step_change),
                result.step_warning.to_string(),
            ]);
            Ok(render(table, format))
        }

        Command::FxIntegral {
            sigma_line,
            kappa,
            t,
            step,
        } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let query = FxMomentQuery::new(*kappa, *t, *sigma_line, *step)?;
            let result = fx_moment(&ev, &query)?;
            let windows = result
                .excluded
                .iter()
                .map(|(a, b)| format!("{}..{}", fmt_f64(*a), fmt_f64(*b)))
                .collect::<Vec<_>>()
                .join(";");
            let mut table = Table::new(vec![
                "sigma_line",
                "kappa",
                "t_max",
                "step",
                "value",
                "excluded_windows",
            ]);
            table.push(vec![
                fmt_f64(*sigma_line),
                fmt_f64(*kappa),
                fmt_f64(*t),
                fmt_f64(*step),
                fmt_f64(result.value),
                windows,
            ]);
            Ok(render(table, format))
        }

        Command::LargevalueScan {
            t_min,
            t_max,
            e_min,
            e_max,
            grid_t,
            grid_e,
            scale_l,
        } => {
            let format = want(cfg, OutputFormat::Csv, true)?;
            let ev = ProductEvaluator::new(cfg.spectral)?;
            let grid = scan_grid((*t_min, *t_max), (*e_min, *e_max), *grid_t, *grid_e)?;
            let scale = *scale_l;
            let rows = par_map_ordered(cfg.threads, grid, |(t0, e0)| {
                scan_point(&ev, *t0, *e0, scale)
            });
            let mut table = Table::new(vec!["t0", "e0", "sigma0", "abs_jk", "status"]);
            for row in rows {
                let row = row?;
                table.push(vec![
                    fmt_f64(row.t0),
                    fmt_f64(row.e0),
                    fmt_f64(row.sigma0),
                    row.abs_jk.map(fmt_f64).unwrap_or_default(),
                    row.note.to_string(),
                ]);
            }
            Ok(render(table, format))
        }
    }
}
