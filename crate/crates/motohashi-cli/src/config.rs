//! Run configuration: defaults < config file < explicit flags.

use std::path::PathBuf;

use anyhow::{bail, Context};
use motohashi_core::SpectralParams;
use serde::Deserialize;

/// Output format for emitted artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Optional config file; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub z: Option<f64>,
    pub zeros_file: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub output: Option<OutputFormat>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let parsed: FileConfig = toml::from_str(&text)
            .with_context(|| format!("invalid config file {}", path.display()))?;
        Ok(parsed)
    }
}

/// Fully resolved configuration shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spectral: SpectralParams,
    pub zeros_path: PathBuf,
    pub cache_dir: PathBuf,
    pub out: Option<PathBuf>,
    pub output: Option<OutputFormat>,
    pub threads: usize,
}

/// Merge precedence, field by field: CLI flag, then config file, then the
/// built-in default. The degenerate z = 1.4 keeps K ≡ 1 unless asked.
#[allow(clippy::too_many_arguments)]
pub fn resolve(
    file: &FileConfig,
    t1: Option<f64>,
    t2: Option<f64>,
    z: Option<f64>,
    zeros_file: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    out: Option<PathBuf>,
    output: Option<OutputFormat>,
    threads: Option<usize>,
) -> anyhow::Result<RunConfig> {
    let t1 = t1.or(file.t1).unwrap_or(0.0);
    let t2 = t2.or(file.t2).unwrap_or(0.0);
    let z = z.or(file.z).unwrap_or(1.4);
    let spectral = SpectralParams::new(t1, t2, z)
        .map_err(|e| anyhow::anyhow!("invalid spectral parameters: {e}"))?;
    let zeros_path = zeros_file
        .or_else(|| file.zeros_file.clone())
        .unwrap_or_else(|| PathBuf::from("data/zeros_1000.txt"));
    let cache_dir = cache_dir
        .or_else(|| file.cache_dir.clone())
        .or_else(|| std::env::var_os("MOTOHASHI_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".motohashi-cache"));
    let threads = threads.or(file.threads).unwrap_or(1);
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    Ok(RunConfig {
        spectral,
        zeros_path,
        cache_dir,
        out,
        output,
        threads,
    })
}
