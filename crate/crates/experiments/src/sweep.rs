//! n-sweeps over a single base policy and the Monte Carlo variance study of
//! the two estimators.

use std::path::PathBuf;

use bon_core::dist_file::parse_distribution_bytes;
use bon_core::{
    epsilon_n_samples, expected_estimator, expected_reward, kl_report, sample_best_of_n, BasePolicy,
    validate_policy_with, EstimatorKind, Jitter,
};
use rayon::prelude::*;

use crate::csv_io::{write_mc_var_csv, write_sweep_csv, McVarRow, SweepRow};
use crate::error::{io_error, ExpError, Result};
use crate::grid::NGrid;
use crate::scenarios::BuiltinScenario;
use crate::svg::{emit_svg, SvgStyle};

/// Columns plotted by default for a sweep.
pub const DEFAULT_CURVES: [&str; 4] = ["formula", "exact_kl", "alt_expected", "proposed_expected"];

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    File(PathBuf),
    Builtin(BuiltinScenario),
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Builtin(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub source: Source,
    pub n_grid: NGrid,
    /// Monte Carlo draws per grid point; 0 skips sampling.
    pub mc_samples: u64,
    pub seed: u64,
    /// Tie-breaking magnitude for distribution files with repeated rewards.
    pub jitter: Option<f64>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(source: Source, n_grid: NGrid) -> Self {
        SweepConfig { source, n_grid, mc_samples: 0, seed: 0, jitter: None, output: None, svg: None }
    }

    pub fn load_policy(&self) -> Result<BasePolicy> {
        let jitter = self.jitter.map(|eps| Jitter { eps, seed: self.seed });
        match &self.source {
            Source::File(path) => {
                let bytes = std::fs::read(path).map_err(io_error(path.clone()))?;
                Ok(validate_policy_with(parse_distribution_bytes(&bytes)?, jitter)?)
            }
            Source::Builtin(b) => b.policy(),
        }
    }
}

/// One report row per grid point, ordered by n.
///
/// Every Monte Carlo column uses `cfg.seed` for its grid point.
pub fn sweep_policy(p: &BasePolicy, grid: &NGrid, mc_samples: u64, seed: u64) -> Result<Vec<SweepRow>> {
    grid.values()
        .par_iter()
        .map(|&n| {
            let mc_tv = if mc_samples > 0 {
                Some(sample_best_of_n(p, n, mc_samples, seed)?.tv_distance)
            } else {
                None
            };
            Ok(SweepRow { report: kl_report(p, n)?, expected_reward: expected_reward(p, n)?, mc_tv })
        })
        .collect::<std::result::Result<Vec<_>, bon_core::Error>>()
        .map_err(ExpError::from)
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let p = cfg.load_policy()?;
    sweep_policy(&p, &cfg.n_grid, cfg.mc_samples, cfg.seed)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(io_error(path.clone()))
}

/// Run the sweep and write the CSV (and SVG when configured).
pub fn execute_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let rows = run_sweep(cfg)?;
    let csv = write_sweep_csv(&rows)?;
    match &cfg.output {
        Some(path) => write_file(path, &csv)?,
        None => return Err(ExpError::Config("sweep needs an output path".into())),
    }
    if let Some(path) = &cfg.svg {
        let style = SvgStyle { title: cfg.source.label(), ..SvgStyle::default() };
        write_file(path, &emit_svg(&rows, &DEFAULT_CURVES, &style)?)?;
    }
    Ok(rows)
}

/// Welford running mean and squared deviation.
#[derive(Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Sample mean and (n - 1)-normalized standard deviation.
    fn mean_sd(&self) -> (f64, f64) {
        let var = (self.m2 / (self.count - 1) as f64).max(0.0);
        (self.mean, var.sqrt())
    }
}

fn within_5se(mean: f64, sd: f64, m: u64, expected: f64) -> bool {
    (mean - expected).abs() <= 5.0 * sd / (m as f64).sqrt() + 1e-12 * (1.0 + expected.abs())
}

/// Sample mean and spread of both estimators evaluated at Monte Carlo draws
/// of the selected outcome's base probability.
pub fn mc_variance_policy(p: &BasePolicy, grid: &NGrid, mc_samples: u64, seed: u64) -> Result<Vec<McVarRow>> {
    if mc_samples < 2 {
        return Err(ExpError::Config("mc-var needs --mc-samples >= 2".into()));
    }
    grid.values()
        .iter()
        .map(|&n| {
            let eps = epsilon_n_samples(p, n, mc_samples, seed)?;
            let (mut prop, mut alt) = (Moments::default(), Moments::default());
            for &e in &eps {
                prop.push(EstimatorKind::Proposed.eval(e, n)?);
                alt.push(EstimatorKind::Alternate.eval(e, n)?);
            }
            let (proposed_mean, proposed_sd) = prop.mean_sd();
            let (alt_mean, alt_sd) = alt.mean_sd();
            let proposed_expected = expected_estimator(p, n, EstimatorKind::Proposed)?;
            let alt_expected = expected_estimator(p, n, EstimatorKind::Alternate)?;
            Ok(McVarRow {
                n,
                samples: mc_samples,
                proposed_mean,
                proposed_sd,
                proposed_expected,
                alt_mean,
                alt_sd,
                alt_expected,
                proposed_within_5se: within_5se(proposed_mean, proposed_sd, mc_samples, proposed_expected),
                alt_within_5se: within_5se(alt_mean, alt_sd, mc_samples, alt_expected),
            })
        })
        .collect()
}

pub fn mc_variance_study(cfg: &SweepConfig) -> Result<Vec<McVarRow>> {
    let p = cfg.load_policy()?;
    mc_variance_policy(&p, &cfg.n_grid, cfg.mc_samples, cfg.seed)
}

/// Run the variance study and write its CSV.
pub fn execute_mc_variance(cfg: &SweepConfig) -> Result<Vec<McVarRow>> {
    let rows = mc_variance_study(cfg)?;
    match &cfg.output {
        Some(path) => write_file(path, &write_mc_var_csv(&rows))?,
        None => return Err(ExpError::Config("mc-var needs an output path".into())),
    }
    Ok(rows)
}
