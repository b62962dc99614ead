//! Experiment configuration, seeded parallel trials and report emission.
//!
//! Trial `i` of an experiment with master seed `x` always draws from
//! `Seed::new(x, i)`, so results do not depend on scheduling. Trials fan out
//! over a rayon pool and come back in trial order. Reports keep wall-clock
//! data in a separate [`Metadata`] block; everything else is a pure function
//! of the config.

pub mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::{self, predict_genus, AsymptoticsError, RegimeConfig};
use crate::census::{self, supercritical_report, CensusError, CensusParams, SupercriticalReport};
use crate::embedding::{genus_bounds, EmbeddingError};
use crate::fragile::{BaseGraph, FragileError, FragileReport, FragileSetup};
use crate::graph::{read_edge_list, Graph, GraphError, DEFAULT_CYCLE_CAP};
use crate::random::{gnm, kappa_trajectory_until, pair_count, ModelError, Seed};

pub use suites::{run_suite, Check, SuiteName, SuiteReport};

/// Directory for reports when no explicit output path is given.
pub const OUT_DIR_ENV: &str = "GENUS_LAB_OUT_DIR";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Fragile(#[from] FragileError),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl HarnessError {
    /// Whether the error comes from bad user input rather than a failed
    /// computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            HarnessError::InvalidConfig(_)
                | HarnessError::Asymptotics(
                    AsymptoticsError::OutOfDomain { .. }
                        | AsymptoticsError::NonFinite { .. }
                        | AsymptoticsError::EdgeCountOutOfRange { .. }
                )
                | HarnessError::Model(_)
                | HarnessError::Fragile(
                    FragileError::InvalidParameter(_)
                        | FragileError::DegreeTooLarge { .. }
                        | FragileError::Disconnected(_)
                        | FragileError::TooFewVertices { .. }
                )
                | HarnessError::Census(CensusError::InvalidParameter(_))
        )
    }
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidConfig(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseSpec {
    Generated {
        kind: BaseGraph,
        n: usize,
    },
    /// Edge-list file, see [`crate::graph::read_edge_list`].
    File {
        path: PathBuf,
    },
}

impl BaseSpec {
    pub fn load(&self, delta: usize, seed: u64) -> Result<Graph, HarnessError> {
        match self {
            BaseSpec::Generated { kind, n } => {
                Ok(kind.build(*n, delta, Seed::new(seed, u64::MAX))?)
            }
            BaseSpec::File { path } => Ok(read_edge_list(&std::fs::read_to_string(path)?)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Experiment {
    /// Components of `G(n, ⌊λn⌋)` against `u(2λ) n`.
    McKappa {
        n: usize,
        lambdas: Vec<f64>,
        tol: f64,
    },
    /// Genus bounds per edge of `G(n, m)` over a grid of `m`.
    GenusCurve {
        n: usize,
        ms: Vec<usize>,
        ell: usize,
    },
    /// Giant 2-core census of `G(n, n/2 + s)`.
    Supercritical {
        n: usize,
        s: usize,
        census: CensusParams,
    },
    /// Base graph plus `k` random edges.
    Fragile {
        base: BaseSpec,
        delta: usize,
        k: usize,
        ell: usize,
    },
    /// A named verification suite.
    Suite { name: SuiteName },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; all cores when absent.
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default = "default_cycle_cap")]
    pub cycle_cap: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_cycle_cap() -> usize {
    DEFAULT_CYCLE_CAP
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            experiment,
            trials,
            seed,
            jobs: None,
            cycle_cap: DEFAULT_CYCLE_CAP,
            output: None,
            format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.jobs == Some(0) {
            return Err(invalid("jobs must be at least 1"));
        }
        if self.cycle_cap == 0 {
            return Err(invalid("cycle_cap must be at least 1"));
        }
        match &self.experiment {
            Experiment::McKappa { n, lambdas, tol } => {
                if *n == 0 || lambdas.is_empty() {
                    return Err(invalid("mc-kappa needs n ≥ 1 and at least one lambda"));
                }
                if !(*tol > 0.0) {
                    return Err(invalid("tol must be positive"));
                }
                for &l in lambdas {
                    if !(l >= 0.0) || !l.is_finite() {
                        return Err(invalid(format!("lambda {l} must be finite and ≥ 0")));
                    }
                    if (l * *n as f64).floor() as u64 > pair_count(*n) {
                        return Err(invalid(format!(
                            "lambda {l} asks for more than C(n, 2) edges"
                        )));
                    }
                }
            }
            Experiment::GenusCurve { n, ms, ell } => {
                if ms.is_empty() || *ell < 3 {
                    return Err(invalid("genus-curve needs at least one m and ell ≥ 3"));
                }
                if let Some(&m) = ms.iter().find(|&&m| m == 0 || m as u64 > pair_count(*n)) {
                    return Err(invalid(format!("m = {m} must lie in 1..=C(n, 2)")));
                }
            }
            Experiment::Supercritical { n, s, census } => {
                if *s == 0 || 2 * s >= *n || census.ell < 3 {
                    return Err(invalid("supercritical needs 0 < s < n/2 and ell ≥ 3"));
                }
                if let Some(a) = census.a {
                    if !(a > 0.0) {
                        return Err(invalid("a must be positive"));
                    }
                }
            }
            Experiment::Fragile { delta, k, ell, .. } => {
                if *delta == 0 || *k == 0 || *ell < 3 {
                    return Err(invalid("fragile needs Delta ≥ 1, k ≥ 1 and ell ≥ 3"));
                }
            }
            Experiment::Suite { .. } => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), HarnessError> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow<S> {
    pub trial_index: usize,
    pub seed: Seed,
    pub stats: S,
}

/// Wall-clock facts about a run; excluded from reproducibility checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub threads: usize,
    pub trial_wall_ms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<S, T> {
    pub config: ExperimentConfig,
    pub rows: Vec<TrialRow<S>>,
    pub summary: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Run<S, T> {
    pub report: Report<S, T>,
    pub metadata: Metadata,
}

impl<S: Serialize, T: Serialize> Run<S, T> {
    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The report without its metadata block.
    pub fn report_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(&self.report)?)
    }
}

fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis())
}

/// Runs `trials` independent trials, trial `i` seeded with
/// `Seed::new(master, i)`, on `jobs` threads (the global pool when `None`).
/// Results come back in trial order with their wall times.
pub fn run_trials<R, F>(
    trials: usize,
    master: u64,
    jobs: Option<usize>,
    f: F,
) -> Result<Vec<(R, Duration)>, HarnessError>
where
    R: Send,
    F: Fn(usize, Seed) -> Result<R, HarnessError> + Sync + Send,
{
    let work = || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let start = Instant::now();
                f(i, Seed::new(master, i as u64)).map(|r| (r, start.elapsed()))
            })
            .collect::<Result<Vec<_>, _>>()
    };
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()?
            .install(work),
        None => work(),
    }
}

fn assemble<S, T>(
    config: &ExperimentConfig,
    started: u128,
    timed: Vec<(S, Duration)>,
    rows_of: impl Fn(usize, S) -> Vec<TrialRow<S>>,
    summary: impl FnOnce(&[TrialRow<S>]) -> T,
) -> Run<S, T> {
    let mut trial_wall_ms = Vec::with_capacity(timed.len());
    let mut rows = Vec::new();
    for (i, (s, d)) in timed.into_iter().enumerate() {
        trial_wall_ms.push(d.as_secs_f64() * 1e3);
        rows.extend(rows_of(i, s));
    }
    let summary = summary(&rows);
    Run {
        report: Report {
            config: config.clone(),
            rows,
            summary,
        },
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: started,
            finished_unix_ms: unix_ms(),
            threads: config.jobs.unwrap_or_else(rayon::current_num_threads),
            trial_wall_ms,
        },
    }
}

fn single_row<S>(master: u64) -> impl Fn(usize, S) -> Vec<TrialRow<S>> {
    move |i, stats| {
        vec![TrialRow {
            trial_index: i,
            seed: Seed::new(master, i as u64),
            stats,
        }]
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

// ---------------------------------------------------------------- κ ------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaStats {
    /// `(λ, m, κ)` per requested `λ`, read off one edge process.
    pub points: Vec<KappaPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaPoint {
    pub lambda: f64,
    pub m: usize,
    pub kappa: usize,
    pub kappa_over_n: f64,
    /// `u(2λ)`.
    pub predicted: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaSummary {
    pub lambda: f64,
    pub predicted: f64,
    pub mean_kappa_over_n: f64,
    pub max_abs_deviation: f64,
}

pub type KappaRun = Run<KappaStats, Vec<KappaSummary>>;

/// For each trial, one run of the edge process up to the largest
/// `⌊λn⌋`, with `κ/n` read off at every requested `λ` and compared with
/// `u(2λ)`.
pub fn run_mc_kappa(config: &ExperimentConfig) -> Result<KappaRun, HarnessError> {
    config.validate()?;
    let Experiment::McKappa { n, lambdas, tol } = &config.experiment else {
        return Err(invalid("run_mc_kappa needs an mc-kappa experiment"));
    };
    let (n, tol) = (*n, *tol);
    let predicted: Vec<f64> = lambdas
        .iter()
        .map(|&l| asymptotics::u(2.0 * l, tol).map(|e| e.value))
        .collect::<Result<_, _>>()?;
    let ms: Vec<usize> = lambdas
        .iter()
        .map(|&l| (l * n as f64).floor() as usize)
        .collect();
    let steps = ms.iter().copied().max().unwrap_or(0);
    let started = unix_ms();
    let timed = run_trials(config.trials, config.seed, config.jobs, |_, seed| {
        let traj = kappa_trajectory_until(n, steps, seed);
        let points = lambdas
            .iter()
            .zip(&ms)
            .zip(&predicted)
            .map(|((&lambda, &m), &p)| {
                let kappa = traj[m];
                let ratio = kappa as f64 / n as f64;
                KappaPoint {
                    lambda,
                    m,
                    kappa,
                    kappa_over_n: ratio,
                    predicted: p,
                    deviation: ratio - p,
                }
            })
            .collect();
        Ok(KappaStats { points })
    })?;
    Ok(assemble(
        config,
        started,
        timed,
        single_row(config.seed),
        |rows| {
            (0..lambdas.len())
                .map(|j| KappaSummary {
                    lambda: lambdas[j],
                    predicted: predicted[j],
                    mean_kappa_over_n: mean(rows.iter().map(|r| r.stats.points[j].kappa_over_n)),
                    max_abs_deviation: rows
                        .iter()
                        .map(|r| r.stats.points[j].deviation.abs())
                        .fold(0.0, f64::max),
                })
                .collect()
        },
    ))
}

// ------------------------------------------------------- genus curve ------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub m: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub m: usize,
    pub lower_ratio: f64,
    pub upper_ratio: f64,
    pub predicted_ratio: f64,
}

pub type CurveRun = Run<Vec<CurveSample>, Vec<CurvePoint>>;

/// Genus bounds of `G(n, m)` divided by `m` for each `m` in the grid,
/// averaged over trials, next to the regime prediction. Within a trial the
/// graphs are nested prefixes of one edge process.
pub fn run_genus_curve(config: &ExperimentConfig) -> Result<CurveRun, HarnessError> {
    config.validate()?;
    let Experiment::GenusCurve { n, ms, ell } = &config.experiment else {
        return Err(invalid("run_genus_curve needs a genus-curve experiment"));
    };
    let (n, ell, cap) = (*n, *ell, config.cycle_cap);
    let regime = RegimeConfig::default();
    let predicted: Vec<f64> = ms
        .iter()
        .map(|&m| predict_genus(n as u64, m as u64, &regime).map(|p| p.midpoint() / m as f64))
        .collect::<Result<_, _>>()?;
    let started = unix_ms();
    let timed = run_trials(config.trials, config.seed, config.jobs, |_, seed| {
        ms.iter()
            .map(|&m| {
                let g = gnm(n, m, seed)?;
                let b = genus_bounds(&g, ell, cap);
                Ok(CurveSample {
                    m,
                    lower: b.lower,
                    upper: b.upper,
                })
            })
            .collect()
    })?;
    Ok(assemble(
        config,
        started,
        timed,
        single_row(config.seed),
        |rows| {
            ms.iter()
                .enumerate()
                .map(|(j, &m)| CurvePoint {
                    m,
                    lower_ratio: mean(rows.iter().map(|r| r.stats[j].lower as f64)) / m as f64,
                    upper_ratio: mean(rows.iter().map(|r| r.stats[j].upper as f64)) / m as f64,
                    predicted_ratio: predicted[j],
                })
                .collect()
        },
    ))
}

// ------------------------------------------------------ supercritical ------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupercriticalSummary {
    pub s: usize,
    pub mean_core_excess: f64,
    /// `(16/3) s³/n²`.
    pub predicted_excess: f64,
    pub mean_genus_lower: f64,
    pub mean_genus_upper: f64,
    /// `8s³/(3n²)`.
    pub predicted_genus: f64,
    pub mean_z: f64,
}

pub type SupercriticalRun = Run<SupercriticalReport, SupercriticalSummary>;

pub fn run_supercritical(config: &ExperimentConfig) -> Result<SupercriticalRun, HarnessError> {
    config.validate()?;
    let Experiment::Supercritical { n, s, census } = &config.experiment else {
        return Err(invalid(
            "run_supercritical needs a supercritical experiment",
        ));
    };
    let (n, s) = (*n, *s);
    let params = CensusParams {
        cycle_cap: config.cycle_cap,
        ..*census
    };
    let started = unix_ms();
    let timed = run_trials(config.trials, config.seed, config.jobs, |_, seed| {
        Ok(supercritical_report(n, s, seed, &params)?)
    })?;
    Ok(assemble(
        config,
        started,
        timed,
        single_row(config.seed),
        |rows| {
            let predicted_genus = census::predicted_genus(n, s);
            SupercriticalSummary {
                s,
                mean_core_excess: mean(rows.iter().map(|r| r.stats.core_excess as f64)),
                predicted_excess: 2.0 * predicted_genus,
                mean_genus_lower: mean(rows.iter().map(|r| r.stats.genus_lower as f64)),
                mean_genus_upper: mean(rows.iter().map(|r| r.stats.genus_upper as f64)),
                predicted_genus,
                mean_z: mean(rows.iter().map(|r| r.stats.z_value as f64)),
            }
        },
    ))
}

// ------------------------------------------------------------ fragile ------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FragileSummary {
    pub l: usize,
    pub t: usize,
    pub mean_gamma_edges: f64,
    pub mean_genus_lower: f64,
    pub trials_gamma_edges_at_least_t: usize,
    pub trials_positive_lower: usize,
    pub upper_bound: usize,
}

pub type FragileRun = Run<FragileReport, FragileSummary>;

pub fn run_fragile(config: &ExperimentConfig) -> Result<FragileRun, HarnessError> {
    config.validate()?;
    let Experiment::Fragile {
        base,
        delta,
        k,
        ell,
    } = &config.experiment
    else {
        return Err(invalid("run_fragile needs a fragile experiment"));
    };
    let h = base.load(*delta, config.seed)?;
    let setup = FragileSetup::new(&h, *delta, *k)?;
    let (ell, cap) = (*ell, config.cycle_cap);
    let started = unix_ms();
    let timed = run_trials(config.trials, config.seed, config.jobs, |_, seed| {
        Ok(setup.trial(seed, ell, cap)?)
    })?;
    Ok(assemble(
        config,
        started,
        timed,
        single_row(config.seed),
        |rows| FragileSummary {
            l: setup.l,
            t: setup.decomposition.as_ref().map_or(0, |d| d.t),
            mean_gamma_edges: mean(rows.iter().map(|r| r.stats.gamma_edges as f64)),
            mean_genus_lower: mean(rows.iter().map(|r| r.stats.genus_lower_gamma as f64)),
            trials_gamma_edges_at_least_t: rows
                .iter()
                .filter(|r| !r.stats.dense_branch && r.stats.gamma_edges >= r.stats.t)
                .count(),
            trials_positive_lower: rows
                .iter()
                .filter(|r| r.stats.genus_lower_gamma > 0)
                .count(),
            upper_bound: rows.iter().map(|r| r.stats.upper_bound).max().unwrap_or(0),
        },
    ))
}

// ---------------------------------------------------------------- CSV ------

/// `lambda,mu` for each `λ` in the grid.
pub fn write_mu_curve<W: Write>(out: W, lambdas: &[f64], tol: f64) -> Result<(), HarnessError> {
    #[derive(Serialize)]
    struct Row {
        lambda: f64,
        mu: f64,
    }
    let mut w = csv::Writer::from_writer(out);
    for &lambda in lambdas {
        let mu = asymptotics::mu(lambda, tol)?.value;
        w.serialize(Row { lambda, mu })?;
    }
    w.flush()?;
    Ok(())
}

/// `m,lower_ratio,upper_ratio,predicted_ratio`.
pub fn write_genus_curve<W: Write>(out: W, points: &[CurvePoint]) -> Result<(), HarnessError> {
    write_rows(out, points)
}

/// `s,mean_core_excess,predicted_excess,…` one line per census summary.
pub fn write_census_curve<W: Write>(
    out: W,
    summaries: &[SupercriticalSummary],
) -> Result<(), HarnessError> {
    write_rows(out, summaries)
}

/// Flat CSV rendering of a run: one line per trial (and per grid point,
/// where the experiment has a grid).
pub trait CsvReport {
    fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError>;
}

impl CsvReport for KappaRun {
    fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        #[derive(Serialize)]
        struct Row {
            trial_index: usize,
            lambda: f64,
            m: usize,
            kappa: usize,
            kappa_over_n: f64,
            predicted: f64,
        }
        let rows: Vec<Row> = self
            .report
            .rows
            .iter()
            .flat_map(|r| {
                r.stats.points.iter().map(|p| Row {
                    trial_index: r.trial_index,
                    lambda: p.lambda,
                    m: p.m,
                    kappa: p.kappa,
                    kappa_over_n: p.kappa_over_n,
                    predicted: p.predicted,
                })
            })
            .collect();
        write_rows(out, &rows)
    }
}

impl CsvReport for CurveRun {
    fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        write_genus_curve(out, &self.report.summary)
    }
}

impl CsvReport for SupercriticalRun {
    fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        #[derive(Serialize)]
        struct Row {
            trial_index: usize,
            giant_vertices: usize,
            core_vertices: usize,
            core_edges: usize,
            core_excess: i64,
            kernel_vertices: usize,
            kernel_edges: usize,
            short_cycle_count: usize,
            z_value: usize,
            genus_lower: usize,
            genus_upper: usize,
            predicted: f64,
        }
        let rows: Vec<Row> = self
            .report
            .rows
            .iter()
            .map(|r| {
                let s = &r.stats;
                Row {
                    trial_index: r.trial_index,
                    giant_vertices: s.giant_vertices,
                    core_vertices: s.core_vertices,
                    core_edges: s.core_edges,
                    core_excess: s.core_excess,
                    kernel_vertices: s.kernel_vertices,
                    kernel_edges: s.kernel_edges,
                    short_cycle_count: s.short_cycle_count,
                    z_value: s.z_value,
                    genus_lower: s.genus_lower,
                    genus_upper: s.genus_upper,
                    predicted: s.predicted,
                }
            })
            .collect();
        write_rows(out, &rows)
    }
}

impl CsvReport for FragileRun {
    fn write_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        #[derive(Serialize)]
        struct Row {
            trial_index: usize,
            l: usize,
            t: usize,
            s: usize,
            gamma_edges: usize,
            good_edge_count: usize,
            genus_lower_gamma: usize,
            dense_branch: bool,
            upper_bound: usize,
        }
        let rows: Vec<Row> = self
            .report
            .rows
            .iter()
            .map(|r| {
                let s = &r.stats;
                Row {
                    trial_index: r.trial_index,
                    l: s.l,
                    t: s.t,
                    s: s.s,
                    gamma_edges: s.gamma_edges,
                    good_edge_count: s.good_edge_count,
                    genus_lower_gamma: s.genus_lower_gamma,
                    dense_branch: s.dense_branch,
                    upper_bound: s.upper_bound,
                }
            })
            .collect();
        write_rows(out, &rows)
    }
}

/// Any flat serialisable rows, header from field names.
pub fn write_rows<W: Write, R: Serialize>(out: W, rows: &[R]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Where a report goes: the explicit path, else a file named after the
/// command under `$GENUS_LAB_OUT_DIR`, else standard output (`None`).
pub fn resolve_output(
    explicit: Option<&Path>,
    stem: &str,
    format: OutputFormat,
) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match format {
        OutputFormat::Json => "json",
        OutputFormat::Csv => "csv",
    };
    Some(PathBuf::from(dir).join(format!("{stem}.{ext}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let configs = [
            ExperimentConfig::new(
                Experiment::McKappa {
                    n: 1000,
                    lambdas: vec![0.0, 0.25, 0.1 + 0.2, 1.0 / 3.0],
                    tol: 1e-10,
                },
                3,
                42,
            ),
            ExperimentConfig {
                jobs: Some(2),
                output: Some("out/x.json".into()),
                format: OutputFormat::Csv,
                ..ExperimentConfig::new(
                    Experiment::Fragile {
                        base: BaseSpec::Generated {
                            kind: BaseGraph::RandomTree,
                            n: 500,
                        },
                        delta: 3,
                        k: 20,
                        ell: 4,
                    },
                    2,
                    7,
                )
            },
            ExperimentConfig::new(
                Experiment::Supercritical {
                    n: 10_000,
                    s: 1000,
                    census: CensusParams {
                        a: Some(0.7),
                        ..CensusParams::default()
                    },
                },
                1,
                0,
            ),
            ExperimentConfig::new(
                Experiment::Suite {
                    name: SuiteName::Oracle,
                },
                1,
                0,
            ),
        ];
        for c in configs {
            let text = c.to_json().unwrap();
            assert_eq!(ExperimentConfig::from_json(&text).unwrap(), c);
        }
    }

    #[test]
    fn validation_rejects_bad_values() {
        let bad = ExperimentConfig::new(
            Experiment::McKappa {
                n: 10,
                lambdas: vec![10.0],
                tol: 1e-8,
            },
            1,
            0,
        );
        assert!(matches!(
            bad.validate(),
            Err(HarnessError::InvalidConfig(_))
        ));
        let zero_trials = ExperimentConfig::new(
            Experiment::GenusCurve {
                n: 10,
                ms: vec![5],
                ell: 4,
            },
            0,
            0,
        );
        assert!(zero_trials.validate().unwrap_err().is_usage());
    }

    #[test]
    fn kappa_at_zero_edges_is_n() {
        let cfg = ExperimentConfig::new(
            Experiment::McKappa {
                n: 500,
                lambdas: vec![0.0, 0.25],
                tol: 1e-10,
            },
            4,
            1,
        );
        let run = run_mc_kappa(&cfg).unwrap();
        assert_eq!(run.report.rows.len(), 4);
        for r in &run.report.rows {
            assert_eq!(r.stats.points[0].kappa, 500);
        }
        assert!((run.report.summary[1].predicted - 0.75).abs() < 1e-10);
    }

    #[test]
    fn serial_and_parallel_rows_agree() {
        let mut cfg = ExperimentConfig::new(
            Experiment::GenusCurve {
                n: 200,
                ms: vec![50, 150, 400],
                ell: 4,
            },
            6,
            9,
        );
        cfg.jobs = Some(1);
        let serial = run_genus_curve(&cfg).unwrap();
        cfg.jobs = Some(3);
        let parallel = run_genus_curve(&cfg).unwrap();
        assert_eq!(serial.report.rows, parallel.report.rows);
        assert_eq!(serial.report.summary, parallel.report.summary);
        let again = run_genus_curve(&cfg).unwrap();
        assert_eq!(
            parallel.report_json().unwrap(),
            again.report_json().unwrap()
        );
    }

    #[test]
    fn curve_csv_header() {
        let points = [CurvePoint {
            m: 10,
            lower_ratio: 0.0,
            upper_ratio: 0.1,
            predicted_ratio: 0.0,
        }];
        let mut buf = Vec::new();
        write_genus_curve(&mut buf, &points).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "m,lower_ratio,upper_ratio,predicted_ratio"
        );
    }

    #[test]
    fn mu_curve_csv() {
        let mut buf = Vec::new();
        write_mu_curve(&mut buf, &[0.5, 1.0], 1e-10).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "lambda,mu");
        assert_eq!(lines.len(), 3);
    }
}
