//! Named verification suites. Each check measures one quantitative claim
//! against a fixed tolerance and a wall-clock budget, and reports a
//! pass/fail verdict with the numbers behind it.

use std::fmt;
use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    mean, run_fragile, run_mc_kappa, run_supercritical, run_trials, BaseSpec, Experiment,
    ExperimentConfig, HarnessError,
};
use crate::asymptotics::{self, lambda_i, predict_genus, u, u_prime, RegimeConfig};
use crate::census::{count_z, fact8_check, CensusParams};
use crate::corpus::{connected_up_to_six, named_fixtures};
use crate::embedding::{
    exact_genus, genus_bounds, genus_lower_bound_density, genus_lower_bound_kernel,
    genus_lower_bound_short_cycles, genus_upper_bound, trace_faces, RotationSystem,
    DEFAULT_GENUS_BUDGET,
};
use crate::fragile::BaseGraph;
use crate::graph::{components, contract_sets, two_core, Graph, DEFAULT_CYCLE_CAP};
use crate::random::{gnm, Seed};

/// Master seed used by the suites unless overridden.
pub const SUITE_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Asymptotics,
    McKappa,
    Supercritical,
    Fragile,
    Oracle,
    /// Cycle statistic against its integral; takes several minutes.
    Poisson,
}

impl SuiteName {
    pub const DEFAULT: [SuiteName; 5] = [
        SuiteName::Asymptotics,
        SuiteName::McKappa,
        SuiteName::Supercritical,
        SuiteName::Fragile,
        SuiteName::Oracle,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    /// One line per sub-claim, each prefixed `ok` or `FAIL`.
    pub details: Vec<String>,
}

impl Check {
    fn start(id: &str, title: &str) -> Pending {
        Pending {
            check: Check {
                id: id.into(),
                title: title.into(),
                passed: true,
                seconds: 0.0,
                budget_seconds: 0.0,
                details: Vec::new(),
            },
            started: Instant::now(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}] {} ({:.2} s, budget {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.budget_seconds
        )?;
        for d in &self.details {
            writeln!(f, "       {d}")?;
        }
        Ok(())
    }
}

struct Pending {
    check: Check,
    started: Instant,
}

impl Pending {
    fn claim(&mut self, ok: bool, msg: impl Into<String>) {
        self.check.passed &= ok;
        let tag = if ok { "ok  " } else { "FAIL" };
        self.check.details.push(format!("{tag} {}", msg.into()));
    }

    fn finish(mut self, budget_seconds: f64) -> Check {
        let seconds = self.started.elapsed().as_secs_f64();
        self.check.seconds = seconds;
        self.check.budget_seconds = budget_seconds;
        if seconds > budget_seconds {
            self.claim(
                false,
                format!("runtime {seconds:.1} s exceeds {budget_seconds} s"),
            );
        }
        self.check
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn run_suite(
    name: SuiteName,
    seed: u64,
    jobs: Option<usize>,
) -> Result<SuiteReport, HarnessError> {
    let checks = match name {
        SuiteName::Asymptotics => vec![
            series_identity()?,
            mu_properties()?,
            asymptotic_invariants()?,
            linear_sandwich(seed, jobs)?,
        ],
        SuiteName::McKappa => vec![kappa_concentration(seed, jobs)?],
        SuiteName::Supercritical => vec![supercritical_structure(seed, jobs)?],
        SuiteName::Fragile => vec![fragile_genus(seed, jobs)?],
        SuiteName::Oracle => vec![exact_fixtures()?, corpus_invariants()?],
        SuiteName::Poisson => vec![poisson_statistic(seed, jobs, 200, 100_000_000)?],
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: name,
        seed,
        checks,
        passed,
    })
}

/// `u(c) = 1 − c/2` on `[0, 1]`.
pub fn series_identity() -> Result<Check, HarnessError> {
    let mut p = Check::start("1", "series identity on [0, 1]");
    let mut worst = (0.0f64, 0.0);
    for k in 0..=100 {
        let c = k as f64 / 100.0;
        let dev = (u(c, 1e-10)?.value - (1.0 - c / 2.0)).abs();
        if dev >= worst.0 {
            worst = (dev, c);
        }
    }
    p.claim(
        worst.0 < 1e-9,
        format!(
            "max |u(c) - (1 - c/2)| = {:.3e} at c = {} (< 1e-9)",
            worst.0, worst.1
        ),
    );
    Ok(p.finish(1.0))
}

/// Zero at `1/2`, monotone growth, the value at 20, and `u′` against finite
/// differences.
pub fn mu_properties() -> Result<Check, HarnessError> {
    let mut p = Check::start("2", "genus density and derivative");
    let at_half = asymptotics::mu(0.5, 1e-10)?.value;
    p.claim(at_half.abs() < 1e-9, format!("mu(0.5) = {at_half:.3e}"));

    let grid: Vec<f64> = (0..=195).map(|k| 0.5 + 0.1 * k as f64).collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&l| asymptotics::mu(l, 1e-10).map(|e| e.value))
        .collect::<Result<_, _>>()?;
    let min_step = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    p.claim(
        min_step > -1e-12,
        format!("smallest step of mu on 0.5..=20 by 0.1 is {min_step:.3e} (> -1e-12)"),
    );
    let at20 = *values.last().unwrap();
    p.claim(
        at20 > 0.45 && at20 < 0.5,
        format!("mu(20) = {at20:.12} in (0.45, 0.5)"),
    );

    let h = 1e-5;
    for c in [0.8, 1.5, 3.0] {
        let fd = (u(c + h, 1e-13)?.value - u(c - h, 1e-13)?.value) / (2.0 * h);
        let d = u_prime(c, 1e-12)?.value;
        p.claim(
            (fd - d).abs() < 1e-6,
            format!("u'({c}) = {d:.10}, central difference {fd:.10}"),
        );
    }
    Ok(p.finish(5.0))
}

/// Shape of `u`, `μ`, `λ(i)` on grids and totality of the regime
/// classifier.
pub fn asymptotic_invariants() -> Result<Check, HarnessError> {
    let mut p = Check::start("9a", "shape of the limit functions and regime sweep");
    let tol = 1e-12;
    let cs: Vec<f64> = (0..=100).map(|k| k as f64 * 0.05).collect();
    let us: Vec<f64> = cs
        .iter()
        .map(|&c| u(c, tol).map(|e| e.value))
        .collect::<Result<_, _>>()?;
    let rises = us.windows(2).filter(|w| w[1] > w[0] + tol).count();
    p.claim(
        rises == 0,
        format!("u non-increasing on 0..=5 by 0.05 ({rises} rises)"),
    );
    let min_second = us
        .windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .fold(f64::INFINITY, f64::min);
    p.claim(
        min_second >= -4.0 * tol,
        format!("u second differences ≥ {min_second:.3e}"),
    );

    let lambdas: Vec<f64> = (1..=100).map(|k| 0.5 + 0.2 * k as f64).collect();
    let mus: Vec<f64> = lambdas
        .iter()
        .map(|&l| asymptotics::mu(l, tol).map(|e| e.value))
        .collect::<Result<_, _>>()?;
    let bad = mus.iter().filter(|&&m| !(m > 0.0 && m <= 0.5)).count();
    p.claim(
        bad == 0,
        format!("mu in (0, 1/2] for lambda in 0.7..=20.5 ({bad} outside)"),
    );

    let is: Vec<f64> = (0..=8).map(|k| k as f64 * 0.25).collect();
    let ls: Vec<f64> = is
        .iter()
        .map(|&i| lambda_i(i, 1e-8))
        .collect::<Result<_, _>>()?;
    let ok = ls[0] == 0.0 && ls.windows(2).all(|w| w[1] > w[0]);
    p.claim(
        ok,
        format!(
            "lambda_i increasing from 0 on 0..=2: lambda_i(1) = {:.9}",
            ls[4]
        ),
    );

    let config = RegimeConfig::default();
    let mut classified = 0usize;
    let mut failures = 0usize;
    for n in [1_000u64, 100_000, 10_000_000] {
        let max = n * (n - 1) / 2;
        for k in 0..=400u64 {
            let m = ((max as f64).powf(k as f64 / 400.0)).round() as u64;
            match predict_genus(n, m.min(max), &config) {
                Ok(pred) if pred.lo <= pred.hi && pred.lo >= 0.0 => classified += 1,
                _ => failures += 1,
            }
        }
    }
    p.claim(
        failures == 0,
        format!("regime classifier total on {classified} (n, m) pairs, {failures} failures"),
    );
    Ok(p.finish(30.0))
}

/// Component count of `G(n, ⌊λn⌋)` against `u(2λ)n`.
pub fn kappa_concentration(seed: u64, jobs: Option<usize>) -> Result<Check, HarnessError> {
    let mut p = Check::start("3", "component count concentration, n = 1e5");
    let mut cfg = ExperimentConfig::new(
        Experiment::McKappa {
            n: 100_000,
            lambdas: vec![0.25, 0.5, 1.0, 2.0],
            tol: 1e-12,
        },
        10,
        seed,
    );
    cfg.jobs = jobs;
    let run = run_mc_kappa(&cfg)?;
    for s in &run.report.summary {
        p.claim(
            s.max_abs_deviation < 0.01,
            format!(
                "lambda = {}: u(2 lambda) = {:.6}, mean kappa/n = {:.6}, max deviation {:.2e}",
                s.lambda, s.predicted, s.mean_kappa_over_n, s.max_abs_deviation
            ),
        );
    }
    Ok(p.finish(30.0))
}

/// Exact genus and minimum face counts of the small named graphs.
pub fn exact_fixtures() -> Result<Check, HarnessError> {
    let mut p = Check::start("4", "exact genus of named fixtures");
    let wanted = ["K5", "C5", "C5+chord", "K5-edge", "K3,3", "K6", "Q3"];
    for (name, g, genus, faces) in named_fixtures() {
        if !wanted.contains(&name) {
            continue;
        }
        let t = Instant::now();
        let r = exact_genus(&g, DEFAULT_GENUS_BUDGET)?;
        let density = genus_lower_bound_density(&g);
        let mut ok = r.genus == genus && density <= r.genus;
        let mut msg = format!(
            "{name}: genus {} (expected {genus}), density bound {density}",
            r.genus
        );
        if let Some(f) = faces {
            ok &= r.f_min == f;
            msg += &format!(", faces {} (expected {f})", r.f_min);
        }
        msg += &format!(", {} nodes, {:.2} s", r.visited, t.elapsed().as_secs_f64());
        p.claim(ok, msg);
    }
    Ok(p.finish(60.0))
}

/// The structural invariants of the graph, embedding and census layers,
/// checked on every connected graph with at most six vertices and on the
/// named fixtures with at most eight.
pub fn corpus_invariants() -> Result<Check, HarnessError> {
    let mut p = Check::start("9b", "invariants on the bundled corpus");
    let mut graphs: Vec<(String, Graph, usize)> = connected_up_to_six()
        .into_iter()
        .map(|c| (c.name, c.graph, c.genus))
        .collect();
    for (name, g, genus, _) in named_fixtures() {
        if g.order() <= 8 {
            graphs.push((name.to_string(), g, genus));
        }
    }
    let budget = DEFAULT_GENUS_BUDGET;
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |name: &str, what: &str| failures.push(format!("{name}: {what}"));
    let mut contractions = 0usize;
    for (name, g, label) in &graphs {
        let genus = exact_genus(g, budget)?.genus;
        if genus != *label {
            fail(name, "exact genus differs from label");
        }
        let core = two_core(g).graph;
        if exact_genus(&core, budget)?.genus != genus {
            fail(name, "2-core genus differs");
        }
        if two_core(&core).graph != core {
            fail(name, "2-core not idempotent");
        }
        let faces = trace_faces(g, &RotationSystem::sorted(g))?;
        let kappa = components(g).kappa;
        let twice = g.size() as i64 - g.order() as i64 - faces.face_count as i64 + kappa as i64 + 1;
        if faces.face_lengths.iter().sum::<usize>() != 2 * g.size() || twice < 0 || twice % 2 != 0 {
            fail(name, "face tracing breaks Euler parity");
        }
        if g.order() >= 3 && kappa == 1 && g.size() > 3 * g.order() - 6 + 6 * genus {
            fail(name, "density law violated");
        }
        let short = genus_lower_bound_short_cycles(g, 4, DEFAULT_CYCLE_CAP)?;
        let kern = genus_lower_bound_kernel(g, 4, DEFAULT_CYCLE_CAP)?;
        let b = genus_bounds(g, 5, DEFAULT_CYCLE_CAP);
        if short > genus || kern > genus || b.lower > genus || genus > genus_upper_bound(g) {
            fail(name, "bounds do not bracket the genus");
        }
        for &(u, v) in g.edges() {
            let mut parts: Vec<Vec<usize>> = (0..g.order())
                .filter(|&w| w != u && w != v)
                .map(|w| vec![w])
                .collect();
            parts.push(vec![u, v]);
            let minor = contract_sets(g, &parts)?;
            contractions += 1;
            if exact_genus(&minor, budget)?.genus > genus {
                fail(name, "edge contraction raised the genus");
            }
        }
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if !g.has_edge(u, v) && components(&g.union_with([(u, v)])?).kappa > kappa {
                    fail(name, "adding an edge raised kappa");
                }
            }
        }
        if !fact8_check(g, 3, DEFAULT_CYCLE_CAP)? {
            fail(name, "pairwise cycle check fails at length 3");
        }
        let zs: Vec<usize> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&i| count_z(g, 1, i, DEFAULT_CYCLE_CAP).map(|z| z.z))
            .collect::<Result<_, _>>()?;
        if zs.windows(2).any(|w| w[1] < w[0]) {
            fail(name, "Z decreases in i");
        }
    }
    p.claim(
        failures.is_empty(),
        format!(
            "{} graphs, {contractions} edge contractions, {} violations",
            graphs.len(),
            failures.len()
        ),
    );
    for f in failures.iter().take(10) {
        p.claim(false, f.clone());
    }
    Ok(p.finish(120.0))
}

/// Giant 2-core of `G(n, n/2 + s)` at `n = 1e6`, `s = 31623`.
pub fn supercritical_structure(seed: u64, jobs: Option<usize>) -> Result<Check, HarnessError> {
    let mut p = Check::start("5", "slightly supercritical 2-core, n = 1e6, s = 31623");
    let mut cfg = ExperimentConfig::new(
        Experiment::Supercritical {
            n: 1_000_000,
            s: 31_623,
            census: CensusParams::default(),
        },
        10,
        seed,
    );
    cfg.jobs = jobs;
    let run = run_supercritical(&cfg)?;
    let s = &run.report.summary;
    let target = s.predicted_genus;
    p.claim(
        (s.mean_core_excess - s.predicted_excess).abs() <= 0.25 * s.predicted_excess,
        format!(
            "mean core excess {:.1} within 25% of {:.1}",
            s.mean_core_excess, s.predicted_excess
        ),
    );
    p.claim(
        (s.mean_genus_upper - target).abs() <= 0.25 * target,
        format!(
            "mean genus upper bound {:.1} within 25% of {target:.1}",
            s.mean_genus_upper
        ),
    );
    p.claim(
        s.mean_genus_lower >= 0.3 * target,
        format!(
            "mean genus lower bound {:.1} ≥ 0.3 × {target:.1} = {:.1} (ell = {})",
            s.mean_genus_lower,
            0.3 * target,
            CensusParams::default().ell
        ),
    );
    let bracket = run
        .report
        .rows
        .iter()
        .all(|r| r.stats.genus_lower <= r.stats.genus_upper);
    p.claim(bracket, "lower ≤ upper in every trial");
    Ok(p.finish(300.0))
}

/// Upper and short-cycle lower bounds of `G(2000, 6000)` per edge against
/// `μ(3)`.
pub fn linear_sandwich(seed: u64, jobs: Option<usize>) -> Result<Check, HarnessError> {
    let mut p = Check::start("6", "linear regime sandwich, n = 2000, m = 6000");
    let (n, m) = (2000usize, 6000usize);
    let mu3 = asymptotics::mu(3.0, 1e-12)?.value;
    let rows = run_trials(20, seed, jobs, |_, s: Seed| {
        let g = gnm(n, m, s)?;
        Ok((
            genus_upper_bound(&g),
            genus_lower_bound_short_cycles(&g, 4, DEFAULT_CYCLE_CAP)?,
        ))
    })?;
    let uppers: Vec<f64> = rows
        .iter()
        .map(|((u, _), _)| *u as f64 / m as f64)
        .collect();
    let lowers: Vec<f64> = rows
        .iter()
        .map(|((_, l), _)| *l as f64 / m as f64)
        .collect();
    let worst_upper = uppers.iter().map(|r| (r - mu3).abs()).fold(0.0, f64::max);
    let min_lower = lowers.iter().copied().fold(f64::INFINITY, f64::min);
    p.claim(
        worst_upper <= 0.02,
        format!("mu(3) = {mu3:.6}; upper/m within {worst_upper:.4} in every trial (≤ 0.02)"),
    );
    p.claim(
        min_lower >= 0.3 * mu3,
        format!(
            "smallest lower/m {min_lower:.4} ≥ 0.3 mu(3) = {:.4}; mean {:.4}",
            0.3 * mu3,
            mean(lowers.iter().copied())
        ),
    );
    Ok(p.finish(60.0))
}

/// Path on `1e5` vertices plus `5000` random edges.
pub fn fragile_genus(seed: u64, jobs: Option<usize>) -> Result<Check, HarnessError> {
    let mut p = Check::start("7", "fragile genus, path on 1e5 vertices, k = 5000");
    let mut cfg = ExperimentConfig::new(
        Experiment::Fragile {
            base: BaseSpec::Generated {
                kind: BaseGraph::Path,
                n: 100_000,
            },
            delta: 2,
            k: 5000,
            ell: 4,
        },
        10,
        seed,
    );
    cfg.jobs = jobs;
    let run = run_fragile(&cfg)?;
    let s = &run.report.summary;
    let rows = &run.report.rows;
    p.claim(s.l == 120, format!("l = {} (expected 120)", s.l));
    let t_ok = rows.iter().all(|r| (208..=416).contains(&r.stats.t));
    p.claim(t_ok, format!("t = {} in [208, 416] in every trial", s.t));
    p.claim(
        s.trials_gamma_edges_at_least_t >= 9,
        format!(
            "e(Gamma) ≥ t in {}/10 trials, mean e(Gamma) = {:.1}",
            s.trials_gamma_edges_at_least_t, s.mean_gamma_edges
        ),
    );
    p.claim(
        s.trials_positive_lower >= 9,
        format!(
            "positive genus lower bound in {}/10 trials",
            s.trials_positive_lower
        ),
    );
    p.claim(
        s.mean_genus_lower >= 0.02 * s.t as f64,
        format!(
            "mean lower bound {:.1} ≥ 0.02 t = {:.2}",
            s.mean_genus_lower,
            0.02 * s.t as f64
        ),
    );
    p.claim(
        s.upper_bound <= 5000,
        format!("upper bound {} ≤ k", s.upper_bound),
    );
    Ok(p.finish(120.0))
}

/// Plain Monte Carlo estimate of `λ(i)` with its standard error.
///
/// With `x = i·U`, `U` uniform, and `Z` standard normal, substituting
/// `y = x²/Z²` in the inner integral gives
/// `λ(i) = i·E[(e^{4x} − 1)/(2x) · exp(−2x²/Z²)]`, a bounded integrand.
pub fn lambda_i_monte_carlo(i: f64, samples: u64, seed: Seed) -> (f64, f64) {
    const CHUNK: u64 = 1 << 20;
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seed.trial(c).rng();
            let len = CHUNK.min(samples - c * CHUNK);
            let (mut s, mut s2) = (0.0f64, 0.0f64);
            for _ in 0..len {
                let x = i * rng.gen::<f64>();
                let z: f64 = rng.sample(StandardNormal);
                let head = if x == 0.0 {
                    2.0
                } else {
                    (4.0 * x).exp_m1() / (2.0 * x)
                };
                let v = i * head * (-2.0 * x * x / (z * z)).exp();
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    (mean, (var / n).sqrt())
}

/// Mean of `Z(n, 1)` at `n = 1e6`, `s = ⌊n^{3/4}⌋` against `λ(1)`, and the
/// quadrature value of `λ(1)` against Monte Carlo.
pub fn poisson_statistic(
    seed: u64,
    jobs: Option<usize>,
    trials: usize,
    mc_samples: u64,
) -> Result<Check, HarnessError> {
    let mut p = Check::start("8", "cycle statistic Z(n, 1) against lambda_i(1)");
    let n = 1_000_000usize;
    let s = (n as f64).powf(0.75).floor() as usize;
    let quad = lambda_i(1.0, 1e-10)?;
    let (mc, se) = lambda_i_monte_carlo(1.0, mc_samples, Seed::new(seed, u64::MAX));
    p.claim(
        (quad - mc).abs() < 1e-3,
        format!("quadrature {quad:.9}, Monte Carlo {mc:.6} ± {se:.1e} ({mc_samples} samples)"),
    );
    let rows = run_trials(trials, seed, jobs, |_, sd| {
        let g = gnm(n, n / 2 + s, sd)?;
        Ok(count_z(&g, s, 1.0, DEFAULT_CYCLE_CAP)?.z)
    })?;
    let zmean = mean(rows.iter().map(|(z, _)| *z as f64));
    p.claim(
        (zmean - quad).abs() <= 0.5 * quad,
        format!("mean Z over {trials} trials {zmean:.3} within 50% of {quad:.4}"),
    );
    Ok(p.finish(1800.0))
}
