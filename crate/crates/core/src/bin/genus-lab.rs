use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use genus_lab::asymptotics::{self, contiguity_verdict, predict_genus, RegimeConfig};
use genus_lab::census::CensusParams;
use genus_lab::embedding::{exact_genus, genus_bounds, DEFAULT_GENUS_BUDGET};
use genus_lab::fragile::BaseGraph;
use genus_lab::graph::{read_edge_list, write_edge_list, Graph, DEFAULT_CYCLE_CAP};
use genus_lab::harness::{
    self, resolve_output, run_suite, suites::SUITE_SEED, BaseSpec, CsvReport, Experiment,
    ExperimentConfig, HarnessError, OutputFormat, SuiteName,
};
use genus_lab::random::{edge_process, gnm, gnp, perturb, Seed};

#[derive(Parser)]
#[command(
    name = "genus-lab",
    version,
    about = "Genus experiments on random graphs"
)]
struct Cli {
    /// Master seed; trial i uses stream (seed, i).
    #[arg(long, global = true, default_value_t = SUITE_SEED)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Output file; falls back to $GENUS_LAB_OUT_DIR/<command>.<ext>, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and print it as an edge list.
    Generate(GenerateArgs),
    /// Exact genus or Euler bounds of an edge-list graph.
    Genus {
        #[command(subcommand)]
        what: GenusCommand,
    },
    /// Evaluate u, u', mu or lambda_i.
    Asym(AsymArgs),
    /// Regime and predicted genus of G(n, m).
    Predict {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Whether genus g separates G(n, m) from the uniform model.
    Contiguity {
        #[arg(long)]
        n: u64,
        /// Edge count; omit for the uniform model's n²/24.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        g: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Structure of the giant 2-core just above the phase transition.
    Census {
        #[command(subcommand)]
        what: CensusCommand,
    },
    /// Monte Carlo runs against the limit functions.
    Mc {
        #[command(subcommand)]
        what: McCommand,
    },
    /// Genus bounds per edge over a grid of m.
    Curve(CurveArgs),
    /// Fixed base graph plus k random edges.
    Fragile(FragileArgs),
    /// Run a named verification suite.
    Suite { name: SuiteName },
    /// Run an experiment from a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnm,
    Gnp,
    /// First m edges of the random edge process.
    Process,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value_t = Model::Gnm)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Add this many random edges to the given base graph instead.
    #[arg(long, requires = "base")]
    perturb: Option<usize>,
    #[arg(long)]
    base: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenusCommand {
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GENUS_BUDGET)]
        budget: u64,
    },
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        ell: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AsymFn {
    U,
    UPrime,
    Mu,
    LambdaI,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(value_enum)]
    function: AsymFn,
    /// Points to evaluate at.
    #[arg(required = true, num_args = 1..)]
    at: Vec<f64>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Subcommand)]
enum CensusCommand {
    Supercritical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        ell: usize,
        /// Neighbourhood parameter; default ½ ln(s³/n²).
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        z_i: f64,
        #[arg(long)]
        structure_checks: bool,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: usize,
    },
}

#[derive(Subcommand)]
enum McCommand {
    Kappa {
        #[arg(long)]
        n: usize,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        lambdas: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
    ms: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    ell: usize,
}

#[derive(Args)]
struct FragileArgs {
    /// Base graph as an edge list.
    #[arg(long, conflicts_with = "base")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    base: Option<BaseKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    ell: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseKind {
    Path,
    Cycle,
    Grid,
    RandomTree,
}

impl From<BaseKind> for BaseGraph {
    fn from(k: BaseKind) -> Self {
        match k {
            BaseKind::Path => BaseGraph::Path,
            BaseKind::Cycle => BaseGraph::Cycle,
            BaseKind::Grid => BaseGraph::Grid,
            BaseKind::RandomTree => BaseGraph::RandomTree,
        }
    }
}

struct Sink {
    path: Option<PathBuf>,
    format: OutputFormat,
}

impl Sink {
    fn emit(&self, text: &str) -> Result<(), HarnessError> {
        match &self.path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(p, text)?;
            }
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, value: &T) -> Result<(), HarnessError> {
        self.emit(&(serde_json::to_string_pretty(value)? + "\n"))
    }

    fn run<R: Serialize + CsvReport>(&self, run: &R) -> Result<(), HarnessError> {
        match self.format {
            OutputFormat::Json => self.json(run),
            OutputFormat::Csv => {
                let mut buf = Vec::new();
                run.write_csv(&mut buf)?;
                self.emit(&String::from_utf8_lossy(&buf))
            }
        }
    }

    fn rows<T: Serialize>(&self, rows: &[T]) -> Result<(), HarnessError> {
        match self.format {
            OutputFormat::Json => self.json(&rows),
            OutputFormat::Csv => {
                let mut buf = Vec::new();
                harness::write_rows(&mut buf, rows)?;
                self.emit(&String::from_utf8_lossy(&buf))
            }
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, HarnessError> {
    Ok(read_edge_list(&std::fs::read_to_string(path)?)?)
}

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidConfig(msg.into())
}

fn stem(command: &Command) -> &'static str {
    match command {
        Command::Generate(_) => "generate",
        Command::Genus { .. } => "genus",
        Command::Asym(_) => "asym",
        Command::Predict { .. } => "predict",
        Command::Contiguity { .. } => "contiguity",
        Command::Census { .. } => "census",
        Command::Mc { .. } => "mc-kappa",
        Command::Curve(_) => "curve",
        Command::Fragile(_) => "fragile",
        Command::Suite { .. } => "suite",
        Command::Run { .. } => "run",
    }
}

fn run_config(config: &ExperimentConfig, sink: &Sink) -> Result<bool, HarnessError> {
    match &config.experiment {
        Experiment::McKappa { .. } => sink.run(&harness::run_mc_kappa(config)?)?,
        Experiment::GenusCurve { .. } => sink.run(&harness::run_genus_curve(config)?)?,
        Experiment::Supercritical { .. } => sink.run(&harness::run_supercritical(config)?)?,
        Experiment::Fragile { .. } => sink.run(&harness::run_fragile(config)?)?,
        Experiment::Suite { name } => return suite(*name, config.seed, config.jobs, sink),
    }
    Ok(true)
}

fn suite(
    name: SuiteName,
    seed: u64,
    jobs: Option<usize>,
    sink: &Sink,
) -> Result<bool, HarnessError> {
    let report = run_suite(name, seed, jobs)?;
    for c in &report.checks {
        eprint!("{c}");
    }
    sink.json(&report)?;
    Ok(report.passed)
}

fn experiment(
    cli: &Cli,
    experiment: Experiment,
    trials: usize,
    cycle_cap: usize,
) -> ExperimentConfig {
    ExperimentConfig {
        jobs: cli.jobs,
        cycle_cap,
        output: cli.out.clone(),
        format: cli.format,
        ..ExperimentConfig::new(experiment, trials, cli.seed)
    }
}

fn run(cli: &Cli) -> Result<bool, HarnessError> {
    let mut sink = Sink {
        path: resolve_output(cli.out.as_deref(), stem(&cli.command), cli.format),
        format: cli.format,
    };
    match &cli.command {
        Command::Generate(a) => {
            let seed = Seed::new(cli.seed, a.trial);
            let g = match (a.perturb, &a.base, a.model) {
                (Some(k), Some(base), _) => perturb(&load_graph(base)?, k, seed)?.graph,
                (_, _, Model::Gnm) => gnm(a.n, a.m.ok_or_else(|| usage("gnm needs --m"))?, seed)?,
                (_, _, Model::Gnp) => gnp(a.n, a.p.ok_or_else(|| usage("gnp needs --p"))?, seed)?,
                (_, _, Model::Process) => {
                    let m = a.m.ok_or_else(|| usage("process needs --m"))?;
                    let mut process = edge_process(a.n, seed);
                    let edges: Vec<_> = process.by_ref().take(m).collect();
                    Graph::from_edges(a.n, edges)?
                }
            };
            sink.emit(&write_edge_list(&g))?;
        }
        Command::Genus { what } => match what {
            GenusCommand::Exact { input, budget } => {
                sink.json(&exact_genus(&load_graph(input)?, *budget)?)?
            }
            GenusCommand::Bounds {
                input,
                ell,
                cycle_cap,
            } => {
                if *ell < 3 {
                    return Err(usage("ell must be at least 3"));
                }
                sink.json(&genus_bounds(&load_graph(input)?, *ell, *cycle_cap))?
            }
        },
        Command::Asym(a) => {
            #[derive(Serialize)]
            struct Point {
                x: f64,
                value: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                tail_bound: Option<f64>,
            }
            let points =
                a.at.iter()
                    .map(|&x| {
                        let (value, tail_bound) = match a.function {
                            AsymFn::U => {
                                asymptotics::u(x, a.tol).map(|e| (e.value, Some(e.tail_bound)))
                            }
                            AsymFn::UPrime => asymptotics::u_prime(x, a.tol)
                                .map(|e| (e.value, Some(e.tail_bound))),
                            AsymFn::Mu => {
                                asymptotics::mu(x, a.tol).map(|e| (e.value, Some(e.tail_bound)))
                            }
                            AsymFn::LambdaI => asymptotics::lambda_i(x, a.tol).map(|v| (v, None)),
                        }?;
                        Ok(Point {
                            x,
                            value,
                            tail_bound,
                        })
                    })
                    .collect::<Result<Vec<_>, HarnessError>>()?;
            if let (OutputFormat::Csv, AsymFn::Mu) = (cli.format, a.function) {
                let mut buf = Vec::new();
                harness::write_mu_curve(&mut buf, &a.at, a.tol)?;
                sink.emit(&String::from_utf8_lossy(&buf))?;
            } else {
                sink.rows(&points)?;
            }
        }
        Command::Predict { n, m } => {
            sink.json(&predict_genus(*n, *m, &RegimeConfig::default())?)?
        }
        Command::Contiguity { n, m, g, eps } => {
            #[derive(Serialize)]
            struct Verdict {
                n: u64,
                m: Option<u64>,
                g: f64,
                eps: f64,
                verdict: asymptotics::Contiguity,
            }
            let verdict = contiguity_verdict(*n, *m, *g, *eps, &RegimeConfig::default())?;
            sink.json(&Verdict {
                n: *n,
                m: *m,
                g: *g,
                eps: *eps,
                verdict,
            })?
        }
        Command::Census {
            what:
                CensusCommand::Supercritical {
                    n,
                    s,
                    trials,
                    ell,
                    a,
                    z_i,
                    structure_checks,
                    cycle_cap,
                },
        } => {
            let census = CensusParams {
                ell: *ell,
                a: *a,
                z_i: *z_i,
                structure_checks: *structure_checks,
                cycle_cap: *cycle_cap,
            };
            let cfg = experiment(
                cli,
                Experiment::Supercritical {
                    n: *n,
                    s: *s,
                    census,
                },
                *trials,
                *cycle_cap,
            );
            run_config(&cfg, &sink)?;
        }
        Command::Mc {
            what:
                McCommand::Kappa {
                    n,
                    lambdas,
                    trials,
                    tol,
                },
        } => {
            let cfg = experiment(
                cli,
                Experiment::McKappa {
                    n: *n,
                    lambdas: lambdas.clone(),
                    tol: *tol,
                },
                *trials,
                DEFAULT_CYCLE_CAP,
            );
            run_config(&cfg, &sink)?;
        }
        Command::Curve(a) => {
            let cfg = experiment(
                cli,
                Experiment::GenusCurve {
                    n: a.n,
                    ms: a.ms.clone(),
                    ell: a.ell,
                },
                a.trials,
                DEFAULT_CYCLE_CAP,
            );
            run_config(&cfg, &sink)?;
        }
        Command::Fragile(a) => {
            let base = match (&a.input, a.base, a.n) {
                (Some(path), _, _) => BaseSpec::File { path: path.clone() },
                (None, Some(kind), Some(n)) => BaseSpec::Generated {
                    kind: kind.into(),
                    n,
                },
                _ => return Err(usage("fragile needs --input or --base with --n")),
            };
            let cfg = experiment(
                cli,
                Experiment::Fragile {
                    base,
                    delta: a.delta,
                    k: a.k,
                    ell: a.ell,
                },
                a.trials,
                DEFAULT_CYCLE_CAP,
            );
            run_config(&cfg, &sink)?;
        }
        Command::Suite { name } => return suite(*name, cli.seed, cli.jobs, &sink),
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(config)?;
            sink = Sink {
                path: resolve_output(
                    cfg.output.as_deref().or(cli.out.as_deref()),
                    "run",
                    cfg.format,
                ),
                format: cfg.format,
            };
            return run_config(&cfg, &sink);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
