//! Genus of Erdős–Rényi random graphs.
//!
//! The crate is organised around the pieces of one experimental pipeline:
//!
//! - [`graph`]: simple graphs, components, 2-cores, short cycles, minors.
//! - [`random`]: seeded `G(n, m)`, `G(n, p)`, the random edge process and
//!   random perturbation of a fixed base graph.
//! - [`embedding`]: face tracing, exact genus of small graphs and Euler
//!   genus bounds.
//! - [`asymptotics`]: the limiting component density `u(c)`, the genus
//!   density `μ(λ)`, the cycle-count intensity `λ(i)`, the regime predictor
//!   and contiguity thresholds.
//! - [`census`]: cycle neighbourhoods and the structure of the slightly
//!   supercritical giant 2-core.
//! - [`fragile`]: genus lower bounds for a bounded-degree graph plus a few
//!   random edges, via a contracted minor.
//! - [`harness`]: experiment configs, parallel seeded trials, reports and
//!   the verification suites.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod asymptotics;
pub mod census;
pub mod corpus;
pub mod embedding;
pub mod fragile;
pub mod graph;
pub mod harness;
pub mod random;
