use std::collections::HashMap;

use genus_lab::fragile::BaseGraph;
use genus_lab::graph::components;
use genus_lab::random::{
    edge_process, gnm, gnm_edges, gnp, kappa_trajectory, kappa_trajectory_until, pair_count,
    perturb, Seed,
};
use proptest::prelude::*;

#[test]
fn gnm_four_three_is_uniform() {
    // All C(6, 3) = 20 edge sets of G(4, 3) should be equally likely.
    let trials = 20_000u64;
    let mut counts: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
    for t in 0..trials {
        let g = gnm(4, 3, Seed::new(11, t)).unwrap();
        *counts.entry(g.edges().to_vec()).or_default() += 1;
    }
    assert_eq!(counts.len(), 20);
    let expected = trials as f64 / 20.0;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 19 degrees of freedom; the 0.999 quantile is 43.8.
    assert!(chi2 < 43.8, "chi-square {chi2}");
}

#[test]
fn gnp_edge_count_mean() {
    let (n, p, trials) = (200usize, 0.03, 400u64);
    let pairs = pair_count(n) as f64;
    let mean = (0..trials)
        .map(|t| gnp(n, p, Seed::new(5, t)).unwrap().size() as f64)
        .sum::<f64>()
        / trials as f64;
    let se = (pairs * p * (1.0 - p) / trials as f64).sqrt();
    assert!(
        (mean - pairs * p).abs() < 3.0 * se,
        "mean {mean}, expected {}",
        pairs * p
    );
}

#[test]
fn gnp_extremes() {
    assert_eq!(gnp(30, 0.0, Seed::new(0, 0)).unwrap().size(), 0);
    assert_eq!(gnp(30, 1.0, Seed::new(0, 0)).unwrap().size(), 435);
    assert!(gnp(30, 1.5, Seed::new(0, 0)).is_err());
    assert!(gnm(4, 7, Seed::new(0, 0)).is_err());
}

#[test]
fn gnm_is_a_prefix_of_the_edge_process() {
    let seed = Seed::new(9, 3);
    let process: Vec<_> = edge_process(500, seed).take(800).collect();
    assert_eq!(gnm_edges(500, 800, seed).unwrap(), process);
    assert_eq!(gnm_edges(500, 300, seed).unwrap(), process[..300]);
}

#[test]
fn full_trajectory_ends_connected() {
    let traj = kappa_trajectory(40, Seed::new(2, 0));
    assert_eq!(traj.len(), 781);
    assert_eq!(traj[0], 40);
    assert_eq!(*traj.last().unwrap(), 1);
}

#[test]
fn trial_streams_differ() {
    let a = gnm(1000, 500, Seed::new(1, 0)).unwrap();
    let b = gnm(1000, 500, Seed::new(1, 1)).unwrap();
    let c = gnm(1000, 500, Seed::new(2, 0)).unwrap();
    assert_ne!(a, b);
    assert_ne!(a, c);
}

#[test]
fn base_graphs_respect_their_degree_bound() {
    for (kind, delta) in [
        (BaseGraph::Path, 2),
        (BaseGraph::Cycle, 2),
        (BaseGraph::Grid, 4),
        (BaseGraph::RandomTree, 3),
    ] {
        let g = kind.build(400, delta, Seed::new(0, 0)).unwrap();
        assert!(g.max_degree() <= delta);
        assert_eq!(components(&g).kappa, 1);
        assert!(g.order() <= 400 && g.order() >= 380);
    }
}

proptest! {
    #[test]
    fn generation_is_deterministic(n in 2usize..300, frac in 0.0f64..1.0, master: u64, trial: u64) {
        let m = (frac * pair_count(n) as f64) as usize;
        let seed = Seed::new(master, trial);
        let g = gnm(n, m, seed).unwrap();
        prop_assert_eq!(g.size(), m);
        prop_assert_eq!(&g, &gnm(n, m, seed).unwrap());
        let handle = std::thread::spawn(move || gnm(n, m, seed).unwrap());
        prop_assert_eq!(&g, &handle.join().unwrap());
    }

    #[test]
    fn trajectory_is_monotone(n in 1usize..200, steps in 0usize..300, master: u64) {
        let steps = steps.min(pair_count(n) as usize);
        let traj = kappa_trajectory_until(n, steps, Seed::new(master, 0));
        prop_assert_eq!(traj.len(), steps + 1);
        prop_assert!(traj.windows(2).all(|w| w[1] == w[0] || w[1] + 1 == w[0]));
        let g = gnm(n, steps, Seed::new(master, 0)).unwrap();
        prop_assert_eq!(traj[steps], components(&g).kappa);
    }

    #[test]
    fn perturbation_adds_distinct_pairs(n in 3usize..60, k in 0usize..40, master: u64) {
        let base = genus_lab::graph::Graph::path(n);
        let k = k.min(pair_count(n) as usize);
        let p = perturb(&base, k, Seed::new(master, 0)).unwrap();
        prop_assert_eq!(p.added.len(), k);
        let mut sorted = p.added.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), k);
        let overlap = p.added.iter().filter(|&&(u, v)| base.has_edge(u, v)).count();
        prop_assert_eq!(p.graph.size(), base.size() + k - overlap);
    }
}
