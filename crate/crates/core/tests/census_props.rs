mod common;

use common::{all_graphs, brute_force_neighbourhood, leaf_neighbourhood_fixture, small_graph};
use genus_lab::census::{
    classify_cycle_neighborhood, count_z, fact8_check, fact8_length, fact9_check,
    supercritical_report, CensusParams,
};
use genus_lab::corpus::connected_up_to_six;
use genus_lab::graph::{cycles_up_to, Cycle, Graph};
use genus_lab::random::Seed;
use proptest::prelude::*;

/// Whether every connected induced subgraph on fewer than `l` vertices
/// has at most as many edges as vertices, over all vertex subsets.
fn fact8_brute_force(g: &Graph, l: usize) -> bool {
    let n = g.order();
    (0u32..1 << n).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if set.is_empty() || set.len() >= l {
            return true;
        }
        let sub = g.induced(&set).graph;
        genus_lab::graph::components(&sub).kappa > 1 || sub.size() <= sub.order()
    })
}

fn check_all_cycles(g: &Graph) {
    for c in cycles_up_to(g, g.order(), 1_000_000).unwrap() {
        let nb = classify_cycle_neighborhood(g, &c).unwrap();
        let expected = brute_force_neighbourhood(g, c.vertices());
        assert_eq!(
            (nb.leaf_size, nb.good, nb.bad),
            expected,
            "{g:?} cycle {:?}",
            c.vertices()
        );
    }
}

#[test]
fn leaf_neighbourhood_picture() {
    let (g, cycle) = leaf_neighbourhood_fixture();
    let c = Cycle::new(cycle.clone()).unwrap();
    let nb = classify_cycle_neighborhood(&g, &c).unwrap();
    assert_eq!((nb.leaf_size, nb.good, nb.bad), (11, 6, 2));
    assert_eq!(brute_force_neighbourhood(&g, &cycle), (11, 6, 2));
    // Two tree attachment vertices on top of the good and bad neighbours.
    assert_eq!(nb.neighbours, 10);
}

#[test]
fn neighbourhoods_match_deletion_on_small_graphs() {
    for n in 3..=6 {
        for g in all_graphs(n) {
            check_all_cycles(&g);
        }
    }
}

#[test]
fn neighbourhoods_match_deletion_on_corpus() {
    for c in connected_up_to_six() {
        check_all_cycles(&c.graph);
    }
}

#[test]
fn fact8_length_value() {
    // 0.1 · (n/s) · ln(s³/n²) at n = 1e6, s = 31623.
    assert_eq!(fact8_length(1_000_000, 31_623), 11);
}

#[test]
fn small_supercritical_report_is_consistent() {
    let params = CensusParams {
        structure_checks: true,
        ..CensusParams::default()
    };
    let r = supercritical_report(20_000, 1_500, Seed::new(1, 0), &params).unwrap();
    assert_eq!(r.m, 11_500);
    assert!(r.core_vertices <= r.giant_vertices);
    assert_eq!(r.core_excess, r.core_edges as i64 - r.core_vertices as i64);
    assert_eq!(
        r.kernel_edges as i64 - r.kernel_vertices as i64,
        r.core_excess
    );
    assert!(r.genus_lower <= r.genus_upper);
    assert_eq!(
        r.genus_lower,
        r.genus_lower_kernel.max(r.genus_lower_short_cycles)
    );
    assert!(r.fact8.is_some() && r.fact9.is_some());
    assert!(r.warnings.is_empty());
    let again = supercritical_report(20_000, 1_500, Seed::new(1, 0), &params).unwrap();
    assert_eq!(r, again);
}

#[test]
fn out_of_regime_parameters_warn() {
    let r = supercritical_report(2_000, 20, Seed::new(0, 0), &CensusParams::default()).unwrap();
    assert!(!r.warnings.is_empty());
    assert!(supercritical_report(2_000, 0, Seed::new(0, 0), &CensusParams::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn neighbourhoods_match_deletion(g in small_graph(7, 12)) {
        for c in cycles_up_to(&g, 6, 100_000).unwrap() {
            let nb = classify_cycle_neighborhood(&g, &c).unwrap();
            prop_assert_eq!((nb.leaf_size, nb.good, nb.bad), brute_force_neighbourhood(&g, c.vertices()));
        }
    }

    #[test]
    fn z_grows_with_the_length_cutoff(g in small_graph(3, 12), s in 1usize..6, a in 0.0f64..4.0, b in 0.0f64..4.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let zl = count_z(&g, s, lo, 1_000_000).unwrap();
        let zh = count_z(&g, s, hi, 1_000_000).unwrap();
        prop_assert!(zl.z <= zh.z);
        prop_assert!(zl.cycles_examined <= zh.cycles_examined);
    }

    #[test]
    fn no_dense_pair_below_three_vertices(g in small_graph(0, 12)) {
        prop_assert!(fact8_check(&g, 3, 1_000_000).unwrap());
    }

    #[test]
    fn fact8_matches_subset_search(g in small_graph(3, 10), l in 1usize..11) {
        prop_assert_eq!(fact8_check(&g, l, 1_000_000).unwrap(), fact8_brute_force(&g, l));
    }

    #[test]
    fn fact8_is_monotone_in_length(g in small_graph(3, 10), l in 3usize..9) {
        // A witness on fewer than l vertices is also one on fewer than l + 1.
        if !fact8_check(&g, l, 1_000_000).unwrap() {
            prop_assert!(!fact8_check(&g, l + 1, 1_000_000).unwrap());
        }
    }

    #[test]
    fn fact9_holds_on_forests(n in 1usize..40, a in 0.1f64..3.0, s in 1usize..10) {
        prop_assert!(fact9_check(&Graph::path(n), a, s, 1_000).unwrap());
    }
}
