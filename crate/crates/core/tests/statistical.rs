//! Statistical checks with fixed seeds: sampler uniformity, tie-breaking
//! equivalence, geometric walk counts, and confidence-interval calibration.
//!
//! Every test draws from a hard-coded seed, so outcomes are deterministic;
//! the thresholds (3 standard errors per bin, chi-square at the 0.001 level)
//! would be missed by essentially every seed under a biased implementation.

use std::collections::HashMap;

use plateau::{
    empirical_success_probability, estimate_brfs, estimate_rrw, expected_brfs_tree, mix,
    run_brfs, run_rrw, validate_brfs, DepthError, Exact, GraphTask, RrwConfig, SearchSpace,
    SplitMix64, TieBreaking, TieMode, TreeShape, TreeTask,
};

/// Chi-square 0.001 critical values by degrees of freedom.
fn chi_square_crit(dof: usize) -> f64 {
    match dof {
        3 => 16.266,
        7 => 24.322,
        8 => 26.124,
        15 => 37.697,
        35 => 66.619,
        _ => panic!("no critical value tabulated for {dof} degrees of freedom"),
    }
}

#[test]
fn goal_pairs_are_uniform_over_all_placements() {
    // b=3, d*=2, g=2: each of the C(9,2) = 36 unordered pairs should occur
    // with frequency 1/36, within 3 standard errors per pair and within the
    // chi-square budget overall.
    let shape = TreeShape::new(3, 2, 2).unwrap();
    let samples = 90_000u64;
    let mut counts: HashMap<(u128, u128), u64> = HashMap::new();
    for seed in 0..samples {
        let task = TreeTask::from_spec(&shape.with_seed(mix(0xA11CE, seed))).unwrap();
        let pair = (task.goal_indices()[0], task.goal_indices()[1]);
        *counts.entry(pair).or_default() += 1;
    }
    assert_eq!(counts.len(), 36, "every pair must appear");
    let p = 1.0 / 36.0;
    let expected = samples as f64 * p;
    let se = (samples as f64 * p * (1.0 - p)).sqrt();
    let mut chi_square = 0.0;
    for (&pair, &count) in &counts {
        assert!(
            (count as f64 - expected).abs() <= 3.0 * se,
            "pair {pair:?} occurred {count} times, expected {expected:.1} +- {:.1}",
            3.0 * se
        );
        chi_square += (count as f64 - expected).powi(2) / expected;
    }
    assert!(chi_square < chi_square_crit(35), "chi-square {chi_square:.1}");
}

#[test]
fn each_goal_slot_is_hit_at_the_goal_density() {
    // Over many placement seeds every goal-level index is selected with
    // frequency g / b^{d*}.
    let shape = TreeShape::new(3, 2, 2).unwrap();
    let samples = 30_000u64;
    let mut counts = [0u64; 9];
    for seed in 0..samples {
        let task = TreeTask::from_spec(&shape.with_seed(mix(0xB0B, seed))).unwrap();
        for &g in task.goal_indices() {
            counts[g as usize] += 1;
        }
    }
    let p = 2.0 / 9.0;
    let expected = samples as f64 * p;
    let se = (samples as f64 * p * (1.0 - p)).sqrt();
    for (index, &count) in counts.iter().enumerate() {
        assert!(
            (count as f64 - expected).abs() <= 3.0 * se,
            "index {index} hit {count} times, expected {expected:.1}"
        );
    }
}

#[test]
fn random_ties_and_random_placements_give_the_same_distribution() {
    // b=2, d*=2, g=1: the goal-test count is 4 + m for m uniform on 0..4,
    // whether the randomness comes from the placement (lexicographic ties)
    // or from tie-breaking (fixed placement).
    let shape = TreeShape::new(2, 2, 1).unwrap();
    let trials = 40_000u64;
    let expected = trials as f64 / 4.0;

    let mut placement_counts = [0u64; 4];
    for trial in 0..trials {
        let task = TreeTask::from_spec(&shape.with_seed(mix(17, trial))).unwrap();
        let stats = run_brfs(&task, &TieBreaking::lexicographic()).unwrap();
        placement_counts[stats.goal_tests as usize - 4] += 1;
    }

    let fixed = TreeTask::with_goals(shape, vec![2]).unwrap();
    let mut tie_counts = [0u64; 4];
    for trial in 0..trials {
        let stats = run_brfs(&fixed, &TieBreaking::uniform_random(mix(18, trial))).unwrap();
        tie_counts[stats.goal_tests as usize - 4] += 1;
    }

    for counts in [placement_counts, tie_counts] {
        let chi_square: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi_square < chi_square_crit(3), "{counts:?} -> chi-square {chi_square:.1}");
    }
}

#[test]
fn walk_counts_are_geometric() {
    // b=2, d*=1, g=1: each walk succeeds with probability 1/2, so the walk
    // count is geometric; bin the tail at 8+.
    let shape = TreeShape::new(2, 1, 1).unwrap();
    let trials = 40_000u64;
    let mut bins = [0u64; 8];
    for trial in 0..trials {
        let task = TreeTask::from_spec(&shape.with_seed(mix(4, trial))).unwrap();
        let stats = run_rrw(&task, &RrwConfig::new(DepthError::one(), mix(5, trial))).unwrap();
        assert!(stats.found);
        assert_eq!(stats.goal_tests, 1 + stats.walks);
        bins[(stats.walks as usize - 1).min(7)] += 1;
    }
    let mut chi_square = 0.0;
    for (k, &observed) in bins.iter().enumerate() {
        // P(walks = k+1) = 2^-(k+1); the last bin collects the tail 2^-7.
        let p = if k < 7 { 0.5f64.powi(k as i32 + 1) } else { 0.5f64.powi(7) };
        let expected = trials as f64 * p;
        chi_square += (observed as f64 - expected).powi(2) / expected;
    }
    assert!(chi_square < chi_square_crit(7), "bins {bins:?} -> chi-square {chi_square:.1}");
}

#[test]
fn successor_sampling_is_uniform() {
    let graph = GraphTask::new(
        vec![vec![1, 2, 3, 4, 5], vec![], vec![], vec![], vec![], vec![]],
        0,
        [5],
    )
    .unwrap();
    let tree = TreeTask::from_spec(&TreeShape::new(4, 3, 1).unwrap().with_seed(0)).unwrap();
    let mut rng = SplitMix64::new(0xC0FFEE);
    let draws = 50_000u64;

    let mut graph_counts = [0u64; 5];
    for _ in 0..draws {
        let v = graph.sample_successor(0, &mut rng).unwrap();
        graph_counts[v - 1] += 1;
    }
    let p = 0.2;
    let se = (draws as f64 * p * (1.0 - p)).sqrt();
    for &c in &graph_counts {
        assert!((c as f64 - draws as f64 * p).abs() <= 3.0 * se, "{graph_counts:?}");
    }

    let mut tree_counts = [0u64; 4];
    for _ in 0..draws {
        let v = tree.sample_successor(tree.initial(), &mut rng).unwrap();
        tree_counts[v.index as usize] += 1;
    }
    let p = 0.25;
    let se = (draws as f64 * p * (1.0 - p)).sqrt();
    for &c in &tree_counts {
        assert!((c as f64 - draws as f64 * p).abs() <= 3.0 * se, "{tree_counts:?}");
    }
}

#[test]
fn derived_trial_streams_pass_an_equidistribution_check() {
    // First outputs of per-trial streams derived via mix() spread uniformly
    // over 16 buckets.
    let trials = 64_000u64;
    let mut buckets = [0u64; 16];
    for trial in 0..trials {
        let mut rng = SplitMix64::new(mix(0xDECAF, trial));
        buckets[(rng.next_u64() >> 60) as usize] += 1;
    }
    let expected = trials as f64 / 16.0;
    let chi_square: f64 = buckets
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi_square < chi_square_crit(15), "{buckets:?} -> chi-square {chi_square:.1}");
}

#[test]
fn rrw_mean_matches_the_two_leaf_closed_form() {
    let shape = TreeShape::new(2, 1, 1).unwrap();
    let summary = estimate_rrw(shape, DepthError::one(), 100_000, 31).unwrap();
    assert!(
        (summary.mean - 3.0).abs() <= 3.0 * summary.std_error,
        "mean {} se {}",
        summary.mean,
        summary.std_error
    );
}

#[test]
fn empirical_success_probability_matches_goal_density() {
    let task = TreeTask::from_spec(&TreeShape::new(4, 6, 16).unwrap().with_seed(23)).unwrap();
    let estimate = empirical_success_probability(&task, 6, 1_000_000, 29).unwrap();
    let p: f64 = 1.0 / 256.0;
    let se = (p * (1.0 - p) / 1_000_000.0f64).sqrt();
    let estimate_f64 = num::traits::ToPrimitive::to_f64(&estimate).unwrap();
    assert!((estimate_f64 - p).abs() <= 3.0 * se, "estimate {estimate_f64} vs {p}");

    // Saturated goal level: every walk reaches a goal.
    let saturated = TreeTask::from_spec(&TreeShape::new(3, 2, 9).unwrap().with_seed(1)).unwrap();
    let estimate = empirical_success_probability(&saturated, 2, 500, 3).unwrap();
    assert_eq!(estimate, Exact::from_integer(1.into()));
}

#[test]
fn estimator_means_track_a_mid_sized_closed_form() {
    // b=3, d*=4, g=5: closed form 161/3.
    let shape = TreeShape::new(3, 4, 5).unwrap();
    let analytic = expected_brfs_tree::<Exact>(3, 4, 5).unwrap().value;
    assert_eq!(analytic, Exact::new(161.into(), 3.into()));
    let summary = estimate_brfs(shape, 100_000, 37, TieMode::Lexicographic).unwrap();
    let target = 161.0 / 3.0;
    assert!((summary.mean - target).abs() <= 3.0 * summary.std_error);
}

#[test]
fn confidence_intervals_are_calibrated() {
    // Across 100 batches with distinct base seeds the analytic value must
    // fall inside the 99% interval at least 95 times.
    let shape = TreeShape::new(2, 2, 1).unwrap();
    let analytic = num::traits::ToPrimitive::to_f64(
        &expected_brfs_tree::<Exact>(2, 2, 1).unwrap().value,
    )
    .unwrap();
    let mut covered = 0;
    for rep in 0..100u64 {
        let summary =
            estimate_brfs(shape, 2_000, mix(0xCA11B, rep), TieMode::Lexicographic).unwrap();
        if summary.ci_low <= analytic && analytic <= summary.ci_high {
            covered += 1;
        }
    }
    assert!(covered >= 95, "analytic value covered in only {covered}/100 intervals");
}

#[test]
fn validation_passes_across_tie_modes() {
    let shape = TreeShape::new(2, 1, 1).unwrap();
    for mode in [TieMode::Lexicographic, TieMode::UniformRandom] {
        let report = validate_brfs(shape, 100_000, 7, mode, 4.0).unwrap();
        assert!(report.pass, "mode {mode:?}: z = {}", report.z_score);
        assert_eq!(report.analytic.value, Exact::new(5.into(), 2.into()));
    }
}
