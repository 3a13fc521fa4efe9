//! Batched simulation harness: estimates expected goal tests for both
//! engines on tree tasks and validates the estimates against the closed
//! forms.
//!
//! Counts accumulate into exact integer sums (converted to decimals only
//! when a summary is built), and every trial derives its seeds from the
//! batch seed, so batches are reproducible bit-for-bit regardless of how the
//! trials are scheduled across threads.

use rayon::prelude::*;

use crate::analytics::{expected_brfs_tree, expected_rrw_tree, Expectation};
use crate::brfs::{run_brfs, TieBreaking, TieMode};
use crate::error::{EngineError, McError};
use crate::numeric::DepthError;
use crate::rng::mix;
use crate::rrw::{run_rrw_to_depth, DEFAULT_MAX_WALKS};
use crate::task::{TreeShape, TreeTask};
use crate::Exact;

/// Two-sided normal quantile for the default 99% confidence interval.
pub const DEFAULT_CI_Z: f64 = 2.575_829_303_548_901;

/// Default cap on `|z|` for [`ValidationReport::pass`].
pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;

/// Sample summary of goal-test counts over a batch of independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSummary {
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub std_error: f64,
    /// Normal-approximation interval at the default 99% confidence.
    pub ci_low: f64,
    pub ci_high: f64,
    pub base_seed: u64,
    /// Trials that hit the walk budget; excluded from the moments and never
    /// silently dropped.
    pub truncated_trials: u64,
    sum: u128,
    sum_squares: u128,
}

impl EstimateSummary {
    fn from_sums(sum: u128, sum_squares: u128, trials: u64, truncated: u64, base_seed: u64) -> Self {
        let counted = trials - truncated;
        let n = Exact::from_integer(counted.into());
        let mean = if counted == 0 {
            0.0
        } else {
            to_f64(&Exact::new(sum.into(), counted.into()))
        };
        let variance = if counted > 1 {
            // (n * sum_sq - sum^2) / (n (n - 1)), exact before conversion.
            let numer = &n * Exact::from_integer(sum_squares.into())
                - Exact::from_integer(sum.into()) * Exact::from_integer(sum.into());
            let denom = &n * (&n - Exact::from_integer(1.into()));
            to_f64(&(numer / denom))
        } else {
            0.0
        };
        let std_error = if counted == 0 { 0.0 } else { (variance / counted as f64).sqrt() };
        Self {
            trials,
            mean,
            variance,
            std_error,
            ci_low: mean - DEFAULT_CI_Z * std_error,
            ci_high: mean + DEFAULT_CI_Z * std_error,
            base_seed,
            truncated_trials: truncated,
            sum,
            sum_squares,
        }
    }

    /// The exact mean `sum / (trials - truncated_trials)`; zero when every
    /// trial was truncated.
    pub fn exact_mean(&self) -> Exact {
        let counted = self.trials - self.truncated_trials;
        if counted == 0 {
            return Exact::from_integer(0.into());
        }
        Exact::new(self.sum.into(), counted.into())
    }

    /// Normal-approximation interval at a caller-chosen quantile.
    pub fn confidence_interval(&self, z: f64) -> (f64, f64) {
        (self.mean - z * self.std_error, self.mean + z * self.std_error)
    }
}

fn to_f64(value: &Exact) -> f64 {
    num::traits::ToPrimitive::to_f64(value).expect("rational fits in f64 range")
}

/// A closed-form value alongside the simulation that checks it.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub analytic: Expectation<Exact>,
    pub estimate: EstimateSummary,
    pub z_score: f64,
    pub z_threshold: f64,
    pub pass: bool,
}

/// Per-trial observation fed into the batch accumulator.
struct TrialCount {
    goal_tests: u64,
    truncated: bool,
}

fn accumulate(
    trials: u64,
    run: impl Fn(u64) -> Result<TrialCount, EngineError> + Sync,
) -> Result<(u128, u128, u64), McError> {
    if trials < 2 {
        return Err(McError::InvalidInput("at least 2 trials are required".into()));
    }
    let (sum, sum_squares, truncated) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            run(trial).map(|count| {
                if count.truncated {
                    (0u128, 0u128, 1u64)
                } else {
                    let tests = count.goal_tests as u128;
                    (tests, tests * tests, 0u64)
                }
            })
        })
        .try_reduce(
            || (0, 0, 0),
            |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)),
        )?;
    Ok((sum, sum_squares, truncated))
}

/// Estimates the expected goal tests of breadth-first search on trees of the
/// given shape, resampling the goal placement every trial (trial `i` places
/// goals with seed `mix(base_seed, 2i)` and, in uniform-random tie mode,
/// breaks ties with seed `mix(base_seed, 2i + 1)`).
pub fn estimate_brfs(
    shape: TreeShape,
    trials: u64,
    base_seed: u64,
    tie_mode: TieMode,
) -> Result<EstimateSummary, McError> {
    shape.validate().map_err(EngineError::Task)?;
    let goal_level = shape.goal_level as u64;
    let (sum, sum_squares, truncated) = accumulate(trials, |trial| {
        let task = TreeTask::from_spec(&shape.with_seed(mix(base_seed, 2 * trial)))?;
        let tie = match tie_mode {
            TieMode::Lexicographic => TieBreaking::lexicographic(),
            TieMode::UniformRandom => TieBreaking::uniform_random(mix(base_seed, 2 * trial + 1)),
        };
        let stats = run_brfs(&task, &tie)?;
        assert!(stats.found, "tree tasks always hold a reachable goal");
        assert!(stats.accounting_holds(), "goal tests must exceed generations by one");
        assert!(
            stats.max_test_depth <= goal_level,
            "breadth-first search must not test below the goal level"
        );
        Ok(TrialCount { goal_tests: stats.goal_tests, truncated: false })
    })?;
    Ok(EstimateSummary::from_sums(sum, sum_squares, trials, truncated, base_seed))
}

/// Estimates the expected goal tests of constant-depth RRW on trees of the
/// given shape; placements and walk streams are derived per trial exactly as
/// in [`estimate_brfs`].
pub fn estimate_rrw(
    shape: TreeShape,
    depth_error: DepthError,
    trials: u64,
    base_seed: u64,
) -> Result<EstimateSummary, McError> {
    shape.validate().map_err(EngineError::Task)?;
    let cutoff = depth_error.walk_depth(shape.goal_level).ok_or_else(|| {
        McError::InvalidInput(format!(
            "walk cutoff e*d* = {depth_error}*{} is not an integer",
            shape.goal_level
        ))
    })?;
    let (sum, sum_squares, truncated) = accumulate(trials, |trial| {
        let task = TreeTask::from_spec(&shape.with_seed(mix(base_seed, 2 * trial)))?;
        let stats =
            run_rrw_to_depth(&task, cutoff, mix(base_seed, 2 * trial + 1), DEFAULT_MAX_WALKS)?;
        if !stats.found {
            return Ok(TrialCount { goal_tests: stats.goal_tests, truncated: true });
        }
        assert!(stats.accounting_holds(), "goal tests must exceed generations by one");
        Ok(TrialCount { goal_tests: stats.goal_tests, truncated: false })
    })?;
    Ok(EstimateSummary::from_sums(sum, sum_squares, trials, truncated, base_seed))
}

/// Compares an estimate against a closed-form value: `z` is the gap in
/// standard errors, and the check passes when `|z| <= z_threshold`, the
/// moments are untruncated, and a zero-variance estimate matches exactly.
pub fn report_against(
    analytic: Expectation<Exact>,
    estimate: EstimateSummary,
    z_threshold: f64,
) -> ValidationReport {
    let gap = estimate.exact_mean() - &analytic.value;
    let z_score = if gap == Exact::from_integer(0.into()) {
        0.0
    } else if estimate.std_error == 0.0 {
        f64::INFINITY * if gap > Exact::from_integer(0.into()) { 1.0 } else { -1.0 }
    } else {
        to_f64(&gap) / estimate.std_error
    };
    let pass = z_score.abs() <= z_threshold && estimate.truncated_trials == 0;
    ValidationReport { analytic, estimate, z_score, z_threshold, pass }
}

/// Runs [`estimate_brfs`] and checks it against the tree closed form.
pub fn validate_brfs(
    shape: TreeShape,
    trials: u64,
    base_seed: u64,
    tie_mode: TieMode,
    z_threshold: f64,
) -> Result<ValidationReport, McError> {
    let analytic = expected_brfs_tree::<Exact>(shape.branching, shape.goal_level, shape.goal_count)?;
    let estimate = estimate_brfs(shape, trials, base_seed, tie_mode)?;
    Ok(report_against(analytic, estimate, z_threshold))
}

/// Runs [`estimate_rrw`] and checks it against the tree closed form.
pub fn validate_rrw(
    shape: TreeShape,
    depth_error: DepthError,
    trials: u64,
    base_seed: u64,
    z_threshold: f64,
) -> Result<ValidationReport, McError> {
    let analytic = expected_rrw_tree::<Exact>(
        shape.branching,
        shape.goal_level,
        shape.goal_count,
        depth_error,
    )?;
    let estimate = estimate_rrw(shape, depth_error, trials, base_seed)?;
    Ok(report_against(analytic, estimate, z_threshold))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_leaf_tree_mean_approaches_two_and_a_half() {
        let shape = TreeShape::new(2, 1, 1).unwrap();
        let summary = estimate_brfs(shape, 100_000, 7, TieMode::Lexicographic).unwrap();
        // Counts are 2 or 3 with probability 1/2 each: mean 2.5,
        // variance 0.25, so the standard error is about 0.0016.
        assert!((summary.mean - 2.5).abs() <= 3.0 * summary.std_error);
        assert!((summary.variance - 0.25).abs() < 0.01);
        assert_eq!(summary.truncated_trials, 0);
    }

    #[test]
    fn saturated_brfs_is_deterministic() {
        let shape = TreeShape::new(4, 6, 4096).unwrap();
        let summary = estimate_brfs(shape, 100, 3, TieMode::Lexicographic).unwrap();
        assert_eq!(summary.mean, 1366.0);
        assert_eq!(summary.variance, 0.0);
        assert_eq!(summary.std_error, 0.0);
    }

    #[test]
    fn saturated_rrw_is_deterministic() {
        let shape = TreeShape::new(4, 6, 4096).unwrap();
        let summary = estimate_rrw(shape, DepthError::one(), 100, 1).unwrap();
        assert_eq!(summary.mean, 7.0);
        assert_eq!(summary.variance, 0.0);
    }

    #[test]
    fn summaries_are_reproducible() {
        let shape = TreeShape::new(3, 3, 2).unwrap();
        let a = estimate_rrw(shape, DepthError::one(), 5_000, 42).unwrap();
        let b = estimate_rrw(shape, DepthError::one(), 5_000, 42).unwrap();
        assert_eq!(a, b);
        let c = estimate_rrw(shape, DepthError::one(), 5_000, 43).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn validation_passes_on_matching_formulas() {
        let shape = TreeShape::new(2, 2, 3).unwrap();
        let report =
            validate_rrw(shape, DepthError::one(), 100_000, 11, DEFAULT_Z_THRESHOLD).unwrap();
        assert!(report.pass, "z = {}", report.z_score);
        assert_eq!(report.analytic.value, Exact::new(11.into(), 3.into()));
    }

    #[test]
    fn validation_fails_against_a_shifted_value() {
        let shape = TreeShape::new(2, 1, 1).unwrap();
        let estimate = estimate_brfs(shape, 100_000, 5, TieMode::Lexicographic).unwrap();
        let offset = estimate.mean + 10.0 * estimate.std_error;
        let shifted = (offset * 1e9).round() as i64;
        let wrong = Expectation {
            value: Exact::new(shifted.into(), 1_000_000_000.into()),
            formula: crate::analytics::Formula::BrfsTree,
        };
        let report = report_against(wrong, estimate, DEFAULT_Z_THRESHOLD);
        assert!(!report.pass);
        assert!(report.z_score.abs() >= 9.0);
    }

    #[test]
    fn random_ties_match_the_same_distribution() {
        let shape = TreeShape::new(2, 2, 1).unwrap();
        let lex = estimate_brfs(shape, 50_000, 9, TieMode::Lexicographic).unwrap();
        let random = estimate_brfs(shape, 50_000, 10, TieMode::UniformRandom).unwrap();
        let se = (lex.std_error.powi(2) + random.std_error.powi(2)).sqrt();
        assert!((lex.mean - random.mean).abs() <= 4.0 * se);
    }

    #[test]
    fn too_few_trials_is_rejected() {
        let shape = TreeShape::new(2, 1, 1).unwrap();
        assert!(matches!(
            estimate_brfs(shape, 1, 0, TieMode::Lexicographic),
            Err(McError::InvalidInput(_))
        ));
    }
}
