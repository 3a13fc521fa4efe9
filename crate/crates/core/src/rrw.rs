//! Constant-depth restarting random walks.
//!
//! A run goal-tests the initial vertex exactly once, then generates random
//! walks from it: each step samples one successor uniformly, appends it to
//! the walk, and goal-tests it; the walk restarts once it reaches the cutoff
//! `t = e * d*` without success. Every successor generation is immediately
//! followed by exactly one goal test, so a successful run satisfies
//! `goal_tests == successor_generations + 1`.

use crate::brfs::{RunStats, SearchEvent};
use crate::error::{EngineError, TaskError};
use crate::numeric::DepthError;
use crate::rng::{mix, SplitMix64};
use crate::task::SearchSpace;
use crate::Exact;

/// Walk budget applied when a config leaves `max_walks` unset; guarantees
/// termination on misconfigured tasks (a cutoff below the goal level would
/// otherwise loop forever).
pub const DEFAULT_MAX_WALKS: u64 = 10_000_000;

/// Restarting-random-walk configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RrwConfig {
    /// Walk-cutoff multiplier `e >= 1`; the cutoff is `t = e * d*`, which
    /// must be an integer.
    pub depth_error: DepthError,
    pub walk_seed: u64,
    /// Walk budget; `None` applies [`DEFAULT_MAX_WALKS`].
    pub max_walks: Option<u64>,
}

impl RrwConfig {
    pub fn new(depth_error: DepthError, walk_seed: u64) -> Self {
        Self { depth_error, walk_seed, max_walks: None }
    }

    pub fn with_max_walks(mut self, max_walks: u64) -> Self {
        self.max_walks = Some(max_walks);
        self
    }
}

/// Runs constant-depth RRW on `space`, deriving the cutoff from the task's
/// goal level. Returns `found == false` with counts once the walk budget is
/// spent.
pub fn run_rrw<S: SearchSpace>(
    space: &S,
    config: &RrwConfig,
) -> Result<RunStats<S::Vertex>, EngineError> {
    let goal_level = space.goal_level()?;
    let cutoff = config.depth_error.walk_depth(goal_level).ok_or_else(|| {
        TaskError::InvalidSpec(format!(
            "walk cutoff e*d* = {}*{} is not an integer",
            config.depth_error, goal_level
        ))
    })?;
    run_rrw_to_depth(
        space,
        cutoff,
        config.walk_seed,
        config.max_walks.unwrap_or(DEFAULT_MAX_WALKS),
    )
}

/// Runs constant-depth RRW with an explicit walk cutoff.
pub fn run_rrw_to_depth<S: SearchSpace>(
    space: &S,
    cutoff: u64,
    walk_seed: u64,
    max_walks: u64,
) -> Result<RunStats<S::Vertex>, EngineError> {
    run_rrw_observed(space, cutoff, walk_seed, max_walks, |_| {})
}

/// Runs constant-depth RRW reporting every goal test and successor
/// generation to `observer`.
pub fn run_rrw_observed<S, F>(
    space: &S,
    cutoff: u64,
    walk_seed: u64,
    max_walks: u64,
    mut observer: F,
) -> Result<RunStats<S::Vertex>, EngineError>
where
    S: SearchSpace,
    F: FnMut(SearchEvent<S::Vertex>),
{
    let mut stats = RunStats {
        goal_tests: 0,
        successor_generations: 0,
        found: false,
        path: Vec::new(),
        walks: 0,
        max_test_depth: 0,
    };
    let initial = space.initial();
    stats.goal_tests = 1;
    observer(SearchEvent::GoalTest { vertex: initial, depth: 0 });
    if space.is_goal(initial) {
        stats.found = true;
        stats.path = vec![initial];
        return Ok(stats);
    }
    if cutoff == 0 {
        return Err(EngineError::Task(TaskError::InvalidSpec(
            "walk cutoff must be at least 1".into(),
        )));
    }

    let mut rng = SplitMix64::new(walk_seed);
    let mut walk: Vec<S::Vertex> = Vec::with_capacity(cutoff.min(1 << 16) as usize + 1);
    while stats.walks < max_walks {
        stats.walks += 1;
        walk.clear();
        walk.push(initial);
        let mut vertex = initial;
        for step in 1..=cutoff {
            observer(SearchEvent::Generation { vertex, depth: step - 1 });
            stats.successor_generations += 1;
            vertex = space.sample_successor(vertex, &mut rng).ok_or_else(|| {
                EngineError::DeadEnd { vertex: format!("{vertex:?}"), depth: step - 1 }
            })?;
            walk.push(vertex);
            stats.goal_tests += 1;
            stats.max_test_depth = stats.max_test_depth.max(step);
            observer(SearchEvent::GoalTest { vertex, depth: step });
            if space.is_goal(vertex) {
                stats.found = true;
                stats.path = walk;
                return Ok(stats);
            }
        }
    }
    // Walk budget exhausted: report counts rather than failing.
    Ok(stats)
}

/// Estimates the per-walk success probability: the fraction of `trials`
/// independent depth-`cutoff` walks from the initial vertex that hit a goal
/// at some step, returned as the exact ratio `hits/trials`.
pub fn empirical_success_probability<S: SearchSpace>(
    space: &S,
    cutoff: u64,
    trials: u64,
    base_seed: u64,
) -> Result<Exact, EngineError> {
    if trials == 0 {
        return Err(EngineError::Task(TaskError::InvalidSpec(
            "success-probability estimation needs at least one trial".into(),
        )));
    }
    let initial = space.initial();
    let mut hits: u64 = 0;
    for trial in 0..trials {
        let mut rng = SplitMix64::new(mix(base_seed, trial));
        let mut vertex = initial;
        for step in 1..=cutoff {
            vertex = space.sample_successor(vertex, &mut rng).ok_or_else(|| {
                EngineError::DeadEnd { vertex: format!("{vertex:?}"), depth: step - 1 }
            })?;
            if space.is_goal(vertex) {
                hits += 1;
                break;
            }
        }
    }
    Ok(Exact::new(hits.into(), trials.into()))
}
