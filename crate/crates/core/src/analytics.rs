//! Exact closed-form expected goal-test counts for both engines.
//!
//! Everything here is generic over [`Scalar`]; instantiate with
//! [`Exact`](crate::Exact) whenever the result feeds an exact comparison
//! (the crossover scans and the equality checks all do), or with `f64` for
//! quick approximate evaluation.

use std::fmt;

use crate::error::AnalyticsError;
use crate::numeric::{checked_pow_u128, scalar_from_u128, DepthError, Scalar};
use crate::task::GraphTask;

/// Which closed form produced an [`Expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Breadth-first search on any task with uniformly placed goals.
    BrfsGeneral,
    /// Restarting random walks given a per-walk success probability.
    RrwGeneral,
    /// Breadth-first search on a uniform-branching tree.
    BrfsTree,
    /// Restarting random walks on a uniform-branching tree.
    RrwTree,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Formula::BrfsGeneral => "brfs-general",
            Formula::RrwGeneral => "rrw-general",
            Formula::BrfsTree => "brfs-tree",
            Formula::RrwTree => "rrw-tree",
        };
        f.write_str(name)
    }
}

/// An expected goal-test count together with the closed form it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation<T = crate::Exact> {
    pub value: T,
    pub formula: Formula,
}

/// Per-walk success probability, constrained to `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessProbability<T = crate::Exact> {
    value: T,
}

impl<T: Scalar> SuccessProbability<T> {
    pub fn new(value: T) -> Result<Self, AnalyticsError> {
        if value <= T::zero() || value > T::one() {
            return Err(AnalyticsError::InvalidInput(
                "success probability must lie in (0, 1]".into(),
            ));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn into_value(self) -> T {
        self.value
    }
}

/// Expected goal tests of breadth-first search on a task with `shallow`
/// vertices above the goal level and `goals` goals placed uniformly among
/// the `at_level` goal-level vertices: `shallow + (at_level + 1)/(goals + 1)`.
pub fn expected_brfs_general<T: Scalar>(
    shallow: u128,
    at_level: u128,
    goals: u128,
) -> Result<Expectation<T>, AnalyticsError> {
    if goals < 1 {
        return Err(AnalyticsError::InvalidInput("goal count must be at least 1".into()));
    }
    if at_level < goals {
        return Err(AnalyticsError::InvalidInput(format!(
            "goal level holds {at_level} vertices, fewer than {goals} goals"
        )));
    }
    let shallow: T = scalar_from_u128(shallow)?;
    let at_level: T = scalar_from_u128(at_level)?;
    let goals: T = scalar_from_u128(goals)?;
    let value = shallow + (at_level + T::one()) / (goals + T::one());
    Ok(Expectation { value, formula: Formula::BrfsGeneral })
}

/// Expected goal tests of constant-depth RRW with cutoff `t = e * d*` and
/// per-walk success probability `s`: `t/s - (e - 1) d* + 1`.
pub fn expected_rrw_general<T: Scalar>(
    goal_level: u32,
    depth_error: DepthError,
    s: SuccessProbability<T>,
) -> Result<Expectation<T>, AnalyticsError> {
    let cutoff = walk_cutoff(goal_level, depth_error)?;
    let cutoff_minus_level: T = scalar_from_u128((cutoff - goal_level as u64) as u128)?;
    let cutoff: T = scalar_from_u128(cutoff as u128)?;
    let value = cutoff / s.into_value() - cutoff_minus_level + T::one();
    Ok(Expectation { value, formula: Formula::RrwGeneral })
}

/// Expected goal tests of breadth-first search on a uniform tree:
/// `(b^{d*} - 1)/(b - 1) + (b^{d*} + 1)/(g + 1)`.
pub fn expected_brfs_tree<T: Scalar>(
    branching: u32,
    goal_level: u32,
    goals: u128,
) -> Result<Expectation<T>, AnalyticsError> {
    let (width, shallow) = tree_counts(branching, goal_level)?;
    let expectation = expected_brfs_general::<T>(shallow, width, goals)?;
    Ok(Expectation { value: expectation.value, formula: Formula::BrfsTree })
}

/// Expected goal tests of constant-depth RRW on a uniform tree:
/// `e d* b^{d*} / g - (e - 1) d* + 1`.
pub fn expected_rrw_tree<T: Scalar>(
    branching: u32,
    goal_level: u32,
    goals: u128,
    depth_error: DepthError,
) -> Result<Expectation<T>, AnalyticsError> {
    let s = tree_success_probability::<T>(branching, goal_level, goals)?;
    let expectation = expected_rrw_general::<T>(goal_level, depth_error, s)?;
    Ok(Expectation { value: expectation.value, formula: Formula::RrwTree })
}

/// Per-walk success probability on a uniform tree, `g / b^{d*}`: every
/// goal-level vertex is equally likely to be the one a walk visits.
pub fn tree_success_probability<T: Scalar>(
    branching: u32,
    goal_level: u32,
    goals: u128,
) -> Result<SuccessProbability<T>, AnalyticsError> {
    let (width, _) = tree_counts(branching, goal_level)?;
    if goals < 1 || goals > width {
        return Err(AnalyticsError::InvalidInput(format!(
            "goal count must lie in [1, {width}], got {goals}"
        )));
    }
    let goals: T = scalar_from_u128(goals)?;
    let width: T = scalar_from_u128(width)?;
    SuccessProbability::new(goals / width)
}

fn tree_counts(branching: u32, goal_level: u32) -> Result<(u128, u128), AnalyticsError> {
    if branching < 2 {
        return Err(AnalyticsError::InvalidInput(format!(
            "branching factor must be at least 2, got {branching}"
        )));
    }
    if goal_level < 1 {
        return Err(AnalyticsError::InvalidInput("goal level must be at least 1".into()));
    }
    let width = checked_pow_u128(branching, goal_level).ok_or(
        crate::error::TaskError::Overflow { base: branching, exponent: goal_level },
    )?;
    Ok((width, (width - 1) / (branching as u128 - 1)))
}

fn walk_cutoff(goal_level: u32, depth_error: DepthError) -> Result<u64, AnalyticsError> {
    if goal_level < 1 {
        return Err(AnalyticsError::InvalidInput("goal level must be at least 1".into()));
    }
    depth_error.walk_depth(goal_level).ok_or_else(|| {
        AnalyticsError::InvalidInput(format!(
            "walk cutoff e*d* = {depth_error}*{goal_level} is not an integer"
        ))
    })
}

/// Exact per-walk success probability on an explicit leveled graph with all
/// goals at the goal level, by forward propagation of visit probabilities
/// under uniform successor choice up to depth `cutoff`.
pub fn dp_success_probability<T: Scalar>(
    task: &GraphTask,
    cutoff: u64,
) -> Result<SuccessProbability<T>, AnalyticsError> {
    let levels = task.levels();
    let goal_level = task
        .goals()
        .iter()
        .filter_map(|&g| levels[g])
        .min()
        .ok_or(crate::error::TaskError::Unreachable)?;
    if task.goals().iter().any(|&g| levels[g] != Some(goal_level)) {
        return Err(AnalyticsError::NotLeveled(
            "not all goals lie at the goal level".into(),
        ));
    }
    for (u, level) in levels.iter().enumerate() {
        let Some(level) = level else { continue };
        for &v in task.successors(u) {
            if levels[v] != Some(level + 1) {
                return Err(AnalyticsError::NotLeveled(format!(
                    "edge {u} -> {v} does not advance the level by one"
                )));
            }
        }
    }

    let zero = T::zero();
    let mut mass: Vec<T> = vec![zero.clone(); task.vertex_count()];
    mass[task.initial_vertex()] = T::one();
    let mut success = zero.clone();
    let mut next: Vec<T> = vec![zero.clone(); task.vertex_count()];
    for step in 1..=cutoff {
        for entry in next.iter_mut() {
            *entry = zero.clone();
        }
        let mut moved = false;
        for (u, p) in mass.iter().enumerate() {
            if *p == zero || task.is_goal_vertex(u) {
                continue;
            }
            let succs = task.successors(u);
            if succs.is_empty() {
                return Err(AnalyticsError::DeadEnd {
                    vertex: u,
                    level: levels[u].unwrap_or(0),
                });
            }
            let share = p.clone() / scalar_from_u128::<T>(succs.len() as u128)?;
            for &v in succs {
                next[v] = next[v].clone() + share.clone();
                moved = true;
            }
        }
        std::mem::swap(&mut mass, &mut next);
        if step == goal_level as u64 {
            for &g in task.goals() {
                success = success + mass[g].clone();
            }
        }
        if !moved {
            break;
        }
    }
    SuccessProbability::new(success)
}
