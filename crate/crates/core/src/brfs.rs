//! Breadth-first search with exact goal-test and successor-generation
//! accounting.
//!
//! The open list is processed level by level: a FIFO queue plus a per-level
//! tie-breaking permutation, which realizes both deterministic-lexicographic
//! and uniform-random expansion orders. Every vertex is goal-tested at
//! expansion time, a failed test is immediately followed by one successor
//! generation step, and the run stops on the first successful test, so the
//! number of goal tests on a successful run is exactly one more than the
//! number of successor generation steps.

use std::collections::{HashMap, HashSet};

use crate::error::EngineError;
use crate::rng::SplitMix64;
use crate::task::SearchSpace;

/// Expansion order among vertices of equal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieMode {
    /// Ascending vertex identity within each level.
    Lexicographic,
    /// A fresh uniform permutation of each level.
    UniformRandom,
}

/// Tie-breaking policy; the seed is only consulted in
/// [`TieMode::UniformRandom`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TieBreaking {
    pub mode: TieMode,
    pub seed: u64,
}

impl TieBreaking {
    pub fn lexicographic() -> Self {
        Self { mode: TieMode::Lexicographic, seed: 0 }
    }

    pub fn uniform_random(seed: u64) -> Self {
        Self { mode: TieMode::UniformRandom, seed }
    }
}

/// Operation counts and outcome of a single engine run.
///
/// On a successful run `goal_tests == successor_generations + 1` and `path`
/// leads from the initial vertex to the found goal; on an unsuccessful run
/// (`found == false`) the counts cover everything performed before the open
/// list emptied or the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats<V> {
    pub goal_tests: u64,
    pub successor_generations: u64,
    pub found: bool,
    pub path: Vec<V>,
    /// Completed-plus-current random walks; 0 for breadth-first runs.
    pub walks: u64,
    /// Deepest search depth at which a goal test occurred. For breadth-first
    /// runs and walks on leveled spaces this is the vertex level.
    pub max_test_depth: u64,
}

impl<V> RunStats<V> {
    /// `goal_tests == successor_generations + 1`, required on success.
    pub fn accounting_holds(&self) -> bool {
        !self.found || self.goal_tests == self.successor_generations + 1
    }
}

/// One elementary engine operation, exposed to observers for instrumentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEvent<V> {
    GoalTest { vertex: V, depth: u64 },
    Generation { vertex: V, depth: u64 },
}

/// Breadth-first search over `space` with no frontier cap.
pub fn run_brfs<S: SearchSpace>(
    space: &S,
    tie: &TieBreaking,
) -> Result<RunStats<S::Vertex>, EngineError> {
    run_brfs_observed(space, tie, None, |_| {})
}

/// Breadth-first search that fails with
/// [`EngineError::MemoryBudgetExceeded`] once the open list outgrows
/// `max_frontier` vertices.
pub fn run_brfs_capped<S: SearchSpace>(
    space: &S,
    tie: &TieBreaking,
    max_frontier: usize,
) -> Result<RunStats<S::Vertex>, EngineError> {
    run_brfs_observed(space, tie, Some(max_frontier), |_| {})
}

/// Breadth-first search reporting every goal test and successor generation
/// to `observer`.
pub fn run_brfs_observed<S, F>(
    space: &S,
    tie: &TieBreaking,
    max_frontier: Option<usize>,
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
    let dedupe = space.needs_duplicate_detection();
    let mut seen: HashSet<S::Vertex> = HashSet::new();
    let mut parents: HashMap<S::Vertex, S::Vertex> = HashMap::new();
    let mut tie_rng = match tie.mode {
        TieMode::UniformRandom => Some(SplitMix64::new(tie.seed)),
        TieMode::Lexicographic => None,
    };

    let initial = space.initial();
    stats.goal_tests = 1;
    observer(SearchEvent::GoalTest { vertex: initial, depth: 0 });
    if space.is_goal(initial) {
        stats.found = true;
        stats.path = vec![initial];
        return Ok(stats);
    }
    if dedupe {
        seen.insert(initial);
    }

    let mut current: Vec<S::Vertex> = Vec::new();
    let mut next: Vec<S::Vertex> = Vec::new();
    stats.successor_generations = 1;
    observer(SearchEvent::Generation { vertex: initial, depth: 0 });
    space.for_each_successor(initial, &mut |succ| {
        if !dedupe || seen.insert(succ) {
            if dedupe {
                parents.insert(succ, initial);
            }
            current.push(succ);
        }
    });

    let mut level: u64 = 1;
    while !current.is_empty() {
        match &mut tie_rng {
            Some(rng) => rng.shuffle(&mut current),
            None => {
                if !space.generates_sorted_levels() {
                    current.sort_unstable();
                }
            }
        }
        for position in 0..current.len() {
            let vertex = current[position];
            stats.goal_tests += 1;
            stats.max_test_depth = level;
            observer(SearchEvent::GoalTest { vertex, depth: level });
            if space.is_goal(vertex) {
                stats.found = true;
                stats.path = reconstruct_path(space, &parents, vertex);
                return Ok(stats);
            }
            stats.successor_generations += 1;
            observer(SearchEvent::Generation { vertex, depth: level });
            space.for_each_successor(vertex, &mut |succ| {
                if !dedupe || seen.insert(succ) {
                    if dedupe {
                        parents.insert(succ, vertex);
                    }
                    next.push(succ);
                }
            });
            if let Some(cap) = max_frontier {
                let frontier = current.len() - position - 1 + next.len();
                if frontier > cap {
                    return Err(EngineError::MemoryBudgetExceeded { frontier, cap });
                }
            }
        }
        current.clear();
        std::mem::swap(&mut current, &mut next);
        level += 1;
    }
    // Open list exhausted with no goal: report counts rather than failing.
    Ok(stats)
}

fn reconstruct_path<S: SearchSpace>(
    space: &S,
    parents: &HashMap<S::Vertex, S::Vertex>,
    goal: S::Vertex,
) -> Vec<S::Vertex> {
    let mut path = vec![goal];
    let mut cursor = goal;
    while let Some(parent) = parents
        .get(&cursor)
        .copied()
        .or_else(|| space.structural_parent(cursor))
    {
        path.push(parent);
        cursor = parent;
    }
    path.reverse();
    path
}
