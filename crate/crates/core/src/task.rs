//! Search tasks: implicit uniform-branching trees, explicit graphs, the
//! plateau-escape adapter, and per-level statistics.
//!
//! Trees are never materialized; a vertex at level `l` is identified by its
//! `l` base-`b` path digits packed into an integer in `[0, b^l)`, and
//! successors are generated on demand. Goal placement is sampled once at
//! construction and stays fixed for every run on that task.

use std::collections::VecDeque;
use std::fmt;

use crate::error::TaskError;
use crate::numeric::checked_pow_u128;
use crate::rng::{mix, sample_distinct, SplitMix64};

/// Parameters of a uniform-branching directed-tree task, minus the placement
/// seed: branching factor `b >= 2`, goal level `>= 1`, and the number of
/// goals placed uniformly at the goal level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeShape {
    pub branching: u32,
    pub goal_level: u32,
    pub goal_count: u128,
}

impl TreeShape {
    pub fn new(branching: u32, goal_level: u32, goal_count: u128) -> Result<Self, TaskError> {
        let shape = Self { branching, goal_level, goal_count };
        shape.validate()?;
        Ok(shape)
    }

    pub(crate) fn validate(&self) -> Result<u128, TaskError> {
        if self.branching < 2 {
            return Err(TaskError::InvalidSpec(format!(
                "branching factor must be at least 2, got {}",
                self.branching
            )));
        }
        if self.goal_level < 1 {
            return Err(TaskError::InvalidSpec("goal level must be at least 1".into()));
        }
        let width = checked_pow_u128(self.branching, self.goal_level).ok_or(
            TaskError::Overflow { base: self.branching, exponent: self.goal_level },
        )?;
        if self.goal_count < 1 || self.goal_count > width {
            return Err(TaskError::InvalidSpec(format!(
                "goal count must lie in [1, {width}], got {}",
                self.goal_count
            )));
        }
        Ok(width)
    }

    /// Number of vertices at the goal level, `b^{goal_level}`.
    pub fn goal_level_width(&self) -> Result<u128, TaskError> {
        self.validate()
    }

    /// Number of vertices strictly above the goal level,
    /// `(b^{goal_level} - 1) / (b - 1)`.
    pub fn shallow_count(&self) -> Result<u128, TaskError> {
        let width = self.validate()?;
        Ok((width - 1) / (self.branching as u128 - 1))
    }

    pub fn with_seed(self, placement_seed: u64) -> TreeTaskSpec {
        TreeTaskSpec { shape: self, placement_seed }
    }
}

/// [`TreeShape`] plus the seed that fixes the goal placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeTaskSpec {
    pub shape: TreeShape,
    pub placement_seed: u64,
}

/// A vertex of an implicit tree: its level and its packed path digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    pub level: u32,
    pub index: u128,
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.index)
    }
}

/// An implicit uniform-branching tree with a fixed goal placement.
#[derive(Debug, Clone)]
pub struct TreeTask {
    spec: TreeTaskSpec,
    /// Sorted distinct indices in `[0, b^{goal_level})`.
    goal_indices: Vec<u128>,
}

impl TreeTask {
    /// Samples the goal placement uniformly without replacement,
    /// deterministically from `spec.placement_seed`.
    pub fn from_spec(spec: &TreeTaskSpec) -> Result<Self, TaskError> {
        let width = spec.shape.validate()?;
        let count = usize::try_from(spec.shape.goal_count).map_err(|_| {
            TaskError::InvalidSpec(format!(
                "goal count {} is too large to materialize",
                spec.shape.goal_count
            ))
        })?;
        let mut rng = SplitMix64::new(mix(spec.placement_seed, 0));
        let mut goal_indices = sample_distinct(&mut rng, width, count);
        goal_indices.sort_unstable();
        Ok(Self { spec: *spec, goal_indices })
    }

    /// Builds a task with an explicitly chosen goal placement.
    pub fn with_goals(shape: TreeShape, mut goal_indices: Vec<u128>) -> Result<Self, TaskError> {
        let width = shape.validate()?;
        goal_indices.sort_unstable();
        goal_indices.dedup();
        if goal_indices.len() as u128 != shape.goal_count {
            return Err(TaskError::InvalidSpec(format!(
                "expected {} distinct goal indices, got {}",
                shape.goal_count,
                goal_indices.len()
            )));
        }
        if goal_indices.last().is_some_and(|&last| last >= width) {
            return Err(TaskError::InvalidSpec(format!(
                "goal indices must lie in [0, {width})"
            )));
        }
        Ok(Self {
            spec: TreeTaskSpec { shape, placement_seed: 0 },
            goal_indices,
        })
    }

    pub fn spec(&self) -> &TreeTaskSpec {
        &self.spec
    }

    pub fn shape(&self) -> TreeShape {
        self.spec.shape
    }

    pub fn goal_indices(&self) -> &[u128] {
        &self.goal_indices
    }

    /// Level statistics from the closed forms for uniform trees.
    pub fn level_counts(&self) -> LevelCounts {
        let shape = self.spec.shape;
        LevelCounts {
            goal_level: shape.goal_level,
            shallow_count: shape.shallow_count().expect("validated at construction"),
            goal_level_count: shape.goal_level_width().expect("validated at construction"),
            goal_count_at_level: shape.goal_count,
        }
    }

    /// Materializes levels `0..=depth` as an explicit graph, for desk-scale
    /// cross-checks. Vertices are numbered level by level in index order.
    pub fn to_graph(&self, depth: u32) -> Result<GraphTask, TaskError> {
        let shape = self.spec.shape;
        if depth < shape.goal_level {
            return Err(TaskError::InvalidSpec(
                "materialization depth must reach the goal level".into(),
            ));
        }
        let b = shape.branching as u128;
        let mut level_offsets = Vec::with_capacity(depth as usize + 2);
        let mut total: u128 = 0;
        for level in 0..=depth {
            level_offsets.push(total);
            let width = checked_pow_u128(shape.branching, level)
                .ok_or(TaskError::Overflow { base: shape.branching, exponent: level })?;
            total = total
                .checked_add(width)
                .ok_or(TaskError::Overflow { base: shape.branching, exponent: level })?;
        }
        let vertex_count = usize::try_from(total).map_err(|_| TaskError::InvalidSpec(
            "tree too large to materialize".into(),
        ))?;
        let mut adjacency = vec![Vec::new(); vertex_count];
        for level in 0..depth {
            let width = checked_pow_u128(shape.branching, level).expect("checked above");
            let offset = level_offsets[level as usize];
            let child_offset = level_offsets[level as usize + 1];
            for index in 0..width {
                let id = (offset + index) as usize;
                adjacency[id] = (0..b)
                    .map(|child| (child_offset + index * b + child) as usize)
                    .collect();
            }
        }
        let goal_offset = level_offsets[shape.goal_level as usize];
        let goals: Vec<usize> = self
            .goal_indices
            .iter()
            .map(|&g| (goal_offset + g) as usize)
            .collect();
        GraphTask::new(adjacency, 0, goals)
    }
}

/// An explicit leveled-or-not directed graph task over dense integer vertex
/// indices.
#[derive(Debug, Clone)]
pub struct GraphTask {
    adjacency: Vec<Vec<usize>>,
    initial: usize,
    /// Sorted distinct goal indices; may be empty for unsolvable tasks.
    goals: Vec<usize>,
}

impl GraphTask {
    pub fn new(
        adjacency: Vec<Vec<usize>>,
        initial: usize,
        goals: impl IntoIterator<Item = usize>,
    ) -> Result<Self, TaskError> {
        let n = adjacency.len();
        if initial >= n {
            return Err(TaskError::InvalidSpec(format!(
                "initial vertex {initial} out of range for {n} vertices"
            )));
        }
        for (u, succs) in adjacency.iter().enumerate() {
            if let Some(&v) = succs.iter().find(|&&v| v >= n) {
                return Err(TaskError::InvalidSpec(format!(
                    "edge {u} -> {v} points outside the vertex range"
                )));
            }
        }
        let mut goals: Vec<usize> = goals.into_iter().collect();
        goals.sort_unstable();
        goals.dedup();
        if goals.last().is_some_and(|&last| last >= n) {
            return Err(TaskError::InvalidSpec("goal vertex out of range".into()));
        }
        Ok(Self { adjacency, initial, goals })
    }

    /// Plateau-escape adapter: the goals are exactly the vertices whose
    /// heuristic value strictly improves on the initial vertex's.
    pub fn escape(
        adjacency: Vec<Vec<usize>>,
        initial: usize,
        heuristic: &[f64],
    ) -> Result<Self, TaskError> {
        if heuristic.len() != adjacency.len() {
            return Err(TaskError::InvalidSpec(format!(
                "heuristic has {} values for {} vertices",
                heuristic.len(),
                adjacency.len()
            )));
        }
        if let Some(bad) = heuristic.iter().find(|h| !h.is_finite() || **h < 0.0) {
            return Err(TaskError::InvalidSpec(format!(
                "heuristic values must be finite and non-negative, got {bad}"
            )));
        }
        if initial >= adjacency.len() {
            return Err(TaskError::InvalidSpec(format!(
                "initial vertex {initial} out of range"
            )));
        }
        let threshold = heuristic[initial];
        let goals: Vec<usize> = heuristic
            .iter()
            .enumerate()
            .filter(|(_, &h)| h < threshold)
            .map(|(v, _)| v)
            .collect();
        if goals.is_empty() {
            return Err(TaskError::NoExit);
        }
        Self::new(adjacency, initial, goals)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn initial_vertex(&self) -> usize {
        self.initial
    }

    pub fn goals(&self) -> &[usize] {
        &self.goals
    }

    pub fn is_goal_vertex(&self, v: usize) -> bool {
        self.goals.binary_search(&v).is_ok()
    }

    /// Shortest unweighted distance from the initial vertex to every vertex;
    /// `None` for unreachable vertices.
    pub fn levels(&self) -> Vec<Option<u32>> {
        let mut levels = vec![None; self.adjacency.len()];
        let mut queue = VecDeque::new();
        levels[self.initial] = Some(0);
        queue.push_back(self.initial);
        while let Some(u) = queue.pop_front() {
            let next = levels[u].expect("queued vertices have levels") + 1;
            for &v in &self.adjacency[u] {
                if levels[v].is_none() {
                    levels[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
        levels
    }

    /// Level statistics computed by breadth-first distance from the initial
    /// vertex. Errors with [`TaskError::Unreachable`] when no goal is
    /// reachable.
    pub fn level_counts(&self) -> Result<LevelCounts, TaskError> {
        let levels = self.levels();
        let goal_level = self
            .goals
            .iter()
            .filter_map(|&g| levels[g])
            .min()
            .ok_or(TaskError::Unreachable)?;
        let mut shallow = 0u128;
        let mut at_level = 0u128;
        for level in levels.iter().flatten() {
            if *level < goal_level {
                shallow += 1;
            } else if *level == goal_level {
                at_level += 1;
            }
        }
        let goals_at_level = self
            .goals
            .iter()
            .filter(|&&g| levels[g] == Some(goal_level))
            .count() as u128;
        Ok(LevelCounts {
            goal_level,
            shallow_count: shallow,
            goal_level_count: at_level,
            goal_count_at_level: goals_at_level,
        })
    }

    /// Parses the plain-text graph format:
    ///
    /// ```text
    /// V E
    /// u v        (E directed-edge lines)
    /// initial
    /// g0 g1 ...  (goal indices)  |  h: h0 h1 ... hV-1
    /// ```
    pub fn parse_text(text: &str) -> Result<Self, TaskError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty());
        let header = lines.next().ok_or_else(|| TaskError::Format("empty input".into()))?;
        let mut header_it = header.split_whitespace();
        let v: usize = header_it
            .next()
            .and_then(|tok| tok.parse().ok())
            .ok_or_else(|| TaskError::Format("expected `V E` header".into()))?;
        let e: usize = header_it
            .next()
            .and_then(|tok| tok.parse().ok())
            .ok_or_else(|| TaskError::Format("expected `V E` header".into()))?;
        if header_it.next().is_some() {
            return Err(TaskError::Format("trailing tokens in `V E` header".into()));
        }
        let mut adjacency = vec![Vec::new(); v];
        for i in 0..e {
            let line = lines
                .next()
                .ok_or_else(|| TaskError::Format(format!("missing edge line {}", i + 1)))?;
            let mut it = line.split_whitespace();
            let (u, w) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(w), None) => (u, w),
                _ => return Err(TaskError::Format(format!("edge line {} must be `u v`", i + 1))),
            };
            let u: usize = u
                .parse()
                .map_err(|_| TaskError::Format(format!("bad vertex `{u}`")))?;
            let w: usize = w
                .parse()
                .map_err(|_| TaskError::Format(format!("bad vertex `{w}`")))?;
            if u >= v || w >= v {
                return Err(TaskError::Format(format!("edge {u} -> {w} out of range")));
            }
            adjacency[u].push(w);
        }
        let initial: usize = lines
            .next()
            .and_then(|line| line.parse().ok())
            .ok_or_else(|| TaskError::Format("missing initial-vertex line".into()))?;
        let last = lines
            .next()
            .ok_or_else(|| TaskError::Format("missing goal or heuristic line".into()))?;
        if lines.next().is_some() {
            return Err(TaskError::Format("unexpected trailing lines".into()));
        }
        if let Some(rest) = last.strip_prefix("h:") {
            let heuristic: Vec<f64> = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|_| TaskError::Format(format!("bad heuristic value `{tok}`")))
                })
                .collect::<Result<_, _>>()?;
            if heuristic.len() != v {
                return Err(TaskError::Format(format!(
                    "expected {v} heuristic values, got {}",
                    heuristic.len()
                )));
            }
            Self::escape(adjacency, initial, &heuristic)
        } else {
            let goals: Vec<usize> = last
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| TaskError::Format(format!("bad goal index `{tok}`")))
                })
                .collect::<Result<_, _>>()?;
            if goals.is_empty() {
                return Err(TaskError::Format("goal line is empty".into()));
            }
            Self::new(adjacency, initial, goals)
        }
    }
}

/// Per-level statistics of a task: the goal level, the number of vertices
/// strictly above it, the number at it, and how many goals sit at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelCounts {
    pub goal_level: u32,
    pub shallow_count: u128,
    pub goal_level_count: u128,
    pub goal_count_at_level: u128,
}

/// How the engines see a task: initial vertex, goal membership, and ordered
/// successor generation. Implementations must be immutable so runs can share
/// tasks across threads.
pub trait SearchSpace: Sync {
    type Vertex: Copy + Eq + Ord + std::hash::Hash + fmt::Debug;

    fn initial(&self) -> Self::Vertex;

    fn is_goal(&self, v: Self::Vertex) -> bool;

    /// Visits the successors of `v` in their canonical order. One call is
    /// one successor-generation step regardless of out-degree.
    fn for_each_successor(&self, v: Self::Vertex, visit: &mut dyn FnMut(Self::Vertex));

    fn successor_count(&self, v: Self::Vertex) -> usize;

    /// Samples one successor uniformly; `None` at a dead end. One call is
    /// one successor-generation step.
    fn sample_successor(&self, v: Self::Vertex, rng: &mut SplitMix64) -> Option<Self::Vertex>;

    /// Whether runs must detect duplicate states (graphs yes, trees no).
    fn needs_duplicate_detection(&self) -> bool;

    /// Whether a breadth-first pass generates each level already in
    /// canonical order, making the lexicographic re-sort a no-op.
    fn generates_sorted_levels(&self) -> bool {
        false
    }

    /// Parent derivable from the vertex identity alone (trees); spaces that
    /// cannot do this return `None` and engines record parents instead.
    fn structural_parent(&self, v: Self::Vertex) -> Option<Self::Vertex>;

    /// The goal level `d*`, computing levels on demand when necessary.
    fn goal_level(&self) -> Result<u32, TaskError>;
}

impl SearchSpace for TreeTask {
    type Vertex = TreeVertex;

    fn initial(&self) -> TreeVertex {
        TreeVertex { level: 0, index: 0 }
    }

    fn is_goal(&self, v: TreeVertex) -> bool {
        v.level == self.spec.shape.goal_level && self.goal_indices.binary_search(&v.index).is_ok()
    }

    fn for_each_successor(&self, v: TreeVertex, visit: &mut dyn FnMut(TreeVertex)) {
        for child in 0..self.spec.shape.branching {
            visit(self.child(v, child));
        }
    }

    fn successor_count(&self, _v: TreeVertex) -> usize {
        self.spec.shape.branching as usize
    }

    fn sample_successor(&self, v: TreeVertex, rng: &mut SplitMix64) -> Option<TreeVertex> {
        let child = rng.below_u64(self.spec.shape.branching as u64) as u32;
        Some(self.child(v, child))
    }

    fn needs_duplicate_detection(&self) -> bool {
        false
    }

    fn generates_sorted_levels(&self) -> bool {
        true
    }

    fn structural_parent(&self, v: TreeVertex) -> Option<TreeVertex> {
        (v.level > 0).then(|| TreeVertex {
            level: v.level - 1,
            index: v.index / self.spec.shape.branching as u128,
        })
    }

    fn goal_level(&self) -> Result<u32, TaskError> {
        Ok(self.spec.shape.goal_level)
    }
}

impl TreeTask {
    #[inline]
    fn child(&self, v: TreeVertex, child: u32) -> TreeVertex {
        let b = self.spec.shape.branching as u128;
        // Indices stay exact through the goal level (they fit by the shape
        // invariant). Deeper vertices are never goal-tested by identity and
        // never appear in a returned path, so their indices may wrap.
        let index = if v.level < self.spec.shape.goal_level {
            v.index * b + child as u128
        } else {
            v.index.wrapping_mul(b).wrapping_add(child as u128)
        };
        TreeVertex { level: v.level + 1, index }
    }
}

impl SearchSpace for GraphTask {
    type Vertex = usize;

    fn initial(&self) -> usize {
        self.initial
    }

    fn is_goal(&self, v: usize) -> bool {
        self.is_goal_vertex(v)
    }

    fn for_each_successor(&self, v: usize, visit: &mut dyn FnMut(usize)) {
        for &succ in &self.adjacency[v] {
            visit(succ);
        }
    }

    fn successor_count(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    fn sample_successor(&self, v: usize, rng: &mut SplitMix64) -> Option<usize> {
        let succs = &self.adjacency[v];
        if succs.is_empty() {
            None
        } else {
            Some(succs[rng.below_usize(succs.len())])
        }
    }

    fn needs_duplicate_detection(&self) -> bool {
        true
    }

    fn structural_parent(&self, _v: usize) -> Option<usize> {
        None
    }

    fn goal_level(&self) -> Result<u32, TaskError> {
        Ok(self.level_counts()?.goal_level)
    }
}
