//! Error types shared across the task model, the engines and the analytics.

use thiserror::Error;

/// Task construction and inspection failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error("invalid task parameters: {0}")]
    InvalidSpec(String),
    #[error("tree size overflows the native integer range: {base}^{exponent}")]
    Overflow { base: u32, exponent: u32 },
    #[error("no vertex improves on the initial heuristic value")]
    NoExit,
    #[error("no goal vertex is reachable from the initial vertex")]
    Unreachable,
    #[error("graph text format: {0}")]
    Format(String),
}

/// Failures raised while running a search engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// A vertex with no successors was reached before the walk cutoff.
    #[error("dead end at walk depth {depth}: vertex {vertex} has no successors")]
    DeadEnd { vertex: String, depth: u64 },
    /// The breadth-first frontier outgrew the configured vertex cap.
    #[error("open list holds {frontier} vertices, exceeding the cap of {cap}")]
    MemoryBudgetExceeded { frontier: usize, cap: usize },
    #[error(transparent)]
    Task(#[from] TaskError),
}

/// Failures of the closed-form layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("value {0} is not representable in the requested scalar type")]
    Unrepresentable(String),
    #[error("graph is not leveled: {0}")]
    NotLeveled(String),
    #[error("dead end during probability propagation: vertex {vertex} at level {level}")]
    DeadEnd { vertex: usize, level: u32 },
    #[error(transparent)]
    Task(#[from] TaskError),
}

/// Failures of the simulation harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

impl From<TaskError> for McError {
    fn from(err: TaskError) -> Self {
        McError::Engine(EngineError::Task(err))
    }
}
