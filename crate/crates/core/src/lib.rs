//! Expected-runtime analysis of two plateau-escape strategies: breadth-first
//! search and constant-depth restarting random walks.
//!
//! The crate provides:
//!
//! - a task model ([`task`]): implicit uniform-branching trees, explicit
//!   graphs (including a plateau-escape adapter that turns a heuristic into
//!   a goal set), and per-level statistics;
//! - instrumented engines ([`brfs`], [`rrw`]) that count goal tests and
//!   successor generations exactly;
//! - closed-form expected goal-test counts ([`analytics`]), generic over the
//!   scalar type: use [`Exact`] for exact rationals or `f64` for quick
//!   approximations;
//! - crossover analysis ([`crossover`]): the smallest goal count at which
//!   random walks match or beat breadth-first search, with bounds, exact
//!   values, goal densities and sweep series;
//! - a Monte Carlo harness ([`montecarlo`]) that validates the closed forms
//!   by simulation, reproducibly from a single seed.

pub mod analytics;
pub mod brfs;
pub mod crossover;
pub mod error;
pub mod montecarlo;
pub mod numeric;
pub mod rng;
pub mod rrw;
pub mod task;

/// Exact arbitrary-precision rational scalar; the default instantiation of
/// every closed form and the only one used where results feed exact
/// comparisons.
pub type Exact = num::BigRational;

pub use analytics::{
    dp_success_probability, expected_brfs_general, expected_brfs_tree, expected_rrw_general,
    expected_rrw_tree, tree_success_probability, Expectation, Formula, SuccessProbability,
};
pub use brfs::{run_brfs, run_brfs_capped, run_brfs_observed, RunStats, SearchEvent, TieBreaking, TieMode};
pub use crossover::{
    crossover_bound, density_crossover, empirical_crossover, empirical_crossover_with,
    sweep_crossover, sweep_density, sweep_expected_tests, BoundBasis, CrossoverReport, SweepSeries,
};
pub use error::{AnalyticsError, EngineError, McError, TaskError};
pub use montecarlo::{
    estimate_brfs, estimate_rrw, report_against, validate_brfs, validate_rrw, EstimateSummary,
    ValidationReport, DEFAULT_CI_Z, DEFAULT_Z_THRESHOLD,
};
pub use numeric::{decimal_string, parse_exact, DepthError, Scalar};
pub use rng::{mix, SplitMix64};
pub use rrw::{
    empirical_success_probability, run_rrw, run_rrw_observed, run_rrw_to_depth, RrwConfig,
    DEFAULT_MAX_WALKS,
};
pub use task::{GraphTask, LevelCounts, SearchSpace, TreeShape, TreeTask, TreeTaskSpec, TreeVertex};
