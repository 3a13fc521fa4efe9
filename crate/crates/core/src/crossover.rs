//! Crossover analysis on uniform trees: the sufficient goal-count bound with
//! its shallow special cases, the exact empirical crossover, goal-density
//! crossovers, and the sweep series behind the comparison figures.

use std::fmt;
use std::ops::RangeInclusive;

use crate::analytics::{expected_brfs_tree, expected_rrw_tree};
use crate::error::AnalyticsError;
use crate::numeric::{checked_pow_u128, DepthError};
use crate::Exact;

/// Which rule produced a crossover bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundBasis {
    /// `(e d* - 1)(b - 1) + 1`, valid for `d* >= 2` with cutoff above 2,
    /// capped at the goal-level width where the saturated case takes over.
    General,
    /// `d* = 2, e = 1`: one higher than the general rule.
    DepthTwoUnitError,
    /// `d* = 1, e = 1`: the expectations tie exactly at `g = b`.
    DepthOneEquality,
    /// `d* = 1, e > 1`: no proven rule; the reported bound is the exact
    /// empirical crossover.
    Empirical,
}

impl fmt::Display for BoundBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundBasis::General => "general",
            BoundBasis::DepthTwoUnitError => "depth-2-unit-error",
            BoundBasis::DepthOneEquality => "depth-1-equality",
            BoundBasis::Empirical => "empirical",
        };
        f.write_str(name)
    }
}

/// Smallest goal count at which RRW provably matches or beats breadth-first
/// search on a `(b, d*, e)` tree, together with the rule that produced it.
pub fn crossover_bound(
    branching: u32,
    goal_level: u32,
    depth_error: DepthError,
) -> Result<(u128, BoundBasis), AnalyticsError> {
    let (width, cutoff) = validate(branching, goal_level, depth_error)?;
    if goal_level == 1 {
        if depth_error.is_one() {
            return Ok((branching as u128, BoundBasis::DepthOneEquality));
        }
        let exact = empirical_crossover(branching, goal_level, depth_error)?
            .expect("a tie always exists at goal saturation");
        return Ok((exact, BoundBasis::Empirical));
    }
    let (offset, basis) = if cutoff == 2 {
        // Only reachable as d* = 2, e = 1.
        (2u128, BoundBasis::DepthTwoUnitError)
    } else {
        (1u128, BoundBasis::General)
    };
    let bound = (cutoff as u128 - 1) * (branching as u128 - 1) + offset;
    // The saturated goal level always crosses for d* >= 2, so the guarantee
    // never needs more goals than the level holds.
    Ok((bound.min(width), basis))
}

/// Smallest goal count in `[1, b^{d*}]` for which the RRW expectation
/// matches or falls below the breadth-first expectation, decided in exact
/// rational arithmetic. `None` when no such goal count exists.
pub fn empirical_crossover(
    branching: u32,
    goal_level: u32,
    depth_error: DepthError,
) -> Result<Option<u128>, AnalyticsError> {
    empirical_crossover_with(branching, goal_level, depth_error, false)
}

/// [`empirical_crossover`] with a strict comparison: requires RRW to beat
/// breadth-first search outright, so exact ties do not count.
pub fn empirical_crossover_with(
    branching: u32,
    goal_level: u32,
    depth_error: DepthError,
    strict: bool,
) -> Result<Option<u128>, AnalyticsError> {
    let (width, _) = validate(branching, goal_level, depth_error)?;
    let crosses = |goals: u128| -> Result<bool, AnalyticsError> {
        let brfs = expected_brfs_tree::<Exact>(branching, goal_level, goals)?.value;
        let rrw = expected_rrw_tree::<Exact>(branching, goal_level, goals, depth_error)?.value;
        Ok(if strict { rrw < brfs } else { rrw <= brfs })
    };
    // The gap between the two expectations is strictly increasing in the
    // goal count, so the predicate flips at most once; scan small ranges and
    // bisect large ones.
    if width <= 1 << 16 {
        for goals in 1..=width {
            if crosses(goals)? {
                return Ok(Some(goals));
            }
        }
        return Ok(None);
    }
    if !crosses(width)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (1u128, width);
    if crosses(lo)? {
        return Ok(Some(lo));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if crosses(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// The crossover bound as a fraction of the goal-level width.
pub fn density_crossover(
    branching: u32,
    goal_level: u32,
    depth_error: DepthError,
) -> Result<Exact, AnalyticsError> {
    let (width, _) = validate(branching, goal_level, depth_error)?;
    let (bound, _) = crossover_bound(branching, goal_level, depth_error)?;
    Ok(Exact::new(bound.into(), width.into()))
}

fn validate(
    branching: u32,
    goal_level: u32,
    depth_error: DepthError,
) -> Result<(u128, u64), AnalyticsError> {
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
    let cutoff = depth_error.walk_depth(goal_level).ok_or_else(|| {
        AnalyticsError::InvalidInput(format!(
            "walk cutoff e*d* = {depth_error}*{goal_level} is not an integer"
        ))
    })?;
    Ok((width, cutoff))
}

/// Bound, exact crossover, and both goal-density crossovers for one
/// `(b, d*, e)` triple.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverReport {
    pub branching: u32,
    pub goal_level: u32,
    pub depth_error: DepthError,
    pub bound: u128,
    pub bound_basis: BoundBasis,
    pub exact: u128,
    pub density_bound: Exact,
    pub density_exact: Exact,
}

impl CrossoverReport {
    pub fn compute(
        branching: u32,
        goal_level: u32,
        depth_error: DepthError,
    ) -> Result<Self, AnalyticsError> {
        let (width, _) = validate(branching, goal_level, depth_error)?;
        let (bound, bound_basis) = crossover_bound(branching, goal_level, depth_error)?;
        let exact = empirical_crossover(branching, goal_level, depth_error)?
            .expect("the matches-or-beats crossover always exists on trees");
        Ok(Self {
            branching,
            goal_level,
            depth_error,
            bound,
            bound_basis,
            exact,
            density_bound: Exact::new(bound.into(), width.into()),
            density_exact: Exact::new(exact.into(), width.into()),
        })
    }
}

/// One plotted series: `(x, y)` points with axis labels, a series label, and
/// a rendering of the fixed parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub label: String,
    pub x_label: String,
    pub y_label: String,
    pub config: String,
    pub points: Vec<(u128, Exact)>,
}

/// Expected goal tests per algorithm across a goal-count range at fixed
/// `(b, d*)`: one breadth-first series plus one RRW series per depth error.
pub fn sweep_expected_tests(
    branching: u32,
    goal_level: u32,
    depth_errors: &[DepthError],
    goals: RangeInclusive<u128>,
) -> Result<Vec<SweepSeries>, AnalyticsError> {
    let config = format!("b={branching} depth={goal_level}");
    let goal_range = || (*goals.start()..=*goals.end()).filter(|g| *g >= 1);
    let mut series = Vec::new();
    let mut points = Vec::new();
    for g in goal_range() {
        points.push((g, expected_brfs_tree::<Exact>(branching, goal_level, g)?.value));
    }
    series.push(SweepSeries {
        label: "brfs".into(),
        x_label: "goals".into(),
        y_label: "expected goal tests".into(),
        config: config.clone(),
        points,
    });
    for &e in depth_errors {
        let mut points = Vec::new();
        for g in goal_range() {
            points.push((g, expected_rrw_tree::<Exact>(branching, goal_level, g, e)?.value));
        }
        series.push(SweepSeries {
            label: format!("rrw e={e}"),
            x_label: "goals".into(),
            y_label: "expected goal tests".into(),
            config: config.clone(),
            points,
        });
    }
    Ok(series)
}

/// Crossover bound and exact crossover across a goal-level range: two series
/// per depth error. Goal levels where `e * d*` is not an integer are skipped.
pub fn sweep_crossover(
    branching: u32,
    goal_levels: RangeInclusive<u32>,
    depth_errors: &[DepthError],
) -> Result<Vec<SweepSeries>, AnalyticsError> {
    let config = format!("b={branching}");
    let mut series = Vec::new();
    for &e in depth_errors {
        let mut bound_points = Vec::new();
        let mut exact_points = Vec::new();
        for d in goal_levels.clone() {
            if e.walk_depth(d).is_none() {
                continue;
            }
            let report = CrossoverReport::compute(branching, d, e)?;
            bound_points.push((d as u128, Exact::from_integer(report.bound.into())));
            exact_points.push((d as u128, Exact::from_integer(report.exact.into())));
        }
        series.push(SweepSeries {
            label: format!("bound e={e}"),
            x_label: "goal level".into(),
            y_label: "goal crossover".into(),
            config: config.clone(),
            points: bound_points,
        });
        series.push(SweepSeries {
            label: format!("exact e={e}"),
            x_label: "goal level".into(),
            y_label: "goal crossover".into(),
            config: config.clone(),
            points: exact_points,
        });
    }
    Ok(series)
}

/// Goal-density crossover across a goal-level range, one series per depth
/// error. Goal levels where `e * d*` is not an integer are skipped.
pub fn sweep_density(
    branching: u32,
    goal_levels: RangeInclusive<u32>,
    depth_errors: &[DepthError],
) -> Result<Vec<SweepSeries>, AnalyticsError> {
    let config = format!("b={branching}");
    let mut series = Vec::new();
    for &e in depth_errors {
        let mut points = Vec::new();
        for d in goal_levels.clone() {
            if e.walk_depth(d).is_none() {
                continue;
            }
            points.push((d as u128, density_crossover(branching, d, e)?));
        }
        series.push(SweepSeries {
            label: format!("density e={e}"),
            x_label: "goal level".into(),
            y_label: "goal density crossover".into(),
            config: config.clone(),
            points,
        });
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: u64, d: u64) -> DepthError {
        DepthError::new(n, d).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(crossover_bound(4, 6, e(1, 1)).unwrap(), (16, BoundBasis::General));
        assert_eq!(
            crossover_bound(2, 2, e(1, 1)).unwrap(),
            (3, BoundBasis::DepthTwoUnitError)
        );
        assert_eq!(crossover_bound(4, 6, e(2, 1)).unwrap(), (34, BoundBasis::General));
        assert_eq!(
            crossover_bound(4, 1, e(1, 1)).unwrap(),
            (4, BoundBasis::DepthOneEquality)
        );
        // d* = 1 with e > 1 falls back to the empirical value.
        let (bound, basis) = crossover_bound(3, 1, e(2, 1)).unwrap();
        assert_eq!(basis, BoundBasis::Empirical);
        assert_eq!(bound, 3);
    }

    #[test]
    fn bound_is_capped_at_the_level_width() {
        // b=2, d*=2, e=3: the general rule gives 6 > 4 = b^2, but the
        // saturated level already crosses.
        assert_eq!(crossover_bound(2, 2, e(3, 1)).unwrap().0, 4);
        let report = CrossoverReport::compute(2, 2, e(3, 1)).unwrap();
        assert!(report.exact <= report.bound);
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(empirical_crossover(4, 6, e(1, 1)).unwrap(), Some(16));
        assert_eq!(empirical_crossover(2, 2, e(1, 1)).unwrap(), Some(3));
        assert_eq!(empirical_crossover(4, 1, e(1, 1)).unwrap(), Some(4));
    }

    #[test]
    fn strict_comparison_can_be_empty() {
        // At d* = 1, e = 1 the expectations only ever tie (at g = b).
        assert_eq!(empirical_crossover_with(4, 1, e(1, 1), true).unwrap(), None);
        assert_eq!(empirical_crossover_with(4, 6, e(1, 1), true).unwrap(), Some(16));
    }

    #[test]
    fn bisection_matches_scan() {
        // 3^11 = 177147 exceeds the scan threshold; force both paths.
        let via_bisection = empirical_crossover(3, 11, e(1, 1)).unwrap().unwrap();
        let mut via_scan = None;
        for g in 1..=177_147u128 {
            let brfs = expected_brfs_tree::<Exact>(3, 11, g).unwrap().value;
            let rrw = expected_rrw_tree::<Exact>(3, 11, g, e(1, 1)).unwrap().value;
            if rrw <= brfs {
                via_scan = Some(g);
                break;
            }
        }
        assert_eq!(Some(via_bisection), via_scan);
    }

    #[test]
    fn density_examples() {
        assert_eq!(density_crossover(4, 6, e(1, 1)).unwrap(), Exact::new(1.into(), 256.into()));
        assert_eq!(density_crossover(4, 3, e(1, 1)).unwrap(), Exact::new(7.into(), 64.into()));
        assert_eq!(density_crossover(4, 2, e(1, 1)).unwrap(), Exact::new(5.into(), 16.into()));
        assert_eq!(density_crossover(2, 1, e(1, 1)).unwrap(), Exact::from_integer(1.into()));
        assert_eq!(density_crossover(2, 2, e(1, 1)).unwrap(), Exact::new(3.into(), 4.into()));
    }

    #[test]
    fn crossover_sweep_bound_series() {
        let series = sweep_crossover(4, 2..=8, &[e(1, 1)]).unwrap();
        assert_eq!(series.len(), 2);
        let bounds: Vec<u128> = series[0]
            .points
            .iter()
            .map(|(_, v)| {
                assert!(v.is_integer());
                u128::try_from(v.to_integer()).unwrap()
            })
            .collect();
        assert_eq!(bounds, vec![5, 7, 10, 13, 16, 19, 22]);
        for ((_, bound), (_, exact)) in series[0].points.iter().zip(&series[1].points) {
            assert!(bound >= exact);
        }
    }

    #[test]
    fn tests_sweep_shape_and_monotonicity() {
        let series = sweep_expected_tests(4, 6, &[e(1, 1)], 1..=64).unwrap();
        assert_eq!(series.len(), 2);
        for s in &series {
            assert_eq!(s.points.len(), 64);
            assert!(s.points.windows(2).all(|w| w[0].1 > w[1].1), "strictly decreasing");
            assert!(s.points.windows(2).all(|w| w[0].0 < w[1].0), "x strictly increasing");
        }
        assert_eq!(series[0].points[0].1, Exact::new(6827.into(), 2.into()));
        assert_eq!(series[1].points[0].1, Exact::from_integer(24577.into()));
    }

    #[test]
    fn fractional_depth_errors_skip_invalid_levels() {
        let series = sweep_density(4, 2..=8, &[e(3, 2)]).unwrap();
        let xs: Vec<u128> = series[0].points.iter().map(|(x, _)| *x).collect();
        assert_eq!(xs, vec![2, 4, 6, 8]);
    }

    #[test]
    fn two_leaf_density_sweep() {
        let series = sweep_density(2, 1..=2, &[e(1, 1)]).unwrap();
        assert_eq!(
            series[0].points,
            vec![
                (1, Exact::from_integer(1.into())),
                (2, Exact::new(3.into(), 4.into())),
            ]
        );
    }
}
