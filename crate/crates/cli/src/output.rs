//! Rendering of exact rationals, summaries and sweep series as table text,
//! CSV (`x,series,value_exact,value_decimal`) or JSON. JSON carries every
//! exact rational as its `num/den` string so values round-trip bit-for-bit.

use plateau::{decimal_string, CrossoverReport, EstimateSummary, Exact, SweepSeries, ValidationReport};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// `"num/den (decimal)"`, the standard rendering of an exact value.
pub fn exact_with_decimal(value: &Exact, precision: usize) -> String {
    format!("{} ({})", value, decimal_string(value, precision))
}

pub fn float(value: f64, precision: usize) -> String {
    format!("{value:.precision$}")
}

pub fn expectation_json(formula: &str, value: &Exact, precision: usize) -> Value {
    json!({
        "formula": formula,
        "exact": value.to_string(),
        "decimal": decimal_string(value, precision),
    })
}

pub fn crossover_table(report: &CrossoverReport, precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("b: {}\n", report.branching));
    out.push_str(&format!("depth: {}\n", report.goal_level));
    out.push_str(&format!("error: {}\n", report.depth_error));
    out.push_str(&format!("bound: {} ({})\n", report.bound, report.bound_basis));
    out.push_str(&format!("exact: {}\n", report.exact));
    out.push_str(&format!(
        "density_bound: {}\n",
        exact_with_decimal(&report.density_bound, precision)
    ));
    out.push_str(&format!(
        "density_exact: {}\n",
        exact_with_decimal(&report.density_exact, precision)
    ));
    if let Some(note) = basis_note(report) {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn basis_note(report: &CrossoverReport) -> Option<&'static str> {
    match report.bound_basis {
        plateau::BoundBasis::General => None,
        plateau::BoundBasis::DepthTwoUnitError => {
            Some("depth-2 unit-error case: bound is one higher than the general rule")
        }
        plateau::BoundBasis::DepthOneEquality => {
            Some("depth-1 special case: the expectations tie exactly at g = b")
        }
        plateau::BoundBasis::Empirical => {
            Some("no proven rule for depth 1 with error > 1; bound is the exact crossover")
        }
    }
}

pub fn crossover_json(report: &CrossoverReport, precision: usize) -> Value {
    json!({
        "b": report.branching,
        "depth": report.goal_level,
        "error": report.depth_error.to_string(),
        "bound": report.bound.to_string(),
        "bound_basis": report.bound_basis.to_string(),
        "exact": report.exact.to_string(),
        "density_bound": report.density_bound.to_string(),
        "density_bound_decimal": decimal_string(&report.density_bound, precision),
        "density_exact": report.density_exact.to_string(),
        "density_exact_decimal": decimal_string(&report.density_exact, precision),
        "note": basis_note(report),
    })
}

pub fn sweep_csv(series: &[SweepSeries], precision: usize) -> String {
    let mut out = String::from("x,series,value_exact,value_decimal\n");
    for s in series {
        for (x, value) in &s.points {
            out.push_str(&format!(
                "{x},{},{},{}\n",
                s.label,
                value,
                decimal_string(value, precision)
            ));
        }
    }
    out
}

pub fn sweep_json(series: &[SweepSeries], precision: usize) -> Value {
    let series: Vec<Value> = series
        .iter()
        .map(|s| {
            let points: Vec<Value> = s
                .points
                .iter()
                .map(|(x, value)| {
                    json!({
                        "x": x.to_string(),
                        "exact": value.to_string(),
                        "decimal": decimal_string(value, precision),
                    })
                })
                .collect();
            json!({
                "label": s.label,
                "x_label": s.x_label,
                "y_label": s.y_label,
                "config": s.config,
                "points": points,
            })
        })
        .collect();
    json!({ "series": series })
}

pub fn sweep_table(series: &[SweepSeries], precision: usize) -> String {
    let mut out = String::new();
    for s in series {
        out.push_str(&format!("# {} [{}] {} vs {}\n", s.label, s.config, s.y_label, s.x_label));
        for (x, value) in &s.points {
            out.push_str(&format!("{x}\t{}\n", exact_with_decimal(value, precision)));
        }
    }
    out
}

pub fn summary_table(summary: &EstimateSummary, precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("trials: {}\n", summary.trials));
    out.push_str(&format!("mean: {}\n", float(summary.mean, precision)));
    out.push_str(&format!("variance: {}\n", float(summary.variance, precision)));
    out.push_str(&format!("std_error: {}\n", float(summary.std_error, precision)));
    out.push_str(&format!(
        "ci99: [{}, {}]\n",
        float(summary.ci_low, precision),
        float(summary.ci_high, precision)
    ));
    out.push_str(&format!("seed: {}\n", summary.base_seed));
    out.push_str(&format!("truncated_trials: {}\n", summary.truncated_trials));
    out
}

pub fn summary_json(summary: &EstimateSummary, precision: usize) -> Value {
    json!({
        "trials": summary.trials,
        "mean": float(summary.mean, precision),
        "variance": float(summary.variance, precision),
        "std_error": float(summary.std_error, precision),
        "ci_low": float(summary.ci_low, precision),
        "ci_high": float(summary.ci_high, precision),
        "seed": summary.base_seed,
        "truncated_trials": summary.truncated_trials,
    })
}

pub fn validation_table(report: &ValidationReport, precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "analytic: {}\n",
        exact_with_decimal(&report.analytic.value, precision)
    ));
    out.push_str(&summary_table(&report.estimate, precision));
    out.push_str(&format!("z_score: {}\n", float(report.z_score, precision)));
    out.push_str(&format!("z_threshold: {}\n", float(report.z_threshold, precision)));
    out.push_str(&format!("pass: {}\n", report.pass));
    out
}

pub fn validation_json(report: &ValidationReport, precision: usize) -> Value {
    json!({
        "analytic": report.analytic.value.to_string(),
        "analytic_decimal": decimal_string(&report.analytic.value, precision),
        "estimate": summary_json(&report.estimate, precision),
        "z_score": float(report.z_score, precision),
        "z_threshold": float(report.z_threshold, precision),
        "pass": report.pass,
    })
}
