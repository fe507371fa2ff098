//! Number formatting and serialized forms shared by the commands.

use serde::Deserialize;
use serde_json::{json, Value};
use tethered_core::experiment::{RowStatus, SweepRow};
use tethered_core::planner::{Heuristic, PlanResult};
use tethered_core::Point;

/// Significant digits kept in every number written by the tool.
pub const DIGITS: usize = 12;

/// Rounds to [`DIGITS`] significant digits.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", DIGITS - 1, x).parse().unwrap_or(x)
}

/// JSON number rounded to [`DIGITS`] significant digits; `null` if not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round(x)).map_or(Value::Null, Value::Number)
}

/// CSV cell; empty if not finite.
pub fn cell(x: f64) -> String {
    if x.is_finite() {
        round(x).to_string()
    } else {
        String::new()
    }
}

pub fn points(pts: &[Point]) -> Value {
    Value::Array(pts.iter().map(|p| json!([num(p.x), num(p.y)])).collect())
}

pub fn status_of(r: &PlanResult<f64>) -> RowStatus {
    match (&r.solution, r.stats.budget_exhausted) {
        (Some(_), _) => RowStatus::Solved,
        (None, true) => RowStatus::BudgetExhausted,
        (None, false) => RowStatus::Infeasible,
    }
}

/// The document written by `plan`.
pub fn plan_json(r: &PlanResult<f64>, h: Heuristic, ell: f64, timing: bool) -> Value {
    let wall = if timing { r.stats.wall_time.as_secs_f64() } else { 0.0 };
    let (cost_a, cost_b, consumed) = r
        .solution
        .as_ref()
        .map_or((f64::NAN, f64::NAN, f64::NAN), |s| (s.cost_a, s.cost_b, s.final_cable.length()));
    let stats = json!({
        "status": status_of(r).as_str(),
        "heuristic": h.as_str(),
        "ell": num(ell),
        "expanded": r.stats.expanded,
        "generated": r.stats.generated,
        "pruned": r.stats.pruned,
        "budget_exhausted": r.stats.budget_exhausted,
        "wall_time_s": num(wall),
        "cost_a": num(cost_a),
        "cost_b": num(cost_b),
        "consumed_final": num(consumed),
    });
    match &r.solution {
        Some(s) => json!({
            "pi_a": points(&s.pi_a),
            "pi_b": points(&s.pi_b),
            "cost_a": num(s.cost_a),
            "cost_b": num(s.cost_b),
            "stats": stats,
            "final_cable": points(s.final_cable.verts()),
        }),
        None => json!({
            "pi_a": Value::Null,
            "pi_b": Value::Null,
            "cost_a": Value::Null,
            "cost_b": Value::Null,
            "stats": stats,
            "final_cable": Value::Null,
        }),
    }
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// Solution document as read back by `verify` and `render`.
#[derive(Clone, Debug, Deserialize)]
pub struct SolutionFile {
    pub pi_a: Option<Vec<[f64; 2]>>,
    pub pi_b: Option<Vec<[f64; 2]>>,
    pub cost_a: Option<f64>,
    pub cost_b: Option<f64>,
    pub final_cable: Option<Vec<[f64; 2]>>,
}

pub fn to_points(raw: &[[f64; 2]]) -> Vec<Point> {
    raw.iter().map(|a| Point::new(a[0], a[1])).collect()
}

pub const SWEEP_HEADER: [&str; 9] =
    ["ell", "status", "cost_a", "cost_b", "max_cost", "consumed_final", "expanded", "generated", "wall_time"];

pub fn sweep_record(r: &SweepRow<f64>, timing: bool) -> Vec<String> {
    let wall = if timing { r.wall_time.as_secs_f64() } else { 0.0 };
    vec![
        cell(r.ell),
        r.status.as_str().to_string(),
        cell(r.cost_a),
        cell(r.cost_b),
        cell(r.max_cost),
        cell(r.consumed_final),
        r.expanded.to_string(),
        r.generated.to_string(),
        cell(wall),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round(1.0 / 3.0), 0.333333333333);
        assert_eq!(round(2.0f64.sqrt() * 1e6), 1414213.56237);
        assert_eq!(round(0.0), 0.0);
        assert_eq!(cell(f64::NAN), "");
        assert_eq!(cell(5.0), "5");
    }

    #[test]
    fn non_finite_numbers_become_null() {
        assert_eq!(num(f64::INFINITY), Value::Null);
        assert_eq!(num(1.5), json!(1.5));
    }
}
