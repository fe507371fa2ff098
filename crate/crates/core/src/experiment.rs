//! Cable-length sweeps and heuristic comparisons.

use std::time::Duration;

use crate::planner::{Heuristic, PlanOptions, PlanResult, Planner};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Solved,
    Infeasible,
    BudgetExhausted,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Solved => "solved",
            RowStatus::Infeasible => "infeasible",
            RowStatus::BudgetExhausted => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow<T> {
    pub ell: T,
    pub status: RowStatus,
    pub cost_a: T,
    pub cost_b: T,
    pub max_cost: T,
    pub consumed_final: T,
    pub expanded: usize,
    pub generated: usize,
    pub wall_time: Duration,
}

impl<T: Scalar> SweepRow<T> {
    pub fn from_result(ell: T, r: &PlanResult<T>) -> Self {
        let nan = T::nan();
        let status = match (&r.solution, r.stats.budget_exhausted) {
            (Some(_), _) => RowStatus::Solved,
            (None, true) => RowStatus::BudgetExhausted,
            (None, false) => RowStatus::Infeasible,
        };
        let (cost_a, cost_b, consumed) = r
            .solution
            .as_ref()
            .map_or((nan, nan, nan), |s| (s.cost_a, s.cost_b, s.final_cable.length()));
        Self {
            ell,
            status,
            cost_a,
            cost_b,
            max_cost: cost_a.max(cost_b),
            consumed_final: consumed,
            expanded: r.stats.expanded,
            generated: r.stats.generated,
            wall_time: r.stats.wall_time,
        }
    }
}

/// One planner run at cable length `ell`.
pub fn sweep_row<T: Scalar>(planner: &Planner<T>, ell: T, h: Heuristic, opts: &PlanOptions) -> SweepRow<T> {
    let r = planner.with_ell(ell).plan(h, opts);
    SweepRow::from_result(ell, &r)
}

/// Planner runs at every length, returned in increasing order of `ell`.
pub fn sweep<T: Scalar>(planner: &Planner<T>, ells: &[T], h: Heuristic, opts: &PlanOptions) -> Vec<SweepRow<T>> {
    let mut ells = ells.to_vec();
    ells.sort_by(|a, b| crate::scalar::cmp_scalar(*a, *b));
    ells.iter().map(|&ell| sweep_row(planner, ell, h, opts)).collect()
}

/// `n` evenly spaced lengths from `lo` to `hi` inclusive.
pub fn linspace<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n < 2 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * T::lit(i as f64 / (n - 1) as f64))
        .collect()
}

/// Adjacent rows where the optimal cost changes.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<T> {
    pub lo: SweepRow<T>,
    pub hi: SweepRow<T>,
}

impl<T: Scalar> Step<T> {
    pub fn width(&self) -> T {
        self.hi.ell - self.lo.ell
    }

    /// The cheaper solution needs more cable than was available below the
    /// step and no more than at the top of it.
    pub fn brackets_consumption(&self) -> bool {
        let c = self.hi.consumed_final;
        self.hi.status == RowStatus::Solved && c > self.lo.ell && c <= self.hi.ell + T::length_eps()
    }
}

pub fn detect_steps<T: Scalar>(rows: &[SweepRow<T>]) -> Vec<Step<T>> {
    let tol = T::lit(1e-9);
    rows.windows(2)
        .filter(|w| {
            let (a, b) = (&w[0], &w[1]);
            match (a.status, b.status) {
                (RowStatus::Solved, RowStatus::Solved) => (a.max_cost - b.max_cost).abs() > tol,
                (RowStatus::Infeasible, RowStatus::Solved) => true,
                _ => false,
            }
        })
        .map(|w| Step { lo: w[0].clone(), hi: w[1].clone() })
        .collect()
}

/// Narrows a step by bisection until its width is at most `tol`.
pub fn refine_step<T: Scalar>(
    planner: &Planner<T>,
    step: &Step<T>,
    h: Heuristic,
    opts: &PlanOptions,
    tol: T,
) -> Step<T> {
    let mut lo = step.lo.clone();
    let mut hi = step.hi.clone();
    let same = |a: &SweepRow<T>, b: &SweepRow<T>| {
        a.status == b.status && (a.status != RowStatus::Solved || (a.max_cost - b.max_cost).abs() <= T::lit(1e-9))
    };
    while hi.ell - lo.ell > tol {
        let mid = sweep_row(planner, (lo.ell + hi.ell) / T::lit(2.0), h, opts);
        if same(&mid, &hi) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Step { lo, hi }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow<T> {
    pub heuristic: Heuristic,
    pub row: SweepRow<T>,
}

/// Plans once per heuristic.
pub fn bench<T: Scalar>(planner: &Planner<T>, opts: &PlanOptions) -> Vec<BenchRow<T>> {
    let ell = planner.scenario().ell;
    Heuristic::ALL
        .iter()
        .map(|&h| BenchRow { heuristic: h, row: SweepRow::from_result(ell, &planner.plan(h, opts)) })
        .collect()
}
