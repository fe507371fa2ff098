mod common;

use std::collections::HashMap;

use common::*;
use proptest::prelude::*;
use tethered_core::planner::{Heuristic, PlanOptions};
use tethered_core::{Planner, Scenario};

const TOL: f64 = 1e-9;
const CONSUMPTION_TOL: f64 = 1e-6;
const SAMPLES: usize = 200;
const NODES_PER_CASE: usize = 12;

fn recording() -> PlanOptions {
    PlanOptions { record_expanded: true, ..PlanOptions::default() }
}

/// Optimal remaining max cost when the robots start from `cable`.
fn true_remaining(s: &Scenario, cable: &tethered_core::TautCable) -> f64 {
    let rest = Scenario::new_unchecked(
        s.obstacles.clone(),
        cable.first(),
        cable.last(),
        s.da,
        s.db,
        s.ell,
        cable.to_polyline(),
    );
    Planner::new(&rest)
        .plan(Heuristic::Spd, &PlanOptions::default())
        .solution
        .map_or(f64::INFINITY, |sol| sol.max_cost())
}

#[test]
fn heuristics_are_ordered_and_admissible() {
    let mut cases = random_feasible(31, 4, 6);
    cases.push((square(), Planner::new(&square()).plan(Heuristic::Spd, &PlanOptions::default()).raw.unwrap()));
    for (s, _) in &cases {
        let planner = Planner::new(s);
        let r = planner.plan(Heuristic::Spd, &recording());
        let step = (r.expanded_nodes.len() / NODES_PER_CASE).max(1);
        for node in r.expanded_nodes.iter().step_by(step) {
            let sld = planner.heuristic_sld(&node.cable);
            let spd = planner.heuristic_spd(&node.cable);
            let jr = planner.heuristic_jr(&node.cable);
            let rest = true_remaining(s, &node.cable);
            assert!(sld >= 0.0);
            assert!(sld <= spd + TOL, "sld {sld} > spd {spd}");
            assert!(spd <= jr + TOL, "spd {spd} > jr {jr}");
            assert!(jr <= rest + TOL, "jr {jr} > remaining {rest}");
        }
    }
}

#[test]
fn priorities_never_decrease_along_parent_chains() {
    for (s, _) in random_feasible(32, 5, 6) {
        let planner = Planner::new(&s);
        for h in [Heuristic::None, Heuristic::Sld, Heuristic::Spd] {
            let r = planner.plan(h, &recording());
            let f: HashMap<usize, f64> = r.expanded_nodes.iter().map(|n| (n.id, n.f)).collect();
            for n in &r.expanded_nodes {
                if let Some(parent) = n.parent {
                    let pf = f[&parent];
                    assert!(n.f >= pf - TOL, "{h}: child f {} below parent f {pf}", n.f);
                }
            }
        }
    }
}

#[test]
fn optimal_cost_does_not_increase_with_cable_length() {
    for (s, _) in random_feasible(33, 5, 6) {
        let planner = Planner::new(&s);
        let mut last = f64::INFINITY;
        for factor in [1.0, 1.25, 1.5, 2.0, 3.0] {
            let r = planner.with_ell(s.ell * factor).plan(Heuristic::Spd, &PlanOptions::default());
            let cost = r.solution.expect("longer cable stays feasible").max_cost();
            assert!(cost <= last + TOL, "cost {cost} rose above {last} at factor {factor}");
            last = cost;
        }
    }
}

#[test]
fn solutions_fit_the_cable() {
    for (s, raw) in random_feasible(34, 8, 6) {
        let planner = Planner::new(&s);
        let sol = planner.plan(Heuristic::Spd, &PlanOptions::default()).solution.unwrap();
        for cand in [&raw, &sol] {
            let need = planner
                .tightener()
                .cstar_upper(&cand.tau_a(), &cand.tau_b(), &s.cable, SAMPLES)
                .unwrap();
            assert!(need <= s.ell + CONSUMPTION_TOL, "needs {need} > ell {}", s.ell);
            assert!(cand.final_cable.length() <= s.ell + CONSUMPTION_TOL);
        }
        assert!((raw.max_cost() - sol.max_cost()).abs() < TOL || sol.max_cost() < raw.max_cost());
    }
}

fn coord() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn empty_plane_with_slack_cable_moves_straight(
        ra in (coord(), coord()), rb in (coord(), coord()), da in (coord(), coord()), db in (coord(), coord()),
    ) {
        let (ra, rb, da, db) = (p(ra.0, ra.1), p(rb.0, rb.1), p(da.0, da.1), p(db.0, db.1));
        prop_assume!(ra.dist(rb) > 1e-3);
        let ell = ra.dist(da) + ra.dist(rb) + rb.dist(db);
        let sol = Planner::new(&empty(ra, rb, da, db, ell))
            .plan(Heuristic::Spd, &PlanOptions::default())
            .solution
            .unwrap();
        prop_assert!((sol.cost_a - ra.dist(da)).abs() < TOL);
        prop_assert!((sol.cost_b - rb.dist(db)).abs() < TOL);
    }
}
