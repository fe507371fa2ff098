//! Timed execution of a path pair.
//!
//! Both robots leave together and move at constant speed along their paths,
//! parameterized by arc length, so that both arrive at the common horizon
//! `T = max(len_a, len_b) / mv`. The robot with the longer path drives at the
//! speed limit; the other one slows down proportionally.

use std::fmt;

use thiserror::Error;

use crate::cable::{cat_curve_at, Tightener};
use crate::geom::{point_in_free_space, Point, Polyline};
use crate::planner::Solution;
use crate::scalar::Scalar;
use crate::scenario::Scenario;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrajectoryError {
    #[error("maximum speed must be positive and finite")]
    ZeroSpeed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    waypoints: Vec<(T, Point<T>)>,
    horizon: T,
    speed: T,
    path: Polyline<T>,
}

impl<T: Scalar> Trajectory<T> {
    /// Traverses `path` at constant speed over `[0, horizon]`.
    pub fn along(path: Polyline<T>, horizon: T) -> Self {
        let len = path.length();
        if horizon <= T::zero() {
            return Self { waypoints: vec![(T::zero(), path.first())], horizon: T::zero(), speed: T::zero(), path };
        }
        let speed = len / horizon;
        let waypoints = if len > T::zero() {
            path.cumulative_lengths()
                .into_iter()
                .zip(path.points().iter().copied())
                .map(|(s, p)| (horizon * s / len, p))
                .collect()
        } else {
            vec![(T::zero(), path.first()), (horizon, path.first())]
        };
        Self { waypoints, horizon, speed, path }
    }

    /// Same path, started `delay` later and driven at `speed` until it
    /// arrives; used to build deliberately desynchronized executions.
    pub fn delayed(path: Polyline<T>, delay: T, speed: T) -> Self {
        let len = path.length();
        let travel = if speed > T::zero() { len / speed } else { T::zero() };
        let mut waypoints = Vec::new();
        if delay > T::zero() {
            waypoints.push((T::zero(), path.first()));
        }
        for (s, p) in path.cumulative_lengths().into_iter().zip(path.points().iter().copied()) {
            let t = if len > T::zero() { delay + travel * s / len } else { delay };
            if waypoints.last().is_none_or(|&(last, _)| t > last) {
                waypoints.push((t, p));
            }
        }
        let horizon = waypoints.last().unwrap().0;
        Self { waypoints, horizon, speed, path }
    }

    pub fn waypoints(&self) -> &[(T, Point<T>)] {
        &self.waypoints
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    pub fn speed(&self) -> T {
        self.speed
    }

    pub fn path(&self) -> &Polyline<T> {
        &self.path
    }

    /// Arc-length fraction of the path covered at time `t`.
    pub fn fraction_at(&self, t: T) -> T {
        let len = self.path.length();
        if len == T::zero() {
            return T::one();
        }
        let w = &self.waypoints;
        if t <= w[0].0 {
            return T::zero();
        }
        if t >= w[w.len() - 1].0 {
            return T::one();
        }
        let cum = self.path.cumulative_lengths();
        // Waypoints may start with a hold at the first point.
        let offset = w.len() - cum.len();
        for k in 1..w.len() {
            if t <= w[k].0 {
                let (t0, t1) = (w[k - 1].0, w[k].0);
                let s0 = if k - 1 < offset { T::zero() } else { cum[k - 1 - offset] };
                let s1 = if k < offset { T::zero() } else { cum[k - offset] };
                let u = if t1 > t0 { (t - t0) / (t1 - t0) } else { T::one() };
                return (s0 + (s1 - s0) * u) / len;
            }
        }
        T::one()
    }

    pub fn position_at(&self, t: T) -> Point<T> {
        self.path.point_at_fraction(self.fraction_at(t))
    }

    /// Largest speed over any waypoint interval.
    pub fn max_segment_speed(&self) -> T {
        self.waypoints.windows(2).fold(T::zero(), |m, w| {
            let dt = w[1].0 - w[0].0;
            if dt > T::zero() {
                m.max(w[0].1.dist(w[1].1) / dt)
            } else {
                m
            }
        })
    }
}

/// Synchronized constant-speed execution with shared horizon.
pub fn make_execution<T: Scalar>(sol: &Solution<T>, mv: T) -> Result<(Trajectory<T>, Trajectory<T>), TrajectoryError> {
    if !(mv > T::zero()) || !mv.is_finite() {
        return Err(TrajectoryError::ZeroSpeed);
    }
    let (ta, tb) = (sol.tau_a(), sol.tau_b());
    let horizon = ta.length().max(tb.length()) / mv;
    Ok((Trajectory::along(ta, horizon), Trajectory::along(tb, horizon)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Cable ends at the robots, which stay in free space.
    Connects,
    /// Cable no longer than `ell`.
    BoundedLength,
    /// Positions change no faster than the speed allows.
    Continuity,
    /// Paths start and end at the prescribed points.
    Endpoints,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Connects => "C-I",
            Condition::BoundedLength => "C-II",
            Condition::Continuity => "C-III",
            Condition::Endpoints => "GOAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExecViolation {
    pub condition: Condition,
    pub sample: usize,
    pub time: f64,
    pub detail: String,
}

impl fmt::Display for ExecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at sample {} (t = {:.6}): {}", self.condition.label(), self.sample, self.time, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExecutionReport {
    pub samples: usize,
    pub max_cable: f64,
    pub violations: Vec<ExecViolation>,
}

impl ExecutionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the execution at `n + 1` uniformly spaced times.
pub fn verify_execution<T: Scalar>(
    tr_a: &Trajectory<T>,
    tr_b: &Trajectory<T>,
    s: &Scenario<T>,
    tight: &Tightener<T>,
    n: usize,
) -> ExecutionReport {
    let n = n.max(1);
    let horizon = tr_a.horizon().max(tr_b.horizon());
    let mut report = ExecutionReport { samples: n + 1, ..Default::default() };
    let tol = T::lit(1e-6);
    let mut prev: Option<(T, Point<T>, Point<T>)> = None;
    for i in 0..=n {
        let t = horizon * T::lit(i as f64 / n as f64);
        let time = t.as_f64();
        let mut flag = |condition, detail: String| {
            report.violations.push(ExecViolation { condition, sample: i, time, detail })
        };
        let (pa, pb) = (tr_a.position_at(t), tr_b.position_at(t));
        for (name, q) in [("a", pa), ("b", pb)] {
            if !point_in_free_space(q, &s.obstacles) {
                flag(Condition::Connects, format!("robot {name} at {q} is inside an obstacle"));
            }
        }
        let curve = cat_curve_at(tr_a.path(), tr_b.path(), &s.cable, tr_a.fraction_at(t), tr_b.fraction_at(t));
        match curve.map_err(|e| e.to_string()).and_then(|c| tight.tighten(c.points()).map_err(|e| e.to_string())) {
            Ok(cable) => {
                if !cable.first().approx_eq(pa) || !cable.last().approx_eq(pb) {
                    flag(Condition::Connects, "cable ends do not match robot positions".into());
                }
                let len = cable.length();
                report.max_cable = report.max_cable.max(len.as_f64());
                if len > s.ell + tol {
                    flag(Condition::BoundedLength, format!("cable length {len} exceeds {}", s.ell));
                }
            }
            Err(e) => flag(Condition::Connects, format!("cable cannot be formed: {e}")),
        }
        if let Some((t0, qa, qb)) = prev {
            let dt = t - t0;
            let slack = T::lit(1e-9);
            if qa.dist(pa) > tr_a.speed() * dt + slack {
                flag(Condition::Continuity, format!("robot a jumps {}", qa.dist(pa)));
            }
            if qb.dist(pb) > tr_b.speed() * dt + slack {
                flag(Condition::Continuity, format!("robot b jumps {}", qb.dist(pb)));
            }
        }
        prev = Some((t, pa, pb));
    }
    report
}

/// Endpoint and step checks on a solution, then a sampled execution check.
pub fn verify_solution<T: Scalar>(
    sol: &Solution<T>,
    s: &Scenario<T>,
    tight: &Tightener<T>,
    mv: T,
    n: usize,
) -> ExecutionReport {
    let mut goal_issues = Vec::new();
    let ends = |pi: &[Point<T>]| (pi.first().copied(), pi.last().copied());
    for (name, pi, start, goal) in [("a", &sol.pi_a, s.ra, s.da), ("b", &sol.pi_b, s.rb, s.db)] {
        match ends(pi) {
            (Some(f), Some(l)) => {
                if !f.approx_eq(start) {
                    goal_issues.push((Condition::Endpoints, format!("path {name} starts at {f}, expected {start}")));
                }
                if !l.approx_eq(goal) {
                    goal_issues.push((Condition::Endpoints, format!("path {name} ends at {l}, expected {goal}")));
                }
            }
            _ => goal_issues.push((Condition::Endpoints, format!("path {name} is empty"))),
        }
        for w in pi.windows(2) {
            if !crate::geom::segment_in_free_space(w[0], w[1], &s.obstacles) {
                goal_issues.push((Condition::Connects, format!("path {name} step {} -> {} crosses an obstacle", w[0], w[1])));
            }
        }
    }
    if sol.pi_a.len() != sol.pi_b.len() {
        goal_issues.push((Condition::Endpoints, "paths have different cardinality".into()));
    }
    if sol.final_cable.length() > s.ell + T::lit(1e-6) {
        goal_issues.push((Condition::BoundedLength, format!("final cable length {} exceeds {}", sol.final_cable.length(), s.ell)));
    }
    if !goal_issues.is_empty() || sol.pi_a.is_empty() || sol.pi_b.is_empty() {
        return ExecutionReport {
            samples: 0,
            max_cable: sol.final_cable.length().as_f64(),
            violations: goal_issues
                .into_iter()
                .map(|(condition, detail)| ExecViolation { condition, sample: 0, time: 0.0, detail })
                .collect(),
        };
    }
    match make_execution(sol, mv) {
        Ok((a, b)) => verify_execution(&a, &b, s, tight, n),
        Err(e) => ExecutionReport {
            samples: 0,
            max_cable: 0.0,
            violations: vec![ExecViolation { condition: Condition::Continuity, sample: 0, time: 0.0, detail: e.to_string() }],
        },
    }
}

/// Rows `(t, x_a, y_a, x_b, y_b)` at `n + 1` uniform times.
pub fn sample_rows<T: Scalar>(tr_a: &Trajectory<T>, tr_b: &Trajectory<T>, n: usize) -> Vec<[f64; 5]> {
    let n = n.max(1);
    let horizon = tr_a.horizon().max(tr_b.horizon());
    (0..=n)
        .map(|i| {
            let t = horizon * T::lit(i as f64 / n as f64);
            let (a, b) = (tr_a.position_at(t), tr_b.position_at(t));
            [t.as_f64(), a.x.as_f64(), a.y.as_f64(), b.x.as_f64(), b.y.as_f64()]
        })
        .collect()
}
