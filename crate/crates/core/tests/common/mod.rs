#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tethered_core::geom::{point_in_polygon, segment_in_free_space, Point, Polygon, Polyline, Region};
use tethered_core::planner::{Heuristic, PlanOptions, Planner, Solution};
use tethered_core::scenario::Scenario;

pub fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

pub fn square() -> Scenario<f64> {
    Scenario::new(
        vec![Polygon::new(vec![p(1., 1.), p(2., 1.), p(2., 2.), p(1., 2.)]).unwrap()],
        p(0., 0.),
        p(3., 0.),
        p(0., 3.),
        p(3., 3.),
        8.0,
        Polyline::new(vec![p(0., 0.), p(3., 0.)]),
    )
    .unwrap()
}

pub fn empty(ra: Point<f64>, rb: Point<f64>, da: Point<f64>, db: Point<f64>, ell: f64) -> Scenario<f64> {
    Scenario::new(vec![], ra, rb, da, db, ell, Polyline::new(vec![ra, rb])).unwrap()
}

/// Parallel translation, collinear recession and goal separation beyond
/// the cable length.
pub fn analytic_fixtures() -> Vec<(&'static str, Scenario<f64>, Option<(f64, f64)>)> {
    vec![
        ("parallel", empty(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.), 2.0), Some((1.0, 1.0))),
        ("recession", empty(p(0., 0.), p(1., 0.), p(0., 0.), p(5., 0.), 5.0), Some((0.0, 4.0))),
        ("separation", empty(p(0., 0.), p(1., 0.), p(0., 0.), p(5., 0.), 2.0), None),
    ]
}

fn random_polygon(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Polygon<f64> {
    loop {
        let c = p(rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let gaps_ok = angles
            .windows(2)
            .all(|w| w[1] - w[0] > 0.4)
            && angles[0] + std::f64::consts::TAU - angles[n - 1] > 0.4;
        if !gaps_ok {
            continue;
        }
        let pts: Vec<Point<f64>> = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.5..1.4);
                let v = p(c.x + r * a.cos(), c.y + r * a.sin());
                p((v.x * 100.0).round() / 100.0, (v.y * 100.0).round() / 100.0)
            })
            .collect();
        if let Ok(poly) = Polygon::new(pts) {
            return poly;
        }
    }
}

fn free_point(rng: &mut ChaCha8Rng, obs: &[Polygon<f64>], lo: f64, hi: f64) -> Point<f64> {
    loop {
        let q = p(
            (rng.gen_range(lo..hi) * 100.0f64).round() / 100.0,
            (rng.gen_range(lo..hi) * 100.0f64).round() / 100.0,
        );
        if obs.iter().all(|o| {
            point_in_polygon(q, o) == Region::Exterior && o.edges().all(|(a, b)| {
                tethered_core::geom::point_segment_distance(q, a, b) > 0.05
            })
        }) {
            return q;
        }
    }
}

/// A random instance with at most three obstacles and twelve obstacle
/// vertices. Not necessarily feasible.
pub fn random_scenario(rng: &mut ChaCha8Rng) -> Scenario<f64> {
    let (lo, hi) = (0.0, 6.0);
    loop {
        let k = rng.gen_range(1..=3);
        let mut obs: Vec<Polygon<f64>> = Vec::new();
        let mut verts = 0;
        for _ in 0..k {
            let n = rng.gen_range(3..=5).min(12 - verts);
            if n < 3 {
                break;
            }
            let poly = random_polygon(rng, n, lo + 1.0, hi - 1.0);
            verts += poly.len();
            obs.push(poly);
        }
        let ra = free_point(rng, &obs, lo, hi);
        let rb = free_point(rng, &obs, lo, hi);
        let da = free_point(rng, &obs, lo, hi);
        let db = free_point(rng, &obs, lo, hi);
        let cable = if segment_in_free_space(ra, rb, &obs) {
            vec![ra, rb]
        } else {
            let mid = free_point(rng, &obs, lo, hi);
            vec![ra, mid, rb]
        };
        let cable = Polyline::new(cable);
        let ell = cable.length() * rng.gen_range(1.05..1.6) + rng.gen_range(0.0..3.0);
        if let Ok(s) = Scenario::new(obs, ra, rb, da, db, ell, cable) {
            return s;
        }
    }
}

/// Seeded feasible instances whose optimal raw solution uses at most
/// `max_steps` joint moves.
pub fn random_feasible(seed: u64, count: usize, max_steps: usize) -> Vec<(Scenario<f64>, Solution<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let s = random_scenario(&mut rng);
        let r = Planner::new(&s).plan(Heuristic::Spd, &PlanOptions::default());
        if let Some(raw) = r.raw {
            if raw.pi_a.len() - 1 <= max_steps {
                out.push((s, raw));
            }
        }
    }
    out
}

/// Random polyline with `n` vertices whose segments avoid the obstacles.
pub fn random_free_polyline(rng: &mut ChaCha8Rng, obs: &[Polygon<f64>], n: usize, lo: f64, hi: f64) -> Vec<Point<f64>> {
    let sample = |rng: &mut ChaCha8Rng| loop {
        let q = p(rng.gen_range(lo..hi), rng.gen_range(lo..hi));
        if obs.iter().all(|o| point_in_polygon(q, o) == Region::Exterior) {
            return q;
        }
    };
    let mut pts = vec![sample(rng)];
    while pts.len() < n {
        let q = sample(rng);
        if segment_in_free_space(*pts.last().unwrap(), q, obs) {
            pts.push(q);
        }
    }
    pts
}

/// Path of a file in the workspace `fixtures` directory.
pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> Scenario<f64> {
    tethered_core::scenario::load_scenario(fixture_path(name)).expect("fixture loads")
}
