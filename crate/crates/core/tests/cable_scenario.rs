mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tethered_core::geom::{point_in_polygon, polyline_length, segment_in_free_space, Polyline, Region};
use tethered_core::scenario::{load_scenario, save_scenario, ReasonCode};
use tethered_core::{Scenario, Tightener};

const LENGTH_TOL: f64 = 1e-9;
const ROUND_TRIP_TOL: f64 = 1e-12;

/// Random scenario with a tightener whose box covers the sampling square.
fn setup(seed: u64) -> (ChaCha8Rng, Scenario, Tightener) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_scenario(&mut rng);
    let t = Tightener::new(&s.obstacles, (p(-1.0, -1.0), p(7.0, 7.0)));
    (rng, s, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tightening_is_idempotent_and_shortens(seed in any::<u64>(), n in 2usize..8) {
        let (mut rng, s, t) = setup(seed);
        let pts = random_free_polyline(&mut rng, &s.obstacles, n, 0.0, 6.0);
        let c = t.tighten(&pts).unwrap();
        prop_assert_eq!(c.first(), pts[0]);
        prop_assert_eq!(c.last(), *pts.last().unwrap());
        prop_assert!(c.length() <= polyline_length(&pts) + LENGTH_TOL);
        for w in c.verts().windows(2) {
            prop_assert!(segment_in_free_space(w[0], w[1], &s.obstacles));
        }
        let again = t.tighten(c.verts()).unwrap();
        prop_assert!((again.length() - c.length()).abs() < LENGTH_TOL);
        prop_assert_eq!(again.verts().len(), c.verts().len());
        for (a, b) in again.verts().iter().zip(c.verts()) {
            prop_assert!(a.dist(*b) < LENGTH_TOL);
        }
    }

    #[test]
    fn cable_after_move_tightens_the_extended_curve(seed in any::<u64>(), n in 2usize..6) {
        let (mut rng, s, t) = setup(seed);
        let pts = random_free_polyline(&mut rng, &s.obstacles, n, 0.0, 6.0);
        let c = t.tighten(&pts).unwrap();
        let ends = random_free_polyline(&mut rng, &s.obstacles, 1, 0.0, 6.0);
        let (va, vb) = if rng.gen_bool(0.5) { (ends[0], c.last()) } else { (c.first(), ends[0]) };
        match t.cable_after_move(&c, va, vb) {
            Ok(moved) => {
                let mut curve = vec![va];
                curve.extend_from_slice(c.verts());
                curve.push(vb);
                let direct = t.tighten(&curve).unwrap();
                prop_assert!((moved.length() - direct.length()).abs() < LENGTH_TOL);
                prop_assert_eq!(moved.first(), va);
                prop_assert_eq!(moved.last(), vb);
                prop_assert!(moved.length() <= c.length() + va.dist(c.first()) + vb.dist(c.last()) + LENGTH_TOL);
            }
            Err(_) => {
                prop_assert!(
                    !segment_in_free_space(va, c.first(), &s.obstacles)
                        || !segment_in_free_space(c.last(), vb, &s.obstacles)
                );
            }
        }
    }

    #[test]
    fn staying_put_keeps_the_cable(seed in any::<u64>(), n in 2usize..6) {
        let (mut rng, s, t) = setup(seed);
        let pts = random_free_polyline(&mut rng, &s.obstacles, n, 0.0, 6.0);
        let c = t.tighten(&pts).unwrap();
        let same = t.cable_after_move(&c, c.first(), c.last()).unwrap();
        prop_assert_eq!(same.verts(), c.verts());
    }

    #[test]
    fn scenario_round_trips_through_json(seed in any::<u64>()) {
        let (_, s, _) = setup(seed);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scenario.json");
        save_scenario(&s, &path).unwrap();
        let back: Scenario = load_scenario(&path).unwrap();
        prop_assert_eq!(back.obstacles.len(), s.obstacles.len());
        for (a, b) in back.obstacles.iter().zip(&s.obstacles) {
            prop_assert_eq!(a.len(), b.len());
            for (u, v) in a.vertices().iter().zip(b.vertices()) {
                prop_assert!(u.dist(*v) <= ROUND_TRIP_TOL);
            }
        }
        for (u, v) in [(back.ra, s.ra), (back.rb, s.rb), (back.da, s.da), (back.db, s.db)] {
            prop_assert!(u.dist(v) <= ROUND_TRIP_TOL);
        }
        prop_assert!((back.ell - s.ell).abs() <= ROUND_TRIP_TOL);
        for (u, v) in back.cable.points().iter().zip(s.cable.points()) {
            prop_assert!(u.dist(*v) <= ROUND_TRIP_TOL);
        }
    }

    #[test]
    fn terminal_placement_matches_validation(seed in any::<u64>(), x in 0.0..6.0f64, y in 0.0..6.0f64) {
        let (_, s, _) = setup(seed);
        let q = p(x, y);
        let mut moved = s.clone();
        moved.da = q;
        let inside = s.obstacles.iter().any(|o| point_in_polygon(q, o) == Region::Interior);
        let flagged = moved.validate().iter().any(|v| v.code == ReasonCode::PointInObstacle);
        prop_assert_eq!(inside, flagged);
    }

    #[test]
    fn cable_length_matches_validation(seed in any::<u64>(), scale in 0.5..1.5f64) {
        let (_, s, _) = setup(seed);
        let ell = s.cable.length() * scale;
        let v = s.with_ell(ell).validate();
        let too_long = v.iter().any(|v| v.code == ReasonCode::CableTooLong);
        prop_assert_eq!(too_long, s.cable.length() > ell + 1e-9);
        prop_assert_eq!(v.is_empty(), !too_long);
    }
}

#[test]
fn each_broken_invariant_is_reported() {
    let s = square();
    assert!(s.validate().is_empty());
    let codes = |s: &Scenario| s.validate().into_iter().map(|v| v.code).collect::<Vec<_>>();

    let mut t = s.clone();
    t.rb = p(1.5, 1.5);
    let c = codes(&t);
    assert!(c.contains(&ReasonCode::PointInObstacle));
    assert!(c.contains(&ReasonCode::CableEndpointMismatch));

    let mut t = s.clone();
    t.cable = Polyline::new(vec![p(0., 0.), p(3., 3.), p(3., 0.)]);
    assert_eq!(codes(&t), vec![ReasonCode::CableCrossesObstacle]);

    let mut t = s.clone();
    t.obstacles.push(s.obstacles[0].clone());
    assert_eq!(codes(&t), vec![ReasonCode::ObstacleOverlap]);

    assert_eq!(codes(&s.with_ell(2.0)), vec![ReasonCode::CableTooLong]);
}

#[test]
fn fixtures_load_and_validate() {
    for name in ["demo5.json", "square.json", "parallel.json", "recession.json", "separation.json"] {
        assert!(fixture(name).validate().is_empty(), "{name}");
    }
    let err = load_scenario::<f64>(fixture_path("cable_too_long.json")).unwrap_err();
    assert!(err.violations().iter().any(|v| v.code == ReasonCode::CableTooLong));
}
