mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tethered_core::geom::{
    orientation, point_in_polygon, polyline_length, segments_intersect, IntersectMode, Orientation, Point, Polygon,
    Region,
};

/// Winding number of `poly` around `q`, computed from summed turning angles.
fn winding_number(q: Point<f64>, poly: &Polygon<f64>) -> i32 {
    let total: f64 = poly
        .edges()
        .map(|(a, b)| {
            let (u, v) = (a - q, b - q);
            u.cross(v).atan2(u.dot(v))
        })
        .sum();
    (total / std::f64::consts::TAU).round() as i32
}

fn coord() -> impl Strategy<Value = f64> {
    -100.0..100.0f64
}

fn point() -> impl Strategy<Value = Point<f64>> {
    (coord(), coord()).prop_map(|(x, y)| p(x, y))
}

proptest! {
    #[test]
    fn orientation_is_antisymmetric(a in point(), b in point(), c in point()) {
        let o = orientation(a, b, c);
        prop_assume!(o != Orientation::Collinear);
        prop_assert_eq!(orientation(a, c, b).sign(), -o.sign());
    }

    #[test]
    fn segment_intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        for mode in [IntersectMode::Proper, IntersectMode::Touching] {
            let r = segments_intersect((a, b), (c, d), mode);
            prop_assert_eq!(r, segments_intersect((c, d), (a, b), mode));
            prop_assert_eq!(r, segments_intersect((b, a), (d, c), mode));
        }
    }

    #[test]
    fn length_is_invariant_under_rigid_motion(
        pts in prop::collection::vec(point(), 2..12),
        angle in 0.0..std::f64::consts::TAU,
        shift in point(),
    ) {
        let (s, c) = angle.sin_cos();
        let moved: Vec<Point<f64>> = pts
            .iter()
            .map(|q| p(c * q.x - s * q.y + shift.x, s * q.x + c * q.y + shift.y))
            .collect();
        prop_assert!((polyline_length(&pts) - polyline_length(&moved)).abs() < 1e-9);
    }
}

#[test]
fn point_in_polygon_agrees_with_winding_number() {
    let fixtures = [
        square().obstacles[0].clone(),
        Polygon::new(vec![p(0., 0.), p(4., 0.), p(4., 4.), p(2., 1.5), p(0., 4.)]).unwrap(),
        Polygon::new(vec![p(0., 0.), p(6., 0.), p(6., 1.), p(1., 1.), p(1., 5.), p(6., 5.), p(6., 6.), p(0., 6.)])
            .unwrap(),
        Polygon::new(vec![p(0., 0.), p(3., 1.), p(6., 0.), p(5., 3.), p(6., 6.), p(3., 5.), p(0., 6.), p(1., 3.)])
            .unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for poly in &fixtures {
        let (lo, hi) = poly.bbox();
        let mut boundary = 0;
        for _ in 0..1000 {
            let q = p(rng.gen_range(lo.x - 1.0..hi.x + 1.0), rng.gen_range(lo.y - 1.0..hi.y + 1.0));
            let region = point_in_polygon(q, poly);
            if region == Region::Boundary {
                boundary += 1;
                continue;
            }
            let inside = winding_number(q, poly) != 0;
            assert_eq!(region == Region::Interior, inside, "point {q} against {poly:?}");
        }
        assert!(boundary < 5);
    }
}

#[test]
fn random_obstacles_are_valid_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let s = random_scenario(&mut rng);
        assert!(s.obstacles.len() <= 3);
        assert!(s.obstacles.iter().map(|o| o.len()).sum::<usize>() <= 12);
        for o in &s.obstacles {
            assert!(o.area() > 0.0);
        }
        assert!(s.validate().is_empty());
    }
}
