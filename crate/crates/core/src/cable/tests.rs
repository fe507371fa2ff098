use super::*;
use crate::oracle::rubber_band_tighten;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn square() -> Vec<Polygon<f64>> {
    vec![Polygon::new(vec![p(1., 1.), p(2., 1.), p(2., 2.), p(1., 2.)]).unwrap()]
}

fn three_obstacles() -> Vec<Polygon<f64>> {
    vec![
        Polygon::new(vec![p(1., 1.), p(2., 1.), p(2., 2.), p(1., 2.)]).unwrap(),
        Polygon::new(vec![p(4., 0.5), p(6., 1.), p(5., 3.)]).unwrap(),
        Polygon::new(vec![p(1., 4.), p(3., 4.), p(3., 6.), p(2., 4.8), p(1., 6.)]).unwrap(),
    ]
}

fn tightener(obs: &[Polygon<f64>]) -> Tightener<f64> {
    Tightener::around(obs, [p(-1., -1.), p(8., 8.)], 4.0)
}

#[test]
fn tighten_reference_examples() {
    let t = tightener(&[]);
    let c = t.tighten(&[p(0., 0.), p(0.5, 1.), p(3., 0.)]).unwrap();
    assert_eq!(c.verts(), &[p(0., 0.), p(3., 0.)]);
    let t = tightener(&square());
    let c = t.tighten(&[p(0., 0.), p(0., 3.), p(3., 3.)]).unwrap();
    assert_eq!(c.verts(), &[p(0., 0.), p(1., 2.), p(3., 3.)]);
    let again = t.tighten(c.verts()).unwrap();
    assert_eq!(again, c);
}

#[test]
fn move_reference_examples() {
    let t = tightener(&[]);
    let c = t.tighten(&[p(0., 0.), p(3., 0.)]).unwrap();
    let m = t.cable_after_move(&c, p(0., 0.), p(3., 1.)).unwrap();
    assert_eq!(m.verts(), &[p(0., 0.), p(3., 1.)]);

    let t = tightener(&square());
    let c = t.tighten(&[p(0., 0.), p(3., 0.)]).unwrap();
    let m = t.cable_after_move(&c, p(1., 2.), p(2., 1.)).unwrap();
    assert_eq!(m.verts(), &[p(1., 2.), p(1., 1.), p(2., 1.)]);
    let stay = t.cable_after_move(&c, c.first(), c.last()).unwrap();
    assert_eq!(stay, c);
    assert_eq!(t.cable_after_move(&c, p(3., 3.), p(3., 0.)), Err(CableError::NotVisible));
}

#[test]
fn wraps_and_unwraps() {
    let t = tightener(&square());
    let pts = [p(0., 0.), p(3., 0.), p(3., 3.), p(0., 3.), p(0., 0.5), p(0.5, 0.)];
    let c = t.tighten(&pts).unwrap();
    assert_eq!(c.verts(), &[p(0., 0.), p(2., 1.), p(2., 2.), p(1., 2.), p(0.5, 0.)]);
    // Going out and back along the same route collapses to a straight cable.
    let back = t.tighten(&[p(0., 0.), p(0., 3.), p(3., 3.), p(0., 3.), p(0., 0.), p(0.5, 0.)]).unwrap();
    assert_eq!(back.verts(), &[p(0., 0.), p(0.5, 0.)]);
}

#[test]
fn rejects_paths_through_obstacles() {
    let t = tightener(&square());
    assert_eq!(t.tighten(&[p(0., 0.), p(3., 3.)]), Err(CableError::InputNotInFreeSpace));
    assert_eq!(t.tighten(&[p(1.5, 1.5)]), Err(CableError::InputNotInFreeSpace));
}

#[test]
fn robots_on_obstacle_vertices() {
    let t = tightener(&square());
    let c = t.tighten(&[p(1., 1.), p(0., 0.), p(0., 3.), p(2., 2.)]).unwrap();
    assert_eq!(c.verts(), &[p(1., 1.), p(1., 2.), p(2., 2.)]);
    let c = t.tighten(&[p(1., 1.), p(2., 1.), p(2., 2.)]).unwrap();
    assert_eq!(c.verts(), &[p(1., 1.), p(2., 1.), p(2., 2.)]);
    let c = t.tighten(&[p(1., 1.), p(1., 2.), p(2., 2.)]).unwrap();
    assert_eq!(c.verts(), &[p(1., 1.), p(1., 2.), p(2., 2.)]);
    let c = t.tighten(&[p(1., 1.), p(1., 2.)]).unwrap();
    assert_eq!(c.verts(), &[p(1., 1.), p(1., 2.)]);
}

#[test]
fn cat_curve_examples() {
    let ta = Polyline::new(vec![p(0., 0.), p(0., 2.)]);
    let tb = Polyline::new(vec![p(3., 0.), p(3., 2.)]);
    let c0 = Polyline::new(vec![p(0., 0.), p(3., 0.)]);
    assert_eq!(cat_curve(&ta, &tb, &c0, 0.0).unwrap(), c0);
    assert_eq!(
        cat_curve(&ta, &tb, &c0, 1.0).unwrap().points(),
        &[p(0., 2.), p(0., 0.), p(3., 0.), p(3., 2.)]
    );
    assert_eq!(
        cat_curve(&ta, &tb, &c0, 0.5).unwrap().points(),
        &[p(0., 1.), p(0., 0.), p(3., 0.), p(3., 1.)]
    );
    assert_eq!(cat_curve(&tb, &ta, &c0, 0.5), Err(CableError::EndpointMismatch));
}

#[test]
fn consumption_examples() {
    let t = tightener(&[]);
    let ta = Polyline::new(vec![p(0., 0.), p(0., 1.)]);
    let tb = Polyline::new(vec![p(1., 0.), p(1., 1.)]);
    let c0 = Polyline::new(vec![p(0., 0.), p(1., 0.)]);
    for (_, l) in t.sampled_consumption(&ta, &tb, &c0, 20).unwrap() {
        assert!((l - 1.0).abs() < 1e-12);
    }
    let ta = Polyline::new(vec![p(0., 0.)]);
    let tb = Polyline::new(vec![p(1., 0.), p(5., 0.)]);
    let samples = t.sampled_consumption(&ta, &tb, &c0, 20).unwrap();
    for &(s, l) in &samples {
        assert!((l - (1.0 + 4.0 * s)).abs() < 1e-12);
    }
    assert!((t.cstar_upper(&ta, &tb, &c0, 20).unwrap() - 5.0).abs() < 1e-12);
}

fn random_free_polyline(rng: &mut ChaCha8Rng, obs: &[Polygon<f64>], n: usize) -> Vec<Point<f64>> {
    let sample = |rng: &mut ChaCha8Rng| loop {
        let q = p(rng.gen_range(-0.5..7.5), rng.gen_range(-0.5..7.5));
        if crate::geom::point_in_free_space(q, obs)
            && obs.iter().all(|o| crate::geom::point_in_polygon(q, o) == crate::geom::Region::Exterior)
        {
            return q;
        }
    };
    let mut pts = vec![sample(rng)];
    while pts.len() < n {
        let q = sample(rng);
        if crate::geom::segment_in_free_space(*pts.last().unwrap(), q, obs) {
            pts.push(q);
        }
    }
    pts
}

#[test]
fn funnel_matches_rubber_band() {
    for (seed, obs) in [(1u64, square()), (2, three_obstacles()), (3, vec![])] {
        let t = tightener(&obs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let n = rng.gen_range(2..9);
            let pts = random_free_polyline(&mut rng, &obs, n);
            let funnel = t.tighten(&pts).unwrap();
            let band = rubber_band_tighten(&pts, &obs);
            assert_eq!(funnel.verts(), &band[..], "input {pts:?}");
            assert_eq!(t.tighten(funnel.verts()).unwrap(), funnel);
            assert!(funnel.length() <= polyline_length(&pts) + 1e-9);
        }
    }
}

#[test]
fn works_in_single_precision() {
    let obs: Vec<Polygon<f32>> = vec![Polygon::new(vec![
        Point::new(1., 1.),
        Point::new(2., 1.),
        Point::new(2., 2.),
        Point::new(1., 2.),
    ])
    .unwrap()];
    let t = Tightener::around(&obs, [Point::new(0f32, 0.), Point::new(3., 3.)], 2.0);
    let c = t.tighten(&[Point::new(0., 0.), Point::new(0., 3.), Point::new(3., 3.)]).unwrap();
    assert_eq!(c.verts(), &[Point::new(0f32, 0.), Point::new(1., 2.), Point::new(3., 3.)]);
}
