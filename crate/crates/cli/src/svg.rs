//! SVG rendering of a scenario and, optionally, a solution.

use std::fmt::Write;

use tethered_core::{Point, Scenario};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;

/// Paths and final cable to overlay on the scene.
pub struct Overlay<'a> {
    pub pi_a: &'a [Point],
    pub pi_b: &'a [Point],
    pub final_cable: &'a [Point],
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    pad: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit(pts: &[Point]) -> Self {
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in pts {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        if !min_x.is_finite() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let pad = MARGIN * span;
        let scale = WIDTH / (max_x - min_x + 2.0 * pad).max(1e-9);
        let width = WIDTH;
        let height = (max_y - min_y + 2.0 * pad) * scale;
        Self { min_x, max_y, scale, pad, width, height }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        ((p.x - self.min_x + self.pad) * self.scale, (self.max_y - p.y + self.pad) * self.scale)
    }

    fn coords(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn polyline(out: &mut String, f: &Frame, pts: &[Point], color: &str, width: f64, dashed: bool) {
    if pts.is_empty() {
        return;
    }
    let dash = if dashed { r#" stroke-dasharray="8 4""# } else { "" };
    let _ = writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"{dash}/>"#,
        f.coords(pts)
    );
}

fn dots(out: &mut String, f: &Frame, pts: &[Point], color: &str, r: f64) {
    for &p in pts {
        let (x, y) = f.map(p);
        let _ = writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{color}"/>"#);
    }
}

pub fn render(s: &Scenario, overlay: Option<&Overlay<'_>>) -> String {
    let mut all: Vec<Point> = s.obstacles.iter().flat_map(|o| o.vertices().iter().copied()).collect();
    all.extend([s.ra, s.rb, s.da, s.db]);
    all.extend_from_slice(s.cable.points());
    if let Some(o) = overlay {
        all.extend_from_slice(o.pi_a);
        all.extend_from_slice(o.pi_b);
        all.extend_from_slice(o.final_cable);
    }
    let f = Frame::fit(&all);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = f.width,
        h = f.height
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for o in &s.obstacles {
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="grey" stroke="dimgrey" stroke-width="1"/>"#,
            f.coords(o.vertices())
        );
    }
    polyline(&mut out, &f, s.cable.points(), "green", 3.0, false);
    if let Some(o) = overlay {
        polyline(&mut out, &f, o.final_cable, "darkred", 3.0, false);
        polyline(&mut out, &f, o.pi_a, "red", 2.0, true);
        polyline(&mut out, &f, o.pi_b, "blue", 2.0, true);
        dots(&mut out, &f, o.pi_a, "red", 3.0);
        dots(&mut out, &f, o.pi_b, "blue", 3.0);
    }
    dots(&mut out, &f, &[s.ra, s.da], "red", 6.0);
    dots(&mut out, &f, &[s.rb, s.db], "blue", 6.0);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tethered_core::{Polygon, Polyline};

    #[test]
    fn margin_is_five_percent() {
        let f = Frame::fit(&[Point::new(0.0, 0.0), Point::new(10.0, 10.0)]);
        let (x0, y0) = f.map(Point::new(0.0, 10.0));
        assert!((x0 - WIDTH * 0.5 / 11.0).abs() < 1e-9);
        assert!((y0 - x0).abs() < 1e-9);
        assert!((f.height - WIDTH).abs() < 1e-9);
    }

    #[test]
    fn scene_has_expected_colors() {
        let sq = Polygon::new(vec![
            Point::new(1.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(2.0, 2.0),
            Point::new(1.0, 2.0),
        ])
        .unwrap();
        let (a, b) = (Point::new(0.0, 0.0), Point::new(3.0, 0.0));
        let s = Scenario::new(vec![sq], a, b, Point::new(0.0, 3.0), Point::new(3.0, 3.0), 8.0, Polyline::new(vec![a, b]))
            .unwrap();
        let pa = [a, Point::new(0.0, 3.0)];
        let pb = [b, Point::new(3.0, 3.0)];
        let cable = [Point::new(0.0, 3.0), Point::new(3.0, 3.0)];
        let svg = render(&s, Some(&Overlay { pi_a: &pa, pi_b: &pb, final_cable: &cable }));
        for color in ["grey", "red", "blue", "green", "darkred"] {
            assert!(svg.contains(&format!("\"{color}\"")), "missing {color}");
        }
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
