//! Sleeve extraction and the funnel algorithm.

use crate::geom::{orientation, Orientation, Point};
use crate::scalar::Scalar;

use super::triangulation::Triangulation;
use super::CableError;

#[derive(Clone, Copy, Debug)]
enum Loc {
    Vertex { v: usize, tri: usize },
    Face { tri: usize },
}

/// Reduced walk through the dual graph.
#[derive(Default)]
struct Walk {
    seq: Vec<usize>,
}

impl Walk {
    fn push(&mut self, t: usize) {
        let n = self.seq.len();
        if n >= 1 && self.seq[n - 1] == t {
            return;
        }
        if n >= 2 && self.seq[n - 2] == t {
            self.seq.pop();
            return;
        }
        self.seq.push(t);
    }
}

/// Traces `pts` through the triangulation and returns the reduced sleeve.
///
/// Points must already be snapped to triangulation vertices where they
/// coincide with one.
pub(crate) fn trace<T: Scalar>(tri: &Triangulation<T>, pts: &[Point<T>]) -> Result<Vec<usize>, CableError> {
    let start = locate(tri, pts[0]).ok_or(CableError::InputNotInFreeSpace)?;
    let mut walk = Walk::default();
    let mut loc = start;
    match loc {
        Loc::Face { tri: t } => walk.push(t),
        Loc::Vertex { .. } => {}
    }
    let limit = 8 * tri.triangles().len() + 64;
    for w in pts.windows(2) {
        loc = step(tri, loc, w[0], w[1], &mut walk, limit)?;
    }
    if walk.seq.is_empty() {
        // Single point, or a path that never left its starting vertex.
        match loc {
            Loc::Vertex { tri: t, .. } | Loc::Face { tri: t } => walk.push(t),
        }
    }
    let mut seq = walk.seq;
    let p0 = pts[0];
    let q = *pts.last().unwrap();
    while seq.len() >= 2 && tri.contains(seq[1], p0) {
        seq.remove(0);
    }
    while seq.len() >= 2 && tri.contains(seq[seq.len() - 2], q) {
        seq.pop();
    }
    Ok(seq)
}

fn locate<T: Scalar>(tri: &Triangulation<T>, p: Point<T>) -> Option<Loc> {
    if let Some(v) = tri.vertex_at(p) {
        let fan = tri.fan(v);
        return fan.first().map(|&t| Loc::Vertex { v, tri: t });
    }
    (0..tri.triangles().len())
        .find(|&t| tri.contains(t, p))
        .map(|t| Loc::Face { tri: t })
}

fn settle<T: Scalar>(tri: &Triangulation<T>, t: usize, q: Point<T>) -> Loc {
    for &v in &tri.triangle(t) {
        if tri.point(v) == q {
            return Loc::Vertex { v, tri: t };
        }
    }
    Loc::Face { tri: t }
}

fn step<T: Scalar>(
    tri: &Triangulation<T>,
    mut loc: Loc,
    p: Point<T>,
    q: Point<T>,
    walk: &mut Walk,
    limit: usize,
) -> Result<Loc, CableError> {
    let d = q - p;
    for _ in 0..limit {
        match loc {
            Loc::Vertex { v, tri: cur } => {
                let pv = tri.point(v);
                if pv == q {
                    return Ok(loc);
                }
                let (target, along) = fan_direction(tri, v, cur, q)?;
                rotate(tri, v, cur, target, walk);
                if let Some(w) = along {
                    let pw = tri.point(w);
                    if pw == q || (q - pv).dot(pw - q) > T::zero() {
                        // q lies on the edge (v, w), at w or before it.
                        return Ok(settle(tri, target, q));
                    }
                    loc = Loc::Vertex { v: w, tri: target };
                    continue;
                }
                if tri.contains(target, q) {
                    return Ok(settle(tri, target, q));
                }
                let [a, b, c] = tri.triangle(target);
                let k = [a, b, c].iter().position(|&x| x == v).unwrap();
                let edge = (k + 1) % 3;
                let next = tri.neighbor(target, edge).ok_or(CableError::InputNotInFreeSpace)?;
                walk.push(next);
                loc = Loc::Face { tri: next };
            }
            Loc::Face { tri: cur } => {
                if tri.contains(cur, q) {
                    return Ok(settle(tri, cur, q));
                }
                let corners = tri.triangle(cur);
                // Passing exactly through a corner of the triangle.
                let mut through: Option<(usize, T)> = None;
                for &c in &corners {
                    let pc = tri.point(c);
                    if pc == p || orientation(p, q, pc) != Orientation::Collinear {
                        continue;
                    }
                    let s = (pc - p).dot(d);
                    if s > T::zero() && through.is_none_or(|(_, best)| s < best) {
                        through = Some((c, s));
                    }
                }
                if let Some((c, _)) = through {
                    loc = Loc::Vertex { v: c, tri: cur };
                    continue;
                }
                let mut exit: Option<(usize, T)> = None;
                for k in 0..3 {
                    let x = tri.point(corners[k]);
                    let y = tri.point(corners[(k + 1) % 3]);
                    let e = y - x;
                    let denom = e.cross(d);
                    if denom >= T::zero() {
                        continue;
                    }
                    let t = -e.cross(p - x) / denom;
                    if exit.is_none_or(|(_, best)| t < best) {
                        exit = Some((k, t));
                    }
                }
                let (k, _) = exit.ok_or(CableError::TraceFailed)?;
                let next = tri.neighbor(cur, k).ok_or(CableError::InputNotInFreeSpace)?;
                walk.push(next);
                loc = Loc::Face { tri: next };
            }
        }
    }
    Err(CableError::TraceFailed)
}

/// Fan triangle at `v` containing the direction towards `q`, and the far
/// vertex of the fan edge the direction runs along, if any.
fn fan_direction<T: Scalar>(
    tri: &Triangulation<T>,
    v: usize,
    cur: usize,
    q: Point<T>,
) -> Result<(usize, Option<usize>), CableError> {
    let fan = tri.fan(v);
    let pv = tri.point(v);
    let pos = fan.iter().position(|&t| t == cur).unwrap_or(0);
    let mut best: Option<(usize, usize, Option<usize>)> = None;
    for (i, &t) in fan.iter().enumerate() {
        let (a, b) = local_edge(tri, t, v);
        let (pa, pb) = (tri.point(a), tri.point(b));
        let oa = orientation(pv, pa, q);
        let ob = orientation(pv, pb, q);
        let hit = if oa == Orientation::Collinear && (pa - pv).dot(q - pv) > T::zero() {
            Some(Some(a))
        } else if ob == Orientation::Collinear && (pb - pv).dot(q - pv) > T::zero() {
            Some(Some(b))
        } else if oa == Orientation::CounterClockwise && ob == Orientation::Clockwise {
            Some(None)
        } else {
            None
        };
        if let Some(along) = hit {
            let dist = fan_distance(tri, v, pos, i);
            if best.is_none_or(|(bd, _, _)| dist < bd) {
                best = Some((dist, t, along));
            }
        }
    }
    best.map(|(_, t, along)| (t, along)).ok_or(CableError::InputNotInFreeSpace)
}

fn fan_distance<T: Scalar>(tri: &Triangulation<T>, v: usize, from: usize, to: usize) -> usize {
    let n = tri.fan(v).len();
    let direct = from.abs_diff(to);
    if tri.fan_is_closed(v) {
        direct.min(n - direct)
    } else {
        direct
    }
}

/// Pushes the fan triangles between `from` and `to` (inclusive of `to`).
fn rotate<T: Scalar>(tri: &Triangulation<T>, v: usize, from: usize, to: usize, walk: &mut Walk) {
    if walk.seq.is_empty() {
        walk.push(to);
        return;
    }
    let fan = tri.fan(v);
    let n = fan.len();
    let i = fan.iter().position(|&t| t == from).unwrap_or(0);
    let j = fan.iter().position(|&t| t == to).unwrap_or(0);
    if tri.fan_is_closed(v) {
        let fwd = (j + n - i) % n;
        if fwd <= n - fwd {
            for s in 1..=fwd {
                walk.push(fan[(i + s) % n]);
            }
        } else {
            for s in 1..=(n - fwd) {
                walk.push(fan[(i + n - s) % n]);
            }
        }
    } else if i <= j {
        for &t in &fan[i..=j] {
            walk.push(t);
        }
    } else {
        for k in (j..=i).rev() {
            walk.push(fan[k]);
        }
    }
}

/// The two other vertices of `t`, in counter-clockwise order after `v`.
fn local_edge<T: Scalar>(tri: &Triangulation<T>, t: usize, v: usize) -> (usize, usize) {
    let c = tri.triangle(t);
    let k = c.iter().position(|&x| x == v).unwrap();
    (c[(k + 1) % 3], c[(k + 2) % 3])
}

/// Shortest path from `start` to `end` through the sleeve `seq`.
pub(crate) fn funnel<T: Scalar>(
    tri: &Triangulation<T>,
    seq: &[usize],
    start: Point<T>,
    end: Point<T>,
) -> Result<Vec<Point<T>>, CableError> {
    let mut portals: Vec<(Point<T>, Point<T>)> = Vec::with_capacity(seq.len() + 1);
    portals.push((start, start));
    for w in seq.windows(2) {
        let (a, b) = tri.shared_edge(w[0], w[1]).ok_or(CableError::TraceFailed)?;
        portals.push((tri.point(b), tri.point(a)));
    }
    portals.push((end, end));

    let area = |a: Point<T>, b: Point<T>, c: Point<T>| (b - a).cross(c - a);
    let mut path = vec![start];
    let mut apex = start;
    let (mut left, mut right) = (start, start);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (pl, pr) = portals[i];
        if area(apex, right, pr) >= T::zero() {
            if apex == right || area(apex, left, pr) < T::zero() {
                right = pr;
                right_i = i;
            } else {
                path.push(left);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        if area(apex, left, pl) <= T::zero() {
            if apex == left || area(apex, right, pl) > T::zero() {
                left = pl;
                left_i = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    path.push(end);
    Ok(path)
}
