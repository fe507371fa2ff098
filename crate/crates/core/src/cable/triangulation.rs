//! Constrained triangulation of a bounding box minus the obstacles.
//!
//! Vertices are the four box corners and every obstacle vertex; no Steiner
//! points are added. Edges are chosen greedily by length among segments that
//! stay in free space and pass through no other vertex, with obstacle and box
//! edges forced in first. The result is a maximal planar straight-line graph,
//! so every bounded face in free space is a triangle.
//!
//! Because every vertex lies on an obstacle or the box boundary, the fan of
//! triangles around a vertex never closes, and the dual graph has exactly one
//! independent cycle per obstacle. Reduced walks in the dual graph therefore
//! identify homotopy classes of paths.

use std::collections::{HashMap, HashSet};

use crate::geom::{
    cross3, orientation, point_in_polygon, segment_in_free_space, segments_intersect,
    IntersectMode, Orientation, Point, PointKey, Polygon, Region,
};
use crate::scalar::{cmp_scalar, Scalar};

#[derive(Clone, Debug)]
pub struct Triangulation<T> {
    points: Vec<Point<T>>,
    triangles: Vec<[usize; 3]>,
    /// `neighbors[t][k]` is the triangle across edge `(tri[k], tri[k+1])`.
    neighbors: Vec<[Option<usize>; 3]>,
    /// Incident triangles of each vertex in counter-clockwise order.
    fans: Vec<Vec<usize>>,
    fan_closed: Vec<bool>,
    /// Vertex keys in sorted order.
    index: Vec<(PointKey, usize)>,
    bounds: (Point<T>, Point<T>),
}

impl<T: Scalar> Triangulation<T> {
    /// Triangulates the box `bounds` minus `obstacles`.
    ///
    /// The obstacles must be pairwise disjoint and lie strictly inside the box.
    pub fn new(obstacles: &[Polygon<T>], bounds: (Point<T>, Point<T>)) -> Self {
        let (lo, hi) = bounds;
        let mut points = vec![
            Point::new(lo.x, lo.y),
            Point::new(hi.x, lo.y),
            Point::new(hi.x, hi.y),
            Point::new(lo.x, hi.y),
        ];
        let mut forced: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let mut obstacle_edges = HashSet::new();
        for poly in obstacles {
            let base = points.len();
            let n = poly.len();
            points.extend_from_slice(poly.vertices());
            for i in 0..n {
                let e = (base + i, base + (i + 1) % n);
                forced.push(e);
                obstacle_edges.insert(ordered(e.0, e.1));
            }
        }

        let n = points.len();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        let forced_set: HashSet<_> = forced.iter().map(|&(a, b)| ordered(a, b)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if forced_set.contains(&(i, j)) {
                    continue;
                }
                let (a, b) = (points[i], points[j]);
                let blocked_by_vertex = (0..n).any(|k| {
                    k != i && k != j && crate::geom::on_segment(a, b, points[k])
                });
                if blocked_by_vertex || !segment_in_free_space(a, b, obstacles) {
                    continue;
                }
                candidates.push((i, j));
            }
        }
        candidates.sort_by(|&(a, b), &(c, d)| {
            cmp_scalar(points[a].dist(points[b]), points[c].dist(points[d]))
                .then((a, b).cmp(&(c, d)))
        });

        let mut edges: Vec<(usize, usize)> = forced.iter().map(|&(a, b)| ordered(a, b)).collect();
        for (i, j) in candidates {
            let s = (points[i], points[j]);
            let crosses = edges.iter().any(|&(a, b)| {
                a != i
                    && a != j
                    && b != i
                    && b != j
                    && segments_intersect(s, (points[a], points[b]), IntersectMode::Proper)
            });
            if !crosses {
                edges.push((i, j));
            }
        }

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let edge_set: HashSet<(usize, usize)> = edges.iter().copied().collect();
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            let c = points[v];
            list.sort_by(|&a, &b| {
                let da = points[a] - c;
                let db = points[b] - c;
                cmp_scalar(da.y.atan2(da.x), db.y.atan2(db.x))
            });
        }

        let mut seen = HashSet::new();
        let mut triangles = Vec::new();
        for v in 0..n {
            let list = &adj[v];
            let m = list.len();
            if m < 2 {
                continue;
            }
            for k in 0..m {
                let a = list[k];
                let b = list[(k + 1) % m];
                if a == b || !edge_set.contains(&ordered(a, b)) {
                    continue;
                }
                if orientation(points[v], points[a], points[b]) != Orientation::CounterClockwise {
                    continue;
                }
                let tri = canonical([v, a, b]);
                if !seen.insert(tri) {
                    continue;
                }
                let three = T::lit(3.0);
                let centroid = Point::new(
                    (points[v].x + points[a].x + points[b].x) / three,
                    (points[v].y + points[a].y + points[b].y) / three,
                );
                if obstacles.iter().any(|o| point_in_polygon(centroid, o) == Region::Interior) {
                    continue;
                }
                triangles.push(tri);
            }
        }
        triangles.sort();

        let mut edge_owner: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                edge_owner.entry(ordered(tri[k], tri[(k + 1) % 3])).or_default().push((t, k));
            }
        }
        let mut neighbors = vec![[None; 3]; triangles.len()];
        for (key, owners) in &edge_owner {
            if owners.len() == 2 && !obstacle_edges.contains(key) {
                let (t0, k0) = owners[0];
                let (t1, k1) = owners[1];
                neighbors[t0][k0] = Some(t1);
                neighbors[t1][k1] = Some(t0);
            }
        }

        let mut fans = vec![Vec::new(); n];
        let mut fan_closed = vec![false; n];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                incident[v].push(t);
            }
        }
        for v in 0..n {
            if incident[v].is_empty() {
                continue;
            }
            // Each incident triangle spans the sector from its `a` edge to its
            // `b` edge; the next triangle counter-clockwise starts at `b`.
            let local = |t: usize| {
                let tri = triangles[t];
                let k = tri.iter().position(|&x| x == v).unwrap();
                (tri[(k + 1) % 3], tri[(k + 2) % 3])
            };
            let by_start: HashMap<usize, usize> =
                incident[v].iter().map(|&t| (local(t).0, t)).collect();
            let ends: HashSet<usize> = incident[v].iter().map(|&t| local(t).1).collect();
            let start = incident[v]
                .iter()
                .copied()
                .filter(|&t| !ends.contains(&local(t).0))
                .min();
            let closed = start.is_none();
            let mut cur = start.unwrap_or_else(|| *incident[v].iter().min().unwrap());
            let mut order = vec![cur];
            while order.len() < incident[v].len() {
                match by_start.get(&local(cur).1) {
                    Some(&next) if !order.contains(&next) => {
                        order.push(next);
                        cur = next;
                    }
                    _ => break,
                }
            }
            fans[v] = order;
            fan_closed[v] = closed;
        }

        let mut index: Vec<(PointKey, usize)> = points.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        index.sort_unstable();
        Self { points, triangles, neighbors, fans, fan_closed, index, bounds }
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point<T> {
        self.points[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn neighbor(&self, t: usize, k: usize) -> Option<usize> {
        self.neighbors[t][k]
    }

    pub fn fan(&self, v: usize) -> &[usize] {
        &self.fans[v]
    }

    pub fn fan_is_closed(&self, v: usize) -> bool {
        self.fan_closed[v]
    }

    pub fn bounds(&self) -> (Point<T>, Point<T>) {
        self.bounds
    }

    /// Exact vertex lookup.
    pub fn vertex_at(&self, p: Point<T>) -> Option<usize> {
        let k = p.key();
        self.index.binary_search_by(|(q, _)| q.cmp(&k)).ok().map(|i| self.index[i].1)
    }

    /// Vertex within the geometric tolerance of `p`, if any.
    pub fn snap_vertex(&self, p: Point<T>) -> Option<usize> {
        self.vertex_at(p)
            .or_else(|| self.points.iter().position(|q| q.approx_eq(p)))
    }

    pub fn corners(&self, t: usize) -> [Point<T>; 3] {
        let [a, b, c] = self.triangles[t];
        [self.points[a], self.points[b], self.points[c]]
    }

    /// Whether `p` lies in the closed triangle `t`.
    pub fn contains(&self, t: usize, p: Point<T>) -> bool {
        let [a, b, c] = self.corners(t);
        orientation(a, b, p) != Orientation::Clockwise
            && orientation(b, c, p) != Orientation::Clockwise
            && orientation(c, a, p) != Orientation::Clockwise
    }

    /// Index of the edge `(u, v)` within triangle `t`, in either direction.
    pub fn edge_index(&self, t: usize, u: usize, v: usize) -> Option<usize> {
        let tri = self.triangles[t];
        (0..3).find(|&k| {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            (a == u && b == v) || (a == v && b == u)
        })
    }

    /// Directed edge of `t` shared with its neighbour `other`.
    pub fn shared_edge(&self, t: usize, other: usize) -> Option<(usize, usize)> {
        let tri = self.triangles[t];
        (0..3)
            .find(|&k| self.neighbors[t][k] == Some(other))
            .map(|k| (tri[k], tri[(k + 1) % 3]))
    }

    pub fn area(&self, t: usize) -> T {
        let [a, b, c] = self.corners(t);
        cross3(a, b, c) / T::lit(2.0)
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn canonical(tri: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| tri[k]).unwrap();
    [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
}
