//! Brute-force reference implementations used to validate the planner.
//!
//! Nothing here uses the triangulation, the reduced visibility graph or the
//! A* search; only the predicates in [`crate::geom`] are shared.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use thiserror::Error;

use crate::geom::{
    bbox, drop_straight_through, orientation, point_in_free_space, polyline_length, project_param,
    segment_in_free_space, Orientation, Point, PointKey, Polygon,
};
use crate::scalar::{cmp_scalar, Scalar};
use crate::scenario::Scenario;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("target is unreachable on the grid")]
    Unreachable,
    #[error("point lies outside free space")]
    NotFree,
}

// ---------------------------------------------------------------------------
// Rubber-band tightening
// ---------------------------------------------------------------------------

/// Whether the path `u -> v -> w` is locally shortest at `v`.
///
/// That requires `v` to be a convex obstacle vertex whose obstacle sits
/// inside the turn.
pub fn locally_taut<T: Scalar>(u: Point<T>, v: Point<T>, w: Point<T>, obstacles: &[Polygon<T>]) -> bool {
    let turn = orientation(u, v, w);
    if turn == Orientation::Collinear {
        return false;
    }
    for poly in obstacles {
        let Some(i) = poly.contains_vertex(v) else { continue };
        if !poly.is_convex_vertex(i) {
            return false;
        }
        let (a, b) = poly.neighbors(i);
        let inward = (a - v).normalized() + (b - v).normalized();
        let probe = v + inward;
        // Strictly between the rays v->u and v->w, on the inner side of the turn.
        let s1 = orientation(v, u, probe);
        let s2 = orientation(v, probe, w);
        let inner = if turn == Orientation::CounterClockwise {
            s1 == Orientation::Clockwise && s2 == Orientation::Clockwise
        } else {
            s1 == Orientation::CounterClockwise && s2 == Orientation::CounterClockwise
        };
        return inner;
    }
    false
}

fn in_closed_triangle<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>, x: Point<T>) -> bool {
    let o = orientation(a, b, c);
    let want = if o == Orientation::CounterClockwise {
        Orientation::Clockwise
    } else {
        Orientation::CounterClockwise
    };
    orientation(a, b, x) != want && orientation(b, c, x) != want && orientation(c, a, x) != want
}

/// Convex chain from `u` to `w` bulging towards `side` over `pts`.
fn hull_chain<T: Scalar>(u: Point<T>, w: Point<T>, side: Orientation, pts: &[Point<T>]) -> Vec<Point<T>> {
    let mut cand: Vec<Point<T>> = pts.to_vec();
    cand.push(w);
    let mut chain = Vec::new();
    let mut cur = u;
    for _ in 0..=cand.len() {
        let mut best: Option<Point<T>> = None;
        for &c in &cand {
            if c == cur {
                continue;
            }
            best = Some(match best {
                None => c,
                Some(b) => {
                    let o = orientation(cur, b, c);
                    if o == side || (o == Orientation::Collinear && cur.dist(c) > cur.dist(b)) {
                        c
                    } else {
                        b
                    }
                }
            });
        }
        let next = best.expect("chain has a candidate");
        if next == w {
            break;
        }
        chain.push(next);
        cand.retain(|&c| c != next);
        cur = next;
    }
    chain
}

/// Shortest path homotopic to `pts` with fixed endpoints, by repeatedly
/// pulling non-taut vertices onto the convex hull of the obstacle vertices
/// they sweep over.
pub fn rubber_band_tighten<T: Scalar>(pts: &[Point<T>], obstacles: &[Polygon<T>]) -> Vec<Point<T>> {
    let all: Vec<Point<T>> = obstacles.iter().flat_map(|o| o.vertices().iter().copied()).collect();
    let mut path = crate::geom::dedup_consecutive(pts.to_vec());
    let mut budget = 100_000usize;
    loop {
        let Some(i) = (1..path.len().saturating_sub(1))
            .find(|&i| !locally_taut(path[i - 1], path[i], path[i + 1], obstacles))
        else {
            break;
        };
        budget -= 1;
        if budget == 0 {
            log::warn!("rubber band did not converge");
            break;
        }
        let (u, p, w) = (path[i - 1], path[i], path[i + 1]);
        let side = orientation(u, w, p);
        let chain = if side == Orientation::Collinear {
            Vec::new()
        } else {
            let inside: Vec<Point<T>> = all
                .iter()
                .copied()
                .filter(|&x| {
                    x != u
                        && x != w
                        && x != p
                        && orientation(u, w, x) == side
                        && in_closed_triangle(u, p, w, x)
                })
                .collect();
            hull_chain(u, w, side, &inside)
        };
        path.splice(i..=i, chain);
        path = crate::geom::dedup_consecutive(path);
    }
    drop_straight_through(path)
}

// ---------------------------------------------------------------------------
// Grid distance
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct HeapItem<T> {
    f: T,
    node: usize,
}

impl<T: Scalar> PartialEq for HeapItem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for HeapItem<T> {}
impl<T: Scalar> PartialOrd for HeapItem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for HeapItem<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_scalar(other.f, self.f).then(other.node.cmp(&self.node))
    }
}

/// Free-space lattice anchored at a point.
#[derive(Clone, Debug)]
pub struct GridGraph<T> {
    pub resolution: T,
    origin: Point<T>,
    nx: usize,
    ny: usize,
    free: Vec<bool>,
}

impl<T: Scalar> GridGraph<T> {
    /// Lattice through `anchor` covering the obstacles and `extra` points.
    pub fn new(anchor: Point<T>, extra: &[Point<T>], obstacles: &[Polygon<T>], resolution: T) -> Self {
        let pts = obstacles
            .iter()
            .flat_map(|o| o.vertices().iter().copied())
            .chain(extra.iter().copied())
            .chain(std::iter::once(anchor));
        let (lo, hi) = bbox(pts).unwrap();
        let margin = resolution * T::lit(4.0);
        let i0 = ((anchor.x - lo.x + margin) / resolution).ceil();
        let j0 = ((anchor.y - lo.y + margin) / resolution).ceil();
        let origin = Point::new(anchor.x - i0 * resolution, anchor.y - j0 * resolution);
        let nx = ((hi.x + margin - origin.x) / resolution).ceil().as_f64() as usize + 1;
        let ny = ((hi.y + margin - origin.y) / resolution).ceil().as_f64() as usize + 1;
        let mut free = vec![false; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                free[j * nx + i] = point_in_free_space(Self::at(origin, resolution, i, j), obstacles);
            }
        }
        Self { resolution, origin, nx, ny, free }
    }

    fn at(origin: Point<T>, h: T, i: usize, j: usize) -> Point<T> {
        Point::new(origin.x + h * T::lit(i as f64), origin.y + h * T::lit(j as f64))
    }

    pub fn node_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    fn point(&self, n: usize) -> Point<T> {
        Self::at(self.origin, self.resolution, n % self.nx, n / self.nx)
    }

    fn nearest(&self, p: Point<T>) -> (usize, usize) {
        let i = ((p.x - self.origin.x) / self.resolution).round().as_f64().max(0.0) as usize;
        let j = ((p.y - self.origin.y) / self.resolution).round().as_f64().max(0.0) as usize;
        (i.min(self.nx - 1), j.min(self.ny - 1))
    }
}

/// Length of a shortest any-angle path on the lattice from `p` to `q`.
///
/// The lattice is anchored at `p`, and each relaxation also tries the
/// parent's parent with a line-of-sight check, so paths bend only where the
/// obstacles force it. The lattice path is then relaxed continuously, which
/// keeps it free, so the result never undercuts the true distance.
pub fn grid_shortest_path<T: Scalar>(
    p: Point<T>,
    q: Point<T>,
    obstacles: &[Polygon<T>],
    resolution: T,
) -> Result<T, OracleError> {
    if !point_in_free_space(p, obstacles) || !point_in_free_space(q, obstacles) {
        return Err(OracleError::NotFree);
    }
    if p.approx_eq(q) {
        return Ok(T::zero());
    }
    if segment_in_free_space(p, q, obstacles) {
        return Ok(p.dist(q));
    }
    let g = GridGraph::new(p, &[q], obstacles, resolution);
    let n = g.nx * g.ny;
    let goal = n;
    let (si, sj) = g.nearest(p);
    let start = sj * g.nx + si;
    let (qi, qj) = g.nearest(q);
    let reach = 2usize;
    let pos = |k: usize| if k == goal { q } else { g.point(k) };
    let mut dist = vec![T::infinity(); n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    let mut done = vec![false; n + 1];
    dist[start] = T::zero();
    parent[start] = start;
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem { f: p.dist(q), node: start });
    let visible = |a: Point<T>, b: Point<T>| segment_in_free_space(a, b, obstacles);
    while let Some(HeapItem { node, .. }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if node == goal {
            let mut path = vec![q];
            let mut k = parent[goal];
            while k != start {
                path.push(g.point(k));
                k = parent[k];
            }
            path.push(p);
            path.reverse();
            return Ok(polyline_length(&relax_path(path, obstacles)).min(dist[goal]));
        }
        let (i, j) = (node % g.nx, node / g.nx);
        let here = g.point(node);
        let mut relax = |nb: usize, heap: &mut BinaryHeap<HeapItem<T>>| {
            if done[nb] {
                return;
            }
            let there = pos(nb);
            let par = parent[node];
            let (via, cost) = if par != node && visible(pos(par), there) {
                (par, dist[par] + pos(par).dist(there))
            } else if visible(here, there) {
                (node, dist[node] + here.dist(there))
            } else {
                return;
            };
            if cost < dist[nb] {
                dist[nb] = cost;
                parent[nb] = via;
                heap.push(HeapItem { f: cost + there.dist(q), node: nb });
            }
        };
        for dj in -1i64..=1 {
            for di in -1i64..=1 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 || ni >= g.nx as i64 || nj >= g.ny as i64 {
                    continue;
                }
                let nb = nj as usize * g.nx + ni as usize;
                if g.free[nb] {
                    relax(nb, &mut heap);
                }
            }
        }
        if i.abs_diff(qi) <= reach && j.abs_diff(qj) <= reach {
            relax(goal, &mut heap);
        }
    }
    Err(OracleError::Unreachable)
}

/// Slides each interior vertex of a free path toward the chord of its
/// neighbours or toward either neighbour, whichever shortens the path most
/// while both incident segments stay free.
fn relax_path<T: Scalar>(mut path: Vec<Point<T>>, obstacles: &[Polygon<T>]) -> Vec<Point<T>> {
    let free = |a: Point<T>, b: Point<T>| segment_in_free_space(a, b, obstacles);
    for _ in 0..RELAX_SWEEPS {
        let before = polyline_length(&path);
        let mut k = 1;
        while k + 1 < path.len() {
            let (a, v, c) = (path[k - 1], path[k], path[k + 1]);
            if free(a, c) {
                path.remove(k);
                continue;
            }
            let t = project_param(a, c, v).max(T::zero()).min(T::one());
            let mut best = v;
            for w in [a.lerp(c, t), a, c] {
                let (mut lo, mut hi) = (T::zero(), T::one());
                for _ in 0..RELAX_BISECTIONS {
                    let mid = (lo + hi) * T::lit(0.5);
                    let m = v.lerp(w, mid);
                    if free(a, m) && free(m, c) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let m = v.lerp(w, lo);
                if a.dist(m) + m.dist(c) < a.dist(best) + best.dist(c) {
                    best = m;
                }
            }
            path[k] = best;
            k += 1;
        }
        if before - polyline_length(&path) <= T::lit(1e-13) * before {
            break;
        }
    }
    path
}

const RELAX_SWEEPS: usize = 2000;
const RELAX_BISECTIONS: usize = 40;

// ---------------------------------------------------------------------------
// Exhaustive joint search
// ---------------------------------------------------------------------------

/// Optimal pair found by [`exhaustive_pair_search`].
#[derive(Clone, Debug)]
pub struct PairOptimum<T> {
    pub max_cost: T,
    pub cost_a: T,
    pub cost_b: T,
    pub pi_a: Vec<Point<T>>,
    pub pi_b: Vec<Point<T>>,
    pub final_cable: Vec<Point<T>>,
}

struct FullGraph<T> {
    verts: Vec<Point<T>>,
    adj: Vec<Vec<usize>>,
}

impl<T: Scalar> FullGraph<T> {
    fn new(s: &Scenario<T>) -> Self {
        let mut verts: Vec<Point<T>> = Vec::new();
        let mut add = |p: Point<T>| {
            if !verts.iter().any(|q| q.approx_eq(p)) {
                verts.push(p);
            }
        };
        for o in &s.obstacles {
            for &v in o.vertices() {
                add(v);
            }
        }
        for p in [s.ra, s.rb, s.da, s.db] {
            add(p);
        }
        let n = verts.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if segment_in_free_space(verts[i], verts[j], &s.obstacles) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Self { verts, adj }
    }

    fn index(&self, p: Point<T>) -> usize {
        self.verts.iter().position(|q| q.approx_eq(p)).expect("terminal in graph")
    }

    fn hops_to(&self, target: usize) -> Vec<usize> {
        let mut h = vec![usize::MAX; self.verts.len()];
        h[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if h[v] == usize::MAX {
                    h[v] = h[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        h
    }
}

struct PairSearch<'a, T> {
    s: &'a Scenario<T>,
    g: FullGraph<T>,
    hops_a: Vec<usize>,
    hops_b: Vec<usize>,
    ga: usize,
    gb: usize,
    max_steps: usize,
    best: Option<PairOptimum<T>>,
    seen: HashMap<Vec<PointKey>, Vec<(usize, T, T)>>,
}

impl<'a, T: Scalar> PairSearch<'a, T> {
    fn bound(&self) -> T {
        self.best.as_ref().map_or(T::infinity(), |b| b.max_cost)
    }

    fn dominated(&mut self, cable: &[Point<T>], depth: usize, ca: T, cb: T) -> bool {
        let key: Vec<PointKey> = cable.iter().map(|p| p.key()).collect();
        let entry = self.seen.entry(key).or_default();
        if entry.iter().any(|&(d, a, b)| d <= depth && a <= ca && b <= cb) {
            return true;
        }
        entry.retain(|&(d, a, b)| !(depth <= d && ca <= a && cb <= b));
        entry.push((depth, ca, cb));
        false
    }

    fn dfs(&mut self, ia: usize, ib: usize, cable: Vec<Point<T>>, ca: T, cb: T, pa: &mut Vec<usize>, pb: &mut Vec<usize>) {
        let depth = pa.len() - 1;
        let eps = T::length_eps();
        if ia == self.ga && ib == self.gb && polyline_length(&cable) <= self.s.ell + eps {
            let m = ca.max(cb);
            if m < self.bound() - eps {
                self.best = Some(PairOptimum {
                    max_cost: m,
                    cost_a: ca,
                    cost_b: cb,
                    pi_a: pa.iter().map(|&i| self.g.verts[i]).collect(),
                    pi_b: pb.iter().map(|&i| self.g.verts[i]).collect(),
                    final_cable: cable.clone(),
                });
            }
        }
        if depth == self.max_steps {
            return;
        }
        let remaining = self.max_steps - depth;
        let mut moves_a: Vec<Option<usize>> = vec![None];
        moves_a.extend(self.g.adj[ia].iter().map(|&v| Some(v)));
        let mut moves_b: Vec<Option<usize>> = vec![None];
        moves_b.extend(self.g.adj[ib].iter().map(|&v| Some(v)));
        for &ma in &moves_a {
            let na = ma.unwrap_or(ia);
            let nca = ca + self.g.verts[ia].dist(self.g.verts[na]);
            if self.hops_a[na] > remaining - 1
                || nca + self.g.verts[na].dist(self.s.da) >= self.bound() - eps
            {
                continue;
            }
            for &mb in &moves_b {
                if ma.is_none() && mb.is_none() {
                    continue;
                }
                let nb = mb.unwrap_or(ib);
                let ncb = cb + self.g.verts[ib].dist(self.g.verts[nb]);
                if self.hops_b[nb] > remaining - 1
                    || ncb + self.g.verts[nb].dist(self.s.db) >= self.bound() - eps
                {
                    continue;
                }
                let mut raw = Vec::with_capacity(cable.len() + 2);
                raw.push(self.g.verts[na]);
                raw.extend_from_slice(&cable);
                raw.push(self.g.verts[nb]);
                let next = rubber_band_tighten(&raw, &self.s.obstacles);
                if self.dominated(&next, depth + 1, nca, ncb) {
                    continue;
                }
                pa.push(na);
                pb.push(nb);
                self.dfs(na, nb, next, nca, ncb, pa, pb);
                pa.pop();
                pb.pop();
            }
        }
    }
}

/// Minimum over all joint vertex sequences of at most `max_steps` moves of
/// the larger path length, subject to the final cable fitting.
///
/// Every step moves either robot to a visible obstacle vertex or terminal,
/// or keeps it in place. Returns `None` when nothing within the depth works.
pub fn exhaustive_pair_search<T: Scalar>(s: &Scenario<T>, max_steps: usize) -> Option<PairOptimum<T>> {
    let g = FullGraph::new(s);
    let (ia, ib) = (g.index(s.ra), g.index(s.rb));
    let (ga, gb) = (g.index(s.da), g.index(s.db));
    let hops_a = g.hops_to(ga);
    let hops_b = g.hops_to(gb);
    let root = rubber_band_tighten(s.cable.points(), &s.obstacles);
    let mut search = PairSearch {
        s,
        g,
        hops_a,
        hops_b,
        ga,
        gb,
        max_steps,
        best: None,
        seen: HashMap::new(),
    };
    search.dominated(&root, 0, T::zero(), T::zero());
    let (mut pa, mut pb) = (vec![ia], vec![ib]);
    search.dfs(ia, ib, root, T::zero(), T::zero(), &mut pa, &mut pb);
    search.best
}

// ---------------------------------------------------------------------------
// Segment taxonomy
// ---------------------------------------------------------------------------

/// Classifies every path segment of each robot as following the cable (`F`),
/// leading it (`L`) or other (`O`).
///
/// Cables are evaluated on the synchronized execution at the fractions where
/// the robot starts and ends the segment. A segment is `F` when it runs along
/// the first cable segment towards the rest of the cable, and `L` when, at
/// its end, the robot's previous position lies on the first cable segment.
/// Zero-length segments (stays) produce no letter.
pub fn segment_profile<T: Scalar>(
    pi_a: &[Point<T>],
    pi_b: &[Point<T>],
    s: &Scenario<T>,
) -> (String, String) {
    let tau_a = crate::geom::Polyline::new(pi_a.to_vec());
    let tau_b = crate::geom::Polyline::new(pi_b.to_vec());
    let cable_at = |t: T| {
        let mut pts = tau_a.prefix(t).reversed().into_points();
        pts.extend_from_slice(s.cable.points());
        pts.extend_from_slice(tau_b.prefix(t).points());
        rubber_band_tighten(&pts, &s.obstacles)
    };
    let profile = |path: &crate::geom::Polyline<T>, from_b: bool| {
        let total = path.length();
        let cum = path.cumulative_lengths();
        let mut out = String::new();
        for k in 0..path.len().saturating_sub(1) {
            let (p, q) = (path.points()[k], path.points()[k + 1]);
            let (t0, t1) = (cum[k] / total, cum[k + 1] / total);
            let oriented = |mut c: Vec<Point<T>>| {
                if from_b {
                    c.reverse();
                }
                c
            };
            let before = oriented(cable_at(t0));
            let after = oriented(cable_at(t1));
            let follows = before.len() >= 2 && crate::geom::on_segment(before[0], before[1], q);
            let leads = after.len() >= 2 && crate::geom::on_segment(after[0], after[1], p);
            out.push(if follows {
                'F'
            } else if leads {
                'L'
            } else {
                'O'
            });
        }
        out
    };
    (profile(&tau_a, false), profile(&tau_b, true))
}

/// Whether a profile has the shape `F*O*L*`.
pub fn is_fol(profile: &str) -> bool {
    let rank = |c: char| match c {
        'F' => 0,
        'O' => 1,
        _ => 2,
    };
    profile.chars().map(rank).collect::<Vec<_>>().windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn square() -> Vec<Polygon<f64>> {
        vec![Polygon::new(vec![p(1., 1.), p(2., 1.), p(2., 2.), p(1., 2.)]).unwrap()]
    }

    #[test]
    fn rubber_band_reference_examples() {
        assert_eq!(rubber_band_tighten(&[p(0., 0.), p(0.5, 1.), p(3., 0.)], &[]), vec![p(0., 0.), p(3., 0.)]);
        assert_eq!(
            rubber_band_tighten(&[p(0., 0.), p(0., 3.), p(3., 3.)], &square()),
            vec![p(0., 0.), p(1., 2.), p(3., 3.)]
        );
        assert_eq!(
            rubber_band_tighten(&[p(1., 2.), p(0., 0.), p(3., 0.), p(2., 1.)], &square()),
            vec![p(1., 2.), p(1., 1.), p(2., 1.)]
        );
    }

    #[test]
    fn rubber_band_wraps_full_loop() {
        // Once around the square and back to the start side.
        let pts = [p(0., 0.), p(3., 0.), p(3., 3.), p(0., 3.), p(0., 0.5), p(0.5, 0.)];
        let out = rubber_band_tighten(&pts, &square());
        assert_eq!(out, vec![p(0., 0.), p(2., 1.), p(2., 2.), p(1., 2.), p(0.5, 0.)]);
    }

    #[test]
    fn taut_test_requires_convex_vertex_inside_turn() {
        let obs = square();
        assert!(locally_taut(p(0., 0.), p(1., 2.), p(3., 3.), &obs));
        assert!(locally_taut(p(3., 3.), p(1., 2.), p(0., 0.), &obs));
        assert!(!locally_taut(p(0., 3.), p(1., 2.), p(3., 3.), &obs));
        assert!(!locally_taut(p(0., 0.), p(0.5, 2.), p(3., 3.), &obs));
    }

    #[test]
    fn grid_examples() {
        let d = grid_shortest_path(p(0., 0.), p(3., 4.), &[], 0.05).unwrap();
        assert!((d - 5.0).abs() < 1e-12);
        let d = grid_shortest_path(p(0., 0.), p(3., 3.), &square(), 0.05).unwrap();
        let exact = 2.0 * 5f64.sqrt();
        assert!(d >= exact - 1e-9 && d <= exact * 1.01, "{d}");
        assert_eq!(grid_shortest_path(p(0., 0.), p(0., 0.), &square(), 0.05).unwrap(), 0.0);
    }

    #[test]
    fn profiles_of_straight_moves() {
        let s = Scenario::new(
            vec![],
            p(0., 0.),
            p(3., 0.),
            p(2., 0.),
            p(3., 0.),
            3.0,
            crate::geom::Polyline::new(vec![p(0., 0.), p(3., 0.)]),
        )
        .unwrap();
        let (a, b) = segment_profile(&[p(0., 0.), p(2., 0.)], &[p(3., 0.), p(3., 0.)], &s);
        assert_eq!((a.as_str(), b.as_str()), ("F", ""));
        let s = Scenario::new(
            vec![],
            p(0., 0.),
            p(1., 0.),
            p(-2., 0.),
            p(1., 0.),
            3.0,
            crate::geom::Polyline::new(vec![p(0., 0.), p(1., 0.)]),
        )
        .unwrap();
        let (a, _) = segment_profile(&[p(0., 0.), p(-2., 0.)], &[p(1., 0.), p(1., 0.)], &s);
        assert_eq!(a, "L");
        assert!(is_fol("FFOLL") && is_fol("") && !is_fol("LF") && !is_fol("OFO"));
    }

    #[test]
    fn grid_relaxation_reaches_corners() {
        let d = grid_shortest_path(p(0., 0.), p(3., 3.), &square(), 0.05).unwrap();
        assert!((d - 2.0 * 5f64.sqrt()).abs() < 1e-6, "{d}");
    }

    fn open_plane(rb: Point<f64>, da: Point<f64>, db: Point<f64>, ell: f64) -> Scenario<f64> {
        let ra = p(0., 0.);
        Scenario::new(vec![], ra, rb, da, db, ell, crate::geom::Polyline::new(vec![ra, rb])).unwrap()
    }

    #[test]
    fn exhaustive_search_on_open_plane() {
        let o = exhaustive_pair_search(&open_plane(p(1., 0.), p(0., 1.), p(1., 1.), 2.0), 2).unwrap();
        assert!((o.max_cost - 1.0).abs() < 1e-12);
        let o = exhaustive_pair_search(&open_plane(p(1., 0.), p(0., 0.), p(5., 0.), 5.0), 2).unwrap();
        assert!(o.cost_a.abs() < 1e-12 && (o.cost_b - 4.0).abs() < 1e-12);
        assert_eq!(o.final_cable, vec![p(0., 0.), p(5., 0.)]);
        assert!(exhaustive_pair_search(&open_plane(p(1., 0.), p(0., 0.), p(5., 0.), 2.0), 3).is_none());
    }

    #[test]
    fn exhaustive_search_goes_around_the_square() {
        let s = Scenario::new(
            square(),
            p(0., 0.),
            p(3., 0.),
            p(0., 3.),
            p(3., 3.),
            8.0,
            crate::geom::Polyline::new(vec![p(0., 0.), p(3., 0.)]),
        )
        .unwrap();
        let o = exhaustive_pair_search(&s, 4).unwrap();
        assert!((o.max_cost - 3.0).abs() < 1e-12);
        assert!(exhaustive_pair_search(&s.with_ell(2.5), 4).is_none());
    }

    #[test]
    fn grid_unreachable_point_errors() {
        assert_eq!(grid_shortest_path(p(1.5, 1.5), p(0., 0.), &square(), 0.05), Err(OracleError::NotFree));
    }
}
