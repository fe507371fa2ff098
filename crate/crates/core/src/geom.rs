//! Planar primitives and predicates.
//!
//! Everything here is computed in the scalar type's native precision with an
//! absolute tolerance band of [`Scalar::geom_eps`]. The fixtures this crate is
//! exercised on are in general position, so no adaptive arithmetic is used.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{Scalar, ScalarKey};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    /// Builds a point from `f64` coordinates.
    #[inline]
    pub fn from_f64(x: f64, y: f64) -> Self {
        Self { x: T::lit(x), y: T::lit(y) }
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    #[inline]
    pub fn dist(self, other: Self) -> T {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Equality within the geometric tolerance band.
    #[inline]
    pub fn approx_eq(self, other: Self) -> bool {
        self.dist(other) <= T::geom_eps()
    }

    /// Linear interpolation `self + t (other - self)`.
    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        self + (other - self) * t
    }

    /// Unit vector in the same direction, or zero for the zero vector.
    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n > T::zero() {
            self * (T::one() / n)
        } else {
            self
        }
    }

    pub fn key(self) -> PointKey {
        PointKey(ScalarKey::of(self.x), ScalarKey::of(self.y))
    }

    pub fn to_f64(self) -> [f64; 2] {
        [self.x.as_f64(), self.y.as_f64()]
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Scalar> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Exact bitwise identity of a point, for hashing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointKey(ScalarKey, ScalarKey);

/// Turn direction of an ordered triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    /// `-1`, `0` or `+1`.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Twice the signed area of triangle `pqr`.
#[inline]
pub fn cross3<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> T {
    (q - p).cross(r - p)
}

pub fn orientation<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> Orientation {
    let c = cross3(p, q, r);
    if c > T::geom_eps() {
        Orientation::CounterClockwise
    } else if c < -T::geom_eps() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Whether `r` lies on the closed segment `pq` (within tolerance).
pub fn on_segment<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> bool {
    point_segment_distance(r, p, q) <= T::geom_eps()
}

/// Euclidean distance from `r` to the closed segment `pq`.
pub fn point_segment_distance<T: Scalar>(r: Point<T>, p: Point<T>, q: Point<T>) -> T {
    let d = q - p;
    let len2 = d.dot(d);
    if len2 == T::zero() {
        return r.dist(p);
    }
    let t = ((r - p).dot(d) / len2).max(T::zero()).min(T::one());
    r.dist(p + d * t)
}

/// Parameter of the projection of `r` onto the line through `p` and `q`.
pub fn project_param<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> T {
    let d = q - p;
    let len2 = d.dot(d);
    if len2 == T::zero() {
        T::zero()
    } else {
        (r - p).dot(d) / len2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectMode {
    /// Only crossings of the open segments count.
    Proper,
    /// Shared endpoints and collinear overlap count as well.
    Touching,
}

pub fn segments_intersect<T: Scalar>(
    s1: (Point<T>, Point<T>),
    s2: (Point<T>, Point<T>),
    mode: IntersectMode,
) -> bool {
    let (a, b) = s1;
    let (c, d) = s2;
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    let proper = o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o1 != o2
        && o3 != o4;
    match mode {
        IntersectMode::Proper => proper,
        IntersectMode::Touching => {
            proper
                || on_segment(a, b, c)
                || on_segment(a, b, d)
                || on_segment(c, d, a)
                || on_segment(c, d, b)
        }
    }
}

/// Intersection point of the lines through `ab` and `cd`, if not parallel.
pub fn line_intersection<T: Scalar>(
    a: Point<T>,
    b: Point<T>,
    c: Point<T>,
    d: Point<T>,
) -> Option<Point<T>> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    if denom.abs() <= T::epsilon() * (r.norm() * s.norm()).max(T::one()) {
        return None;
    }
    let t = (c - a).cross(s) / denom;
    Some(a + r * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon vertex {0} is not finite")]
    NonFinite(usize),
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero area")]
    Degenerate,
    #[error("polygon vertices are not counter-clockwise")]
    Clockwise,
}

/// Simple polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    /// Validates a counter-clockwise vertex ring.
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self, PolygonError> {
        let (poly, reversed) = Self::normalized(vertices)?;
        if reversed {
            return Err(PolygonError::Clockwise);
        }
        Ok(poly)
    }

    /// Validates a vertex ring of either winding; clockwise input is reversed.
    ///
    /// Returns the polygon and whether it was reversed. Consecutive duplicate
    /// vertices (including a closing copy of the first vertex) are dropped.
    pub fn normalized(vertices: Vec<Point<T>>) -> Result<(Self, bool), PolygonError> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(PolygonError::NonFinite(i));
        }
        let mut verts = dedup_consecutive(vertices);
        while verts.len() > 1 && verts[0].approx_eq(*verts.last().unwrap()) {
            verts.pop();
        }
        if verts.len() < 3 {
            return Err(PolygonError::TooFewVertices(verts.len()));
        }
        let n = verts.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let e1 = (verts[i], verts[(i + 1) % n]);
                let e2 = (verts[j], verts[(j + 1) % n]);
                if adjacent {
                    // Adjacent edges may only share their common vertex.
                    let (shared, a, b) = if j == i + 1 {
                        (verts[j], verts[i], verts[(j + 1) % n])
                    } else {
                        (verts[0], verts[1], verts[n - 1])
                    };
                    if orientation(a, shared, b) == Orientation::Collinear
                        && (b - shared).dot(a - shared) > T::zero()
                    {
                        return Err(PolygonError::SelfIntersecting(i, j));
                    }
                } else if segments_intersect(e1, e2, IntersectMode::Touching) {
                    return Err(PolygonError::SelfIntersecting(i, j));
                }
            }
        }
        let area = signed_area(&verts);
        if area.abs() <= T::geom_eps() {
            return Err(PolygonError::Degenerate);
        }
        if area < T::zero() {
            verts.reverse();
            Ok((Self { vertices: verts }, true))
        } else {
            Ok((Self { vertices: verts }, false))
        }
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.vertices.len()]
    }

    /// Previous and next vertices around vertex `i`.
    pub fn neighbors(&self, i: usize) -> (Point<T>, Point<T>) {
        let n = self.vertices.len();
        (self.vertices[(i + n - 1) % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point<T>, Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    /// Whether the interior angle at vertex `i` is below a half turn.
    pub fn is_convex_vertex(&self, i: usize) -> bool {
        let (prev, next) = self.neighbors(i);
        orientation(prev, self.vertices[i], next) == Orientation::CounterClockwise
    }

    pub fn bbox(&self) -> (Point<T>, Point<T>) {
        bbox(self.vertices.iter().copied()).expect("polygon has vertices")
    }

    pub fn contains_vertex(&self, p: Point<T>) -> Option<usize> {
        self.vertices.iter().position(|v| *v == p)
    }
}

fn signed_area<T: Scalar>(verts: &[Point<T>]) -> T {
    let n = verts.len();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + verts[i].cross(verts[(i + 1) % n]);
    }
    acc / T::lit(2.0)
}

/// Axis-aligned bounds `(min, max)` of a point set.
pub fn bbox<T: Scalar>(pts: impl IntoIterator<Item = Point<T>>) -> Option<(Point<T>, Point<T>)> {
    let mut it = pts.into_iter();
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), p| {
        (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y)))
    }))
}

pub fn point_in_polygon<T: Scalar>(p: Point<T>, poly: &Polygon<T>) -> Region {
    if poly.edges().any(|(a, b)| point_segment_distance(p, a, b) <= T::geom_eps()) {
        return Region::Boundary;
    }
    // Crossing number with a horizontal ray towards +x.
    let mut inside = false;
    for (a, b) in poly.edges() {
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Region::Interior
    } else {
        Region::Exterior
    }
}

/// Whether `p` is outside every obstacle interior.
pub fn point_in_free_space<T: Scalar>(p: Point<T>, obstacles: &[Polygon<T>]) -> bool {
    obstacles.iter().all(|o| point_in_polygon(p, o) != Region::Interior)
}

/// Whether the closed segment `pq` avoids every obstacle interior.
///
/// Grazing contact with obstacle boundaries, including running along an
/// edge or passing through a vertex, is allowed.
pub fn segment_in_free_space<T: Scalar>(p: Point<T>, q: Point<T>, obstacles: &[Polygon<T>]) -> bool {
    obstacles.iter().all(|o| segment_clear_of(p, q, o))
}

fn segment_clear_of<T: Scalar>(p: Point<T>, q: Point<T>, poly: &Polygon<T>) -> bool {
    let (lo, hi) = poly.bbox();
    let eps = T::geom_eps();
    if p.x.max(q.x) < lo.x - eps
        || p.x.min(q.x) > hi.x + eps
        || p.y.max(q.y) < lo.y - eps
        || p.y.min(q.y) > hi.y + eps
    {
        return true;
    }
    if poly.edges().any(|e| segments_intersect((p, q), e, IntersectMode::Proper)) {
        return false;
    }
    // Between consecutive boundary contacts the segment is entirely inside or
    // entirely outside, so one midpoint per piece decides it.
    let mut ts = vec![T::zero(), T::one()];
    for &v in poly.vertices() {
        if on_segment(p, q, v) {
            ts.push(project_param(p, q, v).max(T::zero()).min(T::one()));
        }
    }
    ts.sort_by(|a, b| crate::scalar::cmp_scalar(*a, *b));
    let half = T::lit(0.5);
    ts.windows(2).all(|w| {
        let mid = p.lerp(q, (w[0] + w[1]) * half);
        point_in_polygon(mid, poly) != Region::Interior
    })
}

/// Ordered point sequence; consecutive duplicates are removed on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline<T> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> Polyline<T> {
    /// # Panics
    /// Panics on an empty point list.
    pub fn new(points: Vec<Point<T>>) -> Self {
        assert!(!points.is_empty(), "polyline needs at least one point");
        Self { points: dedup_consecutive(points) }
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    pub fn first(&self) -> Point<T> {
        self.points[0]
    }

    pub fn last(&self) -> Point<T> {
        *self.points.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn length(&self) -> T {
        polyline_length(&self.points)
    }

    pub fn reversed(&self) -> Self {
        let mut pts = self.points.clone();
        pts.reverse();
        Self { points: pts }
    }

    /// Point at arc-length fraction `t` in `[0, 1]`.
    pub fn point_at_fraction(&self, t: T) -> Point<T> {
        self.prefix(t).last()
    }

    /// Initial piece of the polyline covering arc-length fraction `t`.
    ///
    /// A zero-length polyline yields its single point for every `t`.
    pub fn prefix(&self, t: T) -> Self {
        let total = self.length();
        let t = t.max(T::zero()).min(T::one());
        if total == T::zero() || t == T::zero() {
            return Self { points: vec![self.points[0]] };
        }
        if t == T::one() {
            return self.clone();
        }
        let target = total * t;
        let mut acc = T::zero();
        let mut out = vec![self.points[0]];
        for w in self.points.windows(2) {
            let seg = w[0].dist(w[1]);
            if acc + seg >= target {
                let s = if seg > T::zero() { (target - acc) / seg } else { T::zero() };
                out.push(w[0].lerp(w[1], s));
                return Self::new(out);
            }
            acc = acc + seg;
            out.push(w[1]);
        }
        Self::new(out)
    }

    /// Cumulative arc length at each point.
    pub fn cumulative_lengths(&self) -> Vec<T> {
        let mut acc = T::zero();
        let mut out = Vec::with_capacity(self.points.len());
        out.push(acc);
        for w in self.points.windows(2) {
            acc = acc + w[0].dist(w[1]);
            out.push(acc);
        }
        out
    }
}

pub fn polyline_length<T: Scalar>(points: &[Point<T>]) -> T {
    points.windows(2).fold(T::zero(), |acc, w| acc + w[0].dist(w[1]))
}

/// Removes consecutive points closer than the geometric tolerance.
pub fn dedup_consecutive<T: Scalar>(points: Vec<Point<T>>) -> Vec<Point<T>> {
    let mut out: Vec<Point<T>> = Vec::with_capacity(points.len());
    for p in points {
        if out.last().is_none_or(|q| !q.approx_eq(p)) {
            out.push(p);
        }
    }
    out
}

/// Drops interior points where the path continues straight on.
///
/// Points at which the path reverses direction are kept.
pub fn drop_straight_through<T: Scalar>(points: Vec<Point<T>>) -> Vec<Point<T>> {
    let mut pts = dedup_consecutive(points);
    let mut i = 1;
    while i + 1 < pts.len() {
        let (a, b, c) = (pts[i - 1], pts[i], pts[i + 1]);
        if orientation(a, b, c) == Orientation::Collinear && (a - b).dot(c - b) <= T::zero() {
            pts.remove(i);
            if i > 1 {
                i -= 1;
            }
        } else {
            i += 1;
        }
    }
    pts
}
