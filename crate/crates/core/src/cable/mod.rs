//! Taut cables and the tightening operator.
//!
//! A cable is tightened by tracing it through a constrained triangulation of
//! the free space, which yields the sequence of triangles (the sleeve) its
//! homotopy class passes through, and then running the funnel algorithm
//! through that sleeve.

mod sleeve;
pub mod triangulation;

use std::fmt;

use thiserror::Error;

use crate::geom::{
    bbox, drop_straight_through, polyline_length, segment_in_free_space, Point, PointKey,
    Polygon, Polyline,
};
use crate::scalar::Scalar;
use crate::scenario::Scenario;

pub use triangulation::Triangulation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CableError {
    #[error("input curve leaves free space")]
    InputNotInFreeSpace,
    #[error("move target is not visible from the cable end")]
    NotVisible,
    #[error("curve endpoints do not match the cable")]
    EndpointMismatch,
    #[error("failed to trace curve through the triangulation")]
    TraceFailed,
}

/// Shortest cable in its homotopy class.
///
/// The ends are the robot positions; interior vertices are obstacle vertices
/// the cable wraps around.
#[derive(Clone, Debug, PartialEq)]
pub struct TautCable<T> {
    verts: Vec<Point<T>>,
    length: T,
}

impl<T: Scalar> TautCable<T> {
    fn from_verts(verts: Vec<Point<T>>) -> Self {
        let length = polyline_length(&verts);
        Self { verts, length }
    }

    pub fn verts(&self) -> &[Point<T>] {
        &self.verts
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn first(&self) -> Point<T> {
        self.verts[0]
    }

    pub fn last(&self) -> Point<T> {
        *self.verts.last().unwrap()
    }

    /// Number of interior (wrap) vertices.
    pub fn interior_count(&self) -> usize {
        self.verts.len().saturating_sub(2)
    }

    pub fn to_polyline(&self) -> Polyline<T> {
        Polyline::new(self.verts.clone())
    }

    /// Exact identity of the vertex sequence.
    pub fn key(&self) -> Vec<PointKey> {
        self.verts.iter().map(|p| p.key()).collect()
    }
}

impl<T: Scalar> fmt::Display for TautCable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Tightening operator over a fixed obstacle set.
///
/// Building one triangulates the free space once; every call afterwards is a
/// read-only query, so a single instance can be shared between threads.
#[derive(Clone, Debug)]
pub struct Tightener<T> {
    obstacles: Vec<Polygon<T>>,
    tri: Triangulation<T>,
}

impl<T: Scalar> Tightener<T> {
    pub fn new(obstacles: &[Polygon<T>], bounds: (Point<T>, Point<T>)) -> Self {
        Self { obstacles: obstacles.to_vec(), tri: Triangulation::new(obstacles, bounds) }
    }

    /// Triangulates a box around the obstacles and `extra` points, grown by
    /// `margin` on every side.
    pub fn around(
        obstacles: &[Polygon<T>],
        extra: impl IntoIterator<Item = Point<T>>,
        margin: T,
    ) -> Self {
        let pts = obstacles
            .iter()
            .flat_map(|o| o.vertices().iter().copied())
            .chain(extra);
        let (lo, hi) = bbox(pts).unwrap_or((Point::default(), Point::default()));
        let m = margin.max(T::one());
        let bounds = (Point::new(lo.x - m, lo.y - m), Point::new(hi.x + m, hi.y + m));
        Self::new(obstacles, bounds)
    }

    /// Box enclosing every scenario point with a margin of twice the cable
    /// length.
    pub fn for_scenario(s: &Scenario<T>) -> Self {
        let extra = [s.ra, s.rb, s.da, s.db]
            .into_iter()
            .chain(s.cable.points().iter().copied());
        Self::around(&s.obstacles, extra, s.ell * T::lit(2.0))
    }

    pub fn obstacles(&self) -> &[Polygon<T>] {
        &self.obstacles
    }

    pub fn triangulation(&self) -> &Triangulation<T> {
        &self.tri
    }

    fn inside_box(&self, p: Point<T>) -> bool {
        let (lo, hi) = self.tri.bounds();
        p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y
    }

    /// Shortest path homotopic to `pts` with the same endpoints.
    pub fn tighten(&self, pts: &[Point<T>]) -> Result<TautCable<T>, CableError> {
        if pts.is_empty() {
            return Err(CableError::EndpointMismatch);
        }
        let pts = Polyline::new(pts.to_vec()).into_points();
        if !pts.iter().all(|&p| p.is_finite() && self.inside_box(p)) {
            return Err(CableError::InputNotInFreeSpace);
        }
        if !pts.windows(2).all(|w| segment_in_free_space(w[0], w[1], &self.obstacles)) {
            return Err(CableError::InputNotInFreeSpace);
        }
        if pts.len() == 1 && !crate::geom::point_in_free_space(pts[0], &self.obstacles) {
            return Err(CableError::InputNotInFreeSpace);
        }
        self.tighten_free(&pts)
    }

    /// Tightening of a curve already known to lie in free space.
    fn tighten_free(&self, pts: &[Point<T>]) -> Result<TautCable<T>, CableError> {
        let snapped: Vec<Point<T>> = pts
            .iter()
            .map(|&p| self.tri.snap_vertex(p).map_or(p, |v| self.tri.point(v)))
            .collect();
        let snapped = crate::geom::dedup_consecutive(snapped);
        let start = snapped[0];
        let end = *snapped.last().unwrap();
        if snapped.len() == 1 {
            return Ok(TautCable::from_verts(vec![start]));
        }
        let seq = sleeve::trace(&self.tri, &snapped)?;
        let path = sleeve::funnel(&self.tri, &seq, start, end)?;
        let mut path = drop_straight_through(path);
        // Endpoints are fixed even when they coincide after tightening.
        if path.len() == 1 && start != end {
            path.push(end);
        }
        Ok(TautCable::from_verts(path))
    }

    /// Cable after robot `a` moves to `va` and robot `b` to `vb`.
    pub fn cable_after_move(
        &self,
        c: &TautCable<T>,
        va: Point<T>,
        vb: Point<T>,
    ) -> Result<TautCable<T>, CableError> {
        if !segment_in_free_space(va, c.first(), &self.obstacles)
            || !segment_in_free_space(c.last(), vb, &self.obstacles)
        {
            return Err(CableError::NotVisible);
        }
        self.extend_visible(c, va, vb)
    }

    /// Like [`Self::cable_after_move`] for moves already known to be
    /// visible from the cable ends.
    pub(crate) fn extend_visible(
        &self,
        c: &TautCable<T>,
        va: Point<T>,
        vb: Point<T>,
    ) -> Result<TautCable<T>, CableError> {
        let mut pts = Vec::with_capacity(c.verts.len() + 2);
        pts.push(va);
        pts.extend_from_slice(&c.verts);
        pts.push(vb);
        self.tighten_free(&pts)
    }

    /// Tightened cable length at synchronized fraction `t`.
    pub fn consumption_at(
        &self,
        tau_a: &Polyline<T>,
        tau_b: &Polyline<T>,
        c0: &Polyline<T>,
        t: T,
    ) -> Result<T, CableError> {
        let curve = cat_curve(tau_a, tau_b, c0, t)?;
        Ok(self.tighten(curve.points())?.length())
    }

    /// Tightened cable length at `N + 1` uniform fractions `i / N`.
    pub fn sampled_consumption(
        &self,
        tau_a: &Polyline<T>,
        tau_b: &Polyline<T>,
        c0: &Polyline<T>,
        n: usize,
    ) -> Result<Vec<(T, T)>, CableError> {
        let n = n.max(1);
        (0..=n)
            .map(|i| {
                let t = T::lit(i as f64 / n as f64);
                self.consumption_at(tau_a, tau_b, c0, t).map(|l| (t, l))
            })
            .collect()
    }

    /// Upper bound on the cable needed to execute the pair synchronously.
    pub fn cstar_upper(
        &self,
        tau_a: &Polyline<T>,
        tau_b: &Polyline<T>,
        c0: &Polyline<T>,
        n: usize,
    ) -> Result<T, CableError> {
        let samples = self.sampled_consumption(tau_a, tau_b, c0, n)?;
        Ok(samples.iter().fold(T::zero(), |m, &(_, l)| m.max(l)))
    }
}

/// Curve joining the traversed parts of both paths through the initial cable.
///
/// Both prefixes are taken at arc-length fraction `t`.
pub fn cat_curve<T: Scalar>(
    tau_a: &Polyline<T>,
    tau_b: &Polyline<T>,
    c0: &Polyline<T>,
    t: T,
) -> Result<Polyline<T>, CableError> {
    cat_curve_at(tau_a, tau_b, c0, t, t)
}

/// Like [`cat_curve`] with separate fractions for the two robots.
pub fn cat_curve_at<T: Scalar>(
    tau_a: &Polyline<T>,
    tau_b: &Polyline<T>,
    c0: &Polyline<T>,
    ta: T,
    tb: T,
) -> Result<Polyline<T>, CableError> {
    if !tau_a.first().approx_eq(c0.first()) || !tau_b.first().approx_eq(c0.last()) {
        return Err(CableError::EndpointMismatch);
    }
    let mut pts = tau_a.prefix(ta).reversed().into_points();
    pts.extend_from_slice(c0.points());
    pts.extend_from_slice(tau_b.prefix(tb).points());
    Ok(Polyline::new(pts))
}

#[cfg(test)]
mod tests;
