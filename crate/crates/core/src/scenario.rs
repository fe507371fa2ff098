//! Problem instances: obstacles, start and goal positions, cable length and
//! the initial cable.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    point_in_polygon, segment_in_free_space, segments_intersect, IntersectMode, Point, Polygon,
    PolygonError, Polyline, Region,
};
use crate::scalar::Scalar;

/// Machine-readable validation failure category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReasonCode {
    ObstacleOverlap,
    PointInObstacle,
    CableEndpointMismatch,
    CableTooLong,
    CableCrossesObstacle,
    BadPolygon,
}

impl ReasonCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::ObstacleOverlap => "OBSTACLE_OVERLAP",
            ReasonCode::PointInObstacle => "POINT_IN_OBSTACLE",
            ReasonCode::CableEndpointMismatch => "CABLE_ENDPOINT_MISMATCH",
            ReasonCode::CableTooLong => "CABLE_TOO_LONG",
            ReasonCode::CableCrossesObstacle => "CABLE_CROSSES_OBSTACLE",
            ReasonCode::BadPolygon => "BAD_POLYGON",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ReasonCode,
    pub message: String,
}

impl Violation {
    fn new(code: ReasonCode, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario: {}", summary(.0))]
    Validation(Vec<Violation>),
}

fn summary(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl ScenarioError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            ScenarioError::Validation(v) => v,
            _ => &[],
        }
    }
}

/// On-disk representation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScenarioFile {
    pub obstacles: Vec<Vec<[f64; 2]>>,
    pub ra: [f64; 2],
    pub rb: [f64; 2],
    pub da: [f64; 2],
    pub db: [f64; 2],
    pub ell: f64,
    pub cable: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario<T> {
    pub obstacles: Vec<Polygon<T>>,
    pub ra: Point<T>,
    pub rb: Point<T>,
    pub da: Point<T>,
    pub db: Point<T>,
    pub ell: T,
    pub cable: Polyline<T>,
}

fn pt<T: Scalar>(a: [f64; 2]) -> Point<T> {
    Point::from_f64(a[0], a[1])
}

impl<T: Scalar> Scenario<T> {
    /// Builds and validates a scenario.
    pub fn new(
        obstacles: Vec<Polygon<T>>,
        ra: Point<T>,
        rb: Point<T>,
        da: Point<T>,
        db: Point<T>,
        ell: T,
        cable: Polyline<T>,
    ) -> Result<Self, ScenarioError> {
        let s = Self { obstacles, ra, rb, da, db, ell, cable };
        let v = s.validate();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(ScenarioError::Validation(v))
        }
    }

    /// Builds a scenario without checking its invariants.
    pub fn new_unchecked(
        obstacles: Vec<Polygon<T>>,
        ra: Point<T>,
        rb: Point<T>,
        da: Point<T>,
        db: Point<T>,
        ell: T,
        cable: Polyline<T>,
    ) -> Self {
        Self { obstacles, ra, rb, da, db, ell, cable }
    }

    /// Same instance with a different cable length, unvalidated.
    pub fn with_ell(&self, ell: T) -> Self {
        Self { ell, ..self.clone() }
    }

    /// Every invariant violation, in a fixed order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, a) in self.obstacles.iter().enumerate() {
            for (j, b) in self.obstacles.iter().enumerate().skip(i + 1) {
                if closures_meet(a, b) {
                    out.push(Violation::new(
                        ReasonCode::ObstacleOverlap,
                        format!("obstacles {i} and {j} intersect or touch"),
                    ));
                }
            }
        }
        for (name, p) in [("ra", self.ra), ("rb", self.rb), ("da", self.da), ("db", self.db)] {
            if let Some(k) = self
                .obstacles
                .iter()
                .position(|o| point_in_polygon(p, o) == Region::Interior)
            {
                out.push(Violation::new(
                    ReasonCode::PointInObstacle,
                    format!("{name} = {p} lies inside obstacle {k}"),
                ));
            }
        }
        if !self.cable.first().approx_eq(self.ra) || !self.cable.last().approx_eq(self.rb) {
            out.push(Violation::new(
                ReasonCode::CableEndpointMismatch,
                format!(
                    "cable runs from {} to {}, expected {} to {}",
                    self.cable.first(),
                    self.cable.last(),
                    self.ra,
                    self.rb
                ),
            ));
        }
        let len = self.cable.length();
        if !(self.ell >= T::zero()) || len > self.ell + T::length_eps() {
            out.push(Violation::new(
                ReasonCode::CableTooLong,
                format!("cable length {len} exceeds ell = {}", self.ell),
            ));
        }
        let pts = self.cable.points();
        let crosses = pts
            .iter()
            .any(|&p| self.obstacles.iter().any(|o| point_in_polygon(p, o) == Region::Interior))
            || pts.windows(2).any(|w| !segment_in_free_space(w[0], w[1], &self.obstacles));
        if crosses {
            out.push(Violation::new(
                ReasonCode::CableCrossesObstacle,
                "initial cable passes through an obstacle interior",
            ));
        }
        out
    }

    pub fn from_file_repr(raw: &ScenarioFile) -> Result<Self, ScenarioError> {
        let mut bad = Vec::new();
        let mut obstacles = Vec::with_capacity(raw.obstacles.len());
        for (i, poly) in raw.obstacles.iter().enumerate() {
            let verts: Vec<Point<T>> = poly.iter().map(|&a| pt(a)).collect();
            match Polygon::normalized(verts) {
                Ok((p, reversed)) => {
                    if reversed {
                        log::warn!("obstacle {i} was clockwise; vertex order reversed");
                    }
                    obstacles.push(p);
                }
                Err(e) => bad.push(Violation::new(ReasonCode::BadPolygon, bad_polygon(i, &e))),
            }
        }
        if !bad.is_empty() {
            return Err(ScenarioError::Validation(bad));
        }
        let finite = |a: &[f64; 2]| a[0].is_finite() && a[1].is_finite();
        if ![raw.ra, raw.rb, raw.da, raw.db].iter().all(finite)
            || !raw.cable.iter().all(finite)
            || !raw.ell.is_finite()
        {
            return Err(ScenarioError::Parse("non-finite coordinate or length".into()));
        }
        if raw.cable.is_empty() {
            return Err(ScenarioError::Parse("cable needs at least one point".into()));
        }
        Self::new(
            obstacles,
            pt(raw.ra),
            pt(raw.rb),
            pt(raw.da),
            pt(raw.db),
            T::lit(raw.ell),
            Polyline::new(raw.cable.iter().map(|&a| pt(a)).collect()),
        )
    }

    pub fn to_file_repr(&self) -> ScenarioFile {
        let arr = |p: Point<T>| p.to_f64();
        ScenarioFile {
            obstacles: self
                .obstacles
                .iter()
                .map(|o| o.vertices().iter().map(|&p| arr(p)).collect())
                .collect(),
            ra: arr(self.ra),
            rb: arr(self.rb),
            da: arr(self.da),
            db: arr(self.db),
            ell: self.ell.as_f64(),
            cable: self.cable.points().iter().map(|&p| arr(p)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let raw: ScenarioFile =
            serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        Self::from_file_repr(&raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_repr()).expect("scenario serializes")
    }
}

fn bad_polygon(i: usize, e: &PolygonError) -> String {
    format!("obstacle {i}: {e}")
}

fn closures_meet<T: Scalar>(a: &Polygon<T>, b: &Polygon<T>) -> bool {
    let edges_meet = a
        .edges()
        .any(|ea| b.edges().any(|eb| segments_intersect(ea, eb, IntersectMode::Touching)));
    edges_meet
        || point_in_polygon(a.vertex(0), b) != Region::Exterior
        || point_in_polygon(b.vertex(0), a) != Region::Exterior
}

/// Reads and validates a scenario file.
pub fn load_scenario<T: Scalar>(path: impl AsRef<Path>) -> Result<Scenario<T>, ScenarioError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
    Scenario::from_json(&text)
}

/// Writes a scenario as JSON. Numbers are written in shortest round-trip form.
pub fn save_scenario<T: Scalar>(s: &Scenario<T>, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let path = path.as_ref();
    fs::write(path, s.to_json())
        .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })
}

pub fn validate<T: Scalar>(s: &Scenario<T>) -> Vec<Violation> {
    s.validate()
}
