//! Distance-optimal planning for two point robots joined by a cable of
//! bounded length among polygonal obstacles.
//!
//! The core is generic over the coordinate type through [`Scalar`]; the
//! aliases at the crate root fix it to `f64`.

pub mod cable;
pub mod experiment;
pub mod geom;
pub mod oracle;
pub mod planner;
pub mod scalar;
pub mod scenario;
pub mod trajectory;
pub mod visgraph;

pub use scalar::Scalar;

pub type Point = geom::Point<f64>;
pub type Polygon = geom::Polygon<f64>;
pub type Polyline = geom::Polyline<f64>;
pub type Scenario = scenario::Scenario<f64>;
pub type TautCable = cable::TautCable<f64>;
pub type Tightener = cable::Tightener<f64>;
pub type VisGraph = visgraph::VisGraph<f64>;
pub type Planner = planner::Planner<f64>;
pub type Solution = planner::Solution<f64>;
pub type Trajectory = trajectory::Trajectory<f64>;
