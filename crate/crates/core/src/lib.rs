//! A laboratory for Yao graphs and L-infinity Delaunay triangulations.
//!
//! The crate builds the Euclidean Yao graph `Y_k`, the L-infinity Yao graph
//! with four quadrant cones, and the L-infinity Delaunay triangulation; it
//! computes exact stretch factors with Euclidean edge weights and checks the
//! known stretch bounds and structural relations between these graphs on
//! arbitrary point sets. A small adversarial search looks for point sets with
//! large stretch.

pub mod bounds;
pub mod delaunay;
pub mod error;
pub mod geometry;
pub mod io;
pub mod paths;
pub mod render;
pub mod search;
pub mod verify;
pub mod yao;

pub use bounds::BoundTable;
pub use delaunay::{
    build_del_linf, circumsquare, is_del_edge, triangle_walk, TriangleWalk, Triangulation,
};
pub use error::{Error, Result};
pub use geometry::{Point, PointSet, PositionMode, Quadrant, Rect, Square};
pub use paths::{greedy_path_pr, shortest_path, stretch_factor, PathResult, StretchReport};
pub use yao::{build_yao_l2, build_yao_linf4, Adjacency, DirectedGeoGraph, GeoGraph, Metric};
