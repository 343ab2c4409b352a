//! Graph Floer homology of transverse spatial graphs, computed from graph
//! grid diagrams.
//!
//! The pipeline runs grid → traced graph → generators and rectangles →
//! bigraded homology → hat dimensions and graded Euler characteristic.
//! Grid moves and a randomized invariance harness sit on top.
//!
//! Integer lattice arithmetic ([`lattice`]) and group-ring coefficients
//! ([`alexpoly`]) are generic over [`lattice::Scalar`]. The aliases below
//! fix the machine-integer instantiation used by the pipeline.

pub mod alexpoly;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod grading;
pub mod graph;
pub mod grid;
pub mod homology;
pub mod invariance;
pub mod lattice;
pub mod moves;
pub mod perm;

pub use error::{Error, Result};
pub use graph::{trace_graph, Edge, SpatialGraphModel};
pub use grid::{parse_grid, GridDiagram, Marker, MarkerId, MarkerKind, ValidationReport};
pub use perm::Generator;

/// First homology of a graph complement, presented by edge meridians.
pub type H1Group = lattice::LatticeQuotient<i64>;
/// Canonical coset representative in [`H1Group`].
pub type H1Element = lattice::Coset<i64>;
/// Bigraded integer polynomial keyed by (Alexander class, Maslov degree).
pub type BigradedPoly = alexpoly::BigradedPoly<i64>;
/// Element of the integral group ring of [`H1Group`].
pub type GroupRingPoly = alexpoly::GroupRingPoly<i64>;
/// Default ceiling on grid size for exhaustive computations.
pub const DEFAULT_MAX_GRID: usize = 9;
