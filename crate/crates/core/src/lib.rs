//! Exact wedge powers of lattice point configurations.
//!
//! The `p`-th wedge power of a finite set `S` of lattice points is the set of
//! sums of `p` distinct elements of `S`. This crate computes wedge powers
//! exactly, decides whether a planar set is the full set of lattice points of
//! its convex hull, and runs the exhaustive and constructive checks built on
//! top of that: the planar convexity classification over small grids, the
//! corner-cut statement for the quadrant, and the spatial counterexample on
//! the 6-fold standard simplex.

#![allow(clippy::needless_range_loop)]

pub mod cornercut;
pub mod counterexample;
pub mod error;
pub mod harness;
pub mod hull;
pub mod membership;
pub mod point;
pub mod unimodular;
pub mod wedge;

pub use cornercut::{truncated_quadrant, verify_corner_cut, CornerCutReport, QuadrantTruncation};
pub use counterexample::{
    build_colored_simplex, quadrant_points_below, verify_counterexample, witness_point,
    ColoredSimplex, CounterexampleReport,
};
pub use error::{Error, Result};
pub use harness::{
    enumerate_lattice_convex, is_p_good, p_good_witnesses, union_decomposition_holds, verify_grid,
    verify_polygon, GridRun, GridSpec, GridSummary, TheoremReport, Verdict, Violation,
};
pub use hull::{
    convex_hull, convex_hull_2d, is_lattice_convex, lattice_points_of_polytope, remove_vertex,
    vertex_set, Polytope,
};
pub use membership::{convex_combination, point_in_hull, ConvexCombination};
pub use point::{LatticePoint, LinearFunctional, PointConfiguration};
pub use unimodular::{
    apply_map, are_equivalent, exception_index, exceptional_triangle, lattice_plane_coordinates,
    AffineUnimodularMap, PlaneLattice,
};
pub use wedge::{
    check_lattice_convex, reflect_complement, wedge, wedge_power, ComplementPivot, ConvexityReport,
    Method, WedgeBitmap, WedgeOutput, WedgeQuery,
};
