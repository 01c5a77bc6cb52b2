//! Bounded checks of the planar corner-cut statement: lattice points of the
//! hull of `d`-fold distinct sums of quadrant points are themselves such sums.
//!
//! The quadrant is truncated to the staircase triangle `x + y <= B`. It
//! contains the unit square once `B >= 2`, so it is never one of the
//! exceptional triangles and its wedge powers must be lattice-convex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointConfiguration};
use crate::wedge::{check_lattice_convex, wedge, ConvexityReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantTruncation {
    pub bound: u32,
    pub points: PointConfiguration,
}

/// `{(x, y) in N^2 : x + y <= bound}`.
pub fn truncated_quadrant(bound: u32) -> QuadrantTruncation {
    let b = bound as i64;
    let points = (0..=b).flat_map(|x| (0..=b - x).map(move |y| LatticePoint::xy(x, y)));
    let points = PointConfiguration::new(2, points).expect("planar points");
    debug_assert_eq!(points.len() as u64, (b as u64 + 1) * (b as u64 + 2) / 2);
    QuadrantTruncation { bound, points }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerCutReport {
    pub d: usize,
    pub bound: u32,
    pub wedge_size: usize,
    pub convexity: ConvexityReport,
}

impl Serialize for CornerCutReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CornerCutReport", 5)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("B", &self.bound)?;
        st.serialize_field("wedge_size", &self.wedge_size)?;
        st.serialize_field("convex", &self.convexity.convex)?;
        st.serialize_field("missing", self.convexity.missing.points())?;
        st.end()
    }
}

/// Lattice-convexity of the `d`-th wedge power of the truncated quadrant.
pub fn verify_corner_cut(d: usize, bound: u32) -> Result<CornerCutReport> {
    if bound < 2 {
        return Err(Error::InvalidArgument(format!(
            "truncation bound must be at least 2, got {bound}"
        )));
    }
    let quadrant = truncated_quadrant(bound);
    if d > quadrant.points.len() {
        return Err(Error::InvalidArgument(format!(
            "d = {d} exceeds the {} points of the truncated quadrant",
            quadrant.points.len()
        )));
    }
    let w = wedge(&quadrant.points, d)?;
    let convexity = check_lattice_convex(&w)?;
    Ok(CornerCutReport {
        d,
        bound,
        wedge_size: w.len(),
        convexity,
    })
}
