//! Wedge powers: the set of sums of `p` distinct points of a configuration.

mod dp;
mod naive;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

pub use dp::{WedgeBitmap, DP_MEMORY_BUDGET_BYTES};
pub use naive::{binomial, NAIVE_SUBSET_BUDGET};

use crate::error::{Error, Result};
use crate::hull::{convex_hull, lattice_points_of_polytope};
use crate::point::{LatticePoint, PointConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Bit-parallel layered reachability.
    #[default]
    Dp,
    /// Enumerate every `p`-subset; refused above [`NAIVE_SUBSET_BUDGET`].
    Naive,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Method::Dp),
            "naive" => Ok(Method::Naive),
            other => Err(Error::InvalidArgument(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeQuery {
    pub base: PointConfiguration,
    pub p: usize,
}

impl WedgeQuery {
    pub fn new(base: PointConfiguration, p: usize) -> Self {
        Self { base, p }
    }

    /// Whether the wedge power is nonempty, i.e. `p <= |base|`.
    pub fn in_range(&self) -> bool {
        self.p <= self.base.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeOutput {
    pub points: PointConfiguration,
    /// Set when `p` exceeded the base size and the result is empty by definition.
    pub out_of_range: bool,
}

pub fn wedge_power(q: &WedgeQuery, method: Method) -> Result<WedgeOutput> {
    if !q.in_range() {
        return Ok(WedgeOutput {
            points: PointConfiguration::empty(q.base.dim())?,
            out_of_range: true,
        });
    }
    let points = if q.p == 0 {
        // the empty sum, also for an empty base
        PointConfiguration::new(q.base.dim(), [LatticePoint::origin(q.base.dim())?])?
    } else {
        match method {
            Method::Dp => WedgeBitmap::compute(&q.base, q.p)?.to_configuration(),
            Method::Naive => naive::naive_wedge(&q.base, q.p)?,
        }
    };
    Ok(WedgeOutput {
        points,
        out_of_range: false,
    })
}

/// DP wedge power; empty when `p > |base|`.
pub fn wedge(base: &PointConfiguration, p: usize) -> Result<PointConfiguration> {
    Ok(wedge_power(&WedgeQuery::new(base.clone(), p), Method::Dp)?.points)
}

/// The sum `u0` of all base points; reflecting through it swaps `p` and `N - p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementPivot {
    pub u0: LatticePoint,
}

impl ComplementPivot {
    pub fn new(base: &PointConfiguration) -> Result<Self> {
        Ok(Self { u0: base.sum()? })
    }

    pub fn reflect(&self, s: &PointConfiguration) -> Result<PointConfiguration> {
        s.reflect_through(&self.u0)
    }
}

/// `u0 - wedge(s, p)`, which equals `wedge(s, N - p)`.
pub fn reflect_complement(s: &PointConfiguration, p: usize) -> Result<PointConfiguration> {
    if p > s.len() {
        return Err(Error::InvalidArgument(format!(
            "p = {p} exceeds the configuration size {}",
            s.len()
        )));
    }
    ComplementPivot::new(s)?.reflect(&wedge(s, p)?)
}

/// Outcome of a lattice-convexity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Lattice points of the hull that are absent from the set.
    pub missing: PointConfiguration,
    pub cardinality: usize,
}

impl Serialize for ConvexityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConvexityReport", 3)?;
        st.serialize_field("convex", &self.convex)?;
        st.serialize_field("missing", self.missing.points())?;
        st.serialize_field("cardinality", &self.cardinality)?;
        st.end()
    }
}

/// Compares a one- or two-dimensional set against the lattice points of its hull.
///
/// The empty set is reported convex.
pub fn check_lattice_convex(s: &PointConfiguration) -> Result<ConvexityReport> {
    if s.dim() == 3 {
        return Err(Error::InvalidArgument(
            "lattice-convexity of spatial sets is only refuted by explicit witnesses; \
             see the counterexample module"
                .into(),
        ));
    }
    if s.is_empty() {
        return Ok(ConvexityReport {
            convex: true,
            missing: s.clone(),
            cardinality: 0,
        });
    }
    let filled = lattice_points_of_polytope(&convex_hull(s)?)?;
    let missing = filled.difference(s);
    Ok(ConvexityReport {
        convex: missing.is_empty(),
        missing,
        cardinality: s.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> PointConfiguration {
        PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)])
    }

    fn square() -> PointConfiguration {
        PointConfiguration::from_xy(&[(0, 0), (1, 0), (0, 1), (1, 1)])
    }

    fn both(s: &PointConfiguration, p: usize) -> PointConfiguration {
        let q = WedgeQuery::new(s.clone(), p);
        let a = wedge_power(&q, Method::Dp).unwrap();
        let b = wedge_power(&q, Method::Naive).unwrap();
        assert_eq!(a, b);
        a.points
    }

    #[test]
    fn e1_second_power() {
        assert_eq!(
            both(&e1(), 2),
            PointConfiguration::from_xy(&[(-1, -1), (-1, 0), (0, -1), (1, 0), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn square_second_power() {
        assert_eq!(
            both(&square(), 2),
            PointConfiguration::from_xy(&[(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn empty_and_full_sums() {
        let s = e1();
        assert_eq!(both(&s, 0), PointConfiguration::from_xy(&[(0, 0)]));
        assert_eq!(both(&s, 4).points(), &[s.sum().unwrap()]);
        let out = wedge_power(&WedgeQuery::new(s.clone(), 5), Method::Dp).unwrap();
        assert!(out.out_of_range);
        assert!(out.points.is_empty());
        let empty = PointConfiguration::empty(2).unwrap();
        assert_eq!(both(&empty, 0), PointConfiguration::from_xy(&[(0, 0)]));
    }

    #[test]
    fn collinear_second_power() {
        let line = PointConfiguration::from_xy(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
        let w = both(&line, 2);
        assert_eq!(
            w,
            PointConfiguration::from_xy(&(1..=7).map(|j| (j, 0)).collect::<Vec<_>>())
        );
        assert_eq!(w.len(), 2 * (5 - 2) + 1);
    }

    #[test]
    fn complement_examples() {
        let s = e1();
        // u0 = (0,0) and N - p = p, so the reflection is the negated set
        assert_eq!(ComplementPivot::new(&s).unwrap().u0, LatticePoint::xy(0, 0));
        let r = reflect_complement(&s, 2).unwrap();
        assert_eq!(r, wedge(&s, 2).unwrap());
        assert_eq!(
            r,
            wedge(&s, 2)
                .unwrap()
                .reflect_through(&LatticePoint::xy(0, 0))
                .unwrap()
        );
        assert_eq!(reflect_complement(&s, 0).unwrap(), wedge(&s, 4).unwrap());
        let sq = reflect_complement(&square(), 1).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq, both(&square(), 3));
        assert!(reflect_complement(&s, 5).is_err());
    }

    #[test]
    fn convexity_examples() {
        let r = check_lattice_convex(&wedge(&e1(), 2).unwrap()).unwrap();
        assert!(!r.convex);
        assert_eq!(r.missing, PointConfiguration::from_xy(&[(0, 0)]));
        assert_eq!(r.cardinality, 6);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"convex":false,"missing":[[0,0]],"cardinality":6}"#
        );
        let single = check_lattice_convex(&PointConfiguration::from_xy(&[(5, -2)])).unwrap();
        assert!(single.convex);
        let s3 = PointConfiguration::new(3, [LatticePoint::xyz(0, 0, 0)]).unwrap();
        assert!(check_lattice_convex(&s3).is_err());
    }

    #[test]
    fn e3_third_power_has_three_full_rows() {
        let e3 = crate::unimodular::exceptional_triangle(3).unwrap();
        let w = both(&e3, 3);
        let mut expected = Vec::new();
        expected.extend((1..=5).map(|x| (x, 1)));
        expected.extend((-1..=6).map(|x| (x, 0)));
        expected.extend((0..=4).map(|x| (x, -1)));
        assert_eq!(w, PointConfiguration::from_xy(&expected));
        assert_eq!(w.len(), 18);
        assert!(check_lattice_convex(&w).unwrap().convex);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("dp".parse::<Method>().unwrap(), Method::Dp);
        assert_eq!("naive".parse::<Method>().unwrap(), Method::Naive);
        assert!("fast".parse::<Method>().is_err());
    }
}
