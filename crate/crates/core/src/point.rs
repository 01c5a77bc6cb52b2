//! Lattice points, finite point configurations and their JSON form.
//!
//! Every coordinate is an `i64` whose magnitude is at most [`COORD_BOUND`].
//! The bound leaves enough headroom that orientation determinants and
//! barycentric solves fit in `i128` without overflow, so the geometric
//! predicates downstream are infallible. Anything that would produce a
//! coordinate past the bound reports [`Error::CoordinateOverflow`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible coordinate magnitude.
pub const COORD_BOUND: i64 = 1 << 31;

/// Ambient dimensions supported throughout the crate.
pub const MAX_DIM: usize = 3;

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

fn check_coord(c: i128) -> Result<i64> {
    if c.unsigned_abs() <= COORD_BOUND as u128 {
        Ok(c as i64)
    } else {
        Err(Error::CoordinateOverflow(c))
    }
}

/// An integer point in dimension 1, 2 or 3.
///
/// Unused trailing coordinates are stored as zero, so the derived ordering is
/// lexicographic on the used coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    coords: [i64; MAX_DIM],
    dim: u8,
}

impl LatticePoint {
    pub fn new(coords: &[i64]) -> Result<Self> {
        check_dim(coords.len())?;
        let mut c = [0; MAX_DIM];
        for (slot, &v) in c.iter_mut().zip(coords) {
            *slot = check_coord(v as i128)?;
        }
        Ok(Self {
            coords: c,
            dim: coords.len() as u8,
        })
    }

    /// Builds a point from wide intermediate values, rejecting anything past the bound.
    pub fn from_wide(coords: &[i128]) -> Result<Self> {
        check_dim(coords.len())?;
        let mut c = [0; MAX_DIM];
        for (slot, &v) in c.iter_mut().zip(coords) {
            *slot = check_coord(v)?;
        }
        Ok(Self {
            coords: c,
            dim: coords.len() as u8,
        })
    }

    /// Planar point. Panics if a coordinate exceeds [`COORD_BOUND`].
    pub fn xy(x: i64, y: i64) -> Self {
        Self::new(&[x, y]).expect("coordinate out of range")
    }

    /// Spatial point. Panics if a coordinate exceeds [`COORD_BOUND`].
    pub fn xyz(x: i64, y: i64, z: i64) -> Self {
        Self::new(&[x, y, z]).expect("coordinate out of range")
    }

    pub fn origin(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            coords: [0; MAX_DIM],
            dim: dim as u8,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn x(&self) -> i64 {
        self.coords[0]
    }

    #[inline]
    pub fn y(&self) -> i64 {
        self.coords[1]
    }

    #[inline]
    pub fn z(&self) -> i64 {
        self.coords[2]
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i128, i128) -> i128) -> Result<Self> {
        self.same_dim(other)?;
        let mut c = [0; MAX_DIM];
        for i in 0..self.dim() {
            c[i] = check_coord(f(self.coords[i] as i128, other.coords[i] as i128))?;
        }
        Ok(Self {
            coords: c,
            dim: self.dim,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut c = [0; MAX_DIM];
        for i in 0..self.dim() {
            c[i] = check_coord(self.coords[i] as i128 * k as i128)?;
        }
        Ok(Self {
            coords: c,
            dim: self.dim,
        })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    /// Coordinates widened to `i128`, padded with zeros.
    #[inline]
    pub(crate) fn wide(&self) -> [i128; MAX_DIM] {
        [
            self.coords[0] as i128,
            self.coords[1] as i128,
            self.coords[2] as i128,
        ]
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        LatticePoint::new(&v).map_err(serde::de::Error::custom)
    }
}

/// A finite, deduplicated, canonically sorted set of lattice points sharing one dimension.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationJson", into = "ConfigurationJson")]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<LatticePoint>,
}

impl PartialOrd for PointConfiguration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointConfiguration {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, &self.points).cmp(&(other.dim, &other.points))
    }
}

impl PointConfiguration {
    /// Collects `points` into a configuration, silently merging duplicates.
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        check_dim(dim)?;
        let mut points: Vec<_> = points.into_iter().collect();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self { dim, points })
    }

    /// Like [`PointConfiguration::new`] but a repeated point is an error.
    pub fn new_strict(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        check_dim(dim)?;
        let mut points: Vec<_> = points.into_iter().collect();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0]));
        }
        Ok(Self { dim, points })
    }

    /// Wraps a vector that is already sorted and duplicate free.
    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<LatticePoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        Self { dim, points }
    }

    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            points: Vec::new(),
        })
    }

    /// Planar configuration from coordinate pairs. Panics on out-of-range input.
    pub fn from_xy(pairs: &[(i64, i64)]) -> Self {
        Self::new(2, pairs.iter().map(|&(x, y)| LatticePoint::xy(x, y))).unwrap()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    /// Points of `self` absent from `other`.
    pub fn difference(&self, other: &Self) -> Self {
        let points = self
            .points
            .iter()
            .filter(|p| !other.contains(p))
            .copied()
            .collect();
        Self::from_sorted_unchecked(self.dim, points)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let points = self
            .points
            .iter()
            .filter(|p| other.contains(p))
            .copied()
            .collect();
        Self::from_sorted_unchecked(self.dim, points)
    }

    /// The configuration with `p` removed (unchanged if absent).
    pub fn without(&self, p: &LatticePoint) -> Self {
        let points = self.points.iter().filter(|q| *q != p).copied().collect();
        Self::from_sorted_unchecked(self.dim, points)
    }

    pub fn with(&self, p: LatticePoint) -> Result<Self> {
        Self::new(
            self.dim,
            self.points.iter().copied().chain(std::iter::once(p)),
        )
    }

    /// Sum of all points; the origin for an empty configuration.
    pub fn sum(&self) -> Result<LatticePoint> {
        let mut acc = [0i128; MAX_DIM];
        for p in &self.points {
            for (a, c) in acc.iter_mut().zip(p.wide()) {
                *a += c;
            }
        }
        LatticePoint::from_wide(&acc[..self.dim])
    }

    pub fn translate(&self, t: &LatticePoint) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| p.checked_add(t))
            .collect::<Result<Vec<_>>>()?;
        // translation preserves lexicographic order
        Ok(Self::from_sorted_unchecked(self.dim, points))
    }

    /// `{ c - m : m in self }`.
    pub fn reflect_through(&self, c: &LatticePoint) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| c.checked_sub(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, points)
    }

    /// Coordinate-wise minimum, or `None` when empty.
    pub fn min_corner(&self) -> Option<LatticePoint> {
        let first = self.points.first()?;
        let mut c = first.wide();
        for p in &self.points {
            for (a, v) in c.iter_mut().zip(p.wide()) {
                *a = (*a).min(v);
            }
        }
        LatticePoint::from_wide(&c[..self.dim]).ok()
    }

    /// Coordinate-wise maximum, or `None` when empty.
    pub fn max_corner(&self) -> Option<LatticePoint> {
        let first = self.points.first()?;
        let mut c = first.wide();
        for p in &self.points {
            for (a, v) in c.iter_mut().zip(p.wide()) {
                *a = (*a).max(v);
            }
        }
        LatticePoint::from_wide(&c[..self.dim]).ok()
    }

    /// Translate so the coordinate-wise minimum sits at the origin.
    pub fn normalized(&self) -> Self {
        match self.min_corner() {
            Some(m) => self
                .translate(&m.checked_neg().expect("bounded"))
                .expect("shifting by the minimum stays in range"),
            None => self.clone(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let raw: ConfigurationJson = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Json {
                path,
                message: e.into_inner().to_string(),
            }
        })?;
        raw.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&ConfigurationJson::from(self.clone())).expect("plain data")
    }
}

impl<'a> IntoIterator for &'a PointConfiguration {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Debug for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Wire form: `{"dim": n, "points": [[c1,...,cn], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

impl TryFrom<ConfigurationJson> for PointConfiguration {
    type Error = Error;

    fn try_from(raw: ConfigurationJson) -> Result<Self> {
        check_dim(raw.dim)?;
        let mut points = Vec::with_capacity(raw.points.len());
        for (i, c) in raw.points.iter().enumerate() {
            if c.len() != raw.dim {
                return Err(Error::Json {
                    path: format!("points[{i}]"),
                    message: format!("expected {} coordinates, found {}", raw.dim, c.len()),
                });
            }
            let p = LatticePoint::new(c).map_err(|e| Error::Json {
                path: format!("points[{i}]"),
                message: e.to_string(),
            })?;
            points.push(p);
        }
        PointConfiguration::new_strict(raw.dim, points)
    }
}

impl From<PointConfiguration> for ConfigurationJson {
    fn from(c: PointConfiguration) -> Self {
        Self {
            dim: c.dim,
            points: c.points.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

/// An integer linear form `m -> <coeffs, m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    coeffs: [i64; MAX_DIM],
    dim: u8,
}

impl LinearFunctional {
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        check_dim(coeffs.len())?;
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument(
                "linear functional must have a nonzero coefficient".into(),
            ));
        }
        let mut c = [0; MAX_DIM];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self {
            coeffs: c,
            dim: coeffs.len() as u8,
        })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.dim as usize]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Value at `m`; only the shared leading coordinates contribute.
    #[inline]
    pub fn eval(&self, m: &LatticePoint) -> i128 {
        debug_assert_eq!(m.dim(), self.dim());
        self.coeffs
            .iter()
            .zip(m.wide())
            .map(|(&a, c)| a as i128 * c)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_lexicographic() {
        let c = PointConfiguration::from_xy(&[(1, 0), (0, 5), (0, -1), (1, 0)]);
        assert_eq!(
            c.points(),
            &[
                LatticePoint::xy(0, -1),
                LatticePoint::xy(0, 5),
                LatticePoint::xy(1, 0)
            ]
        );
    }

    #[test]
    fn coordinate_bound_is_enforced() {
        assert!(LatticePoint::new(&[COORD_BOUND, -COORD_BOUND]).is_ok());
        assert_eq!(
            LatticePoint::new(&[COORD_BOUND + 1]),
            Err(Error::CoordinateOverflow(COORD_BOUND as i128 + 1))
        );
        let big = LatticePoint::xy(COORD_BOUND, 0);
        assert!(matches!(
            big.checked_add(&big),
            Err(Error::CoordinateOverflow(_))
        ));
    }

    #[test]
    fn json_rejects_duplicates_by_name() {
        let err = PointConfiguration::from_json_str(r#"{"dim":2,"points":[[0,1],[2,3],[0,1]]}"#)
            .unwrap_err();
        assert_eq!(err, Error::DuplicatePoint(LatticePoint::xy(0, 1)));
        assert!(err.to_string().contains("(0,1)"));
    }

    #[test]
    fn json_names_bad_field() {
        let err =
            PointConfiguration::from_json_str(r#"{"dim":2,"points":[[0,1],[2,"x"]]}"#).unwrap_err();
        match err {
            Error::Json { path, .. } => assert_eq!(path, "points[1][1]"),
            other => panic!("unexpected {other:?}"),
        }
        let err =
            PointConfiguration::from_json_str(r#"{"dim":2,"points":[[0,1],[2]]}"#).unwrap_err();
        assert!(matches!(err, Error::Json { ref path, .. } if path == "points[1]"));
        let err = PointConfiguration::from_json_str(r#"{"dim":2,"points":[[0.5,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Json { .. }));
    }

    #[test]
    fn json_round_trip() {
        let c = PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)]);
        let s = c.to_json_string();
        assert_eq!(s, r#"{"dim":2,"points":[[-1,-1],[0,0],[0,1],[1,0]]}"#);
        assert_eq!(PointConfiguration::from_json_str(&s).unwrap(), c);
    }

    #[test]
    fn sum_and_normalize() {
        let c = PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)]);
        assert_eq!(c.sum().unwrap(), LatticePoint::xy(0, 0));
        assert_eq!(
            c.normalized(),
            PointConfiguration::from_xy(&[(1, 2), (2, 1), (0, 0), (1, 1)])
        );
        assert_eq!(
            PointConfiguration::empty(3).unwrap().sum().unwrap(),
            LatticePoint::xyz(0, 0, 0)
        );
    }

    #[test]
    fn functional_rejects_zero() {
        assert!(LinearFunctional::new(&[0, 0, 0]).is_err());
        let f = LinearFunctional::new(&[5, 4, 7]).unwrap();
        assert_eq!(f.eval(&LatticePoint::xyz(2, 2, 1)), 25);
    }
}
