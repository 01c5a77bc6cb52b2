//! Affine unimodular maps and lattice equivalence of planar configurations.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hull::{convex_hull_2d, lattice_points_of_polytope, orientation};
use crate::membership::affine_dimension;
use crate::point::{LatticePoint, PointConfiguration, MAX_DIM};

type Matrix = [[i128; MAX_DIM]; MAX_DIM];

fn det_n(m: &Matrix, n: usize) -> i128 {
    match n {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }
}

/// Adjugate of the leading `n x n` block, so that `m * adj = det * I`.
fn adjugate(m: &Matrix, n: usize) -> Matrix {
    let mut adj = [[0; MAX_DIM]; MAX_DIM];
    match n {
        1 => adj[0][0] = 1,
        2 => {
            adj[0][0] = m[1][1];
            adj[0][1] = -m[0][1];
            adj[1][0] = -m[1][0];
            adj[1][1] = m[0][0];
        }
        _ => {
            for i in 0..3 {
                for j in 0..3 {
                    let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
                    let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                    let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
                    adj[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
                }
            }
        }
    }
    adj
}

fn mat_mul(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    let mut out = [[0; MAX_DIM]; MAX_DIM];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = (0..n).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::ArithmeticOverflow(what))
}

/// `x -> matrix * x + translation` with `det(matrix) = +-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineUnimodularMap {
    dim: usize,
    matrix: [[i64; MAX_DIM]; MAX_DIM],
    translation: [i64; MAX_DIM],
}

impl AffineUnimodularMap {
    pub fn new(matrix: &[Vec<i64>], translation: &[i64]) -> Result<Self> {
        let dim = matrix.len();
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if translation.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: translation.len(),
            });
        }
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            m[i][..dim].copy_from_slice(row);
        }
        let mut t = [0; MAX_DIM];
        t[..dim].copy_from_slice(translation);
        Self::from_parts(dim, m, t)
    }

    fn from_parts(
        dim: usize,
        matrix: [[i64; MAX_DIM]; MAX_DIM],
        translation: [i64; MAX_DIM],
    ) -> Result<Self> {
        let map = Self {
            dim,
            matrix,
            translation,
        };
        let d = map.determinant();
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        Ok(map)
    }

    fn from_wide(dim: usize, m: &Matrix, t: &[i128; MAX_DIM]) -> Result<Self> {
        let mut matrix = [[0; MAX_DIM]; MAX_DIM];
        let mut translation = [0; MAX_DIM];
        for i in 0..dim {
            for j in 0..dim {
                matrix[i][j] = narrow(m[i][j], "map matrix")?;
            }
            translation[i] = narrow(t[i], "map translation")?;
        }
        Self::from_parts(dim, matrix, translation)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for (i, row) in m.iter_mut().enumerate().take(dim) {
            row[i] = 1;
        }
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Self::from_parts(dim, m, [0; MAX_DIM])
    }

    pub fn translation_by(t: &LatticePoint) -> Self {
        let mut map = Self::identity(t.dim()).expect("point dimension is valid");
        map.translation[..t.dim()].copy_from_slice(t.coords());
        map
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|i| self.matrix[i][..self.dim].to_vec())
            .collect()
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation[..self.dim]
    }

    fn wide_matrix(&self) -> Matrix {
        let mut m = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..MAX_DIM {
            for j in 0..MAX_DIM {
                m[i][j] = self.matrix[i][j] as i128;
            }
        }
        m
    }

    fn wide_translation(&self) -> [i128; MAX_DIM] {
        self.translation.map(|t| t as i128)
    }

    pub fn determinant(&self) -> i128 {
        det_n(&self.wide_matrix(), self.dim)
    }

    /// Image of the linear part only.
    pub fn apply_linear(&self, p: &LatticePoint) -> Result<LatticePoint> {
        self.check_point(p)?;
        let m = self.wide_matrix();
        let w = p.wide();
        let out: Vec<i128> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| m[i][j] * w[j]).sum())
            .collect();
        LatticePoint::from_wide(&out)
    }

    pub fn apply(&self, p: &LatticePoint) -> Result<LatticePoint> {
        let lin = self.apply_linear(p)?;
        let t = self.wide_translation();
        let out: Vec<i128> = (0..self.dim)
            .map(|i| lin.coords()[i] as i128 + t[i])
            .collect();
        LatticePoint::from_wide(&out)
    }

    fn check_point(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            })
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let a = self.wide_matrix();
        let m = mat_mul(&a, &other.wide_matrix(), self.dim);
        let ot = other.wide_translation();
        let st = self.wide_translation();
        let mut t = [0; MAX_DIM];
        for i in 0..self.dim {
            t[i] = (0..self.dim).map(|j| a[i][j] * ot[j]).sum::<i128>() + st[i];
        }
        Self::from_wide(self.dim, &m, &t)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.determinant();
        let adj = adjugate(&self.wide_matrix(), self.dim);
        let mut inv = [[0; MAX_DIM]; MAX_DIM];
        for i in 0..self.dim {
            for j in 0..self.dim {
                inv[i][j] = adj[i][j] * d;
            }
        }
        let t = self.wide_translation();
        let mut ti = [0; MAX_DIM];
        for i in 0..self.dim {
            ti[i] = -(0..self.dim).map(|j| inv[i][j] * t[j]).sum::<i128>();
        }
        Self::from_wide(self.dim, &inv, &ti)
    }
}

impl Serialize for AffineUnimodularMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineUnimodularMap", 2)?;
        st.serialize_field("matrix", &self.matrix())?;
        st.serialize_field("translation", self.translation())?;
        st.end()
    }
}

/// Image of a configuration under `t`.
pub fn apply_map(t: &AffineUnimodularMap, s: &PointConfiguration) -> Result<PointConfiguration> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: s.dim(),
        });
    }
    let image = s.iter().map(|p| t.apply(p)).collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(s.dim(), image)
}

fn require_planar(s: &PointConfiguration) -> Result<()> {
    if s.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 2,
            found: s.dim(),
        })
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A determinant-one matrix whose first column is the primitive vector `d`.
fn complete_basis(d: [i128; 2]) -> Matrix {
    let (g, u, v) = ext_gcd(d[0], d[1]);
    debug_assert_eq!(g, 1);
    // d0*u + d1*v = 1, so [[d0, -v], [d1, u]] has determinant 1
    let mut m = [[0; MAX_DIM]; MAX_DIM];
    m[0][0] = d[0];
    m[1][0] = d[1];
    m[0][1] = -v;
    m[1][1] = u;
    m
}

fn try_candidate(
    s: &PointConfiguration,
    t: &PointConfiguration,
    m: &Matrix,
    from: &LatticePoint,
    to: &LatticePoint,
) -> Option<AffineUnimodularMap> {
    let fw = from.wide();
    let tw = to.wide();
    let mut trans = [0; MAX_DIM];
    for i in 0..2 {
        trans[i] = tw[i] - (m[i][0] * fw[0] + m[i][1] * fw[1]);
    }
    let map = AffineUnimodularMap::from_wide(2, m, &trans).ok()?;
    match apply_map(&map, s) {
        Ok(image) if image == *t => Some(map),
        _ => None,
    }
}

fn equivalent_collinear(
    s: &PointConfiguration,
    t: &PointConfiguration,
) -> Option<AffineUnimodularMap> {
    let direction = |c: &PointConfiguration| -> ([i128; 2], Vec<i128>) {
        let first = c.points()[0].wide();
        let last = c.points()[c.len() - 1].wide();
        let delta = [last[0] - first[0], last[1] - first[1]];
        let g = gcd(delta[0], delta[1]);
        let dir = [delta[0] / g, delta[1] / g];
        let axis = if dir[0] != 0 { 0 } else { 1 };
        let offsets = c
            .iter()
            .map(|p| (p.wide()[axis] - first[axis]) / dir[axis])
            .collect();
        (dir, offsets)
    };
    let (ds, os) = direction(s);
    let (dt, ot) = direction(t);
    let length = *os.last().unwrap();
    if length != *ot.last().unwrap() {
        return None;
    }
    let ds_basis = complete_basis(ds);
    let ds_inv = adjugate(&ds_basis, 2);
    let candidates = [
        (dt, s.points()[0], t.points()[0], os == ot),
        ([-dt[0], -dt[1]], s.points()[0], t.points()[t.len() - 1], {
            let mut mirrored: Vec<i128> = os.iter().map(|o| length - o).collect();
            mirrored.reverse();
            mirrored == ot
        }),
    ];
    for (target_dir, from, to, offsets_match) in candidates {
        if !offsets_match {
            continue;
        }
        let m = mat_mul(&complete_basis(target_dir), &ds_inv, 2);
        if let Some(map) = try_candidate(s, t, &m, &from, &to) {
            return Some(map);
        }
    }
    None
}

/// A unimodular affine map taking `s` onto `t`, if one exists.
///
/// For full-dimensional inputs an ordered triple of hull vertices of `s` is
/// fixed and matched against every ordered triple of hull vertices of `t`;
/// each match determines at most one affine map, which is kept when it is
/// integral and carries `s` onto `t`.
pub fn are_equivalent(
    s: &PointConfiguration,
    t: &PointConfiguration,
) -> Result<Option<AffineUnimodularMap>> {
    require_planar(s)?;
    require_planar(t)?;
    if s.len() != t.len() {
        return Ok(None);
    }
    if s.is_empty() {
        return Ok(Some(AffineUnimodularMap::identity(2)?));
    }
    let rank = affine_dimension(s);
    if rank != affine_dimension(t) {
        return Ok(None);
    }
    match rank {
        0 => {
            let shift = t.points()[0].checked_sub(&s.points()[0])?;
            Ok(Some(AffineUnimodularMap::translation_by(&shift)))
        }
        1 => Ok(equivalent_collinear(s, t)),
        _ => {
            let hs = convex_hull_2d(s)?;
            let ht = convex_hull_2d(t)?;
            let (vs, vt) = (hs.vertices(), ht.vertices());
            if vs.len() != vt.len() || hs.double_area() != ht.double_area() {
                return Ok(None);
            }
            let (a, b, c) = (vs[0], vs[1], vs[2]);
            let base_det = orientation(&a, &b, &c);
            let (aw, bw, cw) = (a.wide(), b.wide(), c.wide());
            let mut basis = [[0; MAX_DIM]; MAX_DIM];
            for i in 0..2 {
                basis[i][0] = bw[i] - aw[i];
                basis[i][1] = cw[i] - aw[i];
            }
            let basis_adj = adjugate(&basis, 2);
            for (i, a2) in vt.iter().enumerate() {
                for (j, b2) in vt.iter().enumerate() {
                    for (k, c2) in vt.iter().enumerate() {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        if orientation(a2, b2, c2).abs() != base_det.abs() {
                            continue;
                        }
                        let (a2w, b2w, c2w) = (a2.wide(), b2.wide(), c2.wide());
                        let mut image = [[0; MAX_DIM]; MAX_DIM];
                        for r in 0..2 {
                            image[r][0] = b2w[r] - a2w[r];
                            image[r][1] = c2w[r] - a2w[r];
                        }
                        let scaled = mat_mul(&image, &basis_adj, 2);
                        if scaled
                            .iter()
                            .take(2)
                            .any(|row| row[..2].iter().any(|v| v % base_det != 0))
                        {
                            continue;
                        }
                        let mut m = [[0; MAX_DIM]; MAX_DIM];
                        for r in 0..2 {
                            for q in 0..2 {
                                m[r][q] = scaled[r][q] / base_det;
                            }
                        }
                        if let Some(map) = try_candidate(s, t, &m, &a, a2) {
                            return Ok(Some(map));
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Lattice points of the exceptional triangle `conv{(0,1), (k,0), (-1,-1)}`.
pub fn exceptional_triangle(k: u64) -> Result<PointConfiguration> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "exceptional family starts at k = 1".into(),
        ));
    }
    let k = i64::try_from(k).map_err(|_| Error::ArithmeticOverflow("exceptional index"))?;
    let corners = PointConfiguration::new(
        2,
        [
            LatticePoint::xy(0, 1),
            LatticePoint::new(&[k, 0])?,
            LatticePoint::xy(-1, -1),
        ],
    )?;
    lattice_points_of_polytope(&convex_hull_2d(&corners)?)
}

/// The `k` for which `s` is equivalent to the exceptional triangle with
/// `k + 3` lattice points, if any.
pub fn exception_index(s: &PointConfiguration) -> Result<Option<u64>> {
    require_planar(s)?;
    if s.len() < 4 {
        return Ok(None);
    }
    let hull = convex_hull_2d(s)?;
    // cheap filters: a triangle with three boundary points
    if hull.vertices().len() != 3 || hull.boundary_point_count() != 3 {
        return Ok(None);
    }
    let k = (s.len() - 3) as u64;
    let e = exceptional_triangle(k)?;
    Ok(are_equivalent(s, &e)?.map(|_| k))
}

/// A lattice basis of an affine lattice plane in `Z^3`.
///
/// The direction lattice `{v in Z^3 : <n, v> = 0}` for the primitive normal
/// `n` is found by column-reducing `n` with a unimodular matrix `U`; the last
/// two columns of `U` are a basis, and `U^-1 (x - origin)` reads off the
/// coordinates of a point `x` of the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneLattice {
    origin: LatticePoint,
    normal: [i128; 3],
    /// `U^-1`; its first row is `+-n`.
    to_plane: Matrix,
}

impl PlaneLattice {
    /// The plane spanned by a configuration of affine dimension exactly two.
    pub fn spanned_by(s: &PointConfiguration) -> Result<Self> {
        if s.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: s.dim(),
            });
        }
        if affine_dimension(s) != 2 {
            return Err(Error::InvalidArgument(
                "points must span exactly a plane".into(),
            ));
        }
        let origin = s.points()[0];
        let base = origin.wide();
        let diffs: Vec<[i128; 3]> = s
            .iter()
            .map(|p| {
                let w = p.wide();
                [w[0] - base[0], w[1] - base[1], w[2] - base[2]]
            })
            .collect();
        let cross = |a: &[i128; 3], b: &[i128; 3]| {
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        };
        let normal = diffs
            .iter()
            .flat_map(|a| diffs.iter().map(move |b| (a, b)))
            .map(|(a, b)| cross(a, b))
            .find(|n| n.iter().any(|&c| c != 0))
            .expect("affine dimension two");
        let g = gcd(gcd(normal[0], normal[1]), normal[2]);
        let normal = normal.map(|c| c / g);

        let mut row = normal;
        let mut u: Matrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        loop {
            let nonzero: Vec<usize> = (0..3).filter(|&j| row[j] != 0).collect();
            if nonzero == [0] {
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&j| row[j].abs()).unwrap();
            if pivot != 0 {
                row.swap(0, pivot);
                for r in u.iter_mut() {
                    r.swap(0, pivot);
                }
            }
            for j in 1..3 {
                let q = row[j].div_euclid(row[0]);
                row[j] -= q * row[0];
                for r in u.iter_mut() {
                    r[j] -= q * r[0];
                }
            }
        }
        let du = det_n(&u, 3);
        let mut to_plane = adjugate(&u, 3);
        for r in to_plane.iter_mut() {
            for c in r.iter_mut() {
                *c *= du;
            }
        }
        Ok(Self {
            origin,
            normal,
            to_plane,
        })
    }

    /// Primitive normal vector of the plane.
    pub fn normal(&self) -> [i128; 3] {
        self.normal
    }

    /// Planar coordinates of `x - k * origin` for a point `x` on the
    /// `k`-fold dilated plane (`k = 1` for points of the plane itself).
    ///
    /// Coordinates are additive: the coordinates of a sum of `k` plane
    /// points at level `k` are the sum of their coordinates.
    pub fn coordinates_at(&self, x: &LatticePoint, k: i64) -> Result<LatticePoint> {
        if x.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: x.dim(),
            });
        }
        let w = x.wide();
        let o = self.origin.wide();
        let d = [
            w[0] - k as i128 * o[0],
            w[1] - k as i128 * o[1],
            w[2] - k as i128 * o[2],
        ];
        let c: Vec<i128> = (0..3)
            .map(|i| (0..3).map(|j| self.to_plane[i][j] * d[j]).sum())
            .collect();
        if c[0] != 0 {
            return Err(Error::InvalidArgument(format!(
                "{x} is not on the {k}-fold plane"
            )));
        }
        LatticePoint::from_wide(&c[1..])
    }

    pub fn coordinates(&self, x: &LatticePoint) -> Result<LatticePoint> {
        self.coordinates_at(x, 1)
    }
}

/// Coordinates of a coplanar spatial configuration with respect to a lattice
/// basis of its plane; well defined up to unimodular equivalence.
pub fn lattice_plane_coordinates(s: &PointConfiguration) -> Result<PointConfiguration> {
    let plane = PlaneLattice::spanned_by(s)?;
    let coords = s
        .iter()
        .map(|p| plane.coordinates(p))
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(2, coords)
}
