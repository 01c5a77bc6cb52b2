//! Exact convex hulls of planar point sets and lattice point enumeration.

use crate::error::{Error, Result};
use crate::membership::point_in_hull;
use crate::point::{LatticePoint, PointConfiguration};

/// Twice the signed area of the triangle `a b c`; positive for a left turn.
#[inline]
pub fn orientation(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> i128 {
    let (ax, ay) = (a.x() as i128, a.y() as i128);
    let (bx, by) = (b.x() as i128, b.y() as i128);
    let (cx, cy) = (c.x() as i128, c.y() as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Convex hull of a nonempty planar (or linear) point set.
///
/// For `dim_intrinsic == 2` the vertices run counterclockwise starting from the
/// lexicographically smallest one, and no three consecutive vertices are collinear.
/// A segment lists its two endpoints in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim_ambient: usize,
    dim_intrinsic: usize,
    vertices: Vec<LatticePoint>,
}

impl Polytope {
    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_intrinsic(&self) -> usize {
        self.dim_intrinsic
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Twice the enclosed area; zero for degenerate hulls.
    pub fn double_area(&self) -> i128 {
        if self.dim_intrinsic < 2 {
            return 0;
        }
        let v = &self.vertices;
        (1..v.len() - 1)
            .map(|i| orientation(&v[0], &v[i], &v[i + 1]))
            .sum()
    }

    /// Closed-set membership by exact orientation tests.
    pub fn contains(&self, q: &LatticePoint) -> bool {
        if q.dim() != self.dim_ambient {
            return false;
        }
        let v = &self.vertices;
        match (self.dim_ambient, self.dim_intrinsic) {
            (_, 0) => v[0] == *q,
            (1, _) => v[0] <= *q && *q <= v[1],
            (_, 1) => orientation(&v[0], &v[1], q) == 0 && v[0] <= *q && *q <= v[1],
            _ => (0..v.len()).all(|i| orientation(&v[i], &v[(i + 1) % v.len()], q) >= 0),
        }
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_point_count(&self) -> u128 {
        match self.dim_intrinsic {
            0 => 1,
            1 => edge_lattice_length(&self.vertices[0], &self.vertices[1]) + 1,
            _ => {
                let v = &self.vertices;
                (0..v.len())
                    .map(|i| edge_lattice_length(&v[i], &v[(i + 1) % v.len()]))
                    .sum()
            }
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of primitive steps between two lattice points.
fn edge_lattice_length(a: &LatticePoint, b: &LatticePoint) -> u128 {
    a.wide()
        .iter()
        .zip(b.wide())
        .fold(0, |g, (x, y)| gcd(g, (y - x).unsigned_abs()))
}

fn require_planar(s: &PointConfiguration) -> Result<()> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: s.dim(),
        });
    }
    if s.is_empty() {
        return Err(Error::Empty);
    }
    Ok(())
}

/// Monotone chain hull of a planar configuration.
pub fn convex_hull_2d(s: &PointConfiguration) -> Result<Polytope> {
    require_planar(s)?;
    let pts = s.points();
    if pts.len() == 1 {
        return Ok(Polytope {
            dim_ambient: 2,
            dim_intrinsic: 0,
            vertices: vec![pts[0]],
        });
    }
    // points are already lexicographically sorted and distinct
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(pts.len() + 1);
    for p in pts {
        while hull.len() >= 2 && orientation(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orientation(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    let dim_intrinsic = if hull.len() == 2 { 1 } else { 2 };
    Ok(Polytope {
        dim_ambient: 2,
        dim_intrinsic,
        vertices: hull,
    })
}

/// Hull of a one- or two-dimensional configuration.
pub fn convex_hull(s: &PointConfiguration) -> Result<Polytope> {
    match s.dim() {
        1 => {
            let (first, last) = match (s.points().first(), s.points().last()) {
                (Some(a), Some(b)) => (*a, *b),
                _ => return Err(Error::Empty),
            };
            if first == last {
                Ok(Polytope {
                    dim_ambient: 1,
                    dim_intrinsic: 0,
                    vertices: vec![first],
                })
            } else {
                Ok(Polytope {
                    dim_ambient: 1,
                    dim_intrinsic: 1,
                    vertices: vec![first, last],
                })
            }
        }
        2 => convex_hull_2d(s),
        d => Err(Error::DimensionMismatch {
            expected: 2,
            found: d,
        }),
    }
}

fn floor_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    n.div_euclid(d)
}

fn ceil_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    -((-n).div_euclid(d))
}

/// All integer points inside or on `p`, canonically ordered.
pub fn lattice_points_of_polytope(p: &Polytope) -> Result<PointConfiguration> {
    let v = &p.vertices;
    match (p.dim_ambient, p.dim_intrinsic) {
        (3, _) => Err(Error::UnsupportedDimension(3)),
        (_, 0) => PointConfiguration::new(p.dim_ambient, [v[0]]),
        (_, 1) => {
            let (a, b) = (v[0], v[1]);
            let steps = edge_lattice_length(&a, &b);
            let wa = a.wide();
            let wb = b.wide();
            let mut out = Vec::with_capacity(steps as usize + 1);
            for k in 0..=steps as i128 {
                let c: Vec<i128> = (0..p.dim_ambient)
                    .map(|i| wa[i] + (wb[i] - wa[i]) / steps as i128 * k)
                    .collect();
                out.push(LatticePoint::from_wide(&c)?);
            }
            PointConfiguration::new(p.dim_ambient, out)
        }
        _ => {
            let ymin = v.iter().map(|q| q.y()).min().unwrap();
            let ymax = v.iter().map(|q| q.y()).max().unwrap();
            let mut out = Vec::new();
            for y in ymin..=ymax {
                let yw = y as i128;
                // row extent as rationals num/den, den > 0
                let mut lo: Option<(i128, i128)> = None;
                let mut hi: Option<(i128, i128)> = None;
                let mut push = |num: i128, den: i128| {
                    if lo.is_none_or(|(ln, ld)| num * ld < ln * den) {
                        lo = Some((num, den));
                    }
                    if hi.is_none_or(|(hn, hd)| num * hd > hn * den) {
                        hi = Some((num, den));
                    }
                };
                for i in 0..v.len() {
                    let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                    let (ax, ay) = (a.x() as i128, a.y() as i128);
                    let (bx, by) = (b.x() as i128, b.y() as i128);
                    if ay == by {
                        if ay == yw {
                            push(ax, 1);
                            push(bx, 1);
                        }
                        continue;
                    }
                    if yw < ay.min(by) || yw > ay.max(by) {
                        continue;
                    }
                    let mut num = ax * (by - ay) + (yw - ay) * (bx - ax);
                    let mut den = by - ay;
                    if den < 0 {
                        num = -num;
                        den = -den;
                    }
                    push(num, den);
                }
                if let (Some((ln, ld)), Some((hn, hd))) = (lo, hi) {
                    for x in ceil_div(ln, ld)..=floor_div(hn, hd) {
                        out.push(LatticePoint::from_wide(&[x, yw])?);
                    }
                }
            }
            // rows are produced by y; canonical order is by x first
            PointConfiguration::new(2, out)
        }
    }
}

/// Extremal points of `conv(s)`.
///
/// Planar and linear inputs go through the hull; spatial inputs test each
/// point against the hull of the others.
pub fn vertex_set(s: &PointConfiguration) -> Result<PointConfiguration> {
    if s.is_empty() {
        return Err(Error::Empty);
    }
    match s.dim() {
        1 | 2 => {
            let hull = convex_hull(s)?;
            PointConfiguration::new(s.dim(), hull.vertices().iter().copied())
        }
        _ => {
            let mut verts = Vec::new();
            for p in s {
                let rest = s.without(p);
                if rest.is_empty() || !point_in_hull(&rest, p)? {
                    verts.push(*p);
                }
            }
            PointConfiguration::new(s.dim(), verts)
        }
    }
}

/// `s` without the vertex `v`; rejects points that are not extremal.
pub fn remove_vertex(s: &PointConfiguration, v: &LatticePoint) -> Result<PointConfiguration> {
    if !vertex_set(s)?.contains(v) {
        return Err(Error::NotAVertex(*v));
    }
    Ok(s.without(v))
}

/// True when `s` is exactly the set of lattice points of its own hull.
pub fn is_lattice_convex(s: &PointConfiguration) -> Result<bool> {
    if s.is_empty() {
        return Ok(true);
    }
    let hull = convex_hull(s)?;
    Ok(lattice_points_of_polytope(&hull)?.len() == s.len())
}
