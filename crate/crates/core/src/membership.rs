//! Exact convex-combination feasibility.
//!
//! A point lies in `conv(S)` iff it lies in the simplex spanned by some
//! `r + 1` affinely independent points of `S`, where `r` is the affine
//! dimension of `S`. Each candidate simplex is solved with Cramer's rule over
//! `i128`, so the certificate is an exact rational combination.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointConfiguration, MAX_DIM};

type Vector = [i128; MAX_DIM];

fn sub(a: &Vector, b: &Vector) -> Vector {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Determinant of a square matrix of size 0..=3 given as rows.
fn det(m: &[&[i128]]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("dimension at most 3"),
    }
}

/// `q` written as `sum(weights[i] * points[i]) / denominator` with
/// nonnegative weights summing to `denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCombination {
    pub points: Vec<LatticePoint>,
    pub weights: Vec<i128>,
    pub denominator: i128,
}

impl ConvexCombination {
    /// Re-checks the certificate with plain integer arithmetic.
    pub fn certifies(&self, q: &LatticePoint) -> bool {
        if self.denominator <= 0
            || self.weights.iter().any(|&w| w < 0)
            || self.weights.iter().sum::<i128>() != self.denominator
        {
            return false;
        }
        (0..q.dim()).all(|i| {
            let lhs: i128 = self
                .points
                .iter()
                .zip(&self.weights)
                .map(|(p, &w)| w * p.coords()[i] as i128)
                .sum();
            lhs == self.denominator * q.coords()[i] as i128
        })
    }
}

/// Affine dimension of a nonempty configuration.
pub fn affine_dimension(s: &PointConfiguration) -> usize {
    let pts: Vec<Vector> = s.iter().map(|p| p.wide()).collect();
    let Some(base) = pts.first() else { return 0 };
    let diffs: Vec<Vector> = pts.iter().map(|p| sub(p, base)).collect();
    let Some(e1) = diffs.iter().find(|d| d.iter().any(|&c| c != 0)) else {
        return 0;
    };
    let cross = |a: &Vector, b: &Vector| -> Vector {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let Some(e2) = diffs.iter().find(|d| cross(e1, d).iter().any(|&c| c != 0)) else {
        return 1;
    };
    let n = cross(e1, e2);
    if diffs
        .iter()
        .any(|d| n[0] * d[0] + n[1] * d[1] + n[2] * d[2] != 0)
    {
        3
    } else {
        2
    }
}

/// Barycentric solve of `q` against the simplex `vertices`; `None` when the
/// vertices are affinely dependent, `q` is off their affine span, or some
/// weight is negative.
fn solve_simplex(vertices: &[Vector], q: &Vector, dim: usize) -> Option<(Vec<i128>, i128)> {
    let k = vertices.len() - 1;
    let edges: Vec<Vector> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
    let target = sub(q, &vertices[0]);
    for rows in (0..dim).combinations(k) {
        // square system restricted to `rows`, columns are the edges
        let m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&r| edges.iter().map(|e| e[r]).collect())
            .collect();
        let m_ref: Vec<&[i128]> = m.iter().map(|r| r.as_slice()).collect();
        let d = det(&m_ref);
        if d == 0 {
            continue;
        }
        let mut lambdas = Vec::with_capacity(k);
        for j in 0..k {
            let mj: Vec<Vec<i128>> = rows
                .iter()
                .enumerate()
                .map(|(ri, &r)| {
                    let mut row = m[ri].clone();
                    row[j] = target[r];
                    row
                })
                .collect();
            let mj_ref: Vec<&[i128]> = mj.iter().map(|r| r.as_slice()).collect();
            lambdas.push(det(&mj_ref));
        }
        // every coordinate, not just the chosen rows, must match
        let consistent = (0..dim).all(|r| {
            let lhs: i128 = edges.iter().zip(&lambdas).map(|(e, l)| e[r] * l).sum();
            lhs == target[r] * d
        });
        if !consistent {
            return None;
        }
        let (lambdas, d) = if d < 0 {
            (lambdas.iter().map(|l| -l).collect::<Vec<_>>(), -d)
        } else {
            (lambdas, d)
        };
        let w0 = d - lambdas.iter().sum::<i128>();
        if w0 < 0 || lambdas.iter().any(|&l| l < 0) {
            return None;
        }
        let mut weights = Vec::with_capacity(k + 1);
        weights.push(w0);
        weights.extend(lambdas);
        return Some((weights, d));
    }
    None
}

/// An exact certificate that `q` lies in `conv(s)`, if it does.
pub fn convex_combination(
    s: &PointConfiguration,
    q: &LatticePoint,
) -> Result<Option<ConvexCombination>> {
    if s.is_empty() {
        return Err(Error::Empty);
    }
    if q.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: q.dim(),
        });
    }
    let (lo, hi) = (s.min_corner().unwrap(), s.max_corner().unwrap());
    if (0..s.dim()).any(|i| q.coords()[i] < lo.coords()[i] || q.coords()[i] > hi.coords()[i]) {
        return Ok(None);
    }
    if s.contains(q) {
        return Ok(Some(ConvexCombination {
            points: vec![*q],
            weights: vec![1],
            denominator: 1,
        }));
    }
    let r = affine_dimension(s);
    let wide: Vec<Vector> = s.iter().map(|p| p.wide()).collect();
    let qw = q.wide();
    for idx in (0..wide.len()).combinations(r + 1) {
        let verts: Vec<Vector> = idx.iter().map(|&i| wide[i]).collect();
        if let Some((weights, denominator)) = solve_simplex(&verts, &qw, s.dim()) {
            let combo = ConvexCombination {
                points: idx.iter().map(|&i| s.points()[i]).collect(),
                weights,
                denominator,
            };
            debug_assert!(combo.certifies(q));
            return Ok(Some(combo));
        }
    }
    Ok(None)
}

/// Exact test for `q` in `conv(s)`.
pub fn point_in_hull(s: &PointConfiguration, q: &LatticePoint) -> Result<bool> {
    Ok(convex_combination(s, q)?.is_some())
}
