//! The spatial counterexample: the 42nd wedge power of the 84 lattice points
//! of the 6-fold standard simplex is not lattice-convex.
//!
//! The plane `5x + 4y + 7z = 25` through the four red points separates the 40
//! blue points (below) from the 40 olive points (above). A 42-subset
//! minimising the functional must take every blue point and two red ones, so
//! the minimal slice of the wedge power is `sum(blue) + wedge2(red)`. The red
//! quadruple is the planar four-point exception, so `sum(blue) + 2 * P3` lies
//! in the hull of that slice without being a sum of distinct points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::membership::ConvexCombination;
use crate::point::{LatticePoint, LinearFunctional, PointConfiguration};
use crate::unimodular::{are_equivalent, exceptional_triangle, PlaneLattice};
use crate::wedge::{check_lattice_convex, wedge, WedgeBitmap};

/// Dilation factor of the standard simplex.
pub const SIMPLEX_SIZE: i64 = 6;

/// The red points `P1..P4`.
pub const RED_POINTS: [[i64; 3]; 4] = [[5, 0, 0], [1, 5, 0], [2, 2, 1], [0, 1, 3]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSimplex {
    pub points: PointConfiguration,
    pub functional: LinearFunctional,
    pub level: i128,
    pub blue: PointConfiguration,
    pub olive: PointConfiguration,
    /// `P1, P2, P3, P4` in that order.
    pub red: [LatticePoint; 4],
}

impl ColoredSimplex {
    pub fn red_configuration(&self) -> PointConfiguration {
        PointConfiguration::new(3, self.red).expect("spatial points")
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.blue.len(), self.olive.len(), self.red.len()]
    }
}

fn simplex_points(size: i64) -> PointConfiguration {
    let pts = (0..=size).flat_map(|x| {
        (0..=size - x)
            .flat_map(move |y| (0..=size - x - y).map(move |z| LatticePoint::xyz(x, y, z)))
    });
    PointConfiguration::new(3, pts).expect("spatial points")
}

/// Builds the 84-point simplex and its coloring.
///
/// The separating functional is recomputed from the red points as the
/// primitive normal of their plane. Panics if any structural invariant
/// fails, which would indicate a bug rather than bad input.
pub fn build_colored_simplex() -> ColoredSimplex {
    let red = RED_POINTS.map(|c| LatticePoint::new(&c).expect("small"));
    let [p1, p2, p3, p4] = red;

    let sum = p1
        .checked_add(&p2)
        .and_then(|s| s.checked_add(&p4))
        .unwrap();
    assert_eq!(sum, p3.checked_scale(3).unwrap(), "P1 + P2 + P4 = 3 P3");

    let a = p2.checked_sub(&p1).unwrap();
    let b = p4.checked_sub(&p1).unwrap();
    let n = [
        a.y() * b.z() - a.z() * b.y(),
        a.z() * b.x() - a.x() * b.z(),
        a.x() * b.y() - a.y() * b.x(),
    ];
    let g = n.iter().fold(0i64, |g, &c| gcd(g, c.abs()));
    let sign = if n.iter().sum::<i64>() < 0 { -1 } else { 1 };
    let coeffs = n.map(|c| sign * c / g);
    assert_eq!(coeffs, [5, 4, 7], "separating functional");
    let functional = LinearFunctional::new(&coeffs).unwrap();
    let level = functional.eval(&p1);
    assert_eq!(level, 25);
    assert!(red.iter().all(|r| functional.eval(r) == level));

    let points = simplex_points(SIMPLEX_SIZE);
    let pick = |keep: fn(i128, i128) -> bool| {
        PointConfiguration::new(
            3,
            points
                .iter()
                .filter(|m| keep(functional.eval(m), level))
                .copied(),
        )
        .unwrap()
    };
    let blue = pick(|v, l| v < l);
    let olive = pick(|v, l| v > l);
    let on_plane = pick(|v, l| v == l);

    assert_eq!(points.len(), 84);
    assert_eq!((blue.len(), olive.len(), on_plane.len()), (40, 40, 4));
    assert_eq!(on_plane, PointConfiguration::new(3, red).unwrap());

    ColoredSimplex {
        points,
        functional,
        level,
        blue,
        olive,
        red,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `sum(blue) + 2 * P3`.
pub fn witness_point(cs: &ColoredSimplex) -> Result<LatticePoint> {
    cs.blue.sum()?.checked_add(&cs.red[2].checked_scale(2)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub counts: [usize; 3],
    pub witness: LatticePoint,
    pub witness_in_wedge: bool,
    pub witness_in_hull: bool,
    pub hull_certificate: ConvexCombination,
    pub slice: PointConfiguration,
    pub min_level_attained: i128,
    pub wedge_size: usize,
    pub wedge_digest: String,
    pub checks: Vec<Check>,
}

impl CounterexampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

impl Serialize for CounterexampleReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CounterexampleReport", 9)?;
        st.serialize_field("counts", &self.counts)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("witness_in_wedge", &self.witness_in_wedge)?;
        st.serialize_field("witness_in_hull", &self.witness_in_hull)?;
        st.serialize_field("slice_size", &self.slice.len())?;
        st.serialize_field("min_level_attained", &self.min_level_attained)?;
        st.serialize_field("wedge_size", &self.wedge_size)?;
        st.serialize_field("wedge_digest", &self.wedge_digest)?;
        st.serialize_field("failed_checks", &self.failed_checks())?;
        st.end()
    }
}

/// Runs the DP for the 42nd wedge power and checks, in order: the witness is
/// absent, it is the average of three members, the minimal slice is the
/// shifted pairwise red sums, and the functional attains its minimum there.
pub fn verify_counterexample(cs: &ColoredSimplex) -> Result<CounterexampleReport> {
    let mut checks = Vec::new();
    let mut check = |name, passed| checks.push(Check { name, passed });

    check("counts", cs.counts() == [40, 40, 4]);
    let [p1, p2, p3, p4] = cs.red;
    check(
        "red_relation",
        p1.checked_add(&p2)?.checked_add(&p4)? == p3.checked_scale(3)?,
    );

    let red = cs.red_configuration();
    let plane = PlaneLattice::spanned_by(&red)?;
    let red_flat = PointConfiguration::new(
        2,
        red.iter()
            .map(|r| plane.coordinates(r))
            .collect::<Result<Vec<_>>>()?,
    )?;
    check(
        "red_equivalent_to_exception",
        are_equivalent(&red_flat, &exceptional_triangle(1)?)?.is_some(),
    );
    let pair_report = check_lattice_convex(&wedge(&red_flat, 2)?)?;
    check(
        "red_pairs_miss_twice_p3",
        pair_report.missing.points() == [plane.coordinates_at(&p3.checked_scale(2)?, 2)?],
    );

    let p = cs.blue.len() + 2;
    let w42 = WedgeBitmap::compute(&cs.points, p)?;
    check("wedge_computed", !w42.is_empty());

    let witness = witness_point(cs)?;
    let witness_in_wedge = w42.contains(&witness);
    check("witness_absent", !witness_in_wedge);

    let blue_sum = cs.blue.sum()?;
    let corners = [(p1, p2), (p1, p4), (p2, p4)]
        .iter()
        .map(|(a, b)| blue_sum.checked_add(a)?.checked_add(b))
        .collect::<Result<Vec<_>>>()?;
    let certificate = ConvexCombination {
        points: corners.clone(),
        weights: vec![1, 1, 1],
        denominator: 3,
    };
    let witness_in_hull =
        corners.iter().all(|c| w42.contains(c)) && certificate.certifies(&witness);
    check("witness_in_hull", witness_in_hull);

    let f = cs.functional;
    let target = f.eval(&witness);
    let mut min_level = i128::MAX;
    let mut slice = Vec::new();
    for m in w42.iter() {
        let v = f.eval(&m);
        min_level = min_level.min(v);
        if v == target {
            slice.push(m);
        }
    }
    let slice = PointConfiguration::new(3, slice)?;
    let expected_slice = wedge(&red, 2)?.translate(&blue_sum)?;
    check("facet_slice", slice == expected_slice && slice.len() == 6);
    check("minimum_level", min_level == target);

    Ok(CounterexampleReport {
        counts: cs.counts(),
        witness,
        witness_in_wedge,
        witness_in_hull,
        hull_certificate: certificate,
        slice,
        min_level_attained: min_level,
        wedge_size: w42.len(),
        wedge_digest: w42.digest(),
        checks,
    })
}

/// `{m in N^n : f(m) <= c}` for a functional with positive coefficients.
pub fn quadrant_points_below(f: &LinearFunctional, c: i64) -> Result<PointConfiguration> {
    if f.coeffs().iter().any(|&a| a <= 0) {
        return Err(Error::InvalidArgument(
            "all functional coefficients must be positive".into(),
        ));
    }
    let dim = f.dim();
    let mut out = Vec::new();
    let mut coords = vec![0i64; dim];
    fn walk(
        axis: usize,
        budget: i64,
        coeffs: &[i64],
        coords: &mut Vec<i64>,
        out: &mut Vec<LatticePoint>,
    ) -> Result<()> {
        if axis == coeffs.len() {
            out.push(LatticePoint::new(coords)?);
            return Ok(());
        }
        let mut x = 0;
        while x * coeffs[axis] <= budget {
            coords[axis] = x;
            walk(axis + 1, budget - x * coeffs[axis], coeffs, coords, out)?;
            x += 1;
        }
        coords[axis] = 0;
        Ok(())
    }
    if c >= 0 {
        walk(0, c, f.coeffs(), &mut coords, &mut out)?;
    }
    PointConfiguration::new(dim, out)
}
