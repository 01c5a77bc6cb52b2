//! Exhaustive checks of the planar convexity classification over small grids.
//!
//! For every lattice-convex configuration in a grid the harness computes all
//! wedge powers and checks that non-convexity occurs exactly for the
//! exceptional triangles at `p = 2` and `p = N - 2`. Alongside it checks the
//! two supporting statements used for the induction: every configuration with
//! at least five points has a common `p`-sum surviving the removal of any
//! vertex, and in that case the hull of the wedge power is covered by the
//! hulls of the vertex-deleted wedge powers.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::{convex_hull, lattice_points_of_polytope, vertex_set, Polytope};
use crate::point::{LatticePoint, PointConfiguration};
use crate::unimodular::exception_index;
use crate::wedge::{check_lattice_convex, wedge};

/// Largest number of grid points the subset enumeration accepts.
pub const GRID_POINT_BUDGET: usize = 25;

/// The grid `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridSpec {
    pub width: u32,
    pub height: u32,
}

impl GridSpec {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        let g = Self { width, height };
        let n = g.point_count();
        if n > GRID_POINT_BUDGET as u64 {
            return Err(Error::BudgetExceeded {
                what: "grid points for subset enumeration",
                needed: n as u128,
                limit: GRID_POINT_BUDGET as u128,
            });
        }
        Ok(g)
    }

    pub fn point_count(&self) -> u64 {
        (self.width as u64 + 1) * (self.height as u64 + 1)
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        (0..=self.width as i64)
            .flat_map(|x| (0..=self.height as i64).map(move |y| LatticePoint::xy(x, y)))
            .collect()
    }
}

fn subset(points: &[LatticePoint], mask: u32) -> Vec<LatticePoint> {
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| *p)
        .collect()
}

/// All nonempty lattice-convex subsets of the grid, up to translation.
///
/// Each class is represented by its translate whose coordinate-wise minimum
/// is the origin; the list is sorted.
pub fn enumerate_lattice_convex(g: &GridSpec) -> Result<Vec<PointConfiguration>> {
    let g = GridSpec::new(g.width, g.height)?;
    let points = g.points();
    let n = points.len() as u32;
    let found: BTreeSet<PointConfiguration> = (1u32..(1u32 << n))
        .into_par_iter()
        .filter_map(|mask| {
            let s = PointConfiguration::new(2, subset(&points, mask)).ok()?;
            let hull = convex_hull(&s).ok()?;
            // the hull stays inside the grid, so only grid points can be missing
            let closed = points
                .iter()
                .enumerate()
                .all(|(i, p)| mask >> i & 1 == 1 || !hull.contains(p));
            closed.then(|| s.normalized())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found.into_iter().collect())
}

fn check_p_range(s: &PointConfiguration, p: usize, lo: usize, hi: usize) -> Result<()> {
    if p < lo || p > hi {
        return Err(Error::InvalidArgument(format!(
            "p = {p} outside [{lo}, {hi}] for a configuration of {} points",
            s.len()
        )));
    }
    Ok(())
}

/// The intersection over vertices `v` of the wedge powers of `s \ {v}`.
pub fn p_good_witnesses(s: &PointConfiguration, p: usize) -> Result<PointConfiguration> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument(
            "p-goodness needs at least two points".into(),
        ));
    }
    check_p_range(s, p, 1, s.len() - 1)?;
    let mut common: Option<PointConfiguration> = None;
    for v in vertex_set(s)?.iter() {
        let w = wedge(&s.without(v), p)?;
        common = Some(match common {
            None => w,
            Some(c) => c.intersection(&w),
        });
        if common.as_ref().is_some_and(|c| c.is_empty()) {
            break;
        }
    }
    Ok(common.expect("at least one vertex"))
}

/// Smallest common `p`-sum surviving every vertex deletion, if any.
pub fn is_p_good(s: &PointConfiguration, p: usize) -> Result<Option<LatticePoint>> {
    Ok(p_good_witnesses(s, p)?.points().first().copied())
}

/// Whether every lattice point of `conv(wedge(s, p))` lies in
/// `conv(wedge(s \ {v}, p))` for some vertex `v`.
pub fn union_decomposition_holds(s: &PointConfiguration, p: usize) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::Empty);
    }
    check_p_range(s, p, 1, s.len())?;
    let whole = wedge(s, p)?;
    let targets = lattice_points_of_polytope(&convex_hull(&whole)?)?;
    let pieces: Vec<Polytope> = vertex_set(s)?
        .iter()
        .map(|v| wedge(&s.without(v), p))
        .filter_map(|w| match w {
            Ok(w) if w.is_empty() => None,
            other => Some(other.and_then(|w| convex_hull(&w))),
        })
        .collect::<Result<_>>()?;
    Ok(targets.iter().all(|m| pieces.iter().any(|h| h.contains(m))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerConvexity {
    pub p: usize,
    pub convex: bool,
    pub missing: Vec<LatticePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Conforms,
    Violates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub base: PointConfiguration,
    #[serde(rename = "N")]
    pub n: usize,
    pub exception_k: Option<u64>,
    pub per_p: Vec<PowerConvexity>,
    pub verdict: Verdict,
}

impl TheoremReport {
    /// Values of `p` where the wedge power failed to be lattice-convex.
    pub fn failing_powers(&self) -> Vec<usize> {
        self.per_p
            .iter()
            .filter(|r| !r.convex)
            .map(|r| r.p)
            .collect()
    }

    /// Whether `p` is a power at which non-convexity is expected.
    pub fn expected_failure(&self, p: usize) -> bool {
        self.exception_k.is_some() && (p == 2 || (self.n >= 2 && p == self.n - 2))
    }
}

/// Wedge-power convexity for every `0 <= p <= N` of a lattice-convex polygon.
pub fn verify_polygon(s: &PointConfiguration) -> Result<TheoremReport> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: s.dim(),
        });
    }
    if s.is_empty() {
        return Err(Error::Empty);
    }
    if !check_lattice_convex(s)?.convex {
        return Err(Error::NotLatticeConvex);
    }
    let n = s.len();
    let per_p = (0..=n)
        .map(|p| {
            let r = check_lattice_convex(&wedge(s, p)?)?;
            Ok(PowerConvexity {
                p,
                convex: r.convex,
                missing: r.missing.points().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = TheoremReport {
        base: s.clone(),
        n,
        exception_k: exception_index(s)?,
        per_p,
        verdict: Verdict::Conforms,
    };
    let conforms = report
        .per_p
        .iter()
        .all(|r| r.convex != report.expected_failure(r.p));
    if !conforms {
        report.verdict = Verdict::Violates;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Convexity of some wedge power disagrees with the expected pattern.
    Theorem {
        config: PointConfiguration,
        exception_k: Option<u64>,
        failing_powers: Vec<usize>,
    },
    /// A configuration with at least five points has no common `p`-sum.
    NotPGood {
        config: PointConfiguration,
        p: usize,
    },
    /// The exceptional four-point triangle turned out to be 2-good.
    ExceptionPGood {
        config: PointConfiguration,
        p: usize,
        witness: LatticePoint,
    },
    /// The vertex-deleted hulls do not cover the lattice points of the hull.
    UnionDecompositionFails {
        config: PointConfiguration,
        p: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionCount {
    pub k: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub grid: [u32; 2],
    pub configs: usize,
    pub violations: Vec<Violation>,
    pub exceptions_seen: Vec<ExceptionCount>,
}

/// Per-configuration detail behind a [`GridSummary`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigOutcome {
    pub report: TheoremReport,
    /// `(p, witness)` for `1 <= p <= N/2`, computed when `N >= 4`.
    pub p_good: Vec<(usize, Option<LatticePoint>)>,
    /// `(p, holds)` for every `p` that had a witness.
    pub union: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRun {
    pub summary: GridSummary,
    pub outcomes: Vec<ConfigOutcome>,
}

fn verify_config(s: &PointConfiguration) -> Result<(ConfigOutcome, Vec<Violation>)> {
    let report = verify_polygon(s)?;
    let n = s.len();
    let mut violations = Vec::new();
    if report.verdict == Verdict::Violates {
        violations.push(Violation::Theorem {
            config: s.clone(),
            exception_k: report.exception_k,
            failing_powers: report.failing_powers(),
        });
    }
    let mut p_good = Vec::new();
    let mut union = Vec::new();
    if n >= 4 {
        for p in 1..=n / 2 {
            let witness = is_p_good(s, p)?;
            p_good.push((p, witness));
            match witness {
                None if n >= 5 => violations.push(Violation::NotPGood {
                    config: s.clone(),
                    p,
                }),
                Some(w) if report.exception_k == Some(1) && p == 2 => {
                    violations.push(Violation::ExceptionPGood {
                        config: s.clone(),
                        p,
                        witness: w,
                    })
                }
                _ => {}
            }
            if witness.is_some() {
                let holds = union_decomposition_holds(s, p)?;
                union.push((p, holds));
                if !holds {
                    violations.push(Violation::UnionDecompositionFails {
                        config: s.clone(),
                        p,
                    });
                }
            }
        }
    }
    Ok((
        ConfigOutcome {
            report,
            p_good,
            union,
        },
        violations,
    ))
}

/// Runs every check over all lattice-convex configurations of the grid.
///
/// `jobs` bounds the worker count; results do not depend on it.
pub fn verify_grid(g: &GridSpec, jobs: Option<usize>) -> Result<GridRun> {
    let configs = enumerate_lattice_convex(g)?;
    let work = || {
        configs
            .par_iter()
            .map(verify_config)
            .collect::<Result<Vec<_>>>()
    };
    let results = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let mut violations = Vec::new();
    let mut outcomes = Vec::with_capacity(results.len());
    let mut exceptions: BTreeMap<u64, usize> = BTreeMap::new();
    for (outcome, v) in results {
        if let Some(k) = outcome.report.exception_k {
            *exceptions.entry(k).or_default() += 1;
        }
        violations.extend(v);
        outcomes.push(outcome);
    }
    Ok(GridRun {
        summary: GridSummary {
            grid: [g.width, g.height],
            configs: configs.len(),
            violations,
            exceptions_seen: exceptions
                .into_iter()
                .map(|(k, count)| ExceptionCount { k, count })
                .collect(),
        },
        outcomes,
    })
}
