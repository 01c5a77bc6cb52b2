use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wedge_core::{
    build_colored_simplex, check_lattice_convex, quadrant_points_below, reflect_complement,
    truncated_quadrant, verify_corner_cut, verify_counterexample, verify_grid, wedge, wedge_power,
    GridRun, GridSpec, LatticePoint, LinearFunctional, Method, PointConfiguration, WedgeBitmap,
    WedgeQuery,
};

const LIMIT_PLANAR_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_GRIDS: Duration = Duration::from_secs(5 * 60);
const LIMIT_ORACLE: Duration = Duration::from_secs(2 * 60);
const LIMIT_COLLINEAR: Duration = Duration::from_secs(10);
const LIMIT_CORNER_CUT: Duration = Duration::from_secs(3 * 60);
const LIMIT_SPATIAL: Duration = Duration::from_secs(10 * 60);
const LIMIT_BRIDGE: Duration = Duration::from_secs(1);

const SPATIAL_MEMORY_LIMIT_BYTES: u64 = 1 << 30;
const ORACLE_CASES: usize = 500;
const ORACLE_MAX_POINTS: usize = 12;
const ORACLE_COORD_RANGE: i64 = 4;
const ORACLE_SEED: u64 = 0x5eed_0001;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn planar_example() -> Outcome {
    let e1 = PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)]);
    let w = wedge(&e1, 2).map_err(err)?;
    let expected =
        PointConfiguration::from_xy(&[(-1, -1), (-1, 0), (0, -1), (1, 0), (0, 1), (1, 1)]);
    ensure(w == expected, || format!("wedge2 = {:?}", w.points()))?;
    let r = check_lattice_convex(&w).map_err(err)?;
    ensure(
        !r.convex && r.missing == PointConfiguration::from_xy(&[(0, 0)]),
        || format!("missing = {:?}", r.missing.points()),
    )
}

fn grid_runs() -> Result<Vec<GridRun>, String> {
    [(2, 2), (3, 2)]
        .iter()
        .map(|&(w, h)| {
            let g = GridSpec::new(w, h).map_err(err)?;
            verify_grid(&g, None).map_err(err)
        })
        .collect()
}

fn grid_classification(runs: &[GridRun]) -> Outcome {
    let mut seen = [0usize; 3];
    for run in runs {
        ensure(run.summary.violations.is_empty(), || {
            format!(
                "grid {:?}: {} violations",
                run.summary.grid,
                run.summary.violations.len()
            )
        })?;
        for o in &run.outcomes {
            let n = o.report.n;
            let failing = o.report.failing_powers();
            let expected = match o.report.exception_k {
                None => vec![],
                Some(1) => vec![2],
                Some(2) => vec![2, 3],
                Some(_) => vec![2, n - 2],
            };
            if let Some(k) = o.report.exception_k {
                seen[(k as usize).min(2)] += 1;
            } else {
                seen[0] += 1;
            }
            ensure(failing == expected, || {
                format!(
                    "{:?} (k = {:?}) fails at {:?}",
                    o.report.base.points(),
                    o.report.exception_k,
                    failing
                )
            })?;
        }
    }
    ensure(seen[1] > 0 && seen[2] > 0, || {
        format!("exceptions seen: E1 {}, E2 {}", seen[1], seen[2])
    })
}

fn p_good_at_scale(runs: &[GridRun]) -> Outcome {
    let mut exceptions = 0;
    for o in runs.iter().flat_map(|r| &r.outcomes) {
        let n = o.report.n;
        if n >= 5 {
            for p in 1..=n / 2 {
                let w = o.p_good.iter().find(|(q, _)| *q == p).and_then(|(_, w)| *w);
                ensure(w.is_some(), || {
                    format!("{:?} is not {p}-good", o.report.base.points())
                })?;
            }
        }
        if o.report.exception_k == Some(1) {
            exceptions += 1;
            let two_good = o.p_good.iter().any(|(p, w)| *p == 2 && w.is_some());
            ensure(!two_good, || {
                format!("{:?} is 2-good", o.report.base.points())
            })?;
        }
    }
    ensure(exceptions > 0, || {
        "no E1-equivalent configuration seen".into()
    })
}

fn random_configuration(rng: &mut ChaCha8Rng) -> PointConfiguration {
    let size = rng.gen_range(1..=ORACLE_MAX_POINTS);
    let mut pts = Vec::new();
    while pts.len() < size {
        let p = (
            rng.gen_range(-ORACLE_COORD_RANGE..=ORACLE_COORD_RANGE),
            rng.gen_range(-ORACLE_COORD_RANGE..=ORACLE_COORD_RANGE),
        );
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointConfiguration::from_xy(&pts)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    for case in 0..ORACLE_CASES {
        let s = random_configuration(&mut rng);
        let n = s.len();
        for p in 0..=n {
            let q = WedgeQuery::new(s.clone(), p);
            let dp = wedge_power(&q, Method::Dp).map_err(err)?;
            let naive = wedge_power(&q, Method::Naive).map_err(err)?;
            ensure(dp == naive, || {
                format!(
                    "case {case}: dp and naive differ at p = {p} for {:?}",
                    s.points()
                )
            })?;
            let reflected = reflect_complement(&s, p).map_err(err)?;
            let complement = wedge(&s, n - p).map_err(err)?;
            ensure(reflected == complement, || {
                format!("case {case}: complement identity fails at p = {p}")
            })?;
        }
    }
    Ok(())
}

fn collinear_law() -> Outcome {
    for n in 2..=10i64 {
        let line = PointConfiguration::from_xy(&(0..n).map(|i| (i, 0)).collect::<Vec<_>>());
        for p in 1..n {
            let q = WedgeQuery::new(line.clone(), p as usize);
            let dp = wedge_power(&q, Method::Dp).map_err(err)?.points;
            let naive = wedge_power(&q, Method::Naive).map_err(err)?.points;
            ensure(dp == naive, || format!("N = {n}, p = {p}: oracles differ"))?;
            let expected = (p * (n - p) + 1) as usize;
            ensure(dp.len() == expected, || {
                format!("N = {n}, p = {p}: {} points, expected {expected}", dp.len())
            })?;
        }
    }
    Ok(())
}

fn corner_cut() -> Outcome {
    for b in 2..=6u32 {
        let size = truncated_quadrant(b).points.len();
        for d in 1..=size.min(10) {
            let r = verify_corner_cut(d, b).map_err(err)?;
            ensure(r.convexity.convex, || {
                format!(
                    "B = {b}, d = {d}: missing {:?}",
                    r.convexity.missing.points()
                )
            })?;
        }
    }
    Ok(())
}

fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn spatial_counterexample() -> Outcome {
    let cs = build_colored_simplex();
    let report = verify_counterexample(&cs).map_err(err)?;
    ensure(report.all_passed(), || {
        format!("failed checks: {:?}", report.failed_checks())
    })?;
    ensure(
        report.counts == [40, 40, 4] && !report.witness_in_wedge && report.witness_in_hull,
        || "report fields disagree with checks".into(),
    )?;
    let blue_red =
        PointConfiguration::new(3, cs.blue.iter().copied().chain(cs.red)).map_err(err)?;
    ensure(
        report.slice.len() == 6
            && report.slice
                == wedge(&cs.red_configuration(), 2)
                    .map_err(err)?
                    .translate(&cs.blue.sum().map_err(err)?)
                    .map_err(err)?,
        || "facet slice".into(),
    )?;
    let again = WedgeBitmap::compute(&cs.points, 42).map_err(err)?;
    ensure(again.digest() == report.wedge_digest, || {
        "second DP run differs".into()
    })?;
    ensure(blue_red.len() == 44, || "blue and red overlap".into())?;
    if let Some(rss) = peak_rss_bytes() {
        ensure(rss <= SPATIAL_MEMORY_LIMIT_BYTES, || {
            format!("peak resident memory {rss} bytes")
        })?;
    }
    Ok(())
}

fn quadrant_bridge() -> Outcome {
    let cs = build_colored_simplex();
    let f = LinearFunctional::new(&[5, 4, 7]).map_err(err)?;
    let below = quadrant_points_below(&f, 25).map_err(err)?;
    let blue_red =
        PointConfiguration::new(3, cs.blue.iter().copied().chain(cs.red)).map_err(err)?;
    ensure(below.len() == 44 && below == blue_red, || {
        format!("{} points below the level", below.len())
    })?;
    ensure(
        below.iter().all(|m| m.coords().iter().sum::<i64>() <= 6)
            && !below.contains(&LatticePoint::xyz(0, 0, 4)),
        || "point outside the simplex".into(),
    )
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn run<T>(
        &mut self,
        id: u32,
        name: &str,
        limit: Duration,
        f: impl FnOnce() -> Result<T, String>,
    ) -> Option<T> {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = result.and_then(|v| {
            if elapsed <= limit {
                Ok(v)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(v) => {
                println!("PASS {id} {name} ({elapsed:.2?}, limit {limit:?})");
                Some(v)
            }
            Err(e) => {
                self.failures += 1;
                println!("FAIL {id} {name} ({elapsed:.2?}, limit {limit:?}): {e}");
                None
            }
        }
    }
}

fn main() -> ExitCode {
    let mut r = Runner { failures: 0 };
    r.run(
        1,
        "planar four-point example",
        LIMIT_PLANAR_EXAMPLE,
        planar_example,
    );

    // criteria 2 and 4 share the grid runs and one time limit
    let mut runs = None;
    let grid_start = Instant::now();
    r.run(2, "grid classification", LIMIT_GRIDS, || {
        let rs = runs.insert(grid_runs()?);
        grid_classification(rs)
    });
    let remaining = LIMIT_GRIDS.saturating_sub(grid_start.elapsed());
    r.run(4, "p-good at grid scale", remaining, || match &runs {
        Some(rs) => p_good_at_scale(rs),
        None => Err("grid runs failed".into()),
    });

    r.run(
        3,
        "dp and naive oracles agree",
        LIMIT_ORACLE,
        oracle_equivalence,
    );
    r.run(5, "collinear law", LIMIT_COLLINEAR, collinear_law);
    r.run(6, "corner cut", LIMIT_CORNER_CUT, corner_cut);
    r.run(
        7,
        "spatial counterexample",
        LIMIT_SPATIAL,
        spatial_counterexample,
    );
    r.run(8, "quadrant bridge", LIMIT_BRIDGE, quadrant_bridge);

    if r.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} failed", r.failures);
        ExitCode::FAILURE
    }
}
