//! Command-line front end: argument parsing, dispatch and rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wedge_core::{
    are_equivalent, build_colored_simplex, check_lattice_convex, convex_hull, p_good_witnesses,
    verify_corner_cut, verify_counterexample, verify_grid, verify_polygon, wedge_power,
    AffineUnimodularMap, GridSpec, LatticePoint, Method, PointConfiguration, Verdict, WedgeQuery,
};

/// Exit status for a claim that holds.
pub const EXIT_OK: u8 = 0;
/// Exit status for usage, input or resource errors.
pub const EXIT_ERROR: u8 = 1;
/// Exit status for a refuted claim.
pub const EXIT_REFUTED: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wedge",
    version,
    about = "Exact wedge powers of lattice point sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Point configuration JSON.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sums of p distinct points.
    Wedge {
        #[command(flatten)]
        input: InputArg,
        #[arg(short = 'p')]
        p: usize,
        #[arg(long, default_value = "dp", value_parser = parse_method)]
        method: Method,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Compare a planar set with the lattice points of its hull.
    CheckConvex {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Convexity of every wedge power of a lattice-convex polygon.
    VerifyPolygon {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Exhaustive check over all lattice-convex subsets of a grid.
    VerifyGrid {
        /// Grid `[0,W] x [0,H]`.
        #[arg(long, value_name = "WxH", value_parser = parse_grid)]
        grid: (u32, u32),
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Common p-sum surviving the removal of any vertex.
    PGood {
        #[command(flatten)]
        input: InputArg,
        #[arg(short = 'p')]
        p: usize,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Convexity of the d-th wedge power of the quadrant truncated at x + y <= B.
    Cornercut {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'B')]
        bound: u32,
        #[command(flatten)]
        output: OutputArg,
    },
    /// The spatial counterexample on the 6-fold standard simplex.
    Counterexample3d {
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Search for an affine unimodular map between two planar sets.
    Equivalent {
        /// Two point configuration files.
        #[arg(long, value_name = "PATH", num_args = 1, required = true)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        output: OutputArg,
    },
    /// SVG dot diagram of a planar set.
    Render {
        #[command(flatten)]
        input: InputArg,
        /// Draw the convex hull.
        #[arg(long)]
        hull: bool,
        #[command(flatten)]
        output: OutputArg,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: wedge_core::Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let w = w.trim().parse().map_err(|e| format!("grid width: {e}"))?;
    let h = h.trim().parse().map_err(|e| format!("grid height: {e}"))?;
    Ok((w, h))
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub output: Option<PathBuf>,
    pub exit: u8,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, output: &OutputArg, refuted: bool) -> Result<Self> {
        let mut body = serde_json::to_string(value)?;
        body.push('\n');
        Ok(Self {
            body,
            output: output.output.clone(),
            exit: if refuted { EXIT_REFUTED } else { EXIT_OK },
        })
    }

    /// Writes the body to the output file or stdout.
    pub fn emit(&self) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, &self.body)
                .with_context(|| format!("writing {}", path.display())),
            None => {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                out.write_all(self.body.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

pub fn read_configuration(path: &Path) -> Result<PointConfiguration> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PointConfiguration::from_json_str(&text).with_context(|| format!("loading {}", path.display()))
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(j) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .context("building thread pool")?
            .install(f)),
        None => Ok(f()),
    }
}

#[derive(Serialize)]
struct PGoodReport<'a> {
    p: usize,
    good: bool,
    witness: Option<LatticePoint>,
    common: &'a [LatticePoint],
}

#[derive(Serialize)]
struct EquivalenceReport {
    equivalent: bool,
    map: Option<AffineUnimodularMap>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Wedge {
            input,
            p,
            method,
            output,
        } => {
            let base = read_configuration(&input.input)?;
            let w = wedge_power(&WedgeQuery::new(base, p), method)?;
            let mut body = w.points.to_json_string();
            body.push('\n');
            Ok(Outcome {
                body,
                output: output.output,
                exit: EXIT_OK,
            })
        }
        Command::CheckConvex { input, output } => {
            let r = check_lattice_convex(&read_configuration(&input.input)?)?;
            Outcome::json(&r, &output, !r.convex)
        }
        Command::VerifyPolygon { input, output } => {
            let r = verify_polygon(&read_configuration(&input.input)?)?;
            Outcome::json(&r, &output, r.verdict == Verdict::Violates)
        }
        Command::VerifyGrid { grid, jobs, output } => {
            let g = GridSpec::new(grid.0, grid.1)?;
            let run = verify_grid(&g, jobs)?;
            Outcome::json(&run.summary, &output, !run.summary.violations.is_empty())
        }
        Command::PGood { input, p, output } => {
            let s = read_configuration(&input.input)?;
            let common = p_good_witnesses(&s, p)?;
            let r = PGoodReport {
                p,
                good: !common.is_empty(),
                witness: common.points().first().copied(),
                common: common.points(),
            };
            Outcome::json(&r, &output, false)
        }
        Command::Cornercut { d, bound, output } => {
            let r = verify_corner_cut(d, bound)?;
            Outcome::json(&r, &output, !r.convexity.convex)
        }
        Command::Counterexample3d { jobs, output } => {
            let report = with_jobs(jobs, || verify_counterexample(&build_colored_simplex()))??;
            Outcome::json(&report, &output, !report.all_passed())
        }
        Command::Equivalent { input, output } => {
            let [a, b] = input.as_slice() else {
                bail!(
                    "equivalent takes exactly two --input files, got {}",
                    input.len()
                );
            };
            let map = are_equivalent(&read_configuration(a)?, &read_configuration(b)?)?;
            let r = EquivalenceReport {
                equivalent: map.is_some(),
                map,
            };
            Outcome::json(&r, &output, false)
        }
        Command::Render {
            input,
            hull,
            output,
        } => {
            let s = read_configuration(&input.input)?;
            Ok(Outcome {
                body: render_svg(&s, hull)?,
                output: output.output,
                exit: EXIT_OK,
            })
        }
    }
}

/// Pixels per lattice unit.
pub const PITCH: i64 = 40;
const DOT_RADIUS: i64 = 6;
const GRID_RADIUS: i64 = 2;

/// Deterministic SVG dot diagram of a planar configuration.
///
/// The canvas covers the bounding box plus one unit of margin, with `y`
/// pointing up. Every lattice point of the box gets a faint marker so gaps
/// stay visible.
pub fn render_svg(s: &PointConfiguration, show_hull: bool) -> Result<String> {
    if s.dim() != 2 {
        bail!(
            "render needs a planar configuration, got dimension {}",
            s.dim()
        );
    }
    let (lo, hi) = match (s.min_corner(), s.max_corner()) {
        (Some(lo), Some(hi)) => ((lo.x(), lo.y()), (hi.x(), hi.y())),
        _ => ((0, 0), (0, 0)),
    };
    let px = |x: i64| (x - lo.0 + 1) * PITCH;
    let py = |y: i64| (hi.1 - y + 1) * PITCH;
    let width = (hi.0 - lo.0 + 2) * PITCH;
    let height = (hi.1 - lo.1 + 2) * PITCH;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )?;
    writeln!(
        svg,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    )?;
    for y in (lo.1..=hi.1).rev() {
        for x in lo.0..=hi.0 {
            writeln!(
                svg,
                r##"<circle cx="{}" cy="{}" r="{GRID_RADIUS}" fill="#bbbbbb"/>"##,
                px(x),
                py(y)
            )?;
        }
    }
    if show_hull && !s.is_empty() {
        let hull = convex_hull(s)?;
        let pts = hull
            .vertices()
            .iter()
            .map(|v| format!("{},{}", px(v.x()), py(v.y())))
            .collect::<Vec<_>>()
            .join(" ");
        let tag = if hull.dim_intrinsic() == 2 {
            "polygon"
        } else {
            "polyline"
        };
        if hull.dim_intrinsic() > 0 {
            writeln!(
                svg,
                r#"<{tag} points="{pts}" fill="none" stroke="black" stroke-width="2"/>"#
            )?;
        }
    }
    for m in s {
        writeln!(
            svg,
            r#"<circle cx="{}" cy="{}" r="{DOT_RADIUS}" fill="black"/>"#,
            px(m.x()),
            py(m.y())
        )?;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("3x2"), Ok((3, 2)));
        assert_eq!(parse_grid("2X2"), Ok((2, 2)));
        assert!(parse_grid("3").is_err());
        assert!(parse_grid("ax2").is_err());
    }

    #[test]
    fn singleton_canvas() {
        let svg = render_svg(&PointConfiguration::from_xy(&[(7, -3)]), true).unwrap();
        assert!(svg.contains(r#"width="80" height="80""#));
        assert_eq!(svg.matches(r#"fill="black""#).count(), 1);
        assert!(!svg.contains("polygon"));
    }

    #[test]
    fn hull_outline() {
        let e1 = PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)]);
        let svg = render_svg(&e1, true).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches(r#"r="6""#).count(), 4);
        // (-1,-1) sits in the bottom-left corner
        assert!(svg.contains(r#"<polygon points="40,120 120,80 80,40""#));
        assert_eq!(svg, render_svg(&e1, true).unwrap());
    }

    #[test]
    fn rejects_spatial_input() {
        let s = PointConfiguration::new(3, [LatticePoint::xyz(0, 0, 0)]).unwrap();
        assert!(render_svg(&s, false).is_err());
    }
}
