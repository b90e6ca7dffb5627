//! The `op`, `verify`, `sweep` and `flow` commands.

use lpgeom::body::santalo_point;
use lpgeom::functionals::durch_identity_check;
use lpgeom::inequalities::{
    centroid_product, class_reduction_check, limit_reports, multiplier_reports, petty_product, santalo_check,
    strongest_m_sweep, strongest_pi_sweep,
};
use lpgeom::linalg::unit;
use lpgeom::operators::{moment_pair, projection_pair};
use lpgeom::symmetrization::{inclusion_check, steiner_step, symmetrize_flow, SteinerMode, INCLUSION_TOLERANCE};
use lpgeom::{ConvexBody, InequalityReport, SphereGrid, StarBody, TauSweep};
use serde::Serialize;

use crate::config::{Check, Command, Family, Format, Operation, RunConfig, Vector};
use crate::descriptor::Descriptor;
use crate::error::{CliError, CliResult};
use crate::output::{number, to_csv, to_json};

/// Encoded result of a command.
pub struct Output {
    pub bytes: Vec<u8>,
    /// One-line summary reported next to the main output.
    pub summary: Option<String>,
    /// Number of checks whose verdict is neither holds nor equality.
    pub violations: usize,
}

impl Output {
    fn plain(bytes: Vec<u8>) -> Self {
        Output { bytes, summary: None, violations: 0 }
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> CliResult<Output> {
    match command {
        Command::Op { operation, dir, disk_resolution, .. } => op(cfg, *operation, dir.as_ref(), *disk_resolution),
        Command::Verify { check, dir, kmax, inclusion_resolution, star, .. } => {
            let star = star.as_ref().map(|_| cfg.bodies[cfg.bodies.len() - 1].clone());
            let opts = VerifyOptions { dir: dir.clone(), kmax: *kmax, inclusion_resolution: *inclusion_resolution, star };
            verify(cfg, *check, &opts)
        }
        Command::Sweep { family, .. } => sweep(cfg, *family),
        Command::Flow { steps, disk_resolution, .. } => flow(cfg, *steps, *disk_resolution),
    }
}

fn load(cfg: &RunConfig) -> CliResult<Descriptor> {
    let path = cfg.bodies.first().ok_or_else(|| CliError::config(format!("{} needs --body", cfg.command)))?;
    Descriptor::load(path)
}

fn direction(dir: Option<&Vector>, n: usize) -> CliResult<Vec<f64>> {
    match dir {
        Some(Vector(v)) if v.len() != n => {
            Err(CliError::config(format!("direction has {} coordinates, body dimension is {n}", v.len())))
        }
        Some(Vector(v)) => Ok(v.clone()),
        None => Ok(unit(n, n - 1)),
    }
}

/// A resulting body followed by metadata about how it was produced.
#[derive(Serialize)]
struct BodyRecord {
    #[serde(flatten)]
    body: Descriptor,
    operation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<f64>,
    grid_resolution: usize,
    volume: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<SteinerMode>,
}

#[derive(Serialize)]
struct SantaloRecord {
    operation: String,
    point: Vec<f64>,
    polar_volume: f64,
    iterations: usize,
    gradient_norm: f64,
    grid_resolution: usize,
}

/// `K^*`: exact for balls, ellipsoids and polytopes, sampled otherwise.
pub fn polar_body(k: &ConvexBody, grid: &SphereGrid) -> CliResult<ConvexBody> {
    Ok(match k {
        ConvexBody::Ball { dim, radius } => ConvexBody::ball(*dim, 1.0 / radius)?,
        ConvexBody::Ellipsoid(e) => {
            let inv = e.inverse();
            let rows = inv.rows();
            let sym: Vec<Vec<f64>> = (0..rows.len())
                .map(|i| (0..rows.len()).map(|j| 0.5 * (rows[i][j] + rows[j][i])).collect())
                .collect();
            ConvexBody::ellipsoid(lpgeom::Matrix::from_rows(&sym).expect("square"))?
        }
        ConvexBody::Polytope(p) => {
            let pts: Vec<Vec<f64>> =
                p.facets().iter().map(|f| f.normal.iter().map(|x| x / f.offset).collect()).collect();
            ConvexBody::polytope(&pts)?
        }
        _ => {
            let rho = k.radial_on_grid(grid)?;
            ConvexBody::sampled_support(grid.clone(), rho.iter().map(|r| 1.0 / r).collect())?
        }
    })
}

fn op(cfg: &RunConfig, operation: Operation, dir: Option<&Vector>, disk_resolution: usize) -> CliResult<Output> {
    let desc = load(cfg)?;
    let star = desc.to_star()?;
    let n = star.dim();
    let grid = SphereGrid::new(n, cfg.resolution)?;
    let params = cfg.params()?;
    let name = cfg.command.trim_start_matches("op ").to_string();
    let convex = || desc.to_convex();
    let (body, p, tau, mode) = match operation {
        Operation::PiTau => (projection_pair(&convex()?, params.p, &grid)?.body(params.tau)?, Some(params.p), Some(params.tau), None),
        Operation::MTau => (moment_pair(&star, params.p, &grid)?.body(params.tau)?, Some(params.p), Some(params.tau), None),
        Operation::Polar => (polar_body(&convex()?, &grid)?, None, None, None),
        Operation::Steiner => {
            let u = direction(dir, n)?;
            let step = steiner_step(&convex()?, &u, disk_resolution)?;
            (step.output, None, None, Some(step.mode))
        }
        Operation::Santalo => {
            let s = santalo_point(&convex()?, &grid)?;
            return Ok(Output::plain(match cfg.format {
                Format::Json => to_json(&SantaloRecord {
                    operation: name,
                    point: s.point,
                    polar_volume: s.polar_volume,
                    iterations: s.iterations,
                    gradient_norm: s.gradient_norm,
                    grid_resolution: grid.resolution(),
                })?,
                Format::Csv => {
                    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                    header.push("polar_volume".into());
                    let mut row: Vec<String> = s.point.iter().map(|x| number(*x)).collect();
                    row.push(number(s.polar_volume));
                    to_csv(&header, &[row])?
                }
            }));
        }
    };
    let volume = body.volume(&grid)?;
    if !volume.is_finite() {
        return Err(CliError::Numeric(format!("volume of the {name} body is not finite")));
    }
    let bytes = match cfg.format {
        Format::Json => to_json(&BodyRecord {
            body: Descriptor::from_convex(&body),
            operation: name,
            p,
            tau,
            grid_resolution: grid.resolution(),
            volume,
            mode,
        })?,
        Format::Csv => {
            let mut header: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
            header.push("support".into());
            let h = body.support_on_grid(&grid);
            let rows: Vec<Vec<String>> = grid
                .nodes()
                .zip(&h)
                .map(|(u, v)| u.iter().chain([v]).map(|x| number(*x)).collect())
                .collect();
            to_csv(&header, &rows)?
        }
    };
    Ok(Output { bytes, summary: Some(format!("volume={}", number(volume))), violations: 0 })
}

struct VerifyOptions {
    dir: Option<Vector>,
    kmax: usize,
    inclusion_resolution: Option<usize>,
    star: Option<std::path::PathBuf>,
}

/// Largest default grid of the inclusion check for non-polytopes, whose
/// projection bodies carry a dense kernel generator.
const INCLUSION_DENSE_RESOLUTION: usize = 24;

fn check_reports(cfg: &RunConfig, check: Check, opts: &VerifyOptions) -> CliResult<Vec<InequalityReport>> {
    let params = cfg.params()?;
    if check == Check::Multipliers {
        let grid = SphereGrid::new(3, cfg.resolution)?;
        return Ok(multiplier_reports(params.p, opts.kmax, &grid)?);
    }
    let desc = load(cfg)?;
    let star = desc.to_star()?;
    let n = star.dim();
    let grid = SphereGrid::new(n, cfg.resolution)?;
    Ok(match check {
        Check::Centroid => vec![centroid_product(&star, params, &grid)?],
        Check::Durch => {
            let l: StarBody = match &opts.star {
                Some(path) => Descriptor::load(path)?.to_star()?,
                None => star.clone(),
            };
            vec![durch_identity_check(&desc.to_convex()?, &l, params, &grid)?]
        }
        _ if desc.is_star_only() => {
            return Err(CliError::config(format!("{} needs a convex body", cfg.command)));
        }
        Check::Petty => vec![petty_product(&desc.to_convex()?, params, &grid)?],
        Check::Santalo => vec![santalo_check(&desc.to_convex()?, &grid)?],
        Check::ClassReduction => class_reduction_check(&desc.to_convex()?, params, &grid)?,
        Check::Limits => limit_reports(&desc.to_convex()?, &grid)?,
        Check::SteinerInclusion => {
            let k = desc.to_convex()?;
            let u = direction(opts.dir.as_ref(), n)?;
            let res = opts.inclusion_resolution.unwrap_or(match k {
                ConvexBody::Polytope(_) => cfg.resolution,
                _ => cfg.resolution.min(INCLUSION_DENSE_RESOLUTION),
            });
            let g = SphereGrid::new(n, res)?;
            let r = inclusion_check(&k, params, &u, &g)?;
            vec![InequalityReport::at_most(
                "Steiner inclusion: S_u Pi* K inside Pi* S_u K",
                r.max_violation,
                INCLUSION_TOLERANCE * r.scale,
            )
            .with_body(k.describe())
            .with_params(Some(params.p), Some(params.tau), g.resolution())
            .with_note(format!("direction {:?}, largest strict gap {:e}", r.direction, r.max_gap))]
        }
        Check::Multipliers | Check::All => unreachable!("handled by the caller"),
    })
}

fn verify(cfg: &RunConfig, check: Check, opts: &VerifyOptions) -> CliResult<Output> {
    let checks: Vec<Check> = if check == Check::All { Check::EACH.to_vec() } else { vec![check] };
    let mut reports = Vec::new();
    for c in checks {
        reports.extend(check_reports(cfg, c, opts)?);
    }
    let violations = reports.iter().filter(|r| !r.verdict.is_ok()).count();
    let bytes = match cfg.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let header: Vec<String> =
                ["theorem", "relation", "left", "right", "slack", "equality", "body", "p", "tau", "resolution", "verdict", "note"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            let opt = |x: Option<f64>| x.map(number).unwrap_or_default();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.theorem.clone(),
                        format!("{:?}", r.relation).to_lowercase(),
                        number(r.left),
                        number(r.right),
                        number(r.slack),
                        r.equality.to_string(),
                        r.body.clone(),
                        opt(r.p),
                        opt(r.tau),
                        r.resolution.to_string(),
                        r.verdict.as_str().to_string(),
                        r.note.clone(),
                    ]
                })
                .collect();
            to_csv(&header, &rows)?
        }
    };
    let summary = reports.iter().map(|r| format!("{}: {}", r.theorem, r.verdict.as_str())).collect::<Vec<_>>().join("; ");
    Ok(Output { bytes, summary: Some(summary), violations })
}

#[derive(Serialize)]
struct SweepRecord {
    family: String,
    p: f64,
    taus: Vec<f64>,
    values: Vec<f64>,
    argmin_tau: f64,
    argmax_tau: f64,
    spread: f64,
    constant: bool,
}

fn sweep(cfg: &RunConfig, family: Family) -> CliResult<Output> {
    let desc = load(cfg)?;
    let star = desc.to_star()?;
    let grid = SphereGrid::new(star.dim(), cfg.resolution)?;
    let taus = cfg.tau.values();
    let s: TauSweep = match family {
        Family::Pi => strongest_pi_sweep(&desc.to_convex()?, cfg.p, &taus, &grid)?,
        Family::M => strongest_m_sweep(&star, cfg.p, &taus, &grid)?,
    };
    let summary = format!(
        "argmin_tau={},argmax_tau={},spread={},constant={}",
        number(s.argmin_tau()),
        number(s.argmax_tau()),
        number(s.spread),
        s.constant
    );
    let bytes = match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = s.taus.iter().zip(&s.values).map(|(t, v)| vec![number(*t), number(*v)]).collect();
            to_csv(&["tau".into(), "value".into()], &rows)?
        }
        Format::Json => to_json(&SweepRecord {
            family: if family == Family::Pi { "pi" } else { "m" }.into(),
            p: cfg.p,
            argmin_tau: s.argmin_tau(),
            argmax_tau: s.argmax_tau(),
            spread: s.spread,
            constant: s.constant,
            taus: s.taus,
            values: s.values,
        })?,
    };
    Ok(Output { bytes, summary: Some(summary), violations: 0 })
}

fn flow(cfg: &RunConfig, steps: usize, disk_resolution: usize) -> CliResult<Output> {
    let k = load(cfg)?.to_convex()?;
    let n = k.dim();
    let grid = SphereGrid::new(n, cfg.resolution)?;
    let trace = symmetrize_flow(&k, cfg.params()?, steps, cfg.seed, &grid, disk_resolution)?;
    let last = trace.rows.last().map(|r| r.ball_distance).unwrap_or(f64::NAN);
    let bytes = match cfg.format {
        Format::Json => to_json(&trace.rows)?,
        Format::Csv => {
            let mut header = vec!["step".to_string()];
            header.extend((1..=n).map(|i| format!("dir_{i}")));
            header.extend(["volume", "petty", "ball_distance", "mode"].map(String::from));
            let rows: Vec<Vec<String>> = trace
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.step.to_string()];
                    row.extend(r.direction.iter().map(|x| number(*x)));
                    row.extend([number(r.volume), number(r.petty), number(r.ball_distance)]);
                    row.push(match r.mode {
                        Some(SteinerMode::Quadric) => "quadric",
                        Some(SteinerMode::ExactPolytope) => "exact_polytope",
                        Some(SteinerMode::Sampled) => "sampled",
                        None => "",
                    }
                    .to_string());
                    row
                })
                .collect();
            to_csv(&header, &rows)?
        }
    };
    Ok(Output { bytes, summary: Some(format!("final_ball_distance={}", number(last))), violations: 0 })
}
