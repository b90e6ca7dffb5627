//! Steiner symmetrization, the inclusion `S_u Π_p^{τ,*}K ⊆ Π_p^{τ,*} S_u K`,
//! and seeded symmetrization flows toward the ball.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, pow, sin};

use crate::body::{ConvexBody, Polytope};
use crate::error::{GeomError, Result};
use crate::fixtures::FixtureRng;
use crate::inequalities::petty_value;
use crate::linalg::{dot, norm, normalized, tangent_basis, Matrix};
use crate::operators::{projection_pair, OperatorParams};
use crate::par::map_indices;
use crate::roots::{brent_min, brent_root};
use crate::special::kappa;
use crate::sphere::SphereGrid;

/// Default number of rings of the polar disk grid on `u^⊥`.
pub const DEFAULT_DISK_RESOLUTION: usize = 48;
/// Polytopes with at most this many edges are symmetrized exactly.
/// Polytopes with at most this many vertices have them added to the disk
/// samples in sampled mode; larger ones are already disk-sampled hulls.
pub const EXTRA_VERTEX_LIMIT: usize = 1024;
pub const EXACT_EDGE_LIMIT: usize = 240;

/// How a symmetral was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SteinerMode {
    /// Closed form for ellipsoids and balls.
    Quadric,
    /// Chords at all vertices of the projected edge arrangement.
    ExactPolytope,
    /// Chords on a polar disk grid, hulled.
    Sampled,
}

/// One Steiner step with its diagnostics.
#[derive(Clone, Debug)]
pub struct SteinerStep {
    pub direction: Vec<f64>,
    pub input: ConvexBody,
    pub output: ConvexBody,
    pub mode: SteinerMode,
    /// Disk-grid rings used in sampled mode.
    pub resolution: usize,
    /// Chords whose endpoints could not be found and were dropped.
    pub dropped_chords: usize,
}

/// `S_u K`. Balls and ellipsoids (possibly translated) are handled in closed
/// form, polytopes exactly when small, and everything else by chords on a
/// polar disk grid with `resolution` rings.
pub fn steiner(k: &ConvexBody, u: &[f64], resolution: usize) -> Result<ConvexBody> {
    Ok(steiner_step(k, u, resolution)?.output)
}

/// [`steiner`] with diagnostics.
pub fn steiner_step(k: &ConvexBody, u: &[f64], resolution: usize) -> Result<SteinerStep> {
    let n = k.dim();
    if u.len() != n {
        return Err(GeomError::DimensionMismatch { expected: n, got: u.len() });
    }
    let len = norm(u);
    if !(len > 0.0) || !len.is_finite() {
        return Err(GeomError::InvalidParameter("direction must be a nonzero vector".into()));
    }
    let u = normalized(u);
    let step = |output, mode, dropped| SteinerStep {
        direction: u.clone(),
        input: k.clone(),
        output,
        mode,
        resolution,
        dropped_chords: dropped,
    };
    if let Some(out) = quadric_steiner(k, &u)? {
        return Ok(step(out, SteinerMode::Quadric, 0));
    }
    if n != 3 {
        return Err(GeomError::Unsupported(format!("Steiner symmetrization of {} in dimension {n}", k.describe())));
    }
    if resolution < 4 {
        return Err(GeomError::Resolution(resolution));
    }
    let hrep = HRep::of(k)?;
    if let ConvexBody::Polytope(p) = k {
        if p.edges().len() <= EXACT_EDGE_LIMIT {
            let out = exact_polytope_steiner(p, &hrep, &u)?;
            return Ok(step(out, SteinerMode::ExactPolytope, 0));
        }
    }
    let extra: Vec<Vec<f64>> = match k {
        ConvexBody::Polytope(p) if p.vertices().len() <= EXTRA_VERTEX_LIMIT => p.vertices().to_vec(),
        _ => Vec::new(),
    };
    let (out, dropped) = sampled_steiner(&hrep, &u, resolution, &extra)?;
    Ok(step(out, SteinerMode::Sampled, dropped))
}

/// Closed form for (translated) balls and ellipsoids: with `K = {x :
/// xᵀQx ≤ 1} + c` the symmetral is `{x : xᵀQ'x ≤ 1} + Pc` where `P`
/// projects onto `u^⊥` and `Q' = PQP − P(Qu)(Qu)ᵀP / q_uu + q_uu uuᵀ`.
fn quadric_steiner(k: &ConvexBody, u: &[f64]) -> Result<Option<ConvexBody>> {
    let (inner, shift) = match k {
        ConvexBody::Translate { inner, shift } => (&**inner, Some(shift.as_slice())),
        other => (other, None),
    };
    let n = k.dim();
    let base = match inner {
        ConvexBody::Ball { .. } => inner.clone(),
        ConvexBody::Ellipsoid(e) => {
            let ai = e.inverse();
            let q = ai.transpose().mul(ai);
            let qu = q.mul_vec(u);
            let quu = dot(u, &qu);
            let pqu: Vec<f64> = qu.iter().zip(u).map(|(a, b)| a - quu * b).collect();
            let mut q2 = Matrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let mut pqp = q[(i, j)];
                    pqp -= u[i] * qu[j] + qu[i] * u[j];
                    pqp += quu * u[i] * u[j];
                    q2[(i, j)] = pqp - pqu[i] * pqu[j] / quu + quu * u[i] * u[j];
                }
            }
            let a2 = q2.symmetric_function(|x| 1.0 / libm::sqrt(x));
            ConvexBody::ellipsoid(a2)?
        }
        _ => return Ok(None),
    };
    Ok(Some(match shift {
        Some(c) => {
            let cu = dot(c, u);
            let pc: Vec<f64> = c.iter().zip(u).map(|(a, b)| a - cu * b).collect();
            base.translate(&pc)?
        }
        None => base,
    }))
}

/// Half-space description `{x : n_i·x ≤ b_i}`.
struct HRep {
    normals: Vec<[f64; 3]>,
    offsets: Vec<f64>,
    scale: f64,
}

impl HRep {
    fn of(k: &ConvexBody) -> Result<Self> {
        let (normals, offsets): (Vec<[f64; 3]>, Vec<f64>) = match k {
            ConvexBody::Polytope(p) => p.facets().iter().map(|f| ([f.normal[0], f.normal[1], f.normal[2]], f.offset)).unzip(),
            ConvexBody::SampledSupport(s) => s.grid().nodes().zip(s.values()).map(|(v, h)| ([v[0], v[1], v[2]], *h)).unzip(),
            ConvexBody::Translate { inner, shift } => match &**inner {
                ConvexBody::SampledSupport(s) => s
                    .grid()
                    .nodes()
                    .zip(s.values())
                    .map(|(v, h)| ([v[0], v[1], v[2]], h + dot(shift, v)))
                    .unzip(),
                _ => return Err(GeomError::Unsupported(format!("no half-space form for {}", k.describe()))),
            },
            _ => return Err(GeomError::Unsupported(format!("no half-space form for {}", k.describe()))),
        };
        let scale = offsets.iter().cloned().fold(0.0, f64::max);
        Ok(HRep { normals, offsets, scale })
    }

    /// `(z̲, z̄)` with `x + z u ∈ K` exactly for `z ∈ [z̲, z̄]`, or `None`
    /// when the line misses `K`.
    fn chord(&self, x: &[f64; 3], u: &[f64]) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let tol = 1e-12 * self.scale;
        for (nv, b) in self.normals.iter().zip(&self.offsets) {
            let nu = nv[0] * u[0] + nv[1] * u[1] + nv[2] * u[2];
            let slack = b - (nv[0] * x[0] + nv[1] * x[1] + nv[2] * x[2]);
            if nu > 1e-12 {
                hi = hi.min(slack / nu);
            } else if nu < -1e-12 {
                lo = lo.max(slack / nu);
            } else if slack < -tol {
                return None;
            }
        }
        if lo <= hi + tol && lo.is_finite() && hi.is_finite() {
            Some((lo, hi.max(lo)))
        } else {
            None
        }
    }
}

/// Chords of an [`HRep`] along a fixed `u`, parametrized by coordinates
/// `(a, b)` in a basis of `u^⊥`: each facet bounds `z` by the affine
/// function `c − α a − β b`, from above when `n·u > 0` and from below when
/// `n·u < 0`.
struct PlaneChords {
    upper: Vec<[f64; 3]>,
    lower: Vec<[f64; 3]>,
    /// Facets parallel to `u` as `(b, n·e_1, n·e_2)`.
    parallel: Vec<[f64; 3]>,
    tol: f64,
}

impl PlaneChords {
    fn new(hrep: &HRep, u: &[f64], basis: &[Vec<f64>]) -> Self {
        let (mut upper, mut lower, mut parallel) = (Vec::new(), Vec::new(), Vec::new());
        for (nv, b) in hrep.normals.iter().zip(&hrep.offsets) {
            let nu = nv[0] * u[0] + nv[1] * u[1] + nv[2] * u[2];
            let n1 = dot(nv, &basis[0]);
            let n2 = dot(nv, &basis[1]);
            if nu > 1e-12 {
                upper.push([b / nu, n1 / nu, n2 / nu]);
            } else if nu < -1e-12 {
                lower.push([b / nu, n1 / nu, n2 / nu]);
            } else {
                parallel.push([*b, n1, n2]);
            }
        }
        PlaneChords { upper, lower, parallel, tol: 1e-12 * hrep.scale }
    }

    /// Same contract as [`HRep::chord`] at `x = a e_1 + b e_2`.
    fn chord(&self, a: f64, b: f64) -> Option<(f64, f64)> {
        let mut hi = f64::INFINITY;
        for f in &self.upper {
            hi = hi.min(f[0] - f[1] * a - f[2] * b);
        }
        let mut lo = f64::NEG_INFINITY;
        for f in &self.lower {
            lo = lo.max(f[0] - f[1] * a - f[2] * b);
        }
        if self.parallel.iter().any(|f| f[0] - f[1] * a - f[2] * b < -self.tol) {
            return None;
        }
        if lo <= hi + self.tol && lo.is_finite() && hi.is_finite() {
            Some((lo, hi.max(lo)))
        } else {
            None
        }
    }
}

fn point(basis: &[Vec<f64>], a: f64, b: f64) -> [f64; 3] {
    [a * basis[0][0] + b * basis[1][0], a * basis[0][1] + b * basis[1][1], a * basis[0][2] + b * basis[1][2]]
}

fn symmetral_points(samples: &[([f64; 3], f64)], u: &[f64]) -> Vec<Vec<f64>> {
    let mut pts = Vec::with_capacity(2 * samples.len());
    for (x, l) in samples {
        let t = 0.5 * l;
        pts.push((0..3).map(|i| x[i] + t * u[i]).collect());
        if t > 0.0 {
            pts.push((0..3).map(|i| x[i] - t * u[i]).collect());
        }
    }
    pts
}

/// The symmetral of a polytope is the hull of `(x, ±ℓ(x)/2)` over the
/// vertices of the arrangement of projected edges, where the chord length
/// `ℓ` is affine on each cell.
fn exact_polytope_steiner(p: &Polytope, hrep: &HRep, u: &[f64]) -> Result<ConvexBody> {
    let basis = tangent_basis(u);
    let proj: Vec<[f64; 2]> = p.vertices().iter().map(|v| [dot(v, &basis[0]), dot(v, &basis[1])]).collect();
    let mut cands: Vec<[f64; 2]> = proj.clone();
    let edges = p.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(x) = segment_intersection(proj[a], proj[b], proj[c], proj[d]) {
                cands.push(x);
            }
        }
    }
    let samples: Vec<([f64; 3], f64)> = cands
        .iter()
        .filter_map(|c| {
            let x = point(&basis, c[0], c[1]);
            hrep.chord(&x, u).map(|(lo, hi)| (x, hi - lo))
        })
        .collect();
    ConvexBody::polytope(&symmetral_points(&samples, u))
}

/// Proper intersection of the segments `ab` and `cd` in the plane.
fn segment_intersection(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Option<[f64; 2]> {
    let r = [b[0] - a[0], b[1] - a[1]];
    let s = [d[0] - c[0], d[1] - c[1]];
    let den = r[0] * s[1] - r[1] * s[0];
    let scale = (r[0] * r[0] + r[1] * r[1]) * (s[0] * s[0] + s[1] * s[1]);
    if den * den <= 1e-24 * scale {
        return None;
    }
    let q = [c[0] - a[0], c[1] - a[1]];
    let t = (q[0] * s[1] - q[1] * s[0]) / den;
    let w = (q[0] * r[1] - q[1] * r[0]) / den;
    let eps = 1e-12;
    if t > eps && t < 1.0 - eps && w > eps && w < 1.0 - eps {
        Some([a[0] + t * r[0], a[1] + t * r[1]])
    } else {
        None
    }
}

/// Chords on the polar grid `r = R(θ) sin φ_j`, `φ_j = π j / 2J`, with
/// `max(8, round(4J sin φ_j))` azimuths on ring `j` so that the lifted
/// points spread evenly over the boundary of the symmetral; `R` is the
/// radial function of the projection `K | u^⊥`, found by bisection on `4J`
/// rim angles and interpolated in between. The projections of `extra`
/// points are added.
fn sampled_steiner(hrep: &HRep, u: &[f64], rings: usize, extra: &[Vec<f64>]) -> Result<(ConvexBody, usize)> {
    let basis = tangent_basis(u);
    let chords = PlaneChords::new(hrep, u, &basis);
    let angles = 4 * rings;
    let two_pi = 2.0 * core::f64::consts::PI;
    let rim = map_indices(angles, |i| {
        let th = two_pi * i as f64 / angles as f64;
        let (c, s) = (libm::cos(th), libm::sin(th));
        let inside = |r: f64| chords.chord(r * c, r * s).is_some();
        // Bisection for the boundary of the projection along the ray.
        let (mut lo, mut hi) = (0.0, hrep.scale * 2.0);
        while inside(hi) {
            hi *= 2.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if inside(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-13 * hrep.scale {
                break;
            }
        }
        lo
    });
    let rim_at = |th: f64| -> f64 {
        let x = th / two_pi * angles as f64;
        let i = libm::floor(x);
        let f = x - i;
        let i = (i as usize) % angles;
        (1.0 - f) * rim[i] + f * rim[(i + 1) % angles]
    };
    let per_ring = map_indices(rings, |j| {
        let j = j + 1;
        let sin_phi = sin(core::f64::consts::FRAC_PI_2 * j as f64 / rings as f64);
        let count = if j == rings { angles } else { (libm::round(angles as f64 * sin_phi) as usize).max(8) };
        let offset = if (rings - j) % 2 == 1 { 0.5 } else { 0.0 };
        let mut out = Vec::with_capacity(count);
        let mut dropped = 0;
        for i in 0..count {
            let th = two_pi * (i as f64 + offset) / count as f64;
            let radius = if j == rings { rim[i] } else { rim_at(th) };
            let r = radius * sin_phi;
            let (a, b) = (r * libm::cos(th), r * libm::sin(th));
            match chords.chord(a, b) {
                Some((lo, hi)) => out.push((point(&basis, a, b), hi - lo)),
                None => dropped += 1,
            }
        }
        (out, dropped)
    });
    let mut samples: Vec<([f64; 3], f64)> = Vec::new();
    let mut dropped = 0;
    let origin = [0.0; 3];
    if let Some((a, b)) = hrep.chord(&origin, u) {
        samples.push((origin, b - a));
    }
    for (s, d) in per_ring {
        samples.extend(s);
        dropped += d;
    }
    for v in extra {
        let t = dot(v, u);
        let x = [v[0] - t * u[0], v[1] - t * u[1], v[2] - t * u[2]];
        if let Some((a, b)) = hrep.chord(&x, u) {
            samples.push((x, b - a));
        }
    }
    Ok((ConvexBody::polytope(&symmetral_points(&samples, u))?, dropped))
}

/// Result of comparing `S_u Π_p^{τ,*}K` with `Π_p^{τ,*} S_u K` node by node.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InclusionReport {
    pub direction: Vec<f64>,
    pub p: f64,
    pub tau: f64,
    pub resolution: usize,
    /// `max_v ρ(Π_p^{τ,*} S_u K, v)`.
    pub scale: f64,
    /// `max_v (ρ(S_u Π_p^{τ,*}K, v) − ρ(Π_p^{τ,*} S_u K, v))`.
    pub max_violation: f64,
    /// `max_v` of the same difference taken with the opposite sign, the
    /// largest gap by which the inclusion is strict.
    pub max_gap: f64,
    pub holds: bool,
}

/// Relative tolerance of the inclusion test.
pub const INCLUSION_TOLERANCE: f64 = 1e-6;

/// Checks `ρ(S_u Π_p^{τ,*}K, v) ≤ ρ(Π_p^{τ,*} S_u K, v) + 1e-6·scale` at
/// every node of `grid`.
///
/// The left side is computed without sampling `Π_p^{τ,*}K`: it is the body
/// `{x : h(Π_p^τ K, x) ≤ 1}`, whose chords are found by one-dimensional root
/// finding on the exact support function of `Π_p^τ K`.
pub fn inclusion_check(k: &ConvexBody, params: OperatorParams, u: &[f64], grid: &SphereGrid) -> Result<InclusionReport> {
    if grid.dim() != 3 || k.dim() != 3 {
        return Err(GeomError::Unsupported("inclusion checks are implemented for n = 3".into()));
    }
    let u = normalized(u);
    let pi = projection_pair(k, params.p, grid)?.body(params.tau)?;
    let sk = steiner(k, &u, DEFAULT_DISK_RESOLUTION)?;
    let rhs: Vec<f64> = projection_pair(&sk, params.p, grid)?.support(params.tau).iter().map(|h| 1.0 / h).collect();
    let scale = rhs.iter().cloned().fold(0.0, f64::max);
    let h_min = pi.support_on_grid(grid).iter().cloned().fold(f64::INFINITY, f64::min);
    let reach = 1.5 / h_min;
    let gauge = |x: &[f64]| pi.support_extended(x);
    let lhs: Result<Vec<f64>> = map_indices(grid.len(), |i| symmetral_radial(&gauge, &u, grid.node(i), reach)).into_iter().collect();
    let lhs = lhs?;
    let mut max_violation = f64::NEG_INFINITY;
    let mut max_gap: f64 = 0.0;
    for (a, b) in lhs.iter().zip(&rhs) {
        max_violation = max_violation.max(a - b);
        max_gap = max_gap.max(b - a);
    }
    Ok(InclusionReport {
        direction: u,
        p: params.p,
        tau: params.tau,
        resolution: grid.resolution(),
        scale,
        max_violation,
        max_gap,
        holds: max_violation <= INCLUSION_TOLERANCE * scale,
    })
}

/// Signed chord length of `Q = {x : g(x) ≤ 1}` along `u` through `x`:
/// `z̄ − z̲` when the line meets `Q`, else `1 − min_z g(x + z u)` (negative),
/// which keeps the function continuous across the boundary of `Q | u^⊥`.
fn gauge_chord(g: &impl Fn(&[f64]) -> f64, x: &[f64], u: &[f64], reach: f64) -> Result<f64> {
    let at = |z: f64| -> f64 {
        let y = [x[0] + z * u[0], x[1] + z * u[1], x[2] + z * u[2]];
        g(&y)
    };
    let (zm, gm) = brent_min(at, -reach, reach, 1e-12);
    if gm >= 1.0 {
        return Ok(1.0 - gm);
    }
    let tol = 1e-14 * reach;
    let hi = brent_root(|z| at(z) - 1.0, zm, reach, tol)?;
    let lo = brent_root(|z| at(z) - 1.0, -reach, zm, tol)?;
    Ok(hi - lo)
}

/// `ρ(S_u Q, v)` for `Q = {x : g(x) ≤ 1}`: the largest `r` with
/// `r |v·u| ≤ ℓ(r P v) / 2`.
fn symmetral_radial(g: &impl Fn(&[f64]) -> f64, u: &[f64], v: &[f64], reach: f64) -> Result<f64> {
    let vu = dot(v, u);
    let pv = [v[0] - vu * u[0], v[1] - vu * u[1], v[2] - vu * u[2]];
    let f = |r: f64| -> f64 {
        let x = [r * pv[0], r * pv[1], r * pv[2]];
        match gauge_chord(g, &x, u, reach) {
            Ok(l) => 0.5 * l - r * fabs(vu),
            Err(_) => f64::NAN,
        }
    };
    let mut hi = reach;
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    brent_root(f, 0.0, hi, 1e-14 * reach)
}

/// One row of a symmetrization flow trace.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FlowRow {
    pub step: usize,
    /// Direction of the step; zero for the initial row.
    pub direction: Vec<f64>,
    pub volume: f64,
    /// `V(K)^{n/p−1} V(Π_p^{τ,*}K)`.
    pub petty: f64,
    /// `max_v |ρ(K, v) − r| / r` with `r` the radius of the ball of equal
    /// volume.
    pub ball_distance: f64,
    pub mode: Option<SteinerMode>,
}

/// Rows of a flow together with the final body.
#[derive(Clone, Debug)]
pub struct FlowTrace {
    pub rows: Vec<FlowRow>,
    pub body: ConvexBody,
}

/// `max_v |ρ(K, v) − r| / r` with `V(rB) = V(K)`.
pub fn ball_distance(k: &ConvexBody, grid: &SphereGrid) -> Result<f64> {
    let n = grid.dim() as f64;
    let r = pow(k.volume(grid)? / kappa(grid.dim()), 1.0 / n);
    let rho = k.radial_on_grid(grid)?;
    Ok(rho.iter().map(|x| fabs(x - r)).fold(0.0, f64::max) / r)
}

/// Applies `steps` Steiner symmetrizations in directions drawn uniformly
/// from the sphere with the given seed, recording volume, Petty product and
/// distance to the ball after each.
pub fn symmetrize_flow(
    k: &ConvexBody,
    params: OperatorParams,
    steps: usize,
    seed: u64,
    grid: &SphereGrid,
    resolution: usize,
) -> Result<FlowTrace> {
    if steps == 0 {
        return Err(GeomError::InvalidParameter("a flow needs at least one step".into()));
    }
    let n = k.dim();
    let mut rng = FixtureRng::new(seed);
    let mut body = k.clone();
    let row = |step, direction, body: &ConvexBody, mode| -> Result<FlowRow> {
        Ok(FlowRow {
            step,
            direction,
            volume: body.volume(grid)?,
            petty: petty_value(body, params, grid)?,
            ball_distance: ball_distance(body, grid)?,
            mode,
        })
    };
    let mut rows = vec![row(0, vec![0.0; n], &body, None)?];
    for step in 1..=steps {
        let u = rng.direction(n);
        let s = steiner_step(&body, &u, resolution)?;
        body = s.output;
        rows.push(row(step, u, &body, Some(s.mode))?);
    }
    Ok(FlowTrace { rows, body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cube, shifted_ball};

    #[test]
    fn segments_cross() {
        let x = segment_intersection([0.0, 0.0], [2.0, 2.0], [0.0, 2.0], [2.0, 0.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
        assert!(segment_intersection([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]).is_none());
    }

    #[test]
    fn quadric_symmetrals() {
        let s = steiner(&shifted_ball(3), &[0.0, 0.0, 1.0], 48).unwrap();
        assert!(matches!(s, ConvexBody::Ball { .. }));
        let s = steiner(&shifted_ball(3), &[1.0, 0.0, 0.0], 48).unwrap();
        assert!((s.support(&[0.0, 0.0, 1.0]) - 1.3).abs() < 1e-12);
    }

    #[test]
    fn cube_symmetral_along_axis_is_cube() {
        let s = steiner(&cube(3), &[0.0, 0.0, 1.0], 48).unwrap();
        let ConvexBody::Polytope(p) = &s else { panic!() };
        assert_eq!(p.vertices().len(), 8);
        assert!((p.volume() - 8.0).abs() < 1e-12);
    }
}
