//! The nonsymmetric L_p cosine transform and the operator families
//! `Π_p^τ` and `M_p^τ`.
//!
//! Both families are built from the two one-sided kernel sums
//! `A_±(u) = c_{n,p} ∫ (u·v)_±^p dμ(v)`; for `τ ∈ [-1, 1]`
//! `h^p = a(τ) A_+ + b(τ) A_-` with `a = (1+τ)^p / D`, `b = (1-τ)^p / D`,
//! `D = (1+τ)^p + (1-τ)^p`. Measures given as densities on a grid are
//! integrated with the kernel normalized on that same grid, so the discrete
//! transform maps 1 to 1 exactly.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, fabs, pow};

use crate::body::{sp_measure, ConvexBody, SphericalMeasure, StarBody, SupportGenerator};
use crate::error::{GeomError, Result};
use crate::linalg::dot;
use crate::par::map_indices;
use crate::special::{cosine_normalization, kappa};
use crate::sphere::SphereGrid;

/// Largest supported `p`; beyond it `t^p` underflows on the grid.
pub const MAX_P: f64 = 64.0;

/// `p` and `τ` of an operator in the families `Π_p^τ`, `M_p^τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OperatorParams {
    pub p: f64,
    pub tau: f64,
}

impl OperatorParams {
    pub fn new(p: f64, tau: f64) -> Result<Self> {
        if !(p > 1.0 && p <= MAX_P) {
            return Err(GeomError::InvalidParameter(format!("p must lie in (1, {MAX_P}], got {p}")));
        }
        if !(-1.0..=1.0).contains(&tau) {
            return Err(GeomError::InvalidParameter(format!("tau must lie in [-1, 1], got {tau}")));
        }
        Ok(OperatorParams { p, tau })
    }

    /// Weights `(a, b)` of `A_+` and `A_-`.
    pub fn weights(&self) -> (f64, f64) {
        tau_weights(self.p, self.tau)
    }

    /// `c_{n,p}(τ) = c_{n,p} / ((1+τ)^p + (1-τ)^p)`.
    pub fn constant(&self, n: usize) -> f64 {
        crate::special::tau_normalization(n, self.p, self.tau)
    }
}

/// `(a, b) = ((1+τ)^p, (1-τ)^p) / ((1+τ)^p + (1-τ)^p)`.
pub fn tau_weights(p: f64, tau: f64) -> (f64, f64) {
    let a = pow(1.0 + tau, p);
    let b = pow(1.0 - tau, p);
    (a / (a + b), b / (a + b))
}

/// `φ_τ(t) = |t| + τ t`.
#[inline]
pub fn phi_tau(tau: f64, t: f64) -> f64 {
    fabs(t) + tau * t
}

#[derive(Clone, Copy, Debug)]
enum PowKind {
    Two,
    Three,
    Int(i32),
    Real(f64),
}

impl PowKind {
    fn new(p: f64) -> Self {
        if p == 2.0 {
            PowKind::Two
        } else if p == 3.0 {
            PowKind::Three
        } else if p == libm::round(p) && p <= 16.0 {
            PowKind::Int(p as i32)
        } else {
            PowKind::Real(p)
        }
    }

    /// `|t|^p`.
    #[inline]
    fn abs_pow(self, t: f64) -> f64 {
        let a = fabs(t);
        match self {
            PowKind::Two => a * a,
            PowKind::Three => a * a * a,
            PowKind::Int(k) => {
                let mut r = 1.0;
                for _ in 0..k {
                    r *= a;
                }
                r
            }
            PowKind::Real(p) => {
                if a == 0.0 {
                    0.0
                } else {
                    pow(a, p)
                }
            }
        }
    }
}

/// Exact off-grid evaluator for `h^p = a A_+ + b A_-` with `A_±` built from
/// point masses. With normalization weights present, `A_±(u)` is divided by
/// the same kernel sum over those weights instead of using `c_{n,p}`.
#[derive(Clone, Debug)]
pub struct KernelGenerator {
    dim: usize,
    p: f64,
    plus: f64,
    minus: f64,
    directions: Arc<Vec<f64>>,
    masses: Arc<Vec<f64>>,
    norm_weights: Option<Arc<Vec<f64>>>,
    constant: f64,
}

impl KernelGenerator {
    fn from_measure(measure: &SphericalMeasure, p: f64) -> Result<Self> {
        let dim = measure.dim();
        let constant = cosine_normalization(dim, p);
        Ok(match measure {
            SphericalMeasure::Atoms { directions, masses, .. } => {
                if masses.is_empty() || masses.iter().all(|m| *m == 0.0) {
                    return Err(GeomError::EmptyMeasure);
                }
                KernelGenerator {
                    dim,
                    p,
                    plus: 1.0,
                    minus: 0.0,
                    directions: Arc::new(directions.iter().flatten().copied().collect()),
                    masses: Arc::new(masses.clone()),
                    norm_weights: None,
                    constant,
                }
            }
            SphericalMeasure::Density { grid, density } => {
                if density.len() != grid.len() {
                    return Err(GeomError::LengthMismatch { expected: grid.len(), got: density.len() });
                }
                if density.iter().all(|d| *d == 0.0) {
                    return Err(GeomError::EmptyMeasure);
                }
                KernelGenerator {
                    dim,
                    p,
                    plus: 1.0,
                    minus: 0.0,
                    directions: Arc::new(grid.node_data().to_vec()),
                    masses: Arc::new(density.iter().zip(grid.weights()).map(|(d, w)| d * w).collect()),
                    norm_weights: Some(Arc::new(grid.weights().to_vec())),
                    constant,
                }
            }
        })
    }

    /// Rebuilds a generator from its stored data: `directions` holds
    /// `masses.len()` unit vectors back to back, and `norm_weights`, when
    /// present, marks a density measure normalized per direction.
    pub fn from_parts(
        dim: usize,
        p: f64,
        plus: f64,
        minus: f64,
        directions: Vec<f64>,
        masses: Vec<f64>,
        norm_weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        OperatorParams::new(p, 0.0)?;
        if dim < 3 {
            return Err(GeomError::Dimension(dim));
        }
        if directions.len() != masses.len() * dim {
            return Err(GeomError::LengthMismatch { expected: masses.len() * dim, got: directions.len() });
        }
        if let Some(w) = &norm_weights {
            if w.len() != masses.len() {
                return Err(GeomError::LengthMismatch { expected: masses.len(), got: w.len() });
            }
        }
        let bad = directions.iter().chain(&masses).chain(norm_weights.iter().flatten()).chain([&plus, &minus]).position(|x| !x.is_finite());
        if let Some(i) = bad {
            return Err(GeomError::NonFinite(i));
        }
        if !(plus >= 0.0 && minus >= 0.0 && plus + minus > 0.0) {
            return Err(GeomError::InvalidParameter("kernel weights must be nonnegative and not both zero".into()));
        }
        if masses.iter().all(|m| *m == 0.0) {
            return Err(GeomError::EmptyMeasure);
        }
        Ok(KernelGenerator {
            dim,
            p,
            plus,
            minus,
            directions: Arc::new(directions),
            masses: Arc::new(masses),
            norm_weights: norm_weights.map(Arc::new),
            constant: cosine_normalization(dim, p),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `(a, b)` weighting `A_+` and `A_-`.
    pub fn weights(&self) -> (f64, f64) {
        (self.plus, self.minus)
    }

    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn norm_weights(&self) -> Option<&[f64]> {
        self.norm_weights.as_deref().map(|w| w.as_slice())
    }

    pub fn atom_count(&self) -> usize {
        self.masses.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_weights.is_some()
    }

    /// Same kernel data with weights `(a, b)` on `A_+` and `A_-`.
    pub fn with_weights(&self, plus: f64, minus: f64) -> Self {
        KernelGenerator { plus, minus, ..self.clone() }
    }

    /// `(A_+(u), A_-(u))`.
    pub fn one_sided(&self, u: &[f64]) -> (f64, f64) {
        match PowKind::new(self.p) {
            PowKind::Two => self.one_sided_with(u, |a| a * a),
            PowKind::Three => self.one_sided_with(u, |a| a * a * a),
            kind => self.one_sided_with(u, |a| kind.abs_pow(a)),
        }
    }

    /// One-sided sums with `f(|t|) = |t|^p`; the sign split is branch-free
    /// since the signs of `u·v_j` are unpredictable.
    #[inline(always)]
    fn one_sided_with(&self, u: &[f64], f: impl Fn(f64) -> f64) -> (f64, f64) {
        let n = self.dim;
        let (mut sp, mut sm, mut np, mut nm) = (0.0, 0.0, 0.0, 0.0);
        let dirs = &self.directions;
        let dot_at = |j: usize| -> f64 {
            if let [a, b, c] = *u {
                let q = &dirs[3 * j..3 * j + 3];
                q[0] * a + q[1] * b + q[2] * c
            } else {
                dot(u, &dirs[j * n..(j + 1) * n])
            }
        };
        match &self.norm_weights {
            Some(w) => {
                for (j, (m, wj)) in self.masses.iter().zip(w.iter()).enumerate() {
                    let t = dot_at(j);
                    let k = f(fabs(t));
                    let pos = (t > 0.0) as u8 as f64;
                    let (mk, wk) = (m * k, wj * k);
                    sp += mk * pos;
                    sm += mk - mk * pos;
                    np += wk * pos;
                    nm += wk - wk * pos;
                }
                (sp / np, sm / nm)
            }
            None => {
                for (j, m) in self.masses.iter().enumerate() {
                    let t = dot_at(j);
                    let mk = m * f(fabs(t));
                    let pos = (t > 0.0) as u8 as f64;
                    sp += mk * pos;
                    sm += mk - mk * pos;
                }
                (self.constant * sp, self.constant * sm)
            }
        }
    }

    /// `h(u)^p`.
    pub fn support_pow(&self, u: &[f64]) -> f64 {
        let (ap, am) = self.one_sided(u);
        let mut s = 0.0;
        if self.plus != 0.0 {
            s += self.plus * ap;
        }
        if self.minus != 0.0 {
            s += self.minus * am;
        }
        s
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        pow(self.support_pow(u), 1.0 / self.p)
    }

    /// Generator of `λ K`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let f = pow(lambda, self.p);
        KernelGenerator { masses: Arc::new(self.masses.iter().map(|m| m * f).collect()), ..self.clone() }
    }

    /// Generator of `-K`.
    pub fn reflected(&self) -> Self {
        KernelGenerator { plus: self.minus, minus: self.plus, ..self.clone() }
    }
}

/// One-sided kernel sums `A_±` of a measure on the nodes of `grid`, kept so
/// that any `τ` can be recombined without recomputing the integrals.
#[derive(Clone, Debug)]
pub struct KernelPair {
    grid: SphereGrid,
    p: f64,
    plus: Vec<f64>,
    minus: Vec<f64>,
    generator: KernelGenerator,
}

impl KernelPair {
    pub fn new(measure: &SphericalMeasure, p: f64, grid: &SphereGrid) -> Result<Self> {
        if !(p > 0.0 && p <= MAX_P) {
            return Err(GeomError::InvalidParameter(format!("p must lie in (0, {MAX_P}], got {p}")));
        }
        if measure.dim() != grid.dim() {
            return Err(GeomError::DimensionMismatch { expected: grid.dim(), got: measure.dim() });
        }
        let generator = KernelGenerator::from_measure(measure, p)?;
        let (plus, minus) = match measure {
            SphericalMeasure::Density { grid: mg, density } if mg.same_nodes(grid) && grid.product_layout().is_some() => {
                product_grid_sums(grid, density, p)
            }
            _ => {
                let pairs = map_indices(grid.len(), |i| generator.one_sided(grid.node(i)));
                pairs.into_iter().unzip()
            }
        };
        Ok(KernelPair { grid: grid.clone(), p, plus, minus, generator })
    }

    pub fn grid(&self) -> &SphereGrid {
        &self.grid
    }

    /// Samples of `A_+ = C_p^+ μ`.
    pub fn plus(&self) -> &[f64] {
        &self.plus
    }

    /// Samples of `A_-(u) = A_+(-u)`.
    pub fn minus(&self) -> &[f64] {
        &self.minus
    }

    /// Samples of `h^p = a A_+ + b A_-` for the given `τ`.
    pub fn support_pow(&self, tau: f64) -> Vec<f64> {
        let (a, b) = tau_weights(self.p, tau);
        self.plus.iter().zip(&self.minus).map(|(x, y)| a * x + b * y).collect()
    }

    /// The body with `h^p = a A_+ + b A_-`.
    pub fn body(&self, tau: f64) -> Result<ConvexBody> {
        if !(-1.0..=1.0).contains(&tau) {
            return Err(GeomError::InvalidParameter(format!("tau must lie in [-1, 1], got {tau}")));
        }
        let (a, b) = tau_weights(self.p, tau);
        let values = self.support_pow(tau).iter().map(|x| pow(*x, 1.0 / self.p)).collect();
        let gen = SupportGenerator::Kernel(self.generator.with_weights(a, b));
        ConvexBody::sampled_with_generator(self.grid.clone(), values, Some(gen))
    }

    /// Support values of the body for `τ` on the grid.
    pub fn support(&self, tau: f64) -> Vec<f64> {
        self.support_pow(tau).iter().map(|x| pow(*x, 1.0 / self.p)).collect()
    }
}

/// Normalized one-sided sums for a density on an `n = 3` product grid.
///
/// The kernel `|u·v|^p` between nodes depends only on the two rings and the
/// azimuth difference, so it is tabulated once per ring pair.
fn product_grid_sums(grid: &SphereGrid, density: &[f64], p: f64) -> (Vec<f64>, Vec<f64>) {
    let l = grid.product_layout().expect("product grid");
    let (rings, az) = (l.rings, l.azimuths);
    let kind = PowKind::new(p);
    let s: Vec<f64> = l.z.iter().map(|z| libm::sqrt((1.0 - z * z).max(0.0))).collect();
    let cosd: Vec<f64> = (0..az).map(|d| cos(d as f64 * 2.0 * core::f64::consts::PI / az as f64)).collect();
    let w = grid.weights();
    let per_ring = map_indices(rings, |r| {
        let mut sp = vec![0.0; az];
        let mut sm = vec![0.0; az];
        let (mut np, mut nm) = (0.0, 0.0);
        let mut kp = vec![0.0; az];
        let mut km = vec![0.0; az];
        for r2 in 0..rings {
            let (zz, ss) = (l.z[r] * l.z[r2], s[r] * s[r2]);
            let wr = w[l.index(r2, 0)];
            let (mut tp, mut tm) = (0.0, 0.0);
            for d in 0..az {
                let t = zz + ss * cosd[d];
                let k = kind.abs_pow(t);
                if t > 0.0 {
                    kp[d] = k;
                    km[d] = 0.0;
                    tp += k;
                } else {
                    kp[d] = 0.0;
                    km[d] = k;
                    tm += k;
                }
            }
            np += wr * tp;
            nm += wr * tm;
            let f = &density[r2 * az..(r2 + 1) * az];
            for b in 0..az {
                let fb = wr * f[b];
                if fb == 0.0 {
                    continue;
                }
                // Output azimuth a pairs with difference d = a - b (mod az).
                for a in 0..az {
                    let d = if a >= b { a - b } else { a + az - b };
                    sp[a] += fb * kp[d];
                    sm[a] += fb * km[d];
                }
            }
        }
        (sp.iter().map(|x| x / np).collect::<Vec<f64>>(), sm.iter().map(|x| x / nm).collect::<Vec<f64>>())
    });
    let mut plus = Vec::with_capacity(grid.len());
    let mut minus = Vec::with_capacity(grid.len());
    for (sp, sm) in per_ring {
        plus.extend(sp);
        minus.extend(sm);
    }
    (plus, minus)
}

/// `C_p^+ μ` sampled on `grid`.
pub fn cosine_transform_plus(measure: &SphericalMeasure, p: f64, grid: &SphereGrid) -> Result<Vec<f64>> {
    Ok(KernelPair::new(measure, p, grid)?.plus)
}

/// `C_p^+` applied to a (possibly signed) density sampled on `grid`, a
/// grid-to-grid map used for multiplier estimation.
pub fn cosine_transform_plus_density(density: &[f64], p: f64, grid: &SphereGrid) -> Result<Vec<f64>> {
    if density.len() != grid.len() {
        return Err(GeomError::LengthMismatch { expected: grid.len(), got: density.len() });
    }
    if density.iter().all(|d| *d == 0.0) {
        return Ok(vec![0.0; grid.len()]);
    }
    let m = SphericalMeasure::Density { grid: grid.clone(), density: density.to_vec() };
    Ok(KernelPair::new(&m, p, grid)?.plus)
}

/// Kernel sums of `S_p(K, ·)` on `grid`, from which `Π_p^τ K` follows for
/// every `τ`.
pub fn projection_pair(k: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<KernelPair> {
    let measure = sp_measure(k, p, grid)?;
    KernelPair::new(&measure, p, grid)
}

/// Kernel sums of `ρ(L, ·)^{n+p}` on `grid`, from which `M_p^τ L` follows
/// for every `τ`.
pub fn moment_pair(l: &StarBody, p: f64, grid: &SphereGrid) -> Result<KernelPair> {
    if l.dim() != grid.dim() {
        return Err(GeomError::DimensionMismatch { expected: grid.dim(), got: l.dim() });
    }
    let n = grid.dim() as f64;
    let rho = l.radial_on_grid(grid)?;
    let density = rho.iter().map(|r| pow(*r, n + p)).collect();
    KernelPair::new(&SphericalMeasure::Density { grid: grid.clone(), density }, p, grid)
}

/// `Π_p^τ K`, sampled on `grid`.
pub fn pi_tau(k: &ConvexBody, params: OperatorParams, grid: &SphereGrid) -> Result<ConvexBody> {
    projection_pair(k, params.p, grid)?.body(params.tau)
}

/// `M_p^τ L`, sampled on `grid`.
pub fn m_tau(l: &StarBody, params: OperatorParams, grid: &SphereGrid) -> Result<ConvexBody> {
    moment_pair(l, params.p, grid)?.body(params.tau)
}

/// `Π_p^- K` evaluated as `Π_p^+(-K)`.
pub fn pi_minus_by_reflection(k: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<ConvexBody> {
    pi_tau(&k.reflected(), OperatorParams::new(p, 1.0)?, grid)
}

/// `M_p^- L` evaluated as `M_p^+(-L)`.
pub fn m_minus_by_reflection(l: &StarBody, p: f64, grid: &SphereGrid) -> Result<ConvexBody> {
    m_tau(&reflect_star(l, grid)?, OperatorParams::new(p, 1.0)?, grid)
}

/// `-L` as a star body.
pub fn reflect_star(l: &StarBody, grid: &SphereGrid) -> Result<StarBody> {
    match l {
        StarBody::FromConvex(k) => Ok(StarBody::FromConvex(k.reflected())),
        StarBody::SampledRadial { grid: g, values } => {
            let _ = grid;
            StarBody::sampled(g.clone(), (0..g.len()).map(|i| values[g.antipode(i)]).collect())
        }
    }
}

/// `(τ, c)` with `c1 h(Π_p^+K)^p + c2 h(Π_p^-K)^p = c^p h(Π_p^τ K)^p`.
pub fn tau_from_coefficients(c1: f64, c2: f64, p: f64) -> Result<(f64, f64)> {
    if !(c1 >= 0.0) || !(c2 >= 0.0) {
        return Err(GeomError::InvalidParameter("coefficients must be nonnegative".into()));
    }
    if c1 + c2 == 0.0 {
        return Err(GeomError::ZeroCoefficients);
    }
    if !(p > 0.0) {
        return Err(GeomError::InvalidParameter(format!("p must be positive, got {p}")));
    }
    if c2 == 0.0 {
        return Ok((1.0, pow(c1, 1.0 / p)));
    }
    if c1 == 0.0 {
        return Ok((-1.0, pow(c2, 1.0 / p)));
    }
    let r = pow(c1 / c2, 1.0 / p);
    let tau = (r - 1.0) / (r + 1.0);
    let d = pow(1.0 + tau, p) + pow(1.0 - tau, p);
    Ok((tau, pow(c1 * d / pow(1.0 + tau, p), 1.0 / p)))
}

/// `h(ΠK, u) = ½ ∫ |u·v| dS(K, v)`, the classical projection body.
pub fn classical_projection_support(k: &ConvexBody, grid: &SphereGrid) -> Result<Vec<f64>> {
    let s = sp_measure(k, 1.0, grid)?;
    Ok(grid.sample(|u| 0.5 * s.integrate(|v| fabs(dot(u, v))).unwrap_or(f64::NAN)))
}

/// Sup-norm deviations of the operator limits.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LimitReport {
    pub p_projection: f64,
    /// `sup |κ_{n-1} h(Π_p^+K) - h(ΠK)| / sup h(ΠK)`.
    pub projection_deviation: f64,
    pub p_moment: f64,
    /// `sup |h(M_p^+K) - h(K)|`.
    pub moment_deviation: f64,
    /// `max_u h(K,u) + h(K,-u)`.
    pub diameter: f64,
}

/// Compares `Π_p^+K` near `p = 1` with `κ_{n-1}^{-1} ΠK` and `M_p^+K` at
/// large `p` with `K`.
pub fn limit_checks(k: &ConvexBody, grid: &SphereGrid) -> Result<LimitReport> {
    let (p_projection, p_moment) = (1.05, 40.0);
    let n = grid.dim();
    let exact = classical_projection_support(k, grid)?;
    let pi = projection_pair(k, p_projection, grid)?.support(1.0);
    let kn1 = kappa(n - 1);
    let scale = exact.iter().cloned().fold(0.0, f64::max);
    let projection_deviation =
        pi.iter().zip(&exact).map(|(a, b)| fabs(kn1 * a - b)).fold(0.0, f64::max) / scale;
    let m = moment_pair(&StarBody::FromConvex(k.clone()), p_moment, grid)?.support(1.0);
    let h = k.support_on_grid(grid);
    let moment_deviation = m.iter().zip(&h).map(|(a, b)| fabs(a - b)).fold(0.0, f64::max);
    Ok(LimitReport {
        p_projection,
        projection_deviation,
        p_moment,
        moment_deviation,
        diameter: k.width_bound(grid),
    })
}
