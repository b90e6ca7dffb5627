//! Convex and star bodies: support and radial evaluation, polar bodies, L_p
//! and harmonic radial combinations, L_p surface area measures, centroids
//! and the Santaló point.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, pow, sqrt};

use crate::error::{GeomError, Result};
use crate::hull::{convex_hull_3d, simplex_facets, Facet};
use crate::linalg::{dot, norm, solve_spd, tangent_basis, Matrix};
use crate::operators::KernelGenerator;
use crate::par::map_indices;
use crate::roots::{convex_min_2d, larger_quadratic_root};
use crate::sphere::SphereGrid;

/// Generators whose single evaluation costs more than this many elementary
/// terms are not used for radial refinement.
pub const CHEAP_GENERATOR_COST: usize = 4096;

/// Step (radians) of the finite-difference curvature function.
pub const CURVATURE_STEP: f64 = 1e-4;

/// `max_i points_i · u` over points stored back to back.
fn max_dot(points: &[f64], u: &[f64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    if let [a, b, c] = *u {
        for q in points.chunks_exact(3) {
            best = best.max(q[0] * a + q[1] * b + q[2] * c);
        }
    } else {
        for q in points.chunks_exact(u.len()) {
            best = best.max(dot(q, u));
        }
    }
    best
}

/// A convex polytope with the origin in its interior.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    edges: Vec<(usize, usize)>,
    /// Vertices back to back, for the support scan.
    flat_vertices: Vec<f64>,
    /// `normal_i / offset_i` back to back, the vertices of the polar.
    polar_points: Vec<f64>,
}

impl Polytope {
    fn assemble(dim: usize, vertices: Vec<Vec<f64>>, facets: Vec<Facet>, edges: Vec<(usize, usize)>) -> Self {
        let flat_vertices = vertices.iter().flatten().copied().collect();
        let polar_points = facets.iter().flat_map(|f| f.normal.iter().map(move |x| x / f.offset)).collect();
        Polytope { dim, vertices, facets, edges, flat_vertices, polar_points }
    }

    /// Convex hull of `points` (any dimension 3; simplices only for `n > 3`).
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.first().map(|p| p.len()).unwrap_or(0);
        if n < 3 {
            return Err(GeomError::Dimension(n));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(GeomError::InvalidBody("vertices have mixed dimensions".into()));
        }
        let poly = if n == 3 {
            let pts: Vec<[f64; 3]> = points.iter().map(|p| [p[0], p[1], p[2]]).collect();
            let h = convex_hull_3d(&pts)?;
            Polytope::assemble(3, h.vertices, h.facets, h.edges)
        } else {
            if points.len() != n + 1 {
                return Err(GeomError::Unsupported(format!(
                    "polytopes in dimension {n} must be simplices ({} vertices)",
                    n + 1
                )));
            }
            let facets = simplex_facets(points)?;
            let mut edges = Vec::new();
            for i in 0..=n {
                for j in i + 1..=n {
                    edges.push((i, j));
                }
            }
            Polytope::assemble(n, points.to_vec(), facets, edges)
        };
        poly.check()?;
        Ok(poly)
    }

    fn check(&self) -> Result<()> {
        for f in &self.facets {
            if !(f.offset > 0.0) {
                return Err(GeomError::OriginNotInterior);
            }
            if fabs(norm(&f.normal) - 1.0) > 1e-10 {
                return Err(GeomError::InvalidBody("facet normal is not a unit vector".into()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        max_dot(&self.flat_vertices, u)
    }

    /// `ρ(P, u) = 1 / h(P^*, u)` with `P^*` the hull of `normal_i / offset_i`.
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        let best = max_dot(&self.polar_points, u);
        if best > 0.0 && best.is_finite() {
            Ok(1.0 / best)
        } else {
            Err(GeomError::OriginNotInterior)
        }
    }

    /// Exact volume `(1/n) Σ offset_i area_i`.
    pub fn volume(&self) -> f64 {
        self.facets.iter().map(|f| f.offset * f.area).sum::<f64>() / self.dim as f64
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| f.area).sum()
    }

    fn map_vertices(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let pts: Vec<Vec<f64>> = self.vertices.iter().map(|v| f(v)).collect();
        Polytope::from_points(&pts)
    }

    /// The polytope moved by `c`; facet data is shifted, not recomputed.
    pub fn translated(&self, c: &[f64]) -> Result<Self> {
        let vertices = self.vertices.iter().map(|v| v.iter().zip(c).map(|(a, b)| a + b).collect()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: f.offset + dot(&f.normal, c), area: f.area })
            .collect();
        let p = Polytope::assemble(self.dim, vertices, facets, self.edges.clone());
        p.check()?;
        Ok(p)
    }
}

/// A centered ellipsoid `A B^n` with `A` symmetric positive definite.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Ellipsoid {
    a: Matrix,
    a_inv: Matrix,
    det: f64,
}

impl Ellipsoid {
    pub fn new(a: Matrix) -> Result<Self> {
        if a.dim() < 3 {
            return Err(GeomError::Dimension(a.dim()));
        }
        if !a.is_symmetric(1e-12) || a.cholesky().is_none() {
            return Err(GeomError::InvalidBody("ellipsoid matrix must be symmetric positive definite".into()));
        }
        let a_inv = a.inverse().ok_or_else(|| GeomError::InvalidBody("singular ellipsoid matrix".into()))?;
        let det = a.det();
        Ok(Ellipsoid { a, a_inv, det })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn inverse(&self) -> &Matrix {
        &self.a_inv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        norm(&self.a.mul_vec(u))
    }

    pub fn radial(&self, u: &[f64]) -> f64 {
        1.0 / norm(&self.a_inv.mul_vec(u))
    }
}

/// Off-grid evaluator attached to a sampled support function.
#[derive(Clone, Debug)]
pub enum SupportGenerator {
    /// `h^p` given by an L_p cosine-type kernel integral.
    Kernel(KernelGenerator),
    /// `h^p = α h_K^p + β h_L^p`.
    LpCombination { alpha: f64, k: ConvexBody, beta: f64, l: ConvexBody, p: f64 },
    /// `h(φ^T u)` for a body `K` and linear map `φ`, giving `φ K`.
    Linear { inner: ConvexBody, map_t: Matrix },
}

impl SupportGenerator {
    pub fn support(&self, u: &[f64]) -> f64 {
        match self {
            SupportGenerator::Kernel(k) => k.support(u),
            SupportGenerator::LpCombination { alpha, k, beta, l, p } => {
                pow(alpha * pow(k.support(u), *p) + beta * pow(l.support(u), *p), 1.0 / p)
            }
            SupportGenerator::Linear { inner, map_t } => {
                let w = map_t.mul_vec(u);
                let r = norm(&w);
                r * inner.support(&w.iter().map(|x| x / r).collect::<Vec<_>>())
            }
        }
    }

    /// Rough number of elementary terms in one evaluation; `None` when the
    /// generator itself falls back to nearest-node lookups.
    pub fn cost(&self) -> Option<usize> {
        match self {
            SupportGenerator::Kernel(k) => Some(k.atom_count() * if k.is_normalized() { 2 } else { 1 }),
            SupportGenerator::LpCombination { k, l, .. } => Some(k.generator_cost()? + l.generator_cost()?),
            SupportGenerator::Linear { inner, .. } => inner.generator_cost(),
        }
    }

    fn scaled(&self, lambda: f64) -> Result<Self> {
        Ok(match self {
            SupportGenerator::Kernel(k) => SupportGenerator::Kernel(k.scaled(lambda)),
            SupportGenerator::LpCombination { alpha, k, beta, l, p } => SupportGenerator::LpCombination {
                alpha: *alpha,
                k: k.scaled(lambda)?,
                beta: *beta,
                l: l.scaled(lambda)?,
                p: *p,
            },
            SupportGenerator::Linear { inner, map_t } => {
                SupportGenerator::Linear { inner: inner.scaled(lambda)?, map_t: map_t.clone() }
            }
        })
    }

    fn reflected(&self) -> Self {
        match self {
            SupportGenerator::Kernel(k) => SupportGenerator::Kernel(k.reflected()),
            SupportGenerator::LpCombination { alpha, k, beta, l, p } => SupportGenerator::LpCombination {
                alpha: *alpha,
                k: k.reflected(),
                beta: *beta,
                l: l.reflected(),
                p: *p,
            },
            SupportGenerator::Linear { inner, map_t } => {
                SupportGenerator::Linear { inner: inner.reflected(), map_t: map_t.clone() }
            }
        }
    }
}

/// Support function sampled on a grid, with an optional exact off-grid
/// evaluator.
#[derive(Clone, Debug)]
pub struct SampledSupport {
    grid: SphereGrid,
    values: Vec<f64>,
    generator: Option<SupportGenerator>,
}

impl SampledSupport {
    pub fn grid(&self) -> &SphereGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn generator(&self) -> Option<&SupportGenerator> {
        self.generator.as_ref()
    }

    fn support(&self, u: &[f64]) -> f64 {
        let i = self.grid.nearest(u);
        if dot(self.grid.node(i), u) > 1.0 - 1e-15 {
            return self.values[i];
        }
        match &self.generator {
            Some(g) => g.support(u),
            None => self.values[i],
        }
    }

    /// Largest relative violation of `h(v+w) ≤ h(v) + h(w)` over `trials`
    /// pseudo-random node pairs (sampled convexity check).
    pub fn convexity_defect(&self, trials: usize, seed: u64) -> f64 {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let count = self.grid.len() as u64;
        let mut worst: f64 = 0.0;
        for _ in 0..trials {
            let i = (rng.next_u64() % count) as usize;
            let j = (rng.next_u64() % count) as usize;
            let s: Vec<f64> = self.grid.node(i).iter().zip(self.grid.node(j)).map(|(a, b)| a + b).collect();
            let r = norm(&s);
            if r < 1e-6 {
                continue;
            }
            let u: Vec<f64> = s.iter().map(|x| x / r).collect();
            let lhs = self.support(&u) * r;
            let rhs = self.values[i] + self.values[j];
            worst = worst.max((lhs - rhs) / rhs);
        }
        worst
    }
}

/// Convex body containing the origin in its interior.
#[derive(Clone, Debug)]
pub enum ConvexBody {
    Ball { dim: usize, radius: f64 },
    Ellipsoid(Arc<Ellipsoid>),
    Polytope(Arc<Polytope>),
    /// `inner + shift`; never wraps a polytope (those are moved eagerly) or
    /// another translate.
    Translate { inner: Arc<ConvexBody>, shift: Vec<f64> },
    SampledSupport(Arc<SampledSupport>),
}

impl ConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if dim < 3 {
            return Err(GeomError::Dimension(dim));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidBody(format!("ball radius must be positive, got {radius}")));
        }
        Ok(ConvexBody::Ball { dim, radius })
    }

    pub fn unit_ball(dim: usize) -> Self {
        ConvexBody::Ball { dim, radius: 1.0 }
    }

    pub fn ellipsoid(a: Matrix) -> Result<Self> {
        Ok(ConvexBody::Ellipsoid(Arc::new(Ellipsoid::new(a)?)))
    }

    pub fn polytope(points: &[Vec<f64>]) -> Result<Self> {
        Ok(ConvexBody::Polytope(Arc::new(Polytope::from_points(points)?)))
    }

    /// Support function samples on `grid`, without an off-grid evaluator.
    pub fn sampled_support(grid: SphereGrid, values: Vec<f64>) -> Result<Self> {
        Self::sampled_with_generator(grid, values, None)
    }

    pub fn sampled_with_generator(
        grid: SphereGrid,
        values: Vec<f64>,
        generator: Option<SupportGenerator>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(GeomError::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        if values.iter().any(|&x| x <= 0.0) {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(ConvexBody::SampledSupport(Arc::new(SampledSupport { grid, values, generator })))
    }

    /// `self + c`.
    pub fn translate(&self, c: &[f64]) -> Result<Self> {
        if c.len() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: c.len() });
        }
        match self {
            ConvexBody::Polytope(p) => Ok(ConvexBody::Polytope(Arc::new(p.translated(c)?))),
            ConvexBody::Translate { inner, shift } => {
                let total: Vec<f64> = shift.iter().zip(c).map(|(a, b)| a + b).collect();
                Self::translate_inner(inner.clone(), total)
            }
            other => Self::translate_inner(Arc::new(other.clone()), c.to_vec()),
        }
    }

    fn translate_inner(inner: Arc<ConvexBody>, shift: Vec<f64>) -> Result<Self> {
        if shift.iter().all(|x| *x == 0.0) {
            return Ok((*inner).clone());
        }
        let interior = match &*inner {
            ConvexBody::Ball { radius, .. } => norm(&shift) < *radius,
            ConvexBody::Ellipsoid(e) => norm(&e.a_inv.mul_vec(&shift)) < 1.0,
            ConvexBody::SampledSupport(s) => {
                s.grid.nodes().zip(&s.values).all(|(u, h)| h + dot(&shift, u) > 0.0)
            }
            _ => true,
        };
        if !interior {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(ConvexBody::Translate { inner, shift })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ball { dim, .. } => *dim,
            ConvexBody::Ellipsoid(e) => e.a.dim(),
            ConvexBody::Polytope(p) => p.dim,
            ConvexBody::Translate { inner, .. } => inner.dim(),
            ConvexBody::SampledSupport(s) => s.grid.dim(),
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            ConvexBody::Ball { radius, .. } => format!("ball(r={radius})"),
            ConvexBody::Ellipsoid(_) => "ellipsoid".into(),
            ConvexBody::Polytope(p) => format!("polytope({} vertices, {} facets)", p.vertices.len(), p.facets.len()),
            ConvexBody::Translate { inner, shift } => format!("{} + {:?}", inner.describe(), shift),
            ConvexBody::SampledSupport(s) => format!("sampled_support(resolution={})", s.grid.resolution()),
        }
    }

    /// `h(K, u)`.
    pub fn support(&self, u: &[f64]) -> f64 {
        match self {
            ConvexBody::Ball { radius, .. } => *radius * norm(u),
            ConvexBody::Ellipsoid(e) => e.support(u),
            ConvexBody::Polytope(p) => p.support(u),
            ConvexBody::Translate { inner, shift } => inner.support(u) + dot(shift, u),
            ConvexBody::SampledSupport(s) => s.support(u),
        }
    }

    /// Support values at every node of `grid`.
    pub fn support_on_grid(&self, grid: &SphereGrid) -> Vec<f64> {
        match self {
            ConvexBody::SampledSupport(s) if s.grid.same_nodes(grid) => s.values.clone(),
            ConvexBody::Translate { inner, shift } => {
                let base = inner.support_on_grid(grid);
                base.iter().zip(grid.nodes()).map(|(h, u)| h + dot(shift, u)).collect()
            }
            _ => grid.sample(|u| self.support(u)),
        }
    }

    /// Cost of one off-grid support evaluation, `None` when off-grid values
    /// are only nearest-node approximations.
    pub fn generator_cost(&self) -> Option<usize> {
        match self {
            ConvexBody::Ball { .. } => Some(1),
            ConvexBody::Ellipsoid(e) => Some(e.a.dim() * e.a.dim()),
            ConvexBody::Polytope(p) => Some(p.vertices.len()),
            ConvexBody::Translate { inner, .. } => inner.generator_cost(),
            ConvexBody::SampledSupport(s) => s.generator.as_ref().and_then(|g| g.cost()),
        }
    }

    /// True for the bodies whose curvature function is available.
    pub fn has_curvature(&self) -> bool {
        match self {
            ConvexBody::Ball { .. } | ConvexBody::Ellipsoid(_) => true,
            ConvexBody::Translate { inner, .. } => inner.has_curvature(),
            ConvexBody::SampledSupport(s) => s.generator.is_some(),
            ConvexBody::Polytope(_) => false,
        }
    }

    /// `ρ(K, u)` for a unit vector `u`.
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        match self {
            ConvexBody::Ball { radius, .. } => Ok(*radius),
            ConvexBody::Ellipsoid(e) => Ok(e.radial(u)),
            ConvexBody::Polytope(p) => p.radial(u),
            ConvexBody::Translate { inner, shift } => translated_radial(inner, shift, u),
            ConvexBody::SampledSupport(s) => sampled_radial(s, None, u),
        }
    }

    /// Radial values at every node of `grid`.
    pub fn radial_on_grid(&self, grid: &SphereGrid) -> Result<Vec<f64>> {
        map_indices(grid.len(), |i| self.radial(grid.node(i))).into_iter().collect()
    }

    /// `V(K)`: exact for polytopes, `(1/n) ∫ ρ^n` on `grid` otherwise.
    pub fn volume(&self, grid: &SphereGrid) -> Result<f64> {
        match self {
            ConvexBody::Polytope(p) => Ok(p.volume()),
            _ => {
                let n = self.dim() as i32;
                let rho = self.radial_on_grid(grid)?;
                let f: Vec<f64> = rho.iter().map(|r| powi(*r, n)).collect();
                Ok(grid.integrate(&f)? / n as f64)
            }
        }
    }

    /// `λ K` for `λ > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(GeomError::InvalidParameter(format!("scale factor must be positive, got {lambda}")));
        }
        Ok(match self {
            ConvexBody::Ball { dim, radius } => ConvexBody::Ball { dim: *dim, radius: radius * lambda },
            ConvexBody::Ellipsoid(e) => ConvexBody::ellipsoid(e.a.scaled(lambda))?,
            ConvexBody::Polytope(p) => {
                let vertices: Vec<Vec<f64>> = p.vertices.iter().map(|v| v.iter().map(|x| x * lambda).collect()).collect();
                let facets = p
                    .facets
                    .iter()
                    .map(|f| Facet {
                        normal: f.normal.clone(),
                        offset: f.offset * lambda,
                        area: f.area * powi(lambda, p.dim as i32 - 1),
                    })
                    .collect();
                ConvexBody::Polytope(Arc::new(Polytope::assemble(p.dim, vertices, facets, p.edges.clone())))
            }
            ConvexBody::Translate { inner, shift } => ConvexBody::Translate {
                inner: Arc::new(inner.scaled(lambda)?),
                shift: shift.iter().map(|x| x * lambda).collect(),
            },
            ConvexBody::SampledSupport(s) => ConvexBody::SampledSupport(Arc::new(SampledSupport {
                grid: s.grid.clone(),
                values: s.values.iter().map(|x| x * lambda).collect(),
                generator: s.generator.as_ref().map(|g| g.scaled(lambda)).transpose()?,
            })),
        })
    }

    /// `-K`.
    pub fn reflected(&self) -> Self {
        match self {
            ConvexBody::Ball { .. } | ConvexBody::Ellipsoid(_) => self.clone(),
            ConvexBody::Polytope(p) => {
                let vertices = p.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
                let facets = p
                    .facets
                    .iter()
                    .map(|f| Facet { normal: f.normal.iter().map(|x| -x).collect(), offset: f.offset, area: f.area })
                    .collect();
                ConvexBody::Polytope(Arc::new(Polytope::assemble(p.dim, vertices, facets, p.edges.clone())))
            }
            ConvexBody::Translate { inner, shift } => ConvexBody::Translate {
                inner: Arc::new(inner.reflected()),
                shift: shift.iter().map(|x| -x).collect(),
            },
            ConvexBody::SampledSupport(s) => {
                let values = (0..s.grid.len()).map(|i| s.values[s.grid.antipode(i)]).collect();
                ConvexBody::SampledSupport(Arc::new(SampledSupport {
                    grid: s.grid.clone(),
                    values,
                    generator: s.generator.as_ref().map(|g| g.reflected()),
                }))
            }
        }
    }

    /// `φ K` for an invertible linear map `φ`. Sampled bodies are resampled
    /// on their own grid through `h(φK, u) = h(K, φ^T u)`.
    pub fn linear_image(&self, phi: &Matrix) -> Result<Self> {
        if phi.dim() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: phi.dim() });
        }
        if phi.det() == 0.0 {
            return Err(GeomError::InvalidParameter("linear map is singular".into()));
        }
        match self {
            ConvexBody::Ball { radius, .. } => {
                let m = phi.mul(&phi.transpose()).scaled(radius * radius);
                ConvexBody::ellipsoid(sym_sqrt(&m))
            }
            ConvexBody::Ellipsoid(e) => {
                let pa = phi.mul(&e.a);
                ConvexBody::ellipsoid(sym_sqrt(&pa.mul(&pa.transpose())))
            }
            ConvexBody::Polytope(p) => Ok(ConvexBody::Polytope(Arc::new(p.map_vertices(|v| phi.mul_vec(v))?))),
            ConvexBody::Translate { inner, shift } => inner.linear_image(phi)?.translate(&phi.mul_vec(shift)),
            ConvexBody::SampledSupport(s) => {
                let map_t = phi.transpose();
                let gen = SupportGenerator::Linear { inner: self.clone(), map_t };
                let values = s.grid.sample(|u| gen.support(u));
                ConvexBody::sampled_with_generator(s.grid.clone(), values, Some(gen))
            }
        }
    }

    /// `max_u h(K,u) + h(K,-u)` over `grid`.
    pub fn width_bound(&self, grid: &SphereGrid) -> f64 {
        let h = self.support_on_grid(grid);
        (0..grid.len()).map(|i| h[i] + h[grid.antipode(i)]).fold(0.0, f64::max)
    }

    /// 1-homogeneous extension `H(x) = |x| h(K, x/|x|)`.
    pub fn support_extended(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        if r == 0.0 {
            return 0.0;
        }
        match self {
            ConvexBody::Translate { inner, shift } => inner.support_extended(x) + dot(shift, x),
            _ => {
                let u: Vec<f64> = x.iter().map(|c| c / r).collect();
                r * self.support(&u)
            }
        }
    }
}

fn sym_sqrt(m: &Matrix) -> Matrix {
    let mut s = m.symmetric_function(|x| sqrt(x.max(0.0)));
    // Symmetrize against rounding.
    let t = s.transpose();
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            s[(i, j)] = 0.5 * (s[(i, j)] + t[(i, j)]);
        }
    }
    s
}

#[inline]
pub(crate) fn powi(x: f64, k: i32) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        2 => x * x,
        3 => x * x * x,
        4 => {
            let y = x * x;
            y * y
        }
        _ => pow(x, k as f64),
    }
}

fn translated_radial(inner: &ConvexBody, shift: &[f64], u: &[f64]) -> Result<f64> {
    match inner {
        ConvexBody::Ball { radius, .. } => {
            let b = -2.0 * dot(u, shift);
            let c = dot(shift, shift) - radius * radius;
            larger_quadratic_root(1.0, b, c).ok_or(GeomError::OriginNotInterior)
        }
        ConvexBody::Ellipsoid(e) => {
            let au = e.a_inv.mul_vec(u);
            let ac = e.a_inv.mul_vec(shift);
            larger_quadratic_root(dot(&au, &au), -2.0 * dot(&au, &ac), dot(&ac, &ac) - 1.0)
                .ok_or(GeomError::OriginNotInterior)
        }
        ConvexBody::SampledSupport(s) => sampled_radial(s, Some(shift), u),
        other => {
            // Not produced by the constructors; evaluate through support.
            let t = ConvexBody::Translate { inner: Arc::new(other.clone()), shift: shift.to_vec() };
            let grid = crate::sphere::build_grid(t.dim(), 32)?;
            let values = t.support_on_grid(&grid);
            let s = SampledSupport { grid, values, generator: None };
            sampled_radial(&s, None, u)
        }
    }
}

/// Radial function of a body known through support samples:
/// `ρ(u) = min_v h(v) / (u·v)` over grid nodes, then refined off-grid.
fn sampled_radial(s: &SampledSupport, shift: Option<&[f64]>, u: &[f64]) -> Result<f64> {
    let grid = &s.grid;
    let value = |i: usize| -> f64 {
        match shift {
            Some(c) => s.values[i] + dot(c, grid.node(i)),
            None => s.values[i],
        }
    };
    let mut best = f64::INFINITY;
    let mut arg = usize::MAX;
    let nodes = grid.node_data();
    let n = grid.dim();
    for i in 0..grid.len() {
        let v = &nodes[i * n..(i + 1) * n];
        let t = dot(u, v);
        if t > 1e-9 {
            let h = value(i);
            if h < best * t {
                best = h / t;
                arg = i;
            }
        }
    }
    if arg == usize::MAX || !(best > 0.0) {
        return Err(GeomError::OriginNotInterior);
    }
    let cheap = s.generator.as_ref().and_then(|g| g.cost()).is_some_and(|c| c <= CHEAP_GENERATOR_COST);
    if cheap {
        let gen = s.generator.as_ref().unwrap();
        let v0 = grid.node(arg);
        let t0 = dot(u, v0);
        let basis = tangent_basis(u);
        let w0: Vec<f64> = v0.iter().map(|x| x / t0).collect();
        let s0 = dot(&w0, &basis[0]);
        let r0 = dot(&w0, &basis[1.min(basis.len() - 1)]);
        if n == 3 {
            let h_ext = |s1: f64, s2: f64| -> f64 {
                let w: Vec<f64> = (0..3).map(|k| u[k] + (s0 + s1) * basis[0][k] + (r0 + s2) * basis[1][k]).collect();
                let r = norm(&w);
                let dir: Vec<f64> = w.iter().map(|x| x / r).collect();
                let mut h = r * gen.support(&dir);
                if let Some(c) = shift {
                    h += dot(c, &w);
                }
                h
            };
            let radius = 2.0 * grid.spacing() / (t0 * t0);
            let (_, _, refined) = convex_min_2d(h_ext, radius, 1e-10);
            if refined.is_finite() && refined > 0.0 {
                best = best.min(refined);
            }
        }
        return Ok(best);
    }
    if n == 3 {
        if let Some(refined) = quadratic_refinement(grid, &value, u, arg) {
            best = best.min(refined);
        }
    }
    Ok(best)
}

/// Number of nodes entering the local quadratic fit of the Wulff objective.
const FIT_NODES: usize = 9;
const FIT_POOL: usize = 96;

/// Minimum of a least-squares quadratic fitted to `H(w) = h(v)/(u·v)` at the
/// nodes nearest to `v_arg`, in coordinates of the plane `u·w = 1`.
fn quadratic_refinement(grid: &SphereGrid, value: &impl Fn(usize) -> f64, u: &[f64], arg: usize) -> Option<f64> {
    let v0 = grid.node(arg);
    let h = grid.spacing();
    // Nearest nodes, thinned so that rings packed with nodes near a pole do
    // not make the fit degenerate.
    let mut pool: Vec<(f64, usize)> = (0..grid.len()).map(|i| (dot(v0, grid.node(i)), i)).collect();
    let cut = FIT_POOL.min(pool.len()) - 1;
    pool.select_nth_unstable_by(cut, |a, b| b.0.total_cmp(&a.0));
    pool.truncate(cut + 1);
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));
    let min_cos = libm::cos(0.4 * h);
    let mut near: Vec<(f64, usize)> = Vec::with_capacity(FIT_NODES);
    for &(c, i) in &pool {
        if near.iter().all(|&(_, j)| dot(grid.node(i), grid.node(j)) < min_cos) {
            near.push((c, i));
            if near.len() == FIT_NODES {
                break;
            }
        }
    }
    if near.len() < FIT_NODES {
        return None;
    }
    let basis = tangent_basis(u);
    let t0 = dot(u, v0);
    let (c0, c1) = (dot(v0, &basis[0]) / t0, dot(v0, &basis[1]) / t0);
    let mut ata = Matrix::zeros(6);
    let mut atb = [0.0; 6];
    for &(_, i) in &near {
        let v = grid.node(i);
        let t = dot(u, v);
        if t <= 1e-9 {
            return None;
        }
        let x = (dot(v, &basis[0]) / t - c0) / h;
        let y = (dot(v, &basis[1]) / t - c1) / h;
        let row = [1.0, x, y, x * x, x * y, y * y];
        let f = value(i) / t;
        for a in 0..6 {
            atb[a] += row[a] * f;
            for b in 0..6 {
                ata[(a, b)] += row[a] * row[b];
            }
        }
    }
    let c = solve_spd(&ata, &atb)?;
    let (hxx, hxy, hyy) = (2.0 * c[3], c[4], 2.0 * c[5]);
    let det = hxx * hyy - hxy * hxy;
    if !(hxx > 0.0 && det > 0.0) {
        return None;
    }
    let x = -(hyy * c[1] - hxy * c[2]) / det;
    let y = -(-hxy * c[1] + hxx * c[2]) / det;
    if x * x + y * y > 4.0 {
        return None;
    }
    let m = c[0] + 0.5 * (c[1] * x + c[2] * y);
    (m > 0.0).then_some(m)
}

/// Star body with positive continuous radial function.
#[derive(Clone, Debug)]
pub enum StarBody {
    FromConvex(ConvexBody),
    SampledRadial { grid: SphereGrid, values: Arc<Vec<f64>> },
}

impl StarBody {
    pub fn sampled(grid: SphereGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(GeomError::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        if values.iter().any(|&x| x <= 0.0) {
            return Err(GeomError::InvalidBody("radial function must be positive".into()));
        }
        Ok(StarBody::SampledRadial { grid, values: Arc::new(values) })
    }

    pub fn dim(&self) -> usize {
        match self {
            StarBody::FromConvex(k) => k.dim(),
            StarBody::SampledRadial { grid, .. } => grid.dim(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            StarBody::FromConvex(k) => k.describe(),
            StarBody::SampledRadial { grid, .. } => format!("sampled_radial(resolution={})", grid.resolution()),
        }
    }

    /// `ρ(L, u)`; sampled radial functions use the nearest node off-grid.
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        match self {
            StarBody::FromConvex(k) => k.radial(u),
            StarBody::SampledRadial { grid, values } => Ok(values[grid.nearest(u)]),
        }
    }

    pub fn radial_on_grid(&self, grid: &SphereGrid) -> Result<Vec<f64>> {
        match self {
            StarBody::SampledRadial { grid: g, values } if g.same_nodes(grid) => Ok((**values).clone()),
            StarBody::FromConvex(k) => k.radial_on_grid(grid),
            _ => map_indices(grid.len(), |i| self.radial(grid.node(i))).into_iter().collect(),
        }
    }

    /// `V(L) = (1/n) ∫ ρ^n`; exact for polytopes.
    pub fn volume(&self, grid: &SphereGrid) -> Result<f64> {
        match self {
            StarBody::FromConvex(k) => k.volume(grid),
            _ => {
                let n = self.dim() as i32;
                let rho = self.radial_on_grid(grid)?;
                let f: Vec<f64> = rho.iter().map(|r| powi(*r, n)).collect();
                Ok(grid.integrate(&f)? / n as f64)
            }
        }
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        match self {
            StarBody::FromConvex(k) => Ok(StarBody::FromConvex(k.scaled(lambda)?)),
            StarBody::SampledRadial { grid, values } => {
                StarBody::sampled(grid.clone(), values.iter().map(|x| x * lambda).collect())
            }
        }
    }
}

impl From<ConvexBody> for StarBody {
    fn from(k: ConvexBody) -> Self {
        StarBody::FromConvex(k)
    }
}

/// `ρ(K^*, u) = 1 / h(K, u)` at every node of `grid`.
pub fn polar_radial(k: &ConvexBody, grid: &SphereGrid) -> Result<StarBody> {
    let h = k.support_on_grid(grid);
    if h.iter().any(|&x| !(x > 0.0)) {
        return Err(GeomError::OriginNotInterior);
    }
    StarBody::sampled(grid.clone(), h.iter().map(|x| 1.0 / x).collect())
}

/// `V(K^*) = (1/n) ∫ h(K, ·)^{-n}` on `grid`.
pub fn polar_volume(k: &ConvexBody, grid: &SphereGrid) -> Result<f64> {
    let h = k.support_on_grid(grid);
    polar_volume_from_support(&h, grid)
}

pub(crate) fn polar_volume_from_support(h: &[f64], grid: &SphereGrid) -> Result<f64> {
    let n = grid.dim() as i32;
    if h.iter().any(|&x| !(x > 0.0)) {
        return Err(GeomError::OriginNotInterior);
    }
    let f: Vec<f64> = h.iter().map(|x| powi(1.0 / x, n)).collect();
    Ok(grid.integrate(&f)? / n as f64)
}

fn check_coefficients(alpha: f64, beta: f64, p: f64) -> Result<()> {
    if !(alpha >= 0.0) || !(beta >= 0.0) {
        return Err(GeomError::InvalidParameter("combination coefficients must be nonnegative".into()));
    }
    if alpha + beta == 0.0 {
        return Err(GeomError::ZeroCoefficients);
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(GeomError::InvalidParameter(format!("p must be at least 1, got {p}")));
    }
    Ok(())
}

/// `α·K +_p β·L`, sampled on `grid` with an exact off-grid evaluator.
pub fn lp_combination(
    alpha: f64,
    k: &ConvexBody,
    beta: f64,
    l: &ConvexBody,
    p: f64,
    grid: &SphereGrid,
) -> Result<ConvexBody> {
    check_coefficients(alpha, beta, p)?;
    if k.dim() != l.dim() || k.dim() != grid.dim() {
        return Err(GeomError::DimensionMismatch { expected: grid.dim(), got: k.dim().max(l.dim()) });
    }
    let hk = k.support_on_grid(grid);
    let hl = l.support_on_grid(grid);
    let values = hk.iter().zip(&hl).map(|(a, b)| pow(alpha * pow(*a, p) + beta * pow(*b, p), 1.0 / p)).collect();
    let gen = SupportGenerator::LpCombination { alpha, k: k.clone(), beta, l: l.clone(), p };
    ConvexBody::sampled_with_generator(grid.clone(), values, Some(gen))
}

/// `α·L1 +̃_p β·L2`, sampled on `grid`.
pub fn harmonic_radial_combination(
    alpha: f64,
    l1: &StarBody,
    beta: f64,
    l2: &StarBody,
    p: f64,
    grid: &SphereGrid,
) -> Result<StarBody> {
    check_coefficients(alpha, beta, p)?;
    let r1 = l1.radial_on_grid(grid)?;
    let r2 = l2.radial_on_grid(grid)?;
    let values = r1.iter().zip(&r2).map(|(a, b)| pow(alpha * pow(*a, -p) + beta * pow(*b, -p), -1.0 / p)).collect();
    StarBody::sampled(grid.clone(), values)
}

/// Finite Borel measure on the sphere.
#[derive(Clone, Debug)]
pub enum SphericalMeasure {
    Atoms { dim: usize, directions: Vec<Vec<f64>>, masses: Vec<f64> },
    Density { grid: SphereGrid, density: Vec<f64> },
}

impl SphericalMeasure {
    pub fn dim(&self) -> usize {
        match self {
            SphericalMeasure::Atoms { dim, .. } => *dim,
            SphericalMeasure::Density { grid, .. } => grid.dim(),
        }
    }

    pub fn total_mass(&self) -> Result<f64> {
        match self {
            SphericalMeasure::Atoms { masses, .. } => Ok(masses.iter().sum()),
            SphericalMeasure::Density { grid, density } => grid.integrate(density),
        }
    }

    /// Spherical Lebesgue measure (density 1) on `grid`.
    pub fn lebesgue(grid: &SphereGrid) -> Self {
        SphericalMeasure::Density { grid: grid.clone(), density: vec![1.0; grid.len()] }
    }

    /// `∫ f dμ`.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        match self {
            SphericalMeasure::Atoms { directions, masses, .. } => {
                Ok(directions.iter().zip(masses).map(|(u, m)| m * f(u)).sum())
            }
            SphericalMeasure::Density { grid, density } => {
                let g: Vec<f64> = grid.nodes().zip(density).map(|(u, d)| d * f(u)).collect();
                grid.integrate(&g)
            }
        }
    }
}

/// Determinant of the tangential Hessian of a 1-homogeneous function at the
/// unit vector `u`, by central differences with step [`CURVATURE_STEP`].
pub fn curvature_fd(h_ext: impl Fn(&[f64]) -> f64, u: &[f64]) -> f64 {
    let basis = tangent_basis(u);
    let m = basis.len();
    let d = CURVATURE_STEP;
    let at = |sa: f64, a: usize, sb: f64, b: usize| -> f64 {
        let x: Vec<f64> = (0..u.len()).map(|k| u[k] + sa * basis[a][k] + sb * basis[b][k]).collect();
        h_ext(&x)
    };
    let h0 = h_ext(u);
    let mut hess = Matrix::zeros(m);
    for a in 0..m {
        let plus = at(d, a, 0.0, a);
        let minus = at(-d, a, 0.0, a);
        hess[(a, a)] = (plus - 2.0 * h0 + minus) / (d * d);
        for b in a + 1..m {
            let v = (at(d, a, d, b) - at(d, a, -d, b) - at(-d, a, d, b) + at(-d, a, -d, b)) / (4.0 * d * d);
            hess[(a, b)] = v;
            hess[(b, a)] = v;
        }
    }
    hess.det()
}

/// Curvature function `f(K, u)`, the reciprocal Gauss curvature at the
/// boundary point with outer normal `u`.
///
/// Closed form for balls; finite differences of the support function for
/// ellipsoids, translates and sampled bodies with an exact generator.
pub fn curvature_function(k: &ConvexBody, u: &[f64]) -> Result<f64> {
    match k {
        ConvexBody::Ball { dim, radius } => Ok(powi(*radius, *dim as i32 - 1)),
        ConvexBody::Translate { inner, .. } => curvature_function(inner, u),
        // For `E = A B`: `f(u) = det(A)^2 / h(E, u)^{n+1}`.
        ConvexBody::Ellipsoid(e) => Ok(e.det() * e.det() / powi(e.support(u), e.a.dim() as i32 + 1)),
        ConvexBody::SampledSupport(s) if s.generator.is_some() => Ok(curvature_fd(|x| k.support_extended(x), u)),
        _ => Err(GeomError::Unsupported(format!("no curvature function for {}", k.describe()))),
    }
}

/// `S_p(K, ·) = h^{1-p} S(K, ·)`: facet atoms for polytopes, a density on
/// `grid` for smooth bodies.
pub fn sp_measure(k: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<SphericalMeasure> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(GeomError::InvalidParameter(format!("S_p requires p >= 1, got {p}")));
    }
    match k {
        ConvexBody::Polytope(poly) => {
            let directions = poly.facets.iter().map(|f| f.normal.clone()).collect();
            let masses = poly.facets.iter().map(|f| pow(f.offset, 1.0 - p) * f.area).collect();
            Ok(SphericalMeasure::Atoms { dim: poly.dim, directions, masses })
        }
        _ if k.has_curvature() => {
            if k.dim() != grid.dim() {
                return Err(GeomError::DimensionMismatch { expected: grid.dim(), got: k.dim() });
            }
            let h = k.support_on_grid(grid);
            if h.iter().any(|&x| !(x > 0.0)) {
                return Err(GeomError::OriginNotInterior);
            }
            let curv: Result<Vec<f64>> = map_indices(grid.len(), |i| curvature_function(k, grid.node(i))).into_iter().collect();
            let density = curv?
                .iter()
                .zip(&h)
                .map(|(f, hv)| if p == 1.0 { f.max(0.0) } else { pow(*hv, 1.0 - p) * f.max(0.0) })
                .collect();
            Ok(SphericalMeasure::Density { grid: grid.clone(), density })
        }
        _ => Err(GeomError::Unsupported(format!("S_p is not available for {}", k.describe()))),
    }
}

/// `m(K) = ∫_K x dx`, via `(1/(n+1)) ∫ u ρ(K,u)^{n+1} du`.
pub fn centroid_vector(k: &ConvexBody, grid: &SphereGrid) -> Result<Vec<f64>> {
    let n = k.dim();
    let rho = k.radial_on_grid(grid)?;
    let mut m = vec![0.0; n];
    for (c, mc) in m.iter_mut().enumerate() {
        let f: Vec<f64> = grid.nodes().zip(&rho).map(|(u, r)| u[c] * powi(*r, n as i32 + 1)).collect();
        *mc = grid.integrate(&f)? / (n as f64 + 1.0);
    }
    Ok(m)
}

/// Result of the Santaló point search.
#[derive(Clone, Debug, PartialEq)]
pub struct SantaloPoint {
    pub point: Vec<f64>,
    /// `g(s) = V((K - s)^*)` on the grid.
    pub polar_volume: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
}

/// `g(x) = (1/n) ∫ (h(K,u) - x·u)^{-n} du`, or `None` outside the domain
/// guard `min_u (h - x·u) > 1e-6`.
pub fn santalo_objective(h: &[f64], grid: &SphereGrid, x: &[f64]) -> Option<f64> {
    let n = grid.dim();
    let mut f = Vec::with_capacity(grid.len());
    for (u, hv) in grid.nodes().zip(h) {
        let gap = hv - dot(x, u);
        if !(gap > 1e-6) {
            return None;
        }
        f.push(powi(1.0 / gap, n as i32));
    }
    grid.integrate(&f).ok().map(|v| v / n as f64)
}

/// The Santaló point of `K`: the minimizer of `g`, by damped Newton
/// iteration.
pub fn santalo_point(k: &ConvexBody, grid: &SphereGrid) -> Result<SantaloPoint> {
    let h = k.support_on_grid(grid);
    let start = santalo_point_from_support(&h, grid)?;
    match k {
        ConvexBody::Polytope(p) if p.dim() == 3 => Ok(polytope_santalo_point(p, start)),
        _ => Ok(start),
    }
}

/// Polar facets of a 3-polytope: for each vertex `v` of `P`, the indices of
/// the facets of `P` through `v`.
fn vertex_facets(p: &Polytope) -> Vec<Vec<usize>> {
    let scale = p.facets.iter().map(|f| f.offset).fold(0.0, f64::max);
    p.vertices
        .iter()
        .map(|v| {
            (0..p.facets.len()).filter(|&i| fabs(dot(&p.facets[i].normal, v) - p.facets[i].offset) <= 1e-9 * scale).collect()
        })
        .collect()
}

/// Exact volume, first moment and second moment of `(P - s)^*` for a
/// 3-polytope, by fan triangulation of the polar facets. `None` unless `s`
/// is interior.
fn polar_moments(p: &Polytope, incidence: &[Vec<usize>], s: &[f64]) -> Option<(f64, [f64; 3], [[f64; 3]; 3])> {
    let mut pts = Vec::with_capacity(p.facets.len());
    for f in &p.facets {
        let b = f.offset - dot(&f.normal, s);
        if !(b > 1e-12) {
            return None;
        }
        pts.push([f.normal[0] / b, f.normal[1] / b, f.normal[2] / b]);
    }
    let mut vol = 0.0;
    let mut first = [0.0; 3];
    let mut second = [[0.0; 3]; 3];
    let mut add_tetra = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
        let det = fabs(
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]),
        );
        let sum = [a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]];
        vol += det / 6.0;
        for i in 0..3 {
            first[i] += det / 24.0 * sum[i];
            for j in 0..3 {
                second[i][j] += det / 120.0 * (a[i] * a[j] + b[i] * b[j] + c[i] * c[j] + sum[i] * sum[j]);
            }
        }
    };
    for (v, facets) in p.vertices.iter().zip(incidence) {
        let w: Vec<f64> = v.iter().zip(s).map(|(a, b)| a - b).collect();
        let basis = tangent_basis(&w);
        let mut c = [0.0; 3];
        for &i in facets {
            for d in 0..3 {
                c[d] += pts[i][d] / facets.len() as f64;
            }
        }
        let mut ring: Vec<(f64, usize)> = facets
            .iter()
            .map(|&i| {
                let r = [pts[i][0] - c[0], pts[i][1] - c[1], pts[i][2] - c[2]];
                (libm::atan2(dot(&r, &basis[1]), dot(&r, &basis[0])), i)
            })
            .collect();
        ring.sort_by(|a, b| a.0.total_cmp(&b.0));
        for k in 0..ring.len() {
            add_tetra(c, pts[ring[k].1], pts[ring[(k + 1) % ring.len()].1]);
        }
    }
    Some((vol, first, second))
}

/// Newton refinement of the grid Santaló point on the exact polar moments:
/// `∇g = 4 ∫ y` and `∇²g = 20 ∫ y yᵀ` over `(P - s)^*`.
fn polytope_santalo_point(p: &Polytope, start: SantaloPoint) -> SantaloPoint {
    let incidence = vertex_facets(p);
    let Some(mut current) = polar_moments(p, &incidence, &start.point) else { return start };
    let mut x = start.point.clone();
    let mut gnorm = f64::INFINITY;
    for it in 0..100 {
        let (vol, first, second) = current;
        let grad: Vec<f64> = first.iter().map(|m| 4.0 * m).collect();
        gnorm = norm(&grad);
        if gnorm <= 1e-13 * vol {
            return SantaloPoint { point: x, polar_volume: vol, iterations: start.iterations + it, gradient_norm: gnorm };
        }
        let mut hess = Matrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                hess[(i, j)] = 20.0 * second[i][j];
            }
        }
        let Some(step) = solve_spd(&hess, &grad) else { break };
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&step).map(|(a, d)| a - t * d).collect();
            if let Some(m) = polar_moments(p, &incidence, &trial) {
                if m.0 <= vol {
                    x = trial;
                    current = m;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    SantaloPoint { point: x, polar_volume: current.0, iterations: start.iterations, gradient_norm: gnorm }
}

pub(crate) fn santalo_point_from_support(h: &[f64], grid: &SphereGrid) -> Result<SantaloPoint> {
    let n = grid.dim();
    let mut x = vec![0.0; n];
    let mut gx = santalo_objective(h, grid, &x).ok_or(GeomError::OriginNotInterior)?;
    let w = grid.weights();
    for it in 0..200 {
        let mut grad = vec![0.0; n];
        let mut hess = Matrix::zeros(n);
        for (i, u) in grid.nodes().enumerate() {
            let gap = h[i] - dot(&x, u);
            let g1 = w[i] * powi(1.0 / gap, n as i32 + 1);
            let g2 = (n as f64 + 1.0) * g1 / gap;
            for a in 0..n {
                grad[a] += g1 * u[a];
                for b in 0..n {
                    hess[(a, b)] += g2 * u[a] * u[b];
                }
            }
        }
        let gnorm = norm(&grad);
        if gnorm <= 1e-8 {
            return Ok(SantaloPoint { point: x, polar_volume: gx, iterations: it, gradient_norm: gnorm });
        }
        let step = solve_spd(&hess, &grad).ok_or(GeomError::NoConvergence { what: "santalo newton", iterations: it })?;
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a - t * s).collect();
            if let Some(gt) = santalo_objective(h, grid, &trial) {
                if gt <= gx {
                    x = trial;
                    gx = gt;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !moved {
            // Newton direction no longer decreases g in floating point.
            return Ok(SantaloPoint { point: x, polar_volume: gx, iterations: it, gradient_norm: gnorm });
        }
    }
    Err(GeomError::NoConvergence { what: "santalo newton", iterations: 200 })
}
