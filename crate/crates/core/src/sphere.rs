//! Quadrature grids on the unit sphere, real spherical harmonics on `S^2`
//! and Funk-Hecke multiplier estimation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{atan2, cos, fabs, log, sin, sqrt};

use crate::error::{GeomError, Result};
use crate::linalg::dot;
use crate::par::pairwise_sum;
use crate::special::sphere_area;

/// Residual above which a transform is not accepted as a multiplier.
pub const MULTIPLIER_RESIDUAL_LIMIT: f64 = 1e-5;

/// Quadrature nodes and weights on `S^{n-1}`.
///
/// Cloning is cheap; the node data is shared.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    data: Arc<GridData>,
}

#[derive(Debug)]
struct GridData {
    n: usize,
    resolution: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    layout: Layout,
}

#[derive(Debug)]
enum Layout {
    /// Gauss-Legendre rings in `z = cos θ` times a uniform azimuth; node
    /// `ring * azimuths + j` sits at azimuth `(j + 1/2) 2π / azimuths`.
    Product { rings: usize, azimuths: usize, z: Vec<f64>, ring_weights: Vec<f64> },
    /// Point set closed under `u -> -u`; node `i + half` is the antipode of `i`.
    Antipodal { half: usize },
}

/// Ring/azimuth structure of an `n = 3` product grid.
#[derive(Clone, Copy, Debug)]
pub struct ProductLayout<'a> {
    pub rings: usize,
    pub azimuths: usize,
    /// Ring heights `cos θ`, ascending.
    pub z: &'a [f64],
    /// Gauss-Legendre weights per ring (summing to 2).
    pub ring_weights: &'a [f64],
}

impl<'a> ProductLayout<'a> {
    #[inline]
    pub fn index(&self, ring: usize, azimuth: usize) -> usize {
        ring * self.azimuths + azimuth
    }

    #[inline]
    pub fn split(&self, node: usize) -> (usize, usize) {
        (node / self.azimuths, node % self.azimuths)
    }

    #[inline]
    pub fn azimuth_angle(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * 2.0 * PI / self.azimuths as f64
    }
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..(m + 1) / 2 {
        let mut t = cos(PI * (i as f64 + 0.75) / (m as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, t);
            dp = d;
            let step = p / d;
            t -= step;
            if fabs(step) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, t);
        dp = if d != 0.0 { d } else { dp };
        let wt = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[m - 1 - i] = t;
        w[i] = wt;
        w[m - 1 - i] = wt;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(m: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Builds the quadrature grid used throughout the crate.
///
/// For `n = 3` this is a product rule with `resolution` Gauss-Legendre rings
/// and `2 resolution` azimuths (`resolution` must be even so that the grid is
/// closed under `u -> -u`). For `n > 3` it is an equal-weight quasi-uniform
/// point set of `2 resolution^2` points closed under antipodes; these grids
/// are markedly less accurate.
pub fn build_grid(n: usize, resolution: usize) -> Result<SphereGrid> {
    if n < 3 {
        return Err(GeomError::Dimension(n));
    }
    if resolution < 8 {
        return Err(GeomError::Resolution(resolution));
    }
    if n == 3 {
        Ok(product_grid(resolution + resolution % 2, resolution))
    } else {
        Ok(scattered_grid(n, resolution))
    }
}

fn product_grid(rings: usize, resolution: usize) -> SphereGrid {
    let azimuths = 2 * rings;
    let (z, ring_weights) = gauss_legendre(rings);
    let dphi = 2.0 * PI / azimuths as f64;
    let mut nodes = Vec::with_capacity(3 * rings * azimuths);
    let mut weights = Vec::with_capacity(rings * azimuths);
    let trig: Vec<(f64, f64)> = (0..azimuths)
        .map(|j| {
            let phi = (j as f64 + 0.5) * dphi;
            (cos(phi), sin(phi))
        })
        .collect();
    for (&zi, &wi) in z.iter().zip(&ring_weights) {
        let s = sqrt((1.0 - zi * zi).max(0.0));
        for &(c, sn) in &trig {
            nodes.extend_from_slice(&[s * c, s * sn, zi]);
            weights.push(wi * dphi);
        }
    }
    SphereGrid {
        data: Arc::new(GridData {
            n: 3,
            resolution,
            nodes,
            weights,
            layout: Layout::Product { rings, azimuths, z, ring_weights },
        }),
    }
}

fn scattered_grid(n: usize, resolution: usize) -> SphereGrid {
    let half = resolution * resolution;
    // Kronecker sequence with the generalized golden ratio in dimension 2m.
    let m = n.div_ceil(2) * 2;
    let mut phi = 2.0;
    for _ in 0..64 {
        phi = libm::pow(1.0 + phi, 1.0 / (m as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=m).map(|k| libm::pow(1.0 / phi, k as f64) % 1.0).collect();
    let mut nodes = vec![0.0; 2 * half * n];
    let mut g = vec![0.0; m];
    for i in 0..half {
        for k in (0..m).step_by(2) {
            let u1 = (0.5 + alpha[k] * (i + 1) as f64) % 1.0;
            let u2 = (0.5 + alpha[k + 1] * (i + 1) as f64) % 1.0;
            let r = sqrt(-2.0 * log(u1.max(1e-300)));
            g[k] = r * cos(2.0 * PI * u2);
            g[k + 1] = r * sin(2.0 * PI * u2);
        }
        let r = sqrt(g[..n].iter().map(|x| x * x).sum::<f64>());
        for k in 0..n {
            nodes[i * n + k] = g[k] / r;
            nodes[(i + half) * n + k] = -g[k] / r;
        }
    }
    let w = sphere_area(n) / (2 * half) as f64;
    SphereGrid {
        data: Arc::new(GridData {
            n,
            resolution,
            nodes,
            weights: vec![w; 2 * half],
            layout: Layout::Antipodal { half },
        }),
    }
}

impl SphereGrid {
    pub fn new(n: usize, resolution: usize) -> Result<Self> {
        build_grid(n, resolution)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.n
    }

    #[inline]
    pub fn resolution(&self) -> usize {
        self.data.resolution
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.weights.is_empty()
    }

    #[inline]
    pub fn node(&self, i: usize) -> &[f64] {
        let n = self.data.n;
        &self.data.nodes[i * n..(i + 1) * n]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.data.nodes.chunks(self.data.n)
    }

    /// All node coordinates, node-major.
    pub fn node_data(&self) -> &[f64] {
        &self.data.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.data.weights
    }

    /// True when both handles describe the same nodes.
    pub fn same_nodes(&self, other: &SphereGrid) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.n == other.data.n && self.data.resolution == other.data.resolution)
    }

    /// Typical angular distance between neighbouring nodes.
    pub fn spacing(&self) -> f64 {
        match &self.data.layout {
            Layout::Product { rings, .. } => PI / *rings as f64,
            Layout::Antipodal { half } => {
                let n = self.data.n as f64;
                libm::pow(sphere_area(self.data.n) / (2 * half) as f64, 1.0 / (n - 1.0))
            }
        }
    }

    pub fn product_layout(&self) -> Option<ProductLayout<'_>> {
        match &self.data.layout {
            Layout::Product { rings, azimuths, z, ring_weights } => Some(ProductLayout {
                rings: *rings,
                azimuths: *azimuths,
                z,
                ring_weights,
            }),
            Layout::Antipodal { .. } => None,
        }
    }

    /// Index of the node `-u_i`.
    pub fn antipode(&self, i: usize) -> usize {
        match &self.data.layout {
            Layout::Product { rings, azimuths, .. } => {
                let (r, j) = (i / azimuths, i % azimuths);
                (rings - 1 - r) * azimuths + (j + azimuths / 2) % azimuths
            }
            Layout::Antipodal { half } => (i + half) % (2 * half),
        }
    }

    /// Index of the mirror image of node `i` in the coordinate hyperplane
    /// `x_axis = 0`, when the grid is symmetric under that reflection.
    pub fn mirror(&self, i: usize, axis: usize) -> Option<usize> {
        let l = self.product_layout()?;
        let (r, j) = l.split(i);
        Some(match axis {
            2 => l.index(l.rings - 1 - r, j),
            // φ -> -φ maps (j + 1/2) to (A - j - 1/2).
            1 => l.index(r, l.azimuths - 1 - j),
            // φ -> π - φ
            0 => l.index(r, (3 * l.azimuths / 2 - 1 - j) % l.azimuths),
            _ => return None,
        })
    }

    /// Index of the node closest to the unit vector `u`.
    pub fn nearest(&self, u: &[f64]) -> usize {
        match &self.data.layout {
            Layout::Product { rings, azimuths, z, .. } => {
                let r0 = z.partition_point(|&zi| zi < u[2]);
                let phi = atan2(u[1], u[0]);
                let a = *azimuths as f64;
                let t = phi / (2.0 * PI) * a - 0.5;
                let j0 = libm::floor(t) as i64;
                let mut best = 0;
                let mut best_dot = f64::MIN;
                for r in r0.saturating_sub(1)..(r0 + 1).min(*rings) {
                    for dj in 0..2 {
                        let j = (j0 + dj).rem_euclid(*azimuths as i64) as usize;
                        let idx = r * azimuths + j;
                        let d = dot(self.node(idx), u);
                        if d > best_dot {
                            best_dot = d;
                            best = idx;
                        }
                    }
                }
                best
            }
            Layout::Antipodal { .. } => {
                let mut best = 0;
                let mut best_dot = f64::MIN;
                for (i, v) in self.nodes().enumerate() {
                    let d = dot(v, u);
                    if d > best_dot {
                        best_dot = d;
                        best = i;
                    }
                }
                best
            }
        }
    }

    /// `Σ w_i f_i` with pairwise summation.
    pub fn integrate(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.len() {
            return Err(GeomError::LengthMismatch { expected: self.len(), got: samples.len() });
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        let terms: Vec<f64> = samples.iter().zip(self.weights()).map(|(f, w)| f * w).collect();
        Ok(pairwise_sum(&terms))
    }

    /// Integrates `f` evaluated at every node.
    pub fn integrate_fn(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        let samples: Vec<f64> = self.nodes().map(f).collect();
        self.integrate(&samples)
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(&[f64]) -> f64 + Sync + Send) -> Vec<f64> {
        crate::par::map_indices(self.len(), |i| f(self.node(i)))
    }

    /// `‖f‖_2` on the grid.
    pub fn l2_norm(&self, f: &[f64]) -> Result<f64> {
        let sq: Vec<f64> = f.iter().map(|x| x * x).collect();
        Ok(sqrt(self.integrate(&sq)?))
    }

    /// `⟨f, g⟩` on the grid.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> Result<f64> {
        if f.len() != g.len() {
            return Err(GeomError::LengthMismatch { expected: f.len(), got: g.len() });
        }
        let prod: Vec<f64> = f.iter().zip(g).map(|(a, b)| a * b).collect();
        self.integrate(&prod)
    }
}

/// Free-function form of [`SphereGrid::integrate`].
pub fn integrate(grid: &SphereGrid, samples: &[f64]) -> Result<f64> {
    grid.integrate(samples)
}

/// Degree `k` and order index `i ∈ 1..=2k+1` of a real spherical harmonic on
/// `S^2`. Order index `i` corresponds to `m = i - k - 1`; negative `m` are
/// the sine harmonics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HarmonicIndex {
    pub degree: usize,
    pub order: usize,
}

impl HarmonicIndex {
    pub fn new(degree: usize, order: usize) -> Result<Self> {
        if order == 0 || order > 2 * degree + 1 {
            return Err(GeomError::InvalidParameter(alloc::format!(
                "order index {order} outside 1..={} for degree {degree}",
                2 * degree + 1
            )));
        }
        Ok(HarmonicIndex { degree, order })
    }

    /// Number of harmonics of degree `k` on `S^2`.
    pub fn count(degree: usize) -> usize {
        2 * degree + 1
    }

    fn m(&self) -> i64 {
        self.order as i64 - self.degree as i64 - 1
    }
}

/// Orthonormal associated Legendre functions `P̄_k^m(z)` (including the
/// `1/√(4π)` sphere normalization) for fixed `m` and `k = m..=kmax`.
fn normalized_legendre(kmax: usize, m: usize, z: f64) -> Vec<f64> {
    let s = sqrt((1.0 - z * z).max(0.0));
    let mut pmm = 1.0 / sqrt(4.0 * PI);
    for j in 1..=m {
        let jf = j as f64;
        pmm *= -sqrt((2.0 * jf + 1.0) / (2.0 * jf)) * s;
    }
    let mut out = vec![0.0; kmax + 1];
    if m > kmax {
        return out;
    }
    out[m] = pmm;
    if m < kmax {
        out[m + 1] = sqrt(2.0 * m as f64 + 3.0) * z * pmm;
    }
    let mf = m as f64;
    for k in m + 2..=kmax {
        let kf = k as f64;
        let a = sqrt((4.0 * kf * kf - 1.0) / (kf * kf - mf * mf));
        let b = sqrt(((kf - 1.0) * (kf - 1.0) - mf * mf) / (4.0 * (kf - 1.0) * (kf - 1.0) - 1.0));
        out[k] = a * (z * out[k - 1] - b * out[k - 2]);
    }
    out
}

/// Value of the real orthonormal spherical harmonic `Y_{k,i}` at the unit
/// vector `u ∈ S^2`.
pub fn eval_harmonic(idx: HarmonicIndex, u: &[f64]) -> Result<f64> {
    if u.len() != 3 {
        return Err(GeomError::DimensionMismatch { expected: 3, got: u.len() });
    }
    HarmonicIndex::new(idx.degree, idx.order)?;
    let m = idx.m();
    let am = m.unsigned_abs() as usize;
    let p = normalized_legendre(idx.degree, am, u[2])[idx.degree];
    if m == 0 {
        return Ok(p);
    }
    let phi = atan2(u[1], u[0]);
    let root2 = core::f64::consts::SQRT_2;
    Ok(if m > 0 { root2 * p * cos(am as f64 * phi) } else { root2 * p * sin(am as f64 * phi) })
}

/// Samples `Y_{k,i}` at every node of an `n = 3` grid.
pub fn harmonic_samples(grid: &SphereGrid, idx: HarmonicIndex) -> Result<Vec<f64>> {
    if grid.dim() != 3 {
        return Err(GeomError::DimensionMismatch { expected: 3, got: grid.dim() });
    }
    grid.nodes().map(|u| eval_harmonic(idx, u)).collect()
}

/// Estimated Funk-Hecke multiplier of a transform at one degree.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultiplierEstimate {
    pub degree: usize,
    /// Average of `⟨T Y_{k,i}, Y_{k,i}⟩` over the order index.
    pub value: f64,
    /// Largest `‖T Y_{k,i} - a_k Y_{k,i}‖_2 / ‖Y_{k,i}‖_2`.
    pub residual: f64,
}

/// Estimates `a_k[T]` for a transform acting on grid samples.
///
/// Fails with [`GeomError::NotMultiplier`] when some degree-`k` harmonic is
/// not mapped to a multiple of itself within
/// [`MULTIPLIER_RESIDUAL_LIMIT`].
pub fn estimate_multiplier<F>(grid: &SphereGrid, transform: F, k: usize) -> Result<MultiplierEstimate>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if grid.dim() != 3 {
        return Err(GeomError::DimensionMismatch { expected: 3, got: grid.dim() });
    }
    let count = HarmonicIndex::count(k);
    let mut images = Vec::with_capacity(count);
    let mut sum = 0.0;
    for i in 1..=count {
        let y = harmonic_samples(grid, HarmonicIndex { degree: k, order: i })?;
        let ty = transform(&y)?;
        if ty.len() != y.len() {
            return Err(GeomError::LengthMismatch { expected: y.len(), got: ty.len() });
        }
        sum += grid.inner(&ty, &y)? / grid.inner(&y, &y)?;
        images.push((y, ty));
    }
    let value = sum / count as f64;
    let mut residual: f64 = 0.0;
    for (y, ty) in &images {
        let diff: Vec<f64> = ty.iter().zip(y).map(|(t, v)| t - value * v).collect();
        residual = residual.max(grid.l2_norm(&diff)? / grid.l2_norm(y)?);
    }
    if residual > MULTIPLIER_RESIDUAL_LIMIT {
        return Err(GeomError::NotMultiplier { residual, limit: MULTIPLIER_RESIDUAL_LIMIT });
    }
    Ok(MultiplierEstimate { degree: k, value, residual })
}
