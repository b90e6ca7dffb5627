//! Volume-type functionals: the L_p mixed volume `V_p`, the dual mixed
//! volume `Ṽ_{-p}`, the duality identity linking them through `Π_p^τ` and
//! `M_p^τ`, and the classical L_p Minkowski and Brunn–Minkowski checks.

use alloc::format;
use alloc::vec::Vec;

use libm::{fabs, pow};

use crate::body::{harmonic_radial_combination, lp_combination, sp_measure, ConvexBody, SphericalMeasure, StarBody};
use crate::error::{GeomError, Result};
use crate::inequalities::InequalityReport;
use crate::operators::{m_tau, projection_pair, OperatorParams};
use crate::sphere::SphereGrid;

/// Relative tolerance of the duality identity at the default resolution.
pub const DURCH_TOLERANCE: f64 = 1e-4;

/// A volume-type quantity with a quadrature error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FunctionalValue {
    pub value: f64,
    /// Difference to the same rule on every other node; zero for exact
    /// atom sums.
    pub error_estimate: f64,
    pub resolution: usize,
}

/// Quadrature of `samples` and the deviation of the rule restricted to the
/// even-indexed nodes (every other azimuth on product grids).
fn integrate_with_estimate(grid: &SphereGrid, samples: &[f64]) -> Result<(f64, f64)> {
    let full = grid.integrate(samples)?;
    let w = grid.weights();
    let half: f64 = samples.iter().zip(w).step_by(2).map(|(f, w)| 2.0 * f * w).sum();
    Ok((full, fabs(full - half)))
}

/// `V_p(K, L) = (1/n) ∫ h(L, u)^p dS_p(K, u)`.
pub fn mixed_volume_p(k: &ConvexBody, l: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<FunctionalValue> {
    let n = grid.dim() as f64;
    if l.dim() != grid.dim() {
        return Err(GeomError::DimensionMismatch { expected: grid.dim(), got: l.dim() });
    }
    let measure = sp_measure(k, p, grid)?;
    let (value, error_estimate) = match &measure {
        SphericalMeasure::Atoms { .. } => (measure.integrate(|u| pow(l.support(u), p))?, 0.0),
        SphericalMeasure::Density { density, .. } => {
            let hl = l.support_on_grid(grid);
            let f: Vec<f64> = density.iter().zip(&hl).map(|(d, h)| d * pow(*h, p)).collect();
            integrate_with_estimate(grid, &f)?
        }
    };
    Ok(FunctionalValue { value: value / n, error_estimate: error_estimate / n, resolution: grid.resolution() })
}

/// `Ṽ_{-p}(K, L) = (1/n) ∫ ρ(K, u)^{n+p} ρ(L, u)^{-p} du`.
pub fn dual_mixed_volume(k: &StarBody, l: &StarBody, p: f64, grid: &SphereGrid) -> Result<FunctionalValue> {
    let n = grid.dim() as f64;
    let rk = k.radial_on_grid(grid)?;
    let rl = l.radial_on_grid(grid)?;
    let f: Vec<f64> = rk.iter().zip(&rl).map(|(a, b)| pow(*a, n + p) * pow(*b, -p)).collect();
    let (value, err) = integrate_with_estimate(grid, &f)?;
    Ok(FunctionalValue { value: value / n, error_estimate: err / n, resolution: grid.resolution() })
}

/// Both sides of `V_p(K, M_p^τ L) = Ṽ_{-p}(L, Π_p^{τ,*} K)` on one grid.
pub fn durch_identity_check(
    k: &ConvexBody,
    l: &StarBody,
    params: OperatorParams,
    grid: &SphereGrid,
) -> Result<InequalityReport> {
    let (p, tau) = (params.p, params.tau);
    let n = grid.dim() as f64;
    let m = m_tau(l, params, grid)?;
    let lhs = mixed_volume_p(k, &m, p, grid)?.value;
    let h = projection_pair(k, p, grid)?.support(tau);
    let rl = l.radial_on_grid(grid)?;
    let f: Vec<f64> = rl.iter().zip(&h).map(|(r, hv)| pow(*r, n + p) * pow(*hv, p)).collect();
    let rhs = grid.integrate(&f)? / n;
    Ok(InequalityReport::identity("duality V_p(K,M_p^t L) = V_-p(L,Pi_p^t* K)", lhs, rhs, DURCH_TOLERANCE)
        .with_body(format!("K={}; L={}", k.describe(), l.describe()))
        .with_params(Some(p), Some(tau), grid.resolution()))
}

/// `V_p(K, L)^n ≥ V(K)^{n-p} V(L)^p`.
pub fn minkowski_check(k: &ConvexBody, l: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<InequalityReport> {
    let n = grid.dim() as f64;
    let vp = mixed_volume_p(k, l, p, grid)?.value;
    let (vk, vl) = (k.volume(grid)?, l.volume(grid)?);
    Ok(InequalityReport::greater_eq("Lp Minkowski", pow(vp, n), pow(vk, n - p) * pow(vl, p))
        .with_body(format!("K={}; L={}", k.describe(), l.describe()))
        .with_params(Some(p), None, grid.resolution()))
}

/// `V(K +_p L)^{p/n} ≥ V(K)^{p/n} + V(L)^{p/n}`.
pub fn brunn_minkowski_check(k: &ConvexBody, l: &ConvexBody, p: f64, grid: &SphereGrid) -> Result<InequalityReport> {
    let e = p / grid.dim() as f64;
    let sum = lp_combination(1.0, k, 1.0, l, p, grid)?;
    let left = pow(sum.volume(grid)?, e);
    let right = pow(k.volume(grid)?, e) + pow(l.volume(grid)?, e);
    Ok(InequalityReport::greater_eq("Lp Brunn-Minkowski", left, right)
        .with_body(format!("K={}; L={}", k.describe(), l.describe()))
        .with_params(Some(p), None, grid.resolution()))
}

/// `Ṽ_{-p}(K, L)^n ≥ V(K)^{n+p} V(L)^{-p}`.
pub fn dual_minkowski_check(k: &StarBody, l: &StarBody, p: f64, grid: &SphereGrid) -> Result<InequalityReport> {
    let n = grid.dim() as f64;
    let v = dual_mixed_volume(k, l, p, grid)?.value;
    let (vk, vl) = (k.volume(grid)?, l.volume(grid)?);
    Ok(InequalityReport::greater_eq("dual Lp Minkowski", pow(v, n), pow(vk, n + p) * pow(vl, -p))
        .with_body(format!("K={}; L={}", k.describe(), l.describe()))
        .with_params(Some(p), None, grid.resolution()))
}

/// `V(K +̃_p L)^{-p/n} ≥ V(K)^{-p/n} + V(L)^{-p/n}`.
pub fn dual_brunn_minkowski_check(k: &StarBody, l: &StarBody, p: f64, grid: &SphereGrid) -> Result<InequalityReport> {
    let e = -p / grid.dim() as f64;
    let sum = harmonic_radial_combination(1.0, k, 1.0, l, p, grid)?;
    let left = pow(sum.volume(grid)?, e);
    let right = pow(k.volume(grid)?, e) + pow(l.volume(grid)?, e);
    Ok(InequalityReport::greater_eq("dual Lp Brunn-Minkowski", left, right)
        .with_body(format!("K={}; L={}", k.describe(), l.describe()))
        .with_params(Some(p), None, grid.resolution()))
}
