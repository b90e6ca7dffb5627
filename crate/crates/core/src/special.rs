//! Dimension constants: ball volumes, sphere areas and the L_p cosine
//! transform normalization.

use libm::{exp, lgamma, pow};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Volume of the Euclidean unit ball in `R^n`, `π^{n/2} / Γ(1 + n/2)`.
pub fn kappa(n: usize) -> f64 {
    let n = n as f64;
    exp((n / 2.0) * LN_PI - lgamma(1.0 + n / 2.0))
}

/// Surface area of `S^{n-1}`, equal to `n κ_n`.
pub fn sphere_area(n: usize) -> f64 {
    n as f64 * kappa(n)
}

/// `c_{n,p} = Γ((n+p)/2) / (π^{(n-1)/2} Γ((1+p)/2))`, the constant making the
/// nonsymmetric cosine transform fix the constant function 1.
pub fn cosine_normalization(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    exp(lgamma((nf + p) / 2.0) - lgamma((1.0 + p) / 2.0) - (nf - 1.0) / 2.0 * LN_PI)
}

/// `c_{n,p}(τ) = c_{n,p} / ((1+τ)^p + (1-τ)^p)`.
pub fn tau_normalization(n: usize, p: f64, tau: f64) -> f64 {
    cosine_normalization(n, p) / (pow(1.0 + tau, p) + pow(1.0 - tau, p))
}
