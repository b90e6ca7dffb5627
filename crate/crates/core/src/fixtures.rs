//! Named and seeded test bodies, linear maps and directions.

use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, log, pow, sin, sqrt};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::{ConvexBody, StarBody};
use crate::error::Result;
use crate::linalg::{dot, norm, Matrix};
use crate::sphere::SphereGrid;

/// Offset of the shifted-ball fixture along `e_n`.
pub const SHIFT: f64 = 0.3;

/// Seeded source of uniform and normal variates.
#[derive(Clone, Debug)]
pub struct FixtureRng(ChaCha8Rng);

impl FixtureRng {
    pub fn new(seed: u64) -> Self {
        FixtureRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal by Box–Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        sqrt(-2.0 * log(u1)) * cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Uniform on `S^{n-1}`.
    pub fn direction(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            let r = norm(&v);
            if r > 1e-8 {
                return v.iter().map(|x| x / r).collect();
            }
        }
    }

    /// Rotation from Gram–Schmidt on a Gaussian matrix.
    pub fn rotation(&mut self, n: usize) -> Matrix {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
        while rows.len() < n {
            let mut v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            for r in &rows {
                let c = dot(&v, r);
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
            let len = norm(&v);
            if len > 1e-6 {
                rows.push(v.iter().map(|x| x / len).collect());
            }
        }
        Matrix::from_rows(&rows).expect("square")
    }
}

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> ConvexBody {
    let pts: Vec<Vec<f64>> =
        (0..1usize << n).map(|i| (0..n).map(|b| if i >> b & 1 == 1 { 1.0 } else { -1.0 }).collect()).collect();
    ConvexBody::polytope(&pts).expect("cube")
}

/// The unit ball translated by `0.3 e_n`.
pub fn shifted_ball(n: usize) -> ConvexBody {
    let mut c = vec![0.0; n];
    c[n - 1] = SHIFT;
    ConvexBody::unit_ball(n).translate(&c).expect("shifted ball")
}

/// Simplex with vertices `-(1/2)(1, …, 1)` and `2 e_i`; the origin lies
/// inside but far from its centroid.
pub fn simplex(n: usize) -> ConvexBody {
    let mut pts = vec![vec![-0.5; n]];
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 2.0;
        pts.push(v);
    }
    ConvexBody::polytope(&pts).expect("simplex")
}

/// Origin-symmetric ellipsoid `diag(1, …, 1, 2) B`.
pub fn elongated_ellipsoid(n: usize) -> ConvexBody {
    let mut d = vec![1.0; n];
    d[n - 1] = 2.0;
    ConvexBody::ellipsoid(Matrix::diagonal(&d)).expect("ellipsoid")
}

/// Hull of `count` points at random radii in `[0.6, 1.4]`, translated by a
/// random vector of length at most 0.25; retried until the origin is
/// interior.
pub fn random_polytope(rng: &mut FixtureRng, n: usize, count: usize) -> ConvexBody {
    loop {
        let shift: Vec<f64> = rng.direction(n).iter().map(|x| x * rng.range(0.0, 0.25)).collect();
        let pts: Vec<Vec<f64>> = (0..count.max(n + 1))
            .map(|_| {
                let r = rng.range(0.6, 1.4);
                rng.direction(n).iter().zip(&shift).map(|(x, s)| r * x + s).collect()
            })
            .collect();
        if let Ok(k) = ConvexBody::polytope(&pts) {
            return k;
        }
    }
}

/// Symmetric positive definite matrix with eigenvalues in
/// `[0.7, 0.7 max_condition]`.
pub fn random_spd(rng: &mut FixtureRng, n: usize, max_condition: f64) -> Matrix {
    let q = rng.rotation(n);
    let d: Vec<f64> = (0..n).map(|_| 0.7 * pow(max_condition, rng.uniform())).collect();
    q.transpose().mul(&Matrix::diagonal(&d)).mul(&q)
}

/// Origin-centered ellipsoid `A B` with `A` from [`random_spd`].
pub fn random_ellipsoid(rng: &mut FixtureRng, n: usize, max_condition: f64) -> ConvexBody {
    ConvexBody::ellipsoid(random_spd(rng, n, max_condition)).expect("spd")
}

/// Volume-preserving linear map `R_1 D R_2` with condition at most
/// `max_condition`.
pub fn random_sl(rng: &mut FixtureRng, n: usize, max_condition: f64) -> Matrix {
    let r1 = rng.rotation(n);
    let r2 = rng.rotation(n);
    let logs: Vec<f64> = (0..n).map(|_| rng.uniform() * log(max_condition)).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = logs.iter().map(|l| libm::exp(l - mean)).collect();
    let m = r1.mul(&Matrix::diagonal(&d)).mul(&r2);
    // Fix the sign so that the map preserves orientation.
    if m.det() < 0.0 {
        let mut flip = vec![1.0; n];
        flip[0] = -1.0;
        return Matrix::diagonal(&flip).mul(&m);
    }
    m
}

/// Smooth nonconvex star body `ρ(u) = 1 + a_1 (u·w_1)^2 − a_2 (u·w_2)^3 +
/// a_3 (u·w_3)` sampled on `grid`, with small random amplitudes and axes.
pub fn random_star(rng: &mut FixtureRng, grid: &SphereGrid) -> Result<StarBody> {
    let n = grid.dim();
    let w: Vec<Vec<f64>> = (0..3).map(|_| rng.direction(n)).collect();
    let a = [rng.range(0.0, 0.3), rng.range(0.0, 0.2), rng.range(-0.2, 0.2)];
    let values = grid
        .nodes()
        .map(|u| {
            let t: Vec<f64> = w.iter().map(|wi| dot(u, wi)).collect();
            1.0 + a[0] * t[0] * t[0] - a[1] * t[1] * t[1] * t[1] + a[2] * t[2]
        })
        .collect();
    StarBody::sampled(grid.clone(), values)
}

/// Point on the unit circle in the `(e_1, e_2)` plane at angle `theta`.
pub fn planar_direction(n: usize, theta: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[0] = cos(theta);
    v[1] = sin(theta);
    v
}
