//! Small dense vector and matrix helpers for dimensions in the single digits.

use alloc::vec;
use alloc::vec::Vec;
use libm::{fabs, sqrt};

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

pub fn normalized(a: &[f64]) -> Vec<f64> {
    let r = norm(a);
    a.iter().map(|x| x / r).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

pub fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`.
pub fn tangent_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    // Seed Gram-Schmidt with the coordinate axes, least aligned with u first.
    let mut axes: Vec<usize> = (0..n).collect();
    axes.sort_by(|&i, &j| fabs(u[i]).partial_cmp(&fabs(u[j])).unwrap());
    for &i in &axes {
        if basis.len() == n - 1 {
            break;
        }
        let mut v = unit(n, i);
        let c = dot(&v, u);
        for (vk, uk) in v.iter_mut().zip(u) {
            *vk -= c * uk;
        }
        for b in &basis {
            let c = dot(&v, b);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= c * bk;
            }
        }
        let r = norm(&v);
        if r > 1e-8 {
            basis.push(v.iter().map(|x| x / r).collect());
        }
    }
    basis
}

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix from rows; returns `None` if the rows are ragged or
    /// not square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Matrix { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn scaled(&self, s: f64) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.data.iter().fold(0.0f64, |m, x| m.max(fabs(*x))).max(1.0);
        (0..self.n).all(|i| (0..i).all(|j| fabs(self[(i, j)] - self[(j, i)]) <= tol * scale))
    }

    /// Lower Cholesky factor, or `None` if the matrix is not positive definite.
    pub fn cholesky(&self) -> Option<Matrix> {
        let n = self.n;
        let mut l = Self::zeros(n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > 0.0) {
                return None;
            }
            let d = sqrt(d);
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Some(l)
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| fabs(a[i * n + c]).partial_cmp(&fabs(a[j * n + c])).unwrap())
                .unwrap();
            if a[p * n + c] == 0.0 {
                return 0.0;
            }
            if p != c {
                for k in 0..n {
                    a.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let piv = a[c * n + c];
            det *= piv;
            for r in c + 1..n {
                let f = a[r * n + c] / piv;
                for k in c..n {
                    a[r * n + k] -= f * a[c * n + k];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` for singular input.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| fabs(a[i * n + c]).partial_cmp(&fabs(a[j * n + c])).unwrap())
                .unwrap();
            if fabs(a[p * n + c]) < 1e-300 {
                return None;
            }
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
                inv.swap(p * n + k, c * n + k);
            }
            let piv = a[c * n + c];
            for k in 0..n {
                a[c * n + k] /= piv;
                inv[c * n + k] /= piv;
            }
            for r in 0..n {
                if r != c {
                    let f = a[r * n + c];
                    if f != 0.0 {
                        for k in 0..n {
                            a[r * n + k] -= f * a[c * n + k];
                            inv[r * n + k] -= f * inv[c * n + k];
                        }
                    }
                }
            }
        }
        Some(Matrix { n, data: inv })
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
    /// Returns eigenvalues and the matrix whose columns are eigenvectors.
    pub fn symmetric_eigen(&self) -> (Vec<f64>, Matrix) {
        let n = self.n;
        let mut a = self.clone();
        let mut v = Self::identity(n);
        for _sweep in 0..100 {
            let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)] * a[(i, j)])
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if fabs(apq) < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    let t = sgn / (fabs(theta) + sqrt(theta * theta + 1.0));
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / sqrt(t * t + 1.0);
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
        ((0..n).map(|i| a[(i, i)]).collect(), v)
    }

    /// `f(S)` for symmetric `S`, applying `f` to the spectrum.
    pub fn symmetric_function(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let (vals, vecs) = self.symmetric_eigen();
        let n = self.n;
        let mut m = Self::zeros(n);
        for (k, &lam) in vals.iter().enumerate() {
            let fl = f(lam);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += fl * vecs[(i, k)] * vecs[(j, k)];
                }
            }
        }
        m
    }

    /// Ratio of largest to smallest singular value.
    pub fn condition(&self) -> f64 {
        let ata = self.transpose().mul(self);
        let (vals, _) = ata.symmetric_eigen();
        let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
        let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
        sqrt(hi / lo)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Solves `A x = b` for symmetric positive-definite `A` via Cholesky.
pub fn solve_spd(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let l = a.cholesky()?;
    let n = a.dim();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det_of_known_matrix() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 4.0]]).unwrap();
        assert!((m.det() - 18.0).abs() < 1e-12);
        let p = m.mul(&m.inverse().unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_square_root_squares_back() {
        let m = Matrix::from_rows(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.2], vec![0.5, 0.2, 2.0]]).unwrap();
        let r = m.symmetric_function(sqrt);
        let back = r.mul(&r);
        for i in 0..3 {
            for j in 0..3 {
                assert!((back[(i, j)] - m[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spd_solve_matches_product() {
        let m = Matrix::from_rows(&[vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.2], vec![0.5, 0.2, 2.0]]).unwrap();
        let x = solve_spd(&m, &[1.0, -2.0, 0.5]).unwrap();
        let b = m.mul_vec(&x);
        assert!((b[0] - 1.0).abs() < 1e-12 && (b[1] + 2.0).abs() < 1e-12 && (b[2] - 0.5).abs() < 1e-12);
        assert!(Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap().cholesky().is_none());
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        let u = normalized(&[0.3, -0.4, 0.8, 0.1]);
        let b = tangent_basis(&u);
        assert_eq!(b.len(), 3);
        for (i, x) in b.iter().enumerate() {
            assert!(dot(x, &u).abs() < 1e-14);
            for (j, y) in b.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((dot(x, y) - e).abs() < 1e-14);
            }
        }
    }
}
