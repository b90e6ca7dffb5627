//! Scalar root finding and minimization.

use libm::{fabs, sqrt};

use crate::error::{GeomError, Result};

/// Brent's method for a sign change of `f` on `[a, b]`.
pub fn brent_root(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(GeomError::InvalidParameter("root is not bracketed".into()));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fabs(fc) < fabs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * fabs(b) + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if fabs(xm) <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if fabs(e) >= tol1 && fabs(fa) > fabs(fb) {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = fabs(p);
            let min1 = 3.0 * xm * q - fabs(tol1 * q);
            let min2 = fabs(e * q);
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if fabs(d) > tol1 { d } else if xm > 0.0 { tol1 } else { -tol1 };
        fb = f(b);
    }
    Err(GeomError::NoConvergence { what: "brent root", iterations: 200 })
}

/// Brent's minimizer on `[a, b]`; returns `(x, f(x))`. Exact for unimodal
/// functions, including non-smooth convex ones.
pub fn brent_min(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = tol * fabs(x) + 1e-14;
        let tol2 = 2.0 * tol1;
        if fabs(x - xm) <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if fabs(e) > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = fabs(q);
            let etemp = e;
            e = d;
            if !(fabs(p) >= fabs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x)) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if xm >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if fabs(d) >= tol1 { x + d } else if d > 0.0 { x + tol1 } else { x - tol1 };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Minimizes a convex function of two variables over the square
/// `[-r, r]^2` by nested one-dimensional minimization, doubling the square
/// while the minimizer sits on its boundary.
pub fn convex_min_2d(f: impl Fn(f64, f64) -> f64, mut r: f64, tol: f64) -> (f64, f64, f64) {
    let mut best = (0.0, 0.0, f(0.0, 0.0));
    for _ in 0..8 {
        let inner = |s: f64| brent_min(|t| f(s, t), -r, r, tol).1;
        let (s, _) = brent_min(inner, -r, r, tol);
        let (t, val) = brent_min(|t| f(s, t), -r, r, tol);
        if val < best.2 {
            best = (s, t, val);
        }
        let edge = r * (1.0 - 1e-3);
        if fabs(s) < edge && fabs(t) < edge {
            break;
        }
        r *= 2.0;
    }
    best
}

/// Solves `a x^2 + b x + c = 0` for its larger root.
pub fn larger_quadratic_root(a: f64, b: f64, c: f64) -> Option<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 || a == 0.0 {
        return None;
    }
    let sq = sqrt(disc);
    // Stable form avoiding cancellation.
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    let (r1, r2) = (q / a, if q != 0.0 { c / q } else { 0.0 });
    Some(r1.max(r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_cubic() {
        let r = brent_root(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
        assert!(brent_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn minimizes_kinked_convex_function() {
        let (x, fx) = brent_min(|x| (x - 0.3).abs() + 0.1 * x, -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!((fx - 0.03).abs() < 1e-9);
        let (s, t, v) = convex_min_2d(|s, t| (s - 3.0).abs().max((t + 0.5).abs()) + 1.0, 0.5, 1e-12);
        assert!((v - 1.0).abs() < 1e-8, "{s} {t} {v}");
    }

    #[test]
    fn quadratic_root() {
        assert!((larger_quadratic_root(1.0, -3.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(larger_quadratic_root(1.0, 0.0, 1.0).is_none());
    }
}
