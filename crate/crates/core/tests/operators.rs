use std::f64::consts::PI;

use lpgeom::fixtures::{cube, elongated_ellipsoid, random_polytope, random_sl, random_spd, shifted_ball, FixtureRng};
use lpgeom::operators::{
    m_minus_by_reflection, m_tau, pi_minus_by_reflection, pi_tau, projection_pair, moment_pair, tau_from_coefficients,
    tau_weights,
};
use lpgeom::{ConvexBody, OperatorParams, SphereGrid, StarBody};
use proptest::prelude::*;

fn grid(res: usize) -> SphereGrid {
    SphereGrid::new(3, res).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn star(k: &ConvexBody) -> StarBody {
    StarBody::FromConvex(k.clone())
}

#[test]
fn ball_is_fixed_for_both_families() {
    let g = grid(32);
    let b = ConvexBody::unit_ball(3);
    for tau in [-1.0, 0.0, 0.5] {
        let params = OperatorParams::new(2.0, tau).unwrap();
        for h in pi_tau(&b, params, &g).unwrap().support_on_grid(&g) {
            assert!((h - 1.0).abs() < 1e-6);
        }
        for h in m_tau(&star(&b), params, &g).unwrap().support_on_grid(&g) {
            assert!((h - 1.0).abs() < 1e-6);
        }
    }
}

#[test]
fn tau_from_coefficients_examples() {
    let (tau, _) = tau_from_coefficients(2.0, 1.0, 2.0).unwrap();
    let s = 2f64.sqrt();
    assert!((tau - (s - 1.0) / (s + 1.0)).abs() < 1e-14);
    assert!(tau_from_coefficients(0.5, 0.5, 2.0).unwrap().0.abs() < 1e-15);
    assert_eq!(tau_from_coefficients(3.0, 0.0, 2.0).unwrap().0, 1.0);
    assert_eq!(tau_from_coefficients(0.0, 3.0, 2.0).unwrap().0, -1.0);
    assert!(tau_from_coefficients(0.0, 0.0, 2.0).is_err());
    assert!(tau_from_coefficients(-1.0, 1.0, 2.0).is_err());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(OperatorParams::new(1.0, 0.0).is_err());
    assert!(OperatorParams::new(0.5, 0.0).is_err());
    assert!(OperatorParams::new(2.0, 1.5).is_err());
    assert!(OperatorParams::new(f64::NAN, 0.0).is_err());
}

#[test]
fn nonsymmetric_bodies_are_detected() {
    let g = grid(32);
    let k = shifted_ball(3);
    let plus = projection_pair(&k, 2.0, &g).unwrap();
    let gap = plus.support(1.0).iter().zip(plus.support(-1.0)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(gap > 1e-3, "pi gap {gap}");
    let m = moment_pair(&star(&k), 2.0, &g).unwrap();
    let gap = m.support(1.0).iter().zip(m.support(-1.0)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(gap > 1e-3, "m gap {gap}");
}

#[test]
fn symmetric_bodies_collapse() {
    let g = grid(24);
    for k in [cube(3), elongated_ellipsoid(3)] {
        let pi = projection_pair(&k, 2.5, &g).unwrap();
        let m = moment_pair(&star(&k), 2.5, &g).unwrap();
        let (pi0, m0) = (pi.support(0.0), m.support(0.0));
        for tau in [-1.0, -0.3, 0.7, 1.0] {
            for (a, b) in pi.support(tau).iter().zip(&pi0) {
                assert!(rel(*a, *b) < 1e-10, "{} {tau} {}", k.describe(), rel(*a, *b));
            }
            for (a, b) in m.support(tau).iter().zip(&m0) {
                assert!(rel(*a, *b) < 1e-10);
            }
        }
    }
}

#[test]
fn reflection_gives_the_minus_operators() {
    let g = grid(24);
    let k = shifted_ball(3);
    let minus = pi_tau(&k, OperatorParams::new(2.0, -1.0).unwrap(), &g).unwrap().support_on_grid(&g);
    let by_reflection = pi_minus_by_reflection(&k, 2.0, &g).unwrap().support_on_grid(&g);
    for (a, b) in minus.iter().zip(&by_reflection) {
        assert!(rel(*a, *b) < 1e-10);
    }
    let minus = m_tau(&star(&k), OperatorParams::new(2.0, -1.0).unwrap(), &g).unwrap().support_on_grid(&g);
    let by_reflection = m_minus_by_reflection(&star(&k), 2.0, &g).unwrap().support_on_grid(&g);
    for (a, b) in minus.iter().zip(&by_reflection) {
        assert!(rel(*a, *b) < 1e-10);
    }
}

/// `h(M_2^+ L, u)^2 = (3 / 2π) · 5 ∫_L (u·x)_+^2 dx` by Monte Carlo over the
/// shifted ball.
#[test]
fn moment_body_matches_monte_carlo() {
    let mut rng = FixtureRng::new(11);
    let dirs: Vec<Vec<f64>> = (0..6).map(|_| rng.direction(3)).collect();
    let samples = 1_000_000;
    let mut sums = vec![0.0; dirs.len()];
    let mut taken = 0;
    while taken < samples {
        let x = [rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)];
        if x[0] * x[0] + x[1] * x[1] + x[2] * x[2] > 1.0 {
            continue;
        }
        let y = [x[0], x[1], x[2] + 0.3];
        for (s, u) in sums.iter_mut().zip(&dirs) {
            let t = (u[0] * y[0] + u[1] * y[1] + u[2] * y[2]).max(0.0);
            *s += t * t;
        }
        taken += 1;
    }
    let volume = 4.0 * PI / 3.0;
    let c = 3.0 / (2.0 * PI);
    let g = grid(32);
    let m = m_tau(&star(&shifted_ball(3)), OperatorParams::new(2.0, 1.0).unwrap(), &g).unwrap();
    for (s, u) in sums.iter().zip(&dirs) {
        let mc = (c * 5.0 * volume * s / samples as f64).sqrt();
        assert!(rel(m.support(u), mc) < 0.01, "{} vs {mc}", m.support(u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn homogeneity(seed in any::<u64>(), p in 1.5f64..4.0, tau in -1.0f64..1.0, big in any::<bool>()) {
        let lambda = if big { 2.0 } else { 0.5 };
        let g = grid(16);
        let k = random_polytope(&mut FixtureRng::new(seed), 3, 10);
        let params = OperatorParams::new(p, tau).unwrap();
        let scaled = k.scaled(lambda).unwrap();
        let pi = pi_tau(&k, params, &g).unwrap().support_on_grid(&g);
        let pi_s = pi_tau(&scaled, params, &g).unwrap().support_on_grid(&g);
        let m = m_tau(&star(&k), params, &g).unwrap().support_on_grid(&g);
        let m_s = m_tau(&star(&scaled), params, &g).unwrap().support_on_grid(&g);
        let (ep, em) = (3.0 / p - 1.0, 3.0 / p + 1.0);
        for i in 0..g.len() {
            prop_assert!(rel(pi_s[i], lambda.powf(ep) * pi[i]) < 1e-8);
            prop_assert!(rel(m_s[i], lambda.powf(em) * m[i]) < 1e-8);
        }
    }

    #[test]
    fn recombination(seed in any::<u64>(), p in 1.5f64..4.0, tau in -1.0f64..1.0) {
        let g = grid(16);
        let k = random_polytope(&mut FixtureRng::new(seed), 3, 10);
        let (a, b) = tau_weights(p, tau);
        for pair in [projection_pair(&k, p, &g).unwrap(), moment_pair(&star(&k), p, &g).unwrap()] {
            let (hp, hm, ht) = (pair.support(1.0), pair.support(-1.0), pair.support(tau));
            for i in 0..g.len() {
                let want = a * hp[i].powf(p) + b * hm[i].powf(p);
                prop_assert!(rel(ht[i].powf(p), want) < 1e-10);
            }
        }
    }

    #[test]
    fn coefficient_identity(c1 in 0.01f64..5.0, c2 in 0.01f64..5.0, p in 1.2f64..5.0, seed in any::<u64>()) {
        let (tau, c) = tau_from_coefficients(c1, c2, p).unwrap();
        prop_assert!((-1.0..=1.0).contains(&tau));
        let g = grid(12);
        let k = random_polytope(&mut FixtureRng::new(seed), 3, 8);
        let pair = projection_pair(&k, p, &g).unwrap();
        let (hp, hm, ht) = (pair.support(1.0), pair.support(-1.0), pair.support(tau));
        for i in 0..g.len() {
            let left = c1 * hp[i].powf(p) + c2 * hm[i].powf(p);
            prop_assert!(rel(left, c.powf(p) * ht[i].powf(p)) < 1e-10);
        }
    }

    /// `Π(φK) = φ^{-T} ΠK` and `M(φL) = φ M L` for `φ ∈ SL(n)`, tested on
    /// ellipsoids through `h(Π φK, u) = H(ΠK, φ^{-1} u)` and
    /// `h(M φL, u) = H(ML, φ^T u)`.
    #[test]
    fn sl_equivariance(seed in any::<u64>(), tau in -1.0f64..1.0) {
        let mut rng = FixtureRng::new(seed);
        let k = ConvexBody::ellipsoid(random_spd(&mut rng, 3, 2.0)).unwrap();
        let phi = random_sl(&mut rng, 3, 2.0);
        let phi_inv = phi.inverse().unwrap();
        let phi_t = phi.transpose();
        let image = k.linear_image(&phi).unwrap();
        let g = grid(48);
        let params = OperatorParams::new(2.0, tau).unwrap();
        let pi = pi_tau(&k, params, &g).unwrap();
        let pi_image = pi_tau(&image, params, &g).unwrap();
        let m = m_tau(&star(&k), params, &g).unwrap();
        let m_image = m_tau(&star(&image), params, &g).unwrap();
        for _ in 0..8 {
            let u = rng.direction(3);
            prop_assert!(rel(pi_image.support(&u), pi.support_extended(&phi_inv.mul_vec(&u))) < 1e-4);
            prop_assert!(rel(m_image.support(&u), m.support_extended(&phi_t.mul_vec(&u))) < 1e-4);
        }
    }
}
