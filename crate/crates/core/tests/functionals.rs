use std::f64::consts::PI;

use lpgeom::body::{harmonic_radial_combination, lp_combination};
use lpgeom::fixtures::{cube, elongated_ellipsoid, random_polytope, random_star, shifted_ball, simplex, FixtureRng};
use lpgeom::functionals::{
    brunn_minkowski_check, dual_brunn_minkowski_check, dual_minkowski_check, dual_mixed_volume, durch_identity_check,
    minkowski_check, mixed_volume_p,
};
use lpgeom::{ConvexBody, OperatorParams, SphereGrid, StarBody};
use proptest::prelude::*;

const KAPPA3: f64 = 4.0 * PI / 3.0;

fn grid(res: usize) -> SphereGrid {
    SphereGrid::new(3, res).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn mixed_volume_of_a_body_with_itself_is_its_volume() {
    let g = grid(48);
    for k in [cube(3), simplex(3), random_polytope(&mut FixtureRng::new(4), 3, 12)] {
        for p in [1.0, 2.0, 3.5] {
            let v = mixed_volume_p(&k, &k, p, &g).unwrap();
            assert!(rel(v.value, k.volume(&g).unwrap()) < 1e-12);
            assert_eq!(v.error_estimate, 0.0);
        }
    }
    let e = elongated_ellipsoid(3);
    assert!(rel(mixed_volume_p(&e, &e, 2.0, &g).unwrap().value, 2.0 * KAPPA3) < 1e-5);
}

#[test]
fn mixed_volume_of_balls() {
    let g = grid(32);
    let b = ConvexBody::unit_ball(3);
    for (p, lambda) in [(1.5, 2.0), (2.0, 0.5), (3.0, 1.3)] {
        let v = mixed_volume_p(&b, &ConvexBody::ball(3, lambda).unwrap(), p, &g).unwrap().value;
        assert!(rel(v, KAPPA3 * f64::powf(lambda, p)) < 1e-6);
        let d = dual_mixed_volume(&b.clone().into(), &ConvexBody::ball(3, lambda).unwrap().into(), p, &g).unwrap();
        assert!(rel(d.value, KAPPA3 * f64::powf(lambda, -p)) < 1e-6);
    }
}

#[test]
fn dual_mixed_volume_of_a_body_with_itself_is_its_volume() {
    let g = grid(32);
    let l = random_star(&mut FixtureRng::new(8), &g).unwrap();
    let v = dual_mixed_volume(&l, &l, 2.0, &g).unwrap();
    assert!(rel(v.value, l.volume(&g).unwrap()) < 1e-12);
}

#[test]
fn duality_identity_examples() {
    let g = grid(32);
    let k = shifted_ball(3);
    let l: StarBody = cube(3).into();
    for (p, tau) in [(2.0, 0.0), (1.5, -0.7), (3.0, 1.0)] {
        let r = durch_identity_check(&k, &l, OperatorParams::new(p, tau).unwrap(), &g).unwrap();
        assert!(r.verdict.is_ok(), "{r:?}");
    }
}

#[test]
fn dilates_give_equality() {
    let g = grid(32);
    let k = shifted_ball(3);
    let l = k.scaled(1.7).unwrap();
    for r in [minkowski_check(&k, &l, 2.0, &g).unwrap(), brunn_minkowski_check(&k, &l, 2.0, &g).unwrap()] {
        assert!(r.equality, "{r:?}");
    }
    let (ks, ls): (StarBody, StarBody) = (k.into(), l.into());
    for r in [dual_minkowski_check(&ks, &ls, 2.0, &g).unwrap(), dual_brunn_minkowski_check(&ks, &ls, 2.0, &g).unwrap()] {
        assert!(r.equality, "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `V_p(K, ·)` is linear under `+_p` in `h^p`.
    #[test]
    fn mixed_volume_is_linear_in_the_second_argument(
        seed in any::<u64>(), a in 0.1f64..3.0, b in 0.1f64..3.0, p in 1.0f64..4.0,
    ) {
        let mut rng = FixtureRng::new(seed);
        let g = grid(16);
        let k = random_polytope(&mut rng, 3, 10);
        let (l1, l2) = (random_polytope(&mut rng, 3, 10), random_polytope(&mut rng, 3, 10));
        let sum = lp_combination(a, &l1, b, &l2, p, &g).unwrap();
        let left = mixed_volume_p(&k, &sum, p, &g).unwrap().value;
        let right = a * mixed_volume_p(&k, &l1, p, &g).unwrap().value + b * mixed_volume_p(&k, &l2, p, &g).unwrap().value;
        prop_assert!(rel(left, right) < 1e-10);
    }

    /// `Ṽ_{-p}(K, ·)` is linear under `+̃_p` in `ρ^{-p}`.
    #[test]
    fn dual_mixed_volume_is_linear_in_the_second_argument(
        seed in any::<u64>(), a in 0.1f64..3.0, b in 0.1f64..3.0, p in 1.0f64..4.0,
    ) {
        let mut rng = FixtureRng::new(seed);
        let g = grid(16);
        let k = random_star(&mut rng, &g).unwrap();
        let (l1, l2) = (random_star(&mut rng, &g).unwrap(), random_star(&mut rng, &g).unwrap());
        let sum = harmonic_radial_combination(a, &l1, b, &l2, p, &g).unwrap();
        let left = dual_mixed_volume(&k, &sum, p, &g).unwrap().value;
        let right = a * dual_mixed_volume(&k, &l1, p, &g).unwrap().value + b * dual_mixed_volume(&k, &l2, p, &g).unwrap().value;
        prop_assert!(rel(left, right) < 1e-10);
    }

    #[test]
    fn classical_inequalities_hold(seed in any::<u64>(), p in 1.0f64..4.0) {
        let mut rng = FixtureRng::new(seed);
        let g = grid(24);
        let (k, l) = (random_polytope(&mut rng, 3, 12), random_polytope(&mut rng, 3, 12));
        prop_assert!(minkowski_check(&k, &l, p, &g).unwrap().verdict.is_ok());
        prop_assert!(brunn_minkowski_check(&k, &l, p, &g).unwrap().verdict.is_ok());
        let (ks, ls) = (random_star(&mut rng, &g).unwrap(), random_star(&mut rng, &g).unwrap());
        prop_assert!(dual_minkowski_check(&ks, &ls, p, &g).unwrap().verdict.is_ok());
        prop_assert!(dual_brunn_minkowski_check(&ks, &ls, p, &g).unwrap().verdict.is_ok());
    }
}
