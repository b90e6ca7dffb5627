use std::f64::consts::PI;

use lpgeom::fixtures::{cube, random_ellipsoid, random_polytope, random_sl, shifted_ball, simplex, FixtureRng};
use lpgeom::inequalities::{
    centroid_product, corollary_check, petty_product, petty_value, santalo_check, strongest_m_sweep,
    strongest_pi_sweep, tau_grid, Relation,
};
use lpgeom::{ConvexBody, InequalityReport, OperatorParams, SphereGrid, StarBody, Verdict};
use proptest::prelude::*;

const KAPPA3: f64 = 4.0 * PI / 3.0;

fn grid(res: usize) -> SphereGrid {
    SphereGrid::new(3, res).unwrap()
}

fn params(p: f64, tau: f64) -> OperatorParams {
    OperatorParams::new(p, tau).unwrap()
}

#[test]
fn verdicts_follow_the_tolerance_protocol() {
    assert_eq!(InequalityReport::less_eq("t", 0.9, 1.0).verdict, Verdict::Holds);
    assert_eq!(InequalityReport::less_eq("t", 1.0009, 1.0).verdict, Verdict::Equality);
    assert_eq!(InequalityReport::less_eq("t", 1.002, 1.0).verdict, Verdict::ViolatedWithinTolerance);
    assert_eq!(InequalityReport::less_eq("t", 1.1, 1.0).verdict, Verdict::Violated);
    assert_eq!(InequalityReport::greater_eq("t", 0.9991, 1.0).verdict, Verdict::Equality);
    assert_eq!(InequalityReport::greater_eq("t", 0.997, 1.0).verdict, Verdict::ViolatedWithinTolerance);
    assert_eq!(InequalityReport::less_eq("t", f64::NAN, 1.0).verdict, Verdict::Violated);
    let r = InequalityReport::identity("t", 1.0 + 2e-5, 1.0, 1e-4);
    assert_eq!((r.relation, r.verdict), (Relation::Equal, Verdict::Equality));
}

#[test]
fn tau_grid_is_symmetric() {
    let t = tau_grid(21);
    assert_eq!(t.len(), 21);
    assert_eq!((t[0], t[10], t[20]), (-1.0, 0.0, 1.0));
    for i in 0..21 {
        assert_eq!(t[i], -t[20 - i]);
    }
}

#[test]
fn balls_give_equality() {
    let g = grid(16);
    let b = ConvexBody::unit_ball(3);
    for tau in [-1.0, 0.0, 0.6] {
        assert!(petty_product(&b, params(2.0, tau), &g).unwrap().equality);
        assert!(centroid_product(&b.clone().into(), params(2.0, tau), &g).unwrap().equality);
        assert!(corollary_check(&b.clone().into(), params(2.0, tau), &g).unwrap().equality);
    }
    let r = santalo_check(&ConvexBody::ball(3, 1.4).unwrap().translate(&[0.1, 0.0, -0.2]).unwrap(), &g).unwrap();
    assert!(r.equality, "{r:?}");
}

#[test]
fn simplex_is_strictly_below_the_petty_bound() {
    let g = grid(48);
    for tau in [-1.0, 0.0, 1.0] {
        let r = petty_product(&simplex(3), params(2.0, tau), &g).unwrap();
        assert!(r.left <= 0.99 * r.right, "{r:?}");
        assert_eq!(r.verdict, Verdict::Holds);
    }
}

#[test]
fn santalo_holds_for_polytopes() {
    let g = grid(32);
    for k in [cube(3), simplex(3)] {
        let r = santalo_check(&k, &g).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        assert!(r.left < KAPPA3 * KAPPA3);
    }
}

#[test]
fn sweeps_of_the_shifted_ball() {
    let g = grid(16);
    let taus = tau_grid(5);
    let k = shifted_ball(3);
    let pi = strongest_pi_sweep(&k, 2.0, &taus, &g).unwrap();
    assert_eq!(pi.argmin_tau(), 0.0);
    assert_eq!(pi.argmax_tau().abs(), 1.0);
    let m = strongest_m_sweep(&k.into(), 2.0, &taus, &g).unwrap();
    assert_eq!(m.argmax_tau(), 0.0);
    assert_eq!(m.argmin_tau().abs(), 1.0);
    let c = strongest_pi_sweep(&cube(3), 2.0, &taus, &g).unwrap();
    assert!(c.constant);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn petty_product_is_affine_invariant(seed in any::<u64>(), tau in -1.0f64..1.0, lambda in 0.5f64..2.0) {
        let mut rng = FixtureRng::new(seed);
        let g = grid(48);
        let k = random_polytope(&mut rng, 3, 12);
        let phi = random_sl(&mut rng, 3, 2.0);
        let image = k.linear_image(&phi).unwrap().scaled(lambda).unwrap();
        let a = petty_value(&k, params(2.0, tau), &g).unwrap();
        let b = petty_value(&image, params(2.0, tau), &g).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-3, "{a} vs {b}");
    }

    #[test]
    fn endpoint_consistency(seed in any::<u64>(), p in 1.5f64..4.0) {
        let g = grid(24);
        let k = random_polytope(&mut FixtureRng::new(seed), 3, 12);
        let minus = petty_value(&k, params(p, -1.0), &g).unwrap();
        let plus_reflected = petty_value(&k.reflected(), params(p, 1.0), &g).unwrap();
        prop_assert!((minus / plus_reflected - 1.0).abs() < 1e-10);
    }

    #[test]
    fn petty_and_centroid_hold(seed in any::<u64>(), tau in -1.0f64..1.0) {
        let mut rng = FixtureRng::new(seed);
        let g = grid(16);
        let k = random_polytope(&mut rng, 3, 12);
        prop_assert!(petty_product(&k, params(2.0, tau), &g).unwrap().verdict.is_ok());
        let l: StarBody = k.into();
        prop_assert!(centroid_product(&l, params(2.0, tau), &g).unwrap().verdict.is_ok());
    }

    #[test]
    fn ellipsoids_give_petty_equality(seed in any::<u64>(), tau in -1.0f64..1.0) {
        let g = grid(32);
        let e = random_ellipsoid(&mut FixtureRng::new(seed), 3, 3.0);
        let r = petty_product(&e, params(2.0, tau), &g).unwrap();
        prop_assert!(r.equality, "{r:?}");
    }
}
