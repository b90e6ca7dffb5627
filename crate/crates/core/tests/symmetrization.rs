use lpgeom::fixtures::{cube, elongated_ellipsoid, random_polytope, shifted_ball, FixtureRng};
use lpgeom::symmetrization::{inclusion_check, steiner, steiner_step, symmetrize_flow, SteinerMode};
use lpgeom::{ConvexBody, OperatorParams, SphereGrid};
use proptest::prelude::*;

fn grid(res: usize) -> SphereGrid {
    SphereGrid::new(3, res).unwrap()
}

/// `v` reflected in the hyperplane `u^⊥`.
fn mirror(u: &[f64], v: &[f64]) -> Vec<f64> {
    let t: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    v.iter().zip(u).map(|(a, b)| a - 2.0 * t * b).collect()
}

fn max_support_gap(a: &ConvexBody, b: &ConvexBody, g: &SphereGrid) -> f64 {
    g.nodes().map(|v| (a.support(v) - b.support(v)).abs()).fold(0.0, f64::max)
}

#[test]
fn cube_along_an_axis() {
    let g = grid(32);
    let step = steiner_step(&cube(3), &[0.0, 0.0, 1.0], 48).unwrap();
    assert_eq!(step.mode, SteinerMode::ExactPolytope);
    assert!((step.output.volume(&g).unwrap() - 8.0).abs() < 1e-2);
    assert!(max_support_gap(&step.output, &cube(3), &g) < 1e-12);
}

#[test]
fn quadrics_are_symmetrized_in_closed_form() {
    let g = grid(32);
    let k = shifted_ball(3);
    let step = steiner_step(&k, &[0.0, 0.0, 1.0], 48).unwrap();
    assert_eq!(step.mode, SteinerMode::Quadric);
    assert!(max_support_gap(&step.output, &ConvexBody::unit_ball(3), &g) < 1e-12);
    let u = [0.6, 0.0, 0.8];
    let e = steiner(&elongated_ellipsoid(3), &u, 48).unwrap();
    assert!((e.volume(&g).unwrap() / elongated_ellipsoid(3).volume(&g).unwrap() - 1.0).abs() < 1e-10);
    for v in g.nodes() {
        assert!((e.support(v) - e.support(&mirror(&u, v))).abs() < 1e-8);
    }
}

#[test]
fn sampled_mode_preserves_volume() {
    let g = grid(48);
    let mut rng = FixtureRng::new(21);
    let pts: Vec<Vec<f64>> = (0..300).map(|_| rng.direction(3).iter().map(|x| x + 0.1).collect()).collect();
    let k = ConvexBody::polytope(&pts).unwrap();
    let u = rng.direction(3);
    let step = steiner_step(&k, &u, 48).unwrap();
    assert_eq!(step.mode, SteinerMode::Sampled);
    let (v0, v1) = (k.volume(&g).unwrap(), step.output.volume(&g).unwrap());
    assert!((v1 / v0 - 1.0).abs() < 1e-3, "{v0} {v1}");
}

#[test]
fn invalid_directions_are_rejected() {
    assert!(steiner(&cube(3), &[0.0, 0.0, 0.0], 48).is_err());
    assert!(steiner(&cube(3), &[1.0, 0.0], 48).is_err());
}

#[test]
fn inclusion_holds_for_the_shifted_ball() {
    let g = grid(16);
    let r = inclusion_check(&shifted_ball(3), OperatorParams::new(2.0, 0.5).unwrap(), &[0.0, 0.6, 0.8], &g).unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.max_violation <= 1e-6 * r.scale);
}

#[test]
fn short_flow_keeps_volume() {
    let g = grid(16);
    let params = OperatorParams::new(2.0, 0.0).unwrap();
    let trace = symmetrize_flow(&cube(3), params, 3, 5, &g, 24).unwrap();
    assert_eq!(trace.rows.len(), 4);
    assert_eq!(trace.rows[0].mode, None);
    for w in trace.rows.windows(2) {
        assert!((w[1].volume / w[0].volume - 1.0).abs() < 1e-3);
        assert!(w[1].petty >= w[0].petty * (1.0 - 1e-3));
    }
    assert!(symmetrize_flow(&cube(3), params, 0, 5, &g, 24).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exact_mode_preserves_volume_and_is_symmetric(seed in any::<u64>()) {
        let mut rng = FixtureRng::new(seed);
        let k = random_polytope(&mut rng, 3, 12);
        let u = rng.direction(3);
        let step = steiner_step(&k, &u, 48).unwrap();
        prop_assert_eq!(step.mode, SteinerMode::ExactPolytope);
        let g = grid(16);
        let (v0, v1) = (k.volume(&g).unwrap(), step.output.volume(&g).unwrap());
        prop_assert!((v1 / v0 - 1.0).abs() < 1e-10);
        for v in g.nodes() {
            prop_assert!((step.output.support(v) - step.output.support(&mirror(&u, v))).abs() < 1e-8);
        }
    }

    #[test]
    fn idempotence(seed in any::<u64>()) {
        let mut rng = FixtureRng::new(seed);
        let k = random_polytope(&mut rng, 3, 12);
        let u = rng.direction(3);
        let once = steiner(&k, &u, 48).unwrap();
        let twice = steiner(&once, &u, 48).unwrap();
        let g = grid(16);
        let scale = g.nodes().map(|v| once.support(v)).fold(0.0, f64::max);
        prop_assert!(max_support_gap(&once, &twice, &g) <= 2e-3 * scale);
    }

    #[test]
    fn containment_is_preserved(seed in any::<u64>()) {
        let mut rng = FixtureRng::new(seed);
        let k = random_polytope(&mut rng, 3, 10);
        let ConvexBody::Polytope(poly) = &k else { panic!("expected a polytope") };
        let mut pts: Vec<Vec<f64>> = poly.vertices().to_vec();
        for _ in 0..4 {
            pts.push(rng.direction(3).iter().map(|x| 1.5 * x).collect());
        }
        let l = ConvexBody::polytope(&pts).unwrap();
        let u = rng.direction(3);
        let (sk, sl) = (steiner(&k, &u, 48).unwrap(), steiner(&l, &u, 48).unwrap());
        let g = grid(16);
        for v in g.nodes() {
            prop_assert!(sk.support(v) <= sl.support(v) + 1e-9);
        }
    }
}
