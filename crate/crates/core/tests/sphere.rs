use std::f64::consts::PI;

use lpgeom::operators::cosine_transform_plus_density;
use lpgeom::sphere::{build_grid, eval_harmonic, estimate_multiplier, harmonic_samples};
use lpgeom::HarmonicIndex;
use proptest::prelude::*;

#[test]
fn grid_sizes_and_weight_sums() {
    let g = build_grid(3, 32).unwrap();
    assert_eq!(g.len(), 2048);
    assert!((g.weights().iter().sum::<f64>() - 4.0 * PI).abs() < 1e-12);
    let g = build_grid(3, 64).unwrap();
    assert!((g.integrate(&vec![1.0; g.len()]).unwrap() - 4.0 * PI).abs() < 1e-12);
    let g = build_grid(4, 32).unwrap();
    assert!((g.weights().iter().sum::<f64>() - 2.0 * PI * PI).abs() < 1e-10);
    assert!(build_grid(3, 7).is_err());
    assert!(build_grid(2, 32).is_err());
}

#[test]
fn integration_examples() {
    let g = build_grid(3, 32).unwrap();
    let sq: Vec<f64> = g.nodes().map(|u| u[2] * u[2]).collect();
    assert!((g.integrate(&sq).unwrap() - 4.0 * PI / 3.0).abs() < 1e-10);
    let c32 = 3.0 / (2.0 * PI);
    let plus: Vec<f64> = g.nodes().map(|u| c32 * u[2].max(0.0).powi(2)).collect();
    assert!((g.integrate(&plus).unwrap() - 1.0).abs() < 1e-10);
    let odd: Vec<f64> = g.nodes().map(|u| u[0]).collect();
    assert!(g.integrate(&odd).unwrap().abs() < 1e-10);
}

#[test]
fn harmonics_are_orthonormal() {
    let g = build_grid(3, 32).unwrap();
    let y0 = eval_harmonic(HarmonicIndex::new(0, 1).unwrap(), &[0.0, 0.0, 1.0]).unwrap();
    assert!((y0 - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-14);
    let y21 = harmonic_samples(&g, HarmonicIndex::new(2, 1).unwrap()).unwrap();
    let y31 = harmonic_samples(&g, HarmonicIndex::new(3, 1).unwrap()).unwrap();
    assert!((g.inner(&y21, &y21).unwrap() - 1.0).abs() < 1e-8);
    assert!(g.inner(&y21, &y31).unwrap().abs() < 1e-8);
}

#[test]
fn cosine_transform_multipliers() {
    let g = build_grid(3, 32).unwrap();
    let a = |p: f64, k: usize| estimate_multiplier(&g, |f| cosine_transform_plus_density(f, p, &g), k).unwrap().value;
    assert!((a(2.0, 0) - 1.0).abs() < 1e-8);
    assert!(a(2.0, 4).abs() < 1e-6);
    assert!(a(2.5, 3).abs() > 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn antipodes_and_mirrors_are_involutions(res in 8usize..40, i in 0usize..10_000) {
        let g = build_grid(3, res).unwrap();
        let i = i % g.len();
        let j = g.antipode(i);
        prop_assert_eq!(g.antipode(j), i);
        for (a, b) in g.node(i).iter().zip(g.node(j)) {
            prop_assert!((a + b).abs() < 1e-12);
        }
        prop_assert!((g.weights()[i] - g.weights()[j]).abs() < 1e-15);
        for axis in 0..3 {
            if let Some(m) = g.mirror(i, axis) {
                prop_assert_eq!(g.mirror(m, axis), Some(i));
            }
        }
    }

    #[test]
    fn integration_is_linear(res in 8usize..32, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let g = build_grid(3, res).unwrap();
        let f: Vec<f64> = g.nodes().map(|u| u[0] * u[1] + 1.0).collect();
        let h: Vec<f64> = g.nodes().map(|u| u[2].powi(3) - u[0]).collect();
        let mix: Vec<f64> = f.iter().zip(&h).map(|(x, y)| a * x + b * y).collect();
        let lhs = g.integrate(&mix).unwrap();
        let rhs = a * g.integrate(&f).unwrap() + b * g.integrate(&h).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11);
    }
}
