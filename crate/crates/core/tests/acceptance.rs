//! Acceptance suite: one PASS/FAIL line per criterion at dimension 3 and
//! grid resolution 64, including the wall-clock budgets.

use std::time::Instant;

use lpgeom::body::santalo_point;
use lpgeom::fixtures::{self, FixtureRng};
use lpgeom::functionals::{
    brunn_minkowski_check, dual_brunn_minkowski_check, dual_minkowski_check, durch_identity_check, minkowski_check,
};
use lpgeom::inequalities::{
    centroid_product, petty_product, santalo_check, strongest_m_sweep, strongest_pi_sweep, tau_grid,
};
use lpgeom::operators::{
    cosine_transform_plus, cosine_transform_plus_density, limit_checks, moment_pair, projection_pair,
};
use lpgeom::sphere::{build_grid, estimate_multiplier};
use lpgeom::symmetrization::{inclusion_check, symmetrize_flow, DEFAULT_DISK_RESOLUTION};
use lpgeom::{ConvexBody, OperatorParams, SphereGrid, SphericalMeasure, StarBody, Verdict};

const RESOLUTION: usize = 64;

type Check = lpgeom::Result<(bool, String)>;

fn criterion(id: usize, name: &str, budget_s: f64, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = f();
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok((ok, d)) => (ok, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = secs <= budget_s;
    let pass = ok && in_time;
    println!(
        "{} criterion {id:>2} ({name}): {detail}; {secs:.1} s of {budget_s:.0} s",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn max_dev(values: &[f64], target: f64) -> f64 {
    values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max)
}

fn ball_fixed_points(g: &SphereGrid) -> Check {
    let b = ConvexBody::unit_ball(3);
    let sb = StarBody::from(b.clone());
    let mut worst: f64 = 0.0;
    for p in [1.5, 2.0, 3.5] {
        let pi = projection_pair(&b, p, g)?;
        let m = moment_pair(&sb, p, g)?;
        for tau in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            worst = worst.max(max_dev(&pi.support(tau), 1.0)).max(max_dev(&m.support(tau), 1.0));
        }
    }
    Ok((worst <= 1e-6, format!("max |h - 1| = {worst:.2e}")))
}

fn normalization(g: &SphereGrid) -> Check {
    let mut worst: f64 = 0.0;
    for p in [1.5, 2.0, 2.5, 3.0] {
        worst = worst.max(max_dev(&cosine_transform_plus(&SphericalMeasure::lebesgue(g), p, g)?, 1.0));
    }
    Ok((worst <= 1e-8, format!("max |C_p^+ 1 - 1| = {worst:.2e}")))
}

fn multipliers(g: &SphereGrid) -> Check {
    let a = |p: f64, k: usize| -> lpgeom::Result<f64> {
        Ok(estimate_multiplier(g, |f| cosine_transform_plus_density(f, p, g), k)?.value)
    };
    let (a2, a3, a4) = (a(2.0, 2)?, a(2.0, 3)?, a(2.0, 4)?);
    let mut ok = a4.abs() <= 1e-6 && a2.abs() >= 1e-3 && a3.abs() >= 1e-4;
    let mut low = f64::INFINITY;
    for k in 0..=4 {
        low = low.min(a(2.5, k)?.abs());
    }
    ok &= low >= 1e-5;
    Ok((ok, format!("p=2: a2={a2:.3e} a3={a3:.3e} a4={a4:.2e}; p=2.5: min|a_k|={low:.3e}")))
}

fn durch(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(4);
    let taus = [-1.0, -0.3, 0.0, 0.7, 1.0];
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let k = fixtures::random_polytope(&mut rng, 3, 8 + i % 8);
        let l = match i % 3 {
            0 => fixtures::random_star(&mut rng, g)?,
            1 => StarBody::from(fixtures::random_polytope(&mut rng, 3, 12)),
            _ => StarBody::from(fixtures::shifted_ball(3)),
        };
        let params = OperatorParams::new([2.0, 2.5][i % 2], taus[i % 5])?;
        let r = durch_identity_check(&k, &l, params, g)?;
        worst = worst.max(r.relative_gap());
    }
    Ok((worst <= 1e-4, format!("max relative discrepancy {worst:.2e} over 20 cases")))
}

fn petty(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(5);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..20 {
        let k = fixtures::random_polytope(&mut rng, 3, 8 + i % 10);
        let params = OperatorParams::new([1.5, 2.0, 2.5, 3.0][i % 4], rng.range(-1.0, 1.0))?;
        let r = petty_product(&k, params, g)?;
        worst = worst.max(r.left / r.right);
    }
    let mut eq: f64 = 0.0;
    for _ in 0..5 {
        let e = fixtures::random_ellipsoid(&mut rng, 3, 4.0);
        let r = petty_product(&e, OperatorParams::new(2.0, rng.range(-1.0, 1.0))?, g)?;
        eq = eq.max(r.relative_gap());
    }
    Ok((
        worst <= 1.0 + 1e-3 && eq <= 5e-3,
        format!("max ratio to bound {worst:.6} (polytopes); ellipsoid gap {eq:.2e}"),
    ))
}

fn centroid(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(6);
    let mut worst = f64::INFINITY;
    for i in 0..20 {
        let l = match i % 3 {
            0 => fixtures::random_star(&mut rng, g)?,
            1 => StarBody::from(fixtures::random_polytope(&mut rng, 3, 10)),
            _ => StarBody::from(fixtures::shifted_ball(3)),
        };
        let params = OperatorParams::new([1.5, 2.0, 2.5, 3.0][i % 4], rng.range(-1.0, 1.0))?;
        let r = centroid_product(&l, params, g)?;
        worst = worst.min(r.left / r.right);
    }
    let mut eq: f64 = 0.0;
    for _ in 0..5 {
        let e = StarBody::from(fixtures::random_ellipsoid(&mut rng, 3, 4.0));
        let r = centroid_product(&e, OperatorParams::new(2.0, rng.range(-1.0, 1.0))?, g)?;
        eq = eq.max(r.relative_gap());
    }
    Ok((
        worst >= 1.0 - 1e-3 && eq <= 5e-3,
        format!("min ratio to bound {worst:.6}; ellipsoid gap {eq:.2e}"),
    ))
}

fn sweeps(g: &SphereGrid) -> Check {
    let taus = tau_grid(21);
    let mut ok = true;
    let mut detail = Vec::new();
    let mut slowest: f64 = 0.0;
    let mut timed = |f: &mut dyn FnMut() -> lpgeom::Result<lpgeom::TauSweep>| -> lpgeom::Result<lpgeom::TauSweep> {
        let t = Instant::now();
        let s = f()?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
        Ok(s)
    };
    let sb = fixtures::shifted_ball(3);
    let pi = timed(&mut || strongest_pi_sweep(&sb, 2.0, &taus, g))?;
    ok &= pi.argmin_tau() == 0.0 && pi.argmax_tau().abs() == 1.0;
    detail.push(format!("pi argmin {} argmax {}", pi.argmin_tau(), pi.argmax_tau()));
    let m = timed(&mut || strongest_m_sweep(&StarBody::from(sb.clone()), 2.0, &taus, g))?;
    ok &= m.argmax_tau() == 0.0 && m.argmin_tau().abs() == 1.0;
    detail.push(format!("m argmax {} argmin {}", m.argmax_tau(), m.argmin_tau()));
    let cube = fixtures::cube(3);
    let c1 = timed(&mut || strongest_pi_sweep(&cube, 2.0, &taus, g))?;
    let c2 = timed(&mut || strongest_m_sweep(&StarBody::from(cube.clone()), 2.0, &taus, g))?;
    ok &= c1.constant && c2.constant;
    detail.push(format!("cube spreads {:.1e}/{:.1e}", c1.spread, c2.spread));
    ok &= slowest <= 60.0;
    detail.push(format!("slowest sweep {slowest:.1} s"));
    Ok((ok, detail.join(", ")))
}

fn inclusion(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(8);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..10 {
        let k = fixtures::random_polytope(&mut rng, 3, 8 + i % 4);
        let u = rng.direction(3);
        let params = OperatorParams::new([2.0, 2.5, 3.0][i % 3], rng.range(-1.0, 1.0))?;
        let r = inclusion_check(&k, params, &u, g)?;
        worst = worst.max(r.max_violation / r.scale);
    }
    Ok((worst <= 1e-6, format!("max violation / scale {worst:.2e} over 10 cases")))
}

fn flow(g: &SphereGrid) -> Check {
    let params = OperatorParams::new(2.0, 0.5)?;
    let trace = symmetrize_flow(&fixtures::cube(3), params, 60, 9, g, DEFAULT_DISK_RESOLUTION)?;
    let rows = &trace.rows;
    let mut drift: f64 = 0.0;
    let mut petty_drop: f64 = 0.0;
    for w in rows.windows(2) {
        drift = drift.max((w[1].volume / w[0].volume - 1.0).abs());
        petty_drop = petty_drop.max(1.0 - w[1].petty / w[0].petty);
    }
    let reached = rows.iter().position(|r| r.ball_distance <= 0.02);
    let ok = reached.is_some() && drift <= 1e-3 && petty_drop <= 1e-3;
    Ok((
        ok,
        format!(
            "ball distance {:.4} at step {}, within 2% from step {:?}; max volume drift {drift:.2e}; max petty decrease {petty_drop:.2e}",
            rows.last().unwrap().ball_distance,
            rows.len() - 1,
            reached
        ),
    ))
}

fn santalo(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(10);
    let mut bodies = vec![
        ConvexBody::unit_ball(3),
        fixtures::shifted_ball(3),
        fixtures::cube(3),
        fixtures::simplex(3),
        fixtures::elongated_ellipsoid(3),
    ];
    for _ in 0..3 {
        bodies.push(fixtures::random_polytope(&mut rng, 3, 12));
    }
    let mut worst = f64::NEG_INFINITY;
    for k in &bodies {
        let r = santalo_check(k, g)?;
        worst = worst.max(r.left / r.right);
    }
    let mut eq: f64 = 0.0;
    for i in 0..3 {
        let e = fixtures::random_ellipsoid(&mut rng, 3, 4.0);
        let e = if i == 2 { e.translate(&[0.1, -0.05, 0.1])? } else { e };
        eq = eq.max(santalo_check(&e, g)?.relative_gap());
    }
    let s = santalo_point(&fixtures::shifted_ball(3), g)?;
    let err = ((s.point[0]).powi(2) + (s.point[1]).powi(2) + (s.point[2] - fixtures::SHIFT).powi(2)).sqrt();
    Ok((
        worst <= 1.0 + 1e-3 && eq <= 5e-3 && err <= 1e-6,
        format!("max ratio {worst:.6}; ellipsoid gap {eq:.2e}; shifted-ball point error {err:.2e}"),
    ))
}

fn limits(g: &SphereGrid) -> Check {
    let cube = limit_checks(&fixtures::cube(3), g)?;
    let ball = limit_checks(&fixtures::shifted_ball(3), g)?;
    let rel = ball.moment_deviation / ball.diameter;
    Ok((
        cube.projection_deviation <= 0.1 && rel <= 0.05,
        format!("cube p=1.05 deviation {:.3}; shifted ball p=40 deviation/diam {rel:.4}", cube.projection_deviation),
    ))
}

fn classical(g: &SphereGrid) -> Check {
    let mut rng = FixtureRng::new(12);
    let body = |rng: &mut FixtureRng, i: usize| -> lpgeom::Result<ConvexBody> {
        Ok(if i % 2 == 0 {
            fixtures::random_polytope(rng, 3, 10)
        } else {
            let e = fixtures::random_ellipsoid(rng, 3, 4.0);
            let c: Vec<f64> = rng.direction(3).iter().map(|x| 0.2 * x).collect();
            e.translate(&c)?
        })
    };
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for i in 0..50 {
        let k = body(&mut rng, i)?;
        let l = body(&mut rng, i / 2 + 1)?;
        let p = [1.5, 2.0, 3.0][i % 3];
        let reports = [
            minkowski_check(&k, &l, p, g)?,
            brunn_minkowski_check(&k, &l, p, g)?,
            dual_minkowski_check(&StarBody::from(k.clone()), &StarBody::from(l.clone()), p, g)?,
            dual_brunn_minkowski_check(&StarBody::from(k.clone()), &StarBody::from(l.clone()), p, g)?,
        ];
        for r in &reports {
            if !r.verdict.is_ok() {
                failures += 1;
            }
            worst = worst.max(-r.slack);
        }
    }
    let mut eq: f64 = 0.0;
    for i in 0..4 {
        let k = body(&mut rng, i)?;
        let l = k.scaled(1.7)?;
        let (sk, sl) = (StarBody::from(k.clone()), StarBody::from(l.clone()));
        for r in [
            minkowski_check(&k, &l, 2.0, g)?,
            brunn_minkowski_check(&k, &l, 2.0, g)?,
            dual_minkowski_check(&sk, &sl, 2.0, g)?,
            dual_brunn_minkowski_check(&sk, &sl, 2.0, g)?,
        ] {
            eq = eq.max(r.relative_gap());
            if r.verdict != Verdict::Equality {
                failures += 1;
            }
        }
    }
    Ok((
        failures == 0 && eq <= 5e-3,
        format!("{failures} failing reports; worst negative slack {worst:.2e}; dilate gap {eq:.2e}"),
    ))
}

fn main() {
    // Behave like a libtest target under name filters and `--list`.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let g = build_grid(3, RESOLUTION).expect("grid");
    let results = [
        criterion(1, "ball fixed points", 10.0, || ball_fixed_points(&g)),
        criterion(2, "normalization", f64::INFINITY, || normalization(&g)),
        criterion(3, "multiplier zero pattern", 30.0, || multipliers(&g)),
        criterion(4, "duality identity", 60.0, || durch(&g)),
        criterion(5, "Petty projection", 120.0, || petty(&g)),
        criterion(6, "centroid", 120.0, || centroid(&g)),
        criterion(7, "tau extremality", 4.0 * 60.0, || sweeps(&g)),
        criterion(8, "Steiner inclusion", 120.0, || inclusion(&g)),
        criterion(9, "symmetrization flow", 180.0, || flow(&g)),
        criterion(10, "Blaschke-Santalo", f64::INFINITY, || santalo(&g)),
        criterion(11, "limits", f64::INFINITY, || limits(&g)),
        criterion(12, "classical inequalities", f64::INFINITY, || classical(&g)),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
