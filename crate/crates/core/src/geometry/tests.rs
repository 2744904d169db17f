use super::models::*;
use super::*;
use crate::orbits::{span_residual, stack_real, tangent_basis, Orbit};
use crate::potentials::{g2_potential, product_family_potential, theorem_potential};

fn orbit(s: &str) -> Orbit {
    Orbit::new(s.parse().unwrap()).unwrap()
}

fn k_of(o: &Orbit) -> f64 {
    o.measure_k2().unwrap().sqrt()
}

#[test]
fn kks_form_on_sl2() {
    let m = Sl2Model::new(1.0, 0.0).unwrap();
    let alg = &m.alg;
    let (e, f, h) = (m.e(), m.f(), m.h());
    let geom = PointGeometry::new(alg, &e, &m.potential).unwrap();
    let xi_h = alg.bracket(&h, &e);
    let w = geom.omega_c(&xi_h, &f);
    assert!((w - Complex64::new(8.0, 0.0)).norm() < 1e-12, "{w}");
    assert!((geom.omega_c_generators(&h, &f) - w).norm() < 1e-12);
    let xi_f = alg.bracket(&f, &e);
    assert!((geom.omega_c(&xi_f, &h) + w).norm() < 1e-12);
    let w_i = geom.omega_c(&xi_h.times_i(), &f);
    assert!((w_i - w * Complex64::i()).norm() < 1e-12);
}

#[test]
fn j_on_the_sl2_model() {
    for (k, c) in [(1.0, 0.0), (1.5, 0.4)] {
        let m = Sl2Model::new(k, c).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let geom = m.geometry(t).unwrap();
            let (eta, _) = geom.eta();
            let jet = *geom.jet();
            let jh = geom.j_endo(&m.h());
            let want = m.e().scale_re(-4.0 * t * jet.rho1);
            assert!(jh.distance(&want) < 1e-10 * want.norm(), "J(h) k={k} c={c} t={t}: {jh:?} vs {want:?}");
            let je = geom.j_endo(&m.e());
            let want = m.h().scale_re(2.0 * t * (jet.rho1 + eta * jet.rho11));
            assert!(je.distance(&want) < 1e-10 * want.norm().max(1e-12), "J(e) at t={t}");
        }
    }
}

#[test]
fn sl2_metric_matches_closed_form() {
    for (k, c) in [(1.0, 0.0), (0.7, 1.0), (2.0, 0.25)] {
        let m = Sl2Model::new(k, c).unwrap();
        for t in [0.3, 1.0, 3.0] {
            let d = sl2_metric_discrepancy(&m, t).unwrap();
            assert!(d < 1e-10, "k={k} c={c} t={t}: {d:e}");
        }
    }
}

#[test]
fn moment_vector_is_multiple_of_x() {
    let flat = Sl2Model::new(1.0, 0.0).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let r = flat.moment_vector_check(t).unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-10 && r.residual < 1e-10, "{r:?}");
    }
    let m = Sl2Model::new(1.0, 1.0).unwrap();
    let t = 1.0;
    let r = m.moment_vector_check(t).unwrap();
    assert!((r.eta - 4.0).abs() < 1e-12);
    assert!((r.lambda - 2.5).abs() < 1e-10, "{r:?}");
    let lambdas: Vec<f64> = [0.3, 0.8, 1.5, 3.0]
        .iter()
        .map(|&t| m.moment_vector_check(t).unwrap())
        .inspect(|r| assert!((r.lambda - r.expected).abs() < 1e-10 && r.residual < 1e-10))
        .map(|r| r.lambda)
        .collect();
    let (_, sd) = crate::linalg::mean_and_stdev(&lambdas);
    assert!(sd > 0.1, "c > 0 makes lambda vary: {lambdas:?}");
}

#[test]
fn j_squared_for_theorem_potential() {
    let o = orbit("A:4:2,2");
    let pot = theorem_potential(k_of(&o)).unwrap();
    for (s, t) in [(1.0, 0.6), (0.4, 1.7)] {
        let p = o.representative(s, t).unwrap();
        let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
        let r = j_squared_residual(&geom, &real_tangent_basis(&p.tangent));
        assert!(r < 1e-9, "({s},{t}): {r:e}");
    }
}

#[test]
fn product_family_fails_off_sp2_and_sl4() {
    let bad = orbit("A:5:2,2,1");
    let pot = product_family_potential(k_of(&bad), 1.0).unwrap();
    let p = bad.representative(1.0, 0.6).unwrap();
    let geom = PointGeometry::new(bad.algebra(), &p.x, &pot).unwrap();
    let r = j_squared_residual(&geom, &real_tangent_basis(&p.tangent));
    assert!(r > 1e-3, "{r:e}");

    let good = orbit("C:2:2,2");
    let pot = product_family_potential(k_of(&good), 1.0).unwrap();
    let p = good.representative(1.0, 0.6).unwrap();
    let geom = PointGeometry::new(good.algebra(), &p.x, &pot).unwrap();
    let r = j_squared_residual(&geom, &real_tangent_basis(&p.tangent));
    assert!(r < 1e-9, "{r:e}");
}

#[test]
fn j_preserves_tangent_space() {
    let o = orbit("B:7:3");
    let pot = theorem_potential(k_of(&o)).unwrap();
    let p = o.random_orbit_point(&o.representative(1.0, 0.5).unwrap(), 3).unwrap();
    let basis = real_tangent_basis(&p.tangent);
    let vals: Vec<Element> = basis.iter().map(|v| v.value.clone()).collect();
    let span = stack_real(&vals);
    let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
    for v in &vals {
        assert!(span_residual(&span, &geom.j_endo(v)) < 1e-9);
    }
}

#[test]
fn g2_metric_positive_and_sign_flips() {
    let o = orbit("G2");
    let pot = g2_potential();
    let p = o.random_orbit_point(&o.representative(1.0, 0.7).unwrap(), 11).unwrap();
    let basis = real_tangent_basis(&p.tangent);
    let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
    let pos = metric_positivity(&geom, &basis);
    assert!(pos.min_eigenvalue > 0.0 && pos.asymmetry < 1e-10, "{pos:?}");
    let neg = PointGeometry::new(o.algebra(), &p.x, &pot.negated()).unwrap();
    let pos_neg = metric_positivity(&neg, &basis);
    assert!(pos_neg.min_eigenvalue < 0.0);
    let vals: Vec<Element> = basis.iter().map(|v| v.value.clone()).collect();
    let (g, gn) = (gram(&geom, &vals), gram(&neg, &vals));
    assert!((&g + &gn).amax() < 1e-12 * g.amax());
    let t = triple_check(&geom, &basis).unwrap();
    assert!(t.omega_j < 1e-9 && t.omega_k < 1e-9 && t.anticommutator < 1e-9, "{t:?}");
}

#[test]
fn gram_scales_linearly_with_potential() {
    let o = orbit("C:2:2,2");
    let k = k_of(&o);
    let p = o.representative(0.8, 1.1).unwrap();
    let pot = theorem_potential(k).unwrap();
    let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
    let jet = pot.jet(p.eta1, p.eta2).unwrap();
    let doubled = PointGeometry::with_jet(o.algebra(), &p.x, jet.scaled(2.0), 1.0);
    let vals: Vec<Element> = real_tangent_basis(&p.tangent).into_iter().map(|v| v.value).collect();
    let (g, g2) = (gram(&geom, &vals), gram(&doubled, &vals));
    assert!((&g * 2.0 - &g2).amax() < 1e-12 * g2.amax());
}

#[test]
fn didrho_matches_omega_i_on_g2() {
    let o = orbit("G2");
    let pot = g2_potential();
    let p = o.random_orbit_point(&o.representative(1.2, 0.5).unwrap(), 5).unwrap();
    let mut rng = seeded_rng(20);
    let dim = o.algebra().dim();
    for _ in 0..20 {
        let (a, b) = (random_element(&mut rng, dim), random_element(&mut rng, dim));
        let r = fd_didrho(o.algebra(), &p.x, &pot, 1.0, &a, &b, FdSettings::default()).unwrap();
        assert!(r.relative < 1e-6, "{r:?}");
    }
}

#[test]
fn omega_i_is_closed() {
    let o = orbit("A:4:2,2");
    let pot = theorem_potential(k_of(&o)).unwrap();
    let p = o.representative(1.0, 0.6).unwrap();
    let mut rng = seeded_rng(1);
    let dim = o.algebra().dim();
    for _ in 0..5 {
        let g: Vec<Element> = (0..3).map(|_| random_element(&mut rng, dim)).collect();
        let r = closedness_residual(o.algebra(), &p.x, &pot, 1.0, [&g[0], &g[1], &g[2]], FdSettings::default())
            .unwrap();
        assert!(r < 1e-5, "{r:e}");
    }
    let a = random_element(&mut rng, dim);
    let r = closedness_residual(o.algebra(), &p.x, &pot, 1.0, [&a, &a, &a], FdSettings::default()).unwrap();
    assert_eq!(r, 0.0);
}

#[test]
fn flow_derivative_rejects_tiny_steps() {
    let o = orbit("A:4:2,2");
    let p = o.representative(1.0, 0.6).unwrap();
    let a = o.algebra().basis_element(0);
    let e = flow_derivative(o.algebra(), &p.x, &a, 1e-13, |_| Ok(0.0)).unwrap_err();
    assert!(matches!(e, Error::StepUnderflow(_)));
}

#[test]
fn g2_equations_hold() {
    for (s, t) in [(1.0, 1.0), (0.3, 2.0), (5.0, 0.1)] {
        let r = g2_pde_residuals(s, t).unwrap();
        assert!(r.max_residual() < 1e-12, "({s},{t}): {r:?}");
        assert!(r.branch_i_witness >= 1.0);
    }
    assert!(g2_pde_residuals(0.0, 1.0).is_err());
}

#[test]
fn so4_blocks_do_not_mix() {
    for s in ["A:5:2,2,1", "C:3:2,2", "D:8:2,2,2,2:-", "B:9:3"] {
        let o = orbit(s);
        let pot = theorem_potential(k_of(&o)).unwrap();
        let p = o.representative(1.0, 0.6).unwrap();
        let r = so4_cross_block(o.algebra(), &p, &pot).unwrap();
        assert!(r < 1e-9, "{s}: {r:e}");
    }
}

#[test]
fn tangent_span_is_complex() {
    let o = orbit("D:6:3");
    let p = o.representative(0.9, 0.4).unwrap();
    let vals: Vec<Element> = tangent_basis(o.algebra(), &p.x).unwrap().into_iter().map(|v| v.value).collect();
    let span = stack_real(&real_tangent_basis(&p.tangent).into_iter().map(|v| v.value).collect::<Vec<_>>());
    for v in &vals {
        assert!(span_residual(&span, &v.times_i()) < 1e-10);
    }
}

#[test]
fn omega_i_antisymmetric_and_g_symmetric() {
    let o = orbit("A:4:2,2");
    let pot = theorem_potential(k_of(&o)).unwrap();
    let p = o.random_orbit_point(&o.representative(1.0, 0.6).unwrap(), 2).unwrap();
    let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
    let mut rng = seeded_rng(4);
    for _ in 0..10 {
        let a = o.algebra().bracket(&random_element(&mut rng, 15), &p.x);
        let b = o.algebra().bracket(&random_element(&mut rng, 15), &p.x);
        let size = geom.metric_g(&a, &a).abs().max(geom.metric_g(&b, &b).abs());
        assert!((geom.omega_i(&a, &b) + geom.omega_i(&b, &a)).abs() < 1e-12 * size);
        assert!((geom.metric_g(&a, &b) - geom.metric_g(&b, &a)).abs() < 1e-12 * size);
        let sum = &a.scale_re(0.7) + &b.scale_re(-1.3);
        let lin = &geom.j_endo(&a).scale_re(0.7) + &geom.j_endo(&b).scale_re(-1.3);
        assert!(geom.j_endo(&sum).distance(&lin) < 1e-12 * lin.norm());
    }
}

#[test]
fn omega_i_with_one_invariant() {
    let m = Sl2Model::new(1.3, 0.5).unwrap();
    let geom = m.geometry(0.8).unwrap();
    let alg = &m.alg;
    let x = geom.x().clone();
    let sx = alg.sigma(&x);
    let jet = *geom.jet();
    let k2 = geom.scale();
    let basis = [m.e(), m.h(), m.e().times_i(), m.h().times_i()];
    for a in &basis {
        for b in &basis {
            let sb = alg.sigma(b);
            let want = 2.0 * jet.rho1 * (alg.inner(a, &sb) * k2).im
                + 2.0 * jet.rho11 * (alg.inner(a, &sx) * alg.inner(&sb, &x) * k2 * k2).im;
            assert!((geom.omega_i(a, b) - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }
}

#[test]
fn gram_scaling_under_dilation() {
    // rho has degree one in X, so the Gram matrix of xi_A = [A, X] does too
    let o = orbit("A:4:2,2");
    let pot = theorem_potential(k_of(&o)).unwrap();
    let alg = o.algebra();
    let mut rng = seeded_rng(8);
    let gens: Vec<Element> = (0..6).map(|_| random_element(&mut rng, alg.dim())).collect();
    let gram_at = |s: f64, t: f64| {
        let p = o.representative(s, t).unwrap();
        let geom = PointGeometry::new(alg, &p.x, &pot).unwrap();
        let xis: Vec<Element> = gens.iter().map(|a| alg.bracket(a, &p.x)).collect();
        gram(&geom, &xis)
    };
    let lambda = 1.7;
    let (g, gl) = (gram_at(1.0, 0.6), gram_at(lambda, 0.6 * lambda));
    assert!((&g * lambda - &gl).amax() < 1e-10 * gl.amax());
}

#[test]
fn fd_value_is_antisymmetric() {
    let o = orbit("A:4:2,2");
    let pot = theorem_potential(k_of(&o)).unwrap();
    let p = o.representative(1.0, 0.6).unwrap();
    let mut rng = seeded_rng(6);
    let dim = o.algebra().dim();
    for _ in 0..20 {
        let (a, b) = (random_element(&mut rng, dim), random_element(&mut rng, dim));
        let fd = FdSettings::default();
        let ab = fd_didrho(o.algebra(), &p.x, &pot, 1.0, &a, &b, fd).unwrap();
        let ba = fd_didrho(o.algebra(), &p.x, &pot, 1.0, &b, &a, fd).unwrap();
        assert!(ab.relative < 1e-6, "{ab:?}");
        assert!((ab.fd + ba.fd).abs() < 1e-6 * ab.fd.abs().max(1.0));
    }
}

#[test]
fn fd_on_the_sl2_model() {
    let m = Sl2Model::new(1.2, 0.0).unwrap();
    let t = 0.9;
    let x = m.point(t);
    let mut rng = seeded_rng(2);
    for _ in 0..5 {
        let (a, b) = (random_element(&mut rng, 3), random_element(&mut rng, 3));
        let r = fd_didrho(&m.alg, &x, &m.potential, m.k * m.k, &a, &b, FdSettings::default()).unwrap();
        assert!(r.relative < 1e-6, "{r:?}");
    }
}

#[test]
fn family_on_sp4_is_closed() {
    let o = orbit("C:2:2,2");
    let pot = product_family_potential(k_of(&o), 1.0).unwrap();
    let p = o.representative(1.0, 0.6).unwrap();
    let mut rng = seeded_rng(5);
    for _ in 0..5 {
        let g: Vec<Element> = (0..3).map(|_| random_element(&mut rng, 10)).collect();
        let r = closedness_residual(o.algebra(), &p.x, &pot, 1.0, [&g[0], &g[1], &g[2]], FdSettings::default())
            .unwrap();
        assert!(r < 1e-5, "{r:e}");
    }
}

#[test]
fn metric_is_i_invariant_for_any_jet() {
    let o = orbit("B:7:3");
    let p = o.representative(0.9, 0.5).unwrap();
    let jet = crate::potentials::PotentialJet {
        rho: 1.0,
        rho1: 0.7,
        rho2: -0.2,
        rho11: 0.05,
        rho12: 0.3,
        rho22: -0.01,
    };
    let geom = PointGeometry::with_jet(o.algebra(), &p.x, jet, 1.0);
    let t = triple_check(&geom, &real_tangent_basis(&p.tangent)).unwrap();
    assert!(t.metric_i < 1e-12, "{t:?}");
    assert!(t.omega_j > 1e-6, "an arbitrary jet should not satisfy the other identities");
}

#[test]
fn g2_residuals_are_scale_invariant() {
    for (s, t) in [(1.0, 1.0), (0.4, 1.3)] {
        let a = g2_pde_residuals(s, t).unwrap();
        let b = g2_pde_residuals(3.0 * s, 3.0 * t).unwrap();
        assert!((a.max_residual() - b.max_residual()).abs() < 1e-12);
        assert!((a.branch_i_witness - b.branch_i_witness).abs() < 1e-12);
    }
}
