use super::*;
use crate::algebra::qmat::q;

fn alg(s: &str) -> LieAlgebra {
    LieAlgebra::build(s.parse().unwrap()).unwrap()
}

#[test]
fn dimensions_match_formulas() {
    for (s, d) in [
        ("A:2", 3),
        ("A:5", 24),
        ("B:7", 21),
        ("C:3", 21),
        ("D:8", 28),
        ("G2", 14),
    ] {
        let a = alg(s);
        assert_eq!(a.dim(), d, "{s}");
        assert_eq!(a.spec().dimension(), d, "{s}");
    }
}

#[test]
fn spec_round_trip_and_rejects() {
    for s in ["A:3", "B:9", "C:2", "D:10", "G2"] {
        let spec: AlgebraSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
    for s in ["B:8", "D:7", "A:1", "E:6", "A", "D:4"] {
        assert!(s.parse::<AlgebraSpec>().is_err(), "{s}");
    }
}

#[test]
fn sl2_triple() {
    let a = alg("A:2");
    let h = a.label_index("H1").unwrap();
    let e = a.label_index("E1,2").unwrap();
    let f = a.label_index("E2,1").unwrap();
    assert_eq!(a.basis_bracket(e, f), &[(h, q(1))]);
    assert_eq!(a.basis_bracket(h, e), &[(e, q(2))]);
    assert_eq!(a.basis_bracket(h, f), &[(f, q(-2))]);
}

#[test]
fn killing_is_trace_multiple() {
    let a = alg("A:3");
    let h = a.label_index("H1").unwrap();
    // Killing(H, H) = 2m tr(H^2) with H = diag(1, -1, 0)
    assert_eq!(a.killing_exact(h, h), q(12));
    let e = a.label_index("E1,2").unwrap();
    let f = a.label_index("E2,1").unwrap();
    assert_eq!(a.killing_exact(e, f), q(6));
}

#[test]
fn exact_invariants_hold() {
    for s in ["A:3", "B:5", "C:2", "D:6", "G2"] {
        let r = checks::verify(&alg(s));
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn injected_fault_is_detected() {
    let mut a = alg("A:3");
    a.inject_fault();
    let r = checks::verify(&a);
    assert!(!r.passed());
    assert!(r.jacobi_violations > 0 || r.killing_invariance_violations > 0);
}

#[test]
fn g2_killing_on_root_vectors() {
    let a = alg("G2");
    for &root in &g2::POSITIVE_ROOTS {
        let e = g2::positive_root_index(root).unwrap();
        let f = g2::negative_root_index(root).unwrap();
        let expect = if g2::is_long(root) { 8 } else { 24 };
        assert_eq!(a.killing_exact(e, f), q(expect), "{root:?}");
    }
}

#[test]
fn float_bracket_is_exactly_antisymmetric() {
    let a = alg("C:2");
    let x = Element::from_coords(
        (0..a.dim())
            .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos()))
            .collect(),
    );
    assert!(a.bracket(&x, &x).coords().iter().all(|c| c.norm() == 0.0));
}

#[test]
fn sigma_is_antilinear_and_positive() {
    let a = alg("D:6");
    let x = Element::from_coords(
        (0..a.dim())
            .map(|k| Complex64::new(1.0 + k as f64, -0.5 * k as f64))
            .collect(),
    );
    let s = a.sigma(&x.times_i());
    let expect = a.sigma(&x).scale(Complex64::new(0.0, -1.0));
    assert!(s.distance(&expect) < 1e-12);
    let n = a.inner(&x, &a.sigma(&x));
    assert!(n.re > 0.0 && n.im.abs() < 1e-9 * n.re);
}

#[test]
fn adjoint_flow_matches_ad_exponential() {
    let a = alg("A:3");
    let g = alg("G2");
    for alg in [&a, &g] {
        let gen = Element::from_coords(
            (0..alg.dim())
                .map(|k| Complex64::new(0.1 * (k as f64).cos(), 0.05 * k as f64 % 0.3))
                .collect(),
        );
        let x = alg.basis_element(alg.dim() - 1);
        let y = alg.adjoint_flow(&gen, 0.7, &x);
        let ad = alg.ad_matrix(&gen) * Complex64::new(0.7, 0.0);
        let v = nalgebra::DVector::from_column_slice(x.coords());
        let z = ad.exp() * v;
        let z = Element::from_coords(z.iter().cloned().collect());
        assert!(y.distance(&z) < 1e-10, "{}", y.distance(&z));
    }
}

#[test]
fn matrix_round_trip() {
    let a = alg("C:2");
    let x = Element::from_coords(
        (0..a.dim()).map(|k| Complex64::new(k as f64, 1.0)).collect(),
    );
    let m = a.to_matrix(&x).unwrap();
    assert!(a.from_matrix(&m).unwrap().distance(&x) < 1e-12);
    assert!(alg("G2").to_matrix(&x).is_none());
}

#[test]
fn centralizer_of_regular_semisimple() {
    let a = alg("A:3");
    let h = a.basis_element(0).scale_re(1.0) + a.basis_element(1).scale_re(0.3);
    assert_eq!(a.centralizer_dimension(&h, Field::Complex).unwrap(), 2);
    assert_eq!(a.centralizer_dimension(&h, Field::RealCompact).unwrap(), 2);
}

#[test]
fn dimension_mismatch_is_reported() {
    let a = alg("A:2");
    let x = Element::zero(5);
    assert!(matches!(
        a.try_bracket(&x, &x),
        Err(Error::DimensionMismatch { expected: 3, got: 5 })
    ));
}
