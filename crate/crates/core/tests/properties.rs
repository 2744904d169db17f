use std::sync::OnceLock;

use hkpot::geometry::{j_squared_residual, real_tangent_basis, GridSpec};
use hkpot::potentials::{product_family_potential, theorem_potential};
use hkpot::{Complex64, Element, LieAlgebra, Orbit, OrbitId, PointGeometry};
use proptest::prelude::*;

fn sp4() -> &'static Orbit {
    static O: OnceLock<Orbit> = OnceLock::new();
    O.get_or_init(|| Orbit::new("C:2:2,2".parse().unwrap()).unwrap())
}

fn g2() -> &'static LieAlgebra {
    static A: OnceLock<LieAlgebra> = OnceLock::new();
    A.get_or_init(|| LieAlgebra::build("G2".parse().unwrap()).unwrap())
}

fn element(coords: Vec<(f64, f64)>) -> Element {
    Element::from_coords(coords.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn coords(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g2_bracket_is_a_lie_bracket(a in coords(14), b in coords(14), c in coords(14)) {
        let alg = g2();
        let (a, b, c) = (element(a), element(b), element(c));
        let ab = alg.bracket(&a, &b);
        prop_assert!((&ab + &alg.bracket(&b, &a)).norm() < 1e-12);
        let jac = alg.bracket(&a, &alg.bracket(&b, &c))
            + alg.bracket(&b, &alg.bracket(&c, &a))
            + alg.bracket(&c, &alg.bracket(&a, &b));
        prop_assert!(jac.norm() < 1e-11);
        let inv = alg.inner(&ab, &c) - alg.inner(&a, &alg.bracket(&b, &c));
        prop_assert!(inv.norm() < 1e-10);
    }

    #[test]
    fn sigma_is_an_antilinear_involution(a in coords(14), b in coords(14), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let alg = g2();
        let (a, b) = (element(a), element(b));
        let z = Complex64::new(re, im);
        prop_assert!(alg.sigma(&alg.sigma(&a)).distance(&a) < 1e-12);
        let za = a.scale(z);
        prop_assert!(alg.sigma(&za).distance(&alg.sigma(&a).scale(z.conj())) < 1e-12);
        let lhs = alg.sigma(&alg.bracket(&a, &b));
        let rhs = alg.bracket(&alg.sigma(&a), &alg.sigma(&b));
        prop_assert!(lhs.distance(&rhs) < 1e-12);
        prop_assert!(alg.inner(&a, &alg.sigma(&a)).re >= 0.0);
    }

    #[test]
    fn invariants_are_homogeneous(s in 0.1..3.0f64, t in 0.1..3.0f64, l in 0.2..5.0f64) {
        let o = sp4();
        let p = o.representative(s, t).unwrap();
        let q = o.representative(l * s, l * t).unwrap();
        prop_assert!((q.eta1 - l * l * p.eta1).abs() <= 1e-10 * q.eta1);
        prop_assert!((q.eta2 - l.powi(4) * p.eta2).abs() <= 1e-10 * q.eta2);
        let pot = theorem_potential(o.measure_k2().unwrap().sqrt()).unwrap();
        let (a, b) = (pot.value(p.eta1, p.eta2).unwrap(), pot.value(q.eta1, q.eta2).unwrap());
        prop_assert!((b - l * a).abs() <= 1e-10 * b);
    }

    #[test]
    fn sp4_family_squares_to_minus_one(s in 0.2..2.5f64, t in 0.2..2.5f64, c in 0.0..2.0f64) {
        prop_assume!((s - t).abs() > 0.05);
        let o = sp4();
        let pot = product_family_potential(o.measure_k2().unwrap().sqrt(), c).unwrap();
        let p = o.representative(s, t).unwrap();
        let geom = PointGeometry::new(o.algebra(), &p.x, &pot).unwrap();
        let r = j_squared_residual(&geom, &real_tangent_basis(&p.tangent));
        prop_assert!(r < 1e-9, "{}", r);
    }

    #[test]
    fn grid_spec_roundtrip(a in 0.01..1.0f64, w in 0.1..3.0f64, n in 1usize..8, b in 0.01..1.0f64, v in 0.1..3.0f64, m in 1usize..8) {
        let g = GridSpec { s: (a, a + w, n), t: (b, b + v, m) };
        let back: GridSpec = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
        prop_assert!(g.points().iter().all(|(s, t)| (s - t).abs() >= 1e-3));
    }
}

#[test]
fn orbit_ids_roundtrip() {
    for spec in ["A:6", "B:9", "C:3", "D:8", "G2"] {
        for id in OrbitId::all_for(spec.parse().unwrap()) {
            let back: OrbitId = id.to_string().parse().unwrap();
            assert_eq!(back, id);
        }
    }
}
