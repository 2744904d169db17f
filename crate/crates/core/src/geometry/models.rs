//! The `sl(2)` and `so(4)` models and the G2 equations in `(s, t)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gram, real_tangent_basis, PointGeometry};
use crate::algebra::{AlgebraSpec, Element, Family, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::orbits::{tangent_basis, OrbitPoint};
use crate::potentials::{sl2_family_potential, Potential};

/// `sl(2)` with the pairing `k^2 <.,.>` and the family potential
/// `rho' = sqrt(k^2 eta + c) / eta`.
#[derive(Clone, Debug)]
pub struct Sl2Model {
    pub alg: LieAlgebra,
    pub k: f64,
    pub c: f64,
    pub potential: Potential,
    e: usize,
    h: usize,
}

impl Sl2Model {
    pub fn new(k: f64, c: f64) -> Result<Self> {
        let alg = LieAlgebra::build(AlgebraSpec::new(Family::A, 2)?)?;
        let potential = sl2_family_potential(k, c)?;
        let e = alg.label_index("E1,2").expect("sl(2) basis");
        let h = alg.label_index("H1").expect("sl(2) basis");
        Ok(Self {
            alg,
            k,
            c,
            potential,
            e,
            h,
        })
    }

    pub fn e(&self) -> Element {
        self.alg.basis_element(self.e)
    }

    pub fn h(&self) -> Element {
        self.alg.basis_element(self.h)
    }

    pub fn f(&self) -> Element {
        -self.alg.sigma(&self.e())
    }

    /// `X = t e`.
    pub fn point(&self, t: f64) -> Element {
        self.e().scale_re(t)
    }

    pub fn geometry(&self, t: f64) -> Result<PointGeometry<'_>> {
        PointGeometry::with_scale(&self.alg, &self.point(t), &self.potential, self.k * self.k)
    }

    /// The closed form of the metric for this family, in terms of the
    /// unscaled pairing:
    /// `(2k^4 / eta) Re(rho' (<a, sb><X, sX> - <a, sX><X, sb>) + k^2/(2 eta rho') <a, sX><X, sb>)`.
    pub fn metric_closed_form(&self, geom: &PointGeometry, a: &Element, b: &Element) -> f64 {
        let alg = &self.alg;
        let x = geom.x();
        let sx = alg.sigma(x);
        let sb = alg.sigma(b);
        let (eta, _) = geom.eta();
        let d1 = geom.jet().rho1;
        let k2 = self.k * self.k;
        let a_sb = alg.inner(a, &sb);
        let x_sx = alg.inner(x, &sx);
        let a_sx = alg.inner(a, &sx);
        let x_sb = alg.inner(x, &sb);
        let inner = (a_sb * x_sx - a_sx * x_sb) * d1 + a_sx * x_sb * (k2 / (2.0 * eta * d1));
        2.0 * k2 * k2 / eta * inner.re
    }

    /// Solves `g(Y, xi) = d rho(xi)` on the tangent space at `t e` and
    /// compares `Y` with `lambda X`.
    pub fn moment_vector_check(&self, t: f64) -> Result<MomentCheck> {
        if !(t > 0.0) {
            return Err(Error::Parameter(format!("t must be positive, got {t}")));
        }
        let geom = self.geometry(t)?;
        let x = geom.x().clone();
        let basis: Vec<Element> = real_tangent_basis(&tangent_basis(&self.alg, &x)?)
            .into_iter()
            .map(|v| v.value)
            .collect();
        let g = gram(&geom, &basis);
        let g = (&g + g.transpose()) * 0.5;
        let rhs = DVector::from_iterator(basis.len(), basis.iter().map(|v| geom.d_rho(v)));
        let y = linalg::solve(g, rhs).ok_or(Error::SingularGram)?;
        let mut yv = self.alg.zero();
        for (c, v) in y.iter().zip(&basis) {
            yv.axpy(Complex64::new(*c, 0.0), v);
        }
        let sx = self.alg.sigma(&x);
        let lambda = self.alg.inner(&yv, &sx).re / self.alg.inner(&x, &sx).re;
        let residual = (&yv - &x.scale_re(lambda)).norm() / x.norm();
        let (eta, _) = geom.eta();
        Ok(MomentCheck {
            t,
            eta,
            lambda,
            expected: 2.0 + 2.0 * self.c / (self.k * self.k * eta),
            residual,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentCheck {
    pub t: f64,
    pub eta: f64,
    pub lambda: f64,
    pub expected: f64,
    /// `|Y - lambda X| / |X|`.
    pub residual: f64,
}

/// Residuals of the G2 equations in `(s, t)` for `rho = 8 sqrt(s^2 + 9t^2)`,
/// each relative to the size of its terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct G2Pde {
    pub first_order: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `|rho_t - 9 (t/s) rho_s|` relative to `|rho_t|`.
    pub branch_ii: f64,
    /// `|-rho_s^2 / 64 - 1|`: what the first-order equation becomes on the
    /// other branch `rho_t = -2 (s/t) rho_s`. Never below one for real `rho_s`.
    pub branch_i_witness: f64,
}

impl G2Pde {
    pub fn max_residual(&self) -> f64 {
        [self.first_order, self.a, self.b, self.c, self.branch_ii]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `(rho_s, rho_t, rho_ss, rho_st, rho_tt)` of `8 sqrt(s^2 + 9t^2)`.
pub fn g2_st_jet(s: f64, t: f64) -> [f64; 5] {
    let r = (s * s + 9.0 * t * t).sqrt();
    let r3 = r * r * r;
    [
        8.0 * s / r,
        72.0 * t / r,
        72.0 * t * t / r3,
        -72.0 * s * t / r3,
        72.0 * s * s / r3,
    ]
}

pub fn g2_pde_residuals(s: f64, t: f64) -> Result<G2Pde> {
    if !(s > 0.0 && t > 0.0) {
        return Err(Error::Parameter(format!("need s, t > 0, got ({s}, {t})")));
    }
    let [rs, rt, rss, rst, rtt] = g2_st_jet(s, t);
    let rel = |terms: &[f64], rhs: f64| {
        let lhs: f64 = terms.iter().sum();
        let size = terms.iter().map(|v| v.abs()).fold(rhs.abs(), f64::max);
        (lhs - rhs).abs() / size.max(1e-300)
    };
    let first_order = rel(&[rs * (s * rs + t * rt) / (64.0 * s)], 1.0);
    let a = rel(
        &[
            s * (2.0 * s * rs + t * rt) * rss,
            t * (t * rt + 3.0 * s * rs) * rst,
            t * t * rs * rtt,
            2.0 * (t * rt + s * rs) * rs,
        ],
        128.0 * s,
    );
    let b = rel(
        &[
            9.0 * s * rs * rss,
            (9.0 * t * rs + s * rt) * rst,
            t * rt * rtt,
            9.0 * rs * rs,
            rt * rt,
        ],
        576.0,
    );
    let c = rel(
        &[
            3.0 * s * t * (9.0 * t * rs + s * rt) * rss,
            -s * t * (s * rt - 3.0 * t * rs) * rtt,
            (3.0 * t * (s * s + 9.0 * t * t) * rs + s * (3.0 * t * t - s * s) * rt) * rst,
            -(s * rt - 9.0 * t * rs) * (s * rt + 3.0 * t * rs),
        ],
        0.0,
    );
    Ok(G2Pde {
        first_order,
        a,
        b,
        c,
        branch_ii: (rt - 9.0 * t / s * rs).abs() / rt.abs(),
        branch_i_witness: (-rs * rs / 64.0 - 1.0).abs(),
    })
}

/// `span{e, f, h}` of the `sl(2)` through `e` with `f = -sigma e`.
fn sl2_span(alg: &LieAlgebra, e: &Element) -> [Element; 3] {
    let f = -alg.sigma(e);
    let h = alg.bracket(e, &f);
    [e.clone(), f, h]
}

/// Hermitian-orthogonal projection onto the span of mutually orthogonal
/// vectors.
fn project(alg: &LieAlgebra, v: &Element, onto: &[Element]) -> Element {
    let mut out = alg.zero();
    for b in onto {
        let sb = alg.sigma(b);
        let c = alg.inner(v, &sb) / alg.inner(b, &sb).re;
        out.axpy(c, b);
    }
    out
}

/// How far `J` mixes the two `sl(2)` factors of the `so(4)` through a
/// representative: the largest `|P_-(J xi)| / |J xi|` for `xi` tangent
/// to the `sl(2)_+` orbit factor, and symmetrically.
pub fn so4_cross_block(alg: &LieAlgebra, point: &OrbitPoint, pot: &Potential) -> Result<f64> {
    let frame = point
        .frame
        .as_ref()
        .ok_or_else(|| Error::Unsupported("point has no so(4) frame".into()))?;
    let geom = PointGeometry::new(alg, &point.x, pot)?;
    let plus = sl2_span(alg, &frame.e_plus);
    let minus = sl2_span(alg, &frame.e_minus);
    let mut worst = 0.0_f64;
    for (own, other) in [(&plus, &minus), (&minus, &plus)] {
        for gen in own.iter() {
            for g in [gen.clone(), gen.times_i()] {
                let xi = alg.bracket(&g, &point.x);
                if xi.norm() < 1e-12 {
                    continue;
                }
                let jxi = geom.j_endo(&xi);
                let cross = project(alg, &jxi, other.as_slice());
                worst = worst.max(cross.norm() / jxi.norm());
            }
        }
    }
    Ok(worst)
}

/// Gram matrix of the model metric against its closed form, for tests and
/// the self-test: largest entry difference relative to the largest entry.
pub fn sl2_metric_discrepancy(model: &Sl2Model, t: f64) -> Result<f64> {
    let geom = model.geometry(t)?;
    let basis: Vec<Element> = real_tangent_basis(&tangent_basis(&model.alg, geom.x())?)
        .into_iter()
        .map(|v| v.value)
        .collect();
    let g = gram(&geom, &basis);
    let closed = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        model.metric_closed_form(&geom, &basis[i], &basis[j])
    });
    Ok((&g - &closed).amax() / g.amax())
}
