//! Kähler form, metric and the endomorphism `J` induced by a potential
//! `rho(eta1, eta2)`, and the residual checks built on them.
//!
//! With `Z = [X, sigma X]`, `W1 = [sigma X, Z]`, `W2 = -[X, Z]` and
//! `V = [X, W1]`, put
//!
//! ```text
//! T(a, b) = 2 rho1 <a, sigma b>
//!         - 4 rho2 <a, [sigma b, Z] + [sigma X, [X, sigma b]]>
//!         + 2 rho11 <a, sigma X> <sigma b, X>
//!         - 4 rho12 (<a, W1> <sigma b, X> + <a, sigma X> <sigma b, W2>)
//!         + 8 rho22 <a, W1> <sigma b, W2>
//! ```
//!
//! Then `omega_I = Im T` and `g = Re T`. The pairing may carry a constant
//! factor (`scale`), in which case `eta1`, `eta2` and every pairing above
//! use the scaled form.

pub mod models;
pub mod suite;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
pub use crate::orbits::TangentVector;
use crate::potentials::{Potential, PotentialJet};

pub use suite::{GeometryReport, GridSpec, SuiteConfig, Verdict};

/// Everything about a point `X` that the tensor formulas need.
#[derive(Clone, Debug)]
pub struct PointGeometry<'a> {
    alg: &'a LieAlgebra,
    scale: f64,
    x: Element,
    sx: Element,
    z: Element,
    w1: Element,
    w2: Element,
    v: Element,
    eta1: f64,
    eta2: f64,
    jet: PotentialJet,
}

/// Per-vector data reused across many evaluations of `T(., b)`.
#[derive(Clone, Debug)]
pub struct Prepared {
    sb: Element,
    q: Element,
    sb_x: Complex64,
    sb_w2: Complex64,
}

impl<'a> PointGeometry<'a> {
    pub fn new(alg: &'a LieAlgebra, x: &Element, pot: &Potential) -> Result<Self> {
        Self::with_scale(alg, x, pot, 1.0)
    }

    /// Uses the pairing `scale * <.,.>`.
    pub fn with_scale(alg: &'a LieAlgebra, x: &Element, pot: &Potential, scale: f64) -> Result<Self> {
        let mut g = Self::with_jet(alg, x, PotentialJet::default(), scale);
        g.jet = pot.jet(g.eta1, g.eta2)?;
        Ok(g)
    }

    pub fn with_jet(alg: &'a LieAlgebra, x: &Element, jet: PotentialJet, scale: f64) -> Self {
        let sx = alg.sigma(x);
        let z = alg.bracket(x, &sx);
        let w1 = alg.bracket(&sx, &z);
        let w2 = -alg.bracket(x, &z);
        let v = alg.bracket(x, &w1);
        let eta1 = scale * alg.inner(x, &sx).re;
        let eta2 = -scale * alg.inner(&z, &z).re;
        Self {
            alg,
            scale,
            x: x.clone(),
            sx,
            z,
            w1,
            w2,
            v,
            eta1,
            eta2,
            jet,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    pub fn x(&self) -> &Element {
        &self.x
    }

    pub fn eta(&self) -> (f64, f64) {
        (self.eta1, self.eta2)
    }

    pub fn jet(&self) -> &PotentialJet {
        &self.jet
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn pair(&self, a: &Element, b: &Element) -> Complex64 {
        self.alg.inner(a, b) * self.scale
    }

    /// `omega_c(xi_A, xi_B) = -<xi_A, B>`; needs the generator `B` of the
    /// second argument.
    pub fn omega_c(&self, xi_a: &Element, b: &Element) -> Complex64 {
        -self.pair(xi_a, b)
    }

    /// `omega_c(xi_A, xi_B) = <X, [A, B]>` from both generators.
    pub fn omega_c_generators(&self, a: &Element, b: &Element) -> Complex64 {
        self.pair(&self.x, &self.alg.bracket(a, b))
    }

    /// `omega_c(xi, zeta)` for tangent vectors; `zeta` must carry its
    /// generator.
    pub fn omega_c_tangent(&self, xi: &Element, zeta: &TangentVector) -> Result<Complex64> {
        Ok(self.omega_c(xi, zeta.generator()?))
    }

    pub fn prepare(&self, b: &Element) -> Prepared {
        let alg = self.alg;
        let sb = alg.sigma(b);
        let q = alg.bracket(&sb, &self.z) + alg.bracket(&self.sx, &alg.bracket(&self.x, &sb));
        let sb_x = self.pair(&sb, &self.x);
        let sb_w2 = self.pair(&sb, &self.w2);
        Prepared { sb, q, sb_x, sb_w2 }
    }

    pub fn t_prepared(&self, a: &Element, b: &Prepared) -> Complex64 {
        let j = &self.jet;
        let a_sb = self.pair(a, &b.sb);
        let a_q = self.pair(a, &b.q);
        let a_sx = self.pair(a, &self.sx);
        let a_w1 = self.pair(a, &self.w1);
        a_sb * (2.0 * j.rho1) - a_q * (4.0 * j.rho2) + a_sx * b.sb_x * (2.0 * j.rho11)
            - (a_w1 * b.sb_x + a_sx * b.sb_w2) * (4.0 * j.rho12)
            + a_w1 * b.sb_w2 * (8.0 * j.rho22)
    }

    pub fn t_form(&self, a: &Element, b: &Element) -> Complex64 {
        self.t_prepared(a, &self.prepare(b))
    }

    /// Kähler form of the complex structure `I`, antisymmetrised so that
    /// `omega_i(a, a)` is exactly zero.
    pub fn omega_i(&self, a: &Element, b: &Element) -> f64 {
        0.5 * (self.t_form(a, b).im - self.t_form(b, a).im)
    }

    pub fn metric_g(&self, a: &Element, b: &Element) -> f64 {
        self.t_form(a, b).re
    }

    /// The endomorphism `J` with `g(xi, zeta) = Re omega_c(J xi, zeta)`.
    pub fn j_endo(&self, a: &Element) -> Element {
        let alg = self.alg;
        let j = &self.jet;
        let x = &self.x;
        let sa = alg.sigma(a);
        let x_sa = alg.bracket(x, &sa);
        let t1 = alg.bracket(x, &alg.bracket(&self.sx, &x_sa));
        let t2 = alg.bracket(x, &alg.bracket(x, &alg.bracket(&self.sx, &sa)));
        let sa_x = self.pair(&sa, x);
        let sa_w2 = self.pair(&sa, &self.w2);
        let mut out = x_sa.scale_re(-2.0 * j.rho1);
        out.axpy(Complex64::new(8.0 * j.rho2, 0.0), &t1);
        out.axpy(Complex64::new(-4.0 * j.rho2, 0.0), &t2);
        out.axpy(sa_x * (-2.0 * j.rho11), &self.z);
        out.axpy(sa_w2 * (4.0 * j.rho12), &self.z);
        out.axpy(sa_x * (4.0 * j.rho12), &self.v);
        out.axpy(sa_w2 * (-8.0 * j.rho22), &self.v);
        out
    }

    /// `d eta1(v) = 2 Re <v, sigma X>`.
    pub fn d_eta1(&self, v: &Element) -> f64 {
        2.0 * self.pair(v, &self.sx).re
    }

    /// `d eta2(v) = -2 Re <[v, sigma X] + [X, sigma v], Z>`.
    pub fn d_eta2(&self, v: &Element) -> f64 {
        let alg = self.alg;
        let dz = alg.bracket(v, &self.sx) + alg.bracket(&self.x, &alg.sigma(v));
        -2.0 * self.pair(&dz, &self.z).re
    }

    pub fn d_rho(&self, v: &Element) -> f64 {
        self.jet.rho1 * self.d_eta1(v) + self.jet.rho2 * self.d_eta2(v)
    }

    /// `(I d rho)(v) = -d rho(I v)`.
    pub fn i_d_rho(&self, v: &Element) -> f64 {
        -self.d_rho(&v.times_i())
    }
}

/// `{xi_k, I xi_k}` from a complex tangent basis.
pub fn real_tangent_basis(tangent: &[TangentVector]) -> Vec<TangentVector> {
    tangent
        .iter()
        .flat_map(|t| [t.clone(), t.times_i()])
        .collect()
}

/// `max |J(J v) + v| / |v|` over the given vectors.
pub fn j_squared_residual(geom: &PointGeometry, basis: &[TangentVector]) -> f64 {
    basis
        .iter()
        .map(|v| {
            let jj = geom.j_endo(&geom.j_endo(&v.value));
            (&jj + &v.value).norm() / v.value.norm()
        })
        .fold(0.0, f64::max)
}

/// Gram matrix `g(v_i, v_j)` (not symmetrised).
pub fn gram(geom: &PointGeometry, basis: &[Element]) -> DMatrix<f64> {
    let prepared: Vec<Prepared> = basis.iter().map(|b| geom.prepare(b)).collect();
    DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        geom.t_prepared(&basis[i], &prepared[j]).re
    })
}

#[derive(Clone, Copy, Debug)]
pub struct Positivity {
    pub min_eigenvalue: f64,
    /// `max |G_ij - G_ji| / max |G_ij|`.
    pub asymmetry: f64,
}

pub fn metric_positivity(geom: &PointGeometry, basis: &[TangentVector]) -> Positivity {
    let vals: Vec<Element> = basis.iter().map(|v| v.value.clone()).collect();
    let g = gram(geom, &vals);
    let scale = g.amax().max(1e-300);
    let asymmetry = linalg::asymmetry(&g) / scale;
    let sym = (&g + g.transpose()) * 0.5;
    Positivity {
        min_eigenvalue: linalg::symmetric_eigenvalues(&sym)[0],
        asymmetry,
    }
}

/// Residuals of the quaternionic identities, each relative to the size of
/// the Gram matrix (or of `J v` for the anticommutator).
#[derive(Clone, Copy, Debug, Default)]
pub struct TripleResiduals {
    /// `I J + J I = 0`.
    pub anticommutator: f64,
    /// `g(I xi, I zeta) = g(xi, zeta)`.
    pub metric_i: f64,
    /// `g(J xi, J zeta) = g(xi, zeta)`.
    pub metric_j: f64,
    /// `Re omega_c(xi, zeta) = g(xi, J zeta)`.
    pub omega_j: f64,
    /// `Im omega_c(xi, zeta) = g(xi, I J zeta)`.
    pub omega_k: f64,
    /// Signed discrepancies of largest size for the last two identities.
    pub omega_j_signed: f64,
    pub omega_k_signed: f64,
}

fn signed_max(acc: (f64, f64), v: f64) -> (f64, f64) {
    if v.abs() > acc.0 {
        (v.abs(), v)
    } else {
        acc
    }
}

pub fn triple_check(geom: &PointGeometry, basis: &[TangentVector]) -> Result<TripleResiduals> {
    let vals: Vec<Element> = basis.iter().map(|v| v.value.clone()).collect();
    let jv: Vec<Element> = vals.iter().map(|v| geom.j_endo(v)).collect();
    let ijv: Vec<Element> = jv.iter().map(Element::times_i).collect();
    let iv: Vec<Element> = vals.iter().map(Element::times_i).collect();

    let anticommutator = vals
        .iter()
        .zip(&jv)
        .map(|(v, j)| {
            let jiv = geom.j_endo(&v.times_i());
            (&jiv + &j.times_i()).norm() / j.norm().max(1e-300)
        })
        .fold(0.0, f64::max);

    let g = gram(geom, &vals);
    let scale = g.amax().max(1e-300);
    let gi = gram(geom, &iv);
    let gj = gram(geom, &jv);
    let metric_i = (&gi - &g).amax() / scale;
    let metric_j = (&gj - &g).amax() / scale;

    let prep_j: Vec<Prepared> = jv.iter().map(|v| geom.prepare(v)).collect();
    let prep_ij: Vec<Prepared> = ijv.iter().map(|v| geom.prepare(v)).collect();
    let mut oj = (0.0, 0.0);
    let mut ok = (0.0, 0.0);
    for xi in &vals {
        for (b, zeta) in basis.iter().enumerate() {
            let w = geom.omega_c_tangent(xi, zeta)?;
            let g_j = geom.t_prepared(xi, &prep_j[b]).re;
            let g_ij = geom.t_prepared(xi, &prep_ij[b]).re;
            oj = signed_max(oj, (w.re - g_j) / scale);
            ok = signed_max(ok, (w.im - g_ij) / scale);
        }
    }
    Ok(TripleResiduals {
        anticommutator,
        metric_i,
        metric_j,
        omega_j: oj.0,
        omega_k: ok.0,
        omega_j_signed: oj.1,
        omega_k_signed: ok.1,
    })
}

/// Settings for finite-difference derivatives along adjoint flows.
#[derive(Clone, Copy, Debug)]
pub struct FdSettings {
    pub step: f64,
}

impl Default for FdSettings {
    fn default() -> Self {
        Self { step: 1e-4 }
    }
}

/// Derivative of `f(Ad(exp(tA)) X)` at `t = 0`: central differences at
/// `h` and `h / 2` combined by one Richardson step. Returns the value and
/// the difference between the two estimates.
pub fn flow_derivative<F>(
    alg: &LieAlgebra,
    x: &Element,
    a: &Element,
    h: f64,
    f: F,
) -> Result<(f64, f64)>
where
    F: Fn(&Element) -> Result<f64>,
{
    if !(h > 1e-12) {
        return Err(Error::StepUnderflow(h));
    }
    let central = |h: f64| -> Result<f64> {
        let p = f(&alg.adjoint_flow(a, h, x))?;
        let m = f(&alg.adjoint_flow(a, -h, x))?;
        Ok((p - m) / (2.0 * h))
    };
    let d1 = central(h)?;
    let d2 = central(h / 2.0)?;
    Ok(((4.0 * d2 - d1) / 3.0, (d2 - d1).abs()))
}

/// `-1/2 d(I d rho)(xi_A, xi_B)` by finite differences, against the
/// formula `omega_I(xi_A, xi_B)`.
#[derive(Clone, Copy, Debug)]
pub struct DIdRho {
    pub fd: f64,
    pub formula: f64,
    pub error_estimate: f64,
    /// `|fd - formula| / (|xi_A|_g |xi_B|_g)`.
    pub relative: f64,
}

pub fn fd_didrho(
    alg: &LieAlgebra,
    x: &Element,
    pot: &Potential,
    scale: f64,
    a: &Element,
    b: &Element,
    fd: FdSettings,
) -> Result<DIdRho> {
    let alpha = |gen: &Element, y: &Element| -> Result<f64> {
        let g = PointGeometry::with_scale(alg, y, pot, scale)?;
        Ok(g.i_d_rho(&alg.bracket(gen, y)))
    };
    let (da_b, ea) = flow_derivative(alg, x, a, fd.step, |y| alpha(b, y))?;
    let (db_a, eb) = flow_derivative(alg, x, b, fd.step, |y| alpha(a, y))?;
    let here = PointGeometry::with_scale(alg, x, pot, scale)?;
    let ab = alg.bracket(a, b);
    let bracket_field = alg.bracket(&(-&ab), x);
    let d = da_b - db_a - here.i_d_rho(&bracket_field);
    let value = -0.5 * d;
    let xi_a = alg.bracket(a, x);
    let xi_b = alg.bracket(b, x);
    let formula = here.omega_i(&xi_a, &xi_b);
    let norm = (here.metric_g(&xi_a, &xi_a).abs() * here.metric_g(&xi_b, &xi_b).abs()).sqrt();
    Ok(DIdRho {
        fd: value,
        formula,
        error_estimate: 0.5 * (ea + eb),
        relative: (value - formula).abs() / norm.max(1e-300),
    })
}

/// `d omega_I(xi_A, xi_B, xi_C)` from the invariant formula with
/// finite-difference directional derivatives and exact brackets
/// `[xi_A, xi_B] = xi_{-[A, B]}`, divided by the product of the Hermitian
/// norms of the three vectors.
pub fn closedness_residual(
    alg: &LieAlgebra,
    x: &Element,
    pot: &Potential,
    scale: f64,
    gens: [&Element; 3],
    fd: FdSettings,
) -> Result<f64> {
    let [a, b, c] = gens;
    let omega = |u: &Element, v: &Element, y: &Element| -> Result<f64> {
        let g = PointGeometry::with_scale(alg, y, pot, scale)?;
        Ok(g.omega_i(&alg.bracket(u, y), &alg.bracket(v, y)))
    };
    let here = PointGeometry::with_scale(alg, x, pot, scale)?;
    let field = |u: &Element, v: &Element| alg.bracket(&(-&alg.bracket(u, v)), x);
    let xi = |u: &Element| alg.bracket(u, x);
    let t1 = flow_derivative(alg, x, a, fd.step, |y| omega(b, c, y))?.0;
    let t2 = -flow_derivative(alg, x, b, fd.step, |y| omega(a, c, y))?.0;
    let t3 = flow_derivative(alg, x, c, fd.step, |y| omega(a, b, y))?.0;
    let t4 = -here.omega_i(&field(a, b), &xi(c));
    let t5 = here.omega_i(&field(a, c), &xi(b));
    let t6 = -here.omega_i(&field(b, c), &xi(a));
    let d = t1 + t2 + t3 + t4 + t5 + t6;
    let norms: f64 = [a, b, c]
        .iter()
        .map(|g| alg.hermitian_norm(&xi(g)) * scale.sqrt())
        .product();
    Ok(d.abs() / norms.max(1e-300))
}

/// A pseudo-random element with coordinates uniform in the unit square,
/// normalised to unit coordinate norm.
pub fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Element {
    let coords: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let e = Element::from_coords(coords);
    let n = e.norm();
    e.scale_re(1.0 / n)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests;
