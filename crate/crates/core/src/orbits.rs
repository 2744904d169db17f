//! Cohomogeneity-two nilpotent orbits: representatives, invariants,
//! tangent spaces, Jordan types and the `so(4)` embedding constant.
//!
//! Every representative has the form `X = s e_+ + t e_-` where `e_+` and
//! `e_-` span commuting, mutually orthogonal `sl(2)` factors of a
//! `sigma`-stable `so(4)` (for G2 the two root vectors do not commute, but
//! the same two-parameter shape is used).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{g2, AlgebraSpec, Element, Family, Field, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Plus,
    Minus,
}

/// Representative shapes, one per row of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `(2^2 1^{m-4})` in `sl(m)`.
    SpecialLinear,
    /// `(2^2 1^{2n-4})` in `sp(2n)`.
    Symplectic,
    /// `(2^4 1^{m-8})` in `so(m)`.
    OrthogonalPairs,
    /// `(3 1^{m-3})` in `so(m)`.
    OrthogonalThree,
    /// The next-to-minimal orbit of G2.
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitId {
    pub algebra: AlgebraSpec,
    /// Jordan type, padded with ones. Empty for G2.
    pub partition: Vec<usize>,
    pub variant: Option<Variant>,
}

fn padded(head: &[usize], total: usize) -> Vec<usize> {
    let mut p = head.to_vec();
    let used: usize = head.iter().sum();
    p.extend(std::iter::repeat(1).take(total.saturating_sub(used)));
    p
}

impl OrbitId {
    pub fn new(algebra: AlgebraSpec, partition: &[usize], variant: Option<Variant>) -> Result<Self> {
        let algebra = AlgebraSpec::new(algebra.family, algebra.m)?;
        let mut partition = partition.to_vec();
        partition.sort_unstable_by(|a, b| b.cmp(a));
        partition.retain(|&p| p > 0);
        if let Some(n) = algebra.matrix_size() {
            let used: usize = partition.iter().sum();
            if used > n {
                return Err(Error::Parameter(format!(
                    "partition {partition:?} does not fit in {n}x{n} matrices"
                )));
            }
            partition = padded(&partition, n);
        } else {
            partition.clear();
        }
        let id = Self {
            algebra,
            partition,
            variant,
        };
        id.shape()?;
        Ok(id)
    }

    /// The G2 next-to-minimal orbit.
    pub fn g2() -> Self {
        Self {
            algebra: AlgebraSpec::g2(),
            partition: Vec::new(),
            variant: None,
        }
    }

    /// Checks admissibility and returns the representative shape.
    pub fn shape(&self) -> Result<Shape> {
        let m = self.algebra.m;
        let bad = || {
            Error::Parameter(format!(
                "{self} is not a cohomogeneity-two orbit of {}",
                self.algebra
            ))
        };
        let needs_variant = |shape| {
            matches!(shape, Shape::OrthogonalPairs)
                && self.algebra.family == Family::D
                && m % 4 == 0
        };
        let shape = match self.algebra.family {
            Family::G2 => Shape::G2,
            Family::A if m >= 4 && self.partition == padded(&[2, 2], m) => Shape::SpecialLinear,
            Family::C if self.partition == padded(&[2, 2], 2 * m) => Shape::Symplectic,
            Family::B | Family::D if m >= 8 && self.partition == padded(&[2, 2, 2, 2], m) => {
                Shape::OrthogonalPairs
            }
            Family::B | Family::D if self.partition == padded(&[3], m) => Shape::OrthogonalThree,
            _ => return Err(bad()),
        };
        match (needs_variant(shape), self.variant) {
            (true, None) => Err(Error::Parameter(format!(
                "{} splits into two orbits in {}; add :+ or :-",
                partition_string(&self.partition),
                self.algebra
            ))),
            (false, Some(_)) => Err(Error::Parameter(format!(
                "{self} takes no +/- variant"
            ))),
            _ => Ok(shape),
        }
    }

    /// Every cohomogeneity-two orbit of the given algebra.
    pub fn all_for(spec: AlgebraSpec) -> Vec<OrbitId> {
        let heads: Vec<(&[usize], Option<Variant>)> = match spec.family {
            Family::G2 => return vec![Self::g2()],
            Family::A | Family::C => vec![(&[2, 2], None)],
            Family::B | Family::D => {
                let mut v: Vec<(&[usize], Option<Variant>)> = vec![(&[3], None)];
                if spec.m >= 8 {
                    if spec.family == Family::D && spec.m % 4 == 0 {
                        v.push((&[2, 2, 2, 2], Some(Variant::Plus)));
                        v.push((&[2, 2, 2, 2], Some(Variant::Minus)));
                    } else {
                        v.push((&[2, 2, 2, 2], None));
                    }
                }
                v
            }
        };
        heads
            .into_iter()
            .filter_map(|(h, v)| OrbitId::new(spec, h, v).ok())
            .collect()
    }
}

fn partition_string(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.algebra.family == Family::G2 {
            return write!(f, "G2");
        }
        write!(f, "{}:{}", self.algebra, partition_string(&self.partition))?;
        match self.variant {
            Some(Variant::Plus) => write!(f, ":+"),
            Some(Variant::Minus) => write!(f, ":-"),
            None => Ok(()),
        }
    }
}

impl FromStr for OrbitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("g2") {
            return Ok(Self::g2());
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::Parse(format!(
                "orbit '{s}' is not FAMILY:m:PARTITION[:+|-] or G2"
            )));
        }
        let algebra: AlgebraSpec = format!("{}:{}", parts[0], parts[1]).parse()?;
        let partition = parts[2]
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad partition part '{p}': {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let variant = match parts.get(3).map(|v| v.trim()) {
            None => None,
            Some("+") => Some(Variant::Plus),
            Some("-") => Some(Variant::Minus),
            Some(v) => return Err(Error::Parse(format!("bad variant '{v}'"))),
        };
        Self::new(algebra, &partition, variant)
    }
}

/// A tangent vector `xi = [A, X]`, optionally remembering `A`.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub value: Element,
    pub generator: Option<Element>,
}

impl TangentVector {
    pub fn from_generator(alg: &LieAlgebra, a: Element, x: &Element) -> Self {
        Self {
            value: alg.bracket(&a, x),
            generator: Some(a),
        }
    }

    pub fn generator(&self) -> Result<&Element> {
        self.generator.as_ref().ok_or(Error::MissingGenerator)
    }

    /// `I xi = i xi`, generated by `i A`.
    pub fn times_i(&self) -> Self {
        Self {
            value: self.value.times_i(),
            generator: self.generator.as_ref().map(Element::times_i),
        }
    }
}

/// `e_+` and `e_-` with `X = s e_+ + t e_-`.
#[derive(Clone, Debug)]
pub struct So4Frame {
    pub e_plus: Element,
    pub e_minus: Element,
}

#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub id: OrbitId,
    pub x: Element,
    pub eta1: f64,
    pub eta2: f64,
    pub params: Option<(f64, f64)>,
    pub tangent: Vec<TangentVector>,
    pub frame: Option<So4Frame>,
}

/// An orbit together with its algebra.
#[derive(Clone, Debug)]
pub struct Orbit {
    id: OrbitId,
    shape: Shape,
    algebra: Arc<LieAlgebra>,
    frame: So4Frame,
}

fn so4_frame(alg: &LieAlgebra, id: &OrbitId, shape: Shape) -> Result<So4Frame> {
    let m = alg.spec().matrix_size().unwrap_or(0);
    let mirror = |i: usize| m - 1 - i;
    let so_unit = |i: usize, j: usize| vec![(i, j, 1), (mirror(j), mirror(i), -1)];
    let (plus, minus): (Vec<(usize, usize, i64)>, Vec<(usize, usize, i64)>) = match shape {
        Shape::G2 => {
            let long = g2::positive_root_index((3, 2)).unwrap();
            let short = g2::positive_root_index((2, 1)).unwrap();
            return Ok(So4Frame {
                e_plus: alg.basis_element(long),
                e_minus: alg.basis_element(short),
            });
        }
        Shape::SpecialLinear => (vec![(0, 1, 1)], vec![(2, 3, 1)]),
        Shape::Symplectic => {
            let n = m / 2;
            (vec![(0, n, 1)], vec![(1, n + 1, 1)])
        }
        Shape::OrthogonalPairs => (so_unit(0, 1), so_unit(2, 3)),
        Shape::OrthogonalThree => {
            let p = if m % 2 == 0 {
                [m / 2 - 2, m / 2 - 1, m / 2, m / 2 + 1]
            } else {
                let c = (m - 1) / 2;
                [c - 2, c - 1, c + 1, c + 2]
            };
            (so_unit(p[0], p[1]), so_unit(p[0], p[2]))
        }
    };
    // The second orbit of a split pair is the conjugate by W, which swaps
    // the first and last basis vectors with a sign and has determinant -1.
    let conj = |v: Vec<(usize, usize, i64)>| -> Vec<(usize, usize, i64)> {
        if id.variant != Some(Variant::Minus) {
            return v;
        }
        let w = |i: usize| {
            if i == 0 {
                (m - 1, -1)
            } else if i == m - 1 {
                (0, -1)
            } else {
                (i, 1)
            }
        };
        v.into_iter()
            .map(|(i, j, c)| {
                let ((a, sa), (b, sb)) = (w(i), w(j));
                (a, b, sa * sb * c)
            })
            .collect()
    };
    Ok(So4Frame {
        e_plus: alg.element_from_entries(&conj(plus))?,
        e_minus: alg.element_from_entries(&conj(minus))?,
    })
}

impl Orbit {
    pub fn new(id: OrbitId) -> Result<Self> {
        let algebra = Arc::new(LieAlgebra::build(id.algebra)?);
        Self::with_algebra(id, algebra)
    }

    pub fn with_algebra(id: OrbitId, algebra: Arc<LieAlgebra>) -> Result<Self> {
        if algebra.spec() != id.algebra {
            return Err(Error::Parameter(format!(
                "orbit {id} does not live in {}",
                algebra.spec()
            )));
        }
        let shape = id.shape()?;
        let frame = so4_frame(&algebra, &id, shape)?;
        let orbit = Self {
            id,
            shape,
            algebra,
            frame,
        };
        if orbit.algebra.spec().is_classical() {
            let x = orbit.point_element(1.0, 0.5);
            let jt = jordan_type(&orbit.algebra, &x)?;
            if jt != orbit.id.partition {
                return Err(Error::Parameter(format!(
                    "representative of {} has Jordan type {jt:?}",
                    orbit.id
                )));
            }
        }
        Ok(orbit)
    }

    pub fn id(&self) -> &OrbitId {
        &self.id
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<LieAlgebra> {
        self.algebra.clone()
    }

    pub fn frame(&self) -> &So4Frame {
        &self.frame
    }

    fn point_element(&self, s: f64, t: f64) -> Element {
        self.frame.e_plus.scale_re(s) + self.frame.e_minus.scale_re(t)
    }

    /// `X = s e_+ + t e_-`. At `t = 0` the point lies in the minimal orbit.
    /// `s = 0` is allowed too.
    pub fn representative(&self, s: f64, t: f64) -> Result<OrbitPoint> {
        if !(s >= 0.0 && t >= 0.0 && s + t > 0.0 && s.is_finite() && t.is_finite()) {
            return Err(Error::Parameter(format!(
                "representative needs s, t >= 0, not both zero, got ({s}, {t})"
            )));
        }
        let x = self.point_element(s, t);
        let (eta1, eta2) = eta_invariants(&self.algebra, &x);
        let tangent = tangent_basis(&self.algebra, &x)?;
        Ok(OrbitPoint {
            id: self.id.clone(),
            x,
            eta1,
            eta2,
            params: Some((s, t)),
            tangent,
            frame: (self.shape != Shape::G2).then(|| self.frame.clone()),
        })
    }

    /// `k^2` with `<.,.>` restricted to the `so(4)` equal to `k^2` times the
    /// pairing of `so(4)`; read off from `<e_+, sigma e_+> = 4 k^2`.
    pub fn measure_k2(&self) -> Result<f64> {
        if self.shape == Shape::G2 {
            return Err(Error::Unsupported(
                "G2 orbit points generate g2 itself, not an so(4)".into(),
            ));
        }
        let e = &self.frame.e_plus;
        Ok(self.algebra.inner(e, &self.algebra.sigma(e)).re / 4.0)
    }

    /// A point conjugate to `p` by a pseudo-random element of the compact
    /// group. The so(4) frame is carried along.
    pub fn random_orbit_point(&self, p: &OrbitPoint, seed: u64) -> Result<OrbitPoint> {
        let alg = &*self.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = alg.compact_spanning_set();
        let mut a = alg.zero();
        for g in &span {
            let c: f64 = rng.gen_range(-1.0..1.0);
            a.axpy(Complex64::new(c, 0.0), g);
        }
        let norm = alg.hermitian_norm(&a);
        if norm > 0.0 {
            a = a.scale_re(1.0 / norm);
        }
        let flow = |e: &Element| alg.adjoint_flow(&a, 1.0, e);
        let x = flow(&p.x);
        let (eta1, eta2) = eta_invariants(alg, &x);
        let tangent = tangent_basis(alg, &x)?;
        Ok(OrbitPoint {
            id: p.id.clone(),
            x,
            eta1,
            eta2,
            params: p.params,
            tangent,
            frame: p.frame.as_ref().map(|f| So4Frame {
                e_plus: flow(&f.e_plus),
                e_minus: flow(&f.e_minus),
            }),
        })
    }
}

/// `(X_+, X_-) = (s e_+, t e_-)`.
pub fn so4_components(p: &OrbitPoint) -> Result<(Element, Element)> {
    match (&p.frame, p.params) {
        (Some(f), Some((s, t))) => Ok((f.e_plus.scale_re(s), f.e_minus.scale_re(t))),
        _ => Err(Error::Unsupported(
            "point was not built as an so(4) representative".into(),
        )),
    }
}

/// `eta1 = <X, sigma X>` and `eta2 = -<Z, Z>` with `Z = [X, sigma X]`.
pub fn eta_invariants(alg: &LieAlgebra, x: &Element) -> (f64, f64) {
    let sx = alg.sigma(x);
    let z = alg.bracket(x, &sx);
    (alg.inner(x, &sx).re, -alg.inner(&z, &z).re)
}

/// Partition from the ranks of powers of `X` in the defining
/// representation.
pub fn jordan_type(alg: &LieAlgebra, x: &Element) -> Result<Vec<usize>> {
    let m = alg
        .to_matrix(x)
        .ok_or_else(|| Error::Unsupported("Jordan type needs a matrix realization".into()))?;
    let n = m.nrows();
    let mut ranks = vec![n];
    let mut pow = DMatrix::<Complex64>::identity(n, n);
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent("matrix powers do not vanish".into()));
        }
        pow = &pow * &m;
        let scale = m.norm().max(1.0).powi(ranks.len() as i32);
        let r = if pow.norm() <= 1e-12 * scale {
            0
        } else {
            linalg::complex_rank(&pow)?
        };
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent(format!("rank sequence stalls at {r}")));
        }
        ranks.push(r);
    }
    // at_least[k] = number of blocks of size >= k + 1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(k + 1).take(c - next));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

/// Whether `ad X` is nilpotent to working precision.
pub fn is_nilpotent(alg: &LieAlgebra, x: &Element) -> bool {
    let ad = alg.ad_matrix(x);
    let scale = ad.norm();
    if scale == 0.0 {
        return true;
    }
    let mut p = ad.clone() / Complex64::new(scale, 0.0);
    for _ in 1..alg.dim() {
        p = &p * &(&ad / Complex64::new(scale, 0.0));
    }
    p.norm() < 1e-9
}

/// Orthonormal basis `xi_k = [A_k, X]` of the tangent space `[g, X]`.
pub fn tangent_basis(alg: &LieAlgebra, x: &Element) -> Result<Vec<TangentVector>> {
    let range = linalg::complex_range(&alg.ad_matrix(x))?;
    Ok(range
        .basis
        .into_iter()
        .zip(range.preimages)
        .map(|(q, p)| TangentVector {
            value: Element::from_coords(q.iter().cloned().collect()),
            // ad X p = q, so [-p, X] = q
            generator: Some(Element::from_coords(p.iter().map(|c| -c).collect())),
        })
        .collect())
}

/// `2 dim_C O - dim_R (G . X)`: the codimension of a generic compact
/// orbit.
pub fn cohomogeneity(alg: &LieAlgebra, x: &Element) -> Result<usize> {
    let orbit_dim = alg.dim() - alg.centralizer_dimension(x, Field::Complex)?;
    let g_orbit_dim = alg.dim() - alg.centralizer_dimension(x, Field::RealCompact)?;
    (2 * orbit_dim)
        .checked_sub(g_orbit_dim)
        .ok_or_else(|| Error::Parameter("compact orbit larger than the complex orbit".into()))
}

/// Max relative error of the formulas `d eta1(xi) = 2 Re <xi, sigma X>` and
/// `d eta2(xi) = -4 Re <xi, [sigma X, [X, sigma X]]>` against central
/// differences along `Ad(exp(tA))`.
pub fn eta_differential_error(alg: &LieAlgebra, x: &Element, a: &Element, h: f64) -> (f64, f64) {
    let xi = alg.bracket(a, x);
    let sx = alg.sigma(x);
    let z = alg.bracket(x, &sx);
    let d1 = 2.0 * alg.inner(&xi, &sx).re;
    let d2 = -4.0 * alg.inner(&xi, &alg.bracket(&sx, &z)).re;
    let diff = |h: f64| {
        let (p1, p2) = eta_invariants(alg, &alg.adjoint_flow(a, h, x));
        let (m1, m2) = eta_invariants(alg, &alg.adjoint_flow(a, -h, x));
        ((p1 - m1) / (2.0 * h), (p2 - m2) / (2.0 * h))
    };
    let (f1, f2) = diff(h);
    let (g1, g2) = diff(h / 2.0);
    // one Richardson step
    let r1 = (4.0 * g1 - f1) / 3.0;
    let r2 = (4.0 * g2 - f2) / 3.0;
    let (e1, e2) = eta_invariants(alg, x);
    let n = xi.norm() / x.norm().max(1e-300);
    (
        (r1 - d1).abs() / (e1 * n).max(1e-300),
        (r2 - d2).abs() / (e2 * n).max(1e-300),
    )
}

/// Tangent vectors at `x` as real column vectors `(Re, Im)`, handy for
/// projections.
#[cfg(test)]
pub(crate) fn stack_real(vectors: &[Element]) -> DMatrix<f64> {
    let dim = vectors.first().map(|v| v.dim()).unwrap_or(0);
    let mut m = DMatrix::zeros(2 * dim, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        for (r, z) in v.coords().iter().enumerate() {
            m[(r, c)] = z.re;
            m[(dim + r, c)] = z.im;
        }
    }
    m
}

/// Residual of the least-squares fit of `v` by the columns of `basis`,
/// relative to `|v|`.
#[cfg(test)]
pub(crate) fn span_residual(basis: &DMatrix<f64>, v: &Element) -> f64 {
    let dim = v.dim();
    let mut b = nalgebra::DVector::zeros(2 * dim);
    for (r, z) in v.coords().iter().enumerate() {
        b[r] = z.re;
        b[dim + r] = z.im;
    }
    let norm = b.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let t = linalg::singular_triplets(basis).expect("svd");
    let sv: Vec<f64> = t.iter().map(|x| x.0).collect();
    let rank = linalg::numerical_rank(&sv).expect("basis with a clear rank");
    let mut r = b;
    for (_, u, _) in &t[..rank] {
        let c = u.dot(&r);
        r -= u * c;
    }
    r.norm() / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(s: &str) -> Orbit {
        Orbit::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let id: OrbitId = "A:5:2,2".parse().unwrap();
        assert_eq!(id.to_string(), "A:5:2,2,1");
        let id: OrbitId = "D:8:2,2,2,2:+".parse().unwrap();
        assert_eq!(id.variant, Some(Variant::Plus));
        assert_eq!("G2".parse::<OrbitId>().unwrap(), OrbitId::g2());
        for bad in ["A:3:2,2", "D:8:2,2,2,2", "B:9:2,2,2,2:+", "A:5:3,1,1", "C:2:2", "X"] {
            assert!(bad.parse::<OrbitId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn jordan_types_of_representatives() {
        let o = orbit("A:5:2,2,1");
        let p = o.representative(1.0, 1.0).unwrap();
        assert_eq!(jordan_type(o.algebra(), &p.x).unwrap(), vec![2, 2, 1]);
        let o = orbit("B:9:3");
        let p = o.representative(1.0, 1.0).unwrap();
        assert_eq!(jordan_type(o.algebra(), &p.x).unwrap(), vec![3, 1, 1, 1, 1, 1, 1]);
        let o = orbit("B:9:2,2,2,2");
        let p = o.representative(1.0, 0.7).unwrap();
        assert_eq!(jordan_type(o.algebra(), &p.x).unwrap(), vec![2, 2, 2, 2, 1]);
        assert_eq!(jordan_type(o.algebra(), &o.algebra().zero()).unwrap(), vec![1; 9]);
    }

    #[test]
    fn not_nilpotent_is_rejected() {
        let o = orbit("A:4:2,2");
        let h = o.algebra().basis_element(0);
        assert!(matches!(jordan_type(o.algebra(), &h), Err(Error::NotNilpotent(_))));
        assert!(!is_nilpotent(o.algebra(), &h));
    }

    #[test]
    fn eta_values() {
        let p = orbit("A:5:2,2,1").representative(1.0, 1.0).unwrap();
        assert!((p.eta1 - 20.0).abs() < 1e-12 && (p.eta2 - 40.0).abs() < 1e-12);
        let p = orbit("B:9:2,2,2,2").representative(1.0, 1.0).unwrap();
        assert!((p.eta1 - 28.0).abs() < 1e-12 && (p.eta2 - 56.0).abs() < 1e-12);
        let p = orbit("G2").representative(0.0, 1.0).unwrap();
        assert!((p.eta1 - 24.0).abs() < 1e-12);
    }

    #[test]
    fn k2_values() {
        for (s, k2) in [("A:5:2,2,1", 2.5), ("B:9:3", 3.5), ("C:2:2,2", 1.5), ("D:8:2,2,2,2:-", 3.0)] {
            assert!((orbit(s).measure_k2().unwrap() - k2).abs() < 1e-12, "{s}");
        }
        assert!(matches!(orbit("G2").measure_k2(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tangent_spaces() {
        let o = orbit("A:4:2,2");
        let p = o.representative(1.0, 0.6).unwrap();
        assert_eq!(p.tangent.len(), 8);
        for v in &p.tangent {
            let a = v.generator().unwrap();
            assert!(o.algebra().bracket(a, &p.x).distance(&v.value) < 1e-10);
        }
        assert!(tangent_basis(o.algebra(), &o.algebra().zero()).unwrap().is_empty());
    }

    #[test]
    fn cohomogeneity_two_and_one() {
        for s in ["A:4:2,2", "C:2:2,2", "B:7:3", "D:8:2,2,2,2:+", "G2"] {
            let o = orbit(s);
            let p = o.representative(1.0, 0.6).unwrap();
            assert_eq!(cohomogeneity(o.algebra(), &p.x).unwrap(), 2, "{s}");
            let p = o.representative(1.0, 0.0).unwrap();
            assert_eq!(cohomogeneity(o.algebra(), &p.x).unwrap(), 1, "{s}");
        }
    }

    #[test]
    fn so4_components_commute() {
        let o = orbit("A:5:2,2,1");
        let p = o.representative(1.3, 0.4).unwrap();
        let (a, b) = so4_components(&p).unwrap();
        let alg = o.algebra();
        assert!(alg.bracket(&a, &b).is_zero());
        assert!(alg.bracket(&a, &alg.sigma(&b)).is_zero());
        assert_eq!(alg.inner(&a, &alg.sigma(&b)).norm(), 0.0);
        assert!((&a + &b).distance(&p.x) == 0.0);
    }

    #[test]
    fn random_points_keep_invariants() {
        let o = orbit("C:2:2,2");
        let p = o.representative(1.0, 0.6).unwrap();
        let q1 = o.random_orbit_point(&p, 7).unwrap();
        let q2 = o.random_orbit_point(&p, 7).unwrap();
        assert_eq!(q1.x, q2.x);
        assert!((q1.eta1 - p.eta1).abs() < 1e-9 * p.eta1);
        assert!((q1.eta2 - p.eta2).abs() < 1e-9 * p.eta2);
        assert_eq!(jordan_type(o.algebra(), &q1.x).unwrap(), p.id.partition);
    }

    #[test]
    fn tangent_generators_at_random_points() {
        for s in ["C:4:2,2", "A:7:2,2", "D:10:3", "G2"] {
            let o = orbit(s);
            let p = o.representative(0.3, 0.725).unwrap();
            for seed in 0..3 {
                let q = o.random_orbit_point(&p, seed).unwrap();
                for v in &q.tangent {
                    let a = v.generator().unwrap();
                    let err = o.algebra().bracket(a, &q.x).distance(&v.value);
                    assert!(err < 1e-10, "{s} seed {seed}: {err:e}");
                }
            }
        }
    }
}
