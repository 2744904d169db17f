//! Complex simple Lie algebras with exact structure constants.
//!
//! An algebra is stored as a basis `b_1..b_d` with rational structure
//! constants `[b_i, b_j] = sum_k c_ij^k b_k`, the exact Killing matrix
//! `K_ij = tr(ad b_i ad b_j)`, and a real structure
//! `sigma(x) = S conj(x)` whose fixed points form the compact real form.
//! Numerical work uses `Complex64` coordinates on top of that data.

mod classical;
mod element;
pub mod g2;
pub(crate) mod qmat;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use element::Element;
pub use qmat::Q;

use crate::error::{Error, Result};
use crate::linalg;
use qmat::QMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

/// Which algebra to build. `m` is the matrix size for `A` (`sl(m)`) and
/// `B`/`D` (`so(m)`), half the matrix size for `C` (`sp(2m)`), and unused
/// for `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub m: usize,
}

impl AlgebraSpec {
    pub fn new(family: Family, m: usize) -> Result<Self> {
        let ok = match family {
            Family::A => m >= 2,
            Family::B => m >= 5 && m % 2 == 1,
            Family::D => m >= 6 && m % 2 == 0,
            Family::C => m >= 2,
            Family::G2 => true,
        };
        if !ok {
            return Err(Error::Parameter(format!(
                "no algebra of type {family:?} with m = {m}"
            )));
        }
        Ok(Self {
            family,
            m: if family == Family::G2 { 0 } else { m },
        })
    }

    pub fn g2() -> Self {
        Self {
            family: Family::G2,
            m: 0,
        }
    }

    /// `so(m)` for either orthogonal family.
    pub fn orthogonal(m: usize) -> Result<Self> {
        Self::new(if m % 2 == 1 { Family::B } else { Family::D }, m)
    }

    pub fn is_classical(&self) -> bool {
        self.family != Family::G2
    }

    /// Size of the defining matrices, if classical.
    pub fn matrix_size(&self) -> Option<usize> {
        match self.family {
            Family::A | Family::B | Family::D => Some(self.m),
            Family::C => Some(2 * self.m),
            Family::G2 => None,
        }
    }

    pub fn dimension(&self) -> usize {
        let m = self.m;
        match self.family {
            Family::A => m * m - 1,
            Family::B | Family::D => m * (m - 1) / 2,
            Family::C => m * (2 * m + 1),
            Family::G2 => 14,
        }
    }

    /// `c` with `Killing(x, y) = c tr(xy)` in the defining representation.
    pub fn killing_trace_factor(&self) -> Option<i64> {
        let m = self.m as i64;
        match self.family {
            Family::A => Some(2 * m),
            Family::B | Family::D => Some(m - 2),
            Family::C => Some(2 * m + 2),
            Family::G2 => None,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G2 => write!(f, "G2"),
            fam => write!(f, "{fam:?}:{}", self.m),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("g2") {
            return Ok(Self::g2());
        }
        let (fam, m) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("algebra spec '{s}' is not FAMILY:m or G2")))?;
        let family = match fam.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            other => return Err(Error::Parse(format!("unknown family '{other}'"))),
        };
        let m = m
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad size in '{s}': {e}")))?;
        Self::new(family, m)
    }
}

/// Coefficient field for centralizer computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    /// Restrict to the compact real form `{a : sigma(a) = a}`.
    RealCompact,
    Complex,
}

/// Defining matrix representation of a classical algebra.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    size: usize,
    basis: Vec<QMatrix>,
    basis_f: Vec<Vec<(usize, f64)>>,
    readout: Vec<Vec<(usize, f64)>>,
    readout_q: Vec<Vec<(usize, Q)>>,
    form: QMatrix,
}

impl MatrixRealization {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Bilinear form `B` with `A^t B + B A = 0` (identity for `sl`).
    pub fn form(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.size, self.size, |i, j| {
            self.form.get(i, j).to_f64().unwrap()
        })
    }

    /// Exact entries of basis matrix `i`, as `(row, col, value)`.
    pub fn basis_entries(&self, i: usize) -> Vec<(usize, usize, Q)> {
        let m = &self.basis[i];
        let n = self.size;
        (0..n * n)
            .filter(|&p| !m.entries()[p].is_zero())
            .map(|p| (p / n, p % n, m.entries()[p]))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    spec: AlgebraSpec,
    dim: usize,
    labels: Vec<String>,
    /// `[b_i, b_j]` at `i * dim + j`, sparse.
    table: Vec<Vec<(usize, Q)>>,
    table_f: Vec<Vec<(usize, f64)>>,
    /// Nonzero brackets with `i < j`.
    pairs: Vec<(usize, usize, Vec<(usize, f64)>)>,
    killing: Vec<Q>,
    killing_f: Vec<(usize, usize, f64)>,
    /// `sigma(b_j)` (before conjugating coordinates), sparse columns.
    sigma: Vec<Vec<(usize, Q)>>,
    sigma_f: Vec<Vec<(usize, f64)>>,
    realization: Option<MatrixRealization>,
}

impl LieAlgebra {
    pub fn build(spec: AlgebraSpec) -> Result<Self> {
        let spec = AlgebraSpec::new(spec.family, spec.m)?;
        match spec.family {
            Family::A | Family::B | Family::C | Family::D => {
                let basis = match spec.family {
                    Family::A => classical::special_linear(spec.m),
                    Family::C => classical::symplectic(spec.m),
                    _ => classical::orthogonal(spec.m),
                };
                // sigma(X) = -X^dagger, which on real coordinates is -X^t.
                let sigma_images: Vec<QMatrix> = basis
                    .matrices
                    .iter()
                    .map(|b| b.transpose().scale(-Q::one()))
                    .collect();
                Self::from_matrices(
                    spec,
                    basis.labels,
                    basis.matrices,
                    sigma_images,
                    Some((basis.size, basis.form)),
                )
            }
            Family::G2 => {
                let b = g2::build();
                Self::from_matrices(spec, b.labels, b.matrices, b.theta, None)
            }
        }
    }

    fn from_matrices(
        spec: AlgebraSpec,
        labels: Vec<String>,
        basis: Vec<QMatrix>,
        sigma_images: Vec<QMatrix>,
        realization: Option<(usize, QMatrix)>,
    ) -> Result<Self> {
        let dim = basis.len();
        let readout = qmat::readout(&basis)
            .ok_or_else(|| Error::Parameter("basis matrices are linearly dependent".into()))?;
        let coords_of = |m: &QMatrix| -> Result<Vec<(usize, Q)>> {
            let mut out = Vec::new();
            let mut recon = QMatrix::zeros(m.size());
            for (k, terms) in readout.iter().enumerate() {
                let c: Q = terms.iter().map(|&(p, v)| v * m.entries()[p]).sum();
                if !c.is_zero() {
                    out.push((k, c));
                    recon = recon.add(&basis[k].scale(c));
                }
            }
            if recon != *m {
                return Err(Error::Parameter(
                    "matrix does not lie in the span of the basis".into(),
                ));
            }
            Ok(out)
        };

        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = coords_of(&basis[i].commutator(&basis[j]))?;
                table[j * dim + i] = c.iter().map(|&(k, v)| (k, -v)).collect();
                table[i * dim + j] = c;
            }
        }
        let sigma = sigma_images
            .iter()
            .map(coords_of)
            .collect::<Result<Vec<_>>>()?;

        let mut alg = Self {
            spec,
            dim,
            labels,
            table,
            table_f: Vec::new(),
            pairs: Vec::new(),
            killing: Vec::new(),
            killing_f: Vec::new(),
            sigma,
            sigma_f: Vec::new(),
            realization: None,
        };
        alg.refresh_derived();

        if let Some((size, form)) = realization {
            let n2 = size * size;
            let basis_f = basis
                .iter()
                .map(|b| {
                    (0..n2)
                        .filter(|&p| !b.entries()[p].is_zero())
                        .map(|p| (p, b.entries()[p].to_f64().unwrap()))
                        .collect()
                })
                .collect();
            let readout_f = readout
                .iter()
                .map(|t| t.iter().map(|&(p, v)| (p, v.to_f64().unwrap())).collect())
                .collect();
            alg.realization = Some(MatrixRealization {
                size,
                basis,
                basis_f,
                readout: readout_f,
                readout_q: readout,
                form,
            });
        }
        Ok(alg)
    }

    /// Recomputes the float tables and the Killing matrix from `table`.
    fn refresh_derived(&mut self) {
        let dim = self.dim;
        let to_f = |v: &Vec<(usize, Q)>| -> Vec<(usize, f64)> {
            v.iter().map(|&(k, c)| (k, c.to_f64().unwrap())).collect()
        };
        self.table_f = self.table.iter().map(to_f).collect();
        self.pairs = (0..dim)
            .flat_map(|i| ((i + 1)..dim).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.table[i * dim + j].is_empty())
            .map(|(i, j)| (i, j, self.table_f[i * dim + j].clone()))
            .collect();
        self.sigma_f = self.sigma.iter().map(to_f).collect();

        // Dense ad matrices: ad_i[l * dim + k] = c_ik^l.
        let ads: Vec<Vec<Q>> = (0..dim)
            .map(|i| {
                let mut ad = vec![Q::zero(); dim * dim];
                for k in 0..dim {
                    for &(l, c) in &self.table[i * dim + k] {
                        ad[l * dim + k] = c;
                    }
                }
                ad
            })
            .collect();
        let nonzeros: Vec<Vec<(usize, usize, Q)>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .flat_map(|k| self.table[i * dim + k].iter().map(move |&(l, c)| (l, k, c)))
                    .collect()
            })
            .collect();
        let mut killing = vec![Q::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v: Q = nonzeros[i]
                    .iter()
                    .map(|&(l, k, c)| c * ads[j][k * dim + l])
                    .sum();
                killing[i * dim + j] = v;
                killing[j * dim + i] = v;
            }
        }
        self.killing_f = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter(|&(i, j)| !killing[i * dim + j].is_zero())
            .map(|(i, j)| (i, j, killing[i * dim + j].to_f64().unwrap()))
            .collect();
        self.killing = killing;
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn realization(&self) -> Option<&MatrixRealization> {
        self.realization.as_ref()
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim, i)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.dim)
    }

    /// `c_ij^k`, exact.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.table[i * self.dim + j]
            .iter()
            .find(|&&(kk, _)| kk == k)
            .map(|&(_, c)| c)
            .unwrap_or_else(Q::zero)
    }

    /// Exact `[b_i, b_j]` as sparse `(k, c)` terms.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim + j]
    }

    /// Exact Killing form on basis elements.
    pub fn killing_exact(&self, i: usize, j: usize) -> Q {
        self.killing[i * self.dim + j]
    }

    /// Exact coordinates of `sigma(b_j)` (for real coordinates).
    pub fn sigma_exact(&self, j: usize) -> &[(usize, Q)] {
        &self.sigma[j]
    }

    fn check_dim(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Lie bracket. Panics if either element has the wrong dimension; use
    /// [`LieAlgebra::try_bracket`] for a checked version.
    ///
    /// Summing over `i < j` with `x_i y_j - x_j y_i` makes `[x, x] = 0` and
    /// `[x, y] = -[y, x]` hold exactly in floating point.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.dim(), self.dim, "bracket: dimension mismatch");
        assert_eq!(y.dim(), self.dim, "bracket: dimension mismatch");
        let (xc, yc) = (x.coords(), y.coords());
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (i, j, terms) in &self.pairs {
            let c = xc[*i] * yc[*j] - xc[*j] * yc[*i];
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            for &(k, v) in terms {
                out[k] += c * v;
            }
        }
        Element::from_coords(out)
    }

    pub fn try_bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket(x, y))
    }

    /// `Killing(x, y) = tr(ad x ad y)`, complex bilinear.
    pub fn killing(&self, x: &Element, y: &Element) -> Complex64 {
        let (xc, yc) = (x.coords(), y.coords());
        self.killing_f
            .iter()
            .map(|&(i, j, v)| xc[i] * yc[j] * v)
            .sum()
    }

    /// The pairing `<x, y> = -Killing(x, y)`.
    pub fn inner(&self, x: &Element, y: &Element) -> Complex64 {
        -self.killing(x, y)
    }

    pub fn try_inner(&self, x: &Element, y: &Element) -> Result<Complex64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.inner(x, y))
    }

    /// The compact real structure: antilinear, involutive, and
    /// `<x, sigma x> > 0` for `x != 0`.
    pub fn sigma(&self, x: &Element) -> Element {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (j, xj) in x.coords().iter().enumerate() {
            if xj.re == 0.0 && xj.im == 0.0 {
                continue;
            }
            let c = xj.conj();
            for &(k, v) in &self.sigma_f[j] {
                out[k] += c * v;
            }
        }
        Element::from_coords(out)
    }

    /// Hermitian norm `sqrt(<x, sigma x>)`.
    pub fn hermitian_norm(&self, x: &Element) -> f64 {
        self.inner(x, &self.sigma(x)).re.max(0.0).sqrt()
    }

    /// Matrix of `ad x` in the basis: column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &Element) -> DMatrix<Complex64> {
        let dim = self.dim;
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.re == 0.0 && xi.im == 0.0 {
                continue;
            }
            for j in 0..dim {
                for &(k, v) in &self.table_f[i * dim + j] {
                    m[(k, j)] += xi * v;
                }
            }
        }
        m
    }

    /// Matrix view of `x` in the defining representation (classical only).
    pub fn to_matrix(&self, x: &Element) -> Option<DMatrix<Complex64>> {
        let r = self.realization.as_ref()?;
        let n = r.size;
        let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (i, xi) in x.coords().iter().enumerate() {
            for &(p, v) in &r.basis_f[i] {
                m[(p / n, p % n)] += xi * v;
            }
        }
        Some(m)
    }

    /// Element with the given integer matrix entries `(row, col, value)`,
    /// zero-based. The matrix must lie in the algebra exactly: it has to
    /// preserve the defining form (trace zero for `sl`) and lie in the span
    /// of the basis.
    pub fn element_from_entries(&self, entries: &[(usize, usize, i64)]) -> Result<Element> {
        let r = self
            .realization
            .as_ref()
            .ok_or_else(|| Error::Unsupported("no matrix realization for G2".into()))?;
        if entries.iter().any(|&(i, j, _)| i >= r.size || j >= r.size) {
            return Err(Error::Parameter("matrix entry out of range".into()));
        }
        let m = QMatrix::from_terms(r.size, entries);
        let ok = match self.spec.family {
            Family::A => m.trace().is_zero(),
            _ => classical::preserves_form(&m, &r.form),
        };
        if !ok {
            return Err(Error::Parameter(format!(
                "matrix is not in {}: defining form not preserved",
                self.spec
            )));
        }
        let n = r.size;
        let mut coords = vec![Complex64::new(0.0, 0.0); self.dim];
        let mut recon = QMatrix::zeros(n);
        for (k, terms) in r.readout_q.iter().enumerate() {
            let c: Q = terms.iter().map(|&(p, v)| v * m.entries()[p]).sum();
            coords[k] = Complex64::new(c.to_f64().unwrap(), 0.0);
            recon = recon.add(&r.basis[k].scale(c));
        }
        if recon != m {
            return Err(Error::Parameter("matrix is not in the span of the basis".into()));
        }
        Ok(Element::from_coords(coords))
    }

    /// Coordinates of a matrix in the realization. Does not check that the
    /// matrix actually lies in the algebra.
    pub fn from_matrix(&self, m: &DMatrix<Complex64>) -> Option<Element> {
        let r = self.realization.as_ref()?;
        let n = r.size;
        let coords = r
            .readout
            .iter()
            .map(|terms| terms.iter().map(|&(p, v)| m[(p / n, p % n)] * v).sum())
            .collect();
        Some(Element::from_coords(coords))
    }

    /// `Ad(exp(t a)) x`. Classical algebras conjugate by the matrix
    /// exponential; G2 exponentiates `ad a`.
    pub fn adjoint_flow(&self, a: &Element, t: f64, x: &Element) -> Element {
        if t == 0.0 {
            return x.clone();
        }
        match (self.to_matrix(a), self.to_matrix(x)) {
            (Some(am), Some(xm)) => {
                let ta = am * Complex64::new(t, 0.0);
                let g = ta.clone().exp();
                let ginv = (-ta).exp();
                let y = g * xm * ginv;
                self.from_matrix(&y).expect("classical realization")
            }
            _ => {
                let ad = self.ad_matrix(a) * Complex64::new(t, 0.0);
                let v = nalgebra::DVector::from_column_slice(x.coords());
                let y = ad.exp() * v;
                Element::from_coords(y.iter().cloned().collect())
            }
        }
    }

    /// Real spanning set of the compact form `{a : sigma(a) = a}`:
    /// `b_j + sigma(b_j)` and `i (b_j - sigma(b_j))` for each basis element.
    pub fn compact_spanning_set(&self) -> Vec<Element> {
        (0..self.dim)
            .flat_map(|j| {
                let b = self.basis_element(j);
                let s = self.sigma(&b);
                [&b + &s, (&b - &s).times_i()]
            })
            .filter(|e| !e.is_zero())
            .collect()
    }

    /// Dimension of `{a : [a, x] = 0}` over the chosen field.
    pub fn centralizer_dimension(&self, x: &Element, field: Field) -> Result<usize> {
        self.check_dim(x)?;
        match field {
            Field::Complex => Ok(self.dim - linalg::complex_rank(&self.ad_matrix(x))?),
            Field::RealCompact => {
                let span = self.compact_spanning_set();
                let ad = self.ad_matrix(x);
                let mut m = DMatrix::<f64>::zeros(2 * self.dim, span.len());
                for (c, a) in span.iter().enumerate() {
                    let v = nalgebra::DVector::from_column_slice(a.coords());
                    let img = &ad * v;
                    for r in 0..self.dim {
                        m[(r, c)] = img[r].re;
                        m[(self.dim + r, c)] = img[r].im;
                    }
                }
                // real dimension of the compact form equals the complex dimension
                Ok(self.dim - linalg::real_rank(&m)?)
            }
        }
    }

    /// Corrupts one structure constant so that the exact invariant checks
    /// fail. Only meant for negative-control tests.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) {
        let dim = self.dim;
        if let Some((i, j)) = (0..dim)
            .flat_map(|i| ((i + 1)..dim).map(move |j| (i, j)))
            .find(|&(i, j)| !self.table[i * dim + j].is_empty())
        {
            let (k, c) = self.table[i * dim + j][0];
            let bumped = c + Q::one();
            self.table[i * dim + j][0] = (k, bumped);
            self.table[j * dim + i] = self.table[i * dim + j]
                .iter()
                .map(|&(k, v)| (k, -v))
                .collect();
            self.table[i * dim + j].retain(|(_, v)| !v.is_zero());
            self.table[j * dim + i].retain(|(_, v)| !v.is_zero());
            self.refresh_derived();
        }
    }
}

pub mod checks;

#[cfg(test)]
mod tests;
