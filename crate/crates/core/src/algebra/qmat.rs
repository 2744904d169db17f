//! Small dense matrices over the rationals, used to build matrix
//! realizations and read structure constants off them exactly.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Q::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Elementary matrix with a single `value` at zero-based `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize, value: i64) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, q(value));
        m
    }

    /// Sum of `(row, col, value)` terms, zero-based indices.
    pub fn from_terms(n: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zeros(n);
        for &(i, j, v) in terms {
            let cur = m.get(i, j);
            m.set(i, j, cur + q(v));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn scale(&self, c: Q) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Q::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Exact left inverse of a family of linearly independent matrices: for each
/// basis index, the sparse list of `(flat position, coefficient)` such that
/// the coordinate is `sum coefficient * entry[position]`.
///
/// Returns `None` when the matrices are linearly dependent.
pub fn readout(basis: &[QMatrix]) -> Option<Vec<Vec<(usize, Q)>>> {
    let d = basis.len();
    if d == 0 {
        return Some(Vec::new());
    }
    let n2 = basis[0].entries().len();

    // Greedily choose d positions whose rows of the (n2 x d) coordinate
    // matrix are independent, via incremental elimination.
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
    let mut positions = Vec::with_capacity(d);
    for p in 0..n2 {
        let mut row: Vec<Q> = basis.iter().map(|b| b.entries()[p]).collect();
        for (pivot, erow) in &echelon {
            let f = row[*pivot];
            if !f.is_zero() {
                for (r, e) in row.iter_mut().zip(erow) {
                    *r -= f * *e;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|v| !v.is_zero()) {
            let inv = row[pivot].recip();
            for r in row.iter_mut() {
                *r *= inv;
            }
            echelon.push((pivot, row));
            positions.push(p);
            if positions.len() == d {
                break;
            }
        }
    }
    if positions.len() < d {
        return None;
    }

    // Invert the d x d submatrix M[positions, :] by Gauss-Jordan.
    let mut a: Vec<Vec<Q>> = positions
        .iter()
        .map(|&p| basis.iter().map(|b| b.entries()[p]).collect())
        .collect();
    let mut inv: Vec<Vec<Q>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].recip();
        for j in 0..d {
            a[col][j] *= f;
            inv[col][j] *= f;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col];
                for j in 0..d {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= g * ac;
                    inv[r][j] -= g * ic;
                }
            }
        }
    }
    // coords = inv * entries[positions]
    Some(
        inv.into_iter()
            .map(|row| {
                row.into_iter()
                    .zip(&positions)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, &p)| (p, c))
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_units() {
        let e = QMatrix::unit(2, 0, 1, 1);
        let f = QMatrix::unit(2, 1, 0, 1);
        let h = e.commutator(&f);
        assert_eq!(h, QMatrix::from_terms(2, &[(0, 0, 1), (1, 1, -1)]));
    }

    #[test]
    fn readout_recovers_coordinates() {
        let basis = vec![
            QMatrix::from_terms(2, &[(0, 0, 1), (1, 1, -1)]),
            QMatrix::unit(2, 0, 1, 1),
            QMatrix::unit(2, 1, 0, 1),
        ];
        let r = readout(&basis).unwrap();
        let x = basis[0]
            .scale(q(3))
            .add(&basis[1].scale(q(-2)))
            .add(&basis[2].scale(q(5)));
        let coords: Vec<Q> = r
            .iter()
            .map(|terms| terms.iter().map(|&(p, c)| c * x.entries()[p]).sum())
            .collect();
        assert_eq!(coords, vec![q(3), q(-2), q(5)]);
    }

    #[test]
    fn readout_rejects_dependent_family() {
        let a = QMatrix::unit(2, 0, 1, 1);
        assert!(readout(&[a.clone(), a.scale(q(2))]).is_none());
    }
}
