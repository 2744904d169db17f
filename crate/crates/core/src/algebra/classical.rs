//! Matrix bases for the classical families.
//!
//! * `sl(m)`: off-diagonal units `E_ij` and `H_k = E_kk - E_{k+1,k+1}`.
//! * `so(m)`: matrices with `A^t B + B A = 0` for the anti-diagonal `B`,
//!   spanned by `M_ij = E_ij - E_{j'i'}` over positions strictly above the
//!   anti-diagonal (`i + j < m + 1`, `i' = m + 1 - i`).
//! * `sp(2n)`: the standard skew form `[[0, I], [-I, 0]]`, blocks
//!   `[[a, b], [c, -a^t]]` with `b`, `c` symmetric.
//!
//! Every basis matrix has integer entries, so `-X^t` is the compact real
//! structure on real coordinates.

use super::qmat::{q, QMatrix};

pub(crate) struct MatrixBasis {
    pub size: usize,
    pub labels: Vec<String>,
    pub matrices: Vec<QMatrix>,
    pub form: QMatrix,
}

pub(crate) fn special_linear(m: usize) -> MatrixBasis {
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for k in 0..m - 1 {
        labels.push(format!("H{}", k + 1));
        matrices.push(QMatrix::from_terms(m, &[(k, k, 1), (k + 1, k + 1, -1)]));
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                labels.push(format!("E{},{}", i + 1, j + 1));
                matrices.push(QMatrix::unit(m, i, j, 1));
            }
        }
    }
    MatrixBasis {
        size: m,
        labels,
        matrices,
        form: QMatrix::identity(m),
    }
}

/// Zero-based partner index under the anti-diagonal reflection.
pub(crate) fn mirror(m: usize, i: usize) -> usize {
    m - 1 - i
}

/// `E_ij - E_{j'i'}` with zero-based indices; the element of `so(m)` whose
/// `(i, j)` entry is one.
pub(crate) fn so_unit(m: usize, i: usize, j: usize) -> QMatrix {
    QMatrix::from_terms(m, &[(i, j, 1), (mirror(m, j), mirror(m, i), -1)])
}

pub(crate) fn orthogonal(m: usize) -> MatrixBasis {
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    // Cartan part first: diagonal positions above the anti-diagonal.
    for i in 0..m {
        if 2 * i + 1 < m {
            labels.push(format!("M{},{}", i + 1, i + 1));
            matrices.push(so_unit(m, i, i));
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i != j && i + j + 1 < m {
                labels.push(format!("M{},{}", i + 1, j + 1));
                matrices.push(so_unit(m, i, j));
            }
        }
    }
    let mut form = QMatrix::zeros(m);
    for i in 0..m {
        form.set(i, mirror(m, i), q(1));
    }
    MatrixBasis {
        size: m,
        labels,
        matrices,
        form,
    }
}

pub(crate) fn symplectic(n: usize) -> MatrixBasis {
    let size = 2 * n;
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for i in 0..n {
        labels.push(format!("A{},{}", i + 1, i + 1));
        matrices.push(QMatrix::from_terms(size, &[(i, i, 1), (n + i, n + i, -1)]));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("A{},{}", i + 1, j + 1));
                matrices.push(QMatrix::from_terms(size, &[(i, j, 1), (n + j, n + i, -1)]));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            labels.push(format!("B{},{}", i + 1, j + 1));
            matrices.push(if i == j {
                QMatrix::unit(size, i, n + i, 1)
            } else {
                QMatrix::from_terms(size, &[(i, n + j, 1), (j, n + i, 1)])
            });
        }
    }
    for i in 0..n {
        for j in i..n {
            labels.push(format!("C{},{}", i + 1, j + 1));
            matrices.push(if i == j {
                QMatrix::unit(size, n + i, i, 1)
            } else {
                QMatrix::from_terms(size, &[(n + i, j, 1), (n + j, i, 1)])
            });
        }
    }
    let mut form = QMatrix::zeros(size);
    for i in 0..n {
        form.set(i, n + i, q(1));
        form.set(n + i, i, q(-1));
    }
    MatrixBasis {
        size,
        labels,
        matrices,
        form,
    }
}

/// Checks `A^t F + F A = 0` exactly.
pub(crate) fn preserves_form(a: &QMatrix, form: &QMatrix) -> bool {
    a.transpose().mul(form).add(&form.mul(a)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(special_linear(3).matrices.len(), 8);
        assert_eq!(orthogonal(9).matrices.len(), 36);
        assert_eq!(orthogonal(8).matrices.len(), 28);
        assert_eq!(symplectic(2).matrices.len(), 10);
        assert_eq!(symplectic(4).matrices.len(), 36);
    }

    #[test]
    fn orthogonal_and_symplectic_bases_preserve_their_forms() {
        for m in [5, 6, 7, 10] {
            let b = orthogonal(m);
            assert!(b.matrices.iter().all(|x| preserves_form(x, &b.form)));
        }
        for n in [1, 2, 3] {
            let b = symplectic(n);
            assert!(b.matrices.iter().all(|x| preserves_form(x, &b.form)));
        }
    }
}
