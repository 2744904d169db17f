//! Numerical helpers shared by the orbit and geometry code.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_RELATIVE_TOL: f64 = 1e-9;
/// Required ratio between the smallest kept and largest dropped singular value.
pub const RANK_GAP: f64 = 1e3;

/// Rank from a list of singular values, refusing to decide when the
/// spectrum has no clear gap around the cut-off.
pub fn numerical_rank(singular_values: &[f64]) -> Result<usize> {
    let max = singular_values.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    let cut = RANK_RELATIVE_TOL * max;
    let kept: Vec<f64> = singular_values.iter().cloned().filter(|&v| v > cut).collect();
    let dropped = singular_values
        .iter()
        .cloned()
        .filter(|&v| v <= cut)
        .fold(0.0_f64, f64::max);
    let smallest_kept = kept.iter().cloned().fold(f64::INFINITY, f64::min);
    if dropped > 0.0 && smallest_kept / dropped < RANK_GAP {
        return Err(Error::NumericalTolerance {
            smallest_kept,
            largest_dropped: dropped,
            gap: smallest_kept / dropped,
        });
    }
    Ok(kept.len())
}

/// `[[Re m, -Im m], [Im m, Re m]]`, acting on `(Re v, Im v)`.
///
/// Complex routines go through this real form: the complex SVD in
/// nalgebra can lose several digits on matrices such as `ad X`.
pub fn realify(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (r, c) = m.shape();
    DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = m[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

pub fn complex_rank(m: &DMatrix<Complex64>) -> Result<usize> {
    Ok(real_rank(&realify(m))? / 2)
}

/// Orthonormal basis `q_k` of the range of a complex matrix `m` with
/// preimages `p_k`, `m p_k = q_k`.
pub struct ComplexRange {
    pub basis: Vec<DVector<Complex64>>,
    pub preimages: Vec<DVector<Complex64>>,
}

pub fn complex_range(m: &DMatrix<Complex64>) -> Result<ComplexRange> {
    let (rows, cols) = m.shape();
    let empty = ComplexRange {
        basis: Vec::new(),
        preimages: Vec::new(),
    };
    if rows == 0 || cols == 0 {
        return Ok(empty);
    }
    let triplets = singular_triplets(&realify(m))?;
    let sv: Vec<f64> = triplets.iter().map(|t| t.0).collect();
    let real_rank = numerical_rank(&sv)?;
    if real_rank % 2 == 1 {
        return Err(Error::Parameter("odd real rank of a complex matrix".into()));
    }
    let to_complex = |top: &DVector<f64>, n: usize, scale: f64| {
        DVector::from_fn(n, |i, _| Complex64::new(top[i], top[n + i]) * scale)
    };
    // real singular vectors span the complex range over R; pivoted
    // complex Gram-Schmidt picks a complex basis out of them
    let mut cand: Vec<(DVector<Complex64>, DVector<Complex64>)> = triplets[..real_rank]
        .iter()
        .map(|(sigma, u, v)| (to_complex(u, rows, 1.0), to_complex(v, cols, 1.0 / sigma)))
        .collect();
    let mut out = empty;
    for _ in 0..real_rank / 2 {
        let (best, norm) = cand
            .iter()
            .enumerate()
            .map(|(i, (c, _))| (i, c.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("candidates left");
        let (q, p) = cand.swap_remove(best);
        let (q, p) = (q.unscale(norm), p.unscale(norm));
        for (c, pc) in cand.iter_mut() {
            let proj = q.dotc(c);
            c.axpy(-proj, &q, Complex64::new(1.0, 0.0));
            pc.axpy(-proj, &p, Complex64::new(1.0, 0.0));
        }
        out.basis.push(q);
        out.preimages.push(p);
    }
    Ok(out)
}

fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular triplets `(sigma_k, u_k, v_k)` with `m v_k = sigma_k u_k`,
/// largest first, `min(rows, cols)` of them.
///
/// Decompositions go through faer: nalgebra's SVD and symmetric
/// eigensolver lose digits, or break down, on sparse rank-deficient
/// matrices such as `ad X`.
pub fn singular_triplets(m: &DMatrix<f64>) -> Result<Vec<(f64, DVector<f64>, DVector<f64>)>> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Ok(Vec::new());
    }
    let svd = to_faer(m)
        .thin_svd()
        .map_err(|_| Error::NoConvergence("singular value decomposition"))?;
    let (u, s, v) = (svd.U(), svd.S(), svd.V());
    let mut out: Vec<_> = (0..r.min(c))
        .map(|k| {
            (
                s[k],
                DVector::from_fn(r, |i, _| u[(i, k)]),
                DVector::from_fn(c, |i, _| v[(i, k)]),
            )
        })
        .collect();
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(out)
}

pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(singular_triplets(m)?.into_iter().map(|t| t.0).collect())
}

pub fn real_rank(m: &DMatrix<f64>) -> Result<usize> {
    numerical_rank(&singular_values(m)?)
}

/// Eigenvalues of a real symmetric matrix, ascending. A single NaN if the
/// solver does not converge, so that positivity checks fail.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    match to_faer(m).self_adjoint_eigenvalues(Side::Lower) {
        Ok(mut ev) => {
            ev.sort_by(|a, b| a.total_cmp(b));
            ev
        }
        Err(_) => vec![f64::NAN],
    }
}

/// Largest `|m_ij - m_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..i {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Solves the real linear system `a x = b`.
pub fn solve(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    a.lu().solve(&b)
}

pub fn mean_and_stdev(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_with_clear_gap() {
        assert_eq!(numerical_rank(&[3.0, 1.0, 1e-14]).unwrap(), 2);
        assert_eq!(numerical_rank(&[0.0, 0.0]).unwrap(), 0);
        assert_eq!(numerical_rank(&[2.0, 1.0]).unwrap(), 2);
    }

    #[test]
    fn complex_range_reconstructs() {
        let m = DMatrix::from_fn(5, 4, |i, j| {
            Complex64::new((i * j) as f64 + 1.0, i as f64 - 2.0 * j as f64)
        });
        let m = &m * DMatrix::from_fn(4, 4, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, (i + j) as f64 * 0.1));
        let r = complex_range(&m).unwrap();
        assert_eq!(r.basis.len(), complex_rank(&m).unwrap());
        for (i, (q, p)) in r.basis.iter().zip(&r.preimages).enumerate() {
            assert!((&m * p - q).norm() < 1e-12);
            for q2 in &r.basis[..i] {
                assert!(q2.dotc(q).norm() < 1e-12);
            }
            assert!((q.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn realify_matches_complex_product() {
        let m = DMatrix::from_fn(3, 2, |i, j| Complex64::new(i as f64, j as f64 + 0.5));
        let v = DVector::from_vec(vec![Complex64::new(1.0, -2.0), Complex64::new(0.3, 0.7)]);
        let mv = &m * &v;
        let rv = realify(&m) * DVector::from_vec(vec![1.0, 0.3, -2.0, 0.7]);
        for i in 0..3 {
            assert!((rv[i] - mv[i].re).abs() < 1e-14 && (rv[3 + i] - mv[i].im).abs() < 1e-14);
        }
    }

    #[test]
    fn triplets_of_rank_deficient_matrix() {
        let a = DMatrix::from_fn(6, 2, |i, j| (i as f64 + 1.0).powi(j as i32 + 1));
        let b = DMatrix::from_fn(2, 6, |i, j| ((i + 2 * j) as f64).sin());
        let m = &a * &b;
        let t = singular_triplets(&m).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(real_rank(&m).unwrap(), 2);
        for (sigma, u, v) in &t[..2] {
            assert!((&m * v - u * *sigma).norm() < 1e-12 * t[0].0);
        }
        let rebuilt = t[..2]
            .iter()
            .fold(DMatrix::zeros(6, 6), |acc, (s, u, v)| acc + u * v.transpose() * *s);
        assert!((rebuilt - &m).norm() < 1e-12 * m.norm());
    }

    #[test]
    fn nilpotent_shift_has_exact_rank() {
        let m = DMatrix::from_fn(8, 8, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        assert_eq!(real_rank(&m).unwrap(), 7);
        let ev = symmetric_eigenvalues(&(&m + m.transpose()));
        assert!(ev.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rank_without_gap_is_an_error() {
        let err = numerical_rank(&[1.0, 2e-9, 1e-9]).unwrap_err();
        assert!(matches!(err, Error::NumericalTolerance { .. }));
    }
}
