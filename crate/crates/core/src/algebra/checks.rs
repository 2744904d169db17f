//! Exact self-checks of an algebra's structure data.

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::qmat::{QMatrix, Q};
use super::LieAlgebra;
use crate::linalg;

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub algebra: String,
    pub dim: usize,
    pub jacobi_violations: usize,
    pub killing_invariance_violations: usize,
    pub killing_trace_violations: usize,
    pub sigma_involution_violations: usize,
    pub sigma_automorphism_violations: usize,
    pub hermitian_asymmetry: f64,
    pub hermitian_min_eigenvalue: f64,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.jacobi_violations == 0
            && self.killing_invariance_violations == 0
            && self.killing_trace_violations == 0
            && self.sigma_involution_violations == 0
            && self.sigma_automorphism_violations == 0
            && self.hermitian_asymmetry == 0.0
            && self.hermitian_min_eigenvalue > 0.0
    }
}

fn dense(dim: usize, terms: &[(usize, Q)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    for &(k, c) in terms {
        v[k] += c;
    }
    v
}

fn bracket_exact(alg: &LieAlgebra, x: &[Q], y: &[Q]) -> Vec<Q> {
    let dim = alg.dim;
    let mut out = vec![Q::zero(); dim];
    for i in 0..dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if y[j].is_zero() {
                continue;
            }
            let c = x[i] * y[j];
            for &(k, v) in &alg.table[i * dim + j] {
                out[k] += c * v;
            }
        }
    }
    out
}

fn sigma_exact(alg: &LieAlgebra, x: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); alg.dim];
    for (j, &xj) in x.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        for &(k, v) in &alg.sigma[j] {
            out[k] += xj * v;
        }
    }
    out
}

fn killing_exact(alg: &LieAlgebra, x: &[Q], y: &[Q]) -> Q {
    let dim = alg.dim;
    let mut s = Q::zero();
    for i in 0..dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if !y[j].is_zero() {
                s += x[i] * y[j] * alg.killing[i * dim + j];
            }
        }
    }
    s
}

/// Runs every exact invariant check on `alg`.
pub fn verify(alg: &LieAlgebra) -> InvariantReport {
    let dim = alg.dim;
    let basis: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::from_integer(1);
            v
        })
        .collect();
    let br = |i: usize, j: usize| dense(dim, &alg.table[i * dim + j]);

    let mut jacobi = 0;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let bij = br(i, j);
            for k in (j + 1)..dim {
                let a = bracket_exact(alg, &bij, &basis[k]);
                let b = bracket_exact(alg, &br(j, k), &basis[i]);
                let c = bracket_exact(alg, &br(k, i), &basis[j]);
                if (0..dim).any(|l| !(a[l] + b[l] + c[l]).is_zero()) {
                    jacobi += 1;
                }
            }
        }
    }

    let mut invariance = 0;
    for i in 0..dim {
        for j in 0..dim {
            let bij = br(i, j);
            for k in 0..dim {
                let lhs = killing_exact(alg, &bij, &basis[k]);
                let rhs = killing_exact(alg, &basis[j], &br(i, k));
                if !(lhs + rhs).is_zero() {
                    invariance += 1;
                }
            }
        }
    }

    let mut trace_bad = 0;
    if let (Some(r), Some(c)) = (alg.realization.as_ref(), alg.spec.killing_trace_factor()) {
        let c = Q::from_integer(c);
        for i in 0..dim {
            for j in i..dim {
                let t: QMatrix = r.basis[i].mul(&r.basis[j]);
                if alg.killing[i * dim + j] != c * t.trace() {
                    trace_bad += 1;
                }
            }
        }
    }

    let mut involution = 0;
    let mut automorphism = 0;
    let sig: Vec<Vec<Q>> = basis.iter().map(|b| sigma_exact(alg, b)).collect();
    for j in 0..dim {
        if sigma_exact(alg, &sig[j]) != basis[j] {
            involution += 1;
        }
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let lhs = sigma_exact(alg, &br(i, j));
            let rhs = bracket_exact(alg, &sig[i], &sig[j]);
            if lhs != rhs {
                automorphism += 1;
            }
        }
    }

    // <b_i, sigma b_j> is real symmetric positive definite.
    let h = DMatrix::from_fn(dim, dim, |i, j| {
        (-killing_exact(alg, &basis[i], &sig[j])).to_f64().unwrap()
    });
    InvariantReport {
        algebra: alg.spec.to_string(),
        dim,
        jacobi_violations: jacobi,
        killing_invariance_violations: invariance,
        killing_trace_violations: trace_bad,
        sigma_involution_violations: involution,
        sigma_automorphism_violations: automorphism,
        hermitian_asymmetry: linalg::asymmetry(&h),
        hermitian_min_eigenvalue: linalg::symmetric_eigenvalues(&h)[0],
    }
}
