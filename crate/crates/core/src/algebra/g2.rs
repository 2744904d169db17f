//! The exceptional algebra G2, generated from Chevalley generators in its
//! seven-dimensional representation.
//!
//! Simple roots: `alpha` short, `beta` long. The generators below satisfy
//! `[e_i, f_j] = delta_ij h_i` and `[h_i, e_j] = A_ji e_j` with the Cartan
//! matrix `[[2, -1], [-3, 2]]`; they are rational, so every bracket is
//! computed exactly. Root vectors are built by the Chevalley recipe
//! `E_{gamma + delta} = [E_gamma, E_delta] / (p + 1)`, and the negative
//! root vectors by applying the Chevalley involution
//! `theta(e_i) = -f_i`, so `F_gamma = -theta(E_gamma)`.
//!
//! Sign convention: every division uses the positive integer `p + 1`.

use super::qmat::{q, QMatrix, Q};

/// Positive roots as `(a, b)` meaning `a * alpha + b * beta`.
pub const POSITIVE_ROOTS: [(i32, i32); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];

/// Whether the positive root `a*alpha + b*beta` is long.
pub fn is_long(root: (i32, i32)) -> bool {
    matches!(root, (0, 1) | (3, 1) | (3, 2))
}

pub(crate) struct G2Basis {
    pub labels: Vec<String>,
    pub matrices: Vec<QMatrix>,
    /// `theta(b_i)` for each basis matrix (the linear part of `sigma`).
    pub theta: Vec<QMatrix>,
}

fn step(e: &QMatrix, x: &QMatrix, p_plus_one: i64) -> QMatrix {
    e.commutator(x).scale(Q::new(1, p_plus_one))
}

/// Basis order: `h1, h2, E_gamma (6 positive roots), F_gamma (same order)`.
pub(crate) fn build() -> G2Basis {
    let n = 7;
    // zero-based (row, col, value)
    let e1 = QMatrix::from_terms(n, &[(0, 1, 1), (5, 6, -1), (2, 3, 1), (3, 4, -1)]);
    let f1 = QMatrix::from_terms(n, &[(1, 0, 1), (6, 5, -1), (3, 2, 2), (4, 3, -2)]);
    let e2 = QMatrix::from_terms(n, &[(1, 2, 1), (4, 5, -1)]);
    let f2 = QMatrix::from_terms(n, &[(2, 1, 1), (5, 4, -1)]);
    let h1 = e1.commutator(&f1);
    let h2 = e2.commutator(&f2);

    // E_{alpha+beta} = [E_a, E_b]; E_{2a+b} = [E_a, E_{a+b}]/2;
    // E_{3a+b} = [E_a, E_{2a+b}]/3; E_{3a+2b} = [E_b, E_{3a+b}].
    let e_ab = step(&e1, &e2, 1);
    let e_2ab = step(&e1, &e_ab, 2);
    let e_3ab = step(&e1, &e_2ab, 3);
    let e_3a2b = step(&e2, &e_3ab, 1);

    // theta is an automorphism, so F = -theta(E) obeys the same recursion
    // with the generators replaced by -f_i.
    let nf1 = f1.scale(q(-1));
    let nf2 = f2.scale(q(-1));
    let t_ab = step(&nf1, &nf2, 1);
    let t_2ab = step(&nf1, &t_ab, 2);
    let t_3ab = step(&nf1, &t_2ab, 3);
    let t_3a2b = step(&nf2, &t_3ab, 1);

    let pos = vec![e1.clone(), e2.clone(), e_ab, e_2ab, e_3ab, e_3a2b];
    let theta_pos = vec![nf1, nf2, t_ab, t_2ab, t_3ab, t_3a2b];
    let neg: Vec<QMatrix> = theta_pos.iter().map(|t| t.scale(q(-1))).collect();

    let mut labels = vec!["h1".to_string(), "h2".to_string()];
    let mut matrices = vec![h1.clone(), h2.clone()];
    let mut theta = vec![h1.scale(q(-1)), h2.scale(q(-1))];
    for (root, m) in POSITIVE_ROOTS.iter().zip(&pos) {
        labels.push(format!("E({},{})", root.0, root.1));
        matrices.push(m.clone());
    }
    theta.extend(theta_pos);
    for (root, m) in POSITIVE_ROOTS.iter().zip(&neg) {
        labels.push(format!("F({},{})", root.0, root.1));
        matrices.push(m.clone());
        // theta(F) = -E
    }
    theta.extend(pos.iter().map(|e| e.scale(q(-1))));
    G2Basis {
        labels,
        matrices,
        theta,
    }
}

/// Index of `E_root` (positive) in the basis order used by [`build`].
pub fn positive_root_index(root: (i32, i32)) -> Option<usize> {
    POSITIVE_ROOTS.iter().position(|&r| r == root).map(|k| 2 + k)
}

/// Index of `F_root`.
pub fn negative_root_index(root: (i32, i32)) -> Option<usize> {
    POSITIVE_ROOTS.iter().position(|&r| r == root).map(|k| 8 + k)
}
