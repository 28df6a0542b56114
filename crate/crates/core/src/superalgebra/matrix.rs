//! The 2n×2n matrix model of q(n).

use super::{GElement, Gen};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Nonzero entries `(row, col, value)` of a basis matrix.
pub fn basis_matrix(g: Gen, n: usize) -> Vec<(usize, usize, i64)> {
    if g.odd {
        vec![(g.i, n + g.j, 1), (n + g.i, g.j, 1)]
    } else {
        vec![(g.i, g.j, 1), (n + g.i, n + g.j, 1)]
    }
}

/// Dense product of two sparse matrices of size `size`.
pub fn product(a: &[(usize, usize, i64)], b: &[(usize, usize, i64)], size: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; size]; size];
    for &(r1, c1, v1) in a {
        for &(r2, c2, v2) in b {
            if c1 == r2 {
                out[r1][c2] += v1 * v2;
            }
        }
    }
    out
}

/// Coordinates of a 2n×2n integer matrix of the shape `(A, B; B, A)`, or
/// `None` if the matrix is not in q(n).
pub fn decompose(m: &[Vec<i64>], n: usize) -> Option<SparseVec<Scalar>> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[n + i][n + j] || m[i][n + j] != m[n + i][j] {
                return None;
            }
            pairs.push((Gen { odd: false, i, j }.index(n), Scalar::from_int(m[i][j])));
            pairs.push((Gen { odd: true, i, j }.index(n), Scalar::from_int(m[i][n + j])));
        }
    }
    Some(SparseVec::from_pairs(pairs))
}

/// Dense matrix of an element.
pub fn to_matrix(x: &GElement) -> Vec<Vec<Scalar>> {
    let n = x.n();
    let mut out = vec![vec![Scalar::zero(); 2 * n]; 2 * n];
    for (g, c) in x.terms() {
        for (r, col, _) in basis_matrix(g, n) {
            out[r][col] = &out[r][col] + c;
        }
    }
    out
}

/// Inverse of [`to_matrix`]; `None` if the matrix is not in q(n).
pub fn from_matrix(m: &[Vec<Scalar>], n: usize) -> Option<GElement> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[n + i][n + j] || m[i][n + j] != m[n + i][j] {
                return None;
            }
            pairs.push((Gen { odd: false, i, j }.index(n), m[i][j].clone()));
            pairs.push((Gen { odd: true, i, j }.index(n), m[i][n + j].clone()));
        }
    }
    Some(GElement::from_vec(n, SparseVec::from_pairs(pairs)))
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let size = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    (0..size).map(|i| (0..cols).map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

/// Odd trace: trace of the upper-right block.
pub fn otr(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len() / 2;
    (0..n).map(|i| m[i][n + i].clone()).sum()
}
