//! Small finite-dimensional weight modules: trivial, natural, adjoint, and
//! super tensor products.

use std::collections::BTreeMap;

use super::induced::{Provenance, TruncatedModule};
use crate::error::{QwkError, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::pbw::PBWMonomial;
use crate::scalar::Scalar;
use crate::superalgebra::roots::root_vector;
use crate::superalgebra::{build_qn, Weight};
use crate::surd::Surd;

/// `Σ_i (n−i) μ_i`: the height functional, so that depth is its drop from the top.
fn height_functional(w: &Weight) -> Scalar {
    let n = w.n();
    w.0.iter().enumerate().map(|(i, c)| c * &Scalar::from_int((n - i) as i64)).sum()
}

/// Wraps action matrices on a weight basis as a (complete) module.
pub fn finite_module(n: usize, parity: Vec<bool>, weights: Vec<Weight>, action: BTreeMap<usize, SparseMatrix<Surd>>) -> Result<TruncatedModule> {
    let top = weights
        .iter()
        .max_by(|a, b| height_functional(a).cmp(&height_functional(b)))
        .cloned()
        .ok_or_else(|| QwkError::Invalid("empty module".into()))?;
    let ht = height_functional(&top);
    let depths: Vec<i64> = weights
        .iter()
        .map(|w| (&ht - &height_functional(w)).to_i64().ok_or_else(|| QwkError::Invalid("weights are not in one root-lattice coset".into())))
        .collect::<Result<_>>()?;
    let depth = depths.iter().copied().max().unwrap_or(0);
    let dim = parity.len();
    let leaks = action.keys().map(|&k| (k, vec![false; dim])).collect();
    Ok(TruncatedModule::from_parts(
        n,
        top,
        depth,
        Provenance::Finite,
        (0..dim).map(|v| (PBWMonomial::unit(), v)).collect(),
        parity,
        weights,
        depths,
        action,
        leaks,
    ))
}

pub fn trivial_module(n: usize) -> Result<TruncatedModule> {
    let q = build_qn(n)?;
    let action = (0..q.dim()).map(|k| (k, SparseMatrix::zeros(1, 1))).collect();
    finite_module(n, vec![false], vec![Weight::zero(n)], action)
}

/// `ℂ^{n|n}`: `v_i` even, `v̄_i` odd; `e_ij` acts as `E_ij` on both,
/// `f_ij: v_j ↦ v̄_i, v̄_j ↦ v_i`.
pub fn natural_module(n: usize) -> Result<TruncatedModule> {
    let q = build_qn(n)?;
    let mut action = BTreeMap::new();
    for k in 0..q.dim() {
        let g = q.gen(k);
        let mut cols = vec![SparseVec::new(); 2 * n];
        if g.odd {
            cols[g.j] = SparseVec::unit(n + g.i);
            cols[n + g.j] = SparseVec::unit(g.i);
        } else {
            cols[g.j] = SparseVec::unit(g.i);
            cols[n + g.j] = SparseVec::unit(n + g.i);
        }
        action.insert(k, SparseMatrix::from_cols(2 * n, cols));
    }
    let weights: Vec<Weight> = (0..2 * n)
        .map(|a| {
            let mut v = vec![0i64; n];
            v[a % n] = 1;
            Weight::from_ints(&v)
        })
        .collect();
    let parity = (0..2 * n).map(|a| a >= n).collect();
    finite_module(n, parity, weights, action)
}

/// The adjoint module on the basis of `q(n)`.
pub fn adjoint_module(n: usize) -> Result<TruncatedModule> {
    let q = build_qn(n)?;
    let d = q.dim();
    let mut action = BTreeMap::new();
    for k in 0..d {
        let m = q.ad_matrix(&SparseVec::unit(k));
        action.insert(
            k,
            SparseMatrix::from_cols(d, m.cols.iter().map(|c| SparseVec::from_pairs(c.iter().map(|(i, v)| (*i, Surd::from(v.clone()))))).collect()),
        );
    }
    let parity = (0..d).map(|k| q.parity(k).is_odd()).collect();
    let weights = (0..d).map(|k| Weight::from_ints(&root_vector(q.gen(k), n))).collect();
    finite_module(n, parity, weights, action)
}

/// `A ⊗ B` with `x(a⊗b) = xa⊗b + (−1)^{|x||a|} a⊗xb`.
pub fn tensor_modules(a: &TruncatedModule, b: &TruncatedModule) -> Result<TruncatedModule> {
    if a.n != b.n {
        return Err(QwkError::RankMismatch { left: a.n, right: b.n });
    }
    let n = a.n;
    let q = build_qn(n)?;
    let (da, db) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * db + j;
    let mut action = BTreeMap::new();
    for k in 0..q.dim() {
        let (Some(xa), Some(xb)) = (a.action.get(&k), b.action.get(&k)) else { continue };
        let odd = q.parity(k).is_odd();
        let mut cols = Vec::with_capacity(da * db);
        for i in 0..da {
            for j in 0..db {
                let mut pairs: Vec<(usize, Surd)> = xa.cols[i].iter().map(|(r, v)| (idx(*r, j), v.clone())).collect();
                let sign = if odd && a.parity[i] { Surd::from(-1) } else { Surd::one() };
                pairs.extend(xb.cols[j].iter().map(|(r, v)| (idx(i, *r), &sign * v)));
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        action.insert(k, SparseMatrix::from_cols(da * db, cols));
    }
    let mut parity = Vec::new();
    let mut weights = Vec::new();
    for i in 0..da {
        for j in 0..db {
            parity.push(a.parity[i] ^ b.parity[j]);
            weights.push(a.weights[i].add(&b.weights[j]));
        }
    }
    finite_module(n, parity, weights, action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_modules_are_modules() {
        for m in [natural_module(2).unwrap(), natural_module(3).unwrap(), adjoint_module(2).unwrap(), trivial_module(2).unwrap()] {
            let checks = m.check_brackets().unwrap();
            assert!(checks > 0);
        }
        let nat = natural_module(2).unwrap();
        let t = tensor_modules(&nat, &nat).unwrap();
        assert_eq!(t.dim(), 16);
        assert!(t.check_brackets().unwrap() > 0);
        assert_eq!(nat.top, Weight::from_ints(&[1, 0]));
        assert_eq!(nat.depth, 1);
    }
}
