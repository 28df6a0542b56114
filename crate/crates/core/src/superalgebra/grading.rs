//! Gradings by diagonal elements, sl(2)-completion, centralizers and
//! subalgebras given by basis subsets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GElement, Gen, Parity, Qn};
use crate::error::{QwkError, Result};
use crate::linalg::{nullspace, solve, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// The ℤ-grading of q(n) by `ad` of a diagonal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingData {
    pub n: usize,
    pub grader: Vec<Scalar>,
    /// Eigenvalue per basis index.
    pub degree: Vec<i64>,
    pub blocks: BTreeMap<i64, Vec<usize>>,
}

impl GradingData {
    pub fn from_diagonal(n: usize, grader: &[Scalar]) -> Result<Self> {
        if grader.len() != n {
            return Err(QwkError::RankMismatch { left: n, right: grader.len() });
        }
        let mut degree = Vec::with_capacity(2 * n * n);
        let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for k in 0..2 * n * n {
            let g = Gen::from_index(k, n);
            let v = &grader[g.i] - &grader[g.j];
            let d = v.to_i64().filter(|_| v.is_integer()).ok_or_else(|| QwkError::NonIntegralGrading(v.to_string()))?;
            degree.push(d);
            blocks.entry(d).or_default().push(k);
        }
        Ok(GradingData { n, grader: grader.to_vec(), degree, blocks })
    }

    pub fn from_element(h: &GElement) -> Result<Self> {
        let d = h.as_even_diagonal().ok_or_else(|| QwkError::Invalid("grader must be an even diagonal element".into()))?;
        Self::from_diagonal(h.n(), &d)
    }

    pub fn block(&self, i: i64) -> &[usize] {
        self.blocks.get(&i).map_or(&[], |v| v.as_slice())
    }

    pub fn max_degree(&self) -> i64 {
        self.blocks.keys().next_back().copied().unwrap_or(0)
    }

    /// Kazhdan degree of a generator: eigenvalue + 2.
    pub fn kazhdan(&self, idx: usize) -> i64 {
        self.degree[idx] + 2
    }

    /// Degree of a homogeneous vector, `None` if it mixes degrees.
    pub fn degree_of(&self, v: &SparseVec<Scalar>) -> Option<i64> {
        let mut it = v.iter().map(|(k, _)| self.degree[*k]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// An sl(2)-triple `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h` in `g_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub e: GElement,
    pub h: GElement,
    pub f: GElement,
}

fn even_part(q: &Qn, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
    let nn = q.n() * q.n();
    v.filter(|k| k < nn)
}

/// Completes an even nilpotent `e` to an sl(2)-triple by exact linear solves.
///
/// A diagonal `h` is preferred; otherwise any `h ∈ [e, g_0]` is used.
pub fn sl2_complete(q: &Qn, e: &GElement) -> Result<Sl2Triple> {
    if e.n() != q.n() {
        return Err(QwkError::RankMismatch { left: q.n(), right: e.n() });
    }
    if e.is_zero() {
        return Err(QwkError::Degenerate("e = 0".into()));
    }
    if e.parity() != Some(Parity::Even) {
        return Err(QwkError::Invalid("sl2_complete expects an even element".into()));
    }
    let n = q.n();
    let nn = n * n;
    let ev = e.coords();
    // x ↦ [e, x] and x ↦ [[e, x], e] on g_0
    let ad_e: Vec<SparseVec<Scalar>> = (0..nn).map(|b| q.bracket_vec(ev, &SparseVec::unit(b))).collect();
    let twice: Vec<SparseVec<Scalar>> = ad_e.iter().map(|c| q.bracket_vec(c, ev)).collect();
    let rhs = ev.scale(&Scalar::from_int(2));
    let h = {
        let off_diag = |c: &SparseVec<Scalar>| c.filter(|k| !Gen::from_index(k, n).is_diagonal()).reindex(|k| k + nn);
        let cols: Vec<SparseVec<Scalar>> = twice.iter().zip(&ad_e).map(|(t, a)| t.add(&off_diag(a))).collect();
        let diag_sys = SparseMatrix::from_cols(2 * nn, cols);
        let plain = SparseMatrix::from_cols(nn, twice.clone());
        let x = solve(&diag_sys, &rhs)
            .or_else(|| solve(&plain, &rhs))
            .ok_or_else(|| QwkError::NoSolution("no h with [h,e] = 2e in [e, g]; e is not nilpotent".into()))?;
        SparseMatrix::from_cols(nn, ad_e.clone()).apply(&x)
    };
    // f: [e, f] = h and [h, f] + 2f = 0
    let ad_h: Vec<SparseVec<Scalar>> = (0..nn).map(|b| even_part(q, &q.bracket_vec(&h, &SparseVec::unit(b)))).collect();
    let cols: Vec<SparseVec<Scalar>> = (0..nn)
        .map(|b| {
            let lower = ad_h[b].add(&SparseVec::unit(b).scale(&Scalar::from_int(2))).reindex(|k| k + nn);
            even_part(q, &ad_e[b]).add(&lower)
        })
        .collect();
    let sys = SparseMatrix::from_cols(2 * nn, cols);
    let f = solve(&sys, &h).ok_or_else(|| QwkError::NoSolution("no f completing the triple".into()))?;
    Ok(Sl2Triple { e: e.clone(), h: GElement::from_vec(n, h), f: GElement::from_vec(n, f) })
}

impl Sl2Triple {
    /// Exact check of the three relations.
    pub fn verify(&self, q: &Qn) -> bool {
        let br = |a: &GElement, b: &GElement| q.bracket(a, b).expect("rank checked");
        br(&self.h, &self.e) == self.e.scale(&Scalar::from_int(2))
            && br(&self.h, &self.f) == self.f.scale(&Scalar::from_int(-2))
            && br(&self.e, &self.f) == self.h
    }
}

/// Parity-split basis of a centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Centralizer {
    pub even: Vec<GElement>,
    pub odd: Vec<GElement>,
}

impl Centralizer {
    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn all(&self) -> impl Iterator<Item = &GElement> {
        self.even.iter().chain(&self.odd)
    }
}

/// `{y | [x, y] = 0}` for homogeneous `x`, restricted to `span(within)`.
pub fn centralizer_in(q: &Qn, x: &GElement, within: &[usize]) -> Result<Centralizer> {
    if x.n() != q.n() {
        return Err(QwkError::RankMismatch { left: q.n(), right: x.n() });
    }
    if !x.is_homogeneous() {
        return Err(QwkError::NotHomogeneous);
    }
    let n = q.n();
    let mut out = Centralizer { even: vec![], odd: vec![] };
    for parity in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = within.iter().copied().filter(|&k| q.parity(k) == parity).collect();
        let cols: Vec<SparseVec<Scalar>> = idx.iter().map(|&b| q.bracket_vec(x.coords(), &SparseVec::unit(b))).collect();
        let m = SparseMatrix::from_cols(q.dim(), cols);
        for v in nullspace(&m.rows(), idx.len()) {
            let el = GElement::from_vec(n, v.reindex(|k| idx[k]));
            match parity {
                Parity::Even => out.even.push(el),
                Parity::Odd => out.odd.push(el),
            }
        }
    }
    Ok(out)
}

pub fn centralizer(q: &Qn, x: &GElement) -> Result<Centralizer> {
    centralizer_in(q, x, &(0..q.dim()).collect::<Vec<_>>())
}

/// A subalgebra spanned by a subset of the basis of q(n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubAlgebra {
    pub n: usize,
    pub basis: Vec<usize>,
}

impl SubAlgebra {
    pub fn full(n: usize) -> Self {
        SubAlgebra { n, basis: (0..2 * n * n).collect() }
    }

    /// `q(n_1) ⊕ ⋯ ⊕ q(n_k)` for a partition of `{0..n−1}` into blocks.
    pub fn block_diagonal(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut block_of = vec![usize::MAX; n];
        for (b, set) in blocks.iter().enumerate() {
            for &i in set {
                block_of[i] = b;
            }
        }
        let basis = (0..2 * n * n)
            .filter(|&k| {
                let g = Gen::from_index(k, n);
                block_of[g.i] == block_of[g.j]
            })
            .collect();
        SubAlgebra { n, basis }
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.basis.binary_search(&idx).is_ok()
    }

    pub fn is_closed(&self, q: &Qn) -> bool {
        self.basis.iter().all(|&a| self.basis.iter().all(|&b| q.bracket_basis(a, b).iter().all(|(k, _)| self.contains(*k))))
    }

    /// Center, as a basis of homogeneous elements.
    pub fn center(&self, q: &Qn) -> Vec<GElement> {
        let mut out = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            let idx: Vec<usize> = self.basis.iter().copied().filter(|&k| q.parity(k) == parity).collect();
            // rows: for each b in the subalgebra and each output coordinate
            let mut blocks = Vec::new();
            for &b in &self.basis {
                let cols = idx.iter().map(|&a| q.bracket_vec(&SparseVec::unit(a), &SparseVec::unit(b))).collect();
                blocks.push(SparseMatrix::from_cols(q.dim(), cols));
            }
            let refs: Vec<&SparseMatrix<Scalar>> = blocks.iter().collect();
            let m = SparseMatrix::vstack(&refs);
            for v in nullspace(&m.rows(), idx.len()) {
                out.push(GElement::from_vec(q.n(), v.reindex(|k| idx[k])));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::build_qn;

    fn d(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn gl2_triple() {
        let q = build_qn(2).unwrap();
        let t = sl2_complete(&q, &q.parse("e(1,2)").unwrap()).unwrap();
        assert_eq!(t.h, GElement::diagonal(2, &d(&[1, -1])));
        assert_eq!(t.f, q.parse("e(2,1)").unwrap());
        assert!(t.verify(&q));
    }

    #[test]
    fn principal_gl3_triple() {
        let q = build_qn(3).unwrap();
        let t = sl2_complete(&q, &q.parse("e(1,2) + e(2,3)").unwrap()).unwrap();
        assert_eq!(t.h, GElement::diagonal(3, &d(&[2, 0, -2])));
        assert!(t.verify(&q));
    }

    #[test]
    fn triple_for_non_regular_shape() {
        // e(1,2) + e(2,3) + e(1,3) is conjugate to the principal nilpotent but
        // admits no diagonal h
        let q = build_qn(3).unwrap();
        let t = sl2_complete(&q, &q.parse("e(1,2) + e(2,3) + e(1,3)").unwrap()).unwrap();
        assert!(t.verify(&q));
    }

    #[test]
    fn triple_errors() {
        let q = build_qn(2).unwrap();
        assert!(matches!(sl2_complete(&q, &GElement::zero(2)), Err(QwkError::Degenerate(_))));
        assert!(matches!(sl2_complete(&q, &q.parse("e(1,1)").unwrap()), Err(QwkError::NoSolution(_))));
        assert!(matches!(sl2_complete(&q, &GElement::e(3, 1, 2)), Err(QwkError::RankMismatch { .. })));
    }

    #[test]
    fn centralizers() {
        let q = build_qn(2).unwrap();
        let c = centralizer(&q, &q.parse("e(1,1)").unwrap()).unwrap();
        assert_eq!((c.even.len(), c.odd.len()), (2, 2));
        let c = centralizer(&q, &GElement::identity(2)).unwrap();
        assert_eq!(c.dim(), 8);
        let e = q.parse("f(1,2)").unwrap();
        let c = centralizer(&q, &e).unwrap();
        let rank = q.ad_matrix(e.coords()).rank();
        assert_eq!(c.dim(), 8 - rank);
        for y in c.all() {
            assert!(q.bracket(&e, y).unwrap().is_zero());
        }
        assert!(centralizer(&q, &q.parse("e(1,2) + f(1,2)").unwrap()).is_err());
    }

    #[test]
    fn grading_blocks() {
        let g = GradingData::from_diagonal(2, &d(&[1, -1])).unwrap();
        assert_eq!(g.block(2).len(), 2);
        assert_eq!(g.block(-2).len(), 2);
        assert_eq!(g.block(0).len(), 4);
        assert!(GradingData::from_diagonal(2, &[Scalar::new(1, 2), Scalar::zero()]).is_err());
    }

    #[test]
    fn levi_center() {
        let q = build_qn(3).unwrap();
        let l = SubAlgebra::block_diagonal(3, &[vec![0, 1], vec![2]]);
        assert!(l.is_closed(&q));
        let z = l.center(&q);
        assert_eq!(z.len(), 2);
        assert_eq!(SubAlgebra::full(3).center(&q), vec![GElement::identity(3)]);
    }
}
