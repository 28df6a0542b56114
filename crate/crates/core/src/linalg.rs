//! Sparse exact linear algebra: vectors, column-major matrices, echelon forms
//! and nullspaces over any exact field.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{Debug, Display};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::surd::Surd;

/// An exact field.
pub trait Field: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_scalar(q: &Scalar) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_scalar(&Scalar::from_int(v))
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Scalar::inv(self)
    }
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
}

impl Field for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Surd::inv(self)
    }
    fn from_scalar(q: &Scalar) -> Self {
        Surd::from(q.clone())
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Debug> Debug for SparseVec<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut map: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            match map.get_mut(&i) {
                Some(x) => *x = x.add(&v),
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, other.entries[b].1.mul(c)));
                b += 1;
            } else {
                let v = self.entries[a].1.add(&other.entries[b].1.mul(c));
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    pub fn dot(&self, other: &Self) -> F {
        let (mut a, mut b) = (0, 0);
        let mut acc = F::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = acc.add(&self.entries[a].1.mul(&other.entries[b].1));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Keeps only indices accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Applies an index relabeling (must be injective on the support).
    pub fn reindex(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Incremental echelon basis of a subspace.
///
/// Rows are kept with a unit leading coefficient; rows are not back-reduced,
/// so the form is only semi-reduced. Membership and rank queries are exact.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<SparseVec<F>>,
    pivot_of: HashMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap())
    }

    /// Residue of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut cur = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = cur.entries.iter().find(|(i, _)| *i >= cursor).map(|(i, c)| (*i, c.clone()));
            let Some((i, c)) = next else { break };
            if let Some(&r) = self.pivot_of.get(&i) {
                cur = cur.add_scaled(&self.rows[r], &c.neg());
            }
            cursor = i + 1;
        }
        cur
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let Some(lead) = r.leading() else { return false };
        let inv = r.entries[0].1.inv();
        let r = r.scale(&inv);
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// Fully reduced row echelon form of `rows`, with the pivot column per row.
pub fn rref<F: Field>(rows: &[SparseVec<F>]) -> (Vec<SparseVec<F>>, Vec<usize>) {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let mut order: Vec<usize> = (0..ech.rows.len()).collect();
    order.sort_by_key(|&i| ech.rows[i].leading().unwrap());
    let mut out: Vec<SparseVec<F>> = order.iter().map(|&i| ech.rows[i].clone()).collect();
    let pivots: Vec<usize> = out.iter().map(|r| r.leading().unwrap()).collect();
    let pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    // back substitution, bottom up
    for k in (0..out.len()).rev() {
        // rows below k are already reduced, so one pass over the pivots suffices
        let mut row = out[k].clone();
        let targets: Vec<usize> = row.entries.iter().skip(1).map(|e| e.0).filter(|i| pos.contains_key(i)).collect();
        for i in targets {
            let c = row.get(i);
            if !c.is_zero() {
                row = row.add_scaled(&out[pos[&i]], &c.neg());
            }
        }
        out[k] = row;
    }
    (out, pivots)
}

/// Basis of `{x : row·x = 0 for every row}` in a space of dimension `ncols`.
///
/// One basis vector per free column, normalized to 1 there.
pub fn nullspace<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    let (red, pivots) = rref(rows);
    let is_pivot: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !is_pivot.contains_key(c)) {
        let mut pairs = vec![(free, F::one())];
        for (k, &p) in pivots.iter().enumerate() {
            let c = red[k].get(free);
            if !c.is_zero() {
                pairs.push((p, c.neg()));
            }
        }
        out.push(SparseVec::from_pairs(pairs));
    }
    out
}

/// Some solution of `A x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve<F: Field>(a: &SparseMatrix<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    let ncols = a.ncols();
    let mut rows = a.rows();
    rows.resize(a.nrows.max(b.max_index().map_or(0, |m| m + 1)), SparseVec::new());
    for (i, v) in b.iter() {
        rows[*i] = rows[*i].add(&SparseVec::from_pairs([(ncols, v.clone())]));
    }
    let (red, pivots) = rref(&rows);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    Some(SparseVec::from_pairs(pivots.iter().zip(&red).map(|(&p, r)| (p, r.get(ncols)))))
}

pub fn rank<F: Field>(vectors: &[SparseVec<F>]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    pub nrows: usize,
    pub cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec<F>>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols).map(|j| SparseVec::from_pairs((0..nrows).map(|i| (i, rows[i][j].clone())))).collect();
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out = out.add_scaled(&self.cols[*j], c);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows, "shape mismatch");
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()), "shape mismatch");
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(b, c)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn rows(&self) -> Vec<SparseVec<F>> {
        let mut acc: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                acc[*i].push((j, v.clone()));
            }
        }
        acc.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix { nrows: self.ncols(), cols: self.rows() }
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }

    /// Kernel of the matrix as vectors in the column space.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        nullspace(&self.rows(), self.ncols())
    }

    /// Stacks matrices with equal column count vertically.
    pub fn vstack(blocks: &[&Self]) -> Self {
        let ncols = blocks.first().map_or(0, |b| b.ncols());
        let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); ncols];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.ncols(), ncols, "shape mismatch");
            for (j, col) in b.cols.iter().enumerate() {
                cols[j].extend(col.iter().map(|(i, v)| (i + offset, v.clone())));
            }
            offset += b.nrows;
        }
        SparseMatrix { nrows: offset, cols: cols.into_iter().map(|entries| SparseVec { entries }).collect() }
    }
}

/// `{"rows","cols","entries":[[i,j,"q"]]}` export of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn to_triplets(&self) -> Triplets {
        let mut entries = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                entries.push((*i, j, v.to_string()));
            }
        }
        entries.sort_by_key(|(i, j, _)| (*i, *j));
        Triplets { rows: self.nrows, cols: self.ncols(), entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec<Scalar> {
        SparseVec::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn nullspace_of_rank_two_matrix() {
        let rows = [v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, 1, 0])];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for n in &ns {
            for r in &rows {
                assert!(r.dot(n).is_zero());
            }
        }
        assert_eq!(rank(&ns), 2);
    }

    #[test]
    fn rref_is_reduced() {
        let rows = [v(&[0, 2, 4, 1]), v(&[1, 1, 1, 1]), v(&[1, 3, 5, 2])];
        let (red, piv) = rref(&rows);
        assert_eq!(piv, vec![0, 1]);
        for (k, r) in red.iter().enumerate() {
            for (k2, &p) in piv.iter().enumerate() {
                let want = if k == k2 { Scalar::one() } else { Scalar::zero() };
                assert_eq!(r.get(p), want);
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = SparseMatrix::from_dense(&[vec![Scalar::from_int(1), Scalar::from_int(1)], vec![Scalar::from_int(2), Scalar::from_int(2)]]);
        let x = solve(&a, &v(&[3, 6])).unwrap();
        assert_eq!(a.apply(&x), v(&[3, 6]));
        assert!(solve(&a, &v(&[3, 5])).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 2, 1])));
        assert!(e.contains(&v(&[2, 0, -2])));
        assert!(!e.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn matrix_product_and_kernel() {
        let a = SparseMatrix::from_dense(&[vec![Scalar::from_int(1), Scalar::from_int(2)], vec![Scalar::from_int(2), Scalar::from_int(4)]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).is_zero());
        let id = SparseMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
