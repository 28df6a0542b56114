//! The queer Lie superalgebra q(n): basis, elements, structure constants and
//! the odd trace form.
//!
//! Basis generators are `e(i,j)` (even) and `f(i,j)` (odd), realized as the
//! 2n×2n block matrices `(E_ij, 0; 0, E_ij)` and `(0, E_ij; E_ij, 0)`.
//! Index layout: `e(i,j) ↦ i·n + j`, `f(i,j) ↦ n² + i·n + j` (0-based).

mod element;
pub mod grading;
pub mod matrix;
pub mod roots;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{QwkError, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

pub use element::{GElement, Gen, Parity};
pub use grading::{centralizer, sl2_complete, Centralizer, GradingData, Sl2Triple, SubAlgebra};
pub use roots::{dot_action, leq_order, levi_of_character, parabolic_from_grader, LeviDatum, NilCharacter, Parabolic, Perm, RootDatum, Weight};

/// Largest rank accepted by [`build_qn`].
pub const MAX_RANK: usize = 8;

/// Structure constants of q(n) together with the odd trace form on the basis.
#[derive(Debug)]
pub struct Qn {
    n: usize,
    table: Vec<SparseVec<Scalar>>,
    form: Vec<SparseVec<Scalar>>,
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<Qn>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Qn>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Structure table of q(n), built once per rank from the matrix model.
pub fn build_qn(n: usize) -> Result<Arc<Qn>> {
    build_qn_with_max(n, MAX_RANK)
}

pub fn build_qn_with_max(n: usize, max: usize) -> Result<Arc<Qn>> {
    if n == 0 || n > max {
        return Err(QwkError::RankOutOfRange { n, max });
    }
    let mut c = cache().lock().expect("structure cache poisoned");
    Ok(c.entry(n).or_insert_with(|| Arc::new(Qn::from_matrices(n))).clone())
}

impl Qn {
    fn from_matrices(n: usize) -> Self {
        let dim = 2 * n * n;
        let mats: Vec<_> = (0..dim).map(|a| matrix::basis_matrix(Gen::from_index(a, n), n)).collect();
        let mut table = Vec::with_capacity(dim * dim);
        let mut form = Vec::with_capacity(dim);
        for a in 0..dim {
            let pa = Gen::from_index(a, n).parity();
            let mut frow = Vec::new();
            for b in 0..dim {
                let pb = Gen::from_index(b, n).parity();
                let ab = matrix::product(&mats[a], &mats[b], 2 * n);
                let ba = matrix::product(&mats[b], &mats[a], 2 * n);
                let s = pa.sign_with(pb);
                let m: Vec<Vec<i64>> = ab.iter().zip(&ba).map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - s * y).collect()).collect();
                let el = matrix::decompose(&m, n).expect("supercommutator leaves q(n)");
                table.push(el);
                let otr: i64 = (0..n).map(|i| ab[i][n + i]).sum();
                if otr != 0 {
                    frow.push((b, Scalar::from_int(otr)));
                }
            }
            form.push(SparseVec::from_pairs(frow));
        }
        Qn { n, table, form }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn gen(&self, idx: usize) -> Gen {
        Gen::from_index(idx, self.n)
    }

    pub fn parity(&self, idx: usize) -> Parity {
        self.gen(idx).parity()
    }

    pub fn index(&self, g: Gen) -> usize {
        g.index(self.n)
    }

    /// `[b_a, b_b]` as a coordinate vector.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec<Scalar> {
        &self.table[a * self.dim() + b]
    }

    pub fn bracket_vec(&self, x: &SparseVec<Scalar>, y: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut pairs = Vec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let c = ca * cb;
                for (k, v) in self.bracket_basis(*a, *b).iter() {
                    pairs.push((*k, v * &c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn bracket(&self, x: &GElement, y: &GElement) -> Result<GElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GElement::from_vec(self.n, self.bracket_vec(x.coords(), y.coords())))
    }

    fn check(&self, x: &GElement) -> Result<()> {
        if x.n() != self.n {
            return Err(QwkError::RankMismatch { left: self.n, right: x.n() });
        }
        Ok(())
    }

    /// `(b_a | b_b)`.
    pub fn form_basis(&self, a: usize, b: usize) -> Scalar {
        self.form[a].get(b)
    }

    pub fn form_vec(&self, x: &SparseVec<Scalar>, y: &SparseVec<Scalar>) -> Scalar {
        x.iter().map(|(a, ca)| ca * &self.form[*a].dot(y)).sum()
    }

    pub fn odd_form(&self, x: &GElement, y: &GElement) -> Result<Scalar> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.form_vec(x.coords(), y.coords()))
    }

    /// Matrix of `ad x` on the full basis (column `b` is `[x, b_b]`).
    pub fn ad_matrix(&self, x: &SparseVec<Scalar>) -> SparseMatrix<Scalar> {
        let cols = (0..self.dim()).map(|b| self.bracket_vec(x, &SparseVec::unit(b))).collect();
        SparseMatrix::from_cols(self.dim(), cols)
    }

    pub fn element(&self, v: SparseVec<Scalar>) -> GElement {
        GElement::from_vec(self.n, v)
    }

    pub fn basis_element(&self, idx: usize) -> GElement {
        GElement::from_vec(self.n, SparseVec::unit(idx))
    }

    pub fn parse(&self, s: &str) -> Result<GElement> {
        GElement::parse(s, self.n)
    }
}

/// `[x, y]` using the cached structure table.
pub fn bracket(x: &GElement, y: &GElement) -> Result<GElement> {
    if x.n() != y.n() {
        return Err(QwkError::RankMismatch { left: x.n(), right: y.n() });
    }
    build_qn(x.n())?.bracket(x, y)
}

/// The parity-reversing map `e(i,j) ↔ f(i,j)`.
pub fn parity_reverse(x: &GElement) -> GElement {
    let n = x.n();
    let nn = n * n;
    GElement::from_vec(n, x.coords().reindex(|k| if k < nn { k + nn } else { k - nn }))
}

/// The odd trace form `(x|y) = otr(xy)`.
pub fn odd_form(x: &GElement, y: &GElement) -> Result<Scalar> {
    if x.n() != y.n() {
        return Err(QwkError::RankMismatch { left: x.n(), right: y.n() });
    }
    build_qn(x.n())?.odd_form(x, y)
}
