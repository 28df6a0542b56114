//! Irreducible modules `u(λ)` of the Cartan subalgebra and their projective
//! covers over the weight-`λ` Clifford quotient.

use serde::{Deserialize, Serialize};

use crate::linalg::{nullspace, Field, SparseMatrix, SparseVec};
use crate::superalgebra::Weight;
use crate::surd::Surd;

/// Size of the endomorphism superalgebra of a simple module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleType {
    M,
    Q,
}

/// Whether the tensor product of two simple modules stays simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TensorOutcome {
    Simple,
    Doubled,
}

/// `V_a ⊠ V_b` is simple unless both factors are of type Q, in which case it
/// is `V ⊕ V` for a simple `V`.
pub fn simple_tensor_type(a: ModuleType, b: ModuleType) -> TensorOutcome {
    match (a, b) {
        (ModuleType::Q, ModuleType::Q) => TensorOutcome::Doubled,
        _ => TensorOutcome::Simple,
    }
}

/// A finite-dimensional module over the odd Cartan `h̄_1, …, h̄_n` with
/// `h̄_i h̄_j + h̄_j h̄_i = 2 δ_ij λ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordModule {
    pub lambda: Weight,
    /// Number of nonzero coordinates of `λ`.
    pub k: usize,
    pub dim: usize,
    /// Parity of each basis vector (`true` = odd).
    pub parity: Vec<bool>,
    /// Action of `h̄_i = f(i,i)`.
    pub hbar: Vec<SparseMatrix<Surd>>,
    /// Spin pairs of nonzero coordinates (0-based), in construction order.
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Option<usize>,
    /// Degenerate coordinates carried by a free Grassmann factor (projective
    /// cover only).
    pub grassmann: Vec<usize>,
}

/// Graded tensor product builder: operators of earlier factors act as
/// `X ⊗ 1`, a new odd operator `Y` acts as `P ⊗ Y` with `P` the parity.
struct Builder {
    dim: usize,
    parity: Vec<bool>,
    ops: Vec<SparseMatrix<Surd>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { dim: 1, parity: vec![false], ops: vec![SparseMatrix::zeros(1, 1); n] }
    }

    /// Tensors with a `1|1` factor; `new_ops` lists (coordinate, 2×2 odd matrix).
    fn factor(&mut self, new_ops: &[(usize, SparseMatrix<Surd>)]) {
        let dim = self.dim * 2;
        let idx = |a: usize, b: usize| 2 * a + b;
        let id2 = SparseMatrix::<Surd>::identity(2);
        for op in self.ops.iter_mut() {
            *op = kron(op, &id2);
        }
        let sign = SparseMatrix::from_cols(
            self.dim,
            (0..self.dim).map(|a| SparseVec::from_pairs([(a, if self.parity[a] { Surd::from(-1) } else { Surd::one() })])).collect(),
        );
        for (i, y) in new_ops {
            self.ops[*i] = kron(&sign, y);
        }
        let mut parity = vec![false; dim];
        for a in 0..self.dim {
            for b in 0..2 {
                parity[idx(a, b)] = self.parity[a] ^ (b == 1);
            }
        }
        self.dim = dim;
        self.parity = parity;
    }
}

fn kron(a: &SparseMatrix<Surd>, b: &SparseMatrix<Surd>) -> SparseMatrix<Surd> {
    let (bn, bm) = (b.nrows, b.ncols());
    let mut cols = Vec::with_capacity(a.ncols() * bm);
    for ja in 0..a.ncols() {
        for jb in 0..bm {
            let mut pairs = Vec::new();
            for (ia, x) in a.cols[ja].iter() {
                for (ib, y) in b.cols[jb].iter() {
                    pairs.push((ia * bn + ib, x * y));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
    }
    SparseMatrix::from_cols(a.nrows * bn, cols)
}

/// `2×2` matrix with `M e_0 = c0 e_1`, `M e_1 = c1 e_0`.
fn odd2(c0: Surd, c1: Surd) -> SparseMatrix<Surd> {
    SparseMatrix::from_cols(2, vec![SparseVec::from_pairs([(1, c0)]), SparseVec::from_pairs([(0, c1)])])
}

impl CliffordModule {
    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn module_type(&self) -> ModuleType {
        if self.grassmann.is_empty() && self.k % 2 == 1 {
            ModuleType::Q
        } else {
            ModuleType::M
        }
    }

    /// `h̄_i h̄_j + h̄_j h̄_i = 2 δ_ij λ_i` on the constructed matrices.
    pub fn check_relations(&self) -> bool {
        let n = self.n();
        let id = SparseMatrix::<Surd>::identity(self.dim);
        (0..n).all(|i| {
            (i..n).all(|j| {
                let ac = self.hbar[i].mul(&self.hbar[j]).add_scaled(&self.hbar[j].mul(&self.hbar[i]), &Surd::one());
                let expect =
                    if i == j { id.scale(&Surd::from(&self.lambda.0[i] + &self.lambda.0[i])) } else { SparseMatrix::zeros(self.dim, self.dim) };
                ac == expect
            })
        })
    }

    /// Operators preserve (`even`) or swap (`odd`) parity as required.
    pub fn check_parity(&self) -> bool {
        self.hbar.iter().all(|m| m.cols.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| self.parity[*i] != self.parity[j])))
    }

    /// Dimensions `(even, odd)` of the supercommutant of the `h̄_i`, by brute
    /// force over all homogeneous matrices.
    pub fn commutant_dims(&self) -> (usize, usize) {
        let d = self.dim;
        let mut out = [0usize; 2];
        for (p, slot) in out.iter_mut().enumerate() {
            let odd = p == 1;
            // unknown X[r][c] with parity(r) = parity(c) + p
            let unknowns: Vec<(usize, usize)> =
                (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).filter(|&(r, c)| (self.parity[r] ^ self.parity[c]) == odd).collect();
            let col_of = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
            let sign = if odd { Surd::from(-1) } else { Surd::one() };
            let mut rows: Vec<SparseVec<Surd>> = Vec::new();
            for h in &self.hbar {
                // (X h − sign · h X)[r][c] = Σ_k X[r][k] h[k][c] − sign h[r][k] X[k][c]
                for r in 0..d {
                    for c in 0..d {
                        let mut pairs = Vec::new();
                        for (k, v) in h.cols[c].iter() {
                            if let Some(u) = col_of(r, *k) {
                                pairs.push((u, v.clone()));
                            }
                        }
                        for k in 0..d {
                            let v = h.get(r, k);
                            if !v.is_zero() {
                                if let Some(u) = col_of(k, c) {
                                    pairs.push((u, (&sign * &v).neg()));
                                }
                            }
                        }
                        let row = SparseVec::from_pairs(pairs);
                        if !row.is_zero() {
                            rows.push(row);
                        }
                    }
                }
            }
            *slot = nullspace(&rows, unknowns.len()).len();
        }
        (out[0], out[1])
    }
}

fn build(lambda: &Weight, cover: bool) -> CliffordModule {
    let n = lambda.n();
    let nonzero: Vec<usize> = (0..n).filter(|&i| !lambda.0[i].is_zero()).collect();
    let degenerate: Vec<usize> = (0..n).filter(|&i| lambda.0[i].is_zero()).collect();
    let mut b = Builder::new(n);
    let mut pairs = Vec::new();
    for ch in nonzero.chunks(2) {
        let a = ch[0];
        let la = Surd::from(lambda.0[a].clone());
        let x = odd2(Surd::one(), la.clone());
        if let [_, c] = *ch {
            // z² = −λ_c / λ_a gives B² = −λ_a z² = λ_c and AB + BA = 0
            let z = Surd::sqrt(&(-(&lambda.0[c] / &lambda.0[a])));
            let y = odd2(z.clone(), (&la * &z).neg());
            b.factor(&[(a, x), (c, y)]);
            pairs.push((a, c));
        } else {
            b.factor(&[(a, x)]);
        }
    }
    let unpaired = (nonzero.len() % 2 == 1).then(|| *nonzero.last().unwrap());
    let grassmann = if cover { degenerate } else { Vec::new() };
    for &i in &grassmann {
        b.factor(&[(i, odd2(Surd::one(), Surd::zero()))]);
    }
    CliffordModule { lambda: lambda.clone(), k: nonzero.len(), dim: b.dim, parity: b.parity, hbar: b.ops, pairs, unpaired, grassmann }
}

/// The irreducible module `u(λ)`: one spin factor per pair of nonzero
/// coordinates (paired greedily in index order), one `1|1` factor for a
/// leftover coordinate; degenerate `h̄_i` act by zero. `dim = 2^{⌈k/2⌉}`.
pub fn clifford_module(lambda: &Weight) -> CliffordModule {
    build(lambda, false)
}

/// Projective cover `û(λ)` over `Cl(nondegenerate) ⊗ Λ(degenerate)`: `u(λ)`
/// tensored with the regular module of the Grassmann factor.
pub fn projective_cover_h(lambda: &Weight) -> CliffordModule {
    build(lambda, true)
}

/// `2^{⌈k/2⌉}` for `k` nonzero coordinates.
pub fn expected_dim(lambda: &Weight) -> usize {
    1 << lambda.support_size().div_ceil(2)
}
