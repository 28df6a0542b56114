//! Truncated induced modules `U(g) ⊗_{U(k)} V` realized on `U(c) ⊗ V` for a
//! complement `c` of the inducing subalgebra `k = l ⊕ u`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::character::Character;
use super::clifford::{clifford_module, projective_cover_h, CliffordModule};
use crate::error::{QwkError, Result};
use crate::linalg::{nullspace, Field, SparseMatrix, SparseVec, Triplets};
use crate::pbw::{Enveloping, PBWMonomial};
use crate::scalar::Scalar;
use crate::superalgebra::roots::{parabolic_from_grader, root_vector};
use crate::superalgebra::{build_qn, GElement, Gen, Qn, Weight};
use crate::surd::Surd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Verma,
    N,
    Parabolic,
    InducedFromEven,
    /// Module over the even part only (odd generators carry no action).
    EvenVerma,
    /// A finite-dimensional module given by explicit matrices.
    Finite,
}

/// `M(λ)` uses `u(λ)`, `N(λ)` uses the projective cover `û(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VermaVariant {
    Verma,
    N,
}

/// A finite-dimensional module over the subalgebra spanned by `levi`, given
/// by action matrices on a weight basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceModule {
    pub n: usize,
    pub parity: Vec<bool>,
    pub weights: Vec<Weight>,
    /// Basis index of `g` ↦ action matrix.
    pub action: BTreeMap<usize, SparseMatrix<Surd>>,
}

impl SourceModule {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// `u(λ)` (or `û(λ)`) as a module over `h`: `h_i ↦ λ_i`, `h̄_i ↦` spin matrices.
    pub fn from_clifford(c: &CliffordModule) -> Self {
        let n = c.n();
        let mut action = BTreeMap::new();
        for i in 0..n {
            action.insert(Gen::e(i, i).index(n), SparseMatrix::identity(c.dim).scale(&Surd::from(c.lambda.0[i].clone())));
            action.insert(Gen::f(i, i).index(n), c.hbar[i].clone());
        }
        SourceModule { n, parity: c.parity.clone(), weights: vec![c.lambda.clone(); c.dim], action }
    }

    /// The one-dimensional trivial module of the subalgebra `levi`.
    pub fn trivial(n: usize, levi: &[usize]) -> Self {
        let action = levi.iter().map(|&k| (k, SparseMatrix::zeros(1, 1))).collect();
        SourceModule { n, parity: vec![false], weights: vec![Weight::zero(n)], action }
    }

    /// Extends an `h`-module to `levi` with all root vectors acting by zero.
    pub fn extend_by_zero(&self, levi: &[usize]) -> Self {
        let mut out = self.clone();
        for &k in levi {
            out.action.entry(k).or_insert_with(|| SparseMatrix::zeros(self.dim(), self.dim()));
        }
        out
    }

    /// `ρ([x,y]) = ρ(x)ρ(y) − (−1)^{|x||y|} ρ(y)ρ(x)` for all `x, y ∈ levi`.
    pub fn check_brackets(&self, q: &Qn, levi: &[usize]) -> Result<()> {
        let d = self.dim();
        for &k in levi {
            if !self.action.contains_key(&k) {
                return Err(QwkError::RelationCheck(format!("no action given for {}", q.gen(k))));
            }
        }
        for &a in levi {
            for &b in levi {
                let (x, y) = (&self.action[&a], &self.action[&b]);
                let sign = if q.parity(a).is_odd() && q.parity(b).is_odd() { Surd::one() } else { Surd::from(-1) };
                let lhs = x.mul(y).add_scaled(&y.mul(x), &sign);
                let mut rhs = SparseMatrix::zeros(d, d);
                for (c, v) in q.bracket_basis(a, b).iter() {
                    let m = self.action.get(c).ok_or_else(|| QwkError::RelationCheck(format!("levi not closed: {}", q.gen(*c))))?;
                    rhs = rhs.add_scaled(m, &Surd::from(v.clone()));
                }
                if lhs != rhs {
                    return Err(QwkError::RelationCheck(format!("[{}, {}] is not represented", q.gen(a), q.gen(b))));
                }
            }
        }
        Ok(())
    }
}

/// Split of the basis for an induction: free complement generators (with a
/// positive truncation weight, zero allowed for odd ones), generators acting
/// through the source module, and generators acting by zero on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionData {
    pub complement: Vec<(usize, i64)>,
    pub levi: Vec<usize>,
    pub nil: Vec<usize>,
}

/// A finite slice of an induced module: basis `monomial ⊗ v` of depth at most
/// `depth`, with action matrices for the generators.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    pub n: usize,
    pub top: Weight,
    pub depth: i64,
    pub provenance: Provenance,
    pub labels: Vec<(PBWMonomial, usize)>,
    pub parity: Vec<bool>,
    pub weights: Vec<Weight>,
    pub depths: Vec<i64>,
    /// Basis index of `g` ↦ action matrix; components beyond the depth are dropped.
    pub action: BTreeMap<usize, SparseMatrix<Surd>>,
    /// Number of basis vectors whose image under some generator left the truncation.
    pub leakage: usize,
    /// Per generator: basis vectors whose image left the truncation.
    pub leaks: BTreeMap<usize, Vec<bool>>,
    env: Option<Arc<Enveloping>>,
}

impl TruncatedModule {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        n: usize,
        top: Weight,
        depth: i64,
        provenance: Provenance,
        labels: Vec<(PBWMonomial, usize)>,
        parity: Vec<bool>,
        weights: Vec<Weight>,
        depths: Vec<i64>,
        action: BTreeMap<usize, SparseMatrix<Surd>>,
        leaks: BTreeMap<usize, Vec<bool>>,
    ) -> Self {
        let dim = parity.len();
        let leakage = (0..dim).filter(|&j| leaks.values().any(|l| l[j])).count();
        TruncatedModule { n, top, depth, provenance, labels, parity, weights, depths, action, leakage, leaks, env: None }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Basis indices per weight.
    pub fn slices(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(k);
        }
        out
    }

    /// Basis indices per depth.
    pub fn depth_slices(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = (0..=self.depth).map(|d| (d, Vec::new())).collect();
        for (k, &d) in self.depths.iter().enumerate() {
            out.entry(d).or_default().push(k);
        }
        out
    }

    pub fn character(&self) -> Character {
        let mut mult = BTreeMap::new();
        for w in &self.weights {
            *mult.entry(w.clone()).or_insert(0) += 1;
        }
        Character { depth: self.depth, mult }
    }

    pub fn action_of(&self, g: Gen) -> Option<&SparseMatrix<Surd>> {
        self.action.get(&g.index(self.n))
    }

    /// Human-readable label of a basis vector.
    pub fn label(&self, k: usize) -> String {
        let (m, v) = &self.labels[k];
        match &self.env {
            Some(env) if !m.is_unit() => format!("{}⊗v{}", env.monomial_to_string(m), v),
            _ => format!("v{v}"),
        }
    }

    /// Checks `ρ([x,y]) = ρ(x)ρ(y) ∓ ρ(y)ρ(x)` on every basis vector for
    /// which no intermediate image left the truncation; returns the number
    /// of (pair, vector) checks performed.
    pub fn check_brackets(&self) -> Result<usize> {
        let q = build_qn(self.n)?;
        let gens: Vec<usize> = self.action.keys().copied().collect();
        let leaks = |g: usize, j: usize| self.leaks.get(&g).is_some_and(|l| l[j]);
        let pairs: Vec<(usize, usize)> = gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect();
        let checks: Vec<Result<usize>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let brk = q.bracket_basis(a, b);
                if brk.iter().any(|(c, _)| !self.action.contains_key(c)) {
                    return Ok(0);
                }
                let sign = if q.parity(a).is_odd() && q.parity(b).is_odd() { Surd::one() } else { Surd::from(-1) };
                let (x, y) = (&self.action[&a], &self.action[&b]);
                let mut count = 0;
                for j in 0..self.dim() {
                    let v = SparseVec::unit(j);
                    let clean = |g: usize, w: &SparseVec<Surd>| w.iter().all(|(i, _)| !leaks(g, *i));
                    if leaks(a, j) || leaks(b, j) || brk.iter().any(|(c, _)| leaks(*c, j)) {
                        continue;
                    }
                    if !clean(a, &y.apply(&v)) || !clean(b, &x.apply(&v)) {
                        continue;
                    }
                    let lhs = x.apply(&y.apply(&v)).add_scaled(&y.apply(&x.apply(&v)), &sign);
                    let mut rhs = SparseVec::new();
                    for (c, val) in brk.iter() {
                        rhs = rhs.add_scaled(&self.action[c].apply(&v), &Surd::from(val.clone()));
                    }
                    if lhs != rhs {
                        return Err(QwkError::RelationCheck(format!("[{}, {}] fails on {}", q.gen(a), q.gen(b), self.label(j))));
                    }
                    count += 1;
                }
                Ok(count)
            })
            .collect();
        checks.into_iter().sum()
    }

    /// Block-diagonal direct sum (same rank, same provenance bookkeeping of `self`).
    pub fn direct_sum(&self, other: &TruncatedModule) -> Result<TruncatedModule> {
        if self.n != other.n {
            return Err(QwkError::RankMismatch { left: self.n, right: other.n });
        }
        let off = self.dim();
        let d = off + other.dim();
        let mut action = BTreeMap::new();
        for (k, a) in &self.action {
            let Some(b) = other.action.get(k) else { continue };
            let mut cols = a.cols.clone();
            cols.extend(b.cols.iter().map(|c| c.reindex(|i| i + off)));
            action.insert(*k, SparseMatrix::from_cols(d, cols));
        }
        let mut leaks = BTreeMap::new();
        for (k, a) in &self.leaks {
            if let Some(b) = other.leaks.get(k) {
                leaks.insert(*k, a.iter().chain(b).copied().collect());
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|(m, v)| (m.clone(), v + 1_000_000)));
        Ok(TruncatedModule {
            n: self.n,
            top: self.top.clone(),
            depth: self.depth.min(other.depth),
            provenance: self.provenance,
            labels,
            parity: self.parity.iter().chain(&other.parity).copied().collect(),
            weights: self.weights.iter().chain(&other.weights).cloned().collect(),
            depths: self.depths.iter().chain(&other.depths).copied().collect(),
            action,
            leakage: self.leakage + other.leakage,
            leaks,
            env: None,
        })
    }

    /// Nullspace of the stacked operators `(x − c_x)` over the listed
    /// (generator, scalar) pairs, restricted to the span of `domain`;
    /// image components in `ignore` rows are not constrained.
    pub(crate) fn joint_kernel(&self, ops: &[(usize, Surd)], domain: &[usize], constrained: impl Fn(usize) -> bool) -> Vec<SparseVec<Surd>> {
        let mut rows: Vec<SparseVec<Surd>> = Vec::new();
        for (g, c) in ops {
            let m = &self.action[g];
            let mut acc: BTreeMap<usize, Vec<(usize, Surd)>> = BTreeMap::new();
            for (col, &j) in domain.iter().enumerate() {
                let mut image = m.cols[j].clone();
                if !c.is_zero() {
                    image = image.add_scaled(&SparseVec::unit(j), &c.neg());
                }
                for (i, v) in image.iter() {
                    if constrained(*i) {
                        acc.entry(*i).or_default().push((col, v.clone()));
                    }
                }
            }
            rows.extend(acc.into_values().map(SparseVec::from_pairs));
        }
        nullspace(&rows, domain.len()).into_iter().map(|v| v.reindex(|c| domain[c])).collect()
    }

    pub fn to_json(&self, with_actions: bool) -> TruncatedModuleJson {
        TruncatedModuleJson {
            n: self.n,
            top: self.top.0.iter().map(|c| c.to_string()).collect(),
            depth: self.depth,
            provenance: self.provenance,
            dim: self.dim(),
            slices: self.slices().iter().map(|(w, v)| (w.0.iter().map(|c| c.to_string()).collect(), v.len())).collect(),
            leakage: self.leakage,
            actions: with_actions.then(|| self.action.iter().map(|(k, m)| (Gen::from_index(*k, self.n).to_string(), m.to_triplets())).collect()),
        }
    }
}

/// Documented export: weight slices and optional sparse-triplet actions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedModuleJson {
    pub n: usize,
    pub top: Vec<String>,
    pub depth: i64,
    pub provenance: Provenance,
    pub dim: usize,
    pub slices: Vec<(Vec<String>, usize)>,
    pub leakage: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actions: Option<BTreeMap<String, Triplets>>,
}

/// Complement monomials (over positions `0..c`) of total weight `≤ depth`.
fn enumerate_monomials(env: &Enveloping, weights: &[i64], depth: i64) -> Vec<(PBWMonomial, i64)> {
    fn rec(env: &Enveloping, w: &[i64], p: usize, budget: i64, used: i64, cur: &mut Vec<(u16, u16)>, out: &mut Vec<(PBWMonomial, i64)>) {
        if p == w.len() {
            out.push((PBWMonomial(cur.clone()), used));
            return;
        }
        rec(env, w, p + 1, budget, used, cur, out);
        let max = if env.is_odd_at(p) { 1 } else { u16::MAX };
        let mut k = 1u16;
        while k <= max && w[p] * k as i64 <= budget {
            cur.push((p as u16, k));
            rec(env, w, p + 1, budget - w[p] * k as i64, used + w[p] * k as i64, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(env, weights, 0, depth, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Induces `source` along `data`, truncated at `depth`. `acting` lists the
/// generators whose action is computed (all of `g` when `None`).
pub fn induce(
    q: Arc<Qn>,
    data: &InductionData,
    source: &SourceModule,
    depth: i64,
    provenance: Provenance,
    acting: Option<&[usize]>,
) -> Result<TruncatedModule> {
    let n = q.n();
    if depth < 0 {
        return Err(QwkError::Invalid("depth must be nonnegative".into()));
    }
    for &(k, w) in &data.complement {
        if w < 0 || (w == 0 && !q.parity(k).is_odd()) {
            return Err(QwkError::Invalid(format!("even complement generator {} needs positive depth", q.gen(k))));
        }
    }
    let c = data.complement.len();
    let lv = data.levi.len();
    let mut order: Vec<usize> = data.complement.iter().map(|p| p.0).collect();
    order.extend(&data.levi);
    order.extend(&data.nil);
    let env = Arc::new(Enveloping::new(q.clone(), order)?);
    let wts: Vec<i64> = data.complement.iter().map(|p| p.1).collect();
    let monos = enumerate_monomials(&env, &wts, depth);
    let dv = source.dim();
    let mut labels = Vec::new();
    let mut depths = Vec::new();
    for (m, d) in &monos {
        for v in 0..dv {
            labels.push((m.clone(), v));
            depths.push(*d);
        }
    }
    let index: HashMap<(PBWMonomial, usize), usize> = labels.iter().cloned().enumerate().map(|(k, l)| (l, k)).collect();
    let mono_weight = |m: &PBWMonomial| -> Vec<i64> {
        let mut w = vec![0i64; n];
        for &(p, k) in &m.0 {
            let r = root_vector(env.gen_at(p as usize), n);
            for i in 0..n {
                w[i] += r[i] * k as i64;
            }
        }
        w
    };
    let weights: Vec<Weight> = labels.iter().map(|(m, v)| source.weights[*v].shift(&mono_weight(m))).collect();
    let parity: Vec<bool> = labels.iter().map(|(m, v)| env.monomial_parity(m).is_odd() ^ source.parity[*v]).collect();
    let levi_mats: Vec<&SparseMatrix<Surd>> = data
        .levi
        .iter()
        .map(|k| source.action.get(k).ok_or_else(|| QwkError::Invalid(format!("source has no action for {}", q.gen(*k)))))
        .collect::<Result<_>>()?;
    let acting: Vec<usize> = acting.map(|a| a.to_vec()).unwrap_or_else(|| (0..q.dim()).collect());
    let dim = labels.len();
    let results: Vec<(usize, SparseMatrix<Surd>, Vec<bool>)> = acting
        .par_iter()
        .map(|&g| {
            let gp = env.position(g);
            let mut leaked = vec![false; dim];
            let mut cols = Vec::with_capacity(dim);
            for (col, (m, v)) in labels.iter().enumerate() {
                let prod = env.left_mul_gen(gp, m);
                let mut acc: Vec<(usize, Surd)> = Vec::new();
                for (mm, coef) in prod.terms() {
                    let (free, rest) = mm.split_at(c);
                    let (lpart, upart) = rest.split_at(c + lv);
                    if !upart.is_unit() {
                        continue;
                    }
                    // levi part acts on e_v, rightmost factor first
                    let mut vec = SparseVec::<Surd>::unit(*v);
                    for &(p, k) in lpart.0.iter().rev() {
                        let mat = levi_mats[p as usize - c];
                        for _ in 0..k {
                            vec = mat.apply(&vec);
                        }
                    }
                    let cf = Surd::from(coef.clone());
                    for (w, x) in vec.iter() {
                        match index.get(&(free.clone(), *w)) {
                            Some(&row) => acc.push((row, &cf * x)),
                            None => leaked[col] = true,
                        }
                    }
                }
                cols.push(SparseVec::from_pairs(acc));
            }
            (g, SparseMatrix::from_cols(dim, cols), leaked)
        })
        .collect();
    let mut any_leak = vec![false; dim];
    let mut action = BTreeMap::new();
    let mut leaks = BTreeMap::new();
    for (g, m, leaked) in results {
        for (a, b) in any_leak.iter_mut().zip(&leaked) {
            *a |= *b;
        }
        action.insert(g, m);
        leaks.insert(g, leaked);
    }
    let top = source.weights.first().cloned().unwrap_or_else(|| Weight::zero(n));
    Ok(TruncatedModule {
        n,
        top,
        depth,
        provenance,
        labels,
        parity,
        weights,
        depths,
        action,
        leakage: any_leak.iter().filter(|&&b| b).count(),
        leaks,
        env: Some(env),
    })
}

fn height(g: Gen) -> i64 {
    (g.i as i64 - g.j as i64).abs()
}

/// `h`, `n⁺`, `n⁻` of the standard triangular decomposition.
pub fn borel_data(n: usize) -> InductionData {
    let mut data = InductionData { complement: vec![], levi: vec![], nil: vec![] };
    for k in 0..2 * n * n {
        let g = Gen::from_index(k, n);
        match g.i.cmp(&g.j) {
            std::cmp::Ordering::Greater => data.complement.push((k, height(g))),
            std::cmp::Ordering::Equal => data.levi.push(k),
            std::cmp::Ordering::Less => data.nil.push(k),
        }
    }
    data
}

/// `M(λ)` or `N(λ)` truncated at depth `d`.
pub fn verma_truncation(lambda: &Weight, d: i64, variant: VermaVariant) -> Result<TruncatedModule> {
    let n = lambda.n();
    let q = build_qn(n)?;
    let (cm, prov) = match variant {
        VermaVariant::Verma => (clifford_module(lambda), Provenance::Verma),
        VermaVariant::N => (projective_cover_h(lambda), Provenance::N),
    };
    let src = SourceModule::from_clifford(&cm);
    induce(q, &borel_data(n), &src, d, prov, None)
}

/// `M^p(V)` for the parabolic `p = l ⊕ u` of the grader `H`, truncated at
/// depth `d` in the `u⁻`-monomials (root heights).
pub fn parabolic_induce(v: &SourceModule, h: &GElement, d: i64) -> Result<TruncatedModule> {
    let n = h.n();
    if v.n != n {
        return Err(QwkError::RankMismatch { left: n, right: v.n });
    }
    let q = build_qn(n)?;
    let p = parabolic_from_grader(h)?;
    v.check_brackets(&q, &p.l)?;
    let data = InductionData { complement: p.u_minus.iter().map(|&k| (k, height(q.gen(k)))).collect(), levi: p.l.clone(), nil: p.u.clone() };
    induce(q, &data, v, d, Provenance::Parabolic, None)
}

/// The `gl(n)` Verma module `M_0(λ)` truncated at depth `d`; only even
/// generators act.
pub fn even_verma_truncation(lambda: &Weight, d: i64) -> Result<TruncatedModule> {
    let n = lambda.n();
    let q = build_qn(n)?;
    let b = borel_data(n);
    let even = |k: &usize| !q.parity(*k).is_odd();
    let odd: Vec<usize> = (0..q.dim()).filter(|k| !even(k)).collect();
    let data = InductionData {
        complement: b.complement.iter().copied().filter(|(k, _)| even(k)).collect(),
        levi: b.levi.iter().copied().filter(even).collect(),
        nil: b.nil.iter().copied().filter(even).chain(odd).collect(),
    };
    let src = SourceModule {
        n,
        parity: vec![false],
        weights: vec![lambda.clone()],
        action: data.levi.iter().map(|&k| (k, SparseMatrix::identity(1).scale(&Surd::from(lambda.0[Gen::from_index(k, n).i].clone())))).collect(),
    };
    let acting: Vec<usize> = (0..q.dim()).filter(even).collect();
    induce(q, &data, &src, d, Provenance::EvenVerma, Some(&acting))
}

/// `Ind_{g_0}^{g} M_0(λ) = U(g) ⊗_{U(b_0)} ℂ_λ ≅ Λ(g_1) ⊗ M_0(λ)`; the even
/// part is truncated at the depth of `m0`, the exterior factor is kept whole.
pub fn induce_from_even(m0: &TruncatedModule, d: i64) -> Result<TruncatedModule> {
    if m0.provenance != Provenance::EvenVerma {
        return Err(QwkError::Invalid("induce_from_even expects an even Verma truncation".into()));
    }
    let n = m0.n;
    let d = d.min(m0.depth);
    let q = build_qn(n)?;
    let b = borel_data(n);
    let even = |k: &usize| !q.parity(*k).is_odd();
    let mut complement: Vec<(usize, i64)> = (0..q.dim()).filter(|k| !even(k)).map(|k| (k, 0)).collect();
    complement.extend(b.complement.iter().copied().filter(|(k, _)| even(k)));
    let data = InductionData { complement, levi: b.levi.iter().copied().filter(even).collect(), nil: b.nil.iter().copied().filter(even).collect() };
    let src = SourceModule {
        n,
        parity: vec![false],
        weights: vec![m0.top.clone()],
        action: data.levi.iter().map(|&k| (k, SparseMatrix::identity(1).scale(&Surd::from(m0.top.0[Gen::from_index(k, n).i].clone())))).collect(),
    };
    induce(q, &data, &src, d, Provenance::InducedFromEven, None)
}

/// `H`-eigenvalue split of an induced module, with the top value
/// `r = λ(H) + Σ_{odd x, α_x(H) > 0} α_x(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSplit {
    pub top: Scalar,
    pub dims: BTreeMap<Scalar, usize>,
}

pub fn h_eigen_split(m: &TruncatedModule, h: &[Scalar]) -> Result<EigenSplit> {
    let n = m.n;
    if h.len() != n {
        return Err(QwkError::RankMismatch { left: n, right: h.len() });
    }
    if h.windows(2).any(|w| w[0] < w[1]) {
        return Err(QwkError::Invalid("grader must be dominant (nonincreasing)".into()));
    }
    let val = |w: &Weight| -> Scalar { w.0.iter().zip(h).map(|(a, b)| a * b).sum() };
    let mut dims = BTreeMap::new();
    for w in &m.weights {
        *dims.entry(val(w)).or_insert(0) += 1;
    }
    let mut top = val(&m.top);
    for i in 0..n {
        for j in 0..n {
            let a = &h[i] - &h[j];
            if a.is_positive() {
                top += &a;
            }
        }
    }
    Ok(EigenSplit { top, dims })
}

/// Basis of `{v ∈ M_μ | n·v = 0}`: common kernel of `e(i,i+1)`, `f(i,i+1)`.
pub fn singular_vectors(m: &TruncatedModule, mu: &Weight) -> Result<Vec<SparseVec<Surd>>> {
    let slices = m.slices();
    let dom = slices.get(mu).ok_or(QwkError::OutsideTruncation)?;
    let n = m.n;
    let ops: Vec<(usize, Surd)> =
        (0..n.saturating_sub(1)).flat_map(|i| [Gen::e(i, i + 1), Gen::f(i, i + 1)]).map(|g| (g.index(n), Surd::zero())).collect();
    Ok(m.joint_kernel(&ops, dom, |_| true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn depth_dims(m: &TruncatedModule) -> Vec<usize> {
        m.depth_slices().values().map(|v| v.len()).collect()
    }

    #[test]
    fn verma_q2_slices() {
        let m = verma_truncation(&w(&[3, -3]), 3, VermaVariant::Verma).unwrap();
        assert_eq!(depth_dims(&m), vec![2, 4, 4, 4]);
        let m = verma_truncation(&w(&[1, 0]), 2, VermaVariant::Verma).unwrap();
        assert_eq!(depth_dims(&m), vec![2, 4, 4]);
        let m = verma_truncation(&w(&[1, 0]), 1, VermaVariant::N).unwrap();
        assert_eq!(depth_dims(&m), vec![4, 8]);
        let m = verma_truncation(&w(&[0, 0]), 0, VermaVariant::Verma).unwrap();
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn verma_brackets_hold() {
        let m = verma_truncation(&Weight(vec![Scalar::new(1, 2), Scalar::new(-2, 3)]), 3, VermaVariant::Verma).unwrap();
        assert!(m.check_brackets().unwrap() > 0);
        let m = verma_truncation(&w(&[1, 0, 2]), 2, VermaVariant::Verma).unwrap();
        assert!(m.check_brackets().unwrap() > 0);
        let m = verma_truncation(&w(&[1, 0]), 2, VermaVariant::N).unwrap();
        assert!(m.check_brackets().unwrap() > 0);
    }

    #[test]
    fn top_is_singular() {
        let l = w(&[2, -1]);
        let m = verma_truncation(&l, 2, VermaVariant::Verma).unwrap();
        assert_eq!(singular_vectors(&m, &l).unwrap().len(), 2);
        assert!(matches!(singular_vectors(&m, &w(&[9, 9])), Err(QwkError::OutsideTruncation)));
    }

    #[test]
    fn parabolic_with_cartan_levi_is_verma() {
        let l = w(&[1, -2]);
        let src = SourceModule::from_clifford(&clifford_module(&l));
        let h = GElement::diagonal(2, &[Scalar::from_int(1), Scalar::zero()]);
        let p = parabolic_induce(&src, &h, 3).unwrap();
        let v = verma_truncation(&l, 3, VermaVariant::Verma).unwrap();
        assert_eq!(p.character(), v.character());
        assert_eq!(p.labels, v.labels);
        assert_eq!(p.action, v.action);
    }

    #[test]
    fn parabolic_full_levi_is_source() {
        let q = build_qn(2).unwrap();
        let all: Vec<usize> = (0..q.dim()).collect();
        let src = SourceModule::trivial(2, &all);
        let p = parabolic_induce(&src, &GElement::zero(2), 4).unwrap();
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn parabolic_rejects_inconsistent_source() {
        let q = build_qn(3).unwrap();
        let h = GElement::diagonal(3, &[Scalar::from_int(1), Scalar::from_int(1), Scalar::zero()]);
        let p = parabolic_from_grader(&h).unwrap();
        let bad = SourceModule::from_clifford(&clifford_module(&w(&[1, 0, 0]))).extend_by_zero(&p.l);
        assert!(bad.check_brackets(&q, &p.l).is_err());
        assert!(parabolic_induce(&bad, &h, 2).is_err());
        let good = SourceModule::from_clifford(&clifford_module(&w(&[0, 0, 3]))).extend_by_zero(&p.l);
        let m = parabolic_induce(&good, &h, 2).unwrap();
        assert!(m.check_brackets().unwrap() > 0);
    }

    #[test]
    fn induced_from_even_q1() {
        let m0 = even_verma_truncation(&w(&[0]), 0).unwrap();
        assert_eq!(m0.dim(), 1);
        let m = induce_from_even(&m0, 0).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.check_brackets().unwrap() > 0);
    }

    #[test]
    fn induced_from_even_brackets_q2() {
        let m0 = even_verma_truncation(&w(&[1, -1]), 2).unwrap();
        assert_eq!(m0.dim(), 3);
        let m = induce_from_even(&m0, 2).unwrap();
        assert_eq!(m.dim(), 3 * 16);
        assert!(m.check_brackets().unwrap() > 0);
        let split = h_eigen_split(&m, &[Scalar::from_int(1), Scalar::zero()]).unwrap();
        assert!(split.dims.keys().all(|k| k <= &split.top));
        assert!(split.dims.contains_key(&split.top));
    }
}
