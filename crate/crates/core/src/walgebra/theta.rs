use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::datum::{build_m, build_symplectic, names, LagrangianChoice, MSubalgebra, NilpotentDatum};
use super::invariants::{centralizer_degrees, w_invariants, WElement, WTruncation};
use crate::error::{QwkError, Result};
use crate::linalg::{rank, solve, Echelon, SparseMatrix, SparseVec};
use crate::pbw::{PBWMonomial, UElement};
use crate::scalar::Scalar;
use crate::superalgebra::{Gen, SubAlgebra};

fn check_in_t(d: &NilpotentDatum, theta: &[i64]) -> Result<()> {
    let n = d.qn.n();
    if theta.len() != n {
        return Err(QwkError::RankMismatch { left: n, right: theta.len() });
    }
    if d.big_e.terms().any(|(g, _)| theta[g.i] != theta[g.j]) {
        return Err(QwkError::ThetaNotInT);
    }
    Ok(())
}

/// The `θ`-grading of a W-truncation and the pieces `U_{≥0}`, `U_{>0}`, `U_♯`.
#[derive(Debug)]
pub struct ThetaGrading {
    pub w: WTruncation,
    pub theta: Vec<i64>,
    /// Basis indices per `θ`-weight.
    pub by_weight: BTreeMap<i64, Vec<usize>>,
    /// Spanning set of `U_♯ ∩ U_0` within the cap: reduced products `a·b`
    /// with `θ(b) > 0` and `θ(a) = −θ(b)`, tagged with `deg a + deg b`.
    pub sharp0: Vec<(i64, UElement)>,
}

impl ThetaGrading {
    pub fn weight_dims(&self) -> BTreeMap<i64, usize> {
        self.by_weight.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// `Σ_i dim U_i` per Kazhdan degree.
    pub fn graded_dims_by_weight(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for w in &self.w.basis {
            *out.entry((w.theta, w.degree)).or_insert(0) += 1;
        }
        out
    }

    pub fn nonneg(&self) -> impl Iterator<Item = &WElement> {
        self.w.basis.iter().filter(|w| w.theta >= 0)
    }

    pub fn positive(&self) -> impl Iterator<Item = &WElement> {
        self.w.basis.iter().filter(|w| w.theta > 0)
    }

    /// `dim (U_0 ∩ F_j) / (U_♯ ∩ U_0 ∩ F_j)` for `j ≤ cap`.
    pub fn quotient_filtered_dims(&self) -> BTreeMap<i64, usize> {
        let zero: Vec<&WElement> = self.w.basis.iter().filter(|w| w.theta == 0).collect();
        let mut index: HashMap<PBWMonomial, usize> = HashMap::new();
        let mut vecs = |u: &UElement| {
            SparseVec::from_pairs(u.terms().map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            }))
        };
        let zero_v: Vec<(i64, SparseVec<Scalar>)> = zero.iter().map(|w| (w.degree, vecs(&w.rep))).collect();
        let sharp_v: Vec<(i64, SparseVec<Scalar>)> = self.sharp0.iter().map(|(d, u)| (*d, vecs(u))).collect();
        (0..=self.w.cap)
            .map(|j| {
                let a = zero_v.iter().filter(|(d, _)| *d <= j).count();
                let s: Vec<SparseVec<Scalar>> = sharp_v.iter().filter(|(d, _)| *d <= j).map(|(_, v)| v.clone()).collect();
                (j, a - rank(&s))
            })
            .collect()
    }
}

/// Splits the invariants by `θ`-weight (re-solving blockwise if needed).
pub fn theta_split(w: WTruncation, theta: &[i64]) -> Result<ThetaGrading> {
    check_in_t(&w.datum, theta)?;
    let w = if w.theta == theta { w } else { w_invariants(&w.datum, &w.m, w.cap as usize, Some(theta))? };
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, b) in w.basis.iter().enumerate() {
        by_weight.entry(b.theta).or_default().push(k);
    }
    let pairs: Vec<(usize, usize)> = w
        .basis
        .iter()
        .enumerate()
        .filter(|(_, b)| b.theta > 0)
        .flat_map(|(ib, b)| {
            w.basis.iter().enumerate().filter(move |(_, a)| a.theta == -b.theta && a.degree + b.degree <= w.cap).map(move |(ia, _)| (ia, ib))
        })
        .collect();
    let sharp0: Vec<(i64, UElement)> = pairs
        .par_iter()
        .map(|&(ia, ib)| {
            let (a, b) = (&w.basis[ia], &w.basis[ib]);
            (a.degree + b.degree, w.reduce(&w.env.multiply(&a.rep, &b.rep)))
        })
        .collect();
    Ok(ThetaGrading { w, theta: theta.to_vec(), by_weight, sharp0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviQuotientReport {
    pub theta: Vec<i64>,
    pub levi_blocks: Vec<Vec<usize>>,
    pub quotient_filtered: BTreeMap<i64, usize>,
    pub levi_filtered: BTreeMap<i64, usize>,
    pub pass: bool,
}

/// Levi subalgebra `g^θ` as blocks of equal `θ`-value.
pub fn theta_levi(n: usize, theta: &[i64]) -> (Vec<Vec<usize>>, SubAlgebra) {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &t) in theta.iter().enumerate() {
        groups.entry(-t).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    let sub = SubAlgebra::block_diagonal(n, &blocks);
    (blocks, sub)
}

/// Compares `U_{≥0}/U_♯` with an independent W-truncation of the Levi
/// subalgebra `g^θ` (same `E`, same `h`).
pub fn levi_quotient_check(tg: &ThetaGrading) -> Result<LeviQuotientReport> {
    let d = &tg.w.datum;
    let n = d.qn.n();
    let (blocks, sub) = theta_levi(n, &tg.theta);
    let dl = NilpotentDatum::in_subalgebra(d.qn.clone(), &d.big_e, sub)?;
    let sl = build_symplectic(&dl, LagrangianChoice::Forward)?;
    let ml = build_m(&dl, &sl)?;
    let wl = w_invariants(&dl, &ml, tg.w.cap as usize, None)?;
    let levi_filtered = wl.filtered_dims();
    let quotient_filtered = tg.quotient_filtered_dims();
    let pass = levi_filtered == quotient_filtered;
    Ok(LeviQuotientReport { theta: tg.theta.clone(), levi_blocks: blocks, quotient_filtered, levi_filtered, pass })
}

/// `m̃ = m_l + u` and the regrading `g′(i) = {x | [h − sθ, x] = (i−2)x}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MTilde {
    pub shift: i64,
    pub u: Vec<usize>,
    pub mtilde: Vec<usize>,
    /// `χ`-values on `m̃`, giving `m̃_χ = {a − χ(a)}`.
    pub chi: Vec<Scalar>,
    pub g_prime: BTreeMap<i64, Vec<usize>>,
    /// `m̃ = ⊕_{i≤0} g′(i)`.
    pub equals_nonpositive: bool,
    /// `m̃` is the nilradical of a Borel subalgebra.
    pub borel_nilradical: bool,
    pub names: Vec<String>,
}

/// Builds `m̃` for `θ ∈ t` and the Levi `m_l`; requires `shift > 2d + 2`
/// with `d` the largest `ad h` eigenvalue.
pub fn mtilde_build(d: &NilpotentDatum, theta: &[i64], m_levi: &MSubalgebra, shift: i64) -> Result<MTilde> {
    check_in_t(d, theta)?;
    let q = &d.qn;
    let dmax = d.grading.max_degree();
    let bound = 2 * dmax + 2;
    if shift <= bound {
        return Err(QwkError::ShiftTooSmall { m: shift, bound });
    }
    let tw = |k: usize| {
        let g = q.gen(k);
        theta[g.i] - theta[g.j]
    };
    let u: Vec<usize> = (0..q.dim()).filter(|&k| tw(k) > 0).collect();
    let mut mt: Vec<usize> = m_levi.basis.iter().copied().chain(u.iter().copied()).collect();
    mt.sort_unstable();
    mt.dedup();
    let mut g_prime: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for k in 0..q.dim() {
        g_prime.entry(d.grading.degree[k] - shift * tw(k) + 2).or_default().push(k);
    }
    let mut nonpos: Vec<usize> = g_prime.range(..=0).flat_map(|(_, v)| v.iter().copied()).collect();
    nonpos.sort_unstable();
    let borel_nilradical = is_borel_nilradical(q.n(), &mt.iter().map(|&k| q.gen(k)).collect::<Vec<_>>());
    Ok(MTilde {
        shift,
        chi: mt.iter().map(|&k| d.chi[k].clone()).collect(),
        names: names(q, &mt),
        equals_nonpositive: nonpos == mt,
        borel_nilradical,
        u,
        mtilde: mt,
        g_prime,
    })
}

/// Whether the generators form `{e(i,j), f(i,j) | i ≺ j}` for a total order `≺`.
pub fn is_borel_nilradical(n: usize, gens: &[Gen]) -> bool {
    let even: Vec<(usize, usize)> = gens.iter().filter(|g| !g.odd).map(|g| (g.i, g.j)).collect();
    let odd: Vec<(usize, usize)> = gens.iter().filter(|g| g.odd).map(|g| (g.i, g.j)).collect();
    let mut e_sorted = even.clone();
    e_sorted.sort_unstable();
    let mut o_sorted = odd.clone();
    o_sorted.sort_unstable();
    if e_sorted != o_sorted || even.len() != n * (n - 1) / 2 {
        return false;
    }
    let rel = |i: usize, j: usize| even.contains(&(i, j));
    for i in 0..n {
        if rel(i, i) {
            return false;
        }
        for j in 0..n {
            if i != j && rel(i, j) == rel(j, i) {
                return false;
            }
            for k in 0..n {
                if rel(i, j) && rel(j, k) && !rel(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Slice dimensions of a truncated W-Verma module induced from a
/// one-dimensional `U_{≥0}`-module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WVermaSlices {
    /// `ρ` on the even `θ`-weight-0 basis elements, by basis position.
    pub rho: Vec<(usize, Scalar)>,
    /// `θ`-degree `−k` ↦ dimension.
    pub slices: BTreeMap<i64, usize>,
    /// Independent count `dim V · #{S(g^E_{θ<0}) monomials}`.
    pub expected: BTreeMap<i64, usize>,
}

/// Coordinates of `u` in the span of `elems`, if it lies there.
fn coords_in(elems: &[&UElement], u: &UElement) -> Option<SparseVec<Scalar>> {
    let mut index: HashMap<PBWMonomial, usize> = HashMap::new();
    let mut vec_of = |x: &UElement| {
        SparseVec::from_pairs(x.terms().map(|(m, c)| {
            let next = index.len();
            (*index.entry(m.clone()).or_insert(next), c.clone())
        }))
    };
    let cols: Vec<SparseVec<Scalar>> = elems.iter().map(|e| vec_of(e)).collect();
    let target = vec_of(u);
    let nrows = index.len();
    solve(&SparseMatrix::from_cols(nrows, cols), &target)
}

/// Induces a one-dimensional module along `θ`: `U_{>0}` and `U_♯` act by
/// zero, and `U_0` by a character `ρ` found from the linear relations among
/// products (odd elements act by zero). The character is relation-checked
/// against every product within the cap.
pub fn w_verma_truncation(tg: &ThetaGrading, max_depth: i64) -> Result<WVermaSlices> {
    if tg.theta.iter().all(|&t| t == tg.theta[0]) {
        return Err(QwkError::Degenerate("θ induces no grading".into()));
    }
    let w = &tg.w;
    let basis = &w.basis;
    let env = &w.env;
    let cap = w.cap;
    let zero_idx: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].theta == 0).collect();
    let nonneg_idx: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].theta >= 0).collect();
    let is_odd = |k: usize| env.parity(&basis[k].rep).is_some_and(|p| p.is_odd());
    let unit_k = zero_idx.iter().copied().find(|&k| basis[k].rep.as_constant().is_some()).expect("unit is invariant");
    let unknown: Vec<usize> = zero_idx.iter().copied().filter(|&k| k != unit_k && !is_odd(k)).collect();
    let col_of: HashMap<usize, usize> = unknown.iter().enumerate().map(|(c, &k)| (k, c)).collect();
    let nonneg_reps: Vec<&UElement> = nonneg_idx.iter().map(|&k| &basis[k].rep).collect();
    // ρ(x) = unit coefficient + Σ coefficient · unknown
    let rho_affine = |coords: &SparseVec<Scalar>| -> (Scalar, SparseVec<Scalar>) {
        let mut c0 = Scalar::zero();
        let mut lin = Vec::new();
        for (pos, v) in coords.iter() {
            let k = nonneg_idx[*pos];
            if k == unit_k {
                c0 += v;
            } else if let Some(&c) = col_of.get(&k) {
                lin.push((c, v.clone()));
            }
        }
        (c0, SparseVec::from_pairs(lin))
    };
    let pairs: Vec<(usize, usize)> = nonneg_idx
        .iter()
        .flat_map(|&a| nonneg_idx.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a != unit_k && b != unit_k && basis[a].degree + basis[b].degree <= cap)
        .collect();
    let products: Vec<(usize, usize, Option<SparseVec<Scalar>>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let p = w.reduce(&env.multiply(&basis[a].rep, &basis[b].rep));
            (a, b, coords_in(&nonneg_reps, &p))
        })
        .collect();
    // linear constraints: products with a factor that acts by zero
    let acts_zero = |k: usize| basis[k].theta > 0 || is_odd(k);
    let mut rows: Vec<SparseVec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (a, b, c) in &products {
        let c = c.as_ref().ok_or_else(|| QwkError::RelationCheck("product leaves U_{≥0}".into()))?;
        if acts_zero(*a) || acts_zero(*b) {
            let (c0, lin) = rho_affine(c);
            rows.push(lin);
            rhs.push(-c0);
        }
    }
    let sys = {
        let t: Vec<SparseVec<Scalar>> = rows.clone();
        let mut cols = vec![Vec::new(); unknown.len()];
        for (r, row) in t.iter().enumerate() {
            for (c, v) in row.iter() {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMatrix::from_cols(rows.len(), cols.into_iter().map(SparseVec::from_pairs).collect())
    };
    let rhs_v = SparseVec::from_pairs(rhs.into_iter().enumerate());
    let rho_sol = solve(&sys, &rhs_v).ok_or_else(|| QwkError::RelationCheck("no character of U_0/U_♯ with odd elements acting by zero".into()))?;
    let rho_of = |k: usize| -> Scalar {
        if k == unit_k {
            Scalar::one()
        } else if let Some(&c) = col_of.get(&k) {
            rho_sol.get(c)
        } else {
            Scalar::zero()
        }
    };
    for (a, b, c) in &products {
        let c = c.as_ref().expect("checked above");
        let (c0, lin) = rho_affine(c);
        let val = &c0 + &lin.dot(&rho_sol);
        if val != &rho_of(*a) * &rho_of(*b) {
            return Err(QwkError::RelationCheck(format!("ρ fails on the product of basis elements {a} and {b}")));
        }
    }
    for (_, s) in &tg.sharp0 {
        let c = coords_in(&nonneg_reps, s).ok_or_else(|| QwkError::RelationCheck("U_♯ element outside U_{≥0}".into()))?;
        let (c0, lin) = rho_affine(&c);
        if !(&c0 + &lin.dot(&rho_sol)).is_zero() {
            return Err(QwkError::RelationCheck("ρ does not vanish on U_♯".into()));
        }
    }
    // slices: U_{−k} modulo {a·b − ρ(b)a}
    let mut slices = BTreeMap::new();
    for k in 0..=max_depth {
        let target: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].theta == -k).collect();
        if target.is_empty() {
            slices.insert(-k, 0);
            continue;
        }
        let mut index: HashMap<PBWMonomial, usize> = HashMap::new();
        let mut vec_of = |x: &UElement| {
            SparseVec::from_pairs(x.terms().map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            }))
        };
        let span: Vec<SparseVec<Scalar>> = target.iter().map(|&i| vec_of(&basis[i].rep)).collect();
        let rel_pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|a| nonneg_idx.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| b != unit_k && basis[a].theta + basis[b].theta == -k && basis[a].degree + basis[b].degree <= cap)
            .collect();
        let rels: Vec<UElement> = rel_pairs
            .par_iter()
            .map(|&(a, b)| {
                let p = w.reduce(&env.multiply(&basis[a].rep, &basis[b].rep));
                let r = rho_of(b);
                let mut out = p;
                out.add_scaled(&basis[a].rep, &-r);
                out
            })
            .collect();
        let mut ech = Echelon::new();
        for r in &rels {
            ech.insert(&vec_of(r));
        }
        let rel_rank = ech.rank();
        let total = rank(&span);
        slices.insert(-k, total - rel_rank);
    }
    let ge = centralizer_degrees(&w.datum, Some(&tg.theta))?;
    let neg: Vec<(i64, bool, i64)> = ge.into_iter().filter(|g| g.2 < 0).collect();
    let expected = count_monomials_by_theta(&neg, cap, max_depth);
    let rho = unknown.iter().map(|&k| (k, rho_of(k))).collect();
    Ok(WVermaSlices { rho, slices, expected })
}

/// `#{monomials in S(gens)}` by `θ`-weight `−k`, Kazhdan degree `≤ cap`.
fn count_monomials_by_theta(gens: &[(i64, bool, i64)], cap: i64, max_depth: i64) -> BTreeMap<i64, usize> {
    // table[deg][depth]
    let cu = cap as usize;
    let du = max_depth as usize;
    let mut t = vec![vec![0usize; du + 1]; cu + 1];
    t[0][0] = 1;
    for &(d, odd, th) in gens {
        let (d, th) = (d as usize, (-th) as usize);
        let mut next = t.clone();
        let max_e = if odd { 1 } else { usize::MAX };
        for a in 0..=cu {
            for b in 0..=du {
                if t[a][b] == 0 {
                    continue;
                }
                let mut e = 1;
                while e <= max_e && a + e * d <= cu && b + e * th <= du {
                    next[a + e * d][b + e * th] += t[a][b];
                    e += 1;
                }
            }
        }
        t = next;
    }
    (0..=max_depth).map(|k| (-k, (0..=cu).map(|a| t[a][k as usize]).sum())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::build_qn;
    use crate::walgebra::NamedNilpotent;

    #[test]
    fn mtilde_q3_minimal() {
        let q = build_qn(3).unwrap();
        let d = NilpotentDatum::named(q.clone(), NamedNilpotent::Minimal).unwrap();
        let (_, l) = theta_levi(3, &[1, 1, 0]);
        let dl = NilpotentDatum::in_subalgebra(q.clone(), &d.big_e, l).unwrap();
        let ml = build_m(&dl, &build_symplectic(&dl, LagrangianChoice::Forward).unwrap()).unwrap();
        assert!(matches!(mtilde_build(&d, &[1, 1, 0], &ml, 6), Err(QwkError::ShiftTooSmall { .. })));
        let mt = mtilde_build(&d, &[1, 1, 0], &ml, 7).unwrap();
        assert_eq!(mt.names, ["e(1,3)", "e(2,1)", "e(2,3)", "f(1,3)", "f(2,1)", "f(2,3)"]);
        assert!(mt.equals_nonpositive);
        assert!(mt.borel_nilradical);
        assert!(mt.u.iter().all(|k| mt.mtilde.contains(k)));
        assert!(matches!(mtilde_build(&d, &[1, 0, 0], &ml, 7), Err(QwkError::ThetaNotInT)));
    }

    #[test]
    fn borel_predicate() {
        let n = 3;
        let upper: Vec<Gen> = [(0, 1), (0, 2), (1, 2)].iter().flat_map(|&(i, j)| [Gen::e(i, j), Gen::f(i, j)]).collect();
        assert!(is_borel_nilradical(n, &upper));
        assert!(!is_borel_nilradical(n, &upper[..4]));
        let cyclic: Vec<Gen> = [(0, 1), (1, 2), (2, 0)].iter().flat_map(|&(i, j)| [Gen::e(i, j), Gen::f(i, j)]).collect();
        assert!(!is_borel_nilradical(n, &cyclic));
    }

    #[test]
    fn monomial_counts() {
        // one even generator of degree 2 at depth 1, one odd of degree 1 at depth 1
        let c = count_monomials_by_theta(&[(2, false, -1), (1, true, -1)], 4, 3);
        assert_eq!(c[&0], 1);
        assert_eq!(c[&-1], 2);
        assert_eq!(c[&-2], 2);
        assert_eq!(c[&-3], 0);
    }
}
