use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::datum::{MSubalgebra, NilpotentDatum};
use crate::error::{QwkError, Result};
use crate::linalg::{nullspace, SparseVec};
use crate::pbw::{Enveloping, IdealDatum, PBWMonomial, UElement};
use crate::scalar::Scalar;
use crate::superalgebra::grading::centralizer_in;

/// Default largest Kazhdan cap accepted by [`w_invariants`].
pub const DEFAULT_MAX_CAP: usize = 8;

/// An invariant with its filtration degree and `θ`-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WElement {
    pub rep: UElement,
    pub degree: i64,
    pub theta: i64,
}

/// Basis of `(U(g)/I_χ)^{ad m}` up to a Kazhdan cap.
#[derive(Debug)]
pub struct WTruncation {
    pub env: Arc<Enveloping>,
    pub ideal: IdealDatum,
    pub m: MSubalgebra,
    pub datum: NilpotentDatum,
    pub cap: i64,
    /// `θ` used to split the solve (zero if none was given).
    pub theta: Vec<i64>,
    /// Complement generators (basis indices) spanning the quotient.
    pub complement: Vec<usize>,
    pub unknowns: usize,
    pub basis: Vec<WElement>,
}

impl WTruncation {
    /// Number of basis elements whose top Kazhdan degree is `j`.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out: BTreeMap<i64, usize> = (0..=self.cap).map(|j| (j, 0)).collect();
        for w in &self.basis {
            *out.entry(w.degree).or_default() += 1;
        }
        out
    }

    /// `dim` of the invariants in filtration degree `≤ j`.
    pub fn filtered_dims(&self) -> BTreeMap<i64, usize> {
        let mut acc = 0;
        self.graded_dims()
            .into_iter()
            .map(|(j, c)| {
                acc += c;
                (j, acc)
            })
            .collect()
    }

    pub fn kazhdan(&self, m: &PBWMonomial) -> i64 {
        self.env.kazhdan_degree(m, &self.datum.grading)
    }

    /// `θ`-weight of a monomial.
    pub fn theta_weight(&self, m: &PBWMonomial) -> i64 {
        theta_weight(&self.env, &self.theta, m)
    }

    pub fn reduce(&self, u: &UElement) -> UElement {
        self.env.ideal_reduce(u, &self.ideal)
    }

    /// `ideal_reduce(ad(a)(u)) = 0` for every generator of `m`.
    pub fn is_invariant(&self, u: &UElement) -> bool {
        self.m.basis.iter().all(|&a| self.reduce(&self.env.adjoint_basis(a, u)).is_zero())
    }

    pub fn verify(&self) -> bool {
        self.basis.par_iter().all(|w| self.is_invariant(&w.rep))
    }

    pub fn to_text(&self, u: &UElement) -> String {
        self.env.to_text(u)
    }
}

fn theta_weight(env: &Enveloping, theta: &[i64], m: &PBWMonomial) -> i64 {
    m.0.iter()
        .map(|&(p, k)| {
            let g = env.gen_at(p as usize);
            k as i64 * (theta[g.i] - theta[g.j])
        })
        .sum()
}

/// Monomials in `gens` (positions, increasing) with Kazhdan degree `≤ cap`.
fn enumerate(env: &Enveloping, gens: &[(usize, i64)], cap: i64) -> Vec<PBWMonomial> {
    fn rec(env: &Enveloping, gens: &[(usize, i64)], i: usize, budget: i64, cur: &mut Vec<(u16, u16)>, out: &mut Vec<PBWMonomial>) {
        if i == gens.len() {
            out.push(PBWMonomial(cur.clone()));
            return;
        }
        let (p, d) = gens[i];
        rec(env, gens, i + 1, budget, cur, out);
        let max = if env.is_odd_at(p) { 1 } else { u16::MAX };
        let mut k = 1u16;
        while k <= max && d * k as i64 <= budget {
            cur.push((p as u16, k));
            rec(env, gens, i + 1, budget - d * k as i64, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(env, gens, 0, cap, &mut Vec::new(), &mut out);
    out
}

/// Solves for the `ad m`-invariants of `U/I_χ` over monomials in the
/// complement of `m` of Kazhdan degree `≤ cap`, split by `θ`-weight when `θ`
/// is given.
pub fn w_invariants(d: &NilpotentDatum, m: &MSubalgebra, cap: usize, theta: Option<&[i64]>) -> Result<WTruncation> {
    w_invariants_with_max(d, m, cap, theta, DEFAULT_MAX_CAP)
}

pub fn w_invariants_with_max(d: &NilpotentDatum, m: &MSubalgebra, cap: usize, theta: Option<&[i64]>, max_cap: usize) -> Result<WTruncation> {
    if cap > max_cap {
        return Err(QwkError::CapExceeded { cap, max: max_cap });
    }
    let q = d.qn.clone();
    let n = q.n();
    let theta: Vec<i64> = theta.map(|t| t.to_vec()).unwrap_or_else(|| vec![0; n]);
    if theta.len() != n {
        return Err(QwkError::RankMismatch { left: n, right: theta.len() });
    }
    let env = Arc::new(Enveloping::with_trailing(q.clone(), &m.basis));
    let ideal = IdealDatum::new(&env, &m.basis, d.chi.clone())?;
    let complement: Vec<usize> = d.ambient.basis.iter().copied().filter(|&k| !m.contains(k)).collect();
    let mut gens: Vec<(usize, i64)> = Vec::new();
    for &k in &complement {
        let deg = d.grading.kazhdan(k);
        if deg <= 0 {
            return Err(QwkError::OrderIncompatible(format!(
                "complement generator {} has Kazhdan degree {deg}; the truncation would be infinite",
                q.gen(k)
            )));
        }
        gens.push((env.position(k), deg));
    }
    gens.sort_unstable();
    let cap = cap as i64;
    let mut monos = enumerate(&env, &gens, cap);
    let kaz = |mm: &PBWMonomial| env.kazhdan_degree(mm, &d.grading);
    monos.sort_by(|a, b| (theta_weight(&env, &theta, a), kaz(a), a).cmp(&(theta_weight(&env, &theta, b), kaz(b), b)));
    // images ad(a)(u) mod I_χ, for every unknown monomial u and generator a
    let images: Vec<Vec<UElement>> = monos
        .par_iter()
        .map(|u| {
            let uu = UElement::monomial(u.clone(), Scalar::one());
            m.basis.iter().map(|&a| env.ideal_reduce(&env.adjoint_basis(a, &uu), &ideal)).collect()
        })
        .collect();
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, u) in monos.iter().enumerate() {
        blocks.entry(theta_weight(&env, &theta, u)).or_default().push(k);
    }
    let solved: Vec<Vec<WElement>> = blocks
        .par_iter()
        .map(|(&tw, cols)| {
            let mut row_of: HashMap<(usize, PBWMonomial), usize> = HashMap::new();
            let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
            for (c, &k) in cols.iter().enumerate() {
                for (ai, img) in images[k].iter().enumerate() {
                    for (mm, v) in img.terms() {
                        let next = row_of.len();
                        let r = *row_of.entry((ai, mm.clone())).or_insert(next);
                        if r == rows.len() {
                            rows.push(Vec::new());
                        }
                        rows[r].push((c, v.clone()));
                    }
                }
            }
            let rows: Vec<SparseVec<Scalar>> = rows.into_iter().map(SparseVec::from_pairs).collect();
            nullspace(&rows, cols.len())
                .into_iter()
                .map(|v| {
                    let top = v.max_index().expect("nonzero null vector");
                    let mut rep = UElement::zero();
                    for (c, x) in v.iter() {
                        rep.add_term(monos[cols[*c]].clone(), x.clone());
                    }
                    WElement { rep, degree: kaz(&monos[cols[top]]), theta: tw }
                })
                .collect()
        })
        .collect();
    let mut basis: Vec<WElement> = solved.into_iter().flatten().collect();
    basis.sort_by_key(|a| (a.degree, a.theta));
    Ok(WTruncation { env, ideal, m: m.clone(), datum: d.clone(), cap, theta, complement, unknowns: monos.len(), basis })
}

/// Product of two invariants, reduced modulo `I_χ`, with an invariance flag.
pub fn w_multiply(w: &WTruncation, a: &WElement, b: &WElement) -> Result<(UElement, bool)> {
    let total = a.degree + b.degree;
    if total > w.cap {
        return Err(QwkError::CapExceeded { cap: total as usize, max: w.cap as usize });
    }
    let p = w.reduce(&w.env.multiply(&a.rep, &b.rep));
    let ok = w.is_invariant(&p);
    Ok((p, ok))
}

/// `(Kazhdan degree, odd, θ-weight)` for a homogeneous basis of `g^E` in the
/// ambient subalgebra.
pub fn centralizer_degrees(d: &NilpotentDatum, theta: Option<&[i64]>) -> Result<Vec<(i64, bool, i64)>> {
    let q = &d.qn;
    let n = q.n();
    let theta: Vec<i64> = theta.map(|t| t.to_vec()).unwrap_or_else(|| vec![0; n]);
    let tw = |k: usize| {
        let g = q.gen(k);
        theta[g.i] - theta[g.j]
    };
    let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for &k in &d.ambient.basis {
        blocks.entry((d.grading.degree[k], tw(k))).or_default().push(k);
    }
    let mut out = Vec::new();
    for ((deg, t), idx) in blocks {
        let c = centralizer_in(q, &d.big_e, &idx)?;
        out.extend(std::iter::repeat_n((deg + 2, false, t), c.even.len()));
        out.extend(std::iter::repeat_n((deg + 2, true, t), c.odd.len()));
    }
    Ok(out)
}

/// Graded dimensions of the supersymmetric algebra on generators of the
/// given `(degree, odd)` up to `cap`: `∏ 1/(1−t^d)` over even, `∏ (1+t^d)`
/// over odd generators.
pub fn symmetric_hilbert(gens: &[(i64, bool)], cap: i64) -> BTreeMap<i64, usize> {
    let len = cap.max(0) as usize + 1;
    let mut series = vec![0usize; len];
    series[0] = 1;
    for &(d, odd) in gens {
        assert!(d > 0, "generators must have positive degree");
        let d = d as usize;
        if odd {
            for j in (d..len).rev() {
                series[j] += series[j - d];
            }
        } else {
            for j in d..len {
                series[j] += series[j - d];
            }
        }
    }
    series.into_iter().enumerate().map(|(j, c)| (j as i64, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::build_qn;
    use crate::walgebra::{build_m, build_symplectic, LagrangianChoice, NamedNilpotent};

    #[test]
    fn hilbert_series() {
        // 1/(1−t) (1+t²)
        let h = symmetric_hilbert(&[(1, false), (2, true)], 4);
        assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn q2_principal_small_cap() {
        let q = build_qn(2).unwrap();
        let d = NilpotentDatum::named(q, NamedNilpotent::Principal).unwrap();
        let s = build_symplectic(&d, LagrangianChoice::Forward).unwrap();
        let m = build_m(&d, &s).unwrap();
        let w = w_invariants(&d, &m, 4, None).unwrap();
        assert!(w.verify());
        assert_eq!(w.graded_dims()[&0], 1);
        let ge: Vec<(i64, bool)> = centralizer_degrees(&d, None).unwrap().into_iter().map(|(a, b, _)| (a, b)).collect();
        assert_eq!(w.graded_dims(), symmetric_hilbert(&ge, 4));
        // the identity is invariant
        let id = w.env.from_gelement(&crate::superalgebra::GElement::identity(2));
        assert!(w.is_invariant(&id));
        assert!(w_invariants(&d, &m, 9, None).is_err());
    }
}
