use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{QwkError, Result};
use crate::linalg::{rank, SparseMatrix, SparseVec};
use crate::scalar::Scalar;
use crate::superalgebra::grading::centralizer_in;
use crate::superalgebra::{parity_reverse, sl2_complete, GElement, Gen, GradingData, Parity, Qn, Sl2Triple, SubAlgebra};

/// `χ(x) = (E|x)` on every basis element.
pub fn chi_of(q: &Qn, big_e: &GElement) -> Result<Vec<Scalar>> {
    if !big_e.is_zero() && big_e.parity() != Some(Parity::Odd) {
        return Err(QwkError::NotOdd);
    }
    (0..q.dim()).map(|b| q.odd_form(big_e, &q.basis_element(b))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedNilpotent {
    /// `Σ f(i,i+1)`.
    Principal,
    /// `f(1,2)`.
    Minimal,
}

impl NamedNilpotent {
    pub fn element(self, n: usize) -> GElement {
        match self {
            NamedNilpotent::Principal => (1..n).fold(GElement::zero(n), |acc, i| acc.add(&GElement::f(n, i, i + 1))),
            NamedNilpotent::Minimal if n >= 2 => GElement::f(n, 1, 2),
            NamedNilpotent::Minimal => GElement::zero(n),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "principal" => Some(NamedNilpotent::Principal),
            "minimal" => Some(NamedNilpotent::Minimal),
            _ => None,
        }
    }
}

/// An odd nilpotent with its sl(2)-data, `χ`, and grading, inside an
/// ambient subalgebra (all of q(n) or a Levi).
#[derive(Clone, Debug)]
pub struct NilpotentDatum {
    pub qn: Arc<Qn>,
    pub ambient: SubAlgebra,
    pub big_e: GElement,
    pub triple: Sl2Triple,
    pub big_f: GElement,
    pub big_h: GElement,
    pub chi: Vec<Scalar>,
    pub grading: GradingData,
}

impl NilpotentDatum {
    /// Dynkin datum of `E` in q(n).
    pub fn new(qn: Arc<Qn>, big_e: &GElement) -> Result<Self> {
        let amb = SubAlgebra::full(qn.n());
        Self::in_subalgebra(qn, big_e, amb)
    }

    /// Dynkin datum of `E` inside `ambient`; the triple must lie in it.
    pub fn in_subalgebra(qn: Arc<Qn>, big_e: &GElement, ambient: SubAlgebra) -> Result<Self> {
        let n = qn.n();
        if big_e.parity() != Some(Parity::Odd) || big_e.is_zero() {
            return Err(if big_e.is_zero() { QwkError::Degenerate("E = 0".into()) } else { QwkError::NotOdd });
        }
        let e = parity_reverse(big_e);
        let triple = sl2_complete(&qn, &e)?;
        for x in [&triple.h, &triple.f] {
            if x.terms().any(|(g, _)| !ambient.contains(g.index(n))) {
                return Err(QwkError::Invalid("sl(2)-triple leaves the ambient subalgebra".into()));
            }
        }
        let grading = GradingData::from_element(&triple.h)?;
        Self::assemble(qn, big_e.clone(), triple, grading, ambient)
    }

    /// `E` with an explicitly supplied diagonal grading (to be checked).
    pub fn with_grading(qn: Arc<Qn>, big_e: &GElement, grader: &[Scalar]) -> Result<Self> {
        let mut d = if big_e.is_zero() { Self::zero(qn.clone()) } else { Self::new(qn.clone(), big_e)? };
        d.grading = GradingData::from_diagonal(qn.n(), grader)?;
        Ok(d)
    }

    /// The degenerate datum `E = 0` with the zero grading.
    pub fn zero(qn: Arc<Qn>) -> Self {
        let n = qn.n();
        let z = GElement::zero(n);
        let triple = Sl2Triple { e: z.clone(), h: z.clone(), f: z.clone() };
        let grading = GradingData::from_diagonal(n, &vec![Scalar::zero(); n]).expect("zero grading");
        let ambient = SubAlgebra::full(n);
        Self::assemble(qn, z, triple, grading, ambient).expect("zero datum")
    }

    pub fn named(qn: Arc<Qn>, which: NamedNilpotent) -> Result<Self> {
        let e = which.element(qn.n());
        if e.is_zero() {
            return Ok(Self::zero(qn));
        }
        Self::new(qn, &e)
    }

    fn assemble(qn: Arc<Qn>, big_e: GElement, triple: Sl2Triple, grading: GradingData, ambient: SubAlgebra) -> Result<Self> {
        let chi = chi_of(&qn, &big_e)?;
        let big_f = parity_reverse(&triple.f);
        let big_h = parity_reverse(&triple.h);
        Ok(NilpotentDatum { qn, ambient, big_e, triple, big_f, big_h, chi, grading })
    }

    pub fn is_zero(&self) -> bool {
        self.big_e.is_zero()
    }

    /// Ambient basis elements in grading degree `i`.
    pub fn block(&self, i: i64) -> Vec<usize> {
        self.grading.block(i).iter().copied().filter(|&k| self.ambient.contains(k)).collect()
    }

    pub fn chi_vec(&self, v: &SparseVec<Scalar>) -> Scalar {
        v.iter().map(|(k, c)| c * &self.chi[*k]).sum()
    }

    /// `ω_χ(x, y) = χ([x, y])` on basis elements.
    pub fn omega(&self, a: usize, b: usize) -> Scalar {
        self.chi_vec(self.qn.bracket_basis(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub pass: bool,
    pub violations: Vec<String>,
}

impl AxiomResult {
    fn from(violations: Vec<String>) -> Self {
        AxiomResult { pass: violations.is_empty(), violations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodGradingReport {
    pub a: AxiomResult,
    pub b: AxiomResult,
    pub c: AxiomResult,
}

impl GoodGradingReport {
    pub fn pass(&self) -> bool {
        self.a.pass && self.b.pass && self.c.pass
    }
}

/// Checks (a) center in degree 0, (b) `χ` supported in degree −2, and
/// (c) `g^χ` in nonnegative degrees, over the datum's ambient subalgebra.
pub fn good_grading_check(d: &NilpotentDatum) -> GoodGradingReport {
    let q = &d.qn;
    let g = &d.grading;
    let show = |v: &GElement| v.to_string();
    let a = d.ambient.center(q).into_iter().filter(|z| z.terms().any(|(x, _)| g.degree[x.index(q.n())] != 0)).map(|z| show(&z)).collect();
    let b = d.ambient.basis.iter().filter(|&&k| !d.chi[k].is_zero() && g.degree[k] != -2).map(|&k| q.gen(k).to_string()).collect();
    let c = match centralizer_in(q, &d.big_e, &d.ambient.basis) {
        Ok(cz) => cz.all().filter(|y| y.terms().any(|(x, _)| g.degree[x.index(q.n())] < 0)).map(show).collect(),
        Err(e) => vec![e.to_string()],
    };
    GoodGradingReport { a: AxiomResult::from(a), b: AxiomResult::from(b), c: AxiomResult::from(c) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LagrangianChoice {
    /// Greedy over `g(−1)` in basis order.
    Forward,
    /// Greedy over `g(−1)` in reversed basis order.
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticData {
    /// Basis of `g(−1)`.
    pub space: Vec<usize>,
    pub gram: Vec<Vec<Scalar>>,
    pub gram_rank: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// Rank of `ad E : g(−1) → g(1)`.
    pub ad_e_rank: usize,
    pub dim_g1: usize,
    pub lagrangian: Vec<usize>,
}

impl SymplecticData {
    pub fn nondegenerate(&self) -> bool {
        self.gram_rank == self.space.len()
    }

    pub fn ad_e_bijective(&self) -> bool {
        self.ad_e_rank == self.space.len() && self.dim_g1 == self.space.len()
    }
}

/// Gram matrix of `ω_χ` on `g(−1)`, certification of `ad E`, and a Lagrangian
/// picked greedily among basis vectors.
pub fn build_symplectic(d: &NilpotentDatum, choice: LagrangianChoice) -> Result<SymplecticData> {
    let q = &d.qn;
    let space = d.block(-1);
    let gram: Vec<Vec<Scalar>> = space.iter().map(|&a| space.iter().map(|&b| d.omega(a, b)).collect()).collect();
    let gram_rank = SparseMatrix::from_dense(&gram).rank();
    if gram_rank != space.len() {
        return Err(QwkError::Degenerate(format!("ω_χ on g(−1) has rank {gram_rank} < {}", space.len())));
    }
    let even_dim = space.iter().filter(|&&k| !q.parity(k).is_odd()).count();
    let odd_dim = space.len() - even_dim;
    let images: Vec<SparseVec<Scalar>> = space.iter().map(|&b| q.bracket_vec(d.big_e.coords(), &SparseVec::unit(b))).collect();
    let ad_e_rank = rank(&images);
    let dim_g1 = d.block(1).len();
    let mut order = space.clone();
    if choice == LagrangianChoice::Reverse {
        order.reverse();
    }
    let mut lag: Vec<usize> = Vec::new();
    for &b in &order {
        if d.omega(b, b).is_zero() && lag.iter().all(|&c| d.omega(b, c).is_zero()) {
            lag.push(b);
        }
    }
    let lag_even = lag.iter().filter(|&&k| !q.parity(k).is_odd()).count();
    if 2 * lag_even != even_dim || 2 * (lag.len() - lag_even) != odd_dim {
        return Err(QwkError::NoSolution("root vectors do not span a Lagrangian of g(−1)".into()));
    }
    lag.sort_unstable();
    Ok(SymplecticData { space, gram, gram_rank, even_dim, odd_dim, ad_e_rank, dim_g1, lagrangian: lag })
}

/// `m = l ⊕ g(≤ −2)` with its `χ`-values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSubalgebra {
    pub basis: Vec<usize>,
    pub chi: Vec<Scalar>,
}

impl MSubalgebra {
    pub fn contains(&self, k: usize) -> bool {
        self.basis.binary_search(&k).is_ok()
    }

    /// Generators `a − χ(a)` in text form.
    pub fn m_chi_text(&self, q: &Qn) -> Vec<String> {
        self.basis.iter().zip(&self.chi).map(|(&k, c)| if c.is_zero() { q.gen(k).to_string() } else { format!("{} - {c}", q.gen(k)) }).collect()
    }
}

pub fn build_m(d: &NilpotentDatum, s: &SymplecticData) -> Result<MSubalgebra> {
    let q = &d.qn;
    let mut basis: Vec<usize> = s.lagrangian.clone();
    for (&deg, block) in &d.grading.blocks {
        if deg <= -2 {
            basis.extend(block.iter().copied().filter(|&k| d.ambient.contains(k)));
        }
    }
    basis.sort_unstable();
    let m = MSubalgebra { chi: basis.iter().map(|&k| d.chi[k].clone()).collect(), basis };
    for &a in &m.basis {
        for &b in &m.basis {
            let br = q.bracket_basis(a, b);
            if let Some((k, _)) = br.iter().find(|(k, _)| !m.contains(*k)) {
                return Err(QwkError::ClosureFailure(format!("[{}, {}] has a component on {}", q.gen(a), q.gen(b), q.gen(*k))));
            }
            if !d.chi_vec(br).is_zero() {
                return Err(QwkError::ClosureFailure(format!("χ([{}, {}]) ≠ 0", q.gen(a), q.gen(b))));
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DwReport {
    pub dim_g: usize,
    pub dim_ge: usize,
    pub dim_pi_gf: usize,
    /// `g = g^E ⊕ Π[g,F]`.
    pub first_decomposition: bool,
    pub dim_pi_gf_centralizer: usize,
    pub dim_ge_image: usize,
    /// `g = Πg^F ⊕ [g,E]`.
    pub second_decomposition: bool,
    pub gram_rank: usize,
    /// `ω_χ` nondegenerate on `Π[g,F]`.
    pub nondegenerate: bool,
}

impl DwReport {
    pub fn pass(&self) -> bool {
        self.first_decomposition && self.second_decomposition && self.nondegenerate
    }
}

fn image(q: &Qn, x: &GElement) -> Vec<SparseVec<Scalar>> {
    let m = q.ad_matrix(x.coords());
    let mut ech = crate::linalg::Echelon::new();
    for c in &m.cols {
        ech.insert(c);
    }
    ech.rows().to_vec()
}

/// Both direct-sum decompositions and the nondegeneracy of `ω_χ` on `Π[g,F]`.
pub fn dw_decomposition_check(d: &NilpotentDatum) -> Result<DwReport> {
    if d.is_zero() {
        return Err(QwkError::Degenerate("E = 0".into()));
    }
    let q = &d.qn;
    let n = q.n();
    let dim_g = q.dim();
    let pi = |v: &SparseVec<Scalar>| parity_reverse(&GElement::from_vec(n, v.clone())).into_coords();
    let ge: Vec<SparseVec<Scalar>> = centralizer_in(q, &d.big_e, &(0..dim_g).collect::<Vec<_>>())?.all().map(|x| x.coords().clone()).collect();
    let pi_gf: Vec<SparseVec<Scalar>> = image(q, &d.big_f).iter().map(pi).collect();
    let first = rank(&[ge.clone(), pi_gf.clone()].concat()) == dim_g && ge.len() + pi_gf.len() == dim_g;
    let gf: Vec<SparseVec<Scalar>> = centralizer_in(q, &d.big_f, &(0..dim_g).collect::<Vec<_>>())?.all().map(|x| pi(x.coords())).collect();
    let ge_img = image(q, &d.big_e);
    let second = rank(&[gf.clone(), ge_img.clone()].concat()) == dim_g && gf.len() + ge_img.len() == dim_g;
    let gram: Vec<Vec<Scalar>> = pi_gf.iter().map(|x| pi_gf.iter().map(|y| d.chi_vec(&q.bracket_vec(x, y))).collect()).collect();
    let gram_rank = SparseMatrix::from_dense(&gram).rank();
    Ok(DwReport {
        dim_g,
        dim_ge: ge.len(),
        dim_pi_gf: pi_gf.len(),
        first_decomposition: first,
        dim_pi_gf_centralizer: gf.len(),
        dim_ge_image: ge_img.len(),
        second_decomposition: second,
        gram_rank,
        nondegenerate: gram_rank == pi_gf.len(),
    })
}

/// Generator names, for reports.
pub(crate) fn names(q: &Qn, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&k| q.gen(k).to_string()).collect()
}

#[allow(dead_code)]
pub(crate) fn gen_of(q: &Qn, k: usize) -> Gen {
    q.gen(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::build_qn;

    #[test]
    fn chi_examples() {
        let q = build_qn(2).unwrap();
        let chi = chi_of(&q, &q.parse("f(1,2)").unwrap()).unwrap();
        for (k, c) in chi.iter().enumerate() {
            let want = if q.gen(k) == Gen::e(1, 0) { Scalar::one() } else { Scalar::zero() };
            assert_eq!(*c, want, "{}", q.gen(k));
        }
        assert!(chi_of(&q, &GElement::zero(2)).unwrap().iter().all(|c| c.is_zero()));
        assert!(chi_of(&q, &q.parse("e(1,2)").unwrap()).is_err());
    }

    #[test]
    fn good_grading_examples() {
        let q = build_qn(2).unwrap();
        let d = NilpotentDatum::named(q.clone(), NamedNilpotent::Principal).unwrap();
        assert!(good_grading_check(&d).pass());
        let bad = NilpotentDatum::with_grading(q.clone(), &q.parse("f(1,2)").unwrap(), &[Scalar::one(), Scalar::zero()]).unwrap();
        let r = good_grading_check(&bad);
        assert!(r.a.pass && !r.b.pass);
        let z = NilpotentDatum::zero(q);
        assert!(good_grading_check(&z).pass());
    }

    #[test]
    fn symplectic_q3_minimal() {
        let q = build_qn(3).unwrap();
        let d = NilpotentDatum::named(q.clone(), NamedNilpotent::Minimal).unwrap();
        assert_eq!(d.triple.h, GElement::diagonal(3, &[Scalar::one(), -Scalar::one(), Scalar::zero()]));
        let s = build_symplectic(&d, LagrangianChoice::Forward).unwrap();
        assert_eq!((s.even_dim, s.odd_dim), (2, 2));
        assert_eq!(s.ad_e_rank, 4);
        assert!(s.ad_e_bijective());
        assert_eq!(names(&q, &s.lagrangian), ["e(2,3)", "f(2,3)"]);
        let r = build_symplectic(&d, LagrangianChoice::Reverse).unwrap();
        assert_eq!(names(&q, &r.lagrangian), ["e(3,1)", "f(3,1)"]);
        let m = build_m(&d, &s).unwrap();
        assert_eq!(m.basis.len(), 4);
    }

    #[test]
    fn m_for_q2_principal() {
        let q = build_qn(2).unwrap();
        let d = NilpotentDatum::named(q.clone(), NamedNilpotent::Principal).unwrap();
        let s = build_symplectic(&d, LagrangianChoice::Forward).unwrap();
        assert!(s.space.is_empty() && s.lagrangian.is_empty());
        let m = build_m(&d, &s).unwrap();
        assert_eq!(names(&q, &m.basis), ["e(2,1)", "f(2,1)"]);
        assert_eq!(m.chi, vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn dw_lemmas() {
        for (n, which) in [(2, NamedNilpotent::Principal), (3, NamedNilpotent::Principal), (3, NamedNilpotent::Minimal)] {
            let d = NilpotentDatum::named(build_qn(n).unwrap(), which).unwrap();
            let r = dw_decomposition_check(&d).unwrap();
            assert!(r.pass(), "{n} {which:?}: {r:?}");
        }
        assert!(dw_decomposition_check(&NilpotentDatum::zero(build_qn(2).unwrap())).is_err());
    }
}
