//! Arithmetic in the universal enveloping algebra U(q(n)) on a PBW basis.
//!
//! Monomials are nondecreasing products of generators in a fixed order, with
//! odd generators appearing at most once. Products are straightened with
//! `xy = (−1)^{|x||y|} yx + [x,y]` and `g² = ½[g,g]` for odd `g`; the result
//! of multiplying a generator onto a monomial is memoized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{QwkError, Result};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;
use crate::superalgebra::{GElement, Gen, GradingData, Parity, Qn};

/// `(position in the generator order, exponent)` pairs, positions increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PBWMonomial(pub Vec<(u16, u16)>);

impl PBWMonomial {
    pub fn unit() -> Self {
        PBWMonomial(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of generator factors.
    pub fn length(&self) -> usize {
        self.0.iter().map(|&(_, k)| k as usize).sum()
    }

    /// The monomial as a word of positions.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().flat_map(|&(p, k)| std::iter::repeat_n(p as usize, k as usize)).collect()
    }

    /// Splits at `threshold`: factors with position `< threshold` and the rest.
    pub fn split_at(&self, threshold: usize) -> (PBWMonomial, PBWMonomial) {
        let cut = self.0.iter().position(|&(p, _)| p as usize >= threshold).unwrap_or(self.0.len());
        (PBWMonomial(self.0[..cut].to_vec()), PBWMonomial(self.0[cut..].to_vec()))
    }

    /// Concatenation, valid when every position of `self` precedes `other`'s.
    pub fn concat(&self, other: &PBWMonomial) -> PBWMonomial {
        debug_assert!(self.0.last().zip(other.0.first()).is_none_or(|(a, b)| a.0 < b.0));
        PBWMonomial([self.0.clone(), other.0.clone()].concat())
    }
}

/// A sparse combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UElement {
    terms: BTreeMap<PBWMonomial, Scalar>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement::default()
    }

    pub fn unit() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(PBWMonomial::unit(), c)
    }

    pub fn monomial(m: PBWMonomial, c: Scalar) -> Self {
        let mut u = UElement::zero();
        u.add_term(m, c);
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &UElement, c: &Scalar) {
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, o: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::one());
        out
    }

    pub fn sub(&self, o: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(o, &-Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> UElement {
        let mut out = UElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Constant term, if the element is a scalar.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&PBWMonomial::unit()).cloned(),
            _ => None,
        }
    }
}

/// The enveloping algebra with a chosen generator order.
pub struct Enveloping {
    qn: Arc<Qn>,
    order: Vec<usize>,
    pos_of: Vec<usize>,
    odd: Vec<bool>,
    memo: RwLock<HashMap<(u16, PBWMonomial), Arc<UElement>>>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enveloping").field("n", &self.qn.n()).field("order", &self.order).finish()
    }
}

impl Enveloping {
    /// `order[p]` is the basis index placed at position `p`.
    pub fn new(qn: Arc<Qn>, order: Vec<usize>) -> Result<Self> {
        let dim = qn.dim();
        let mut pos_of = vec![usize::MAX; dim];
        for (p, &b) in order.iter().enumerate() {
            if b >= dim || pos_of[b] != usize::MAX {
                return Err(QwkError::OrderIncompatible("order is not a permutation of the basis".into()));
            }
            pos_of[b] = p;
        }
        if order.len() != dim {
            return Err(QwkError::OrderIncompatible("order is not a permutation of the basis".into()));
        }
        let odd = order.iter().map(|&b| qn.parity(b).is_odd()).collect();
        Ok(Enveloping { qn, order, pos_of, odd, memo: RwLock::new(HashMap::new()) })
    }

    /// Basis index order.
    pub fn standard(qn: Arc<Qn>) -> Self {
        let order = (0..qn.dim()).collect();
        Self::new(qn, order).expect("identity order")
    }

    /// Order with the generators in `trailing` last (each group in basis order).
    pub fn with_trailing(qn: Arc<Qn>, trailing: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..qn.dim()).filter(|b| !trailing.contains(b)).collect();
        let mut t = trailing.to_vec();
        t.sort_unstable();
        order.extend(t);
        Self::new(qn, order).expect("valid order")
    }

    pub fn qn(&self) -> &Arc<Qn> {
        &self.qn
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, basis: usize) -> usize {
        self.pos_of[basis]
    }

    pub fn basis_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    pub fn gen_at(&self, pos: usize) -> Gen {
        self.qn.gen(self.order[pos])
    }

    pub fn is_odd_at(&self, pos: usize) -> bool {
        self.odd[pos]
    }

    pub fn monomial_parity(&self, m: &PBWMonomial) -> Parity {
        Parity::from_odd(m.0.iter().filter(|&&(p, k)| self.odd[p as usize] && k % 2 == 1).count() % 2 == 1)
    }

    /// Splits `u` into its even and odd parts.
    pub fn split_parity(&self, u: &UElement) -> (UElement, UElement) {
        let mut even = UElement::zero();
        let mut odd = UElement::zero();
        for (m, c) in u.terms() {
            match self.monomial_parity(m) {
                Parity::Even => even.add_term(m.clone(), c.clone()),
                Parity::Odd => odd.add_term(m.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    pub fn parity(&self, u: &UElement) -> Option<Parity> {
        let mut it = u.terms().map(|(m, _)| self.monomial_parity(m));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Degree-one element from a Lie algebra element.
    pub fn from_gelement(&self, x: &GElement) -> UElement {
        let mut u = UElement::zero();
        for (k, c) in x.coords().iter() {
            u.add_term(PBWMonomial(vec![(self.pos_of[*k] as u16, 1)]), c.clone());
        }
        u
    }

    pub fn generator(&self, basis: usize) -> UElement {
        UElement::monomial(PBWMonomial(vec![(self.pos_of[basis] as u16, 1)]), Scalar::one())
    }

    /// `[b_{order[p]}, b_{order[q]}]` as (position, coefficient) pairs.
    fn bracket_pos(&self, p: usize, q: usize) -> Vec<(usize, Scalar)> {
        self.qn.bracket_basis(self.order[p], self.order[q]).iter().map(|(k, c)| (self.pos_of[*k], c.clone())).collect()
    }

    /// `g · m` for the generator at position `g`.
    pub fn left_mul_gen(&self, g: usize, m: &PBWMonomial) -> Arc<UElement> {
        let key = (g as u16, m.clone());
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&key) {
            return v.clone();
        }
        let out = Arc::new(self.left_mul_gen_uncached(g, m));
        self.memo.write().expect("memo poisoned").insert(key, out.clone());
        out
    }

    fn left_mul_gen_uncached(&self, g: usize, m: &PBWMonomial) -> UElement {
        let Some(&(x, k)) = m.0.first() else {
            return UElement::monomial(PBWMonomial(vec![(g as u16, 1)]), Scalar::one());
        };
        let x = x as usize;
        if g < x {
            let mut v = Vec::with_capacity(m.0.len() + 1);
            v.push((g as u16, 1));
            v.extend_from_slice(&m.0);
            return UElement::monomial(PBWMonomial(v), Scalar::one());
        }
        // m = x · rest
        let mut rest = m.0.clone();
        if k > 1 {
            rest[0].1 -= 1;
        } else {
            rest.remove(0);
        }
        let rest = PBWMonomial(rest);
        if g == x {
            if !self.odd[g] {
                let mut v = m.0.clone();
                v[0].1 += 1;
                return UElement::monomial(PBWMonomial(v), Scalar::one());
            }
            // g g = ½[g, g]
            let half = Scalar::new(1, 2);
            let mut out = UElement::zero();
            for (p, c) in self.bracket_pos(g, g) {
                out.add_scaled(&self.left_mul_gen(p, &rest), &(&c * &half));
            }
            return out;
        }
        // g > x: g x rest = ± x (g rest) + [g, x] rest
        let sign = if self.odd[g] && self.odd[x] { -Scalar::one() } else { Scalar::one() };
        let mut out = UElement::zero();
        let inner = self.left_mul_gen(g, &rest);
        for (mm, c) in inner.terms() {
            out.add_scaled(&self.left_mul_gen(x, mm), &(c * &sign));
        }
        for (p, c) in self.bracket_pos(g, x) {
            out.add_scaled(&self.left_mul_gen(p, &rest), &c);
        }
        out
    }

    /// `g · u` for the generator at position `g`.
    pub fn left_mul_gen_elem(&self, g: usize, u: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            out.add_scaled(&self.left_mul_gen(g, m), c);
        }
        out
    }

    /// `word[0] · word[1] ⋯ · v` for a word of positions.
    pub fn word_times(&self, word: &[usize], v: &UElement) -> UElement {
        let mut acc = v.clone();
        for &g in word.iter().rev() {
            acc = self.left_mul_gen_elem(g, &acc);
        }
        acc
    }

    /// Normal form of `coeff · b_{w_1} ⋯ b_{w_k}` for basis indices `w_i`.
    pub fn normal_form(&self, word: &[usize], coeff: &Scalar) -> UElement {
        let pos: Vec<usize> = word.iter().map(|&b| self.pos_of[b]).collect();
        self.word_times(&pos, &UElement::constant(coeff.clone()))
    }

    pub fn multiply(&self, u: &UElement, v: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            out.add_scaled(&self.word_times(&m.word(), v), c);
        }
        out
    }

    /// `ad(x)(u) = xu − (−1)^{|x||u|} ux` for homogeneous `x`.
    pub fn adjoint(&self, x: &GElement, u: &UElement) -> Result<UElement> {
        let px = x.parity().ok_or(QwkError::NotHomogeneous)?;
        let xu = self.from_gelement(x);
        let (ue, uo) = self.split_parity(u);
        let mut out = self.multiply(&xu, u);
        out = out.sub(&self.multiply(&ue, &xu));
        let s = Scalar::from_int(-px.sign_with(Parity::Odd));
        out.add_scaled(&self.multiply(&uo, &xu), &s);
        Ok(out)
    }

    /// `ad(b)(u)` for a basis generator.
    pub fn adjoint_basis(&self, basis: usize, u: &UElement) -> UElement {
        self.adjoint(&self.qn.basis_element(basis), u).expect("basis elements are homogeneous")
    }

    /// Super-commutator `uv − (−1)^{|u||v|} vu` on homogeneous components.
    pub fn supercommutator(&self, u: &UElement, v: &UElement) -> UElement {
        let (ue, uo) = self.split_parity(u);
        let (ve, vo) = self.split_parity(v);
        let mut out = self.multiply(u, v);
        out = out.sub(&self.multiply(&ve, u));
        out = out.sub(&self.multiply(&vo, &ue));
        out.add(&self.multiply(&vo, &uo))
    }

    pub fn kazhdan_degree(&self, m: &PBWMonomial, grading: &GradingData) -> i64 {
        m.0.iter().map(|&(p, k)| k as i64 * grading.kazhdan(self.order[p as usize])).sum()
    }

    /// Largest Kazhdan degree among the terms (`None` for zero).
    pub fn filtration_degree(&self, u: &UElement, grading: &GradingData) -> Option<i64> {
        u.terms().map(|(m, _)| self.kazhdan_degree(m, grading)).max()
    }

    /// Drops terms of Kazhdan degree above `cap`.
    pub fn truncate(&self, u: &UElement, grading: &GradingData, cap: i64) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            if self.kazhdan_degree(m, grading) <= cap {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Weight of a monomial under the even Cartan (integer vector).
    pub fn weight(&self, m: &PBWMonomial) -> Vec<i64> {
        let n = self.qn.n();
        let mut w = vec![0i64; n];
        for &(p, k) in &m.0 {
            let g = self.gen_at(p as usize);
            if g.i != g.j {
                w[g.i] += k as i64;
                w[g.j] -= k as i64;
            }
        }
        w
    }

    pub fn monomial_to_string(&self, m: &PBWMonomial) -> String {
        m.0.iter()
            .map(|&(p, k)| {
                let g = self.gen_at(p as usize);
                if k == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Text form: `"2*e(1,2)^2*f(1,1) + -1*e(1,1) + 3"`.
    pub fn to_text(&self, u: &UElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        u.terms()
            .map(|(m, c)| if m.is_unit() { c.to_string() } else { format!("{c}*{}", self.monomial_to_string(m)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the text form; factors may appear in any order and are
    /// normal-ordered.
    pub fn parse(&self, s: &str) -> Result<UElement> {
        let t = s.trim();
        let n = self.qn.n();
        let mut out = UElement::zero();
        if t == "0" {
            return Ok(out);
        }
        for term in t.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(QwkError::Parse(format!("empty term in {s:?}")));
            }
            let mut coeff = Scalar::one();
            let mut word = Vec::new();
            for (i, factor) in term.split('*').enumerate() {
                let f = factor.trim();
                if i == 0 {
                    if let Ok(c) = f.parse::<Scalar>() {
                        coeff = c;
                        continue;
                    }
                }
                let (g, k) = match f.split_once('^') {
                    Some((g, k)) => (g, k.trim().parse::<usize>().map_err(|_| QwkError::Parse(format!("bad power {f:?}")))?),
                    None => (f, 1),
                };
                let g = match g.trim().strip_prefix('-') {
                    Some(rest) if i == 0 => {
                        coeff = -coeff;
                        rest
                    }
                    _ => g,
                };
                let b = Gen::parse(g, n)?.index(n);
                word.extend(std::iter::repeat_n(b, k));
            }
            out.add_scaled(&self.normal_form(&word, &coeff), &Scalar::one());
        }
        Ok(out)
    }

    pub fn to_json(&self, u: &UElement) -> UElementJson {
        let order = self.order.iter().map(|&b| self.qn.gen(b).to_string()).collect();
        let terms = u
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0u32; self.order.len()];
                for &(p, k) in &m.0 {
                    e[p as usize] = k as u32;
                }
                (e, c.clone())
            })
            .collect();
        UElementJson { order, terms }
    }

    pub fn from_json(&self, j: &UElementJson) -> Result<UElement> {
        if j.order.len() != self.order.len() {
            return Err(QwkError::Parse("order length mismatch".into()));
        }
        let n = self.qn.n();
        let pos: Vec<usize> = j.order.iter().map(|g| Gen::parse(g, n).map(|g| g.index(n))).collect::<Result<_>>()?;
        let mut out = UElement::zero();
        for (e, c) in &j.terms {
            let mut word = Vec::new();
            for (p, &k) in e.iter().enumerate() {
                word.extend(std::iter::repeat_n(pos[p], k as usize));
            }
            out.add_scaled(&self.normal_form(&word, c), &Scalar::one());
        }
        Ok(out)
    }

    /// Memo entries currently cached.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo poisoned").len()
    }
}

/// JSON form: exponent vectors over the generator order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UElementJson {
    pub order: Vec<String>,
    pub terms: Vec<(Vec<u32>, Scalar)>,
}

/// Data for reducing modulo the left ideal generated by `{a − χ(a) | a ∈ m}`.
#[derive(Clone, Debug)]
pub struct IdealDatum {
    /// Positions `≥ threshold` are exactly the generators of `m`.
    pub threshold: usize,
    /// `χ` on every basis index.
    pub chi: Vec<Scalar>,
}

impl IdealDatum {
    /// Checks that the order places exactly `m` last.
    pub fn new(env: &Enveloping, m: &[usize], chi: Vec<Scalar>) -> Result<Self> {
        let threshold = env.order().len() - m.len();
        for &a in m {
            if env.position(a) < threshold {
                return Err(QwkError::OrderIncompatible(format!("{} is not trailing", env.qn().gen(a))));
            }
        }
        if chi.len() != env.qn().dim() {
            return Err(QwkError::Invalid("χ must be given on every basis element".into()));
        }
        Ok(IdealDatum { threshold, chi })
    }
}

impl Enveloping {
    /// Canonical representative of `u + I_χ`.
    pub fn ideal_reduce(&self, u: &UElement, datum: &IdealDatum) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in u.terms() {
            let (prefix, tail) = m.split_at(datum.threshold);
            let mut val = c.clone();
            for &(p, k) in &tail.0 {
                let chi = &datum.chi[self.order[p as usize]];
                val = &val * &chi.pow(k as u32);
                if val.is_zero() {
                    break;
                }
            }
            out.add_term(prefix, val);
        }
        out
    }
}

/// Coordinates of `u` over an indexed monomial list.
pub fn coordinates(u: &UElement, index: &HashMap<PBWMonomial, usize>) -> Option<SparseVec<Scalar>> {
    let mut pairs = Vec::with_capacity(u.len());
    for (m, c) in u.terms() {
        pairs.push((*index.get(m)?, c.clone()));
    }
    Some(SparseVec::from_pairs(pairs))
}
