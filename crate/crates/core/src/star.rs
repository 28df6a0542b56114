//! ħ-truncated star products: Moyal–Weyl on a symplectic superspace and
//! Gutt on `S(g)` transported from `U(g)` by symmetrization.
//!
//! Only even powers of ħ occur; a term tagged `k` carries `ħ^{2k}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{QwkError, Result};
use crate::pbw::{Enveloping, PBWMonomial, UElement};
use crate::scalar::Scalar;
use crate::superalgebra::Qn;
use crate::walgebra::SymplecticData;

/// Largest supported `ħ²`-order cap.
pub const MAX_HBAR_ORDER: u32 = 8;

/// Named variables with parities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    pub names: Vec<String>,
    pub odd: Vec<bool>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The basis of `q(n)` (or a subset of it), named as generators.
    pub fn from_qn(q: &Qn, indices: &[usize]) -> Self {
        GradedBasis { names: indices.iter().map(|&k| q.gen(k).to_string()).collect(), odd: indices.iter().map(|&k| q.parity(k).is_odd()).collect() }
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.names.iter().position(|n| *n == key)
    }
}

/// `(variable, exponent)` pairs, variables increasing, odd exponents 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperMonomial(pub Vec<(u16, u16)>);

impl SuperMonomial {
    pub fn unit() -> Self {
        SuperMonomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        SuperMonomial(vec![(i as u16, 1)])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    fn odd_count(&self, odd: &[bool], pred: impl Fn(u16) -> bool) -> usize {
        self.0.iter().filter(|&&(v, _)| odd[v as usize] && pred(v)).count()
    }

    pub fn is_odd(&self, odd: &[bool]) -> bool {
        self.odd_count(odd, |_| true) % 2 == 1
    }

    /// Supercommutative product with its sign, `None` if an odd variable repeats.
    pub fn mul(&self, o: &SuperMonomial, odd: &[bool]) -> Option<(SuperMonomial, bool)> {
        let mut neg = false;
        // moving each odd factor of `o` left past the larger odd factors of `self`
        for &(v, _) in &o.0 {
            if odd[v as usize] {
                if self.0.iter().any(|&(u, _)| u == v) {
                    return None;
                }
                neg ^= self.odd_count(odd, |u| u > v) % 2 == 1;
            }
        }
        let mut out: BTreeMap<u16, u16> = self.0.iter().copied().collect();
        for &(v, e) in &o.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Some((SuperMonomial(out.into_iter().collect()), neg))
    }

    /// Left derivative `∂_j`: coefficient and result, `None` when zero.
    pub fn left_derivative(&self, j: usize, odd: &[bool]) -> Option<(Scalar, SuperMonomial)> {
        let pos = self.0.iter().position(|&(v, _)| v as usize == j)?;
        let e = self.0[pos].1;
        let mut c = Scalar::from_int(e as i64);
        if odd[j] && self.odd_count(odd, |u| (u as usize) < j) % 2 == 1 {
            c = -c;
        }
        Some((c, self.lowered(pos)))
    }

    /// Right derivative `∂⃖_i`.
    pub fn right_derivative(&self, i: usize, odd: &[bool]) -> Option<(Scalar, SuperMonomial)> {
        let pos = self.0.iter().position(|&(v, _)| v as usize == i)?;
        let e = self.0[pos].1;
        let mut c = Scalar::from_int(e as i64);
        if odd[i] && self.odd_count(odd, |u| (u as usize) > i) % 2 == 1 {
            c = -c;
        }
        Some((c, self.lowered(pos)))
    }

    fn lowered(&self, pos: usize) -> SuperMonomial {
        let mut m = self.0.clone();
        if m[pos].1 == 1 {
            m.remove(pos);
        } else {
            m[pos].1 -= 1;
        }
        SuperMonomial(m)
    }
}

/// Polynomial in a graded basis with `ħ²` orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyElement {
    /// `(ħ²-order, monomial) ↦ coefficient`.
    pub terms: BTreeMap<(u32, SuperMonomial), Scalar>,
}

impl PolyElement {
    pub fn zero() -> Self {
        PolyElement::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = PolyElement::zero();
        p.add_term(0, SuperMonomial::unit(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = PolyElement::zero();
        p.add_term(0, SuperMonomial::var(i), Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: u32, m: SuperMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (k, m);
        let v = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *v += &c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, o: &PolyElement, c: &Scalar) {
        for ((k, m), v) in &o.terms {
            self.add_term(*k, m.clone(), v * c);
        }
    }

    pub fn sub(&self, o: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::from_int(-1));
        out
    }

    /// Coefficient of `ħ^{2k}` as a polynomial at order 0.
    pub fn hbar_coefficient(&self, k: u32) -> PolyElement {
        let mut out = PolyElement::zero();
        for ((kk, m), c) in &self.terms {
            if *kk == k {
                out.add_term(0, m.clone(), c.clone());
            }
        }
        out
    }

    /// Multiplies by `ħ^{2k}`.
    pub fn shift_hbar(&self, k: u32) -> PolyElement {
        PolyElement { terms: self.terms.iter().map(|((kk, m), c)| ((kk + k, m.clone()), c.clone())).collect() }
    }

    /// Drops orders above `cap`.
    pub fn truncate(&self, cap: u32) -> PolyElement {
        PolyElement { terms: self.terms.iter().filter(|((k, _), _)| *k <= cap).map(|(a, b)| (a.clone(), b.clone())).collect() }
    }

    /// `ħ = 1`.
    pub fn specialize(&self) -> PolyElement {
        let mut out = PolyElement::zero();
        for ((_, m), c) in &self.terms {
            out.add_term(0, m.clone(), c.clone());
        }
        out
    }

    /// Supercommutative product (no ħ-corrections).
    pub fn commutative_mul(&self, o: &PolyElement, odd: &[bool]) -> PolyElement {
        let mut out = PolyElement::zero();
        for ((ka, a), ca) in &self.terms {
            for ((kb, b), cb) in &o.terms {
                if let Some((m, neg)) = a.mul(b, odd) {
                    let c = ca * cb;
                    out.add_term(ka + kb, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Parity if homogeneous (zero counts as even).
    pub fn parity(&self, odd: &[bool]) -> Option<bool> {
        let mut ps = self.terms.keys().map(|(_, m)| m.is_odd(odd));
        let first = ps.next().unwrap_or(false);
        ps.all(|p| p == first).then_some(first)
    }

    /// Text form `"3/2*hbar^2*x*y^2 + -1*z"`.
    pub fn to_text(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((k, m), c)| {
                let mut parts = vec![c.to_string()];
                if *k > 0 {
                    parts.push(format!("hbar^{}", 2 * k));
                }
                for &(v, e) in &m.0 {
                    let name = &basis.names[v as usize];
                    parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
                }
                parts.join("*")
            })
            .join(" + ")
    }

    /// Parses the text form; factors may come in any order and are
    /// supercommuted into place.
    pub fn parse(s: &str, basis: &GradedBasis) -> Result<PolyElement> {
        let t = s.trim();
        let mut out = PolyElement::zero();
        if t == "0" {
            return Ok(out);
        }
        for term in t.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(QwkError::Parse(format!("empty term in {s:?}")));
            }
            let mut p = PolyElement::constant(Scalar::one());
            let mut hbar = 0u32;
            for (i, factor) in term.split('*').enumerate() {
                let f = factor.trim();
                if i == 0 {
                    if let Ok(c) = f.parse::<Scalar>() {
                        p = PolyElement::constant(c);
                        continue;
                    }
                }
                let (mut name, e) = match f.rsplit_once('^') {
                    Some((g, k)) => (g.trim(), k.trim().parse::<u32>().map_err(|_| QwkError::Parse(format!("bad power {f:?}")))?),
                    None => (f, 1),
                };
                if i == 0 {
                    if let Some(rest) = name.strip_prefix('-') {
                        p = PolyElement::constant(Scalar::from_int(-1));
                        name = rest;
                    }
                }
                if name == "hbar" {
                    if e % 2 == 1 {
                        return Err(QwkError::Parse(format!("odd power of hbar in {term:?}")));
                    }
                    hbar += e / 2;
                    continue;
                }
                let v = basis.lookup(name).ok_or_else(|| QwkError::Parse(format!("unknown variable {name:?}")))?;
                for _ in 0..e {
                    p = p.commutative_mul(&PolyElement::var(v), &basis.odd);
                }
            }
            out.add_scaled(&p.shift_hbar(hbar), &Scalar::one());
        }
        Ok(out)
    }
}

fn check_cap(cap: u32) -> Result<()> {
    if cap > MAX_HBAR_ORDER {
        return Err(QwkError::CapExceeded { cap: cap as usize, max: MAX_HBAR_ORDER as usize });
    }
    Ok(())
}

/// Moyal–Weyl product `μ ∘ exp((ħ²/2) Σ π^{ij} ∂⃖_i ⊗ ∂⃗_j)` for a constant
/// even form `π` (antisymmetric on even, symmetric on odd variables).
#[derive(Clone, Debug)]
pub struct MoyalWeyl {
    pub basis: GradedBasis,
    pub pi: Vec<Vec<Scalar>>,
}

impl MoyalWeyl {
    pub fn new(basis: GradedBasis, pi: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = basis.len();
        if pi.len() != d || pi.iter().any(|r| r.len() != d) {
            return Err(QwkError::Invalid("form has the wrong shape".into()));
        }
        for (i, row) in pi.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                let b = &pi[j][i];
                if basis.odd[i] != basis.odd[j] && !a.is_zero() {
                    return Err(QwkError::Invalid("form pairs even with odd variables".into()));
                }
                let ok = if basis.odd[i] && basis.odd[j] { a == b } else { *a == -b.clone() };
                if !ok {
                    return Err(QwkError::Invalid("form lacks the required supersymmetry".into()));
                }
            }
        }
        Ok(MoyalWeyl { basis, pi })
    }

    /// `V = g(−1)` with `ω_χ` from the symplectic data.
    pub fn from_symplectic(q: &Qn, s: &SymplecticData) -> Result<Self> {
        Self::new(GradedBasis::from_qn(q, &s.space), s.gram.clone())
    }

    /// `Σ π^{ij} (a ∂⃖_i)(∂⃗_j b)` as a list of scaled monomial pairs.
    fn contract(&self, pairs: &[(Scalar, SuperMonomial, SuperMonomial)]) -> Vec<(Scalar, SuperMonomial, SuperMonomial)> {
        let odd = &self.basis.odd;
        let mut acc: BTreeMap<(SuperMonomial, SuperMonomial), Scalar> = BTreeMap::new();
        for (c, a, b) in pairs {
            for &(i, _) in &a.0 {
                let Some((ca, da)) = a.right_derivative(i as usize, odd) else { continue };
                for &(j, _) in &b.0 {
                    let p = &self.pi[i as usize][j as usize];
                    if p.is_zero() {
                        continue;
                    }
                    let Some((cb, db)) = b.left_derivative(j as usize, odd) else { continue };
                    let v = acc.entry((da.clone(), db)).or_insert_with(Scalar::zero);
                    *v += &(&(c * p) * &(&ca * &cb));
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (c, a, b)).collect()
    }

    /// `p ∗ q` to order `ħ^{2 cap}`.
    pub fn star(&self, p: &PolyElement, q: &PolyElement, cap: u32) -> Result<PolyElement> {
        check_cap(cap)?;
        let odd = &self.basis.odd;
        let mut out = PolyElement::zero();
        for ((ka, a), ca) in &p.terms {
            for ((kb, b), cb) in &q.terms {
                let base = ka + kb;
                let mut pairs = vec![(ca * cb, a.clone(), b.clone())];
                let mut k = 0u32;
                let mut factor = Scalar::one();
                while base + k <= cap && !pairs.is_empty() {
                    for (c, x, y) in &pairs {
                        if let Some((m, neg)) = x.mul(y, odd) {
                            let v = c * &factor;
                            out.add_term(base + k, m, if neg { -v } else { v });
                        }
                    }
                    pairs = self.contract(&pairs);
                    k += 1;
                    // (1/2)^k / k!
                    factor = &factor * &Scalar::new(1, 2 * k as i64);
                }
            }
        }
        Ok(out)
    }

    /// `{p, q} = Σ π^{ij} (p ∂⃖_i)(∂⃗_j q)`.
    pub fn poisson(&self, p: &PolyElement, q: &PolyElement) -> PolyElement {
        let odd = &self.basis.odd;
        let mut out = PolyElement::zero();
        for ((ka, a), ca) in &p.terms {
            for ((kb, b), cb) in &q.terms {
                for (c, x, y) in self.contract(&[(ca * cb, a.clone(), b.clone())]) {
                    if let Some((m, neg)) = x.mul(&y, odd) {
                        out.add_term(ka + kb, m, if neg { -c } else { c });
                    }
                }
            }
        }
        out
    }
}

/// Gutt product on `S(g)`: `β^{-1}(β(p) β(q))` with `ħ^{2j}` on the part of
/// polynomial degree `deg p + deg q − j`.
pub struct Gutt {
    pub basis: GradedBasis,
    env: Enveloping,
    sym_cache: RwLock<HashMap<SuperMonomial, Arc<UElement>>>,
}

impl fmt::Debug for Gutt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gutt").field("basis", &self.basis).finish()
    }
}

impl Gutt {
    pub fn new(q: Arc<Qn>) -> Self {
        let all: Vec<usize> = (0..q.dim()).collect();
        let basis = GradedBasis::from_qn(&q, &all);
        Gutt { basis, env: Enveloping::standard(q), sym_cache: RwLock::new(HashMap::new()) }
    }

    pub fn enveloping(&self) -> &Enveloping {
        &self.env
    }

    /// `β(x_1⋯x_k) = (1/k!) Σ_σ ε(σ) x_{σ1}⋯x_{σk}` in PBW normal form.
    pub fn symmetrize_monomial(&self, m: &SuperMonomial) -> Arc<UElement> {
        if let Some(u) = self.sym_cache.read().expect("cache").get(m) {
            return u.clone();
        }
        let word: Vec<usize> = m.0.iter().flat_map(|&(v, e)| std::iter::repeat_n(v as usize, e as usize)).collect();
        let k = word.len();
        let odd = &self.basis.odd;
        let mut acc = UElement::zero();
        let mut count = 0i64;
        for perm in (0..k).permutations(k) {
            // Koszul sign: inversions among odd letters
            let mut neg = false;
            for a in 0..k {
                for b in a + 1..k {
                    if perm[a] > perm[b] && odd[word[perm[a]]] && odd[word[perm[b]]] {
                        neg = !neg;
                    }
                }
            }
            let w: Vec<usize> = perm.iter().map(|&p| word[p]).collect();
            acc.add_scaled(&self.env.normal_form(&w, &Scalar::one()), &Scalar::from_int(if neg { -1 } else { 1 }));
            count += 1;
        }
        let u = Arc::new(acc.scale(&Scalar::new(1, count.max(1))));
        self.sym_cache.write().expect("cache").insert(m.clone(), u.clone());
        u
    }

    /// `β` on an order-0 polynomial (ħ-orders are ignored).
    pub fn symmetrize(&self, p: &PolyElement) -> UElement {
        let mut out = UElement::zero();
        for ((_, m), c) in &p.terms {
            out.add_scaled(&self.symmetrize_monomial(m), c);
        }
        out
    }

    fn pbw_to_mono(m: &PBWMonomial) -> SuperMonomial {
        // the standard order places basis index = position
        SuperMonomial(m.0.clone())
    }

    /// `β^{-1}`: peels off leading symbols degree by degree.
    pub fn desymmetrize(&self, u: &UElement) -> PolyElement {
        let mut rest = u.clone();
        let mut out = PolyElement::zero();
        while let Some(top) = rest.terms().map(|(m, _)| m.length()).max() {
            let lead: Vec<(SuperMonomial, Scalar)> =
                rest.terms().filter(|(m, _)| m.length() == top).map(|(m, c)| (Self::pbw_to_mono(m), c.clone())).collect();
            for (m, c) in lead {
                rest.add_scaled(&self.symmetrize_monomial(&m), &-c.clone());
                out.add_term(0, m, c);
            }
        }
        out
    }

    /// `p ∗ q` to order `ħ^{2 cap}`.
    pub fn star(&self, p: &PolyElement, q: &PolyElement, cap: u32) -> Result<PolyElement> {
        check_cap(cap)?;
        let mut out = PolyElement::zero();
        for ((ka, a), ca) in &p.terms {
            for ((kb, b), cb) in &q.terms {
                let base = ka + kb;
                if base > cap {
                    continue;
                }
                let prod = self.env.multiply(&self.symmetrize_monomial(a), &self.symmetrize_monomial(b));
                let total = a.degree() + b.degree();
                let c = ca * cb;
                for ((_, m), v) in self.desymmetrize(&prod).terms {
                    let j = (total - m.degree()) as u32;
                    if base + j <= cap {
                        out.add_term(base + j, m, &v * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Linear Poisson bracket `{x, y} = [x, y]` extended as a biderivation.
    pub fn poisson(&self, p: &PolyElement, q: &PolyElement) -> PolyElement {
        let odd = &self.basis.odd;
        let qn = self.env.qn();
        let mut out = PolyElement::zero();
        for ((ka, a), ca) in &p.terms {
            for ((kb, b), cb) in &q.terms {
                for &(i, _) in &a.0 {
                    let Some((c1, da)) = a.right_derivative(i as usize, odd) else { continue };
                    for &(j, _) in &b.0 {
                        let Some((c2, db)) = b.left_derivative(j as usize, odd) else { continue };
                        for (k, v) in qn.bracket_basis(i as usize, j as usize).iter() {
                            let Some((m1, n1)) = da.mul(&SuperMonomial::var(*k), odd) else { continue };
                            let Some((m, n2)) = m1.mul(&db, odd) else { continue };
                            let c = &(&(ca * cb) * &(&c1 * &c2)) * v;
                            out.add_term(ka + kb, m, if n1 ^ n2 { -c } else { c });
                        }
                    }
                }
            }
        }
        out
    }
}

/// `p ∗ q − (−1)^{|p||q|} q ∗ p` for homogeneous inputs.
pub fn super_commutator(
    star: impl Fn(&PolyElement, &PolyElement) -> Result<PolyElement>,
    p: &PolyElement,
    q: &PolyElement,
    odd: &[bool],
) -> Result<PolyElement> {
    let (pp, pq) = match (p.parity(odd), q.parity(odd)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(QwkError::NotHomogeneous),
    };
    let mut out = star(p, q)?;
    out.add_scaled(&star(q, p)?, &Scalar::from_int(if pp && pq { 1 } else { -1 }));
    Ok(out)
}
