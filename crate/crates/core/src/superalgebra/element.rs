use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QwkError, Result};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(−1)^{|x||y|}`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// A basis generator `e(i,j)` or `f(i,j)`; indices are 0-based here and
/// 1-based in text.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub odd: bool,
    pub i: usize,
    pub j: usize,
}

impl Gen {
    pub fn e(i: usize, j: usize) -> Self {
        Gen { odd: false, i, j }
    }

    pub fn f(i: usize, j: usize) -> Self {
        Gen { odd: true, i, j }
    }

    pub fn index(self, n: usize) -> usize {
        (self.odd as usize) * n * n + self.i * n + self.j
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        let nn = n * n;
        let odd = idx >= nn;
        let r = idx % nn;
        Gen { odd, i: r / n, j: r % n }
    }

    pub fn parity(self) -> Parity {
        Parity::from_odd(self.odd)
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    /// Parses `e(i,j)` / `f(i,j)` with 1-based indices bounded by `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        let err = || QwkError::Parse(format!("bad generator {s:?}"));
        let odd = match t.chars().next() {
            Some('e') => false,
            Some('f') => true,
            _ => return Err(err()),
        };
        let inner = t[1..].trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let i: usize = a.trim().parse().map_err(|_| err())?;
        let j: usize = b.trim().parse().map_err(|_| err())?;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(QwkError::Parse(format!("generator {s:?} out of range for n = {n}")));
        }
        Ok(Gen { odd, i: i - 1, j: j - 1 })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", if self.odd { 'f' } else { 'e' }, self.i + 1, self.j + 1)
    }
}

/// An element of q(n) as a sparse coordinate vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GElement {
    n: usize,
    v: SparseVec<Scalar>,
}

impl GElement {
    pub fn zero(n: usize) -> Self {
        GElement { n, v: SparseVec::new() }
    }

    pub fn from_vec(n: usize, v: SparseVec<Scalar>) -> Self {
        debug_assert!(v.max_index().is_none_or(|m| m < 2 * n * n));
        GElement { n, v }
    }

    pub fn from_gen(n: usize, g: Gen) -> Self {
        Self::from_vec(n, SparseVec::unit(g.index(n)))
    }

    /// `e(i,j)` with 1-based indices.
    pub fn e(n: usize, i: usize, j: usize) -> Self {
        Self::from_gen(n, Gen::e(i - 1, j - 1))
    }

    /// `f(i,j)` with 1-based indices.
    pub fn f(n: usize, i: usize, j: usize) -> Self {
        Self::from_gen(n, Gen::f(i - 1, j - 1))
    }

    /// The identity matrix `Σ e(i,i)`, spanning the center.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, &vec![Scalar::one(); n])
    }

    /// `Σ d_i e(i,i)`.
    pub fn diagonal(n: usize, d: &[Scalar]) -> Self {
        Self::from_vec(n, SparseVec::from_pairs(d.iter().enumerate().map(|(i, c)| (Gen::e(i, i).index(n), c.clone()))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &SparseVec<Scalar> {
        &self.v
    }

    pub fn into_coords(self) -> SparseVec<Scalar> {
        self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn coeff(&self, g: Gen) -> Scalar {
        self.v.get(g.index(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Gen, &Scalar)> + '_ {
        self.v.iter().map(move |(k, c)| (Gen::from_index(*k, self.n), c))
    }

    /// Parity of a homogeneous element (zero counts as even); `None` if mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms().map(|(g, _)| g.parity());
        let first = it.next().unwrap_or(Parity::Even);
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    /// Diagonal entries if the element lies in the even Cartan subalgebra.
    pub fn as_even_diagonal(&self) -> Option<Vec<Scalar>> {
        if self.terms().any(|(g, _)| g.odd || !g.is_diagonal()) {
            return None;
        }
        Some((0..self.n).map(|i| self.coeff(Gen::e(i, i))).collect())
    }

    pub fn add(&self, o: &GElement) -> GElement {
        assert_eq!(self.n, o.n, "rank mismatch");
        GElement { n: self.n, v: self.v.add(&o.v) }
    }

    pub fn sub(&self, o: &GElement) -> GElement {
        assert_eq!(self.n, o.n, "rank mismatch");
        GElement { n: self.n, v: self.v.sub(&o.v) }
    }

    pub fn scale(&self, c: &Scalar) -> GElement {
        GElement { n: self.n, v: self.v.scale(c) }
    }

    pub fn neg(&self) -> GElement {
        self.scale(&-Scalar::one())
    }

    /// Parses the text grammar, e.g. `"3/2*e(1,2) + -1*f(2,2)"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero(n));
        }
        let mut pairs = Vec::new();
        for term in t.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(QwkError::Parse(format!("empty term in {s:?}")));
            }
            let (c, g) = match term.split_once('*') {
                Some((c, g)) => (c.trim().parse::<Scalar>().map_err(|e| QwkError::Parse(e.to_string()))?, g),
                None => match term.strip_prefix('-') {
                    Some(rest) => (-Scalar::one(), rest),
                    None => (Scalar::one(), term),
                },
            };
            pairs.push((Gen::parse(g, n)?.index(n), c));
        }
        Ok(Self::from_vec(n, SparseVec::from_pairs(pairs)))
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GElement[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct GElementJson {
    n: usize,
    terms: BTreeMap<String, Scalar>,
}

impl Serialize for GElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GElementJson { n: self.n, terms: self.terms().map(|(g, c)| (g.to_string(), c.clone())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GElementJson::deserialize(d)?;
        let mut pairs = Vec::new();
        for (g, c) in j.terms {
            let g = Gen::parse(&g, j.n).map_err(serde::de::Error::custom)?;
            pairs.push((g.index(j.n), c));
        }
        Ok(GElement::from_vec(j.n, SparseVec::from_pairs(pairs)))
    }
}
