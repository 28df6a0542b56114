//! Exact numbers in multiquadratic extensions of ℚ.
//!
//! Elements are finite sums `Σ q · i^a · √m` over squarefree positive `m` and
//! `a ∈ {0,1}`. These sums are linearly independent over ℚ, so the sparse term
//! map is a canonical form and equality is structural. Spin modules of the odd
//! Cartan need `√(−λ_j/λ_i)`, which is why this type exists.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{gcd_u64, squarefree_split, Scalar};

/// `i^imag · √rad`, `rad` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radical {
    pub imag: bool,
    pub rad: u64,
}

impl Radical {
    pub const ONE: Radical = Radical { imag: false, rad: 1 };

    fn mul(self, other: Radical) -> (Scalar, Radical) {
        let g = gcd_u64(self.rad, other.rad);
        let rad = (self.rad / g) * (other.rad / g);
        let mut coeff = Scalar::from_int(g as i64);
        let imag = self.imag ^ other.imag;
        if self.imag && other.imag {
            coeff = -coeff;
        }
        (coeff, Radical { imag, rad })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surd {
    terms: BTreeMap<Radical, Scalar>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from(Scalar::one())
    }

    /// Principal square root of a rational (`i√|q|` for negative `q`).
    ///
    /// Panics for rationals whose numerator-denominator product exceeds 64 bits.
    pub fn sqrt(q: &Scalar) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let (t, m, neg) = squarefree_split(q).expect("square root argument too large");
        let mut terms = BTreeMap::new();
        terms.insert(Radical { imag: neg, rad: m }, t);
        Surd { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Radical::ONE).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radical, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, r: Radical, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(r).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Surd { terms: self.terms.iter().map(|(r, c)| (*r, c * q)).collect() }
    }

    /// Splits `self = a + b·√p` where neither `a` nor `b` involves the
    /// generator `p` (`p == 0` stands for `i`).
    fn split_on(&self, p: u64) -> (Surd, Surd) {
        let mut a = Surd::zero();
        let mut b = Surd::zero();
        for (r, c) in &self.terms {
            let split = match r.rad.checked_div(p) {
                None => r.imag.then_some(Radical { imag: false, rad: r.rad }),
                Some(q) => (r.rad % p == 0).then_some(Radical { imag: r.imag, rad: q }),
            };
            if let Some(rr) = split {
                b.add_term(rr, c.clone());
            } else {
                a.add_term(*r, c.clone());
            }
        }
        (a, b)
    }

    fn generator(p: u64) -> Surd {
        let r = if p == 0 { Radical { imag: true, rad: 1 } } else { Radical { imag: false, rad: p } };
        let mut terms = BTreeMap::new();
        terms.insert(r, Scalar::one());
        Surd { terms }
    }

    /// Some adjoined generator present in `self`: `0` for `i`, else a prime.
    fn pick_generator(&self) -> Option<u64> {
        for r in self.terms.keys() {
            if r.imag {
                return Some(0);
            }
            if r.rad > 1 {
                let mut p = 2;
                while p * p <= r.rad {
                    if r.rad % p == 0 {
                        return Some(p);
                    }
                    p += 1;
                }
                return Some(r.rad);
            }
        }
        None
    }

    pub fn inv(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Surd::from(q.inv());
        }
        // x = a + b√p; x·(a − b√p) = a² − b²p lies in a smaller field.
        let p = self.pick_generator().expect("irrational element has a generator");
        let (a, b) = self.split_on(p);
        let g = Surd::generator(p);
        let conj = &a - &(&b * &g);
        let norm = &(&a * &a) - &(&(&b * &b) * &(&g * &g));
        &conj * &norm.inv()
    }
}

impl From<Scalar> for Surd {
    fn from(q: Scalar) -> Self {
        let mut s = Surd::zero();
        s.add_term(Radical::ONE, q);
        s
    }
}

impl From<i64> for Surd {
    fn from(v: i64) -> Self {
        Surd::from(Scalar::from_int(v))
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                let (k, r) = r1.mul(*r2);
                out.add_term(r, &(c1 * c2) * &k);
            }
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.iter().map(|(r, c)| (*r, -c)).collect() }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if r.imag {
                write!(f, "*i")?;
            }
            if r.rad > 1 {
                write!(f, "*sqrt({})", r.rad)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
