//! Exact rational scalars.
//!
//! Values that fit in machine words stay on an `i64` fast path; anything that
//! overflows is promoted to a `BigRational` transparently. Both representations
//! are kept in canonical form (reduced, positive denominator), and a value is
//! stored big only when it does not fit the small form, so equality and
//! hashing can compare representations directly.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Scalar(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Small(v, 1))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Self::zero();
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced; demote when possible.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Scalar(Repr::Small(n, d));
        }
        Scalar(Repr::Big(r))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Numerator and denominator as big integers.
    pub fn parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }

    pub fn inv(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("inverse of zero"),
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Self::from_int(v as i64)
    }
}

impl From<usize> for Scalar {
    fn from(v: usize) -> Self {
        Self::from_int(v as i64)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Scalar(Repr::Small(s, 1));
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => Scalar::from_i128(s, z),
                        None => Scalar::from_big(self.to_big() + rhs.to_big()),
                    },
                    _ => Scalar::from_big(self.to_big() + rhs.to_big()),
                }
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Scalar::zero(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Scalar(Repr::Small(p, 1));
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                // cross-cancel first so the products stay small
                let g1 = gcd_i128(a, d);
                let g2 = gcd_i128(c, b);
                let n = (a / g1) * (c / g2);
                let m = (b / g2) * (d / g1);
                Scalar::from_i128(n, m)
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar(Repr::Small(m, *d)),
                None => Scalar::from_big(-self.to_big()),
            },
            Repr::Big(r) => Scalar::from_big(-r.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let ok = |x: &str| {
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
        };
        if !ok(num) || !ok(den) || den.starts_with(['-', '+']) {
            return Err(err());
        }
        let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| err())?;
        let d: BigInt = den.trim_start_matches('+').parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Squarefree decomposition of a nonzero rational: `q = sign * t^2 * m / 1`
/// with `m` a squarefree positive integer; returns `(t, m, negative)`.
///
/// Only word-sized inputs are supported; larger inputs yield `None`.
pub fn squarefree_split(q: &Scalar) -> Option<(Scalar, u64, bool)> {
    if q.is_zero() {
        return None;
    }
    let (n, d) = match &q.0 {
        Repr::Small(n, d) => (*n, *d),
        Repr::Big(_) => return None,
    };
    let negative = n < 0;
    // sqrt(n/d) = sqrt(n*d)/d
    let prod = (n.unsigned_abs() as u128) * (d as u128);
    let prod = u64::try_from(prod).ok()?;
    let (sq, free) = split_square(prod);
    Some((Scalar::new(i64::try_from(sq).ok()?, d), free, negative))
}

/// `v = sq^2 * free` with `free` squarefree.
fn split_square(mut v: u64) -> (u64, u64) {
    let mut sq = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= v {
        let mut e = 0;
        while v.is_multiple_of(p) {
            v /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            sq *= p;
        }
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= v;
    (sq, free)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let q: Scalar = "3/2".parse().unwrap();
        assert_eq!(q.to_string(), "3/2");
        assert_eq!("-4/2".parse::<Scalar>().unwrap().to_string(), "-2");
        assert_eq!("6/-4".parse::<Scalar>(), Err(ParseScalarError("6/-4".into())));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let s = &big + &big;
        assert_eq!(s.to_string(), "18446744073709551614");
        let back = &s - &big;
        assert_eq!(back, big);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let tiny = Scalar::new(1, i64::MAX);
        let p = &tiny * &tiny;
        assert_eq!(&p * &Scalar::from_int(i64::MAX), tiny);
    }

    #[test]
    fn squarefree() {
        let (t, m, neg) = squarefree_split(&Scalar::new(-8, 3)).unwrap();
        // sqrt(8/3) = sqrt(24)/3 = 2 sqrt(6)/3
        assert_eq!((t, m, neg), (Scalar::new(2, 3), 6, true));
        assert_eq!(squarefree_split(&Scalar::from_int(9)).unwrap(), (Scalar::from_int(3), 1, false));
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| Scalar::new(a, b))
    }

    proptest! {
        #[test]
        fn field_laws(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            let s: Scalar = a.to_string().parse().unwrap();
            prop_assert_eq!(s, a);
        }
    }
}
