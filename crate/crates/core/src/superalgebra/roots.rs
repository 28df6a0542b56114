//! Weights, roots, the Weyl group S_n, and parabolic/Levi data.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{GElement, Gen};
use crate::error::{QwkError, Result};
use crate::scalar::Scalar;

/// A weight `Σ λ_i ε_i` of the even Cartan subalgebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![Scalar::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Adds the integer vector `d`.
    pub fn shift(&self, d: &[i64]) -> Weight {
        Weight(self.0.iter().zip(d).map(|(a, &b)| a + &Scalar::from_int(b)).collect())
    }

    /// `(λ, μ)` with `(ε_i, ε_j) = δ_ij`.
    pub fn pair(&self, o: &Weight) -> Scalar {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    /// Number of nonzero coordinates.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = QwkError;

    /// Comma-separated rationals, optionally parenthesized: `1,0` or `(1/2,-1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Err(QwkError::Parse(format!("empty weight {s:?}")));
        }
        t.split(',').map(|c| c.trim().parse::<Scalar>().map_err(|e| QwkError::Parse(e.to_string()))).collect::<Result<Vec<_>>>().map(Weight)
    }
}

/// Weight of a root vector as an integer vector (zero for Cartan elements).
pub fn root_vector(g: Gen, n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    if g.i != g.j {
        v[g.i] += 1;
        v[g.j] -= 1;
    }
    v
}

/// Height of `d` in the simple-root basis, if `d` is an ℕ-combination of
/// positive roots.
pub fn positive_height(d: &[Scalar]) -> Option<i64> {
    let mut prefix = Scalar::zero();
    let mut h = 0i64;
    for (k, c) in d.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        prefix += c;
        if k + 1 < d.len() {
            if prefix.is_negative() {
                return None;
            }
            h += prefix.to_i64()?;
        }
    }
    if prefix.is_zero() {
        Some(h)
    } else {
        None
    }
}

/// `λ ≤ μ` iff `μ − λ ∈ ℕΦ⁺`.
pub fn leq_order(lambda: &Weight, mu: &Weight) -> Result<bool> {
    if lambda.n() != mu.n() {
        return Err(QwkError::RankMismatch { left: lambda.n(), right: mu.n() });
    }
    Ok(positive_height(&mu.sub(lambda).0).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub n: usize,
    /// `(i, j)` with `i < j`, standing for `ε_i − ε_j` (0-based).
    pub positive: Vec<(usize, usize)>,
    /// `i` standing for `ε_i − ε_{i+1}`.
    pub simple: Vec<usize>,
    pub rho: Weight,
}

impl RootDatum {
    pub fn new(n: usize) -> Self {
        let positive = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let simple = (0..n.saturating_sub(1)).collect();
        let rho = Weight((0..n).map(|i| Scalar::new(n as i64 - 1 - 2 * i as i64, 2)).collect());
        RootDatum { n, positive, simple, rho }
    }

    pub fn root(&self, i: usize, j: usize) -> Weight {
        Weight::from_ints(&root_vector(Gen::e(i, j), self.n))
    }
}

/// A permutation of `{0..n−1}`, `w(i) = self.0[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &w) in self.0.iter().enumerate() {
            inv[w] = i;
        }
        Perm(inv)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&w| w < seen.len() && !std::mem::replace(&mut seen[w], true))
    }

    /// `(wλ)_{w(i)} = λ_i`.
    pub fn act(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.0.clone();
        for (i, &w) in self.0.iter().enumerate() {
            out[w] = lambda.0[i].clone();
        }
        Weight(out)
    }

    pub fn all(n: usize) -> Vec<Perm> {
        use itertools::Itertools;
        (0..n).permutations(n).map(Perm).collect()
    }
}

/// `w·λ = w(λ + ρ) − ρ`.
pub fn dot_action(w: &Perm, lambda: &Weight) -> Result<Weight> {
    if w.0.len() != lambda.n() || !w.is_valid() {
        return Err(QwkError::Invalid(format!("{:?} is not a permutation of rank {}", w.0, lambda.n())));
    }
    let rho = RootDatum::new(lambda.n()).rho;
    Ok(w.act(&lambda.add(&rho)).sub(&rho))
}

/// Tripartition of the basis by the sign of `α(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parabolic {
    pub u: Vec<usize>,
    pub l: Vec<usize>,
    pub u_minus: Vec<usize>,
}

/// Parabolic decomposition attached to a diagonal grader `H`.
pub fn parabolic_from_grader(h: &GElement) -> Result<Parabolic> {
    let n = h.n();
    let d = h.as_even_diagonal().ok_or_else(|| QwkError::Invalid("grader must lie in the even Cartan".into()))?;
    let mut p = Parabolic { u: vec![], l: vec![], u_minus: vec![] };
    for k in 0..2 * n * n {
        let g = Gen::from_index(k, n);
        let v = &d[g.i] - &d[g.j];
        if v.is_positive() {
            p.u.push(k);
        } else if v.is_negative() {
            p.u_minus.push(k);
        } else {
            p.l.push(k);
        }
    }
    Ok(p)
}

/// A character of the even nilradical, given by its values on `e(i,i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilCharacter {
    pub n: usize,
    pub values: Vec<Scalar>,
}

impl NilCharacter {
    pub fn new(n: usize, values: Vec<Scalar>) -> Result<Self> {
        if n < 2 {
            return Err(QwkError::Invalid("characters need n >= 2".into()));
        }
        if values.len() != n - 1 {
            return Err(QwkError::Invalid(format!("expected {} character values, got {}", n - 1, values.len())));
        }
        Ok(NilCharacter { n, values })
    }

    pub fn zero(n: usize) -> Self {
        NilCharacter { n, values: vec![Scalar::zero(); n.saturating_sub(1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// All simple values nonzero (so `l_ζ` is all of `g_0`).
    pub fn is_regular(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    /// Simple roots `i` (for `ε_i − ε_{i+1}`) with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    /// Value on a basis generator.
    pub fn value(&self, g: Gen) -> Scalar {
        if !g.odd && g.j == g.i + 1 {
            self.values[g.i].clone()
        } else {
            Scalar::zero()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDatum {
    pub simple: Vec<usize>,
    /// Maximal intervals of `{0..n−1}` connected by the simple roots above.
    pub blocks: Vec<Vec<usize>>,
}

impl LeviDatum {
    /// Sizes `n_1, …, n_k`; the Weyl group is `S_{n_1} × ⋯ × S_{n_k}`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn weyl_order(&self) -> u64 {
        self.blocks.iter().map(|b| (1..=b.len() as u64).product::<u64>()).product()
    }

    pub fn weyl_contains(&self, w: &Perm) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|i| b.contains(&w.0[*i])))
    }

    /// Elements of the Levi Weyl group.
    pub fn weyl_group(&self, n: usize) -> Vec<Perm> {
        Perm::all(n).into_iter().filter(|w| self.weyl_contains(w)).collect()
    }
}

pub fn levi_of_character(zeta: &NilCharacter) -> LeviDatum {
    let simple = zeta.support();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..zeta.n {
        match blocks.last_mut() {
            Some(b) if i > 0 && simple.contains(&(i - 1)) => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    LeviDatum { simple, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn dot_action_examples() {
        let s = Perm::transposition(2, 0, 1);
        assert_eq!(dot_action(&s, &w(&[0, 0])).unwrap(), w(&[-1, 1]));
        let l = w(&[3, -1, 2]);
        assert_eq!(dot_action(&Perm::identity(3), &l).unwrap(), l);
        for a in Perm::all(3) {
            for b in Perm::all(3) {
                let lhs = dot_action(&a, &dot_action(&b, &l).unwrap()).unwrap();
                assert_eq!(lhs, dot_action(&a.compose(&b), &l).unwrap());
            }
        }
        assert!(dot_action(&Perm(vec![0, 0]), &w(&[0, 0])).is_err());
    }

    #[test]
    fn dot_fixed_points() {
        // λ + ρ with equal coordinates is fixed by every w
        let rho = RootDatum::new(3).rho;
        let l = Weight(vec![Scalar::one(); 3]).sub(&rho);
        for p in Perm::all(3) {
            assert_eq!(dot_action(&p, &l).unwrap(), l);
        }
        let l2 = w(&[0, 0, 0]);
        assert!(Perm::all(3).iter().any(|p| dot_action(p, &l2).unwrap() != l2));
    }

    /// Brute-force closure of `λ ≤ λ + α` on the box `[−r, r]^n`.
    fn closure(n: usize, r: i64) -> HashSet<Vec<i64>> {
        let mut reach: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier = vec![vec![0i64; n]];
        reach.insert(vec![0; n]);
        let roots = RootDatum::new(n).positive;
        // allow walking outside the box slightly so targets inside are reached
        let bound = 3 * r;
        while let Some(v) = frontier.pop() {
            for &(i, j) in &roots {
                let mut u = v.clone();
                u[i] += 1;
                u[j] -= 1;
                if u.iter().all(|x| x.abs() <= bound) && reach.insert(u.clone()) {
                    frontier.push(u);
                }
            }
        }
        reach
    }

    #[test]
    fn leq_matches_closure() {
        for n in 1..=3 {
            let reach = closure(n, 3);
            let zero = Weight::zero(n);
            let mut all = vec![vec![]];
            for _ in 0..n {
                all = all.into_iter().flat_map(|v: Vec<i64>| (-3..=3).map(move |x| [v.clone(), vec![x]].concat())).collect();
            }
            for d in all {
                assert_eq!(leq_order(&zero, &w(&d)).unwrap(), reach.contains(&d), "{d:?}");
            }
        }
        assert!(leq_order(&w(&[0, 0, 0]), &w(&[1, 1, -2])).unwrap());
        assert!(leq_order(&w(&[0, 0]), &w(&[1, -1])).unwrap());
        assert!(!leq_order(&w(&[1, -1]), &w(&[0, 0])).unwrap());
    }

    #[test]
    fn parabolic_examples() {
        let n = 2;
        let p = parabolic_from_grader(&GElement::zero(n)).unwrap();
        assert!(p.u.is_empty() && p.u_minus.is_empty() && p.l.len() == 8);
        let p = parabolic_from_grader(&GElement::diagonal(2, &[Scalar::one(), Scalar::zero()])).unwrap();
        let names = |v: &[usize]| v.iter().map(|&k| Gen::from_index(k, n).to_string()).collect::<Vec<_>>();
        assert_eq!(names(&p.u), ["e(1,2)", "f(1,2)"]);
        assert_eq!(names(&p.u_minus), ["e(2,1)", "f(2,1)"]);
        assert_eq!(names(&p.l), ["e(1,1)", "e(2,2)", "f(1,1)", "f(2,2)"]);
        let one = Scalar::one();
        let p = parabolic_from_grader(&GElement::diagonal(3, &[one.clone(), one, Scalar::zero()])).unwrap();
        // q(2) ⊕ q(1): 2·(4 + 1) basis elements
        assert_eq!(p.l.len(), 10);
        assert_eq!(p.u.len(), 4);
    }

    #[test]
    fn levi_examples() {
        let z = NilCharacter::zero(3);
        let l = levi_of_character(&z);
        assert!(l.simple.is_empty());
        assert_eq!(l.blocks, vec![vec![0], vec![1], vec![2]]);
        let z = NilCharacter::new(3, vec![Scalar::one(), Scalar::zero()]).unwrap();
        let l = levi_of_character(&z);
        assert_eq!(l.simple, vec![0]);
        assert_eq!(l.blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(l.weyl_order(), 2);
        assert_eq!(l.weyl_group(3).len(), 2);
        let z = NilCharacter::new(2, vec![Scalar::from_int(5)]).unwrap();
        assert_eq!(levi_of_character(&z).simple, vec![0]);
        assert!(z.is_regular());
    }

    #[test]
    fn weight_parse() {
        assert_eq!("1,0".parse::<Weight>().unwrap(), w(&[1, 0]));
        assert_eq!("(1/2,-1)".parse::<Weight>().unwrap(), Weight(vec![Scalar::new(1, 2), Scalar::from_int(-1)]));
        assert!("".parse::<Weight>().is_err());
        assert!("1,x".parse::<Weight>().is_err());
    }
}
