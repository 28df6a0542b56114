//! Nilpotent characters, the `Λ(ν)` membership criterion, and windowed
//! Whittaker-vector solvers on truncated modules.
//!
//! A window `[d0, d1]` selects the basis vectors of depth `d0..=d1`. The even
//! simple root vectors `x = e(i,i+1)` raise weights, so `(x − ζ(x))v` has
//! components at depths `d0−1..=d1`. In the default mode the components at
//! the two horizons (`d0−1`, where the vector was cut off above, and `d1`,
//! where deeper components were cut off) are not constrained and their rank
//! is reported as leakage. Strict mode constrains every component.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{QwkError, Result};
use crate::highest_weight::TruncatedModule;
use crate::linalg::{nullspace, rank, Field, SparseVec};
use crate::scalar::Scalar;
use crate::superalgebra::roots::{levi_of_character, LeviDatum, NilCharacter};
use crate::superalgebra::{Gen, Weight};
use crate::surd::Surd;

pub use crate::highest_weight::{h_eigen_split, induce_from_even, EigenSplit};

pub fn make_character(n: usize, values: &[Scalar]) -> Result<NilCharacter> {
    NilCharacter::new(n, values.to_vec())
}

/// `l_ζ` as a Levi datum (simple roots with nonzero value and their blocks).
pub fn levi_of(zeta: &NilCharacter) -> LeviDatum {
    levi_of_character(zeta)
}

/// Which condition of the criterion decided membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum LambdaNuReason {
    Member,
    /// `(λ, ε_i − ε_{i+1}) ∈ ℤ_{>0}` for a simple root in the support of ζ.
    PositivePairing {
        index: usize,
        value: Scalar,
    },
    /// `λ_i = λ_{i+1} ≠ 0`.
    EqualNonzero {
        index: usize,
        value: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaNuVerdict {
    pub member: bool,
    pub reason: LambdaNuReason,
}

/// Membership of `λ` in `Λ(ν)`:
/// (i) `(λ, α_i) ∉ ℤ_{>0}` for every simple `α_i` with `ζ(e(i,i+1)) ≠ 0`;
/// (ii) `λ_i = λ_{i+1}` implies `λ_i = 0`, for every adjacent pair.
/// Condition (ii) is reported first when both fail. Indices in the reason
/// are 1-based.
pub fn lambda_nu_member(lambda: &Weight, zeta: &NilCharacter) -> Result<LambdaNuVerdict> {
    let n = lambda.n();
    if n != zeta.n {
        return Err(QwkError::RankMismatch { left: n, right: zeta.n });
    }
    for i in 0..n.saturating_sub(1) {
        if lambda.0[i] == lambda.0[i + 1] && !lambda.0[i].is_zero() {
            return Ok(LambdaNuVerdict { member: false, reason: LambdaNuReason::EqualNonzero { index: i + 1, value: lambda.0[i].clone() } });
        }
    }
    for i in zeta.support() {
        let p = &lambda.0[i] - &lambda.0[i + 1];
        if p.is_integer() && p.is_positive() {
            return Ok(LambdaNuVerdict { member: false, reason: LambdaNuReason::PositivePairing { index: i + 1, value: p } });
        }
    }
    Ok(LambdaNuVerdict { member: true, reason: LambdaNuReason::Member })
}

/// Solution space of a window solve.
#[derive(Clone, Debug)]
pub struct WhittakerWindow {
    pub n: usize,
    pub zeta: NilCharacter,
    pub window: (i64, i64),
    pub strict: bool,
    /// Exponent `N` of `(x − ζ(x))^N`; 1 for Whittaker vectors.
    pub power: usize,
    pub basis: Vec<SparseVec<Surd>>,
    /// Depth ↦ rank of the projection of the solutions to that depth.
    pub slice_dims: BTreeMap<i64, usize>,
    /// Rank of the unconstrained horizon components over the solution space.
    pub leakage_rank: usize,
    depths: Vec<i64>,
}

/// JSON summary of a window solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerSummary {
    pub window: (i64, i64),
    pub strict: bool,
    pub power: usize,
    pub dim: usize,
    pub slices: BTreeMap<i64, usize>,
    pub leakage_rank: usize,
}

impl WhittakerWindow {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn summary(&self) -> WhittakerSummary {
        WhittakerSummary {
            window: self.window,
            strict: self.strict,
            power: self.power,
            dim: self.dim(),
            slices: self.slice_dims.clone(),
            leakage_rank: self.leakage_rank,
        }
    }

    /// Solutions restricted to the depths of `sub` (a sub-window).
    pub fn project(&self, sub: (i64, i64)) -> Vec<SparseVec<Surd>> {
        self.basis.iter().map(|v| v.filter(|i| (sub.0..=sub.1).contains(&self.depths[i]))).filter(|v| !v.is_zero()).collect()
    }

    /// Dimension of the projection of the solutions to the depths of `sub`.
    pub fn projected_dim(&self, sub: (i64, i64)) -> usize {
        rank(&self.project(sub))
    }

    /// Whether `span(vs) ⊆ span(self.basis)`.
    pub fn contains_span(&self, vs: &[SparseVec<Surd>]) -> bool {
        let r = rank(&self.basis);
        let mut all = self.basis.clone();
        all.extend(vs.iter().cloned());
        rank(&all) == r
    }
}

fn check_window(m: &TruncatedModule, window: (i64, i64)) -> Result<()> {
    let (d0, d1) = window;
    if d0 < 0 || d1 < d0 || d1 > m.depth {
        return Err(QwkError::WindowOutOfRange { d0: d0.max(0) as usize, d1: d1.max(0) as usize, depth: m.depth.max(0) as usize });
    }
    Ok(())
}

fn simple_ops(m: &TruncatedModule, zeta: &NilCharacter) -> Result<Vec<(usize, Surd)>> {
    if m.n != zeta.n {
        return Err(QwkError::RankMismatch { left: m.n, right: zeta.n });
    }
    let n = m.n;
    (0..n.saturating_sub(1))
        .map(|i| {
            let k = Gen::e(i, i + 1).index(n);
            if !m.action.contains_key(&k) {
                return Err(QwkError::Invalid(format!("module carries no action of {}", Gen::e(i, i + 1))));
            }
            Ok((k, Surd::from(zeta.values[i].clone())))
        })
        .collect()
}

/// Shared solver: kernel of `(x − ζ(x))^N` on the window, with the image
/// compressed to the window (non-strict) and constrained at `constrained`.
fn solve(m: &TruncatedModule, zeta: &NilCharacter, window: (i64, i64), strict: bool, power: usize) -> Result<WhittakerWindow> {
    check_window(m, window)?;
    if power == 0 {
        return Err(QwkError::Invalid("power must be positive".into()));
    }
    let ops = simple_ops(m, zeta)?;
    let (d0, d1) = window;
    let in_window = |i: usize| (d0..=d1).contains(&m.depths[i]);
    let domain: Vec<usize> = (0..m.dim()).filter(|&i| in_window(i)).collect();
    let np = power as i64;
    let constrained = |i: usize| strict || (d0..=d1 - np).contains(&m.depths[i]);
    let mut rows: Vec<SparseVec<Surd>> = Vec::new();
    let mut leak_rows: Vec<SparseVec<Surd>> = Vec::new();
    for (g, c) in &ops {
        let a = &m.action[g];
        let step = |v: &SparseVec<Surd>| -> SparseVec<Surd> {
            let mut w = a.apply(v);
            if !c.is_zero() {
                w = w.add_scaled(v, &c.neg());
            }
            if strict {
                w
            } else {
                w.filter(in_window)
            }
        };
        let mut acc: BTreeMap<usize, Vec<(usize, Surd)>> = BTreeMap::new();
        let mut leak: BTreeMap<usize, Vec<(usize, Surd)>> = BTreeMap::new();
        for (col, &j) in domain.iter().enumerate() {
            let mut w = SparseVec::unit(j);
            // horizon components of the first application, for the leakage report
            let first = {
                let mut u = a.apply(&w);
                if !c.is_zero() {
                    u = u.add_scaled(&w, &c.neg());
                }
                u
            };
            for _ in 0..power {
                w = step(&w);
            }
            for (i, v) in w.iter() {
                if constrained(*i) {
                    acc.entry(*i).or_default().push((col, v.clone()));
                }
            }
            if !strict {
                for (i, v) in first.iter() {
                    if !(d0..d1).contains(&m.depths[*i]) {
                        leak.entry(*i).or_default().push((col, v.clone()));
                    }
                }
            }
        }
        rows.extend(acc.into_values().map(SparseVec::from_pairs));
        leak_rows.extend(leak.into_values().map(SparseVec::from_pairs));
    }
    let local = nullspace(&rows, domain.len());
    let leakage_rank = if local.is_empty() || leak_rows.is_empty() {
        0
    } else {
        // rank of (leak rows) · (solution matrix): images of the solutions
        let images: Vec<SparseVec<Surd>> = local
            .iter()
            .map(|s| SparseVec::from_pairs(leak_rows.iter().enumerate().map(|(r, row)| (r, row.dot(s))).filter(|(_, v)| !v.is_zero())))
            .collect();
        rank(&images)
    };
    let basis: Vec<SparseVec<Surd>> = local.into_iter().map(|v| v.reindex(|c| domain[c])).collect();
    let depths_in: BTreeSet<i64> = domain.iter().map(|&i| m.depths[i]).collect();
    let slice_dims = depths_in
        .into_iter()
        .map(|h| {
            let proj: Vec<SparseVec<Surd>> = basis.iter().map(|v| v.filter(|i| m.depths[i] == h)).collect();
            (h, rank(&proj))
        })
        .collect();
    Ok(WhittakerWindow { n: m.n, zeta: zeta.clone(), window, strict, power, basis, slice_dims, leakage_rank, depths: m.depths.clone() })
}

/// Vectors supported on the window with `(x − ζ(x))v = 0` for every even
/// simple root vector `x`, up to the horizon components (or exactly, with
/// `strict`).
pub fn whittaker_vectors(m: &TruncatedModule, zeta: &NilCharacter, window: (i64, i64), strict: bool) -> Result<WhittakerWindow> {
    solve(m, zeta, window, strict, 1)
}

/// Generalized variant: `(x − ζ(x))^N v = 0` with the operator compressed
/// to the window, constrained at depths `d0..=d1−N` so that every
/// constrained component only involves window components of `v`. `N`
/// defaults to the window length.
pub fn gamma_window(m: &TruncatedModule, zeta: &NilCharacter, window: (i64, i64), power: Option<usize>) -> Result<WhittakerWindow> {
    let len = (window.1 - window.0 + 1).max(1) as usize;
    solve(m, zeta, window, false, power.unwrap_or(len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highest_weight::{natural_module, verma_truncation, VermaVariant};

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn characters() {
        let z = make_character(3, &[s(1), s(1)]).unwrap();
        assert!(z.is_regular());
        assert_eq!(levi_of(&z).blocks, vec![vec![0, 1, 2]]);
        let z = make_character(3, &[s(1), s(0)]).unwrap();
        assert_eq!(levi_of(&z).simple, vec![0]);
        assert!(make_character(1, &[]).is_err());
    }

    #[test]
    fn lemma_examples() {
        let reg2 = make_character(2, &[s(1)]).unwrap();
        for a in -6..-1 {
            assert!(lambda_nu_member(&Weight::from_ints(&[a, -a]), &reg2).unwrap().member);
        }
        let v = lambda_nu_member(&Weight::from_ints(&[1, 0]), &reg2).unwrap();
        assert!(matches!(v.reason, LambdaNuReason::PositivePairing { index: 1, .. }));
        for vals in [[0, 0], [1, 0], [1, 1]] {
            let z = make_character(3, &[s(vals[0]), s(vals[1])]).unwrap();
            let v = lambda_nu_member(&Weight::from_ints(&[2, 2, 0]), &z).unwrap();
            assert!(matches!(v.reason, LambdaNuReason::EqualNonzero { index: 1, .. }));
        }
    }

    #[test]
    fn top_slice_for_zero_character() {
        let m = verma_truncation(&Weight::from_ints(&[2, -1]), 2, VermaVariant::Verma).unwrap();
        let w = whittaker_vectors(&m, &NilCharacter::zero(2), (0, 0), true).unwrap();
        assert_eq!(w.dim(), 2);
    }

    #[test]
    fn strict_vanishing_on_natural() {
        let m = natural_module(2).unwrap();
        let z = make_character(2, &[s(3)]).unwrap();
        assert_eq!(whittaker_vectors(&m, &z, (0, m.depth), true).unwrap().dim(), 0);
        let w = whittaker_vectors(&m, &NilCharacter::zero(2), (0, m.depth), true).unwrap();
        assert_eq!(w.dim(), 2);
    }

    #[test]
    fn gamma_contains_whittaker() {
        let m = verma_truncation(&Weight::from_ints(&[1, -2]), 4, VermaVariant::Verma).unwrap();
        let z = make_character(2, &[s(1)]).unwrap();
        for win in [(0, 2), (1, 3), (0, 4)] {
            let w = whittaker_vectors(&m, &z, win, false).unwrap();
            for p in 1..=3 {
                let g = gamma_window(&m, &z, win, Some(p)).unwrap();
                assert!(g.contains_span(&w.basis));
            }
        }
        let g = gamma_window(&m, &NilCharacter::zero(2), (1, 3), None).unwrap();
        let total: usize = m.depths.iter().filter(|d| (1..=3).contains(*d)).count();
        assert_eq!(g.dim(), total);
    }

    #[test]
    fn regular_q2_golden() {
        let z = make_character(2, &[s(1)]).unwrap();
        let m = verma_truncation(&Weight::from_ints(&[1, 0]), 4, VermaVariant::Verma).unwrap();
        let w = whittaker_vectors(&m, &z, (0, 4), false).unwrap();
        assert_eq!(w.dim(), 4);
        assert_eq!(w.slice_dims.values().copied().collect::<Vec<_>>(), vec![0, 2, 4, 4, 4]);
        assert_eq!(w.leakage_rank, 4);
        let g = gamma_window(&m, &z, (0, 4), Some(2)).unwrap();
        assert_eq!(g.slice_dims.values().copied().collect::<Vec<_>>(), vec![0, 2, 4, 4, 4]);
        let g = gamma_window(&m, &z, (0, 4), None).unwrap();
        assert_eq!(g.dim(), m.dim());
    }

    #[test]
    fn window_errors() {
        let m = verma_truncation(&Weight::from_ints(&[1, 0]), 2, VermaVariant::Verma).unwrap();
        let z = NilCharacter::zero(2);
        assert!(whittaker_vectors(&m, &z, (0, 3), false).is_err());
        assert!(whittaker_vectors(&m, &z, (2, 1), false).is_err());
    }
}
