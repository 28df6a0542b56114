//! `Λ(ν)` criterion, window solvers, and induction from the even part.

use std::collections::BTreeMap;

use qwk::highest_weight::{
    adjoint_module, convolve, even_verma_character_series, even_verma_truncation, exterior_odd_character, natural_module, tensor_modules,
    trivial_module, verma_truncation, TruncatedModule, VermaVariant,
};
use qwk::superalgebra::roots::NilCharacter;
use qwk::whittaker::{gamma_window, induce_from_even, lambda_nu_member, make_character, whittaker_vectors, LambdaNuReason};
use qwk::{Gen, Scalar, Weight};

use super::Sampler;
use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

const DEFAULT_CONFIGS: usize = 100;
const LEMMA_RANGE: i64 = 3;
const VERMA_DEPTH: i64 = 4;

fn int_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..n).fold(vec![vec![]], |acc, _| acc.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect())
}

fn character(n: usize, values: &[i64]) -> Result<NilCharacter, qwk::QwkError> {
    if n == 1 {
        return Ok(NilCharacter::zero(1));
    }
    make_character(n, &values.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
}

/// The criterion written out directly: (i) on the support of ζ, (ii) on
/// every adjacent pair.
fn transcribed(lam: &[i64], zeta: &[i64]) -> bool {
    let cond_i = zeta.iter().enumerate().all(|(i, z)| *z == 0 || lam[i] - lam[i + 1] <= 0);
    let cond_ii = lam.windows(2).all(|p| p[0] != p[1] || p[0] == 0);
    cond_i && cond_ii
}

fn lemma_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(timed(|| {
        let mut c = Check::new("lambda-nu-transcription").with("range", [-LEMMA_RANGE, LEMMA_RANGE]).with("max_rank", 3);
        let mut cases = 0usize;
        for n in 1..=3usize {
            for zv in int_vectors(n - 1, -1, 1) {
                let zeta = match character(n, &zv) {
                    Ok(z) => z,
                    Err(e) => {
                        c.expect(false, || e.to_string());
                        continue;
                    }
                };
                for lam in int_vectors(n, -LEMMA_RANGE, LEMMA_RANGE) {
                    cases += 1;
                    match lambda_nu_member(&Weight::from_ints(&lam), &zeta) {
                        Ok(v) => {
                            c.expect(v.member == transcribed(&lam, &zv), || format!("λ={lam:?} ζ={zv:?}"));
                            c.expect(v.member == (v.reason == LambdaNuReason::Member), || format!("λ={lam:?} ζ={zv:?}: reason {:?}", v.reason));
                        }
                        Err(e) => c.expect(false, || e.to_string()),
                    }
                }
            }
        }
        c.record("cases", cases);
        c
    }));
    out.push(timed(|| {
        // with ζ = 0 only the equal-pair condition can exclude a weight
        let mut c = Check::new("lambda-nu-zero-character");
        for n in 2..=3usize {
            for lam in int_vectors(n, -LEMMA_RANGE, LEMMA_RANGE) {
                let equal_nonzero = lam.windows(2).any(|p| p[0] == p[1] && p[0] != 0);
                let member = lambda_nu_member(&Weight::from_ints(&lam), &NilCharacter::zero(n)).map(|v| v.member);
                c.expect(member.as_ref().ok() == Some(&!equal_nonzero), || format!("λ={lam:?}"));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("lambda-nu-negative-family").with("a", [-8, -2]);
        let reg = character(2, &[1]).expect("regular character");
        for a in -8..-1 {
            let member = lambda_nu_member(&Weight::from_ints(&[a, -a]), &reg).map(|v| v.member);
            c.expect(matches!(member, Ok(true)), || format!("a={a}"));
        }
        c
    }));
    out
}

fn finite_modules() -> Result<Vec<(String, TruncatedModule)>, CliError> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push((format!("trivial({n})"), trivial_module(n)?));
        out.push((format!("natural({n})"), natural_module(n)?));
        out.push((format!("adjoint({n})"), adjoint_module(n)?));
    }
    let v = natural_module(2)?;
    out.push(("natural(2)⊗natural(2)".into(), tensor_modules(&v, &v)?));
    out.push(("natural(2)⊗adjoint(2)".into(), tensor_modules(&v, &adjoint_module(2)?)?));
    Ok(out)
}

/// Window dimension for `[0,d]` from dense rational matrices, constraining
/// depths `0..d` (the solver's non-strict semantics with `N = 1`).
fn dense_window_dim(m: &TruncatedModule, zeta: &[Scalar]) -> Option<usize> {
    let rows: Vec<usize> = (0..m.dim()).filter(|&i| m.depths[i] < m.depth).collect();
    let mut a: Vec<Vec<Scalar>> = Vec::new();
    for (i, z) in zeta.iter().enumerate() {
        let op = m.action.get(&Gen::e(i, i + 1).index(m.n))?;
        for &r in &rows {
            let row: Option<Vec<Scalar>> = (0..m.dim())
                .map(|col| {
                    let v = op.get(r, col).as_rational()?;
                    Some(if r == col { &v - z } else { v })
                })
                .collect();
            a.push(row?);
        }
    }
    Some(m.dim() - dense_rank(a))
}

fn dense_rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

pub fn whittaker(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let mut out = lemma_checks();
    let modules = finite_modules()?;
    out.push(timed(|| {
        let mut c = Check::new("strict-vanishing").with("modules", modules.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>());
        for (name, m) in &modules {
            let n = m.n;
            for vals in [vec![Scalar::one(); n - 1], vec![Scalar::new(-2, 3); n - 1], (1..n as i64).map(Scalar::from_int).collect()] {
                let dim = make_character(n, &vals).and_then(|z| whittaker_vectors(m, &z, (0, m.depth), true)).map(|w| w.dim());
                c.expect(matches!(dim, Ok(0)), || format!("{name} ζ={vals:?}: {dim:?}"));
            }
        }
        c
    }));
    let configs = cfg.samples.unwrap_or(DEFAULT_CONFIGS);
    out.push(timed(|| {
        // strict mode: enlarging the window never loses projected solutions;
        // default mode: the projection of the larger solution space lies in
        // the smaller one (boundary leakage can make it smaller)
        let mut c = Check::new("window-monotonicity").with("configurations", configs).with("seed", cfg.seed).with("depth", VERMA_DEPTH);
        let mut rng = Sampler::new(cfg.seed);
        let (mut strict_ok, mut contained, mut leaky_literal) = (0usize, 0usize, 0usize);
        for _ in 0..configs {
            let lam = Weight::from_ints(&[rng.int(-3, 3), rng.int(-3, 3)]);
            let z = rng.int(0, 2);
            let d0 = rng.int(0, 2);
            let d1 = rng.int(d0, 3);
            let (e0, e1) = (rng.int(0, d0), rng.int(d1, VERMA_DEPTH));
            let tag = format!("λ={lam} ζ={z} [{d0},{d1}] ⊂ [{e0},{e1}]");
            let run = || -> Result<(bool, bool, bool), qwk::QwkError> {
                let zeta = character(2, &[z])?;
                let m = verma_truncation(&lam, VERMA_DEPTH, VermaVariant::Verma)?;
                let small = whittaker_vectors(&m, &zeta, (d0, d1), true)?;
                let big = whittaker_vectors(&m, &zeta, (e0, e1), true)?;
                let strict = big.projected_dim((d0, d1)) >= small.dim();
                let small = whittaker_vectors(&m, &zeta, (d0, d1), false)?;
                let big = whittaker_vectors(&m, &zeta, (e0, e1), false)?;
                Ok((strict, small.contains_span(&big.project((d0, d1))), big.projected_dim((d0, d1)) >= small.dim()))
            };
            match run() {
                Ok((s, k, l)) => {
                    c.expect(s, || format!("strict {tag}"));
                    c.expect(k, || format!("containment {tag}"));
                    strict_ok += usize::from(s);
                    contained += usize::from(k);
                    leaky_literal += usize::from(l);
                }
                Err(e) => c.expect(false, || format!("{tag}: {e}")),
            }
        }
        c.record("strict_monotone", strict_ok);
        c.record("default_contained", contained);
        c.record("default_monotone", leaky_literal);
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("gamma-containment").with("seed", cfg.seed);
        let mut rng = Sampler::new(cfg.seed ^ 0x9e37);
        for _ in 0..40 {
            let lam = Weight::from_ints(&[rng.int(-3, 3), rng.int(-3, 3)]);
            let z = rng.int(-2, 2);
            let d0 = rng.int(0, 3);
            let d1 = rng.int(d0, 3);
            let p = rng.int(1, 3) as usize;
            let ok = character(2, &[z]).and_then(|zeta| {
                let m = verma_truncation(&lam, 3, VermaVariant::Verma)?;
                let w = whittaker_vectors(&m, &zeta, (d0, d1), false)?;
                Ok(gamma_window(&m, &zeta, (d0, d1), Some(p))?.contains_span(&w.basis))
            });
            c.expect(matches!(ok, Ok(true)), || format!("λ={lam} ζ={z} [{d0},{d1}] N={p}"));
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("regular-golden").with("zeta", [1]);
        let zeta = [Scalar::one()];
        let mut table: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for lam in [[1, 0], [-2, 2], [3, -3], [0, 0]] {
            let lam = Weight::from_ints(&lam);
            let mut row = Vec::new();
            for d in 0..=VERMA_DEPTH {
                let got = make_character(2, &zeta).and_then(|z| {
                    let m = verma_truncation(&lam, d, VermaVariant::Verma)?;
                    Ok((whittaker_vectors(&m, &z, (0, d), false)?.dim(), dense_window_dim(&m, &zeta)))
                });
                match got {
                    Ok((dim, oracle)) => {
                        c.expect(Some(dim) == oracle, || format!("λ={lam} d={d}: solver {dim}, dense oracle {oracle:?}"));
                        row.push(dim);
                    }
                    Err(e) => c.expect(false, || e.to_string()),
                }
            }
            table.insert(lam.to_string(), row);
        }
        c.record("dims_by_depth", table);
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("induced-from-even");
        let mut dims = BTreeMap::new();
        for (lam, d) in [(Weight::from_ints(&[1, -1]), 3), (Weight::from_ints(&[0, 2]), 3), (Weight::from_ints(&[1, 0, 0]), 2)] {
            let got = even_verma_truncation(&lam, d).and_then(|m0| induce_from_even(&m0, d));
            match got {
                Ok(m) => {
                    let want = convolve(&exterior_odd_character(lam.n()), &even_verma_character_series(&lam, d));
                    c.expect(m.character().mult == want.mult, || format!("λ={lam} depth {d}"));
                    dims.insert(format!("{lam}@{d}"), m.dim());
                }
                Err(e) => c.expect(false, || e.to_string()),
            }
        }
        c.record("dims", dims);
        c
    }));
    Ok(out)
}
