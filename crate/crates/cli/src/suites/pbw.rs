//! Normal forms, associativity and the `χ`-ideal reduction.

use std::collections::HashMap;

use qwk::highest_weight::{adjoint_module, natural_module, TruncatedModule};
use qwk::linalg::Echelon;
use qwk::pbw::coordinates;
use qwk::walgebra::{build_m, build_symplectic, LagrangianChoice};
use qwk::{build_qn, Enveloping, IdealDatum, PBWMonomial, Scalar, SparseMatrix, Surd, UElement};

use super::Sampler;
use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

const DEFAULT_KAZHDAN: usize = 6;
const MAX_KAZHDAN: usize = 8;
const DEFAULT_CASES: usize = 500;
/// Representation oracle only for small ranks (words grow as `dim^len`).
const REP_ORACLE_MAX_RANK: usize = 2;

/// PBW monomials of length at most `k`.
fn monomials(env: &Enveloping, k: usize) -> Vec<PBWMonomial> {
    let d = env.order().len();
    let mut out = vec![PBWMonomial::unit()];
    let mut frontier = vec![PBWMonomial::unit()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.0.last().map_or(0, |&(p, _)| p as usize);
            for p in start..d {
                let mut v = m.0.clone();
                match v.last_mut() {
                    Some(last) if last.0 as usize == p => {
                        if env.is_odd_at(p) {
                            continue;
                        }
                        last.1 += 1;
                    }
                    _ => v.push((p as u16, 1)),
                }
                next.push(PBWMonomial(v));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| (0..d).map(move |b| [w.as_slice(), &[b]].concat())).collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{t≤k} dim S^t` of a superspace with `e` even and `o` odd dimensions.
fn symmetric_count(e: usize, o: usize, k: usize) -> usize {
    (0..=k).map(|t| (0..=t.min(o)).map(|j| binom(e + t - j - 1, t - j) * binom(o, j)).sum::<usize>()).sum()
}

fn rep_of_word(m: &TruncatedModule, word: &[usize]) -> SparseMatrix<Surd> {
    word.iter().fold(SparseMatrix::identity(m.dim()), |acc, b| acc.mul(&m.action[b]))
}

fn rep_of(m: &TruncatedModule, env: &Enveloping, u: &UElement) -> SparseMatrix<Surd> {
    let mut out = SparseMatrix::zeros(m.dim(), m.dim());
    for (mono, c) in u.terms() {
        let word: Vec<usize> = mono.word().iter().map(|&p| env.basis_at(p)).collect();
        out = out.add_scaled(&rep_of_word(m, &word), &Surd::from(c.clone()));
    }
    out
}

pub fn pbw(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let kaz = cfg.cap.unwrap_or(DEFAULT_KAZHDAN);
    if kaz > MAX_KAZHDAN {
        return Err(qwk::QwkError::CapExceeded { cap: kaz, max: MAX_KAZHDAN }.into());
    }
    let q = build_qn(cfg.n)?;
    let env = Enveloping::standard(q.clone());
    let d = q.dim();
    // zero grading: every generator has Kazhdan degree 2
    let len = kaz / 2;
    let mut out = Vec::new();
    out.push(timed(|| {
        let basis = monomials(&env, len);
        let even = (0..d).filter(|&k| !q.parity(k).is_odd()).count();
        let expected = symmetric_count(even, d - even, len);
        let index: HashMap<PBWMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech: Echelon<Scalar> = Echelon::new();
        let mut c = Check::new("normal-form-independence").with("kazhdan_degree", kaz).with("max_length", len);
        let all = words(d, len);
        for w in &all {
            match coordinates(&env.normal_form(w, &Scalar::one()), &index) {
                Some(v) => {
                    ech.insert(&v);
                }
                None => c.expect(false, || format!("normal form of {w:?} leaves the length filtration")),
            }
        }
        for m in &basis {
            let u = UElement::monomial(m.clone(), Scalar::one());
            let w: Vec<usize> = m.word().iter().map(|&p| env.basis_at(p)).collect();
            c.expect(env.normal_form(&w, &Scalar::one()) == u, || format!("PBW monomial {} is not a fixed point", env.monomial_to_string(m)));
        }
        c.record("words", all.len());
        c.record("rank", ech.rank());
        c.record("pbw_count", basis.len());
        c.record("symmetric_count", expected);
        c.expect(ech.rank() == expected && basis.len() == expected, || format!("rank {} vs {expected}", ech.rank()));
        c
    }));
    out.push(timed(|| {
        if cfg.n > REP_ORACLE_MAX_RANK {
            return Check::skipped("representation-oracle", "rank above the oracle limit");
        }
        let rlen = len.min(3);
        let mut c = Check::new("representation-oracle").with("max_length", rlen).with("modules", ["natural", "adjoint"]);
        for m in [natural_module(cfg.n), adjoint_module(cfg.n)] {
            let m = match m {
                Ok(m) => m,
                Err(e) => {
                    c.expect(false, || e.to_string());
                    continue;
                }
            };
            for w in words(d, rlen) {
                let u = env.normal_form(&w, &Scalar::one());
                c.expect(rep_of(&m, &env, &u) == rep_of_word(&m, &w), || format!("word {w:?}"));
            }
        }
        c
    }));
    out.push(timed(|| {
        let us: Vec<UElement> = monomials(&env, 2).into_iter().map(|m| UElement::monomial(m, Scalar::one())).collect();
        let mut c = Check::new("associativity").with("max_degree", 2).with("triples", us.len().pow(3));
        for a in &us {
            for b in &us {
                let ab = env.multiply(a, b);
                for x in &us {
                    c.expect(env.multiply(&ab, x) == env.multiply(a, &env.multiply(b, x)), || {
                        format!("({})({})({})", env.to_text(a), env.to_text(b), env.to_text(x))
                    });
                }
            }
        }
        c
    }));
    let datum = cfg.nilpotent.datum(cfg.n)?;
    let m = build_m(&datum, &build_symplectic(&datum, LagrangianChoice::Forward)?)?;
    let tenv = Enveloping::with_trailing(q.clone(), &m.basis);
    let ideal = IdealDatum::new(&tenv, &m.basis, datum.chi.clone())?;
    out.push(timed(|| {
        let cases = cfg.samples.unwrap_or(DEFAULT_CASES);
        let mut c = Check::new("ideal-reduce").with("cases", cases).with("seed", cfg.seed).with("m", m.m_chi_text(&q));
        if m.basis.is_empty() {
            return Check::skipped("ideal-reduce", "m is zero for this nilpotent");
        }
        let pool = monomials(&tenv, 2);
        let mut rng = Sampler::new(cfg.seed);
        for _ in 0..cases {
            let mut u = UElement::zero();
            for _ in 0..rng.int(1, 4) {
                u.add_term(pool[rng.index(pool.len())].clone(), Scalar::new(rng.int(-3, 3), rng.int(1, 3)));
            }
            let r = tenv.ideal_reduce(&u, &ideal);
            c.expect(tenv.ideal_reduce(&r, &ideal) == r, || format!("idempotence: {}", tenv.to_text(&u)));
            let x = tenv.generator(rng.index(d));
            let lhs = tenv.ideal_reduce(&tenv.multiply(&x, &u), &ideal);
            let rhs = tenv.ideal_reduce(&tenv.multiply(&x, &r), &ideal);
            c.expect(lhs == rhs, || format!("left-module law: {} · {}", tenv.to_text(&x), tenv.to_text(&u)));
            let a = m.basis[rng.index(m.basis.len())];
            let shifted = tenv.generator(a).sub(&UElement::constant(datum.chi[a].clone()));
            c.expect(tenv.ideal_reduce(&tenv.multiply(&u, &shifted), &ideal).is_zero(), || {
                format!("right ideal generator: {} · ({} − χ)", tenv.to_text(&u), q.gen(a))
            });
        }
        c
    }));
    Ok(out)
}
