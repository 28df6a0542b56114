use std::collections::HashMap;

use qwk::highest_weight::{adjoint_module, natural_module, TruncatedModule};
use qwk::pbw::coordinates;
use qwk::walgebra::{build_m, build_symplectic, LagrangianChoice, NamedNilpotent, NilpotentDatum};
use qwk::{build_qn, Enveloping, IdealDatum, PBWMonomial, Scalar, SparseMatrix, Surd, UElement};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All PBW monomials of length at most `k` (odd exponents at most 1).
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

/// `dim S^{≤k}` of a superspace with `e` even and `o` odd dimensions.
fn symmetric_count(e: usize, o: usize, k: usize) -> usize {
    let binom = |n: usize, r: usize| -> usize {
        if r > n {
            return 0;
        }
        (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    };
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

#[test]
fn normal_forms_span_pbw_count_to_kazhdan_degree_six() {
    // zero grading: every generator has Kazhdan degree 2, so degree ≤ 6 is length ≤ 3
    let q = build_qn(2).unwrap();
    let env = Enveloping::standard(q.clone());
    let d = q.dim();
    let basis = monomials(&env, 3);
    assert_eq!(basis.len(), symmetric_count(4, 4, 3));
    let index: HashMap<PBWMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = qwk::linalg::Echelon::new();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=3 {
        let mut next = Vec::new();
        for w in words.iter().filter(|w| w.len() == len - 1) {
            for b in 0..d {
                let mut v = w.clone();
                v.push(b);
                next.push(v);
            }
        }
        words.extend(next);
    }
    for w in &words {
        let u = env.normal_form(w, &Scalar::one());
        let v = coordinates(&u, &index).expect("normal form stays within length 3");
        echelon.insert(&v);
    }
    assert_eq!(echelon.rank(), basis.len());
}

#[test]
fn normal_forms_agree_in_representations() {
    for n in [1, 2] {
        let q = build_qn(n).unwrap();
        let env = Enveloping::standard(q.clone());
        let d = q.dim();
        for m in [natural_module(n).unwrap(), adjoint_module(n).unwrap()] {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let w = [a, b, c];
                        let u = env.normal_form(&w, &Scalar::one());
                        assert_eq!(rep_of(&m, &env, &u), rep_of_word(&m, &w));
                    }
                }
            }
        }
    }
}

#[test]
fn associativity_exhaustive_degree_two() {
    let q = build_qn(2).unwrap();
    let env = Enveloping::standard(q);
    let ms = monomials(&env, 2);
    let us: Vec<UElement> = ms.iter().map(|m| UElement::monomial(m.clone(), Scalar::one())).collect();
    for a in &us {
        for b in &us {
            let ab = env.multiply(a, b);
            for c in &us {
                assert_eq!(env.multiply(&ab, c), env.multiply(a, &env.multiply(b, c)));
            }
        }
    }
}

fn random_element(pool: &[PBWMonomial], rng: &mut ChaCha8Rng) -> UElement {
    let mut u = UElement::zero();
    for _ in 0..(1 + rng.next_u64() % 4) {
        let m = pool[(rng.next_u64() % pool.len() as u64) as usize].clone();
        let c = Scalar::new((rng.next_u64() % 7) as i64 - 3, 1 + (rng.next_u64() % 3) as i64);
        u.add_term(m, c);
    }
    u
}

#[test]
fn ideal_reduce_laws_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut cases = 0;
    for (n, which) in [(2, NamedNilpotent::Principal), (3, NamedNilpotent::Minimal)] {
        let q = build_qn(n).unwrap();
        let datum = NilpotentDatum::named(q.clone(), which).unwrap();
        let m = build_m(&datum, &build_symplectic(&datum, LagrangianChoice::Forward).unwrap()).unwrap();
        let env = Enveloping::with_trailing(q.clone(), &m.basis);
        let ideal = IdealDatum::new(&env, &m.basis, datum.chi.clone()).unwrap();
        let pool = monomials(&env, 2);
        for _ in 0..250 {
            let u = random_element(&pool, &mut rng);
            let r = env.ideal_reduce(&u, &ideal);
            assert_eq!(env.ideal_reduce(&r, &ideal), r, "idempotence");
            let x = env.generator((rng.next_u64() % q.dim() as u64) as usize);
            assert_eq!(env.ideal_reduce(&env.multiply(&x, &u), &ideal), env.ideal_reduce(&env.multiply(&x, &r), &ideal), "left-module law");
            let a = m.basis[(rng.next_u64() % m.basis.len() as u64) as usize];
            let gen = env.generator(a).sub(&UElement::constant(datum.chi[a].clone()));
            assert!(env.ideal_reduce(&env.multiply(&u, &gen), &ideal).is_zero(), "u·(a − χ(a)) lies in the ideal");
            cases += 1;
        }
    }
    assert_eq!(cases, 500);
}
