use qwk::star::{super_commutator, Gutt, MoyalWeyl, PolyElement, SuperMonomial};
use qwk::walgebra::{build_symplectic, LagrangianChoice, NamedNilpotent, NilpotentDatum};
use qwk::{build_qn, Scalar, UElement};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q3_minimal_moyal() -> MoyalWeyl {
    let q = build_qn(3).unwrap();
    let d = NilpotentDatum::named(q.clone(), NamedNilpotent::Minimal).unwrap();
    let s = build_symplectic(&d, LagrangianChoice::Forward).unwrap();
    MoyalWeyl::from_symplectic(&q, &s).unwrap()
}

fn word_poly(word: &[usize], odd: &[bool]) -> PolyElement {
    word.iter().fold(PolyElement::constant(Scalar::one()), |acc, &v| acc.commutative_mul(&PolyElement::var(v), odd))
}

fn random_word(rng: &mut ChaCha8Rng, vars: usize, max_len: usize) -> Vec<usize> {
    let len = (rng.next_u64() % (max_len as u64 + 1)) as usize;
    (0..len).map(|_| (rng.next_u64() % vars as u64) as usize).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, vars: usize, max_len: usize, odd: &[bool]) -> PolyElement {
    let mut p = PolyElement::zero();
    for _ in 0..1 + rng.next_u64() % 3 {
        let c = Scalar::new((rng.next_u64() % 9) as i64 - 4, 1 + (rng.next_u64() % 2) as i64);
        p.add_scaled(&word_poly(&random_word(rng, vars, max_len), odd), &c);
    }
    p
}

fn is_odd_word(word: &[usize], odd: &[bool]) -> bool {
    word.iter().filter(|&&v| odd[v]).count() % 2 == 1
}

/// Poisson bracket of two words from the generator brackets and the Leibniz
/// rules `{ab, c} = a{b,c} + (−1)^{|b||c|}{a,c}b`, `{a, bc} = {a,b}c + (−1)^{|a||b|}b{a,c}`.
fn leibniz(p: &[usize], q: &[usize], odd: &[bool], base: &dyn Fn(usize, usize) -> PolyElement) -> PolyElement {
    if p.is_empty() || q.is_empty() {
        return PolyElement::zero();
    }
    let sign = |x: bool, y: bool| Scalar::from_int(if x && y { -1 } else { 1 });
    if p.len() > 1 {
        let (a, b) = (&p[..1], &p[1..]);
        let mut out = word_poly(a, odd).commutative_mul(&leibniz(b, q, odd, base), odd);
        let t = leibniz(a, q, odd, base).commutative_mul(&word_poly(b, odd), odd);
        out.add_scaled(&t, &sign(is_odd_word(b, odd), is_odd_word(q, odd)));
        return out;
    }
    if q.len() > 1 {
        let (b, c) = (&q[..1], &q[1..]);
        let mut out = leibniz(p, b, odd, base).commutative_mul(&word_poly(c, odd), odd);
        let t = word_poly(b, odd).commutative_mul(&leibniz(p, c, odd, base), odd);
        out.add_scaled(&t, &sign(is_odd_word(p, odd), is_odd_word(b, odd)));
        return out;
    }
    base(p[0], q[0])
}

#[test]
fn moyal_defining_relations() {
    let mw = q3_minimal_moyal();
    let odd = mw.basis.odd.clone();
    assert!(!odd.is_empty());
    for i in 0..odd.len() {
        for j in 0..odd.len() {
            let c = super_commutator(|a, b| mw.star(a, b, 2), &PolyElement::var(i), &PolyElement::var(j), &odd).unwrap();
            assert_eq!(c, PolyElement::constant(mw.pi[i][j].clone()).shift_hbar(1), "[{i},{j}]");
        }
    }
}

#[test]
fn moyal_associative_to_hbar_four() {
    let mw = q3_minimal_moyal();
    let odd = mw.basis.odd.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let [p, q, r] = [0; 3].map(|_| random_poly(&mut rng, odd.len(), 3, &odd));
        let left = mw.star(&mw.star(&p, &q, 2).unwrap(), &r, 2).unwrap();
        let right = mw.star(&p, &mw.star(&q, &r, 2).unwrap(), 2).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn moyal_poisson_is_hbar_two_commutator() {
    let mw = q3_minimal_moyal();
    let odd = mw.basis.odd.clone();
    let pi = mw.pi.clone();
    let base = move |i: usize, j: usize| PolyElement::constant(pi[i][j].clone());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (a, b) = (random_word(&mut rng, odd.len(), 3), random_word(&mut rng, odd.len(), 3));
        let (p, q) = (word_poly(&a, &odd), word_poly(&b, &odd));
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let want = leibniz(&a, &b, &odd, &base);
        assert_eq!(mw.poisson(&p, &q), want, "{a:?} {b:?}");
        let c = super_commutator(|x, y| mw.star(x, y, 2), &p, &q, &odd).unwrap();
        assert_eq!(c.hbar_coefficient(1), want, "{a:?} {b:?}");
    }
}

#[test]
fn gutt_defining_relations_and_poisson() {
    for n in [1, 2] {
        let q = build_qn(n).unwrap();
        let g = Gutt::new(q.clone());
        let odd = g.basis.odd.clone();
        let bracket = |i: usize, j: usize| {
            let mut out = PolyElement::zero();
            for (k, v) in q.bracket_basis(i, j).iter() {
                out.add_term(0, SuperMonomial::var(*k), v.clone());
            }
            out
        };
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                let c = super_commutator(|a, b| g.star(a, b, 2), &PolyElement::var(i), &PolyElement::var(j), &odd).unwrap();
                assert_eq!(c, bracket(i, j).shift_hbar(1));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let (a, b) = (random_word(&mut rng, q.dim(), 2), random_word(&mut rng, q.dim(), 2));
            let (p, r) = (word_poly(&a, &odd), word_poly(&b, &odd));
            if p.is_zero() || r.is_zero() {
                continue;
            }
            let want = leibniz(&a, &b, &odd, &bracket);
            assert_eq!(g.poisson(&p, &r), want);
            let c = super_commutator(|x, y| g.star(x, y, 3), &p, &r, &odd).unwrap();
            assert_eq!(c.hbar_coefficient(1), want, "{a:?} {b:?}");
        }
    }
}

#[test]
fn gutt_associative_to_hbar_four() {
    let q = build_qn(2).unwrap();
    let g = Gutt::new(q.clone());
    let odd = g.basis.odd.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let [a, b, c] = [0; 3].map(|_| random_poly(&mut rng, q.dim(), 2, &odd));
        let left = g.star(&g.star(&a, &b, 2).unwrap(), &c, 2).unwrap();
        let right = g.star(&a, &g.star(&b, &c, 2).unwrap(), 2).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn gutt_at_hbar_one_is_the_enveloping_product() {
    let q = build_qn(2).unwrap();
    let g = Gutt::new(q.clone());
    let env = g.enveloping();
    for i in 0..q.dim() {
        for j in 0..q.dim() {
            let star = g.star(&PolyElement::var(i), &PolyElement::var(j), 8).unwrap().specialize();
            let want: UElement = env.multiply(&env.generator(i), &env.generator(j));
            assert_eq!(g.symmetrize(&star), want, "x{i} x{j}");
        }
    }
}
