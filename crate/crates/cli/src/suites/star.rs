//! Moyal–Weyl product on `g(−1)` and the Gutt product on `S(q(n))`.

use qwk::star::{super_commutator, Gutt, MoyalWeyl, PolyElement, SuperMonomial};
use qwk::walgebra::{build_symplectic, LagrangianChoice};
use qwk::{build_qn, Scalar};

use super::Sampler;
use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

const DEFAULT_TRIPLES: usize = 200;
const POISSON_SAMPLES: usize = 100;
/// ħ-order cap for associativity (`ħ^4`).
const ASSOC_CAP: u32 = 2;
const GUTT_MAX_RANK: usize = 3;

fn word_poly(word: &[usize], odd: &[bool]) -> PolyElement {
    word.iter().fold(PolyElement::constant(Scalar::one()), |acc, &v| acc.commutative_mul(&PolyElement::var(v), odd))
}

fn random_word(rng: &mut Sampler, vars: usize, max_len: usize) -> Vec<usize> {
    let len = rng.index(max_len + 1);
    (0..len).map(|_| rng.index(vars)).collect()
}

fn random_poly(rng: &mut Sampler, vars: usize, max_len: usize, odd: &[bool]) -> PolyElement {
    let mut p = PolyElement::zero();
    for _ in 0..rng.int(1, 3) {
        let c = Scalar::new(rng.int(-4, 4), rng.int(1, 2));
        p.add_scaled(&word_poly(&random_word(rng, vars, max_len), odd), &c);
    }
    p
}

fn is_odd_word(word: &[usize], odd: &[bool]) -> bool {
    word.iter().filter(|&&v| odd[v]).count() % 2 == 1
}

/// Poisson bracket of two words from the generator brackets and the Leibniz
/// rules in each argument.
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

type StarFn<'a> = dyn Fn(&PolyElement, &PolyElement, u32) -> qwk::Result<PolyElement> + 'a;

/// Defining relations, associativity to `ħ^4` and the Poisson bracket, for a
/// product on `vars` variables with generator brackets `base`.
fn product_checks(
    prefix: &str,
    star: &StarFn,
    poisson: &dyn Fn(&PolyElement, &PolyElement) -> PolyElement,
    odd: &[bool],
    base: &dyn Fn(usize, usize) -> PolyElement,
    cfg: &SuiteConfig,
    word_len: usize,
) -> Vec<Check> {
    let vars = odd.len();
    let mut out = Vec::new();
    out.push(timed(|| {
        let mut c = Check::new(format!("{prefix}-relations")).with("pairs", vars * vars);
        for i in 0..vars {
            for j in 0..vars {
                let got = super_commutator(|a, b| star(a, b, ASSOC_CAP), &PolyElement::var(i), &PolyElement::var(j), odd);
                c.expect(got.as_ref().ok() == Some(&base(i, j).shift_hbar(1)), || format!("[x{i}, x{j}]"));
            }
        }
        c
    }));
    let triples = cfg.samples.unwrap_or(DEFAULT_TRIPLES);
    out.push(timed(|| {
        let mut c = Check::new(format!("{prefix}-associativity")).with("triples", triples).with("seed", cfg.seed).with("hbar_power", 2 * ASSOC_CAP);
        let mut rng = Sampler::new(cfg.seed);
        for t in 0..triples {
            let [p, q, r] = [0; 3].map(|_| random_poly(&mut rng, vars, word_len, odd));
            let left = star(&p, &q, ASSOC_CAP).and_then(|pq| star(&pq, &r, ASSOC_CAP));
            let right = star(&q, &r, ASSOC_CAP).and_then(|qr| star(&p, &qr, ASSOC_CAP));
            c.expect(matches!((&left, &right), (Ok(a), Ok(b)) if a == b), || format!("triple {t}"));
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new(format!("{prefix}-poisson")).with("samples", POISSON_SAMPLES);
        let mut rng = Sampler::new(cfg.seed ^ 0x5bd1);
        let mut tested = 0usize;
        for _ in 0..POISSON_SAMPLES {
            let (a, b) = (random_word(&mut rng, vars, 2), random_word(&mut rng, vars, 2));
            let (p, q) = (word_poly(&a, odd), word_poly(&b, odd));
            if p.is_zero() || q.is_zero() {
                continue;
            }
            tested += 1;
            let want = leibniz(&a, &b, odd, base);
            c.expect(poisson(&p, &q) == want, || format!("{{{a:?}, {b:?}}}"));
            let comm = super_commutator(|x, y| star(x, y, ASSOC_CAP + 1), &p, &q, odd);
            c.expect(comm.as_ref().is_ok_and(|x| x.hbar_coefficient(1) == want), || format!("ħ² coefficient of [{a:?}, {b:?}]"));
            let prod = star(&p, &q, ASSOC_CAP);
            c.expect(prod.as_ref().is_ok_and(|x| x.hbar_coefficient(0) == p.commutative_mul(&q, odd)), || format!("ħ⁰ term of {a:?} ∗ {b:?}"));
        }
        c.record("tested", tested);
        c
    }));
    out
}

pub fn star(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let q = build_qn(cfg.n)?;
    let d = cfg.nilpotent.datum(cfg.n)?;
    let s = build_symplectic(&d, LagrangianChoice::Forward)?;
    let mut out = Vec::new();
    if s.space.is_empty() {
        for name in ["moyal-relations", "moyal-associativity", "moyal-poisson"] {
            out.push(Check::skipped(name, "g(−1) is zero for this nilpotent"));
        }
    } else {
        let mw = MoyalWeyl::from_symplectic(&q, &s)?;
        let pi = mw.pi.clone();
        let base = move |i: usize, j: usize| PolyElement::constant(pi[i][j].clone());
        let odd = mw.basis.odd.clone();
        out.extend(product_checks("moyal", &|a, b, k| mw.star(a, b, k), &|a, b| mw.poisson(a, b), &odd, &base, cfg, 3));
    }
    if cfg.n > GUTT_MAX_RANK {
        for name in ["gutt-relations", "gutt-associativity", "gutt-poisson", "gutt-transport"] {
            out.push(Check::skipped(name, "rank above the Gutt limit"));
        }
        return Ok(out);
    }
    let g = Gutt::new(q.clone());
    let odd = g.basis.odd.clone();
    let qb = q.clone();
    let base = move |i: usize, j: usize| {
        let mut p = PolyElement::zero();
        for (k, v) in qb.bracket_basis(i, j).iter() {
            p.add_term(0, SuperMonomial::var(*k), v.clone());
        }
        p
    };
    out.extend(product_checks("gutt", &|a, b, k| g.star(a, b, k), &|a, b| g.poisson(a, b), &odd, &base, cfg, 2));
    out.push(timed(|| {
        // at ħ = 1 the product transports to multiplication in U(g)
        let env = g.enveloping();
        let mut c = Check::new("gutt-transport").with("pairs", q.dim() * q.dim());
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                let got = g.star(&PolyElement::var(i), &PolyElement::var(j), qwk::star::MAX_HBAR_ORDER).map(|p| g.symmetrize(&p.specialize()));
                let want = env.multiply(&env.generator(i), &env.generator(j));
                c.expect(got.as_ref().ok() == Some(&want), || format!("{} ∗ {}", q.gen(i), q.gen(j)));
            }
        }
        c
    }));
    Ok(out)
}
