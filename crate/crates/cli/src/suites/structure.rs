//! Bracket table and odd form.

use qwk::linalg::rank;
use qwk::superalgebra::matrix::{mat_mul, otr, to_matrix};
use qwk::{build_qn, Gen, Qn, Scalar, SparseVec};

use super::Sampler;
use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

/// Exhaustive checks up to this rank; seeded triples above it.
const EXHAUSTIVE_RANK: usize = 3;
const DEFAULT_TRIPLES: usize = 1000;

/// Brackets of basis elements written out from the matrix-unit formulas.
fn closed_form(n: usize, a: Gen, b: Gen) -> SparseVec<Scalar> {
    let d = |x: usize, y: usize| i64::from(x == y);
    let (i, j, k, l) = (a.i, a.j, b.i, b.j);
    let target_odd = a.odd ^ b.odd;
    let second = if a.odd && b.odd { d(l, i) } else { -d(l, i) };
    SparseVec::from_pairs(
        [(Gen { odd: target_odd, i, j: l }, d(j, k)), (Gen { odd: target_odd, i: k, j }, second)]
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|(g, v)| (g.index(n), Scalar::from_int(v))),
    )
}

fn both_odd(q: &Qn, a: usize, b: usize) -> bool {
    q.parity(a).is_odd() && q.parity(b).is_odd()
}

/// `[a,b] + (−1)^{|a||b|}[b,a]`.
fn antisymmetry_defect(q: &Qn, a: usize, b: usize) -> SparseVec<Scalar> {
    let s = if both_odd(q, a, b) { Scalar::from_int(-1) } else { Scalar::one() };
    q.bracket_basis(a, b).add_scaled(q.bracket_basis(b, a), &s)
}

/// `[a,[b,c]] − [[a,b],c] − (−1)^{|a||b|}[b,[a,c]]`.
fn jacobi_defect(q: &Qn, a: usize, b: usize, c: usize) -> SparseVec<Scalar> {
    let (ua, ub, uc) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(c));
    let lhs = q.bracket_vec(&ua, q.bracket_basis(b, c));
    let first = q.bracket_vec(q.bracket_basis(a, b), &uc);
    let second = q.bracket_vec(&ub, q.bracket_basis(a, c));
    let s = if both_odd(q, a, b) { Scalar::one() } else { Scalar::from_int(-1) };
    lhs.sub(&first).add_scaled(&second, &s)
}

pub fn structure(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let n = cfg.n;
    let q = build_qn(n)?;
    let d = q.dim();
    let mut out = Vec::new();
    out.push(timed(|| {
        let mut c = Check::new("bracket-table").with("pairs", d * d);
        for a in 0..d {
            for b in 0..d {
                c.expect(*q.bracket_basis(a, b) == closed_form(n, q.gen(a), q.gen(b)), || format!("[{}, {}]", q.gen(a), q.gen(b)));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("super-antisymmetry").with("pairs", d * d);
        for a in 0..d {
            for b in 0..d {
                c.expect(antisymmetry_defect(&q, a, b).is_zero(), || format!("({}, {})", q.gen(a), q.gen(b)));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("super-jacobi");
        let triples: Vec<(usize, usize, usize)> = if n <= EXHAUSTIVE_RANK {
            c.record("mode", "exhaustive");
            (0..d).flat_map(|a| (0..d).flat_map(move |b| (0..d).map(move |x| (a, b, x)))).collect()
        } else {
            let k = cfg.samples.unwrap_or(DEFAULT_TRIPLES);
            c.record("mode", "seeded");
            c.record("seed", cfg.seed);
            let mut rng = Sampler::new(cfg.seed);
            (0..k).map(|_| (rng.index(d), rng.index(d), rng.index(d))).collect()
        };
        c.record("triples", triples.len());
        for (a, b, x) in triples {
            c.expect(jacobi_defect(&q, a, b, x).is_zero(), || format!("({}, {}, {})", q.gen(a), q.gen(b), q.gen(x)));
        }
        c
    }));
    Ok(out)
}

pub fn forms(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let q = build_qn(cfg.n)?;
    let d = q.dim();
    let mut out = Vec::new();
    out.push(timed(|| {
        let mut c = Check::new("odd-trace-oracle");
        for a in 0..d {
            for b in 0..d {
                let m = mat_mul(&to_matrix(&q.basis_element(a)), &to_matrix(&q.basis_element(b)));
                c.expect(q.form_basis(a, b) == otr(&m), || format!("({}|{})", q.gen(a), q.gen(b)));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("parity-vanishing");
        for a in 0..d {
            for b in 0..d {
                if q.parity(a) == q.parity(b) {
                    c.expect(q.form_basis(a, b).is_zero(), || format!("({}|{})", q.gen(a), q.gen(b)));
                }
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("supersymmetry");
        for a in 0..d {
            for b in 0..d {
                c.expect(q.form_basis(a, b) == q.form_basis(b, a), || format!("({}|{})", q.gen(a), q.gen(b)));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("invariance").with("triples", d * d * d);
        for a in 0..d {
            for b in 0..d {
                for x in 0..d {
                    let lhs = q.form_vec(q.bracket_basis(a, b), &SparseVec::unit(x));
                    let rhs = q.form_vec(&SparseVec::unit(a), q.bracket_basis(b, x));
                    c.expect(lhs == rhs, || format!("([{},{}]|{})", q.gen(a), q.gen(b), q.gen(x)));
                }
            }
        }
        c
    }));
    out.push(timed(|| {
        // the form pairs g_0 with g_1, so nondegeneracy is rank n² of that block
        let even: Vec<usize> = (0..d).filter(|&k| !q.parity(k).is_odd()).collect();
        let odd: Vec<usize> = (0..d).filter(|&k| q.parity(k).is_odd()).collect();
        let block: Vec<SparseVec<Scalar>> =
            even.iter().map(|&a| SparseVec::from_dense(&odd.iter().map(|&b| q.form_basis(a, b)).collect::<Vec<_>>())).collect();
        let full: Vec<SparseVec<Scalar>> = (0..d).map(|a| SparseVec::from_dense(&(0..d).map(|b| q.form_basis(a, b)).collect::<Vec<_>>())).collect();
        let (rb, rf) = (rank(&block), rank(&full));
        let nn = cfg.n * cfg.n;
        let mut c = Check::new("gram-rank").with("pairing_rank", rb).with("full_rank", rf).with("expected_pairing_rank", nn);
        c.expect(rb == nn && rf == d, || format!("pairing rank {rb}, full rank {rf}"));
        c
    }));
    Ok(out)
}
