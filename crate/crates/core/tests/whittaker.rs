use qwk::highest_weight::{adjoint_module, natural_module, tensor_modules, trivial_module, verma_truncation, TruncatedModule, VermaVariant};
use qwk::superalgebra::roots::NilCharacter;
use qwk::whittaker::{gamma_window, lambda_nu_member, make_character, whittaker_vectors, LambdaNuReason};
use qwk::{Gen, Scalar, Weight};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn all_weights(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..n).fold(vec![vec![]], |acc, _| acc.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect())
}

/// Independent transcription: (i) on the support of ζ, (ii) on every pair.
fn transcribed(lam: &[i64], zeta: &[i64]) -> bool {
    let cond_i = zeta.iter().enumerate().all(|(i, z)| *z == 0 || lam[i] - lam[i + 1] <= 0);
    let cond_ii = lam.windows(2).all(|p| p[0] != p[1] || p[0] == 0);
    cond_i && cond_ii
}

#[test]
fn lemma_matches_transcription() {
    for n in 1..=3usize {
        for zv in all_weights(n - 1, -1, 1) {
            let zeta = if n == 1 { NilCharacter::zero(1) } else { make_character(n, &zv.iter().map(|&v| s(v)).collect::<Vec<_>>()).unwrap() };
            for lam in all_weights(n, -3, 3) {
                let v = lambda_nu_member(&Weight::from_ints(&lam), &zeta).unwrap();
                assert_eq!(v.member, transcribed(&lam, &zv), "λ={lam:?} ζ={zv:?}");
                assert_eq!(v.member, v.reason == LambdaNuReason::Member);
            }
        }
    }
}

#[test]
fn zero_character_only_checks_equal_pairs() {
    for n in 2..=3usize {
        for lam in all_weights(n, -3, 3) {
            let v = lambda_nu_member(&Weight::from_ints(&lam), &NilCharacter::zero(n)).unwrap();
            let equal_nonzero = lam.windows(2).any(|p| p[0] == p[1] && p[0] != 0);
            assert_eq!(v.member, !equal_nonzero, "λ={lam:?}");
        }
    }
}

#[test]
fn negative_family_is_accepted() {
    let reg = make_character(2, &[s(1)]).unwrap();
    for a in -8..-1 {
        assert!(lambda_nu_member(&Weight::from_ints(&[a, -a]), &reg).unwrap().member);
    }
}

fn finite_modules() -> Vec<(String, TruncatedModule)> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push((format!("trivial({n})"), trivial_module(n).unwrap()));
        out.push((format!("natural({n})"), natural_module(n).unwrap()));
        out.push((format!("adjoint({n})"), adjoint_module(n).unwrap()));
    }
    let v = natural_module(2).unwrap();
    out.push(("natural(2)⊗natural(2)".into(), tensor_modules(&v, &v).unwrap()));
    out.push(("natural(2)⊗adjoint(2)".into(), tensor_modules(&v, &adjoint_module(2).unwrap()).unwrap()));
    out
}

#[test]
fn strict_vanishing_on_finite_modules() {
    for (name, m) in finite_modules() {
        let n = m.n;
        for vals in [vec![s(1); n - 1], vec![Scalar::new(-2, 3); n - 1], (1..n as i64).map(s).collect()] {
            let z = make_character(n, &vals).unwrap();
            assert!(z.is_regular());
            let w = whittaker_vectors(&m, &z, (0, m.depth), true).unwrap();
            assert_eq!(w.dim(), 0, "{name} ζ={vals:?}");
        }
        // with ζ = 0 the strict solutions are the vectors killed by every x
        let w = whittaker_vectors(&m, &NilCharacter::zero(n), (0, m.depth), true).unwrap();
        assert!(w.dim() > 0, "{name}");
    }
}

fn pick(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as i64
}

#[test]
fn window_monotonicity_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let lam = Weight::from_ints(&[pick(&mut rng, -3, 3), pick(&mut rng, -3, 3)]);
        let zeta = make_character(2, &[s(pick(&mut rng, 0, 2))]).unwrap();
        let m = verma_truncation(&lam, 4, VermaVariant::Verma).unwrap();
        let d0 = pick(&mut rng, 0, 2);
        let d1 = pick(&mut rng, d0, 3);
        let (e0, e1) = (pick(&mut rng, 0, d0), pick(&mut rng, d1, 4));
        let tag = format!("λ={lam} ζ={:?} [{d0},{d1}] ⊂ [{e0},{e1}]", zeta.values);
        let small = whittaker_vectors(&m, &zeta, (d0, d1), true).unwrap();
        let big = whittaker_vectors(&m, &zeta, (e0, e1), true).unwrap();
        assert!(big.projected_dim((d0, d1)) >= small.dim(), "strict {tag}");
        let small = whittaker_vectors(&m, &zeta, (d0, d1), false).unwrap();
        let big = whittaker_vectors(&m, &zeta, (e0, e1), false).unwrap();
        assert!(small.contains_span(&big.project((d0, d1))), "leaky {tag}");
    }
}

#[test]
fn gamma_contains_whittaker_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let lam = Weight::from_ints(&[pick(&mut rng, -3, 3), pick(&mut rng, -3, 3)]);
        let zeta = make_character(2, &[s(pick(&mut rng, -2, 2))]).unwrap();
        let m = verma_truncation(&lam, 3, VermaVariant::Verma).unwrap();
        let d0 = pick(&mut rng, 0, 3);
        let d1 = pick(&mut rng, d0, 3);
        let w = whittaker_vectors(&m, &zeta, (d0, d1), false).unwrap();
        let g = gamma_window(&m, &zeta, (d0, d1), Some(pick(&mut rng, 1, 3) as usize)).unwrap();
        assert!(g.contains_span(&w.basis));
    }
}

/// Dense rational rank by fraction-exact Gaussian elimination.
fn dense_rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

/// Window dimension for `[0,d]` from dense matrices: rows at depths `0..d`.
fn dense_window_dim(m: &TruncatedModule, zeta: &[Scalar]) -> usize {
    let n = m.n;
    let cols: Vec<usize> = (0..m.dim()).collect();
    let rows: Vec<usize> = (0..m.dim()).filter(|&i| m.depths[i] < m.depth).collect();
    let mut a = Vec::new();
    for (i, z) in zeta.iter().enumerate() {
        let op = &m.action[&Gen::e(i, i + 1).index(n)];
        for &r in &rows {
            a.push(
                cols.iter()
                    .map(|&c| {
                        let v = op.get(r, c).as_rational().expect("rational action");
                        if r == c {
                            &v - z
                        } else {
                            v
                        }
                    })
                    .collect(),
            );
        }
    }
    cols.len() - dense_rank(a)
}

#[test]
fn regular_q2_golden_against_dense_oracle() {
    let zeta = [s(1)];
    let z = make_character(2, &zeta).unwrap();
    let golden: [([i64; 2], [usize; 5]); 4] =
        [([1, 0], [2, 4, 4, 4, 4]), ([-2, 2], [2, 4, 4, 4, 4]), ([3, -3], [2, 4, 4, 4, 4]), ([0, 0], [1, 2, 2, 2, 2])];
    for (lam, dims) in golden {
        for d in 0..=4 {
            let m = verma_truncation(&Weight::from_ints(&lam), d, VermaVariant::Verma).unwrap();
            let w = whittaker_vectors(&m, &z, (0, d), false).unwrap();
            assert_eq!(w.dim(), dense_window_dim(&m, &zeta), "λ={lam:?} d={d}");
            assert_eq!(w.dim(), dims[d as usize], "λ={lam:?} d={d}");
        }
    }
}
