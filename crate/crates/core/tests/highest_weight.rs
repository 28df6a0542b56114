use qwk::highest_weight::{
    clifford_module, convolve, even_verma_character_series, even_verma_truncation, exterior_odd_character, induce_from_even, singular_vectors,
    verma_character_series, verma_truncation, ModuleType, VermaVariant,
};
use qwk::{Scalar, SparseMatrix, Surd, Weight};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_weight(n: usize, rng: &mut ChaCha8Rng) -> Weight {
    Weight(
        (0..n)
            .map(|_| {
                // a third of the coordinates vanish
                if rng.next_u64().is_multiple_of(3) {
                    Scalar::zero()
                } else {
                    Scalar::new((rng.next_u64() % 11) as i64 - 5, 1 + (rng.next_u64() % 4) as i64)
                }
            })
            .collect(),
    )
}

#[test]
fn clifford_relations_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..200 {
        let n = 1 + t % 4;
        let lam = random_weight(n, &mut rng);
        let u = clifford_module(&lam);
        let k = lam.0.iter().filter(|c| !c.is_zero()).count();
        assert_eq!(u.k, k);
        assert_eq!(u.dim, 1 << k.div_ceil(2), "dim u({lam})");
        let id = SparseMatrix::<Surd>::identity(u.dim);
        for i in 0..n {
            for j in 0..n {
                let ac = u.hbar[i].mul(&u.hbar[j]).add_scaled(&u.hbar[j].mul(&u.hbar[i]), &Surd::one());
                let want = if i == j { id.scale(&Surd::from(&lam.0[i] + &lam.0[i])) } else { SparseMatrix::zeros(u.dim, u.dim) };
                assert_eq!(ac, want, "λ={lam} i={i} j={j}");
            }
            // each h̄_i is odd
            for (c, col) in u.hbar[i].cols.iter().enumerate() {
                assert!(col.iter().all(|(r, _)| u.parity[*r] != u.parity[c]));
            }
        }
    }
}

#[test]
fn clifford_type_against_commutant() {
    for n in 1..=3usize {
        for code in 0..3usize.pow(n as u32) {
            // coordinates drawn from {0, 1, −2}
            let lam =
                Weight((0..n).map(|i| [Scalar::zero(), Scalar::one(), Scalar::from_int(-2)][(code / 3usize.pow(i as u32)) % 3].clone()).collect());
            let u = clifford_module(&lam);
            let (even, odd) = u.commutant_dims();
            assert_eq!(even, 1, "λ={lam}");
            let q = u.k % 2 == 1;
            assert_eq!(odd, usize::from(q), "λ={lam}");
            assert_eq!(u.module_type() == ModuleType::Q, q);
        }
    }
}

#[test]
fn verma_matches_character_series() {
    let lams: Vec<Weight> = vec![
        Weight::from_ints(&[1, 0]),
        Weight::from_ints(&[3, -3]),
        Weight::from_ints(&[0, 0]),
        Weight(vec![Scalar::new(1, 2), Scalar::new(-2, 3)]),
        Weight::from_ints(&[2, 0, -1]),
        Weight::from_ints(&[0, 0, 0]),
    ];
    for lam in &lams {
        let depth = if lam.n() == 2 { 4 } else { 3 };
        let m = verma_truncation(lam, depth, VermaVariant::Verma).unwrap();
        let top = clifford_module(lam).dim;
        assert_eq!(m.character(), verma_character_series(lam, top, depth), "λ={lam}");
    }
}

#[test]
fn generic_weights_have_no_low_singular_vectors() {
    for lam in [Weight(vec![Scalar::new(1, 3), Scalar::new(-2, 7)]), Weight(vec![Scalar::new(-5, 2), Scalar::new(1, 5)])] {
        let m = verma_truncation(&lam, 3, VermaVariant::Verma).unwrap();
        for (w, _) in m.slices() {
            let s = singular_vectors(&m, &w).unwrap();
            assert_eq!(s.len(), if w == lam { m.slices()[&w].len() } else { 0 }, "λ={lam} μ={w}");
        }
    }
}

#[test]
fn singular_witness_negative_family() {
    for a in [-2i64, -3] {
        let lam = Weight::from_ints(&[a, -a]);
        let m = verma_truncation(&lam, 2 * a.abs(), VermaVariant::Verma).unwrap();
        let below: Vec<(Weight, usize)> =
            m.slices().keys().filter(|w| **w != lam).map(|w| (w.clone(), singular_vectors(&m, w).unwrap().len())).filter(|(_, k)| *k > 0).collect();
        assert_eq!(below, vec![(Weight::from_ints(&[a - 1, 1 - a]), 2)], "a={a}");
    }
}

#[test]
fn induced_from_even_is_exterior_convolution() {
    for lam in [Weight::from_ints(&[1, -1]), Weight::from_ints(&[0, 2]), Weight::from_ints(&[1, 0, 0])] {
        let d = if lam.n() == 2 { 3 } else { 2 };
        let m0 = even_verma_truncation(&lam, d).unwrap();
        assert_eq!(m0.character(), even_verma_character_series(&lam, d));
        let m = induce_from_even(&m0, d).unwrap();
        let want = convolve(&exterior_odd_character(lam.n()), &even_verma_character_series(&lam, d));
        assert_eq!(m.character().mult, want.mult, "λ={lam}");
    }
}
