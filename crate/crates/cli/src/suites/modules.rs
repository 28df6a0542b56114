//! Clifford modules of the Cartan and truncated Verma modules.

use std::collections::BTreeMap;

use qwk::highest_weight::{clifford_module, singular_vectors, verma_character_series, verma_truncation, ModuleType, VermaVariant};
use qwk::{Scalar, SparseMatrix, Surd, Weight};

use super::Sampler;
use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

const DEFAULT_WEIGHTS: usize = 200;
const MAX_CLIFFORD_RANK: usize = 4;
const COMMUTANT_MAX_RANK: usize = 3;
const DEFAULT_DEPTH: i64 = 4;

fn random_weight(n: usize, rng: &mut Sampler) -> Weight {
    Weight((0..n).map(|_| if rng.int(0, 2) == 0 { Scalar::zero() } else { Scalar::new(rng.int(-5, 5), rng.int(1, 4)) }).collect())
}

pub fn clifford(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let samples = cfg.samples.unwrap_or(DEFAULT_WEIGHTS);
    let mut out = Vec::new();
    out.push(timed(|| {
        let mut c = Check::new("clifford-relations").with("weights", samples).with("seed", cfg.seed).with("max_rank", MAX_CLIFFORD_RANK);
        let mut rng = Sampler::new(cfg.seed);
        for t in 0..samples {
            let n = 1 + t % MAX_CLIFFORD_RANK;
            let lam = random_weight(n, &mut rng);
            let u = clifford_module(&lam);
            let k = lam.support_size();
            c.expect(u.dim == 1 << k.div_ceil(2), || format!("dim u({lam}) = {}", u.dim));
            let id = SparseMatrix::<Surd>::identity(u.dim);
            for i in 0..n {
                for j in 0..n {
                    let ac = u.hbar[i].mul(&u.hbar[j]).add_scaled(&u.hbar[j].mul(&u.hbar[i]), &Surd::one());
                    let want = if i == j { id.scale(&Surd::from(&lam.0[i] + &lam.0[i])) } else { SparseMatrix::zeros(u.dim, u.dim) };
                    c.expect(ac == want, || format!("λ={lam}: h̄_{} h̄_{} relation", i + 1, j + 1));
                }
                let parity_ok = u.hbar[i].cols.iter().enumerate().all(|(col, v)| v.iter().all(|(r, _)| u.parity[*r] != u.parity[col]));
                c.expect(parity_ok, || format!("λ={lam}: h̄_{} is not odd", i + 1));
            }
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("clifford-type").with("coordinates", ["0", "1", "-2"]).with("max_rank", COMMUTANT_MAX_RANK);
        let values = [Scalar::zero(), Scalar::one(), Scalar::from_int(-2)];
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for n in 1..=COMMUTANT_MAX_RANK {
            for code in 0..3usize.pow(n as u32) {
                let lam = Weight((0..n).map(|i| values[(code / 3usize.pow(i as u32)) % 3].clone()).collect());
                let u = clifford_module(&lam);
                let (even, odd) = u.commutant_dims();
                let type_q = u.k % 2 == 1;
                // type Q ⇔ the commutant has an odd part
                c.expect(even == 1 && odd == usize::from(type_q), || format!("λ={lam}: commutant ({even},{odd})"));
                c.expect((u.module_type() == ModuleType::Q) == type_q, || format!("λ={lam}: reported type {:?}", u.module_type()));
                *counts.entry(format!("{:?}", u.module_type())).or_insert(0) += 1;
            }
        }
        c.record("types", counts);
        c
    }));
    Ok(out)
}

fn default_weights(n: usize) -> Vec<Weight> {
    match n {
        1 => vec![Weight::from_ints(&[1]), Weight::from_ints(&[0]), Weight(vec![Scalar::new(-3, 2)])],
        2 => vec![
            Weight::from_ints(&[1, 0]),
            Weight::from_ints(&[3, -3]),
            Weight::from_ints(&[0, 0]),
            Weight(vec![Scalar::new(1, 2), Scalar::new(-2, 3)]),
        ],
        _ => vec![
            Weight((0..n as i64).map(|i| Scalar::from_int(n as i64 - 2 * i)).collect()),
            Weight((0..n as i64).map(|i| Scalar::from_int(i % 2)).collect()),
            Weight::zero(n),
        ],
    }
}

pub fn verma(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let n = cfg.n;
    let depth = cfg.depth.unwrap_or(if n <= 2 { DEFAULT_DEPTH } else { 2 });
    let weights = match &cfg.lambda {
        Some(l) => vec![l.clone()],
        None => default_weights(n),
    };
    let mut out = Vec::new();
    let mut series = Check::new("character-series").with("depth", depth);
    let mut dims = BTreeMap::new();
    for lam in &weights {
        let m = verma_truncation(lam, depth, VermaVariant::Verma)?;
        let want = verma_character_series(lam, clifford_module(lam).dim, depth);
        series.expect(m.character() == want, || format!("λ={lam}"));
        dims.insert(lam.to_string(), m.depth_slices().values().map(Vec::len).collect::<Vec<_>>());
    }
    series.record("slice_dims", dims);
    out.push(series);
    if n == 2 {
        out.push(timed(|| {
            let mut c = Check::new("singular-witness");
            let mut found = BTreeMap::new();
            for a in [-2i64, -3] {
                let lam = Weight::from_ints(&[a, -a]);
                let d = 2 * a.abs();
                let below: BTreeMap<String, usize> = match verma_truncation(&lam, d, VermaVariant::Verma) {
                    Ok(m) => m
                        .slices()
                        .keys()
                        .filter(|w| **w != lam)
                        .filter_map(|w| singular_vectors(&m, w).ok().map(|s| (w.to_string(), s.len())))
                        .filter(|(_, k)| *k > 0)
                        .collect(),
                    Err(e) => {
                        c.expect(false, || e.to_string());
                        BTreeMap::new()
                    }
                };
                c.expect(!below.is_empty(), || format!("a={a}: no singular vector below the top within depth {d}"));
                found.insert(lam.to_string(), below);
            }
            c.record("singular_dims", found);
            c
        }));
        out.push(timed(|| {
            let mut c = Check::new("generic-no-singular").with("depth", 3);
            for lam in [Weight(vec![Scalar::new(1, 3), Scalar::new(-2, 7)]), Weight(vec![Scalar::new(-5, 2), Scalar::new(1, 5)])] {
                match verma_truncation(&lam, 3, VermaVariant::Verma) {
                    Ok(m) => {
                        for w in m.slices().keys().filter(|w| **w != lam) {
                            let k = singular_vectors(&m, w).map(|s| s.len()).unwrap_or(usize::MAX);
                            c.expect(k == 0, || format!("λ={lam} μ={w}: {k}"));
                        }
                    }
                    Err(e) => c.expect(false, || e.to_string()),
                }
            }
            c
        }));
    } else {
        out.push(Check::skipped("singular-witness", "defined for n = 2"));
        out.push(Check::skipped("generic-no-singular", "defined for n = 2"));
    }
    Ok(out)
}
