//! Good gradings, the decomposition lemmas, W-algebra invariants and
//! `θ`-gradings.

use std::collections::BTreeMap;

use qwk::linalg::rank;
use qwk::superalgebra::matrix::{mat_mul, to_matrix};
use qwk::walgebra::{
    build_m, build_symplectic, centralizer_degrees, dw_decomposition_check, good_grading_check, levi_quotient_check, mtilde_build, symmetric_hilbert,
    theta_levi, theta_split, w_invariants, w_verma_truncation, LagrangianChoice, NilpotentDatum,
};
use qwk::{Scalar, SparseVec};

use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{timed, Check};

const W_VERMA_DEPTH: i64 = 3;

fn default_cap(n: usize) -> usize {
    if n <= 2 {
        6
    } else {
        4
    }
}

pub fn good_grading(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let d = cfg.nilpotent.datum(cfg.n)?;
    let r = good_grading_check(&d);
    let mut out = Vec::new();
    for (name, ax) in [("axiom-a", &r.a), ("axiom-b", &r.b), ("axiom-c", &r.c)] {
        let mut c = Check::new(name);
        for v in &ax.violations {
            c.expect(false, || v.clone());
        }
        out.push(c);
    }
    let s = build_symplectic(&d, LagrangianChoice::Forward)?;
    let mut c = Check::new("ad-e-bijection").with("ad_e_rank", s.ad_e_rank).with("dim_minus_one", s.space.len());
    c.expect(s.ad_e_bijective(), || format!("rank {} on a space of dimension {}", s.ad_e_rank, s.space.len()));
    out.push(c);
    let mut c = Check::new("degree-minus-one-parity").with("even_dim", s.even_dim).with("odd_dim", s.odd_dim);
    c.expect(s.odd_dim % 2 == 0, || format!("odd part of g(−1) has dimension {}", s.odd_dim));
    c.expect(s.even_dim == s.odd_dim, || format!("even {} vs odd {}", s.even_dim, s.odd_dim));
    out.push(c);
    let mut c = Check::new("symplectic-gram").with("gram_rank", s.gram_rank).with("lagrangian_dim", s.lagrangian.len());
    c.expect(s.nondegenerate(), || format!("Gram rank {} on dimension {}", s.gram_rank, s.space.len()));
    out.push(c);
    out.push(if d.is_zero() {
        Check::skipped("wrong-grading-fails-b", "E = 0 has no support to misplace")
    } else {
        // the zero grading puts χ in degree 0
        let wrong = NilpotentDatum::with_grading(d.qn.clone(), &d.big_e, &vec![Scalar::zero(); cfg.n])?;
        let b = good_grading_check(&wrong).b;
        let mut c = Check::new("wrong-grading-fails-b").with("violations", b.violations.clone());
        c.expect(!b.pass, || "the zero grading was accepted".into());
        c
    });
    Ok(out)
}

pub fn dw_lemmas(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let d = cfg.nilpotent.datum(cfg.n)?;
    let r = dw_decomposition_check(&d)?;
    let mut first = Check::new("first-decomposition").with("dim_g", r.dim_g).with("dim_ge", r.dim_ge).with("dim_pi_gf", r.dim_pi_gf);
    first.expect(r.first_decomposition, || format!("{} + {} vs {}", r.dim_ge, r.dim_pi_gf, r.dim_g));
    let mut second = Check::new("second-decomposition")
        .with("dim_g", r.dim_g)
        .with("dim_pi_gf_centralizer", r.dim_pi_gf_centralizer)
        .with("dim_ge_image", r.dim_ge_image);
    second.expect(r.second_decomposition, || format!("{} + {} vs {}", r.dim_pi_gf_centralizer, r.dim_ge_image, r.dim_g));
    let mut nondeg = Check::new("omega-nondegenerate").with("gram_rank", r.gram_rank).with("dim_pi_gf", r.dim_pi_gf);
    nondeg.expect(r.nondegenerate, || format!("rank {} on dimension {}", r.gram_rank, r.dim_pi_gf));
    Ok(vec![first, second, nondeg])
}

/// `(Kazhdan degree, odd)` of a basis of `g^E` from matrix supercommutators on
/// each `ad h` eigenspace.
fn centralizer_degrees_oracle(d: &NilpotentDatum) -> Option<Vec<(i64, bool)>> {
    let q = &d.qn;
    let h = to_matrix(&d.triple.h);
    let e = to_matrix(&d.big_e);
    let mut blocks: BTreeMap<(i64, bool), Vec<usize>> = BTreeMap::new();
    for k in 0..q.dim() {
        let g = q.gen(k);
        blocks.entry(((&h[g.i][g.i] - &h[g.j][g.j]).to_i64()?, g.odd)).or_default().push(k);
    }
    let mut out = Vec::new();
    for ((deg, odd), ks) in blocks {
        // [E, x] = Ex + (−1)^{|x|+1} xE for odd E
        let s = if odd { Scalar::one() } else { Scalar::from_int(-1) };
        let images: Vec<SparseVec<Scalar>> = ks
            .iter()
            .map(|&k| {
                let x = to_matrix(&q.basis_element(k));
                let (ex, xe) = (mat_mul(&e, &x), mat_mul(&x, &e));
                let flat: Vec<Scalar> = ex.iter().zip(&xe).flat_map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a + &(&s * b))).collect();
                SparseVec::from_dense(&flat)
            })
            .collect();
        out.extend(std::iter::repeat_n((deg + 2, odd), ks.len() - rank(&images)));
    }
    Some(out)
}

pub fn w_dims(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let d = cfg.nilpotent.datum(cfg.n)?;
    let cap = cfg.cap.unwrap_or(default_cap(cfg.n));
    let sf = build_symplectic(&d, LagrangianChoice::Forward)?;
    let w = w_invariants(&d, &build_m(&d, &sf)?, cap, None)?;
    let dims = w.graded_dims();
    let mut out = Vec::new();
    let mut c = Check::new("invariance").with("basis", w.basis.len()).with("unknowns", w.unknowns);
    c.expect(w.verify(), || "an invariant fails ad m".into());
    out.push(c);
    let mut c = Check::new("graded-dimensions").with("cap", cap).with("w_dims", &dims);
    match centralizer_degrees_oracle(&d) {
        Some(ge) => {
            let want = symmetric_hilbert(&ge, cap as i64);
            c.record("centralizer_degrees", &ge);
            c.expect(dims == want, || format!("invariants {dims:?} vs S(g^E) {want:?}"));
            c.record("symmetric_dims", want);
        }
        None => c.expect(false, || "Dynkin h has non-integral eigenvalues".into()),
    }
    let core: Vec<(i64, bool)> = centralizer_degrees(&d, None)?.into_iter().map(|(a, b, _)| (a, b)).collect();
    c.expect(symmetric_hilbert(&core, cap as i64) == dims, || "library centralizer degrees disagree".into());
    out.push(c);
    let sr = build_symplectic(&d, LagrangianChoice::Reverse)?;
    out.push(if sr.lagrangian == sf.lagrangian {
        Check::skipped("lagrangian-independence", "both choices give the same Lagrangian")
    } else {
        let wr = w_invariants(&d, &build_m(&d, &sr)?, cap, None)?;
        let rd = wr.graded_dims();
        let mut c = Check::new("lagrangian-independence")
            .with("forward", sf.lagrangian.iter().map(|&k| d.qn.gen(k).to_string()).collect::<Vec<_>>())
            .with("reverse", sr.lagrangian.iter().map(|&k| d.qn.gen(k).to_string()).collect::<Vec<_>>())
            .with("reverse_dims", &rd);
        c.expect(wr.verify(), || "an invariant fails ad m for the reverse Lagrangian".into());
        c.expect(rd == dims, || format!("{dims:?} vs {rd:?}"));
        c
    });
    Ok(out)
}

fn default_theta(n: usize) -> Vec<i64> {
    match n {
        3 => vec![1, 1, 0],
        _ => vec![0; n],
    }
}

pub fn theta(cfg: &SuiteConfig) -> Result<Vec<Check>, CliError> {
    let d = cfg.nilpotent.datum(cfg.n)?;
    let theta = cfg.theta.clone().unwrap_or_else(|| default_theta(cfg.n));
    let cap = cfg.cap.unwrap_or(4);
    let m = build_m(&d, &build_symplectic(&d, LagrangianChoice::Forward)?)?;
    let w = w_invariants(&d, &m, cap, Some(&theta))?;
    let tg = theta_split(w, &theta)?;
    let mut out = Vec::new();
    let weights = tg.weight_dims();
    let degenerate = theta.iter().all(|&t| t == theta[0]);
    let mut c = Check::new("theta-split").with("theta", &theta).with("cap", cap).with("weight_dims", &weights);
    if degenerate {
        // constant θ acts by zero: everything sits in weight 0
        c.expect(weights.keys().all(|&k| k == 0), || format!("{weights:?}"));
        c.expect(tg.positive().next().is_none() && tg.sharp0.is_empty(), || "U_{>0} or U_♯ is nonzero".into());
    }
    out.push(c);
    if degenerate {
        out.push(Check::skipped("levi-quotient", "θ induces no grading"));
        out.push(Check::skipped("mtilde", "θ induces no grading"));
        out.push(Check::skipped("w-verma", "θ induces no grading"));
        return Ok(out);
    }
    out.push(timed(|| {
        let mut c = Check::new("levi-quotient");
        match levi_quotient_check(&tg) {
            Ok(r) => {
                c.record("levi_blocks", &r.levi_blocks);
                c.record("quotient_filtered", &r.quotient_filtered);
                c.record("levi_filtered", &r.levi_filtered);
                c.expect(r.pass, || format!("{:?} vs {:?}", r.quotient_filtered, r.levi_filtered));
            }
            Err(e) => c.expect(false, || e.to_string()),
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("mtilde");
        let (_, l) = theta_levi(cfg.n, &theta);
        let built = NilpotentDatum::in_subalgebra(d.qn.clone(), &d.big_e, l)
            .and_then(|dl| build_m(&dl, &build_symplectic(&dl, LagrangianChoice::Forward)?))
            .and_then(|ml| mtilde_build(&d, &theta, &ml, 2 * d.grading.max_degree() + 3));
        match built {
            Ok(mt) => {
                c.record("shift", mt.shift);
                c.record("mtilde", &mt.names);
                c.record("borel_nilradical", mt.borel_nilradical);
                c.expect(mt.equals_nonpositive, || "m̃ differs from the nonpositive part of g′".into());
                c.expect(mt.u.iter().all(|k| mt.mtilde.contains(k)), || "u is not contained in m̃".into());
            }
            Err(e) => c.expect(false, || e.to_string()),
        }
        c
    }));
    out.push(timed(|| {
        let mut c = Check::new("w-verma").with("depth", W_VERMA_DEPTH);
        match w_verma_truncation(&tg, W_VERMA_DEPTH) {
            Ok(v) => {
                c.record("slices", &v.slices);
                c.record("expected", &v.expected);
                c.expect(v.slices == v.expected, || format!("{:?} vs {:?}", v.slices, v.expected));
            }
            Err(e) => c.expect(false, || e.to_string()),
        }
        c
    }));
    Ok(out)
}
