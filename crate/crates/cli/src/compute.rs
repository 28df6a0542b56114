//! Computation commands: characters, Whittaker windows, W-algebra bases and
//! star products.

use std::collections::BTreeMap;

use qwk::highest_weight::{verma_truncation, VermaVariant};
use qwk::star::{Gutt, MoyalWeyl, PolyElement};
use qwk::walgebra::{build_m, build_symplectic, w_invariants, LagrangianChoice};
use qwk::whittaker::{lambda_nu_member, make_character, whittaker_vectors, LambdaNuVerdict, WhittakerSummary};
use qwk::{build_qn, Scalar, Weight};
use serde::Serialize;

use crate::config::{NilpotentSpec, MAX_SUITE_RANK};
use crate::error::CliError;

fn check_weight(lambda: &Weight, n: Option<usize>) -> Result<usize, CliError> {
    let len = lambda.n();
    if let Some(n) = n {
        if n != len {
            return Err(CliError::Config(format!("lambda has {len} entries, expected {n}")));
        }
    }
    if len == 0 || len > MAX_SUITE_RANK {
        return Err(CliError::Config(format!("lambda must have 1..={MAX_SUITE_RANK} entries, got {len}")));
    }
    Ok(len)
}

/// Weight multiplicities of a truncated Verma module as CSV.
pub fn character(lambda: &Weight, n: Option<usize>, depth: i64, variant: VermaVariant) -> Result<String, CliError> {
    check_weight(lambda, n)?;
    if depth < 0 {
        return Err(CliError::Config("depth must be nonnegative".into()));
    }
    Ok(verma_truncation(lambda, depth, variant)?.character().to_csv())
}

#[derive(Debug, Serialize)]
pub struct WhittakerOutput {
    pub lambda: Weight,
    pub zeta: Vec<Scalar>,
    pub depth: i64,
    pub module_dim: usize,
    pub lambda_nu: LambdaNuVerdict,
    pub solve: WhittakerSummary,
}

/// Whittaker vectors of a Verma truncation in a depth window.
pub fn whittaker(lambda: &Weight, zeta: &[Scalar], window: (i64, i64), depth: Option<i64>, strict: bool) -> Result<WhittakerOutput, CliError> {
    let n = check_weight(lambda, None)?;
    if n < 2 {
        return Err(CliError::Config("Whittaker vectors need n >= 2".into()));
    }
    let zeta = if zeta.is_empty() { vec![Scalar::one(); n - 1] } else { zeta.to_vec() };
    if zeta.len() + 1 != n {
        return Err(CliError::Config(format!("zeta needs {} values for n = {n}", n - 1)));
    }
    let depth = depth.unwrap_or(window.1);
    let chi = make_character(n, &zeta)?;
    let m = verma_truncation(lambda, depth, VermaVariant::Verma)?;
    let w = whittaker_vectors(&m, &chi, window, strict)?;
    Ok(WhittakerOutput { lambda: lambda.clone(), zeta, depth, module_dim: m.dim(), lambda_nu: lambda_nu_member(lambda, &chi)?, solve: w.summary() })
}

#[derive(Debug, Serialize)]
pub struct BasisEntry {
    pub degree: i64,
    pub element: String,
}

#[derive(Debug, Serialize)]
pub struct WalgebraBasis {
    pub n: usize,
    #[serde(rename = "E")]
    pub nilpotent: String,
    pub cap: usize,
    pub m_chi: Vec<String>,
    pub graded_dims: BTreeMap<i64, usize>,
    pub invariant: bool,
    pub basis: Vec<BasisEntry>,
}

/// Invariant basis of the W-algebra truncated at a Kazhdan degree.
pub fn walgebra_basis(n: usize, spec: &NilpotentSpec, cap: usize) -> Result<WalgebraBasis, CliError> {
    if n == 0 || n > MAX_SUITE_RANK {
        return Err(CliError::Config(format!("n = {n} outside 1..={MAX_SUITE_RANK}")));
    }
    let d = spec.datum(n)?;
    let m = build_m(&d, &build_symplectic(&d, LagrangianChoice::Forward)?)?;
    let w = w_invariants(&d, &m, cap, None)?;
    Ok(WalgebraBasis {
        n,
        nilpotent: spec.to_string(),
        cap,
        m_chi: m.m_chi_text(&d.qn),
        graded_dims: w.graded_dims(),
        invariant: w.verify(),
        basis: w.basis.iter().map(|b| BasisEntry { degree: b.degree, element: w.to_text(&b.rep) }).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarKind {
    Moyal,
    Gutt,
}

#[derive(Debug, Serialize)]
pub struct StarOutput {
    pub kind: String,
    pub variables: Vec<String>,
    pub p: String,
    pub q: String,
    pub hbar_cap: u32,
    pub product: String,
}

/// `p ∗ q` to `ħ^{2·cap}`. Moyal products live on `g(−1)` of the nilpotent;
/// Gutt products on `S(q(n))`.
pub fn star(kind: StarKind, n: usize, spec: &NilpotentSpec, p: &str, q: &str, cap: u32) -> Result<StarOutput, CliError> {
    if n == 0 || n > MAX_SUITE_RANK {
        return Err(CliError::Config(format!("n = {n} outside 1..={MAX_SUITE_RANK}")));
    }
    let qn = build_qn(n)?;
    let (basis, product) = match kind {
        StarKind::Moyal => {
            let d = spec.datum(n)?;
            let s = build_symplectic(&d, LagrangianChoice::Forward)?;
            let mw = MoyalWeyl::from_symplectic(&qn, &s)?;
            let (a, b) = (PolyElement::parse(p, &mw.basis)?, PolyElement::parse(q, &mw.basis)?);
            (mw.basis.clone(), mw.star(&a, &b, cap)?)
        }
        StarKind::Gutt => {
            let g = Gutt::new(qn);
            let (a, b) = (PolyElement::parse(p, &g.basis)?, PolyElement::parse(q, &g.basis)?);
            (g.basis.clone(), g.star(&a, &b, cap)?)
        }
    };
    Ok(StarOutput {
        kind: format!("{kind:?}").to_lowercase(),
        variables: basis.names.clone(),
        p: p.to_string(),
        q: q.to_string(),
        hbar_cap: cap,
        product: product.to_text(&basis),
    })
}
