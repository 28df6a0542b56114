use serde::{Deserialize, Serialize};

use super::datum::MSubalgebra;
use crate::error::{QwkError, Result};
use crate::highest_weight::TruncatedModule;
use crate::linalg::{nullspace, Field, SparseVec};
use crate::surd::Surd;

/// `Wh(M) = {v | (a − χ(a))v = 0 for a ∈ m}` on a truncation.
#[derive(Clone, Debug)]
pub struct WhittakerInvariants {
    pub basis: Vec<SparseVec<Surd>>,
    /// Strict mode: only vectors none of whose `m`-images left the truncation.
    pub strict: bool,
    /// Solutions whose support meets a vector with a leaked `m`-image.
    pub leaky_support: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerInvariantsSummary {
    pub dim: usize,
    pub strict: bool,
    pub leaky_support: usize,
}

impl WhittakerInvariants {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn summary(&self) -> WhittakerInvariantsSummary {
        WhittakerInvariantsSummary { dim: self.dim(), strict: self.strict, leaky_support: self.leaky_support }
    }
}

/// Whittaker invariants of `M`, optionally inside the span of `within`.
/// Components that left the truncation are unknown; without `strict` they
/// are left unconstrained and counted, with `strict` the vectors carrying
/// them are excluded from the domain.
pub fn whittaker_functor(m: &TruncatedModule, mchi: &MSubalgebra, within: Option<&[SparseVec<Surd>]>, strict: bool) -> Result<WhittakerInvariants> {
    for &k in &mchi.basis {
        if !m.action.contains_key(&k) {
            return Err(QwkError::Invalid(format!("module carries no action of generator {k}")));
        }
    }
    let leaks = |j: usize| mchi.basis.iter().any(|k| m.leaks.get(k).is_some_and(|l| l[j]));
    let frame: Vec<SparseVec<Surd>> = match within {
        Some(vs) => vs.to_vec(),
        None => (0..m.dim()).map(SparseVec::unit).collect(),
    };
    let frame: Vec<SparseVec<Surd>> = if strict { frame.into_iter().filter(|v| v.iter().all(|(j, _)| !leaks(*j))).collect() } else { frame };
    let mut rows: Vec<SparseVec<Surd>> = Vec::new();
    for (k, c) in mchi.basis.iter().zip(&mchi.chi) {
        let a = &m.action[k];
        let c = Surd::from(c.clone());
        let images: Vec<SparseVec<Surd>> = frame.iter().map(|v| a.apply(v).add_scaled(v, &c.neg())).collect();
        let mut acc: std::collections::BTreeMap<usize, Vec<(usize, Surd)>> = std::collections::BTreeMap::new();
        for (col, img) in images.iter().enumerate() {
            for (i, v) in img.iter() {
                acc.entry(*i).or_default().push((col, v.clone()));
            }
        }
        rows.extend(acc.into_values().map(SparseVec::from_pairs));
    }
    let basis: Vec<SparseVec<Surd>> =
        nullspace(&rows, frame.len()).into_iter().map(|c| c.iter().fold(SparseVec::new(), |acc, (col, v)| acc.add_scaled(&frame[*col], v))).collect();
    let leaky_support = basis.iter().filter(|v| v.iter().any(|(j, _)| leaks(*j))).count();
    Ok(WhittakerInvariants { basis, strict, leaky_support })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highest_weight::{trivial_module, verma_truncation, VermaVariant};
    use crate::linalg::rank;
    use crate::scalar::Scalar;
    use crate::superalgebra::{build_qn, Weight};
    use crate::walgebra::{build_m, build_symplectic, LagrangianChoice, NamedNilpotent, NilpotentDatum};

    fn principal_m(n: usize) -> MSubalgebra {
        let d = NilpotentDatum::named(build_qn(n).unwrap(), NamedNilpotent::Principal).unwrap();
        build_m(&d, &build_symplectic(&d, LagrangianChoice::Forward).unwrap()).unwrap()
    }

    #[test]
    fn trivial_module_zero_chi() {
        let m = trivial_module(2).unwrap();
        let zero = MSubalgebra { basis: vec![2, 6], chi: vec![Scalar::zero(), Scalar::zero()] };
        assert_eq!(whittaker_functor(&m, &zero, None, true).unwrap().dim(), 1);
    }

    #[test]
    fn principal_q2_verma() {
        let mchi = principal_m(2);
        assert_eq!(mchi.chi, vec![Scalar::one(), Scalar::zero()]);
        // m is spanned by lowering operators, on which a Verma module is free
        for lam in [[1, 0], [2, -1], [-2, 2]] {
            for d in 1..=4 {
                let m = verma_truncation(&Weight::from_ints(&lam), d, VermaVariant::Verma).unwrap();
                let strict = whittaker_functor(&m, &mchi, None, true).unwrap();
                let loose = whittaker_functor(&m, &mchi, None, false).unwrap();
                assert_eq!((strict.dim(), strict.leaky_support, loose.dim()), (0, 0, 0));
            }
        }
    }

    #[test]
    fn kernels_intersect() {
        let base = principal_m(2);
        let mchi = MSubalgebra { chi: vec![Scalar::zero(); base.basis.len()], basis: base.basis };
        let m = verma_truncation(&Weight::from_ints(&[2, -1]), 3, VermaVariant::Verma).unwrap();
        let d = m.dim();
        let a: Vec<SparseVec<Surd>> = (0..d).filter(|i| i % 3 != 0).map(SparseVec::unit).collect();
        let b: Vec<SparseVec<Surd>> = (0..d).filter(|i| i % 2 == 0).map(SparseVec::unit).collect();
        let ab: Vec<SparseVec<Surd>> = (0..d).filter(|i| i % 3 != 0 && i % 2 == 0).map(SparseVec::unit).collect();
        let wa = whittaker_functor(&m, &mchi, Some(&a), false).unwrap().basis;
        let wb = whittaker_functor(&m, &mchi, Some(&b), false).unwrap().basis;
        let wab = whittaker_functor(&m, &mchi, Some(&ab), false).unwrap().basis;
        // dim(Wa ∩ Wb) = dim Wa + dim Wb − dim(Wa + Wb)
        assert!(!wab.is_empty());
        let sum: Vec<_> = wa.iter().chain(&wb).cloned().collect();
        assert_eq!(wa.len() + wb.len() - rank(&sum), wab.len());
    }
}
