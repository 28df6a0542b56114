//! Finite W-algebras of q(n) at Kazhdan truncation.
//!
//! An odd nilpotent `E` determines `χ = (E|·)`, an sl(2)-triple through
//! `e = ΠE`, and the Dynkin grading by `ad h`. From a Lagrangian `l ⊆ g(−1)`
//! one builds `m = l ⊕ g(≤ −2)`; the W-algebra is modelled as the
//! `ad m`-invariants of `U(g)/I_χ`.

mod datum;
mod functor;
mod invariants;
mod theta;

pub use datum::{
    build_m, build_symplectic, chi_of, dw_decomposition_check, good_grading_check, AxiomResult, DwReport, GoodGradingReport, LagrangianChoice,
    MSubalgebra, NamedNilpotent, NilpotentDatum, SymplecticData,
};
pub use functor::{whittaker_functor, WhittakerInvariants, WhittakerInvariantsSummary};
pub use invariants::{centralizer_degrees, symmetric_hilbert, w_invariants, w_multiply, WElement, WTruncation, DEFAULT_MAX_CAP};
pub use theta::{
    is_borel_nilradical, levi_quotient_check, mtilde_build, theta_levi, theta_split, w_verma_truncation, LeviQuotientReport, MTilde, ThetaGrading,
    WVermaSlices,
};
