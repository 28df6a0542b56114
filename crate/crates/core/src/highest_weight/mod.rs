//! Highest-weight theory: Clifford modules of the Cartan, truncated induced
//! modules (Verma, `N(λ)`, parabolic, induced from the even part), formal
//! characters and singular vectors.

mod character;
mod clifford;
mod finite;
mod induced;

pub use character::{convolve, even_verma_character_series, exterior_odd_character, parabolic_character_series, verma_character_series, Character};
pub use clifford::{clifford_module, expected_dim, projective_cover_h, simple_tensor_type, CliffordModule, ModuleType, TensorOutcome};
pub use finite::{adjoint_module, finite_module, natural_module, tensor_modules, trivial_module};
pub use induced::{
    borel_data, even_verma_truncation, h_eigen_split, induce, induce_from_even, parabolic_induce, singular_vectors, verma_truncation, EigenSplit,
    InductionData, Provenance, SourceModule, TruncatedModule, TruncatedModuleJson, VermaVariant,
};
