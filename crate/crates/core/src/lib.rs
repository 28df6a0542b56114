//! Exact computer algebra for the queer Lie superalgebra q(n).

pub mod error;
pub mod highest_weight;
pub mod linalg;
pub mod pbw;
pub mod scalar;
pub mod star;
pub mod superalgebra;
pub mod surd;
pub mod walgebra;
pub mod whittaker;

pub use error::{QwkError, Result};
pub use linalg::{Field, SparseMatrix, SparseVec};
pub use pbw::{Enveloping, IdealDatum, PBWMonomial, UElement};
pub use scalar::Scalar;
pub use superalgebra::{build_qn, GElement, Gen, Parity, Qn, Weight};
pub use surd::Surd;
