//! Benchmark fixtures shared by the criterion targets.

use qwk::star::{MoyalWeyl, PolyElement};
use qwk::walgebra::{build_m, build_symplectic, LagrangianChoice, MSubalgebra, NamedNilpotent, NilpotentDatum};
use qwk::{build_qn, Scalar};

/// Nilpotent datum of q(n) with its forward-Lagrangian `m`.
pub fn w_fixture(n: usize, which: NamedNilpotent) -> (NilpotentDatum, MSubalgebra) {
    let d = NilpotentDatum::named(build_qn(n).expect("valid rank"), which).expect("named nilpotent");
    let m = build_m(&d, &build_symplectic(&d, LagrangianChoice::Forward).expect("symplectic data")).expect("m");
    (d, m)
}

/// Moyal–Weyl product on `g(−1)` of the minimal nilpotent of q(3).
pub fn moyal_fixture() -> MoyalWeyl {
    let (d, _) = w_fixture(3, NamedNilpotent::Minimal);
    let s = build_symplectic(&d, LagrangianChoice::Forward).expect("symplectic data");
    MoyalWeyl::from_symplectic(&d.qn, &s).expect("Moyal product")
}

/// `Σ_i x_i` squared with the commutative product, a dense degree-2 input.
pub fn dense_quadratic(vars: usize, odd: &[bool]) -> PolyElement {
    let mut lin = PolyElement::zero();
    for i in 0..vars {
        lin.add_scaled(&PolyElement::var(i), &Scalar::from_int(i as i64 + 1));
    }
    lin.commutative_mul(&lin, odd)
}
