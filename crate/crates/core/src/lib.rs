//! Exact computations for coboundary Lie bialgebras and their quantizations
//! in the formal Poisson group O_{g*} = Ŝ(g).
//!
//! Every structure is generic over a [`Scalar`]; the aliases at the bottom
//! fix the exact rational field used by the command-line tool and the tests.

pub mod cohochschild;
pub mod duality;
pub mod envelope;
pub mod error;
pub mod lie;
pub mod lifts;
pub mod linalg;
pub mod quasitriangular;
pub mod scalar;
pub mod star;
pub mod tensor;

pub use cohochschild::{cohochschild_d, cohomology_dimension, solve_coboundary, Coboundary, Cochain};
pub use duality::{
    form_pair, poisson_traces, rho_product, theta, twisted_coproduct, LinearForm, ThetaMap,
};
pub use envelope::{
    center, dual_bracket, invariants_s_dual, pbw_product, AlgebraTag, CoPoissonEnvelope, Envelope,
    PBWElement,
};
pub use error::{Error, Result};
pub use lifts::{
    cocycle_defect, gauge_phi, gauge_rho, lift_associator, lift_twist, pentagon_defect, twist_class,
};
pub use lie::{load_input, load_lie_algebra, InputSpec, LieAlgebra, RKind, RMatrix};
pub use quasitriangular::{
    c_s_basis, check_inner_derivation, qt_validate, sts_alpha, sts_theta, QTContext, QTStructure,
};
pub use scalar::{parse_rational, Scalar};
pub use star::{star, star_all, star_conjugate};
pub use tensor::{
    alt_project, coproduct_insert, cyb, g_action, is_invariant, poisson_bracket,
    FormalSeriesTensor,
};

pub type Rational = num_rational::BigRational;
pub type Tensor = FormalSeriesTensor<Rational>;
pub type Algebra = LieAlgebra<Rational>;
pub type RMat = RMatrix<Rational>;
