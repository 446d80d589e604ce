//! Weierstrass elliptic functions on arbitrary complex period lattices, and
//! the classical determinant identities built from them.
//!
//! The crate has two halves that deliberately never share code paths:
//!
//! * an evaluation backend for sigma, zeta, pe and the higher derivatives
//!   pe^(k), built on the odd theta function with argument reduction and
//!   quasi-period corrections ([`Weierstrass`]);
//! * an exact-coefficient series oracle around u = 0 ([`series`]) that the
//!   backend is checked against at construction time.
//!
//! On top of the evaluator sit the determinant identities: the
//! Frobenius-Stickelberger bordered determinant, Hermite's derivative
//! determinant, the confluent (Wronskian) limit, and Kiepert's Hankel
//! determinant with its application to division values and the elliptic
//! multiplication problem. Each identity computes both of its sides through
//! independent routes and reports a relative residual; seeded campaigns drive
//! them over randomized safe samples.

pub mod campaign;
pub mod error;
pub mod identities;
pub mod kiepert;
pub mod lattice;
pub mod matrix;
pub mod residual;
pub mod sampling;
pub mod series;
pub mod tolerances;
pub mod weierstrass;

mod theta;

pub use campaign::{
    run_campaign, CampaignConfig, CampaignResult, CampaignSummary, IdentityKind, TrialOutcome,
};
pub use error::{Error, Result};
pub use identities::confluence::{
    confluent_limit, difference_determinant, sample_determinant, ConfluenceResult, DerivableFamily,
    MonomialFamily, PeDerivativeFamily,
};
pub use identities::{fs_matrix, fs_residual, hermite_residual, r_vanishing_check, IdentityReport};
pub use kiepert::{
    kiepert_hankel, kiepert_report, kiepert_rhs, pe_multiplication, psi_division_value,
    KiepertReport, PsiMethod,
};
pub use lattice::{eisenstein_invariants, CellPoint, EllipticInvariants, Lattice};
pub use matrix::{difference_product_constant, Determinant, SquareMatrix};
pub use num_complex::Complex64;
pub use residual::relative_residual;
pub use sampling::CellSampler;
pub use series::{pe_series, sigma_series, zeta_series, Coefficient, TruncatedSeries};
pub use weierstrass::{derivative_polynomial, DerivativePolynomial, Weierstrass};
