//! Weighted Clifford prolate spheroidal wave functions.
//!
//! The functions live on the unit ball of R^m with weight (1 − |x|²)^α.
//! They are expanded in normalized Clifford Gegenbauer polynomials, and the
//! expansion coefficients come from a symmetric tridiagonal eigenproblem.

pub mod bessel;
pub mod cgp;
pub mod cliffalg;
pub mod cpswf;
pub mod dd;
pub mod error;
pub mod figures;
pub mod jacobi;
pub mod quadrature;
pub mod special;
pub mod transform;
pub mod tridiag;

pub use error::{Error, Result};
pub use cgp::{cgp_norm_sq, cgp_radial, CgpSpec, RadialPoly};
pub use cliffalg::{mv_conj, mv_mul, y_k_eval, Multivector2, Parity, RadialElement};
pub use cpswf::{cpswf_radial, cpswf_solve, CpswfEigenpair};
pub use quadrature::{gauss_jacobi_rule, QuadRule};
pub use tridiag::{eig_tridiag, TridiagSym};
