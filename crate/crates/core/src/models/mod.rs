//! Hamiltonian builders for the two concrete models, symmetric-ordering
//! quantization of polynomial Hamiltonians, the sqrt(J) initial-condition
//! rescaling, and classical counterpart Hamiltonians with their flows.

mod bec;
mod classical;
mod dicke;
mod weyl;

pub use bec::{bec_total_number, build_bec, BecParams};
pub use classical::{
    classical_counterpart_bec, classical_counterpart_dicke, rescale_initial, ClassicalSystem,
};
pub use dicke::{build_dicke, dicke_parity, DickeParams};
pub use weyl::{build_polynomial, weyl_monomial_1d, PolynomialHamiltonian, PolynomialTerm};
