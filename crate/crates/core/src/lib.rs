//! Numerical toolkit for entanglement dynamics of closed bipartite systems
//! and their classical phase-space counterparts.
//!
//! The crate is organized in layers:
//!
//! - [`hilbert`]: truncated Hilbert spaces, sparse Hermitian operators,
//!   state vectors, density matrices, partial traces, linear entropy.
//! - [`states`]: bosonic and spin coherent states, phase-space labels,
//!   Gaussian initial phase-space densities.
//! - [`models`]: spin-boson and two-mode oscillator Hamiltonians, symmetric
//!   (Weyl) quantization of polynomial Hamiltonians, classical counterparts.
//! - [`dynamics`]: unitary propagation (spectral and Krylov) and entropy
//!   time series.
//! - [`shorttime`]: the correlation formula for the quadratic entanglement
//!   onset and scans of its Planck-constant dependence.
//! - [`bec_analytic`]: closed-form entropy for the coupled two-mode model,
//!   used as an oracle for the numerical propagators.
//! - [`ensemble`]: Liouville dynamics by characteristics and the classical
//!   reduced linear entropy.
//! - [`fit`]: exponential-saturation fits for long-time entropy plateaus.

pub mod bec_analytic;
pub mod dynamics;
pub mod error;
pub mod fit;
pub mod hilbert;
mod linalg;
pub mod models;
pub mod ensemble;
pub mod shorttime;
pub mod states;

pub use error::CoreError;
