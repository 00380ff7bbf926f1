//! Truncated Hilbert spaces and the linear algebra that lives on them:
//! factor and composite spaces, sparse Hermitian operators, state vectors,
//! density matrices, partial traces, and the reduced linear entropy.

mod operator;
mod space;
mod state;

pub use operator::{embed, kron_embed, ladder_ops, spin_ops, HermitianOp, SparseMatrix, SpinOps};
pub use space::{CompositeSpace, Factor, FactorId, FockSpace, SpinSpace};
pub use state::{partial_trace, purity, rle, DensityMatrix, SpaceRef, StateVector};
