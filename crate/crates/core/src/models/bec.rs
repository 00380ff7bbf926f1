use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};
use crate::hilbert::{CompositeSpace, Factor, FactorId, HermitianOp};

/// Parameters of the two resonant oscillators with linear exchange and a
/// total-number-squared nonlinearity.
#[derive(Debug, Clone, Copy)]
pub struct BecParams {
    /// Common mode frequency.
    pub omega: f64,
    /// Exchange (hopping) coupling.
    pub lambda: f64,
    /// Nonlinearity in front of `(n1 + n2 + 1)^2`.
    pub g: f64,
    pub hbar: f64,
    /// Fock cutoff applied to each mode.
    pub n_max: usize,
}

impl BecParams {
    pub fn space(&self) -> CompositeSpace {
        let fock = crate::hilbert::FockSpace::new(self.n_max);
        CompositeSpace::new(fock, fock)
    }
}

/// Hamiltonian
/// `H = hbar w (n1 + n2 + 1) + hbar l (a1^+ a2 + a1 a2^+)
///    + hbar^2 g (n1 + n2 + 1)^2`,
/// assembled directly in the product Fock basis. Commutes with the total
/// number `n1 + n2`.
pub fn build_bec(params: &BecParams, space: &CompositeSpace) -> Result<HermitianOp> {
    let (f1, f2) = match (space.factor(FactorId::A), space.factor(FactorId::B)) {
        (Factor::Fock(f1), Factor::Fock(f2)) => (f1, f2),
        _ => {
            return Err(CoreError::InvalidFactor(
                "two-mode model needs a Fock (x) Fock composite",
            ))
        }
    };
    if f1.n_max() != params.n_max || f2.n_max() != params.n_max {
        return Err(CoreError::DimensionMismatch {
            context: "model cutoff vs composite space",
            expected: (params.n_max + 1) * (params.n_max + 1),
            got: space.dim(),
        });
    }

    let hbar = params.hbar;
    let (d1, d2) = (space.dim_a(), space.dim_b());
    let mut triplets = Vec::new();
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            let row = space.flat_index(n1, n2);
            let total = (n1 + n2 + 1) as f64;
            let diag = hbar * params.omega * total + hbar * hbar * params.g * total * total;
            triplets.push((row, row, C64::new(diag, 0.0)));
            // a1^+ a2 : (n1, n2) -> (n1 + 1, n2 - 1)
            if n1 + 1 < d1 && n2 >= 1 {
                let col = space.flat_index(n1, n2);
                let dst = space.flat_index(n1 + 1, n2 - 1);
                let amp = hbar * params.lambda * (((n1 + 1) * n2) as f64).sqrt();
                triplets.push((dst, col, C64::new(amp, 0.0)));
            }
            // a1 a2^+ : (n1, n2) -> (n1 - 1, n2 + 1)
            if n1 >= 1 && n2 + 1 < d2 {
                let col = space.flat_index(n1, n2);
                let dst = space.flat_index(n1 - 1, n2 + 1);
                let amp = hbar * params.lambda * ((n1 * (n2 + 1)) as f64).sqrt();
                triplets.push((dst, col, C64::new(amp, 0.0)));
            }
        }
    }
    HermitianOp::from_triplets(*space, triplets)
}

/// Total number operator `n1 + n2` on the two-mode composite.
pub fn bec_total_number(space: &CompositeSpace) -> Result<HermitianOp> {
    let (d1, d2) = (space.dim_a(), space.dim_b());
    let mut triplets = Vec::with_capacity(d1 * d2);
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            let flat = space.flat_index(n1, n2);
            triplets.push((flat, flat, C64::new((n1 + n2) as f64, 0.0)));
        }
    }
    HermitianOp::from_triplets(*space, triplets)
}
