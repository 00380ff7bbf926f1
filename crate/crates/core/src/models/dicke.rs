use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};
use crate::hilbert::{
    kron_embed, ladder_ops, spin_ops, CompositeSpace, Factor, FockSpace, HermitianOp, SpinSpace,
};

/// Parameters of the spin-boson model: `N` two-level atoms (collective spin
/// `J = N/2`) coupled to one field mode, with independent co- and
/// counter-rotating couplings so the rotating-wave approximation is never
/// implied.
#[derive(Debug, Clone, Copy)]
pub struct DickeParams {
    /// Atomic level splitting.
    pub epsilon: f64,
    /// Field frequency.
    pub omega: f64,
    /// Co-rotating coupling (multiplies `a J+ + a^+ J-`).
    pub g_rot: f64,
    /// Counter-rotating coupling (multiplies `a^+ J+ + a J-`).
    pub g_counter: f64,
    /// Twice the collective spin, `2J = N`.
    pub two_j: usize,
    pub hbar: f64,
    /// Fock cutoff of the field mode.
    pub n_max: usize,
}

impl DickeParams {
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Composite space with the spin first and the field second.
    pub fn space(&self) -> CompositeSpace {
        CompositeSpace::new(SpinSpace::new(self.two_j), FockSpace::new(self.n_max))
    }
}

/// Full Hamiltonian
/// `H = eps Jz (x) 1 + 1 (x) hbar w a^+a
///    + (G /sqrt(2J)) (a J+ + a^+ J-) + (G'/sqrt(2J)) (a^+ J+ + a J-)`.
///
/// The coupling rows touch at most five bands, so the matrix stays sparse.
/// With `G' = 0` it commutes with the total excitation `a^+a + Jz/hbar + J`;
/// in general only the parity of that excitation number is conserved.
pub fn build_dicke(params: &DickeParams, space: &CompositeSpace) -> Result<HermitianOp> {
    let (spin_space, fock_space) = match (space.factor(crate::hilbert::FactorId::A), space.factor(crate::hilbert::FactorId::B)) {
        (Factor::Spin(s), Factor::Fock(f)) => (s, f),
        _ => {
            return Err(CoreError::InvalidFactor(
                "spin-boson model needs a spin (x) Fock composite",
            ))
        }
    };
    if spin_space.two_j() != params.two_j || fock_space.n_max() != params.n_max {
        return Err(CoreError::DimensionMismatch {
            context: "model parameters vs composite space",
            expected: (params.two_j + 1) * (params.n_max + 1),
            got: space.dim(),
        });
    }

    let hbar = params.hbar;
    let ops = spin_ops(spin_space, hbar);
    let (a, a_dag) = ladder_ops(fock_space);
    let number = a_dag.dot(&a);

    let scale = 1.0 / (2.0 * params.j()).sqrt();
    let mut triplets = Vec::new();

    // eps Jz (x) 1
    let h1 = kron_embed(Some(&ops.j_z.mapv(|z| z * params.epsilon)), None, space)?;
    triplets.extend(h1.triplets());
    // 1 (x) hbar w a^+ a
    let h2 = kron_embed(None, Some(&number.mapv(|z| z * hbar * params.omega)), space)?;
    triplets.extend(h2.triplets());
    // (G / sqrt(2J)) (a J+ + a^+ J-)
    let c_rot = C64::new(params.g_rot * scale, 0.0);
    triplets.extend(
        kron_embed(Some(&ops.j_plus), Some(&a), space)?
            .scaled(c_rot)
            .triplets(),
    );
    triplets.extend(
        kron_embed(Some(&ops.j_minus), Some(&a_dag), space)?
            .scaled(c_rot)
            .triplets(),
    );
    // (G' / sqrt(2J)) (a^+ J+ + a J-)
    let c_counter = C64::new(params.g_counter * scale, 0.0);
    triplets.extend(
        kron_embed(Some(&ops.j_plus), Some(&a_dag), space)?
            .scaled(c_counter)
            .triplets(),
    );
    triplets.extend(
        kron_embed(Some(&ops.j_minus), Some(&a), space)?
            .scaled(c_counter)
            .triplets(),
    );

    HermitianOp::from_triplets(*space, triplets)
}

/// Parity operator `exp[i pi (a^+a + Jz/hbar + J)]`: diagonal with entries
/// `(-1)^(n + k)` where `k` indexes the spin basis from `m = -J` upward.
/// Commutes with the full Hamiltonian for any couplings.
pub fn dicke_parity(space: &CompositeSpace) -> Result<HermitianOp> {
    let (da, db) = (space.dim_a(), space.dim_b());
    let mut triplets = Vec::with_capacity(da * db);
    for k in 0..da {
        for n in 0..db {
            let sign = if (k + n) % 2 == 0 { 1.0 } else { -1.0 };
            let flat = space.flat_index(k, n);
            triplets.push((flat, flat, C64::new(sign, 0.0)));
        }
    }
    HermitianOp::from_triplets(*space, triplets)
}
