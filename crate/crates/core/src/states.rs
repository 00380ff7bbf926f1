//! Coherent-state preparation for bosonic modes and spins, phase-space
//! labels, product states, and the Gaussian phase-space density seeded by
//! the overlap of the initial state with the coherent-state basis.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};
use crate::hilbert::{CompositeSpace, Factor, FockSpace, SpinSpace, StateVector};

/// One canonical pair `(q, p)` of a single degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn radius_sq(&self) -> f64 {
        self.q * self.q + self.p * self.p
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            q: self.q * factor,
            p: self.p * factor,
        }
    }
}

/// Which family a coherent label belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LabelKind {
    Bosonic,
    Spin { two_j: usize },
}

/// Complex coherent-state label together with the parametrization context.
#[derive(Debug, Clone, Copy)]
pub struct CoherentLabel {
    pub v: C64,
    pub hbar: f64,
    pub kind: LabelKind,
}

/// Bosonic label `v = (q + i p) / sqrt(2 hbar)`.
pub fn bosonic_label(point: PhasePoint, hbar: f64) -> CoherentLabel {
    let v = C64::new(point.q, point.p) / (2.0 * hbar).sqrt();
    CoherentLabel {
        v,
        hbar,
        kind: LabelKind::Bosonic,
    }
}

/// Spin label `v = (q + i p) / sqrt(hbar J - (q^2 + p^2))`.
///
/// This is the single place in the crate where the spin phase-space
/// parametrization is fixed. The denominator puts the coordinate pole at
/// `q^2 + p^2 = hbar J`; families of points rescaled by `sqrt(J)` map to
/// the same label for every `J` at fixed `hbar`, which is what the scaling
/// machinery in `models` relies on. Points at or beyond the pole are
/// rejected.
pub fn spin_label(point: PhasePoint, hbar: f64, two_j: usize) -> Result<CoherentLabel> {
    let j = two_j as f64 / 2.0;
    let pole = hbar * j;
    let r_sq = point.radius_sq();
    if r_sq >= pole {
        return Err(CoreError::OutsideLabelDomain {
            radius_sq: r_sq,
            pole,
        });
    }
    let v = C64::new(point.q, point.p) / (pole - r_sq).sqrt();
    Ok(CoherentLabel {
        v,
        hbar,
        kind: LabelKind::Spin { two_j },
    })
}

/// Pure state on a single tensor factor.
#[derive(Debug, Clone)]
pub struct FactorState {
    factor: Factor,
    amplitudes: Array1<C64>,
}

impl FactorState {
    pub fn new(factor: Factor, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != factor.dim() {
            return Err(CoreError::DimensionMismatch {
                context: "factor state vs factor space",
                expected: factor.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { factor, amplitudes })
    }

    pub fn factor(&self) -> Factor {
        self.factor
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<psi| M |psi>` for a dense factor-level operator.
    pub fn expectation(&self, op: &Array2<C64>) -> C64 {
        let m = op.dot(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(m.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Smallest acceptable Fock cutoff for a coherent state with the given mean
/// occupation: `|v|^2 + 6 sqrt(|v|^2)` rounded up.
pub fn required_fock_cutoff(mean_occupation: f64) -> usize {
    (mean_occupation + 6.0 * mean_occupation.sqrt()).ceil() as usize
}

/// Bosonic coherent state `|v>` on a truncated Fock space, renormalized
/// over the retained block. Amplitudes are assembled in log space so large
/// occupations never touch a raw factorial.
pub fn bosonic_coherent(point: PhasePoint, hbar: f64, space: FockSpace) -> Result<FactorState> {
    let label = bosonic_label(point, hbar);
    coherent_from_label(label.v, space)
}

/// Same construction from an explicit label; used when the label is swept
/// directly rather than derived from a phase point.
pub fn coherent_from_label(v: C64, space: FockSpace) -> Result<FactorState> {
    let mean = v.norm_sqr();
    let required = required_fock_cutoff(mean);
    if mean > 0.0 && required >= space.n_max() {
        return Err(CoreError::TruncationTooSmall {
            mean_occupation: mean,
            required,
            n_max: space.n_max(),
        });
    }

    let dim = space.dim();
    let mut amps = Array1::zeros(dim);
    if mean == 0.0 {
        amps[0] = C64::new(1.0, 0.0);
        return FactorState::new(Factor::Fock(space), amps);
    }

    let ln_mod_v = v.norm().ln();
    let phase = v.arg();
    let mut ln_fact = 0.0;
    for n in 0..dim {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        let ln_mag = -0.5 * mean + n as f64 * ln_mod_v - 0.5 * ln_fact;
        amps[n] = C64::from_polar(ln_mag.exp(), phase * n as f64);
    }
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.mapv_inplace(|z| z / norm);
    FactorState::new(Factor::Fock(space), amps)
}

/// Spin coherent state: the unitary `exp[(arctan|v|/|v|)(v J+ - v* J-)]`
/// applied to the lowest-weight state `|J, -J>`.
///
/// The rotation generator is built from the dimensionless ladder operators
/// (structure constants `[J+, J-] = 2 Jz`); physical expectation values
/// pick up their factors of `hbar` through `spin_ops`. The exponential is
/// evaluated exactly by eigendecomposition of the Hermitian matrix `i K`.
pub fn spin_coherent(point: PhasePoint, hbar: f64, space: SpinSpace) -> Result<FactorState> {
    let label = spin_label(point, hbar, space.two_j())?;
    spin_coherent_from_label(label.v, space)
}

pub fn spin_coherent_from_label(v: C64, space: SpinSpace) -> Result<FactorState> {
    let dim = space.dim();
    let mut amps: Array1<C64> = Array1::zeros(dim);
    let mod_v = v.norm();
    if mod_v == 0.0 {
        amps[0] = C64::new(1.0, 0.0);
        return FactorState::new(Factor::Spin(space), amps);
    }

    let xi = v * (mod_v.atan() / mod_v);
    let ops = crate::hilbert::spin_ops(space, 1.0);
    // K = xi J+ - conj(xi) J-  is anti-Hermitian; i K is Hermitian.
    let k = ops.j_plus.mapv(|z| z * xi) - ops.j_minus.mapv(|z| z * xi.conj());
    let herm = k.mapv(|z| z * C64::new(0.0, 1.0));
    let (evals, evecs) = crate::linalg::hermitian_eigs(&herm)?;

    // exp(K) e0 = U exp(-i Lambda) U^H e0
    let u_h_e0: Array1<C64> = evecs.row(0).mapv(|z| z.conj());
    let rotated = Array1::from_iter(
        evals
            .iter()
            .zip(u_h_e0.iter())
            .map(|(&l, &c)| C64::from_polar(1.0, -l) * c),
    );
    let mut out = evecs.dot(&rotated);
    let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    out.mapv_inplace(|z| z / norm);
    FactorState::new(Factor::Spin(space), out)
}

/// Tensor product of two factor states, laid out in the composite space's
/// flat-index convention.
pub fn product_state(
    state_a: &FactorState,
    state_b: &FactorState,
    space: &CompositeSpace,
) -> Result<StateVector> {
    if state_a.factor() != space.factor(crate::hilbert::FactorId::A) {
        return Err(CoreError::DimensionMismatch {
            context: "product state factor A",
            expected: space.dim_a(),
            got: state_a.factor().dim(),
        });
    }
    if state_b.factor() != space.factor(crate::hilbert::FactorId::B) {
        return Err(CoreError::DimensionMismatch {
            context: "product state factor B",
            expected: space.dim_b(),
            got: state_b.factor().dim(),
        });
    }
    let mut amps = Array1::zeros(space.dim());
    for (ia, a) in state_a.amplitudes().iter().enumerate() {
        for (ib, b) in state_b.amplitudes().iter().enumerate() {
            amps[space.flat_index(ia, ib)] = a * b;
        }
    }
    StateVector::new(*space, amps)
}

/// Product of one isotropic Gaussian per mode on phase space, normalized to
/// unit total integral: each mode contributes
/// `(2 pi hbar)^-1 exp(-((q - qc)^2 + (p - pc)^2) / (2 hbar))`,
/// so the quadrature variance is `hbar` and the exact marginal purity is
/// `1 / (4 pi hbar)`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianProductDensity {
    centers: [PhasePoint; 2],
    hbar: f64,
}

impl GaussianProductDensity {
    pub fn new(centers: [PhasePoint; 2], hbar: f64) -> Self {
        assert!(hbar > 0.0, "hbar must be positive");
        Self { centers, hbar }
    }

    pub fn centers(&self) -> [PhasePoint; 2] {
        self.centers
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Variance of each quadrature marginal.
    pub fn quadrature_variance(&self) -> f64 {
        self.hbar
    }

    /// Density of a single mode at `(q, p)`.
    pub fn mode_value(&self, mode: usize, q: f64, p: f64) -> f64 {
        let c = self.centers[mode];
        let d2 = (q - c.q).powi(2) + (p - c.p).powi(2);
        (-d2 / (2.0 * self.hbar)).exp() / (2.0 * std::f64::consts::PI * self.hbar)
    }

    /// Joint density at `(q1, p1, q2, p2)`.
    pub fn value(&self, x: &[f64; 4]) -> f64 {
        self.mode_value(0, x[0], x[1]) * self.mode_value(1, x[2], x[3])
    }

    /// Exact purity of either single-mode marginal.
    pub fn marginal_purity(&self) -> f64 {
        1.0 / (4.0 * std::f64::consts::PI * self.hbar)
    }
}

/// Initial classical phase-space density matching the coherent product
/// state centered at the given points.
pub fn husimi_initial_density(points: [PhasePoint; 2], hbar: f64) -> GaussianProductDensity {
    GaussianProductDensity::new(points, hbar)
}
