use ndarray::{Array1, Array2, ArrayView2};
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

use super::space::{CompositeSpace, Factor, FactorId};

/// Pure state on a composite space, stored as a flat amplitude vector in
/// the row-major-over-factor-A convention of [`CompositeSpace`].
#[derive(Debug, Clone)]
pub struct StateVector {
    space: CompositeSpace,
    amplitudes: Array1<C64>,
}

impl StateVector {
    pub fn new(space: CompositeSpace, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(CoreError::DimensionMismatch {
                context: "state vector vs composite space",
                expected: space.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { space, amplitudes })
    }

    /// Construct and rescale to unit norm.
    pub fn normalized(space: CompositeSpace, amplitudes: Array1<C64>) -> Result<Self> {
        let mut s = Self::new(space, amplitudes)?;
        let n = s.norm();
        if n == 0.0 {
            return Err(CoreError::Undefined("cannot normalize the zero vector".into()));
        }
        s.amplitudes.mapv_inplace(|z| z / n);
        Ok(s)
    }

    pub fn space(&self) -> CompositeSpace {
        self.space
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

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// View the amplitudes as the `dim_a x dim_b` coefficient matrix.
    pub fn as_matrix(&self) -> ArrayView2<'_, C64> {
        self.amplitudes
            .view()
            .into_shape_with_order((self.space.dim_a(), self.space.dim_b()))
            .expect("amplitude length matches composite dimension")
    }

    /// Reduced density matrix of one factor, traced directly from the pure
    /// state without forming the composite density matrix.
    pub fn reduced_density(&self, keep: FactorId) -> DensityMatrix {
        let psi = self.as_matrix();
        let mat = match keep {
            FactorId::A => {
                // rho_a[i, i'] = sum_j psi[i, j] conj(psi[i', j])
                let conj_t = psi.mapv(|z| z.conj()).reversed_axes();
                psi.dot(&conj_t)
            }
            FactorId::B => {
                // rho_b[j, j'] = sum_i psi[i, j] conj(psi[i, j'])
                let conj = psi.mapv(|z| z.conj());
                psi.t().dot(&conj)
            }
        };
        DensityMatrix {
            space: SpaceRef::Single(self.space.factor(keep)),
            matrix: mat,
        }
    }
}

/// Which space a density matrix lives on: a full composite or one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceRef {
    Composite(CompositeSpace),
    Single(Factor),
}

impl SpaceRef {
    pub fn dim(&self) -> usize {
        match self {
            SpaceRef::Composite(c) => c.dim(),
            SpaceRef::Single(f) => f.dim(),
        }
    }
}

/// Dense Hermitian density matrix. Hermiticity is verified on construction;
/// trace and positivity are the caller's responsibility (convex mixtures in
/// intermediate arithmetic need not be normalized).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: SpaceRef,
    matrix: Array2<C64>,
}

impl DensityMatrix {
    pub const HERMITICITY_TOL: f64 = 1e-12;

    pub fn new(space: SpaceRef, matrix: Array2<C64>) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(CoreError::DimensionMismatch {
                context: "density matrix vs space",
                expected: space.dim(),
                got: matrix.nrows(),
            });
        }
        let mut dev: f64 = 0.0;
        for i in 0..matrix.nrows() {
            for j in i..matrix.ncols() {
                dev = dev.max((matrix[[i, j]] - matrix[[j, i]].conj()).norm());
            }
        }
        if dev > Self::HERMITICITY_TOL {
            return Err(CoreError::NotHermitian { deviation: dev });
        }
        Ok(Self { space, matrix })
    }

    /// Outer product |psi><psi| of a pure state.
    pub fn from_pure(state: &StateVector) -> Self {
        let n = state.amplitudes().len();
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                m[[i, j]] = state.amplitudes()[i] * state.amplitudes()[j].conj();
            }
        }
        Self {
            space: SpaceRef::Composite(state.space()),
            matrix: m,
        }
    }

    pub fn space(&self) -> SpaceRef {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[[i, i]].re).sum()
    }

    /// Convex/linear combination `alpha * self + beta * other`.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        if self.space != other.space {
            return Err(CoreError::DimensionMismatch {
                context: "density matrix combination",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let m = self.matrix.mapv(|z| z * alpha) + other.matrix.mapv(|z| z * beta);
        Ok(Self {
            space: self.space,
            matrix: m,
        })
    }
}

/// Trace out the complement of `keep` from a density matrix on a composite
/// space. Preserves trace and Hermiticity.
pub fn partial_trace(rho: &DensityMatrix, keep: FactorId) -> Result<DensityMatrix> {
    let composite = match rho.space() {
        SpaceRef::Composite(c) => c,
        SpaceRef::Single(_) => {
            return Err(CoreError::InvalidFactor(
                "partial trace needs a density matrix on a composite space",
            ))
        }
    };
    let (da, db) = (composite.dim_a(), composite.dim_b());
    let m = rho.matrix();
    let reduced = match keep {
        FactorId::A => {
            let mut out = Array2::<C64>::zeros((da, da));
            for i in 0..da {
                for ip in 0..da {
                    let mut acc = C64::new(0.0, 0.0);
                    for j in 0..db {
                        acc += m[[composite.flat_index(i, j), composite.flat_index(ip, j)]];
                    }
                    out[[i, ip]] = acc;
                }
            }
            out
        }
        FactorId::B => {
            let mut out = Array2::<C64>::zeros((db, db));
            for j in 0..db {
                for jp in 0..db {
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..da {
                        acc += m[[composite.flat_index(i, j), composite.flat_index(i, jp)]];
                    }
                    out[[j, jp]] = acc;
                }
            }
            out
        }
    };
    DensityMatrix::new(SpaceRef::Single(composite.factor(keep)), reduced)
}

/// Purity `Tr[rho^2]`, using Hermiticity: `Tr[rho^2] = sum_ij |rho_ij|^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// Reduced linear entropy `1 - Tr[rho^2]`. Zero for pure reductions.
pub fn rle(rho: &DensityMatrix) -> f64 {
    1.0 - purity(rho)
}
