use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

use super::space::{CompositeSpace, FactorId, FockSpace, SpinSpace};
use super::state::StateVector;

/// Entries with modulus below this are dropped when compressing triplets.
const DROP_TOL: f64 = 0.0;

/// Hermiticity is enforced on [`HermitianOp`] construction at this level.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Row-compressed sparse complex matrix. No symmetry is assumed; this is
/// the storage layer underneath [`HermitianOp`] and is also handy for
/// non-Hermitian intermediates such as ladder operators on a composite.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    /// Build from (row, col, value) triplets; duplicate positions are summed
    /// and entries that cancel exactly are dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));

        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            debug_assert!(r < dim && c < dim);
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v.norm_sqr() > DROP_TOL);

        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        let col_idx = merged.iter().map(|t| t.1).collect();
        let values = merged.iter().map(|t| t.2).collect();
        Self {
            dim,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let triplets = (0..dim).map(|i| (i, i, C64::new(1.0, 0.0))).collect();
        Self::from_triplets(dim, triplets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Maximum number of stored entries in any single row.
    pub fn max_row_nnz(&self) -> usize {
        (0..self.dim)
            .map(|r| self.row_ptr[r + 1] - self.row_ptr[r])
            .max()
            .unwrap_or(0)
    }

    pub fn matvec_into(&self, x: ArrayView1<C64>, y: &mut Array1<C64>) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[r] = acc;
        }
    }

    pub fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        let mut y = Array1::zeros(self.dim);
        self.matvec_into(x, &mut y);
        y
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[[r, self.col_idx[k]]] += self.values[k];
            }
        }
        m
    }

    pub fn triplets(&self) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                out.push((r, self.col_idx[k], self.values[k]));
            }
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut trips = self.triplets();
        trips.extend(other.triplets());
        Self::from_triplets(self.dim, trips)
    }

    /// `max_ij |M - M^H|`, the hermiticity deviation in the max norm.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        // Compare each stored (r, c, v) against the stored value at (c, r).
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.col_idx[k];
                let v = self.values[k];
                let vt = self.get(c, r);
                dev = dev.max((v - vt.conj()).norm());
            }
        }
        dev
    }

    fn get(&self, r: usize, c: usize) -> C64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(k) => self.values[lo + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }
}

/// Sparse Hermitian operator on a composite space. Hermiticity is checked
/// at construction time; everything downstream may rely on it.
#[derive(Debug, Clone)]
pub struct HermitianOp {
    space: CompositeSpace,
    matrix: SparseMatrix,
}

impl HermitianOp {
    pub fn from_sparse(space: CompositeSpace, matrix: SparseMatrix) -> Result<Self> {
        if matrix.dim() != space.dim() {
            return Err(CoreError::DimensionMismatch {
                context: "operator vs composite space",
                expected: space.dim(),
                got: matrix.dim(),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(CoreError::NotHermitian { deviation: dev });
        }
        Ok(Self { space, matrix })
    }

    pub fn from_triplets(
        space: CompositeSpace,
        triplets: Vec<(usize, usize, C64)>,
    ) -> Result<Self> {
        Self::from_sparse(space, SparseMatrix::from_triplets(space.dim(), triplets))
    }

    pub fn space(&self) -> CompositeSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: ArrayView1<C64>) -> Array1<C64> {
        self.matrix.apply(x)
    }

    pub fn to_dense(&self) -> Array2<C64> {
        self.matrix.to_dense()
    }

    /// Real expectation value `<psi|H|psi>`.
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        let hpsi = self.apply(psi.amplitudes().view());
        psi.amplitudes()
            .iter()
            .zip(hpsi.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(CoreError::DimensionMismatch {
                context: "operator addition",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Self::from_sparse(self.space, self.matrix.add(&other.matrix))
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            space: self.space,
            matrix: self.matrix.scaled(C64::new(s, 0.0)),
        }
    }
}

/// Annihilation and creation operators on a truncated Fock space, as dense
/// factor-level matrices. The creation operator is truncated at the cutoff
/// (`a^+ |n_max> = 0`), so the pair are adjoints within the retained block.
pub fn ladder_ops(space: FockSpace) -> (Array2<C64>, Array2<C64>) {
    let d = space.dim();
    let mut a = Array2::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    let a_dag = a.t().mapv(|z| z.conj());
    (a, a_dag)
}

/// Raising, lowering and z-projection operators on a spin space, with the
/// given value of Planck's constant baked into the matrix elements.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub j_plus: Array2<C64>,
    pub j_minus: Array2<C64>,
    pub j_z: Array2<C64>,
}

pub fn spin_ops(space: SpinSpace, hbar: f64) -> SpinOps {
    let d = space.dim();
    let j = space.j();
    let mut j_plus = Array2::zeros((d, d));
    let mut j_z = Array2::zeros((d, d));
    for k in 0..d {
        let m = space.m(k);
        j_z[[k, k]] = C64::new(hbar * m, 0.0);
        if k + 1 < d {
            let amp = hbar * (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            j_plus[[k + 1, k]] = C64::new(amp, 0.0);
        }
    }
    let j_minus = j_plus.t().mapv(|z| z.conj());
    SpinOps {
        j_plus,
        j_minus,
        j_z,
    }
}

/// Sparse Kronecker product `A (x) B` on the composite space; `None` stands
/// for the identity on that factor. Zero entries of the dense inputs are
/// dropped.
pub fn kron_embed(
    op_a: Option<&Array2<C64>>,
    op_b: Option<&Array2<C64>>,
    space: &CompositeSpace,
) -> Result<SparseMatrix> {
    let (da, db) = (space.dim_a(), space.dim_b());
    if let Some(a) = op_a {
        if a.nrows() != da || a.ncols() != da {
            return Err(CoreError::DimensionMismatch {
                context: "factor A operator",
                expected: da,
                got: a.nrows(),
            });
        }
    }
    if let Some(b) = op_b {
        if b.nrows() != db || b.ncols() != db {
            return Err(CoreError::DimensionMismatch {
                context: "factor B operator",
                expected: db,
                got: b.nrows(),
            });
        }
    }

    let a_trips = dense_triplets(op_a, da);
    let b_trips = dense_triplets(op_b, db);
    let mut trips = Vec::with_capacity(a_trips.len() * b_trips.len());
    for &(ia, ja, va) in &a_trips {
        for &(ib, jb, vb) in &b_trips {
            trips.push((
                space.flat_index(ia, ib),
                space.flat_index(ja, jb),
                va * vb,
            ));
        }
    }
    Ok(SparseMatrix::from_triplets(space.dim(), trips))
}

fn dense_triplets(op: Option<&Array2<C64>>, dim: usize) -> Vec<(usize, usize, C64)> {
    match op {
        None => (0..dim).map(|i| (i, i, C64::new(1.0, 0.0))).collect(),
        Some(m) => {
            let mut out = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    let v = m[[i, j]];
                    if v.norm_sqr() > 0.0 {
                        out.push((i, j, v));
                    }
                }
            }
            out
        }
    }
}

/// Embed a Hermitian factor-level operator into the composite space.
pub fn embed(
    op: &Array2<C64>,
    which: FactorId,
    space: &CompositeSpace,
) -> Result<HermitianOp> {
    let sparse = match which {
        FactorId::A => kron_embed(Some(op), None, space)?,
        FactorId::B => kron_embed(None, Some(op), space)?,
    };
    HermitianOp::from_sparse(*space, sparse)
}
