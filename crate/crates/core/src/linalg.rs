//! Thin wrappers around the LAPACK-backed eigensolvers that pin down the
//! eigenvector orientation. `eigh` on a row-major complex Hermitian array
//! hands the buffer to LAPACK column-major, which transposes (= conjugates)
//! the input; the eigenvectors come back conjugated as a result. These
//! helpers always return eigenvectors in columns of `u` with `m u = u diag(l)`.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::Result;

/// Eigendecomposition of a complex Hermitian matrix; eigenvectors are the
/// columns of the returned matrix, eigenvalues ascending.
pub fn hermitian_eigs(m: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let (vals, vecs) = m.eigh(UPLO::Lower)?;
    Ok((vals, vecs.mapv(|z| z.conj())))
}

/// Eigendecomposition of a real symmetric matrix; eigenvectors are the
/// columns of the returned matrix, eigenvalues ascending.
pub fn symmetric_eigs(m: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let (vals, vecs) = m.eigh(UPLO::Lower)?;
    Ok((vals, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_random_hermitian(dim: usize, seed: u64) -> Array2<C64> {
        let mut m = Array2::<C64>::zeros((dim, dim));
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..dim {
            m[[i, i]] = C64::new(next(), 0.0);
            for j in (i + 1)..dim {
                let z = C64::new(next(), next());
                m[[i, j]] = z;
                m[[j, i]] = z.conj();
            }
        }
        m
    }

    #[test]
    fn hermitian_eigenvectors_are_columns() {
        for (dim, seed) in [(2usize, 1u64), (5, 2), (17, 3), (40, 4)] {
            let m = pseudo_random_hermitian(dim, seed);
            let (vals, u) = hermitian_eigs(&m).unwrap();
            for j in 0..dim {
                let col = u.column(j).to_owned();
                let res = m.dot(&col) - col.mapv(|z| z * vals[j]);
                let r: f64 = res.iter().map(|z| z.norm()).sum();
                assert!(r < 1e-10 * dim as f64, "dim {dim} col {j} residual {r:e}");
            }
            // unitarity of u
            let gram = u.t().mapv(|z| z.conj()).dot(&u);
            for i in 0..dim {
                for j in 0..dim {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((gram[[i, j]] - C64::new(want, 0.0)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn symmetric_eigenvectors_are_columns() {
        for (dim, seed) in [(3usize, 7u64), (12, 8), (30, 9)] {
            let h = pseudo_random_hermitian(dim, seed);
            let m = h.mapv(|z| z.re);
            let m = (&m + &m.t()).mapv(|x| 0.5 * x);
            let (vals, u) = symmetric_eigs(&m).unwrap();
            for j in 0..dim {
                let col = u.column(j).to_owned();
                let res = m.dot(&col) - col.mapv(|x| x * vals[j]);
                let r: f64 = res.iter().map(|x| x.abs()).sum();
                assert!(r < 1e-10 * dim as f64, "dim {dim} col {j} residual {r:e}");
            }
        }
    }
}
