//! Unitary propagation of pure states under a time-independent Hermitian
//! Hamiltonian, and the entropy time series extracted from the evolution.
//!
//! Two propagation paths are provided: an exact spectral path (one dense
//! eigendecomposition, then closed-form phases at every output time) for
//! moderate dimensions, and a Lanczos path (per-step subspace exponential
//! with adaptive subspace size) for larger sparse problems.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};
use crate::hilbert::{rle, Factor, FactorId, HermitianOp, StateVector};
use crate::linalg::{hermitian_eigs, symmetric_eigs};

/// How a [`Propagator`] advances states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Dense eigendecomposition once, exact phases at every requested time.
    Spectral,
    /// Lanczos subspace exponential per step, subspace grown until the
    /// local error estimate drops below `tol`.
    Krylov { tol: f64, max_dim: usize },
}

impl Method {
    pub fn krylov() -> Self {
        Method::Krylov {
            tol: 1e-10,
            max_dim: 120,
        }
    }

    /// Spectral below dimension 3000, Lanczos above.
    pub fn auto(dim: usize) -> Self {
        if dim < 3000 {
            Method::Spectral
        } else {
            Method::krylov()
        }
    }
}

/// Unitary propagator `exp(-i H t / hbar)` for a fixed Hamiltonian.
/// `dt` caps the internal step of the Lanczos path; spectral propagation
/// is exact at arbitrary times and ignores it.
pub struct Propagator<'a> {
    pub hamiltonian: &'a HermitianOp,
    pub method: Method,
    pub hbar: f64,
    pub dt: f64,
}

impl<'a> Propagator<'a> {
    pub fn new(hamiltonian: &'a HermitianOp, method: Method, hbar: f64, dt: f64) -> Self {
        assert!(hbar > 0.0 && dt > 0.0);
        Self {
            hamiltonian,
            method,
            hbar,
            dt,
        }
    }

    pub fn spectral(hamiltonian: &'a HermitianOp, hbar: f64) -> Self {
        Self::new(hamiltonian, Method::Spectral, hbar, 0.1)
    }
}

/// Evolve `state` to every time in `t_grid` (strictly increasing, `t >= 0`,
/// measured from the initial state).
pub fn evolve(
    state: &StateVector,
    prop: &Propagator<'_>,
    t_grid: &[f64],
) -> Result<Vec<StateVector>> {
    validate_grid(t_grid)?;
    if state.space() != prop.hamiltonian.space() {
        return Err(CoreError::DimensionMismatch {
            context: "state vs Hamiltonian space",
            expected: prop.hamiltonian.dim(),
            got: state.amplitudes().len(),
        });
    }
    match prop.method {
        Method::Spectral => evolve_spectral(state, prop, t_grid),
        Method::Krylov { tol, max_dim } => evolve_krylov(state, prop, t_grid, tol, max_dim),
    }
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() || t_grid[0] < 0.0 {
        return Err(CoreError::BadTimeGrid);
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoreError::BadTimeGrid);
    }
    Ok(())
}

fn evolve_spectral(
    state: &StateVector,
    prop: &Propagator<'_>,
    t_grid: &[f64],
) -> Result<Vec<StateVector>> {
    let dense = prop.hamiltonian.to_dense();
    let (evals, u) = hermitian_eigs(&dense)?;
    let u_h = u.t().mapv(|z| z.conj());
    let w = u_h.dot(state.amplitudes());
    let space = state.space();
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let phased = Array1::from_iter(
            evals
                .iter()
                .zip(w.iter())
                .map(|(&e, &c)| C64::from_polar(1.0, -e * t / prop.hbar) * c),
        );
        out.push(StateVector::new(space, u.dot(&phased))?);
    }
    Ok(out)
}

fn evolve_krylov(
    state: &StateVector,
    prop: &Propagator<'_>,
    t_grid: &[f64],
    tol: f64,
    max_dim: usize,
) -> Result<Vec<StateVector>> {
    let space = state.space();
    let mut current = state.amplitudes().clone();
    let mut t = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &target in t_grid {
        let mut remaining = target - t;
        while remaining > 1e-15 {
            let step = remaining.min(prop.dt);
            current = lanczos_step(prop.hamiltonian, &current, step / prop.hbar, tol, max_dim)?;
            remaining -= step;
        }
        t = target;
        out.push(StateVector::new(space, current.clone())?);
    }
    Ok(out)
}

/// One step `exp(-i tau H) v` in the Lanczos basis of `{v, Hv, ...}`, with
/// full reorthogonalization (the extra inner products are negligible at
/// these dimensions). The subspace grows until the standard a-posteriori
/// residual estimate `beta_m |y_m|` falls below `tol`.
fn lanczos_step(
    h: &HermitianOp,
    v: &Array1<C64>,
    tau: f64,
    tol: f64,
    max_dim: usize,
) -> Result<Array1<C64>> {
    let beta0 = norm(v);
    if beta0 == 0.0 {
        return Ok(v.clone());
    }
    let mut basis: Vec<Array1<C64>> = vec![v.mapv(|z| z / beta0)];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    loop {
        let m = basis.len();
        let mut w = h.apply(basis[m - 1].view());
        let alpha = real_inner(&basis[m - 1], &w);
        alphas.push(alpha);
        w = &w - &basis[m - 1].mapv(|z| z * alpha);
        if m >= 2 {
            let b = betas[m - 2];
            w = &w - &basis[m - 2].mapv(|z| z * b);
        }
        for q in &basis {
            let c = inner(q, &w);
            w = &w - &q.mapv(|z| z * c);
        }
        let beta = norm(&w);

        let y = tridiag_exp_first_column(&alphas, &betas, tau)?;
        let residual_estimate = beta * y[m - 1].norm();
        let breakdown = beta <= 1e-14;
        if residual_estimate <= tol || breakdown || m >= max_dim {
            if residual_estimate > tol && !breakdown {
                return Err(CoreError::KrylovBreakdown(format!(
                    "subspace limit {max_dim} reached at step {tau:.3e} \
                     (residual estimate {residual_estimate:.3e})"
                )));
            }
            let dim = v.len();
            let mut result = Array1::<C64>::zeros(dim);
            for (q, &c) in basis.iter().zip(y.iter()) {
                result = result + q.mapv(|z| z * c * beta0);
            }
            return Ok(result);
        }

        basis.push(w.mapv(|z| z / beta));
        betas.push(beta);
    }
}

/// `exp(-i tau T) e1` for the real symmetric tridiagonal `T` defined by the
/// Lanczos coefficients.
fn tridiag_exp_first_column(alphas: &[f64], betas: &[f64], tau: f64) -> Result<Array1<C64>> {
    let m = alphas.len();
    let mut t = Array2::<f64>::zeros((m, m));
    for (i, &a) in alphas.iter().enumerate() {
        t[[i, i]] = a;
    }
    for (i, &b) in betas.iter().enumerate() {
        t[[i, i + 1]] = b;
        t[[i + 1, i]] = b;
    }
    let (evals, u) = symmetric_eigs(&t)?;
    let mut out = Array1::<C64>::zeros(m);
    for i in 0..m {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..m {
            acc += C64::from_polar(1.0, -evals[j] * tau) * u[[i, j]] * u[[0, j]];
        }
        out[i] = acc;
    }
    Ok(out)
}

fn norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn real_inner(a: &Array1<C64>, b: &Array1<C64>) -> f64 {
    inner(a, b).re
}

/// Time-stamped entropy values with a free-form provenance label.
#[derive(Debug, Clone)]
pub struct EntropySeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub label: String,
}

impl EntropySeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(CoreError::DimensionMismatch {
                context: "entropy series times vs values",
                expected: times.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            times,
            values,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Pointwise average of several series on identical grids.
    pub fn mean(series: &[EntropySeries]) -> Result<EntropySeries> {
        let first = series
            .first()
            .ok_or_else(|| CoreError::Undefined("mean of zero series".into()))?;
        for s in series {
            if s.times.len() != first.times.len()
                || s.times
                    .iter()
                    .zip(first.times.iter())
                    .any(|(a, b)| (a - b).abs() > 1e-12)
            {
                return Err(CoreError::BadTimeGrid);
            }
        }
        let n = series.len() as f64;
        let values = (0..first.values.len())
            .map(|k| series.iter().map(|s| s.values[k]).sum::<f64>() / n)
            .collect();
        EntropySeries::new(
            first.times.clone(),
            values,
            format!("mean({})", series.len()),
        )
    }
}

/// Reduced linear entropy of the kept factor along the evolution of a pure
/// state; `S(0) = 0` for product inputs.
pub fn entropy_series(
    state0: &StateVector,
    prop: &Propagator<'_>,
    t_grid: &[f64],
    keep: FactorId,
    label: impl Into<String>,
) -> Result<EntropySeries> {
    let states = evolve(state0, prop, t_grid)?;
    let values = states
        .iter()
        .map(|psi| rle(&psi.reduced_density(keep)))
        .collect();
    EntropySeries::new(t_grid.to_vec(), values, label)
}

/// Total probability in the top `margin` occupation levels of each bosonic
/// factor; certifies that the Fock truncation did not clip the state.
pub fn leakage(state: &StateVector, margin: usize) -> f64 {
    let space = state.space();
    let psi = state.as_matrix();
    let mut total = 0.0;
    if let Factor::Fock(f) = space.factor(FactorId::A) {
        let lo = f.dim().saturating_sub(margin);
        for i in lo..f.dim() {
            for j in 0..space.dim_b() {
                total += psi[[i, j]].norm_sqr();
            }
        }
    }
    if let Factor::Fock(f) = space.factor(FactorId::B) {
        let lo = f.dim().saturating_sub(margin);
        for j in lo..f.dim() {
            for i in 0..space.dim_a() {
                total += psi[[i, j]].norm_sqr();
            }
        }
    }
    total
}
