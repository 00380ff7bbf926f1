use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};
use crate::hilbert::{kron_embed, ladder_ops, CompositeSpace, Factor, FactorId, FockSpace, HermitianOp};

/// Largest supported monomial degree per mode, `n + m <= 6`.
pub const MAX_DEGREE: u32 = 6;

/// One monomial `coeff * q_a^qa p_a^pa q_b^qb p_b^pb` of a classical
/// two-mode Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialTerm {
    pub coeff: f64,
    pub qa: u32,
    pub pa: u32,
    pub qb: u32,
    pub pb: u32,
}

/// Polynomial classical Hamiltonian of two degrees of freedom.
#[derive(Debug, Clone, Default)]
pub struct PolynomialHamiltonian {
    pub terms: Vec<PolynomialTerm>,
}

impl PolynomialHamiltonian {
    pub fn new(terms: Vec<PolynomialTerm>) -> Self {
        Self { terms }
    }

    /// Evaluate the classical function at `(q1, p1, q2, p2)`.
    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coeff
                    * x[0].powi(t.qa as i32)
                    * x[1].powi(t.pa as i32)
                    * x[2].powi(t.qb as i32)
                    * x[3].powi(t.pb as i32)
            })
            .sum()
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Quadratures on a Fock block of the given dimension:
/// `Q = sqrt(hbar/2)(a + a^+)`, `P = i sqrt(hbar/2)(a^+ - a)`.
fn quadratures(dim: usize, hbar: f64) -> (Array2<C64>, Array2<C64>) {
    let space = FockSpace::new(dim - 1);
    let (a, a_dag) = ladder_ops(space);
    let s = (hbar / 2.0).sqrt();
    let q = (&a + &a_dag).mapv(|z| z * s);
    let p = (&a_dag - &a).mapv(|z| z * C64::new(0.0, s));
    (q, p)
}

fn mat_pow(m: &Array2<C64>, k: u32) -> Array2<C64> {
    let dim = m.nrows();
    let mut out = Array2::eye(dim);
    for _ in 0..k {
        out = out.dot(m);
    }
    out
}

/// Symmetric (Weyl) ordering of the single-mode monomial `q^n p^m` on a
/// truncated Fock space, via the closed-form average
/// `2^-n sum_k C(n,k) Q^k P^m Q^(n-k)`.
///
/// Products are formed on a block padded by the monomial degree and then
/// cropped, so every retained matrix element equals the exact infinite-
/// dimensional one and the ordering identities hold verbatim at the edge
/// of the retained block.
pub fn weyl_monomial_1d(n: u32, m: u32, hbar: f64, space: FockSpace) -> Result<Array2<C64>> {
    if n + m > MAX_DEGREE {
        return Err(CoreError::UnsupportedExponent {
            degree: n + m,
            max: MAX_DEGREE,
        });
    }
    let dim = space.dim();
    let padded = dim + (n + m) as usize;
    let (q, p) = quadratures(padded, hbar);
    let p_m = mat_pow(&p, m);
    let mut acc = Array2::<C64>::zeros((padded, padded));
    for k in 0..=n {
        let left = mat_pow(&q, k);
        let right = mat_pow(&q, n - k);
        let term = left.dot(&p_m).dot(&right);
        acc = acc + term.mapv(|z| z * binomial(n, k));
    }
    let scale = 0.5_f64.powi(n as i32);
    let cropped = acc.slice(ndarray::s![..dim, ..dim]).mapv(|z| z * scale);
    Ok(cropped)
}

/// Quantize a polynomial two-mode Hamiltonian by symmetric ordering per
/// mode. Real coefficients give a Hermitian operator; that is checked at
/// construction.
pub fn build_polynomial(
    poly: &PolynomialHamiltonian,
    hbar: f64,
    space: &CompositeSpace,
) -> Result<HermitianOp> {
    let (fa, fb) = match (space.factor(FactorId::A), space.factor(FactorId::B)) {
        (Factor::Fock(fa), Factor::Fock(fb)) => (fa, fb),
        _ => {
            return Err(CoreError::InvalidFactor(
                "polynomial quantization needs a Fock (x) Fock composite",
            ))
        }
    };
    let mut triplets = Vec::new();
    for term in &poly.terms {
        let op_a = weyl_monomial_1d(term.qa, term.pa, hbar, fa)?;
        let op_b = weyl_monomial_1d(term.qb, term.pb, hbar, fb)?;
        let kron = kron_embed(Some(&op_a), Some(&op_b), space)?;
        triplets.extend(kron.scaled(C64::new(term.coeff, 0.0)).triplets());
    }
    HermitianOp::from_triplets(*space, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// All distinct orderings of `n` Q's and `m` P's, averaged. Computed on
    /// the same padded-then-cropped block as the production path so both
    /// sides carry exact matrix elements.
    fn brute_force_ordering(n: u32, m: u32, hbar: f64, dim: usize) -> Array2<C64> {
        let padded = dim + (n + m) as usize;
        let (q, p) = quadratures(padded, hbar);
        let mut word = Vec::new();
        word.extend(std::iter::repeat(true).take(n as usize)); // true = Q
        word.extend(std::iter::repeat(false).take(m as usize));
        let mut seen = std::collections::BTreeSet::new();
        let mut acc = Array2::<C64>::zeros((padded, padded));
        let mut count = 0usize;
        permute(&mut word, 0, &mut |perm| {
            if !seen.insert(perm.to_vec()) {
                return;
            }
            let mut prod = Array2::<C64>::eye(padded);
            for &is_q in perm {
                prod = prod.dot(if is_q { &q } else { &p });
            }
            acc = &acc + &prod;
            count += 1;
        });
        let avg = acc.mapv(|z| z / count as f64);
        avg.slice(ndarray::s![..dim, ..dim]).to_owned()
    }

    fn permute(word: &mut Vec<bool>, start: usize, visit: &mut impl FnMut(&[bool])) {
        if start == word.len() {
            visit(word);
            return;
        }
        for i in start..word.len() {
            word.swap(start, i);
            permute(word, start + 1, visit);
            word.swap(start, i);
        }
    }

    #[test]
    fn qp_is_symmetrized_product() {
        let hbar = 0.7;
        let space = FockSpace::new(12);
        let got = weyl_monomial_1d(1, 1, hbar, space).unwrap();
        let padded = space.dim() + 2;
        let (q, p) = quadratures(padded, hbar);
        let want = (q.dot(&p) + p.dot(&q)).mapv(|z| z * 0.5);
        let want = want.slice(ndarray::s![..space.dim(), ..space.dim()]).to_owned();
        assert!(max_dev(&got, &want) <= 1e-13);
    }

    #[test]
    fn pure_power_is_plain_power() {
        let hbar = 1.0;
        let space = FockSpace::new(10);
        let got = weyl_monomial_1d(2, 0, hbar, space).unwrap();
        let padded = space.dim() + 2;
        let (q, _) = quadratures(padded, hbar);
        let want = q.dot(&q).slice(ndarray::s![..space.dim(), ..space.dim()]).to_owned();
        assert!(max_dev(&got, &want) <= 1e-13);
    }

    #[test]
    fn q2p_reduces_to_commutator_form() {
        // Averaging the three orderings of Q^2 P gives Q^2 P - i hbar Q.
        let hbar = 0.9;
        let space = FockSpace::new(14);
        let got = weyl_monomial_1d(2, 1, hbar, space).unwrap();
        let padded = space.dim() + 3;
        let (q, p) = quadratures(padded, hbar);
        let want = q.dot(&q).dot(&p) - q.mapv(|z| z * C64::new(0.0, hbar));
        let want = want.slice(ndarray::s![..space.dim(), ..space.dim()]).to_owned();
        assert!(max_dev(&got, &want) <= 1e-12);

        let brute = brute_force_ordering(2, 1, hbar, space.dim());
        assert!(max_dev(&got, &brute) <= 1e-12);
    }

    #[test]
    fn mccoy_equals_all_orderings_average() {
        let hbar = 0.6;
        let space = FockSpace::new(9);
        for n in 0..=4u32 {
            for m in 0..=(4 - n) {
                let got = weyl_monomial_1d(n, m, hbar, space).unwrap();
                let brute = brute_force_ordering(n, m, hbar, space.dim());
                let dev = max_dev(&got, &brute);
                assert!(dev <= 1e-12, "(n,m)=({n},{m}) deviation {dev:e}");
            }
        }
    }

    #[test]
    fn real_polynomials_quantize_hermitian() {
        let space = CompositeSpace::new(FockSpace::new(8), FockSpace::new(7));
        let poly = PolynomialHamiltonian::new(vec![
            PolynomialTerm { coeff: 0.5, qa: 2, pa: 0, qb: 0, pb: 0 },
            PolynomialTerm { coeff: 0.5, qa: 0, pa: 2, qb: 0, pb: 0 },
            PolynomialTerm { coeff: 0.3, qa: 1, pa: 1, qb: 1, pb: 1 },
            PolynomialTerm { coeff: -0.7, qa: 2, pa: 1, qb: 0, pb: 2 },
        ]);
        // construction itself enforces hermiticity to 1e-12
        let h = build_polynomial(&poly, 0.8, &space).unwrap();
        assert!(h.matrix().hermiticity_deviation() <= 1e-12);
    }

    #[test]
    fn rejects_high_degree() {
        let err = weyl_monomial_1d(4, 3, 1.0, FockSpace::new(6));
        assert!(matches!(err, Err(CoreError::UnsupportedExponent { .. })));
    }
}
