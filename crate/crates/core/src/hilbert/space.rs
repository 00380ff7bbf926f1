/// Truncated bosonic Fock space with occupation basis `|0>, ..., |n_max>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    /// A Fock space keeping number states up to and including `n_max`.
    ///
    /// # Panics
    /// Panics if `n_max < 1`.
    pub fn new(n_max: usize) -> Self {
        assert!(n_max >= 1, "Fock cutoff must keep at least two levels");
        Self { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Spin-J space with basis ordered by magnetic quantum number `m = -J..+J`.
///
/// Stored as `2J` so half-integer spins stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinSpace {
    two_j: usize,
}

impl SpinSpace {
    /// # Panics
    /// Panics if `two_j < 1`.
    pub fn new(two_j: usize) -> Self {
        assert!(two_j >= 1, "spin space needs 2J >= 1");
        Self { two_j }
    }

    pub fn two_j(&self) -> usize {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Magnetic quantum number of basis index `k`, i.e. `m = k - J`.
    pub fn m(&self, k: usize) -> f64 {
        k as f64 - self.j()
    }

    pub fn dim(&self) -> usize {
        self.two_j + 1
    }
}

/// A single tensor factor: either a bosonic mode or a spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Fock(FockSpace),
    Spin(SpinSpace),
}

impl Factor {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Fock(f) => f.dim(),
            Factor::Spin(s) => s.dim(),
        }
    }

    pub fn is_bosonic(&self) -> bool {
        matches!(self, Factor::Fock(_))
    }
}

impl From<FockSpace> for Factor {
    fn from(f: FockSpace) -> Self {
        Factor::Fock(f)
    }
}

impl From<SpinSpace> for Factor {
    fn from(s: SpinSpace) -> Self {
        Factor::Spin(s)
    }
}

/// Names the two tensor factors of a [`CompositeSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorId {
    A,
    B,
}

impl FactorId {
    pub fn other(self) -> Self {
        match self {
            FactorId::A => FactorId::B,
            FactorId::B => FactorId::A,
        }
    }
}

/// Tensor product of two factors. The flat index convention is row-major
/// over factor A: `flat = i_a * dim_b + i_b`. Every operation in the crate
/// assumes this layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositeSpace {
    factor_a: Factor,
    factor_b: Factor,
}

impl CompositeSpace {
    pub fn new(factor_a: impl Into<Factor>, factor_b: impl Into<Factor>) -> Self {
        Self {
            factor_a: factor_a.into(),
            factor_b: factor_b.into(),
        }
    }

    pub fn factor(&self, id: FactorId) -> Factor {
        match id {
            FactorId::A => self.factor_a,
            FactorId::B => self.factor_b,
        }
    }

    pub fn dim_a(&self) -> usize {
        self.factor_a.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.factor_b.dim()
    }

    pub fn dim(&self) -> usize {
        self.dim_a() * self.dim_b()
    }

    pub fn flat_index(&self, i_a: usize, i_b: usize) -> usize {
        debug_assert!(i_a < self.dim_a() && i_b < self.dim_b());
        i_a * self.dim_b() + i_b
    }

    pub fn split_index(&self, flat: usize) -> (usize, usize) {
        (flat / self.dim_b(), flat % self.dim_b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_ordering() {
        let fock = FockSpace::new(4);
        assert_eq!(fock.dim(), 5);
        let spin = SpinSpace::new(3);
        assert_eq!(spin.dim(), 4);
        assert_eq!(spin.j(), 1.5);
        assert_eq!(spin.m(0), -1.5);
        assert_eq!(spin.m(3), 1.5);
    }

    #[test]
    fn flat_index_is_row_major_over_factor_a() {
        let space = CompositeSpace::new(SpinSpace::new(2), FockSpace::new(3));
        assert_eq!(space.dim(), 12);
        assert_eq!(space.flat_index(0, 0), 0);
        assert_eq!(space.flat_index(0, 3), 3);
        assert_eq!(space.flat_index(1, 0), 4);
        assert_eq!(space.split_index(7), (1, 3));
    }

    #[test]
    #[should_panic]
    fn fock_rejects_trivial_cutoff() {
        let _ = FockSpace::new(0);
    }
}
