use num_traits::Zero;

use super::{LinalgError, Mat, Scalar};

/// A linear subspace of `Q^ambient`, stored canonically as the nonzero rows of
/// its reduced row-echelon basis. Two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Intersect,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let m = Mat::from_rows(ambient, vectors.into_iter().collect())?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Mat) -> Self {
        let (basis, pivots) = m.reduce_rows();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn column_space(m: &Mat) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.dim()).map(move |i| self.basis.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_len(&self, len: usize, op: &'static str) -> Result<(), LinalgError> {
        if len != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                op,
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        self.check_len(v.len(), "coordinates")?;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(self.basis_rows()) {
            super::axpy(&mut rest, &-c, row);
        }
        Ok(super::is_zero_vec(&rest).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_len(other.ambient, "contains_subspace")?;
        for row in other.basis_rows() {
            if !self.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Linear combination of the basis rows.
    pub fn combination(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.basis_rows()) {
            super::axpy(&mut out, c, row);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient, "sum")?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::row_space(&stacked))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_len(other.ambient, "intersect")?;
        let dual_sum = self.annihilator().sum(&other.annihilator())?;
        Ok(dual_sum.annihilator())
    }

    pub fn combine(&self, other: &Subspace, mode: Combine) -> Result<Subspace, LinalgError> {
        match mode {
            Combine::Sum => self.sum(other),
            Combine::Intersect => self.intersect(other),
        }
    }

    /// Functionals (in dual coordinates, paired by the dot product) vanishing
    /// on every vector of the subspace.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    /// Adds vectors to the subspace.
    pub fn extend<I>(&self, vectors: I) -> Result<Subspace, LinalgError>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut rows = self.basis.row_vecs();
        rows.extend(vectors);
        Subspace::span(self.ambient, rows)
    }
}
