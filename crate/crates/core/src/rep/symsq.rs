//! Elements of S^2(V) as symmetric matrices.
//!
//! Coordinates are the upper-triangular entries `(i, j)`, `i <= j`, in
//! lexicographic order, so `x x^t` has coordinates `x_i x_j`. A functional is a
//! symmetric matrix `F` paired by the full trace `<F, M> = sum F_ij M_ij`; its
//! coordinate row is `F_ii` on the diagonal and `2 F_ij` off it.

use num_traits::Zero;

use crate::linalg::{LinalgError, Mat, Scalar};

pub fn sym_dim(l: usize) -> usize {
    l * (l + 1) / 2
}

pub fn pair_index(i: usize, j: usize, l: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    a * l - a * (a + 1) / 2 + b
}

/// All pairs `(i, j)` with `i <= j < l` in coordinate order.
pub fn pairs(l: usize) -> Vec<(usize, usize)> {
    (0..l).flat_map(|i| (i..l).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSquareElem {
    m: Mat,
}

impl SymSquareElem {
    pub fn new(m: Mat) -> Result<Self, LinalgError> {
        if !m.is_symmetric() {
            return Err(LinalgError::DimensionMismatch {
                op: "symmetric square element",
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Ok(SymSquareElem { m })
    }

    pub fn zero(l: usize) -> Self {
        SymSquareElem {
            m: Mat::zeros(l, l),
        }
    }

    /// `x x^t`.
    pub fn square(x: &[Scalar]) -> Self {
        Self::product(x, x)
    }

    /// Symmetric product `(a b^t + b a^t) / 2`, so that `product(x, x) = x x^t`.
    pub fn product(a: &[Scalar], b: &[Scalar]) -> Self {
        let l = a.len();
        let half = Scalar::new(1.into(), 2.into());
        let mut m = Mat::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                let v = &a[i] * &b[j] + &b[i] * &a[j];
                if !v.is_zero() {
                    m.set(i, j, v * &half);
                }
            }
        }
        SymSquareElem { m }
    }

    /// `self += c * product(a, b)`.
    pub fn add_product(&mut self, c: &Scalar, a: &[Scalar], b: &[Scalar]) {
        let half = c * Scalar::new(1.into(), 2.into());
        for i in 0..a.len() {
            for j in 0..b.len() {
                let v = &a[i] * &b[j] + &b[i] * &a[j];
                if !v.is_zero() {
                    *self.m.entry_mut(i, j) += v * &half;
                }
            }
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn into_matrix(self) -> Mat {
        self.m
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        let l = self.size();
        pairs(l)
            .into_iter()
            .map(|(i, j)| self.m.get(i, j).clone())
            .collect()
    }

    pub fn from_coords(l: usize, coords: &[Scalar]) -> Result<Self, LinalgError> {
        if coords.len() != sym_dim(l) {
            return Err(LinalgError::DimensionMismatch {
                op: "from_coords",
                expected: sym_dim(l),
                found: coords.len(),
            });
        }
        let mut m = Mat::zeros(l, l);
        for ((i, j), c) in pairs(l).into_iter().zip(coords) {
            m.set(i, j, c.clone());
            m.set(j, i, c.clone());
        }
        Ok(SymSquareElem { m })
    }
}

/// Symmetric matrix of the functional whose coordinate row is `psi`.
pub fn functional_matrix(l: usize, psi: &[Scalar]) -> Mat {
    let half = Scalar::new(1.into(), 2.into());
    let mut m = Mat::zeros(l, l);
    for ((i, j), c) in pairs(l).into_iter().zip(psi) {
        if i == j {
            m.set(i, i, c.clone());
        } else {
            let h = c * &half;
            m.set(i, j, h.clone());
            m.set(j, i, h);
        }
    }
    m
}

/// Trace pairing `sum F_ij M_ij`.
pub fn pair(f: &Mat, m: &Mat) -> Scalar {
    crate::linalg::dot(f.data(), m.data())
}
