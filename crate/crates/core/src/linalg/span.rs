use num_traits::{One, Zero};

use super::{LinalgError, Scalar, Subspace};

/// Incrementally grown span in semi-echelon form.
///
/// Each stored row has a one at its pivot and zeros at the pivots of all rows
/// inserted before it, so a single ordered sweep reduces any vector.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ambient: usize) -> Self {
        SpanBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        SpanBuilder {
            ambient: s.ambient_dim(),
            rows: s.basis().row_vecs(),
            pivots: s.pivots().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = -v[p].clone();
            super::axpy(v, &c, row);
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        super::is_zero_vec(&w)
    }

    /// Inserts `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                op: "span insert",
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.insert_reduced(v.to_vec()))
    }

    /// Inserts a vector already reduced against a prefix of the stored rows,
    /// finishing the reduction first.
    pub fn insert_reduced(&mut self, mut w: Vec<Scalar>) -> bool {
        debug_assert_eq!(w.len(), self.ambient);
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if !w[p].is_one() {
            let inv = w[p].recip();
            for x in w.iter_mut().filter(|x| !x.is_zero()) {
                *x = &*x * &inv;
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::span(self.ambient, self.rows.clone()).expect("rows have the ambient length")
    }
}
