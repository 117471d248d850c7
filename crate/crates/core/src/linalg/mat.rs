use std::fmt;

use num_traits::{One, Zero};

use super::{LinalgError, Scalar, Subspace};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Subspace,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Matrix unit with a single one at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(rows, cols);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_vec",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for integer literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| super::ints(r)).collect();
        Mat::from_rows(cols, rows).expect("ragged integer literal")
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_cols",
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other, "add")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Mat { data, ..*self })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.check_same_shape(other, "sub")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Mat { data, ..*self })
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * c).collect();
        Mat { data, ..*self }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Mat) -> Result<(), LinalgError> {
        self.check_same_shape(other, "add_scaled")?;
        super::axpy(&mut self.data, c, &other.data);
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                super::axpy(out_row, a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    fn eliminate(&mut self, col_limit: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..col_limit {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].recip();
            for j in c..cols {
                let v = &self.data[r * cols + j];
                if !v.is_zero() {
                    self.data[r * cols + j] = v * &inv;
                }
            }
            let pivot_row: Vec<Scalar> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                let f = -f;
                super::axpy(&mut self.data[i * cols..(i + 1) * cols], &f, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(self.cols);
        let rank = pivots.len();
        let kernel = kernel_from_reduced(&reduced, &pivots);
        Rref {
            reduced,
            rank,
            pivots,
            kernel,
        }
    }

    /// RREF without the kernel computation.
    pub(crate) fn reduce_rows(&self) -> (Mat, Vec<usize>) {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(self.cols);
        reduced.rows = pivots.len();
        reduced.data.truncate(pivots.len() * self.cols);
        (reduced, pivots)
    }

    /// Determinant by fraction elimination; `None` for non-square matrices.
    pub fn det(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Scalar::from_integer(1.into());
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i * n + c].is_zero()) else {
                return Some(Scalar::zero());
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[c * n + c].clone();
            det *= &pivot;
            for i in c + 1..n {
                let f = &m[i * n + c] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &f * &m[c * n + j];
                    m[i * n + j] -= v;
                }
            }
        }
        Some(det)
    }

    pub fn rank(&self) -> usize {
        self.reduce_rows().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (reduced, pivots) = self.reduce_rows();
        kernel_from_reduced(&reduced, &pivots)
    }

    /// One solution of `self * x = rhs` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let cols = self.cols + 1;
        let mut aug = Mat::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * cols + j] = self.get(i, j).clone();
            }
            aug.data[i * cols + self.cols] = rhs[i].clone();
        }
        let pivots = aug.eliminate(self.cols);
        let r = pivots.len();
        if (r..self.rows).any(|i| !aug.data[i * cols + self.cols].is_zero()) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[i * cols + self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Solves against several right-hand sides sharing one elimination.
    pub fn solve_many(&self, rhs: &[Vec<Scalar>]) -> Result<Vec<Option<Vec<Scalar>>>, LinalgError> {
        let k = rhs.len();
        let cols = self.cols + k;
        let mut aug = Mat::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * cols + j] = self.get(i, j).clone();
            }
        }
        for (t, b) in rhs.iter().enumerate() {
            if b.len() != self.rows {
                return Err(LinalgError::DimensionMismatch {
                    op: "solve_many",
                    expected: self.rows,
                    found: b.len(),
                });
            }
            for i in 0..self.rows {
                aug.data[i * cols + self.cols + t] = b[i].clone();
            }
        }
        let pivots = aug.eliminate(self.cols);
        let r = pivots.len();
        Ok((0..k)
            .map(|t| {
                let c = self.cols + t;
                if (r..self.rows).any(|i| !aug.data[i * cols + c].is_zero()) {
                    return None;
                }
                let mut x = vec![Scalar::zero(); self.cols];
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = aug.data[i * cols + c].clone();
                }
                Some(x)
            })
            .collect())
    }
}

fn kernel_from_reduced(reduced: &Mat, pivots: &[usize]) -> Subspace {
    let cols = reduced.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            let e = reduced.get(i, f);
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        basis.push(v);
    }
    Subspace::span(cols, basis).expect("kernel vectors have the ambient length")
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
