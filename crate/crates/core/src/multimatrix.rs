//! Multi-index boxes, multi-vectors and multi-matrices, catalecticant
//! matrices and the polynomial convolution.
//!
//! A multi-vector on the box `{0..=N_1} x ... x {0..=N_r}` is read as the
//! coefficient vector of a polynomial in `r` variables; positions are always
//! enumerated lexicographically with the last axis fastest.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, LinalgError, Mat, Scalar, Subspace};
use crate::rep::{pairs, SymSquareElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiMatrixError {
    #[error("shape mismatch in {op}")]
    ShapeMismatch { op: &'static str },
    #[error("box with bounds {0:?} is not a doubled box")]
    NotDoubled(Vec<usize>),
    #[error("box with bounds {0:?} is too large to index")]
    TooLarge(Vec<usize>),
    #[error("matrix is not catalectic at ({row}, {col})")]
    NotCatalectic { row: usize, col: usize },
    #[error("subspace is not a hyperplane of the image: dim {dim} inside {ambient}")]
    NotHyperplane { dim: usize, ambient: usize },
    #[error("subspace is not contained in the image")]
    NotContained,
    #[error("matrix is zero")]
    Zero,
    #[error("matrix has rank at least two")]
    NotRankOne,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The box of multi-indices `0 <= i_k <= N_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexBox {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl TryFrom<Vec<usize>> for IndexBox {
    type Error = MultiMatrixError;

    fn try_from(bounds: Vec<usize>) -> Result<Self, Self::Error> {
        IndexBox::new(bounds)
    }
}

impl From<IndexBox> for Vec<usize> {
    fn from(b: IndexBox) -> Self {
        b.bounds
    }
}

impl IndexBox {
    pub fn new(bounds: Vec<usize>) -> Result<Self, MultiMatrixError> {
        let mut strides = vec![0; bounds.len()];
        let mut size: usize = 1;
        for k in (0..bounds.len()).rev() {
            strides[k] = size;
            size = bounds[k]
                .checked_add(1)
                .and_then(|w| size.checked_mul(w))
                .ok_or_else(|| MultiMatrixError::TooLarge(bounds.clone()))?;
        }
        Ok(IndexBox {
            bounds,
            strides,
            size,
        })
    }

    /// Number of positions, or `None` on overflow.
    pub fn checked_size(bounds: &[usize]) -> Option<usize> {
        bounds
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n.checked_add(1)?))
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn axes(&self) -> usize {
        self.bounds.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn doubled(&self) -> Result<IndexBox, MultiMatrixError> {
        IndexBox::new(self.bounds.iter().map(|n| 2 * n).collect())
    }

    /// The box `N` with `2N = self`, if every bound is even.
    pub fn halved(&self) -> Result<IndexBox, MultiMatrixError> {
        if self.bounds.iter().any(|n| n % 2 != 0) {
            return Err(MultiMatrixError::NotDoubled(self.bounds.clone()));
        }
        IndexBox::new(self.bounds.iter().map(|n| n / 2).collect())
    }

    pub fn contains(&self, idx: &[usize]) -> bool {
        idx.len() == self.bounds.len() && idx.iter().zip(&self.bounds).all(|(i, n)| i <= n)
    }

    pub fn position(&self, idx: &[usize]) -> Option<usize> {
        self.contains(idx)
            .then(|| idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum())
    }

    pub fn multi_index(&self, mut pos: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let i = pos / s;
                pos %= s;
                i
            })
            .collect()
    }

    /// All multi-indices in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size).map(move |p| self.multi_index(p))
    }

    /// Position of `i` inside `self.doubled()`, linear in `i`, so that the
    /// position of `i + j` is `embed[i] + embed[j]`.
    pub fn doubled_embedding(&self) -> Result<Vec<usize>, MultiMatrixError> {
        let d = self.doubled()?;
        Ok(self
            .iter()
            .map(|idx| d.position(&idx).expect("i <= N <= 2N"))
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    pub grid: IndexBox,
    pub data: Vec<Scalar>,
}

/// Wire form: `{"N": [..], "data": ["p/q", ...]}`.
#[derive(Serialize, Deserialize)]
struct MultiVectorWire {
    #[serde(rename = "N")]
    bounds: Vec<usize>,
    #[serde(with = "linalg::serde_scalar::vec")]
    data: Vec<Scalar>,
}

impl Serialize for MultiVector {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        MultiVectorWire {
            bounds: self.grid.bounds.clone(),
            data: self.data.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MultiVector {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = MultiVectorWire::deserialize(de)?;
        let grid = IndexBox::new(w.bounds).map_err(D::Error::custom)?;
        MultiVector::new(grid, w.data).map_err(D::Error::custom)
    }
}

impl MultiVector {
    pub fn new(grid: IndexBox, data: Vec<Scalar>) -> Result<Self, MultiMatrixError> {
        if data.len() != grid.len() {
            return Err(MultiMatrixError::ShapeMismatch { op: "multi-vector" });
        }
        Ok(MultiVector { grid, data })
    }

    pub fn zeros(grid: IndexBox) -> Self {
        let data = vec![Scalar::zero(); grid.len()];
        MultiVector { grid, data }
    }

    /// The basis multi-vector with a one at `idx`.
    pub fn basis(grid: IndexBox, idx: &[usize]) -> Result<Self, MultiMatrixError> {
        let p = grid
            .position(idx)
            .ok_or(MultiMatrixError::ShapeMismatch { op: "basis" })?;
        let mut v = MultiVector::zeros(grid);
        v.data[p] = linalg::one();
        Ok(v)
    }

    pub fn get(&self, idx: &[usize]) -> Option<&Scalar> {
        self.grid.position(idx).map(|p| &self.data[p])
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.data)
    }
}

/// Row or column index set of a multi-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSpace {
    Plain(usize),
    Grid(IndexBox),
}

impl IndexSpace {
    pub fn len(&self) -> usize {
        match self {
            IndexSpace::Plain(n) => *n,
            IndexSpace::Grid(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMatrix {
    pub rows: IndexSpace,
    pub cols: IndexSpace,
    pub data: Mat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmOp {
    Add,
    Mul,
    Transpose,
}

impl MultiMatrix {
    pub fn new(rows: IndexSpace, cols: IndexSpace, data: Mat) -> Result<Self, MultiMatrixError> {
        if data.rows() != rows.len() || data.cols() != cols.len() {
            return Err(MultiMatrixError::ShapeMismatch { op: "multi-matrix" });
        }
        Ok(MultiMatrix { rows, cols, data })
    }

    pub fn identity(grid: &IndexBox) -> Self {
        MultiMatrix {
            rows: IndexSpace::Grid(grid.clone()),
            cols: IndexSpace::Grid(grid.clone()),
            data: Mat::identity(grid.len()),
        }
    }

    pub fn entry(&self, i: &[usize], j: &[usize]) -> Option<&Scalar> {
        let pos = |space: &IndexSpace, idx: &[usize]| match space {
            IndexSpace::Plain(n) => (idx.len() == 1 && idx[0] < *n).then(|| idx[0]),
            IndexSpace::Grid(b) => b.position(idx),
        };
        Some(self.data.get(pos(&self.rows, i)?, pos(&self.cols, j)?))
    }

    pub fn add(&self, other: &MultiMatrix) -> Result<MultiMatrix, MultiMatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MultiMatrixError::ShapeMismatch { op: "add" });
        }
        Ok(MultiMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.add(&other.data)?,
        })
    }

    pub fn mul(&self, other: &MultiMatrix) -> Result<MultiMatrix, MultiMatrixError> {
        if self.cols != other.rows {
            return Err(MultiMatrixError::ShapeMismatch { op: "mul" });
        }
        Ok(MultiMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            data: self.data.mul(&other.data)?,
        })
    }

    pub fn transpose(&self) -> MultiMatrix {
        MultiMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            data: self.data.transpose(),
        }
    }

    /// Row space of `self`, i.e. the image of the transpose, as a subspace of
    /// the column index space.
    pub fn transpose_image(&self) -> Subspace {
        Subspace::row_space(&self.data)
    }
}

/// Entrywise sum, product or transpose (the second operand is ignored for
/// `Transpose`).
pub fn mm_algebra(
    a: &MultiMatrix,
    b: &MultiMatrix,
    op: MmOp,
) -> Result<MultiMatrix, MultiMatrixError> {
    match op {
        MmOp::Add => a.add(b),
        MmOp::Mul => a.mul(b),
        MmOp::Transpose => Ok(a.transpose()),
    }
}

/// Catalectic multi-matrix `B_ij = b_{i+j}`, stored through `b` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalecticant {
    grid: IndexBox,
    b: MultiVector,
}

impl Serialize for Catalecticant {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.b.serialize(ser)
    }
}

impl Catalecticant {
    /// `b` must live on a doubled box `2N`.
    pub fn from_b(b: MultiVector) -> Result<Self, MultiMatrixError> {
        let grid = b.grid.halved()?;
        Ok(Catalecticant { grid, b })
    }

    pub fn zero(grid: &IndexBox) -> Result<Self, MultiMatrixError> {
        Ok(Catalecticant {
            grid: grid.clone(),
            b: MultiVector::zeros(grid.doubled()?),
        })
    }

    pub fn grid(&self) -> &IndexBox {
        &self.grid
    }

    pub fn b(&self) -> &MultiVector {
        &self.b
    }

    pub fn to_matrix(&self) -> MultiMatrix {
        let embed = self
            .grid
            .doubled_embedding()
            .expect("doubled box exists for a stored catalecticant");
        let n = self.grid.len();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &self.b.data[embed[i] + embed[j]];
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        MultiMatrix::identity(&self.grid).with_data(m)
    }

    /// Recovers `b` from the zero row and the last column and checks that the
    /// whole matrix is catalectic.
    pub fn from_matrix(m: &MultiMatrix) -> Result<Self, MultiMatrixError> {
        let grid = match (&m.rows, &m.cols) {
            (IndexSpace::Grid(r), IndexSpace::Grid(c)) if r == c => r.clone(),
            _ => {
                return Err(MultiMatrixError::ShapeMismatch {
                    op: "catalecticant",
                })
            }
        };
        let doubled = grid.doubled()?;
        let mut b = MultiVector::zeros(doubled.clone());
        for (pos, beta) in doubled.iter().enumerate() {
            // beta = i + j with i = min(beta, N), j = beta - i.
            let i: Vec<usize> = beta
                .iter()
                .zip(grid.bounds())
                .map(|(b, n)| (*b).min(*n))
                .collect();
            let j: Vec<usize> = beta.iter().zip(&i).map(|(b, i)| b - i).collect();
            b.data[pos] = m.entry(&i, &j).expect("inside the box").clone();
        }
        let cat = Catalecticant { grid, b };
        let rebuilt = cat.to_matrix();
        for r in 0..m.data.rows() {
            for c in 0..m.data.cols() {
                if rebuilt.data.get(r, c) != m.data.get(r, c) {
                    return Err(MultiMatrixError::NotCatalectic { row: r, col: c });
                }
            }
        }
        Ok(cat)
    }
}

impl MultiMatrix {
    fn with_data(mut self, data: Mat) -> Self {
        self.data = data;
        self
    }
}

/// Coefficients of the product polynomial `f g`, on the doubled box.
pub fn mu(f: &MultiVector, g: &MultiVector) -> Result<MultiVector, MultiMatrixError> {
    if f.grid != g.grid {
        return Err(MultiMatrixError::ShapeMismatch { op: "mu" });
    }
    let embed = f.grid.doubled_embedding()?;
    Ok(MultiVector {
        grid: f.grid.doubled()?,
        data: convolve(&embed, &f.data, &g.data),
    })
}

fn convolve(embed: &[usize], f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
    let out_len = embed.last().map_or(1, |e| 2 * e + 1);
    let mut out = vec![Scalar::zero(); out_len];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if !b.is_zero() {
                out[embed[i] + embed[j]] += a * b;
            }
        }
    }
    out
}

/// Bookkeeping for products of subspaces of a box space.
#[derive(Clone, Debug)]
pub struct DotSpan {
    /// `s1 + s2`; products are expressed in symmetric coordinates over its
    /// canonical basis.
    pub joint: Subspace,
    /// Span of the symmetrized products `u.w`, `u` in `s1`, `w` in `s2`.
    pub product: Subspace,
    /// Image of `product` under the convolution, inside the doubled box.
    pub mu_image: Subspace,
}

/// `s1.s2` read as the span of symmetrized products, together with its
/// image under `mu`.
pub fn dot_span(
    grid: &IndexBox,
    s1: &Subspace,
    s2: &Subspace,
) -> Result<DotSpan, MultiMatrixError> {
    if s1.ambient_dim() != grid.len() || s2.ambient_dim() != grid.len() {
        return Err(MultiMatrixError::ShapeMismatch { op: "dot_span" });
    }
    let embed = grid.doubled_embedding()?;
    let out_len = grid.doubled()?.len();
    let joint = s1.sum(s2)?;
    let coords = |s: &Subspace| -> Vec<Vec<Scalar>> {
        s.basis_rows()
            .map(|r| {
                joint
                    .coordinates(r)
                    .expect("same ambient")
                    .expect("inside the joint span")
            })
            .collect()
    };
    let (c1, c2) = (coords(s1), coords(s2));
    let mut products = Vec::new();
    let mut images = Vec::new();
    for (u, cu) in s1.basis_rows().zip(&c1) {
        for (w, cw) in s2.basis_rows().zip(&c2) {
            products.push(SymSquareElem::product(cu, cw).to_coords());
            images.push(convolve(&embed, u, w));
        }
    }
    let d = joint.dim();
    Ok(DotSpan {
        product: Subspace::span(d * (d + 1) / 2, products)?,
        mu_image: Subspace::span(out_len, images)?,
        joint,
    })
}

/// Image `mu(s.s)` only.
pub fn mu_square_image(grid: &IndexBox, s: &Subspace) -> Result<Subspace, MultiMatrixError> {
    mu_product_image(grid, s, s)
}

/// `mu(s1.s2)` without the symmetric-square bookkeeping.
pub fn mu_product_image(
    grid: &IndexBox,
    s1: &Subspace,
    s2: &Subspace,
) -> Result<Subspace, MultiMatrixError> {
    if s1.ambient_dim() != grid.len() || s2.ambient_dim() != grid.len() {
        return Err(MultiMatrixError::ShapeMismatch { op: "mu image" });
    }
    let embed = grid.doubled_embedding()?;
    let out_len = grid.doubled()?.len();
    let mut span = linalg::SpanBuilder::new(out_len);
    for u in s1.basis_rows() {
        for w in s2.basis_rows() {
            span.insert(&convolve(&embed, u, w))?;
        }
    }
    Ok(span.to_subspace())
}

/// `ker mu` restricted to `S^2(s)`, in symmetric coordinates over the
/// canonical basis of `s`.
#[derive(Clone, Debug)]
pub struct MuKernel {
    pub base: Subspace,
    pub kernel: Subspace,
}

impl MuKernel {
    /// Kernel elements as symmetric matrices on the box.
    pub fn as_box_matrices(&self) -> Vec<Mat> {
        let d = self.base.dim();
        let rows: Vec<&[Scalar]> = self.base.basis_rows().collect();
        let n = self.base.ambient_dim();
        self.kernel
            .basis_rows()
            .map(|c| {
                let mut m = Mat::zeros(n, n);
                for ((a, b), v) in pairs(d).into_iter().zip(c) {
                    if v.is_zero() {
                        continue;
                    }
                    let p = SymSquareElem::product(rows[a], rows[b]);
                    let w = if a == b {
                        v.clone()
                    } else {
                        v * linalg::int(2)
                    };
                    m.add_scaled(&w, p.matrix()).expect("same shape");
                }
                m
            })
            .collect()
    }
}

pub fn mu_kernel(grid: &IndexBox, s: &Subspace) -> Result<MuKernel, MultiMatrixError> {
    if s.ambient_dim() != grid.len() {
        return Err(MultiMatrixError::ShapeMismatch { op: "mu_kernel" });
    }
    let embed = grid.doubled_embedding()?;
    let d = s.dim();
    let rows: Vec<&[Scalar]> = s.basis_rows().collect();
    // Column (a, b) is mu of the coordinate basis element of S^2(s).
    let cols: Vec<Vec<Scalar>> = pairs(d)
        .into_iter()
        .map(|(a, b)| {
            let img = convolve(&embed, rows[a], rows[b]);
            if a == b {
                img
            } else {
                linalg::scale_vec(&img, &linalg::int(2))
            }
        })
        .collect();
    let out_len = grid.doubled()?.len();
    let m = Mat::from_cols(out_len, &cols)?;
    Ok(MuKernel {
        base: s.clone(),
        kernel: m.kernel(),
    })
}

/// `A B A^t` for a catalecticant `B`, without forming `B` densely.
pub fn phi_a(a: &MultiMatrix, b: &Catalecticant) -> Result<Mat, MultiMatrixError> {
    match &a.cols {
        IndexSpace::Grid(g) if g == b.grid() => {}
        _ => return Err(MultiMatrixError::ShapeMismatch { op: "phi_A" }),
    }
    let embed = b.grid().doubled_embedding()?;
    let l = a.data.rows();
    let n = a.data.cols();
    let bd = &b.b().data;
    // C = A B
    let mut c = Mat::zeros(l, n);
    for k in 0..l {
        for i in 0..n {
            let aki = a.data.get(k, i);
            if aki.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = &bd[embed[i] + embed[j]];
                if !v.is_zero() {
                    *c.entry_mut(k, j) += aki * v;
                }
            }
        }
    }
    Ok(c.mul(&a.data.transpose())?)
}

/// Projective factor `<u>` of a symmetric rank-one matrix `m = c u u^t`, with
/// the first nonzero coordinate of `u` scaled to one.
pub fn rank1_factor(m: &Mat) -> Result<Vec<Scalar>, MultiMatrixError> {
    if !m.is_symmetric() {
        return Err(MultiMatrixError::NotSymmetric);
    }
    let Some(r) = (0..m.rows()).find(|&i| !linalg::is_zero_vec(m.row(i))) else {
        return Err(MultiMatrixError::Zero);
    };
    let row = m.row(r);
    let lead = row
        .iter()
        .find(|v| !v.is_zero())
        .expect("nonzero row")
        .clone();
    let u: Vec<Scalar> = row.iter().map(|v| v / &lead).collect();
    if u[r].is_zero() {
        return Err(MultiMatrixError::NotRankOne);
    }
    // m = c u u^t with c = m_rr / u_r^2.
    let c = m.get(r, r) / (&u[r] * &u[r]);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j) != &(&c * &u[i] * &u[j]) {
                return Err(MultiMatrixError::NotRankOne);
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ints};

    fn grid(b: &[usize]) -> IndexBox {
        IndexBox::new(b.to_vec()).unwrap()
    }

    fn mv(b: &[usize], data: &[i64]) -> MultiVector {
        MultiVector::new(grid(b), ints(data)).unwrap()
    }

    #[test]
    fn box_enumeration() {
        let g = grid(&[1, 2]);
        assert_eq!(g.len(), 6);
        let all: Vec<_> = g.iter().collect();
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        for (p, idx) in all.iter().enumerate() {
            assert_eq!(g.position(idx), Some(p));
        }
        assert_eq!(g.position(&[2, 0]), None);
        assert_eq!(grid(&[]).len(), 1);
        let embed = g.doubled_embedding().unwrap();
        let d = g.doubled().unwrap();
        assert_eq!(d.position(&[1, 3]), Some(embed[5] + embed[1]));
    }

    #[test]
    fn mm_algebra_cases() {
        let g = grid(&[1]);
        let a = MultiMatrix::new(
            IndexSpace::Grid(g.clone()),
            IndexSpace::Grid(g.clone()),
            Mat::from_i64(&[&[1, 2], &[3, 4]]),
        )
        .unwrap();
        let b = MultiMatrix::new(
            IndexSpace::Grid(g.clone()),
            IndexSpace::Grid(g.clone()),
            Mat::from_i64(&[&[0, 1], &[1, 0]]),
        )
        .unwrap();
        let id = MultiMatrix::identity(&g);
        assert_eq!(mm_algebra(&a, &id, MmOp::Mul).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(
            mm_algebra(&a, &b, MmOp::Mul).unwrap().data,
            Mat::from_i64(&[&[2, 1], &[4, 3]])
        );
        assert_eq!(
            mm_algebra(&a, &b, MmOp::Add).unwrap().data,
            Mat::from_i64(&[&[1, 3], &[4, 4]])
        );
        let wide = MultiMatrix::new(
            IndexSpace::Plain(2),
            IndexSpace::Grid(grid(&[2])),
            Mat::zeros(2, 3),
        )
        .unwrap();
        assert!(a.mul(&wide.transpose()).is_err());
        assert!(a.add(&wide).is_err());
    }

    #[test]
    fn catalecticant_from_b() {
        let cat = Catalecticant::from_b(mv(&[2], &[0, 1, 2])).unwrap();
        assert_eq!(cat.to_matrix().data, Mat::from_i64(&[&[0, 1], &[1, 2]]));
        assert!(Catalecticant::from_b(mv(&[3], &[0, 1, 2, 3])).is_err());
        let back = Catalecticant::from_matrix(&cat.to_matrix()).unwrap();
        assert_eq!(back, cat);
        let mut bad = cat.to_matrix();
        bad.data.set(0, 1, int(5));
        assert!(matches!(
            Catalecticant::from_matrix(&bad),
            Err(MultiMatrixError::NotCatalectic { .. })
        ));
    }

    #[test]
    fn geometric_hankel_has_rank_one() {
        // b = (1, t, t^2, ...) on the doubled box of N = (2, 1), t = (3, -2).
        let g = grid(&[2, 1]);
        let d = g.doubled().unwrap();
        let data: Vec<Scalar> = d
            .iter()
            .map(|idx| int(3i64.pow(idx[0] as u32) * (-2i64).pow(idx[1] as u32)))
            .collect();
        let cat = Catalecticant::from_b(MultiVector::new(d, data).unwrap()).unwrap();
        assert_eq!(cat.to_matrix().data.rank(), 1);
        assert!(cat.to_matrix().data.is_symmetric());
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(
            mu(&mv(&[1], &[1, 1]), &mv(&[1], &[1, 1])).unwrap(),
            mv(&[2], &[1, 2, 1])
        );
        let g = grid(&[1, 1]);
        let x1 = MultiVector::basis(g.clone(), &[1, 0]).unwrap();
        let x2 = MultiVector::basis(g.clone(), &[0, 1]).unwrap();
        let p = mu(&x1, &x2).unwrap();
        assert_eq!(
            p,
            MultiVector::basis(g.doubled().unwrap(), &[1, 1]).unwrap()
        );
        assert!(mu(&x1, &mv(&[1], &[1, 1])).is_err());
    }

    #[test]
    fn dot_span_examples() {
        let g = grid(&[2]);
        let full = Subspace::full(3);
        let e = |v: &[i64]| Subspace::span(3, vec![ints(v)]).unwrap();
        let one = e(&[1, 0, 0]);
        let ds = dot_span(&g, &one, &one).unwrap();
        assert_eq!(ds.product.dim(), 1);
        assert_eq!(
            ds.mu_image,
            Subspace::span(5, vec![ints(&[1, 0, 0, 0, 0])]).unwrap()
        );
        let lin = Subspace::span(3, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        assert_eq!(dot_span(&g, &lin, &full).unwrap().mu_image.dim(), 4);
        let ends = Subspace::span(3, vec![ints(&[1, 0, 0]), ints(&[0, 0, 1])]).unwrap();
        assert!(dot_span(&g, &ends, &full).unwrap().mu_image.is_full());
    }

    #[test]
    fn mu_kernel_examples() {
        let k = mu_kernel(&grid(&[1]), &Subspace::full(2)).unwrap();
        assert!(k.kernel.is_zero());
        let k = mu_kernel(&grid(&[2]), &Subspace::full(3)).unwrap();
        assert_eq!(k.kernel.dim(), 1);
        // 1.x^2 - x.x as a symmetric matrix on the box.
        let m = &k.as_box_matrices()[0];
        let expected = Mat::from_i64(&[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]]);
        assert_eq!(
            Subspace::span(9, vec![m.data().to_vec(), expected.data().to_vec()])
                .unwrap()
                .dim(),
            1
        );
        assert!(mu_kernel(&grid(&[2]), &Subspace::zero(3))
            .unwrap()
            .kernel
            .is_zero());
    }

    #[test]
    fn phi_a_cases() {
        let g = grid(&[2]);
        let id = MultiMatrix::identity(&g);
        let cat = Catalecticant::from_b(mv(&[4], &[1, 2, 4, 8, 16])).unwrap();
        let plain = MultiMatrix {
            rows: IndexSpace::Plain(3),
            ..id.clone()
        };
        assert_eq!(phi_a(&plain, &cat).unwrap(), cat.to_matrix().data);
        let a = MultiMatrix::new(
            IndexSpace::Plain(3),
            IndexSpace::Grid(g.clone()),
            Mat::from_i64(&[&[1, 1, 0], &[0, 2, 1], &[1, 0, 3]]),
        )
        .unwrap();
        assert_eq!(phi_a(&a, &cat).unwrap().rank(), 1);
        assert!(phi_a(&a, &Catalecticant::zero(&g).unwrap())
            .unwrap()
            .is_zero());
        let dense = a
            .data
            .mul(&cat.to_matrix().data)
            .unwrap()
            .mul(&a.data.transpose())
            .unwrap();
        assert_eq!(phi_a(&a, &cat).unwrap(), dense);
    }

    #[test]
    fn rank_one_factors() {
        let u = SymSquareElem::square(&ints(&[1, 2])).into_matrix();
        assert_eq!(rank1_factor(&u).unwrap(), ints(&[1, 2]));
        assert_eq!(
            rank1_factor(&Mat::identity(2)),
            Err(MultiMatrixError::NotRankOne)
        );
        assert_eq!(rank1_factor(&Mat::zeros(2, 2)), Err(MultiMatrixError::Zero));
        let m = SymSquareElem::square(&ints(&[1, 0, -1]))
            .into_matrix()
            .scale(&int(3));
        assert_eq!(rank1_factor(&m).unwrap(), ints(&[1, 0, -1]));
        let m = SymSquareElem::square(&ints(&[0, 2, -4]))
            .into_matrix()
            .scale(&int(-5));
        assert_eq!(rank1_factor(&m).unwrap(), ints(&[0, 1, -2]));
        let hyperbolic = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(rank1_factor(&hyperbolic), Err(MultiMatrixError::NotRankOne));
    }

    #[test]
    fn multivector_wire_format() {
        let v = MultiVector::new(grid(&[1]), vec![crate::linalg::ratio(1, 2), int(-3)]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"N":[1],"data":["1/2","-3"]}"#);
        let back: MultiVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
