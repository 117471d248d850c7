use num_traits::Zero;

use super::{OrbitContext, OrbitError};
use crate::lie::GenSymbol;
use crate::linalg::{Mat, Scalar, SpanBuilder};
use crate::multimatrix::{phi_a, Catalecticant, IndexBox, IndexSpace, MultiMatrix, MultiVector};
use crate::rep::{act_word, pair_index, sym_dim, SymSquareElem};

/// The linear map `b -> sum_beta b_beta T_beta`, with
/// `T_beta = sum_{i+j=beta} A_i A_j^t` in symmetric coordinates, restricted
/// to the leftmost columns that span its image.
#[derive(Clone, Debug)]
pub struct CatSystem {
    grid: IndexBox,
    doubled: IndexBox,
    pivots: Vec<usize>,
    columns: Mat,
}

impl CatSystem {
    /// Scans `beta` in box order and stops once the image reaches the orbit
    /// module dimension.
    pub fn new(ctx: &OrbitContext, a: &MultiMatrix) -> Result<Self, OrbitError> {
        let IndexSpace::Grid(grid) = &a.cols else {
            return Err(OrbitError::Precondition("A must have box columns".into()));
        };
        let l = a.data.rows();
        let doubled = grid.doubled()?;
        let cols: Vec<Vec<Scalar>> = (0..a.data.cols()).map(|j| a.data.col(j)).collect();
        let target = ctx.module().dim();
        let mut span = SpanBuilder::new(sym_dim(l));
        let mut pivots = Vec::new();
        let mut kept = Vec::new();
        for (pos, beta) in doubled.iter().enumerate() {
            if span.dim() == target {
                break;
            }
            let t = t_column(grid, &cols, &beta, l);
            if span.insert(&t)? {
                pivots.push(pos);
                kept.push(t);
            }
        }
        if span.dim() != target {
            return Err(OrbitError::Inconsistent(format!(
                "catalecticant image has dim {} but the orbit module has dim {target}",
                span.dim()
            )));
        }
        Ok(CatSystem {
            grid: grid.clone(),
            doubled,
            pivots,
            columns: Mat::from_cols(sym_dim(l), &kept)?,
        })
    }

    pub fn grid(&self) -> &IndexBox {
        &self.grid
    }

    /// Positions in the doubled box of the columns that were kept.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The `b` with zeros off the pivots whose image is `target`, if any.
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<MultiVector>, OrbitError> {
        let Some(c) = self.columns.solve(target)? else {
            return Ok(None);
        };
        let mut b = MultiVector::zeros(self.doubled.clone());
        for (&p, v) in self.pivots.iter().zip(c) {
            b.data[p] = v;
        }
        Ok(Some(b))
    }
}

/// `sum_{i+j=beta, i,j in N} A_i A_j^t` in symmetric coordinates.
fn t_column(grid: &IndexBox, cols: &[Vec<Scalar>], beta: &[usize], l: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); sym_dim(l)];
    let lo: Vec<usize> = beta
        .iter()
        .zip(grid.bounds())
        .map(|(b, n)| b.saturating_sub(*n))
        .collect();
    let hi: Vec<usize> = beta
        .iter()
        .zip(grid.bounds())
        .map(|(b, n)| (*b).min(*n))
        .collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return out;
    }
    let span =
        IndexBox::new(hi.iter().zip(&lo).map(|(h, l)| h - l).collect()).expect("sub-box fits");
    for off in span.iter() {
        let i: Vec<usize> = off.iter().zip(&lo).map(|(o, l)| o + l).collect();
        let j: Vec<usize> = beta.iter().zip(&i).map(|(b, i)| b - i).collect();
        let ai = &cols[grid.position(&i).expect("inside")];
        let aj = &cols[grid.position(&j).expect("inside")];
        for (p, x) in ai.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, z) in aj.iter().enumerate().skip(p) {
                if !z.is_zero() {
                    out[pair_index(p, q, l)] += x * z;
                }
            }
        }
    }
    out
}

/// Solves `Q(yy) = sum b_{i+j} (D^i y / i!)(D^j y / j!)` for the word `q`
/// and checks the residual through `A B A^t`.
pub fn decompose_q(
    ctx: &OrbitContext,
    a: &MultiMatrix,
    sys: &CatSystem,
    q: &[GenSymbol],
) -> Result<MultiVector, OrbitError> {
    let target = act_word(ctx.sym2(), q, ctx.yy())?;
    let b = sys.solve(&target)?.ok_or_else(|| {
        OrbitError::Inconsistent("Q(yy) is outside the span of the generator monomials".into())
    })?;
    let image = phi_a(a, &Catalecticant::from_b(b.clone())?)?;
    let expected = SymSquareElem::from_coords(ctx.rep().dim(), &target)?;
    if &image != expected.matrix() {
        return Err(OrbitError::Inconsistent("nonzero residual".into()));
    }
    Ok(b)
}
