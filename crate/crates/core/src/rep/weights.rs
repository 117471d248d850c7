use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Rep, RepError};
use crate::linalg::{int, Mat, Scalar, Subspace};

/// Eigenvalues of the simple coroots `H_1..H_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight(#[serde(with = "crate::linalg::serde_scalar::vec")] pub Vec<Scalar>);

impl Weight {
    pub fn from_ints(v: &[i64]) -> Self {
        Weight(crate::linalg::ints(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: Weight,
    pub space: Subspace,
}

/// Joint eigenspaces of the `H_i` actions, heaviest weight first.
pub fn weight_decomposition(r: &Rep) -> Result<Vec<WeightSpace>, RepError> {
    let hs: Vec<&Mat> = r
        .algebra()
        .cartan_indices()
        .into_iter()
        .map(|k| r.action(k))
        .collect();
    let spaces = if hs.iter().all(|h| is_diagonal(h)) {
        diagonal_split(r.dim(), &hs)
    } else {
        general_split(r.dim(), &hs)?
    };
    Ok(spaces)
}

fn is_diagonal(m: &Mat) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

fn diagonal_split(dim: usize, hs: &[&Mat]) -> Vec<WeightSpace> {
    let mut groups: BTreeMap<Reverse<Weight>, Vec<usize>> = BTreeMap::new();
    for k in 0..dim {
        let w = Weight(hs.iter().map(|h| h.get(k, k).clone()).collect());
        groups.entry(Reverse(w)).or_default().push(k);
    }
    groups
        .into_iter()
        .map(|(Reverse(weight), idx)| {
            let rows = idx.into_iter().map(|k| {
                let mut e = vec![Scalar::zero(); dim];
                e[k] = int(1);
                e
            });
            WeightSpace {
                weight,
                space: Subspace::span(dim, rows).expect("unit vectors"),
            }
        })
        .collect()
}

/// Splits successively by each `H_i`, trying the integer eigenvalues allowed
/// by the row-sum bound. Fails if some subspace is not exhausted.
fn general_split(dim: usize, hs: &[&Mat]) -> Result<Vec<WeightSpace>, RepError> {
    let mut parts: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), Subspace::full(dim))];
    for h in hs {
        let bound = (0..dim)
            .map(|i| h.row(i).iter().map(|v| v.abs()).sum::<Scalar>())
            .max()
            .unwrap_or_else(Scalar::zero)
            .ceil()
            .to_integer();
        let bound: i64 = bound.try_into().map_err(|_| RepError::NotDiagonalizable)?;
        let mut next = Vec::new();
        for (prefix, space) in parts {
            let basis_t = space.basis().transpose();
            let image = h.mul(&basis_t)?;
            let mut found = 0;
            for lambda in -bound..=bound {
                // (H - lambda) B^t c = 0
                let shifted = image.sub(&basis_t.scale(&int(lambda)))?;
                let kernel = shifted.kernel();
                if kernel.is_zero() {
                    continue;
                }
                let vectors: Vec<Vec<Scalar>> =
                    kernel.basis_rows().map(|c| space.combination(c)).collect();
                found += vectors.len();
                let mut w = prefix.clone();
                w.push(int(lambda));
                next.push((w, Subspace::span(dim, vectors)?));
            }
            if found != space.dim() {
                return Err(RepError::NotDiagonalizable);
            }
        }
        parts = next;
    }
    let mut out: Vec<WeightSpace> = parts
        .into_iter()
        .map(|(w, space)| WeightSpace {
            weight: Weight(w),
            space,
        })
        .collect();
    out.sort_by(|a, b| b.weight.cmp(&a.weight));
    Ok(out)
}

/// Vectors in each weight space killed by every raising generator. Weights
/// without such vectors are omitted.
pub fn highest_weight_vectors(r: &Rep) -> Result<Vec<WeightSpace>, RepError> {
    let raising: Vec<&Mat> = r
        .algebra()
        .raising_indices()
        .into_iter()
        .map(|k| r.action(k))
        .collect();
    let mut out = Vec::new();
    for ws in weight_decomposition(r)? {
        let basis_t = ws.space.basis().transpose();
        let mut stacked = Mat::zeros(0, ws.space.dim());
        for x in &raising {
            stacked = stacked.vstack(&x.mul(&basis_t)?)?;
        }
        let kernel = stacked.kernel();
        if kernel.is_zero() {
            continue;
        }
        let vectors: Vec<Vec<Scalar>> = kernel
            .basis_rows()
            .map(|c| ws.space.combination(c))
            .collect();
        out.push(WeightSpace {
            weight: ws.weight,
            space: Subspace::span(r.dim(), vectors)?,
        });
    }
    Ok(out)
}
