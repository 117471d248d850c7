//! Consequences of the orbit-module description: direct sums of highest
//! weight modules, generic vectors, component counts, and the chordal
//! varieties of Grassmannians in `P(wedge^k Q^n)`.

mod chordal;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, LinalgError, Scalar};
use crate::orbit::OrbitError;
use crate::rep::{cyclic_module, IsotypicDecomposition, Rep, RepError, SymSquareElem, Weight};

pub use chordal::{
    chordal_ideal, chordal_ideal_with, chordal_sample, theta_index, ChordalReport, ChordalSpec,
    IsotypicTag,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AppError {
    #[error("the ground set must be nonempty")]
    EmptyGroundSet,
    #[error("ground set of size {0} is too large")]
    TooLarge(usize),
    #[error("highest weight {0} occurs twice in the selection")]
    RepeatedWeight(Weight),
    #[error("vector {0} of the selection is not a highest weight vector")]
    NotHighestWeight(usize),
    #[error("the decomposition of S^2 has multiplicities")]
    NotMultiplicityFree,
    #[error("invalid chordal spec: {0}")]
    InvalidSpec(String),
    #[error("no subspaces with the required ranks after {0} draws")]
    ResampleCap(usize),
    #[error("span did not stabilize within {budget} samples (dim {dim})")]
    NotStabilized { budget: usize, dim: usize },
    #[error("no draw reached every target component in {attempts} attempts; reachable components {reachable:?}")]
    RetryCap {
        attempts: usize,
        reachable: Vec<usize>,
    },
    #[error("closure of dimension {closure} is smaller than its support sum {support}")]
    SupportMismatch { closure: usize, support: usize },
    #[error("point {0} is zero")]
    ZeroPoint(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// Largest antichain of subsets of an `s`-set: the central binomial
/// coefficient.
pub fn sperner_bound(s: usize) -> Result<u128, AppError> {
    if s == 0 {
        return Err(AppError::EmptyGroundSet);
    }
    if s > 120 {
        return Err(AppError::TooLarge(s));
    }
    Ok(num_integer::binomial(s as u128, (s / 2) as u128))
}

/// Weight of `v` if it is a weight vector killed by every raising generator.
pub fn highest_weight_of(r: &Rep, v: &[Scalar]) -> Result<Option<Weight>, AppError> {
    let g = r.algebra();
    for x in g.raising_indices() {
        if !linalg::is_zero_vec(&r.action(x).mul_vec(v)?) {
            return Ok(None);
        }
    }
    let Some(k) = v.iter().position(|c| !num_traits::Zero::is_zero(c)) else {
        return Ok(None);
    };
    let mut weight = Vec::new();
    for h in g.cartan_indices() {
        let hv = r.action(h).mul_vec(v)?;
        let lambda = &hv[k] / &v[k];
        if hv != linalg::scale_vec(v, &lambda) {
            return Ok(None);
        }
        weight.push(lambda);
    }
    Ok(Some(Weight(weight)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumaOutcome {
    pub holds: bool,
    pub cyclic_dim: usize,
    pub summed_dim: usize,
    pub component_dims: Vec<usize>,
}

/// For highest weight vectors `p_i` of distinct weights, checks that
/// `U g (p_1 + ... + p_k)` has dimension `sum dim U g p_i`.
pub fn lemma_suma_check(r: &Rep, selection: &[Vec<Scalar>]) -> Result<SumaOutcome, AppError> {
    let mut seen = BTreeSet::new();
    for (i, p) in selection.iter().enumerate() {
        let w = highest_weight_of(r, p)?.ok_or(AppError::NotHighestWeight(i))?;
        if !seen.insert(w.clone()) {
            return Err(AppError::RepeatedWeight(w));
        }
    }
    let mut component_dims = Vec::new();
    let mut w = vec![Scalar::from_integer(0.into()); r.dim()];
    for p in selection {
        component_dims.push(cyclic_module(r, p)?.dim());
        linalg::axpy(&mut w, &linalg::one(), p);
    }
    let cyclic_dim = cyclic_module(r, &w)?.dim();
    let summed_dim = component_dims.iter().sum();
    Ok(SumaOutcome {
        holds: cyclic_dim == summed_dim,
        cyclic_dim,
        summed_dim,
        component_dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericOutcome {
    #[serde(with = "linalg::serde_scalar::vec")]
    pub vector: Vec<Scalar>,
    pub attempts: usize,
    pub support: Vec<usize>,
}

/// Draws from `sampler` until `yy` projects nontrivially onto every target
/// component of `iso`, a decomposition of `S^2(V)`.
pub fn generic_vector<F>(
    iso: &IsotypicDecomposition,
    targets: &[usize],
    mut sampler: F,
    max_attempts: usize,
) -> Result<GenericOutcome, AppError>
where
    F: FnMut(usize) -> Result<Vec<Scalar>, AppError>,
{
    if !iso.multiplicity_free {
        return Err(AppError::NotMultiplicityFree);
    }
    let mut reachable = BTreeSet::new();
    for attempt in 0..max_attempts {
        let y = sampler(attempt)?;
        let support = iso.support(&SymSquareElem::square(&y).to_coords())?;
        reachable.extend(support.iter().copied());
        if targets.iter().all(|t| support.contains(t)) {
            return Ok(GenericOutcome {
                vector: y,
                attempts: attempt + 1,
                support,
            });
        }
    }
    Err(AppError::RetryCap {
        attempts: max_attempts,
        reachable: reachable.into_iter().collect(),
    })
}

/// Points sharing one set `S` of isotypic components of `U g (xx)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportClass {
    pub points: Vec<usize>,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub classes: Vec<SupportClass>,
    /// `(a, b)` when `S_a` is strictly contained in `S_b`, i.e. `M_a` lies
    /// inside `M_b`.
    pub containment: Vec<(usize, usize)>,
    pub maximal: Vec<usize>,
    pub free_indices: usize,
    pub bound: u128,
    pub within_bound: bool,
}

/// Support sets, their inclusion order and the maximal classes, which give
/// the irreducible components of `M_{x_1} u ... u M_{x_s}`.
pub fn component_analysis(
    iso: &IsotypicDecomposition,
    points: &[Vec<Scalar>],
) -> Result<ComponentReport, AppError> {
    if !iso.multiplicity_free {
        return Err(AppError::NotMultiplicityFree);
    }
    let mut classes: Vec<SupportClass> = Vec::new();
    for (i, x) in points.iter().enumerate() {
        if linalg::is_zero_vec(x) {
            return Err(AppError::ZeroPoint(i));
        }
        let support = iso.support(&SymSquareElem::square(x).to_coords())?;
        match classes.iter_mut().find(|c| c.components == support) {
            Some(c) => c.points.push(i),
            None => classes.push(SupportClass {
                points: vec![i],
                components: support,
            }),
        }
    }
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    let mut containment = Vec::new();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if a != b && subset(&ca.components, &cb.components) {
                containment.push((a, b));
            }
        }
    }
    let maximal: Vec<usize> = (0..classes.len())
        .filter(|a| !containment.iter().any(|(x, _)| x == a))
        .collect();
    let free: BTreeSet<usize> = classes
        .iter()
        .flat_map(|c| c.components.iter().copied())
        .collect();
    let free_indices = free.len();
    let bound = sperner_bound(free_indices.max(1))?;
    Ok(ComponentReport {
        within_bound: maximal.len() as u128 <= bound,
        classes,
        containment,
        maximal,
        free_indices,
        bound,
    })
}
