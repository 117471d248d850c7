//! The orbit module `U g (yy)` inside `S^2(V)`, its quadric ideal, generator
//! sequences with their nilpotency boxes, the multi-matrix `A`, the
//! catalecticant parametrization `B -> A B A^t` and certification runs.

mod certify;
mod correspond;
mod decompose;
mod genseq;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, LinalgError, Mat, Scalar, Subspace};
use crate::multimatrix::MultiMatrixError;
use crate::par::Exec;
use crate::rep::{self, derived_rep, functional_matrix, Derived, Rep, RepError, SymSquareElem};

pub use certify::{
    certify_irreducibility, certify_with, sample_evaluation_hyperplane, sample_orbit_point,
    CertReport, Counts, Dims, Verdict, Witness,
};
pub use correspond::{
    hyperplane_check, rank1_correspondence, HyperplaneStatus, Pipeline, Rank1Direction,
    Rank1Outcome,
};
pub use decompose::{decompose_q, CatSystem};
pub use genseq::{
    build_a, generator_sequence, leibniz_check, monomial_images, nilpotency_bound, GenSeq,
};

pub const DEFAULT_MAX_BOX: usize = 20_000;
pub const DEFAULT_MAX_SEQ_LEN: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("the vector y must be nonzero")]
    ZeroVector,
    #[error("box of size {size} exceeds the cap {cap}")]
    BoxCap { size: String, cap: usize },
    #[error("sequence search exhausted: span dim {found} of {target} with {len} letters")]
    SequenceExhausted {
        found: usize,
        target: usize,
        len: usize,
    },
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    MultiMatrix(#[from] MultiMatrixError),
}

impl OrbitError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            OrbitError::BoxCap { .. } | OrbitError::SequenceExhausted { .. }
        )
    }
}

/// Guardrails for generator-sequence searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_box: usize,
    pub max_seq_len: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_box: DEFAULT_MAX_BOX,
            max_seq_len: DEFAULT_MAX_SEQ_LEN,
        }
    }
}

/// A module `V`, a nonzero `y`, and the data derived once from them.
#[derive(Clone, Debug)]
pub struct OrbitContext {
    rep: Rep,
    sym2: Rep,
    y: Vec<Scalar>,
    yy: Vec<Scalar>,
    module: Subspace,
    caps: Caps,
    exec: Exec,
}

impl OrbitContext {
    pub fn new(r: &Rep, y: &[Scalar]) -> Result<Self, OrbitError> {
        Self::with_options(r, y, Caps::default(), Exec::default())
    }

    pub fn with_options(r: &Rep, y: &[Scalar], caps: Caps, exec: Exec) -> Result<Self, OrbitError> {
        let sym2 = derived_rep(r, Derived::Sym2)?;
        Self::with_sym2(r, sym2, y, caps, exec)
    }

    /// Reuses an already built `S^2` module of `r`.
    pub fn with_sym2(
        r: &Rep,
        sym2: Rep,
        y: &[Scalar],
        caps: Caps,
        exec: Exec,
    ) -> Result<Self, OrbitError> {
        check_len(r, y, "y")?;
        if linalg::is_zero_vec(y) {
            return Err(OrbitError::ZeroVector);
        }
        let yy = sym_square(y).to_coords();
        let module = rep::cyclic_module_with(&sym2, std::slice::from_ref(&yy), exec)?;
        Ok(OrbitContext {
            rep: r.clone(),
            sym2,
            y: y.to_vec(),
            yy,
            module,
            caps,
            exec,
        })
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn sym2(&self) -> &Rep {
        &self.sym2
    }

    pub fn y(&self) -> &[Scalar] {
        &self.y
    }

    /// Coordinates of `yy` in `S^2(V)`.
    pub fn yy(&self) -> &[Scalar] {
        &self.yy
    }

    pub fn module(&self) -> &Subspace {
        &self.module
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn quadric_ideal(&self) -> QuadraticIdeal {
        let coords = self.module.annihilator();
        let l = self.rep.dim();
        QuadraticIdeal {
            dim_v: l,
            basis: coords
                .basis_rows()
                .map(|psi| functional_matrix(l, psi))
                .collect(),
            coords,
        }
    }

    /// Whether `<x>` lies in `M_y`, i.e. `xx` lies in the orbit module.
    pub fn contains(&self, x: &[Scalar]) -> Result<bool, OrbitError> {
        check_len(&self.rep, x, "x")?;
        Ok(self.module.contains(&sym_square(x).to_coords())?)
    }
}

fn check_len(r: &Rep, v: &[Scalar], what: &'static str) -> Result<(), OrbitError> {
    if v.len() != r.dim() {
        return Err(LinalgError::DimensionMismatch {
            op: what,
            expected: r.dim(),
            found: v.len(),
        }
        .into());
    }
    Ok(())
}

/// `xx = x x^t`.
pub fn sym_square(x: &[Scalar]) -> SymSquareElem {
    SymSquareElem::square(x)
}

pub fn orbit_module(r: &Rep, y: &[Scalar]) -> Result<Subspace, OrbitError> {
    Ok(OrbitContext::new(r, y)?.module)
}

/// Quadrics vanishing on the orbit of `y`: the annihilator of the orbit
/// module, each functional written as a symmetric matrix `Q` with
/// `q(x) = x^t Q x` and `<Q, M> = tr(Q M)`.
#[derive(Clone, Debug)]
pub struct QuadraticIdeal {
    pub dim_v: usize,
    pub basis: Vec<Mat>,
    /// The same functionals in symmetric coordinates of `S^2(V)`.
    pub coords: Subspace,
}

impl QuadraticIdeal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eval(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.basis
            .iter()
            .map(|q| {
                let qx = q.mul_vec(x).expect("x has the module dimension");
                linalg::dot(x, &qx)
            })
            .collect()
    }

    pub fn vanishes_at(&self, x: &[Scalar]) -> bool {
        self.eval(x).iter().all(Zero::is_zero)
    }
}

pub fn quadric_ideal(r: &Rep, y: &[Scalar]) -> Result<QuadraticIdeal, OrbitError> {
    Ok(OrbitContext::new(r, y)?.quadric_ideal())
}

pub fn my_membership(r: &Rep, y: &[Scalar], x: &[Scalar]) -> Result<bool, OrbitError> {
    OrbitContext::new(r, y)?.contains(x)
}
