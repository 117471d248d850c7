//! Exact computations with quadric ideals of orbit closures in sl(n)
//! representations.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: rational scalars, matrices and canonical subspaces.
//! * [`lie`]: sl(n) and its Chevalley generators.
//! * [`rep`]: modules, weights, cyclic submodules, isotypic decomposition.
//! * [`multimatrix`]: multi-index boxes, catalecticant matrices and the
//!   polynomial convolution.
//! * [`orbit`]: the orbit module of `yy`, its quadric ideal, generator
//!   sequences, the catalecticant parametrization and certification runs.
//! * [`apps`]: isotypic ideals, generic vectors, chordal varieties of
//!   Grassmannians and component bounds.

pub mod apps;
pub mod lie;
pub mod linalg;
pub mod multimatrix;
pub mod orbit;
pub mod par;
pub mod rep;

pub use linalg::Scalar;
pub use par::Exec;
