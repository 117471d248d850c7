//! Finite-dimensional modules of sl(n): functorial constructions, weights,
//! cyclic submodules and isotypic decompositions.

mod closure;
mod expr;
mod symsq;
mod weights;

pub(crate) use closure::cyclic_module_with;
pub use closure::{
    closure_with_words, cyclic_module, isotypic_decomposition, isotypic_decomposition_with,
    Closure, IsotypicComponent, IsotypicDecomposition,
};
pub use closure::{cyclic_dim_lower_bound, grow_invariant_span};
pub use expr::{parse_rep_expr, RepExpr, RepExprError};
pub use symsq::{functional_matrix, pair, pair_index, pairs, sym_dim, SymSquareElem};
pub use weights::{highest_weight_vectors, weight_decomposition, Weight, WeightSpace};

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lie::{GenSymbol, LieAlg, LieError};
use crate::linalg::{factorial, LinalgError, Mat, Scalar};
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("action of [{a}, {b}] differs from the commutator of the actions")]
    NotHomomorphism { a: String, b: String },
    #[error("expected {expected} action matrices, got {found}")]
    WrongActionCount { expected: usize, found: usize },
    #[error("action matrix for {symbol} is {rows}x{cols}, expected {dim}x{dim}")]
    BadActionShape {
        symbol: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("{kind} degree {k} out of range for a module of dimension {dim}")]
    DegreeOutOfRange {
        kind: &'static str,
        k: usize,
        dim: usize,
    },
    #[error("tensor factors belong to different algebras")]
    AlgebraMismatch,
    #[error("generator {0} does not act nilpotently")]
    NotNilpotent(String),
    #[error("H action is not diagonalizable with integer eigenvalues on this module")]
    NotDiagonalizable,
    #[error("isotypic components fail to exhaust the module: {found} of {dim} dimensions")]
    NotExhausted { found: usize, dim: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A module of the algebra: one action matrix per catalog generator.
#[derive(Clone, Debug)]
pub struct Rep {
    algebra: Arc<LieAlg>,
    dim: usize,
    label: String,
    action: Vec<Mat>,
}

impl Rep {
    /// Builds a module and checks the Lie homomorphism property on every
    /// pair of catalog generators.
    pub fn new(
        algebra: Arc<LieAlg>,
        label: impl Into<String>,
        action: Vec<Mat>,
    ) -> Result<Self, RepError> {
        let rep = Self::from_parts(algebra, label.into(), action)?;
        rep.check_homomorphism(Exec::default())?;
        Ok(rep)
    }

    fn from_parts(algebra: Arc<LieAlg>, label: String, action: Vec<Mat>) -> Result<Self, RepError> {
        if action.len() != algebra.dim() {
            return Err(RepError::WrongActionCount {
                expected: algebra.dim(),
                found: action.len(),
            });
        }
        let dim = action.first().map_or(0, Mat::rows);
        for (k, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::BadActionShape {
                    symbol: algebra.symbol(k).to_string(),
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
        }
        Ok(Rep {
            algebra,
            dim,
            label,
            action,
        })
    }

    pub fn check_homomorphism(&self, exec: Exec) -> Result<(), RepError> {
        let m = self.algebra.dim();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .collect();
        let failures = exec.map_slice(&pairs, |&(a, b)| {
            let lhs = self.action_of_coords(self.algebra.bracket_coords(a, b));
            let rhs = self.action[a]
                .commutator(&self.action[b])
                .expect("square actions");
            (lhs != rhs).then_some((a, b))
        });
        if let Some((a, b)) = failures.into_iter().flatten().next() {
            return Err(RepError::NotHomomorphism {
                a: self.algebra.symbol(a).to_string(),
                b: self.algebra.symbol(b).to_string(),
            });
        }
        Ok(())
    }

    fn action_of_coords(&self, coords: &[(usize, Scalar)]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (k, c) in coords {
            out.add_scaled(c, &self.action[*k]).expect("square actions");
        }
        out
    }

    pub fn algebra(&self) -> &Arc<LieAlg> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, idx: usize) -> &Mat {
        &self.action[idx]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    pub fn action_of(&self, symbol: GenSymbol) -> Result<&Mat, RepError> {
        let idx = self
            .algebra
            .index_of(symbol)
            .ok_or_else(|| LieError::UnknownSymbol(symbol.to_string()))?;
        Ok(&self.action[idx])
    }

    /// Applies catalog generators right to left: `word = [a, b]` gives `a(b(v))`.
    pub fn apply_indices(&self, word: &[usize], v: &[Scalar]) -> Result<Vec<Scalar>, RepError> {
        let mut out = v.to_vec();
        for &k in word.iter().rev() {
            if crate::linalg::is_zero_vec(&out) {
                break;
            }
            out = self.action[k].mul_vec(&out)?;
        }
        Ok(out)
    }
}

pub fn standard_rep(g: &Arc<LieAlg>) -> Rep {
    let action = g.catalog().iter().map(|c| c.matrix.clone()).collect();
    Rep::from_parts(g.clone(), "std".into(), action).expect("catalog matrices are n x n")
}

/// Functorial constructions on a module.
#[derive(Clone, Copy, Debug)]
pub enum Derived<'a> {
    Dual,
    Wedge(usize),
    Sym(usize),
    Tensor(&'a Rep),
    /// S^2 realized on symmetric matrices.
    Sym2,
}

/// Functorial constructions are homomorphisms whenever `r` is, so the
/// pairwise bracket check of [`Rep::new`] is skipped.
pub fn derived_rep(r: &Rep, kind: Derived<'_>) -> Result<Rep, RepError> {
    let (label, action) = match kind {
        Derived::Dual => (
            format!("dual({})", r.label),
            r.action
                .iter()
                .map(|m| m.transpose().scale(&-Scalar::one()))
                .collect(),
        ),
        Derived::Wedge(k) => {
            if k == 0 || k > r.dim {
                return Err(RepError::DegreeOutOfRange {
                    kind: "wedge",
                    k,
                    dim: r.dim,
                });
            }
            let basis = combinations(r.dim, k);
            (
                format!("wedge({k},{})", r.label),
                r.action.iter().map(|m| wedge_action(m, &basis)).collect(),
            )
        }
        Derived::Sym(k) => {
            if k == 0 {
                return Err(RepError::DegreeOutOfRange {
                    kind: "sym",
                    k,
                    dim: r.dim,
                });
            }
            let basis = multisets(r.dim, k);
            (
                format!("sym({k},{})", r.label),
                r.action.iter().map(|m| sym_action(m, &basis)).collect(),
            )
        }
        Derived::Tensor(other) => {
            if !Arc::ptr_eq(&r.algebra, &other.algebra) && r.algebra.n() != other.algebra.n() {
                return Err(RepError::AlgebraMismatch);
            }
            (
                format!("tensor({},{})", r.label, other.label),
                r.action
                    .iter()
                    .zip(&other.action)
                    .map(|(a, b)| tensor_action(a, b))
                    .collect(),
            )
        }
        Derived::Sym2 => (
            format!("sym2({})", r.label),
            r.action.iter().map(sym2_action).collect(),
        ),
    };
    Rep::from_parts(r.algebra.clone(), label, action)
}

/// Applies a word of generator symbols right to left.
pub fn act_word(r: &Rep, word: &[GenSymbol], v: &[Scalar]) -> Result<Vec<Scalar>, RepError> {
    let idx: Vec<usize> = word
        .iter()
        .map(|s| {
            r.algebra
                .index_of(*s)
                .ok_or_else(|| RepError::from(LieError::UnknownSymbol(s.to_string())))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != r.dim {
        return Err(LinalgError::DimensionMismatch {
            op: "act_word",
            expected: r.dim,
            found: v.len(),
        }
        .into());
    }
    r.apply_indices(&idx, v)
}

/// `exp(t rho(D)) = sum_k t^k rho(D)^k / k!`, a finite sum for nilpotent `D`.
pub fn exp_nilpotent(r: &Rep, idx: usize, t: &Scalar) -> Result<Mat, RepError> {
    let symbol = r.algebra.symbol(idx);
    if !symbol.is_nilpotent() {
        return Err(RepError::NotNilpotent(symbol.to_string()));
    }
    let d = &r.action[idx];
    let mut out = Mat::identity(r.dim);
    let mut power = Mat::identity(r.dim);
    let mut t_pow = Scalar::one();
    for k in 1..=r.dim + 1 {
        power = power.mul(d)?;
        if power.is_zero() {
            return Ok(out);
        }
        t_pow *= t;
        out.add_scaled(&(&t_pow / factorial(k)), &power)?;
    }
    Err(RepError::NotNilpotent(symbol.to_string()))
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Non-decreasing `k`-tuples of `0..n` (monomials) in lexicographic order.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn index_map(basis: &[Vec<usize>]) -> std::collections::HashMap<Vec<usize>, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect()
}

fn wedge_action(m: &Mat, basis: &[Vec<usize>]) -> Mat {
    let index = index_map(basis);
    let dim = basis.len();
    let mut out = Mat::zeros(dim, dim);
    for (col, subset) in basis.iter().enumerate() {
        for slot in 0..subset.len() {
            let src = subset[slot];
            for dst in 0..m.rows() {
                let c = m.get(dst, src);
                if c.is_zero() || (dst != src && subset.contains(&dst)) {
                    continue;
                }
                let mut replaced = subset.clone();
                replaced[slot] = dst;
                let sign = sort_with_sign(&mut replaced);
                let row = index[&replaced];
                let v = if sign { -c.clone() } else { c.clone() };
                *out.entry_mut(row, col) += v;
            }
        }
    }
    out
}

/// Sorts in place; returns true when the permutation was odd.
fn sort_with_sign(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

fn sym_action(m: &Mat, basis: &[Vec<usize>]) -> Mat {
    let index = index_map(basis);
    let dim = basis.len();
    let mut out = Mat::zeros(dim, dim);
    for (col, mono) in basis.iter().enumerate() {
        for slot in 0..mono.len() {
            let src = mono[slot];
            for dst in 0..m.rows() {
                let c = m.get(dst, src);
                if c.is_zero() {
                    continue;
                }
                let mut replaced = mono.clone();
                replaced[slot] = dst;
                replaced.sort_unstable();
                *out.entry_mut(index[&replaced], col) += c.clone();
            }
        }
    }
    out
}

fn tensor_action(a: &Mat, b: &Mat) -> Mat {
    let (p, q) = (a.rows(), b.rows());
    let mut out = Mat::zeros(p * q, p * q);
    for i in 0..p {
        for k in 0..p {
            let c = a.get(i, k);
            if c.is_zero() {
                continue;
            }
            for j in 0..q {
                *out.entry_mut(i * q + j, k * q + j) += c.clone();
            }
        }
    }
    for i in 0..p {
        for j in 0..q {
            for l in 0..q {
                let c = b.get(j, l);
                if !c.is_zero() {
                    *out.entry_mut(i * q + j, i * q + l) += c.clone();
                }
            }
        }
    }
    out
}

/// `M -> rho M + M rho^t` on symmetric-matrix coordinates.
fn sym2_action(rho: &Mat) -> Mat {
    let l = rho.rows();
    let dim = sym_dim(l);
    let mut out = Mat::zeros(dim, dim);
    for (col, (i, j)) in pairs(l).into_iter().enumerate() {
        // Nonzero entries of P = rho * M, M the basis matrix of (i, j).
        let mut entries: Vec<(usize, usize, &Scalar)> = Vec::new();
        for r in 0..l {
            let a = rho.get(r, i);
            if !a.is_zero() {
                entries.push((r, j, a));
            }
            if i != j {
                let b = rho.get(r, j);
                if !b.is_zero() {
                    entries.push((r, i, b));
                }
            }
        }
        for (r, c, v) in entries {
            let row = pair_index(r, c, l);
            let v = if r == c {
                v * Scalar::from_integer(2.into())
            } else {
                v.clone()
            };
            *out.entry_mut(row, col) += v;
        }
    }
    out
}
