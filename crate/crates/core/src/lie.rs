//! The Lie algebra sl(n) with its Chevalley generators.
//!
//! Downstream code only sees the generator catalog, the bracket and the
//! structure constants, so other simple types could be supplied the same way.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{int, LinalgError, Mat, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("sl(n) needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("bracket of {0}x{0} and {1}x{1} matrices")]
    SizeMismatch(usize, usize),
    #[error("unknown generator symbol {0:?}")]
    UnknownSymbol(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Positive root `e_i - e_j` of sl(n), 1-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn is_simple(&self) -> bool {
        self.j == self.i + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSymbol {
    X(Root),
    Y(Root),
    /// Simple coroot `E_ii - E_{i+1,i+1}`, 1-based.
    H(usize),
}

impl GenSymbol {
    pub fn is_nilpotent(&self) -> bool {
        !matches!(self, GenSymbol::H(_))
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::X(r) => write!(f, "X({},{})", r.i, r.j),
            GenSymbol::Y(r) => write!(f, "Y({},{})", r.i, r.j),
            GenSymbol::H(i) => write!(f, "H({i})"),
        }
    }
}

impl FromStr for GenSymbol {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LieError::UnknownSymbol(s.to_string());
        let t = s.trim();
        let (head, rest) = t.split_at(t.find('(').ok_or_else(bad)?);
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (head, nums.as_slice()) {
            ("X", &[i, j]) if i < j => Ok(GenSymbol::X(Root { i, j })),
            ("Y", &[i, j]) if i < j => Ok(GenSymbol::Y(Root { i, j })),
            ("H", &[i]) => Ok(GenSymbol::H(i)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub symbol: GenSymbol,
    pub matrix: Mat,
}

/// sl(n) with its catalog: all `X_b` in lexicographic root order, then all
/// `Y_b`, then the simple `H_i`.
#[derive(Clone, Debug)]
pub struct LieAlg {
    n: usize,
    positive_roots: Vec<Root>,
    catalog: Vec<Generator>,
    /// Rows map a flattened n x n matrix to catalog coordinates.
    coord_map: Mat,
    /// `structure[a][b]` = sparse catalog coordinates of `[g_a, g_b]`.
    structure: Vec<Vec<Vec<(usize, Scalar)>>>,
}

pub fn make_sl(n: usize) -> Result<LieAlg, LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    let positive_roots: Vec<Root> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| Root { i, j }))
        .collect();
    let mut catalog = Vec::new();
    for r in &positive_roots {
        catalog.push(Generator {
            symbol: GenSymbol::X(*r),
            matrix: Mat::unit(n, n, r.i - 1, r.j - 1),
        });
    }
    for r in &positive_roots {
        catalog.push(Generator {
            symbol: GenSymbol::Y(*r),
            matrix: Mat::unit(n, n, r.j - 1, r.i - 1),
        });
    }
    for i in 1..n {
        let mut h = Mat::zeros(n, n);
        h.set(i - 1, i - 1, int(1));
        h.set(i, i, int(-1));
        catalog.push(Generator {
            symbol: GenSymbol::H(i),
            matrix: h,
        });
    }
    let coord_map = coordinate_map(n, &catalog)?;
    let mut alg = LieAlg {
        n,
        positive_roots,
        catalog,
        coord_map,
        structure: Vec::new(),
    };
    let m = alg.catalog.len();
    let mut structure = vec![vec![Vec::new(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = alg.catalog[a].matrix.commutator(&alg.catalog[b].matrix)?;
            let coords = alg
                .coordinates(&br)?
                .expect("sl(n) is closed under the bracket");
            structure[a][b] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    alg.structure = structure;
    Ok(alg)
}

/// Left inverse of the catalog, obtained from one elimination of
/// `[C | I]` where the columns of `C` are the flattened generators.
fn coordinate_map(n: usize, catalog: &[Generator]) -> Result<Mat, LieError> {
    let m = catalog.len();
    let nn = n * n;
    let mut aug = Mat::zeros(nn, m + nn);
    for (k, g) in catalog.iter().enumerate() {
        for (idx, v) in g.matrix.data().iter().enumerate() {
            aug.set(idx, k, v.clone());
        }
    }
    for idx in 0..nn {
        aug.set(idx, m + idx, int(1));
    }
    let reduced = aug.rref().reduced;
    let mut map = Mat::zeros(m, nn);
    for k in 0..m {
        for idx in 0..nn {
            map.set(k, idx, reduced.get(k, m + idx).clone());
        }
    }
    Ok(map)
}

impl LieAlg {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.catalog.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn catalog(&self) -> &[Generator] {
        &self.catalog
    }

    pub fn symbol(&self, idx: usize) -> GenSymbol {
        self.catalog[idx].symbol
    }

    pub fn index_of(&self, symbol: GenSymbol) -> Option<usize> {
        self.catalog.iter().position(|g| g.symbol == symbol)
    }

    pub fn parse_symbol(&self, text: &str) -> Result<usize, LieError> {
        let sym: GenSymbol = text.parse()?;
        self.index_of(sym)
            .ok_or_else(|| LieError::UnknownSymbol(text.to_string()))
    }

    /// Catalog indices of all `X_b` and `Y_b`.
    pub fn nilpotent_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| self.catalog[k].symbol.is_nilpotent())
            .collect()
    }

    /// Catalog indices of `X` and `Y` at the simple roots; they generate the
    /// algebra under brackets.
    pub fn chevalley_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| match self.catalog[k].symbol {
                GenSymbol::X(r) | GenSymbol::Y(r) => r.is_simple(),
                GenSymbol::H(_) => false,
            })
            .collect()
    }

    pub fn raising_indices(&self) -> Vec<usize> {
        (0..self.positive_roots.len()).collect()
    }

    pub fn lowering_indices(&self) -> Vec<usize> {
        let k = self.positive_roots.len();
        (k..2 * k).collect()
    }

    pub fn cartan_indices(&self) -> Vec<usize> {
        (2 * self.positive_roots.len()..self.dim()).collect()
    }

    /// `H_b = E_ii - E_jj` for an arbitrary positive root.
    pub fn coroot(&self, root: Root) -> Mat {
        let mut h = Mat::zeros(self.n, self.n);
        h.set(root.i - 1, root.i - 1, int(1));
        h.set(root.j - 1, root.j - 1, int(-1));
        h
    }

    /// Catalog coordinates of `m`, or `None` when `m` is not in the algebra.
    pub fn coordinates(&self, m: &Mat) -> Result<Option<Vec<Scalar>>, LieError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(LieError::SizeMismatch(self.n, m.rows()));
        }
        let coords = self.coord_map.mul_vec(m.data())?;
        let mut back = Mat::zeros(self.n, self.n);
        for (c, g) in coords.iter().zip(&self.catalog) {
            back.add_scaled(c, &g.matrix)?;
        }
        Ok((&back == m).then_some(coords))
    }

    /// Sparse coordinates of `[g_a, g_b]`.
    pub fn bracket_coords(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.structure[a][b]
    }

    pub fn label(&self) -> String {
        format!("sl:{}", self.n)
    }
}

pub fn bracket(a: &Mat, b: &Mat) -> Result<Mat, LieError> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(LieError::SizeMismatch(a.rows(), b.rows()));
    }
    Ok(a.commutator(b)?)
}
