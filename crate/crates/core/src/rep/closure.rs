use serde::Serialize;

use super::{highest_weight_vectors, Rep, RepError, Weight};
use crate::linalg::modp::{reduce_vec, ModMat, ModSpan};
use crate::linalg::{is_zero_vec, LinalgError, Mat, Scalar, SpanBuilder, Subspace};
use crate::par::Exec;

/// Invariant span grown breadth-first from seed vectors, with the generator
/// word that produced each accepted vector.
#[derive(Clone, Debug)]
pub struct Closure {
    pub span: Subspace,
    /// `(word, vector)` with `vector = word(seed)`; words read right to left
    /// and index the algebra catalog. Seeds carry the empty word.
    pub log: Vec<(Vec<usize>, usize, Vec<Scalar>)>,
}

impl Closure {
    /// Accepted vectors; they form a basis of `span`.
    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.log.iter().map(|(_, _, v)| v)
    }
}

/// Closure of `seeds` under the given catalog generators. Each round applies
/// every generator to every vector accepted in the previous round and keeps
/// the images that enlarge the span, in a fixed order.
pub fn closure_with_words(
    r: &Rep,
    generators: &[usize],
    seeds: &[Vec<Scalar>],
    exec: Exec,
) -> Result<Closure, RepError> {
    let mut span = SpanBuilder::new(r.dim());
    let log = grow(r, generators, &mut span, seeds, exec)?;
    Ok(Closure {
        span: span.to_subspace(),
        log,
    })
}

/// Enlarges `span`, assumed invariant, to the smallest invariant span that
/// also contains `seed`. Returns whether it grew.
pub fn grow_invariant_span(
    r: &Rep,
    span: &mut SpanBuilder,
    seed: &[Scalar],
    exec: Exec,
) -> Result<bool, RepError> {
    let gens = r.algebra().chevalley_indices();
    Ok(!grow(r, &gens, span, std::slice::from_ref(&seed.to_vec()), exec)?.is_empty())
}

type Log = Vec<(Vec<usize>, usize, Vec<Scalar>)>;

fn grow(
    r: &Rep,
    generators: &[usize],
    span: &mut SpanBuilder,
    seeds: &[Vec<Scalar>],
    exec: Exec,
) -> Result<Log, RepError> {
    let mut log: Log = Vec::new();
    let mut frontier = Vec::new();
    for (s, seed) in seeds.iter().enumerate() {
        if span.insert(seed)? {
            frontier.push(log.len());
            log.push((Vec::new(), s, seed.clone()));
        }
    }
    while !frontier.is_empty() && span.dim() < r.dim() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&f| generators.iter().map(move |&g| (f, g)))
            .collect();
        let reducer = &*span;
        let images = exec.map_slice(&jobs, |&(f, g)| {
            let image = r.action(g).mul_vec(&log[f].2)?;
            let mut rest = image.clone();
            reducer.reduce(&mut rest);
            Ok::<_, LinalgError>((!is_zero_vec(&rest)).then_some((image, rest)))
        });
        let mut next = Vec::new();
        for (&(f, g), image) in jobs.iter().zip(images) {
            let Some((image, rest)) = image? else {
                continue;
            };
            if span.insert_reduced(rest) {
                let mut word = Vec::with_capacity(log[f].0.len() + 1);
                word.push(g);
                word.extend_from_slice(&log[f].0);
                next.push(log.len());
                log.push((word, log[f].1, image));
                if span.dim() == r.dim() {
                    break;
                }
            }
        }
        frontier = next;
    }
    Ok(log)
}

/// Dimension of the Chevalley closure of `seed` computed over `F_p`. It never
/// exceeds the dimension of [`cyclic_module`]; `None` when some denominator is
/// divisible by `p`.
pub fn cyclic_dim_lower_bound(r: &Rep, seed: &[Scalar]) -> Option<usize> {
    let gens: Vec<ModMat> = r
        .algebra()
        .chevalley_indices()
        .into_iter()
        .map(|g| ModMat::reduce(r.action(g)))
        .collect::<Option<_>>()?;
    let mut span = ModSpan::new(r.dim());
    let seed = reduce_vec(seed)?;
    if !span.insert(&seed) {
        return Some(0);
    }
    let mut frontier = vec![seed];
    while !frontier.is_empty() && span.dim() < r.dim() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &gens {
                let image = g.mul_vec(v);
                if span.insert(&image) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    Some(span.dim())
}

/// Smallest submodule containing `w`, closed under the Chevalley generators.
pub fn cyclic_module(r: &Rep, w: &[Scalar]) -> Result<Subspace, RepError> {
    cyclic_module_with(r, std::slice::from_ref(&w.to_vec()), Exec::default())
}

pub(crate) fn cyclic_module_with(
    r: &Rep,
    seeds: &[Vec<Scalar>],
    exec: Exec,
) -> Result<Subspace, RepError> {
    for s in seeds {
        if s.len() != r.dim() {
            return Err(LinalgError::DimensionMismatch {
                op: "cyclic_module",
                expected: r.dim(),
                found: s.len(),
            }
            .into());
        }
    }
    let gens = r.algebra().chevalley_indices();
    Ok(closure_with_words(r, &gens, seeds, exec)?.span)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicComponent {
    pub highest_weight: Weight,
    pub multiplicity: usize,
    pub dim: usize,
    #[serde(skip)]
    pub space: Subspace,
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub components: Vec<IsotypicComponent>,
    pub multiplicity_free: bool,
    /// Inverse of the matrix whose columns are the concatenated component bases.
    coords: Mat,
}

impl IsotypicDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim).collect()
    }

    /// Coordinates of `v` in each component's basis.
    pub fn split(&self, v: &[Scalar]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        let all = self.coords.mul_vec(v)?;
        let mut out = Vec::with_capacity(self.components.len());
        let mut offset = 0;
        for c in &self.components {
            out.push(all[offset..offset + c.dim].to_vec());
            offset += c.dim;
        }
        Ok(out)
    }

    /// Projections of `v` onto each component, in ambient coordinates.
    pub fn projections(&self, v: &[Scalar]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        Ok(self
            .split(v)?
            .into_iter()
            .zip(&self.components)
            .map(|(c, comp)| comp.space.combination(&c))
            .collect())
    }

    /// Indices of components where `v` has a nonzero projection.
    pub fn support(&self, v: &[Scalar]) -> Result<Vec<usize>, LinalgError> {
        Ok(self
            .split(v)?
            .iter()
            .enumerate()
            .filter(|(_, c)| !is_zero_vec(c))
            .map(|(i, _)| i)
            .collect())
    }

    /// Direct sum of the selected components.
    pub fn sum_of(&self, indices: &[usize]) -> Subspace {
        let ambient = self.coords.rows();
        let rows = indices
            .iter()
            .flat_map(|&i| self.components[i].space.basis().row_vecs());
        Subspace::span(ambient, rows).expect("component bases share the ambient space")
    }
}

/// One component per highest weight, largest first (ties by weight). A
/// failure to exhaust the module aborts, since sl(n)-modules are semisimple.
pub fn isotypic_decomposition(r: &Rep) -> Result<IsotypicDecomposition, RepError> {
    isotypic_decomposition_with(r, Exec::default())
}

pub fn isotypic_decomposition_with(r: &Rep, exec: Exec) -> Result<IsotypicDecomposition, RepError> {
    let hws = highest_weight_vectors(r)?;
    let modules = exec.map_slice(&hws, |ws| {
        cyclic_module_with(r, &ws.space.basis().row_vecs(), Exec::Sequential)
    });
    let mut components = Vec::with_capacity(hws.len());
    for (ws, space) in hws.into_iter().zip(modules) {
        let space = space?;
        components.push(IsotypicComponent {
            highest_weight: ws.weight,
            multiplicity: ws.space.dim(),
            dim: space.dim(),
            space,
        });
    }
    components.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| b.highest_weight.cmp(&a.highest_weight))
    });
    let columns: Vec<Vec<Scalar>> = components
        .iter()
        .flat_map(|c| c.space.basis().row_vecs())
        .collect();
    let total = Subspace::span(r.dim(), columns.clone())?.dim();
    if columns.len() != r.dim() || total != r.dim() {
        return Err(RepError::NotExhausted {
            found: total,
            dim: r.dim(),
        });
    }
    let basis = Mat::from_cols(r.dim(), &columns)?;
    let identity: Vec<Vec<Scalar>> = Mat::identity(r.dim()).row_vecs();
    let inverse_cols: Vec<Vec<Scalar>> = basis
        .solve_many(&identity)?
        .into_iter()
        .map(|c| c.expect("basis matrix is invertible"))
        .collect();
    let coords = Mat::from_cols(r.dim(), &inverse_cols)?;
    let multiplicity_free = components.iter().all(|c| c.multiplicity == 1);
    Ok(IsotypicDecomposition {
        components,
        multiplicity_free,
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::make_sl;
    use crate::linalg::{int, ints};
    use crate::rep::{derived_rep, standard_rep, Derived, SymSquareElem};
    use std::sync::Arc;

    fn sl2_std() -> Rep {
        standard_rep(&Arc::new(make_sl(2).unwrap()))
    }

    #[test]
    fn cyclic_basic_cases() {
        let v = sl2_std();
        assert_eq!(cyclic_module(&v, &ints(&[0, 0])).unwrap().dim(), 0);
        assert_eq!(cyclic_module(&v, &ints(&[1, 0])).unwrap().dim(), 2);
        let s2 = derived_rep(&v, Derived::Sym(2)).unwrap();
        let ss = derived_rep(&s2, Derived::Sym2).unwrap();
        let yy = SymSquareElem::square(&ints(&[1, 0, 0])).to_coords();
        let m = cyclic_module(&ss, &yy).unwrap();
        assert_eq!(m.dim(), 5);
        for g in 0..3 {
            for row in m.basis_rows() {
                assert!(m.contains(&ss.action(g).mul_vec(row).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn words_reproduce_vectors() {
        let v = sl2_std();
        let s3 = derived_rep(&v, Derived::Sym(3)).unwrap();
        let seed = ints(&[1, 2, 0, -1]);
        let c = closure_with_words(&s3, &[0, 1], std::slice::from_ref(&seed), Exec::Sequential)
            .unwrap();
        for (word, _, vec) in &c.log {
            assert_eq!(&s3.apply_indices(word, &seed).unwrap(), vec);
        }
        assert_eq!(c.span.dim(), 4);
    }

    #[test]
    fn modular_bound_matches_exact_dims() {
        let v = sl2_std();
        let s3 = derived_rep(&v, Derived::Sym(3)).unwrap();
        let ss = derived_rep(&s3, Derived::Sym2).unwrap();
        for seed in [
            ints(&[1, 0, 0, 0]),
            ints(&[0, 1, 0, 0]),
            ints(&[1, 2, 0, -1]),
        ] {
            let yy = SymSquareElem::square(&seed).to_coords();
            let exact = cyclic_module(&ss, &yy).unwrap().dim();
            assert_eq!(cyclic_dim_lower_bound(&ss, &yy), Some(exact));
        }
        assert_eq!(cyclic_dim_lower_bound(&ss, &vec![int(0); 10]), Some(0));
    }

    #[test]
    fn isotypic_small_cases() {
        let v = sl2_std();
        let vv = derived_rep(&v, Derived::Tensor(&v)).unwrap();
        let iso = isotypic_decomposition(&vv).unwrap();
        assert_eq!(iso.dims(), vec![3, 1]);
        assert!(iso.multiplicity_free);
        let s3 = derived_rep(&v, Derived::Sym(3)).unwrap();
        let ss = derived_rep(&s3, Derived::Sym2).unwrap();
        let iso = isotypic_decomposition(&ss).unwrap();
        assert_eq!(iso.dims(), vec![7, 3]);
        let w = ints(&[1, 0, 2, 0, 0, 3, 1, 0, 0, 5]);
        let parts = iso.projections(&w).unwrap();
        let mut back = vec![int(0); 10];
        for p in &parts {
            crate::linalg::axpy(&mut back, &int(1), p);
        }
        assert_eq!(back, w);
    }

    #[test]
    fn isotypic_with_multiplicity() {
        // std (x) std (x) std of sl2 = V3 + 2 V1.
        let v = sl2_std();
        let vv = derived_rep(&v, Derived::Tensor(&v)).unwrap();
        let vvv = derived_rep(&vv, Derived::Tensor(&v)).unwrap();
        let iso = isotypic_decomposition(&vvv).unwrap();
        assert_eq!(iso.dims(), vec![4, 4]);
        assert_eq!(iso.components[1].multiplicity, 2);
        assert!(!iso.multiplicity_free);
    }
}
