use serde::{Serialize, Serializer};

use super::{OrbitContext, OrbitError};
use crate::lie::GenSymbol;
use crate::linalg::{self, factorial, is_zero_vec, Mat, Scalar, SpanBuilder, Subspace};
use crate::multimatrix::{IndexBox, IndexSpace, MultiMatrix};
use crate::par::Exec;
use crate::rep::{closure_with_words, highest_weight_vectors, Rep, RepError, SymSquareElem};

/// An ordered list of nilpotent generators `D_1..D_r` with the box `N` of
/// exponents that can act nontrivially on `y`.
#[derive(Clone, Debug)]
pub struct GenSeq {
    symbols: Vec<GenSymbol>,
    indices: Vec<usize>,
    grid: IndexBox,
    words_log: Vec<Vec<GenSymbol>>,
}

impl Serialize for GenSeq {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            symbols: Vec<String>,
            #[serde(rename = "N")]
            bounds: &'a [usize],
            words_log: Vec<Vec<String>>,
        }
        Wire {
            symbols: self.symbol_strings(),
            bounds: self.grid.bounds(),
            words_log: self
                .words_log
                .iter()
                .map(|w| w.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl GenSeq {
    /// Validates `symbols` against the span condition for `ctx`.
    pub fn verified(ctx: &OrbitContext, symbols: &[GenSymbol]) -> Result<GenSeq, OrbitError> {
        let indices = indices_of(ctx.rep(), symbols)?;
        let (grid, span) = evaluate(ctx, &indices)?;
        if span.dim() != ctx.module().dim() {
            return Err(OrbitError::SequenceExhausted {
                found: span.dim(),
                target: ctx.module().dim(),
                len: indices.len(),
            });
        }
        Ok(GenSeq {
            symbols: symbols.to_vec(),
            indices,
            grid,
            words_log: Vec::new(),
        })
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.symbols
    }

    pub fn symbol_strings(&self) -> Vec<String> {
        self.symbols.iter().map(|s| s.to_string()).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn grid(&self) -> &IndexBox {
        &self.grid
    }

    /// Closure words `P_i` whose letters formed the extension pool.
    pub fn words_log(&self) -> &[Vec<GenSymbol>] {
        &self.words_log
    }

    /// Catalog indices of `D^n` as a word, applied right to left.
    pub fn word(&self, n: &[usize]) -> Vec<usize> {
        self.indices
            .iter()
            .zip(n)
            .flat_map(|(&d, &e)| std::iter::repeat_n(d, e))
            .collect()
    }
}

fn indices_of(r: &Rep, symbols: &[GenSymbol]) -> Result<Vec<usize>, OrbitError> {
    symbols
        .iter()
        .map(|&s| {
            if !s.is_nilpotent() {
                return Err(OrbitError::Precondition(format!(
                    "{s} is not an X or Y generator"
                )));
            }
            r.algebra().index_of(s).ok_or_else(|| {
                RepError::from(crate::lie::LieError::UnknownSymbol(s.to_string())).into()
            })
        })
        .collect()
}

/// Applies `d` repeatedly to each basis vector, at most `limit` times.
/// Returns the largest exponent with a nonzero image and a basis of the span
/// of all images, including exponent zero.
fn sweep(
    d: &Mat,
    basis: &[Vec<Scalar>],
    limit: Option<usize>,
) -> Result<(usize, Vec<Vec<Scalar>>), OrbitError> {
    let dim = d.rows();
    let mut span = SpanBuilder::new(dim);
    let mut height = 0;
    for v in basis {
        span.insert(v)?;
        let mut cur = v.clone();
        let mut m = 0;
        loop {
            if limit.is_some_and(|l| m >= l) {
                break;
            }
            let next = d.mul_vec(&cur)?;
            if is_zero_vec(&next) {
                break;
            }
            m += 1;
            if m > dim {
                return Err(OrbitError::Precondition(
                    "generator does not act nilpotently".into(),
                ));
            }
            span.insert(&next)?;
            cur = next;
        }
        height = height.max(m);
    }
    Ok((height, span.to_subspace().basis().row_vecs()))
}

fn bound_in(
    r: &Rep,
    indices: &[usize],
    u: &[Scalar],
    caps: super::Caps,
) -> Result<IndexBox, OrbitError> {
    let mut bounds = vec![0; indices.len()];
    if !is_zero_vec(u) {
        let mut basis = vec![u.to_vec()];
        for s in (0..indices.len()).rev() {
            let (h, next) = sweep(r.action(indices[s]), &basis, None)?;
            bounds[s] = h;
            basis = next;
        }
    }
    match IndexBox::checked_size(&bounds) {
        Some(size) if size <= caps.max_box => Ok(IndexBox::new(bounds)?),
        size => Err(OrbitError::BoxCap {
            size: size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
            cap: caps.max_box,
        }),
    }
}

/// The smallest box `N` with `D^m u = 0` for every exponent `m` outside it,
/// built axis by axis from the innermost generator `D_r`.
pub fn nilpotency_bound(
    r: &Rep,
    d: &[GenSymbol],
    u: &[Scalar],
    caps: super::Caps,
) -> Result<IndexBox, OrbitError> {
    let indices = indices_of(r, d)?;
    super::check_len(r, u, "u")?;
    bound_in(r, &indices, u, caps)
}

/// `span{D^n v : n in grid}`, computed level by level.
fn monomial_span(
    r: &Rep,
    indices: &[usize],
    grid: &IndexBox,
    v: &[Scalar],
) -> Result<Subspace, OrbitError> {
    let mut basis = vec![v.to_vec()];
    if is_zero_vec(v) {
        return Ok(Subspace::zero(r.dim()));
    }
    for s in (0..indices.len()).rev() {
        basis = sweep(r.action(indices[s]), &basis, Some(grid.bounds()[s]))?.1;
    }
    Ok(Subspace::span(r.dim(), basis)?)
}

fn evaluate(ctx: &OrbitContext, indices: &[usize]) -> Result<(IndexBox, Subspace), OrbitError> {
    let grid = bound_in(ctx.rep(), indices, ctx.y(), ctx.caps())?;
    let span = monomial_span(ctx.sym2(), indices, &grid.doubled()?, ctx.yy())?;
    debug_assert!(ctx.module().contains_subspace(&span).unwrap_or(false));
    Ok((grid, span))
}

/// Finds `D` and `N` with `D^m y = 0` outside `N` and
/// `span{D^n (yy) : n in 2N} = U g (yy)`.
///
/// Starts from all `Y_beta` in root order. If that span is too small, the
/// highest weight vectors `p_i` of the orbit module are written through
/// closure words `P_i (yy)`, and letters from those words are appended one at
/// a time, each time picking the letter with the largest resulting span.
pub fn generator_sequence(ctx: &OrbitContext) -> Result<GenSeq, OrbitError> {
    let g = ctx.rep().algebra().clone();
    let target = ctx.module().dim();
    let mut indices = g.lowering_indices();
    let (mut grid, span) = evaluate(ctx, &indices)?;
    let mut found = span.dim();
    let mut words_log = Vec::new();
    if found < target {
        let (pool, words) = extension_pool(ctx)?;
        words_log = words;
        while found < target {
            if indices.len() >= ctx.caps().max_seq_len {
                return Err(OrbitError::SequenceExhausted {
                    found,
                    target,
                    len: indices.len(),
                });
            }
            let candidates: Vec<usize> = pool
                .iter()
                .copied()
                .filter(|&c| indices.last() != Some(&c))
                .collect();
            let results = ctx.exec().map_slice(&candidates, |&c| {
                let mut trial = indices.clone();
                trial.push(c);
                evaluate(ctx, &trial)
            });
            let mut best: Option<(usize, IndexBox, usize)> = None;
            for (&c, res) in candidates.iter().zip(results) {
                match res {
                    Ok((gr, sp)) => {
                        if best.as_ref().is_none_or(|b| sp.dim() > b.2) {
                            best = Some((c, gr, sp.dim()));
                        }
                    }
                    Err(e) if e.is_cap() => {}
                    Err(e) => return Err(e),
                }
            }
            let Some((c, gr, dim)) = best else {
                return Err(OrbitError::SequenceExhausted {
                    found,
                    target,
                    len: indices.len(),
                });
            };
            indices.push(c);
            grid = gr;
            found = dim;
        }
    }
    Ok(GenSeq {
        symbols: indices.iter().map(|&i| g.symbol(i)).collect(),
        indices,
        grid,
        words_log,
    })
}

/// Letters of the closure words expressing the highest weight vectors of the
/// orbit module, in order of first appearance, together with those words.
fn extension_pool(ctx: &OrbitContext) -> Result<(Vec<usize>, Vec<Vec<GenSymbol>>), OrbitError> {
    let g = ctx.rep().algebra();
    let closure = closure_with_words(
        ctx.sym2(),
        &g.nilpotent_indices(),
        &[ctx.yy().to_vec()],
        ctx.exec(),
    )?;
    let columns: Vec<Vec<Scalar>> = closure.vectors().cloned().collect();
    let basis = Mat::from_cols(ctx.sym2().dim(), &columns)?;
    let mut used = vec![false; columns.len()];
    for ws in highest_weight_vectors(ctx.sym2())? {
        let inside = ws.space.intersect(ctx.module())?;
        for p in inside.basis_rows() {
            let coeffs = basis.solve(p)?.ok_or_else(|| {
                OrbitError::Inconsistent("highest weight vector outside the closure".into())
            })?;
            for (k, c) in coeffs.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    used[k] = true;
                }
            }
        }
    }
    let mut pool = Vec::new();
    let mut words = Vec::new();
    for (k, (word, _, _)) in closure.log.iter().enumerate() {
        if !used[k] || word.is_empty() {
            continue;
        }
        for &letter in word.iter().rev() {
            if !pool.contains(&letter) {
                pool.push(letter);
            }
        }
        words.push(word.iter().map(|&i| g.symbol(i)).collect());
    }
    if pool.is_empty() {
        pool = g.nilpotent_indices();
    }
    Ok((pool, words))
}

/// Images `D^i v` for every `i` in `grid`, in box order, without factorials.
pub fn monomial_images(
    r: &Rep,
    indices: &[usize],
    grid: &IndexBox,
    v: &[Scalar],
) -> Result<Vec<Vec<Scalar>>, OrbitError> {
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(grid.len());
    for (pos, idx) in grid.iter().enumerate() {
        let Some(s) = idx.iter().position(|&e| e > 0) else {
            out.push(v.to_vec());
            continue;
        };
        let mut prev = idx.clone();
        prev[s] -= 1;
        let p = grid.position(&prev).expect("predecessor inside the box");
        debug_assert!(p < pos);
        let img = if is_zero_vec(&out[p]) {
            out[p].clone()
        } else {
            r.action(indices[s]).mul_vec(&out[p])?
        };
        out.push(img);
    }
    Ok(out)
}

fn multi_factorial(idx: &[usize]) -> Scalar {
    idx.iter().map(|&e| factorial(e)).product()
}

/// The `l x N` multi-matrix whose column `i` is `D^i y / i!`.
pub fn build_a(ctx: &OrbitContext, gs: &GenSeq) -> Result<MultiMatrix, OrbitError> {
    let images = monomial_images(ctx.rep(), &gs.indices, &gs.grid, ctx.y())?;
    let cols: Vec<Vec<Scalar>> = images
        .into_iter()
        .zip(gs.grid.iter())
        .map(|(v, idx)| linalg::scale_vec(&v, &(linalg::one() / multi_factorial(&idx))))
        .collect();
    let data = Mat::from_cols(ctx.rep().dim(), &cols)?;
    Ok(MultiMatrix::new(
        IndexSpace::Plain(ctx.rep().dim()),
        IndexSpace::Grid(gs.grid.clone()),
        data,
    )?)
}

/// `D^n (yy) / n! = sum_{i+j=n} (D^i y / i!) (D^j y / j!)`, both sides
/// computed by applying words directly.
pub fn leibniz_check(ctx: &OrbitContext, gs: &GenSeq, n: &[usize]) -> Result<bool, OrbitError> {
    let doubled = gs.grid.doubled()?;
    if !doubled.contains(n) {
        return Err(OrbitError::Precondition(format!(
            "{n:?} is outside the doubled box"
        )));
    }
    let lhs = ctx.sym2().apply_indices(&gs.word(n), ctx.yy())?;
    let lhs = linalg::scale_vec(&lhs, &(linalg::one() / multi_factorial(n)));
    let sub = IndexBox::new(n.to_vec())?;
    let mut rhs = SymSquareElem::zero(ctx.rep().dim());
    for i in sub.iter() {
        let j: Vec<usize> = n.iter().zip(&i).map(|(a, b)| a - b).collect();
        let di = ctx.rep().apply_indices(&gs.word(&i), ctx.y())?;
        let dj = ctx.rep().apply_indices(&gs.word(&j), ctx.y())?;
        if is_zero_vec(&di) || is_zero_vec(&dj) {
            continue;
        }
        let c = linalg::one() / (multi_factorial(&i) * multi_factorial(&j));
        rhs.add_product(&c, &di, &dj);
    }
    Ok(lhs == rhs.to_coords())
}

/// Leibniz identity for many `n` at once, sharing the images of `y` and `yy`.
pub(crate) fn leibniz_batch(
    ctx: &OrbitContext,
    gs: &GenSeq,
    ns: &[Vec<usize>],
    exec: Exec,
) -> Result<Vec<bool>, OrbitError> {
    let doubled = gs.grid.doubled()?;
    let y_images = monomial_images(ctx.rep(), &gs.indices, &doubled, ctx.y())?;
    let results = exec.map_slice(ns, |n| -> Result<bool, OrbitError> {
        let lhs = ctx.sym2().apply_indices(&gs.word(n), ctx.yy())?;
        let lhs = linalg::scale_vec(&lhs, &(linalg::one() / multi_factorial(n)));
        let mut rhs = SymSquareElem::zero(ctx.rep().dim());
        for i in IndexBox::new(n.clone())?.iter() {
            let j: Vec<usize> = n.iter().zip(&i).map(|(a, b)| a - b).collect();
            let di = &y_images[doubled.position(&i).expect("i <= n")];
            let dj = &y_images[doubled.position(&j).expect("j <= n")];
            if is_zero_vec(di) || is_zero_vec(dj) {
                continue;
            }
            let c = linalg::one() / (multi_factorial(&i) * multi_factorial(&j));
            rhs.add_product(&c, di, dj);
        }
        Ok(lhs == rhs.to_coords())
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::rep;
    use super::*;
    use crate::lie::Root;
    use crate::linalg::{int, ints};

    fn y_sym(n: usize) -> Vec<Scalar> {
        let mut v = vec![int(0); n];
        v[0] = int(1);
        v
    }

    #[test]
    fn nilpotency_examples() {
        let caps = super::super::Caps::default();
        let y = GenSymbol::Y(Root { i: 1, j: 2 });
        let x = GenSymbol::X(Root { i: 1, j: 2 });
        let s3 = rep(2, "sym(3,std)");
        assert_eq!(
            nilpotency_bound(&s3, &[y], &y_sym(4), caps)
                .unwrap()
                .bounds(),
            &[3]
        );
        assert_eq!(
            nilpotency_bound(&s3, &[y, x], &ints(&[0; 4]), caps)
                .unwrap()
                .bounds(),
            &[0, 0]
        );
        let v = rep(2, "std");
        let grid = nilpotency_bound(&v, &[y, x], &ints(&[1, 0]), caps).unwrap();
        assert_eq!(grid.bounds(), &[1, 0]);
        for j in 0..2 {
            let mut e = grid.bounds().to_vec();
            e[j] += 1;
            let word: Vec<usize> = [y, x]
                .iter()
                .zip(&e)
                .flat_map(|(s, &k)| std::iter::repeat_n(v.algebra().index_of(*s).unwrap(), k))
                .collect();
            assert!(is_zero_vec(
                &v.apply_indices(&word, &ints(&[1, 0])).unwrap()
            ));
        }
        let h = GenSymbol::H(1);
        assert!(nilpotency_bound(&v, &[h], &ints(&[1, 0]), caps).is_err());
        let tiny = super::super::Caps {
            max_box: 3,
            max_seq_len: 40,
        };
        assert!(matches!(
            nilpotency_bound(&s3, &[y], &y_sym(4), tiny),
            Err(OrbitError::BoxCap { .. })
        ));
    }

    #[test]
    fn highest_weight_sequences() {
        for (expr, dim, n, span) in [("sym(3,std)", 4, 3, 7), ("sym(2,std)", 3, 2, 5)] {
            let ctx = OrbitContext::new(&rep(2, expr), &y_sym(dim)).unwrap();
            let gs = generator_sequence(&ctx).unwrap();
            assert_eq!(gs.symbol_strings(), vec!["Y(1,2)"]);
            assert_eq!(gs.grid().bounds(), &[n]);
            assert_eq!(ctx.module().dim(), span);
        }
        let ctx = OrbitContext::new(&rep(4, "wedge(2,std)"), &y_sym(6)).unwrap();
        let gs = generator_sequence(&ctx).unwrap();
        assert_eq!(
            &gs.symbol_strings()[..6],
            &["Y(1,2)", "Y(1,3)", "Y(1,4)", "Y(2,3)", "Y(2,4)", "Y(3,4)"]
        );
        assert_eq!(ctx.module().dim(), 20);
    }

    #[test]
    fn non_highest_weight_sequence() {
        let ctx = OrbitContext::new(&rep(2, "sym(4,std)"), &ints(&[1, -2, 3, 1, 2])).unwrap();
        let gs = generator_sequence(&ctx).unwrap();
        assert!(gs.symbols().len() > 1);
        let again = GenSeq::verified(&ctx, gs.symbols()).unwrap();
        assert_eq!(again.grid(), gs.grid());
    }

    #[test]
    fn matrix_a_for_twisted_cubic() {
        let ctx = OrbitContext::new(&rep(2, "sym(3,std)"), &y_sym(4)).unwrap();
        let gs = generator_sequence(&ctx).unwrap();
        let a = build_a(&ctx, &gs).unwrap();
        assert_eq!(a.data.col(0), y_sym(4));
        assert_eq!(a.data.rank(), 4);
        // Y x^3 = 3 x^2 z, so column i is binom(3, i) e_i.
        let expected = Mat::from_i64(&[&[1, 0, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 1]]);
        assert_eq!(a.data, expected);
    }

    #[test]
    fn leibniz_examples() {
        let ctx = OrbitContext::new(&rep(2, "sym(2,std)"), &y_sym(3)).unwrap();
        let gs = generator_sequence(&ctx).unwrap();
        for n in 0..=4 {
            assert!(leibniz_check(&ctx, &gs, &[n]).unwrap());
        }
        assert!(leibniz_check(&ctx, &gs, &[5]).is_err());
        let ns: Vec<Vec<usize>> = (0..=4).map(|n| vec![n]).collect();
        assert!(leibniz_batch(&ctx, &gs, &ns, Exec::Sequential)
            .unwrap()
            .iter()
            .all(|&b| b));
    }
}
