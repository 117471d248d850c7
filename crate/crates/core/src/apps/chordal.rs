use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::AppError;
use crate::lie::make_sl;
use crate::linalg::{int, primitive, Mat, Scalar, Subspace};
use crate::orbit::QuadraticIdeal;
use crate::par::Exec;
use crate::rep::{
    combinations, cyclic_dim_lower_bound, cyclic_module_with, derived_rep, functional_matrix,
    isotypic_decomposition_with, standard_rep, Derived, IsotypicDecomposition, Rep, SymSquareElem,
    Weight,
};

const RESAMPLE_CAP: usize = 100;

/// The chordal variety `C^p(Gr^k(Q^n))` inside `P(wedge^k Q^n)`: chords
/// joining two `k`-planes that meet in dimension at least `k - 2p + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalSpec {
    pub n: usize,
    pub k: usize,
    pub p: usize,
}

impl ChordalSpec {
    pub fn new(n: usize, k: usize, p: usize) -> Result<Self, AppError> {
        if k == 0 || k > n {
            return Err(AppError::InvalidSpec(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        if p == 0 {
            return Err(AppError::InvalidSpec("need p >= 1".into()));
        }
        if n < 2 {
            return Err(AppError::InvalidSpec("need n >= 2".into()));
        }
        Ok(ChordalSpec { n, k, p })
    }

    /// `max(k - 2p + 1, 0)`.
    pub fn target_intersection(&self) -> usize {
        (self.k + 1).saturating_sub(2 * self.p)
    }

    /// The intersection dimension actually sampled: two `k`-planes in
    /// `Q^n` always meet in dimension at least `2k - n`.
    pub fn sampled_intersection(&self) -> usize {
        self.target_intersection()
            .max((2 * self.k).saturating_sub(self.n))
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-3i64..=3);
    }
    Scalar::new(num.into(), rng.gen_range(1i64..=3).into())
}

/// Coordinates of `v_1 ^ ... ^ v_k` on the basis `e_I`, `I` in lex order.
fn wedge_coords(n: usize, vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let k = vectors.len();
    combinations(n, k)
        .iter()
        .map(|rows| {
            let minor: Vec<Scalar> = rows
                .iter()
                .flat_map(|&r| vectors.iter().map(move |v| v[r].clone()))
                .collect();
            Mat::from_vec(k, k, minor)
                .expect("k x k")
                .det()
                .expect("square")
        })
        .collect()
}

fn sample_stream(spec: &ChordalSpec, seed: u64, stream: u64) -> Result<Vec<Scalar>, AppError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let (n, k) = (spec.n, spec.k);
    let d = spec.sampled_intersection();
    let total = 2 * k - d;
    for _ in 0..RESAMPLE_CAP {
        let vectors: Vec<Vec<Scalar>> = (0..total)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-3i64..=3))).collect())
            .collect();
        if Mat::from_cols(n, &vectors)?.rank() != total {
            continue;
        }
        let l: Vec<Vec<Scalar>> = vectors[..k].to_vec();
        let m: Vec<Vec<Scalar>> = vectors[..d].iter().chain(&vectors[k..]).cloned().collect();
        let lambda = nonzero_rational(&mut rng);
        let mu = nonzero_rational(&mut rng);
        let wl = wedge_coords(n, &l);
        let wm = wedge_coords(n, &m);
        return Ok(wl
            .iter()
            .zip(&wm)
            .map(|(a, b)| &lambda * a + &mu * b)
            .collect());
    }
    Err(AppError::ResampleCap(RESAMPLE_CAP))
}

/// `lambda (wedge L) + mu (wedge M)` for random integer planes `L`, `M`
/// meeting in dimension exactly [`ChordalSpec::sampled_intersection`].
pub fn chordal_sample(spec: &ChordalSpec, seed: u64) -> Result<Vec<Scalar>, AppError> {
    sample_stream(spec, seed, 0)
}

/// Index `i` of the component `Theta_{2i}` of `S^2(wedge^k Q^n)` with
/// highest weight `omega_{k-2i} + omega_{k+2i}` (Dynkin labels, with
/// `omega_0 = omega_n = 0`).
pub fn theta_index(n: usize, k: usize, w: &Weight) -> Option<usize> {
    let mut i = 0;
    while 2 * i <= k && k + 2 * i <= n {
        let mut labels = vec![0i64; n - 1];
        for pos in [k - 2 * i, k + 2 * i] {
            if pos >= 1 && pos < n {
                labels[pos - 1] += 1;
            }
        }
        if *w == Weight::from_ints(&labels) {
            return Some(i);
        }
        i += 1;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicTag {
    /// `i` for `Theta_{2i}`.
    pub index: Option<usize>,
    pub highest_weight: Weight,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChordalReport {
    pub spec: ChordalSpec,
    pub intersection: usize,
    pub wedge_dim: usize,
    pub sym2_dim: usize,
    pub isotypic: Vec<IsotypicTag>,
    pub budget: usize,
    pub samples_used: usize,
    pub span_dim: usize,
    /// Samples whose closure was not certified modulo a prime and was
    /// recomputed exactly.
    pub exact_closures: usize,
    pub ideal_dim: usize,
    /// `p'` with ideal equal to the sum of `Theta_{2i}` over `i >= p'`.
    pub matched_tail: Option<usize>,
    /// Component positions in `isotypic` forming the matched tail.
    pub tail_components: Vec<usize>,
    #[serde(skip)]
    pub ideal: QuadraticIdeal,
}

/// Quadrics through sampled chords: the span `S` of `U g (xx)` over samples
/// `x`, grown until a sample past the first `samples` adds nothing, and its
/// annihilator.
///
/// `U g (xx)` lies in the sum of the components supporting `xx`. It equals
/// that sum once a closure computed modulo a prime reaches the same
/// dimension; otherwise the closure is computed exactly.
pub fn chordal_ideal(
    spec: &ChordalSpec,
    samples: usize,
    seed: u64,
) -> Result<ChordalReport, AppError> {
    chordal_ideal_with(spec, samples, seed, Exec::default())
}

pub fn chordal_ideal_with(
    spec: &ChordalSpec,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<ChordalReport, AppError> {
    let g = Arc::new(make_sl(spec.n).map_err(crate::rep::RepError::from)?);
    let wedge = derived_rep(&standard_rep(&g), Derived::Wedge(spec.k))?;
    let sym2 = derived_rep(&wedge, Derived::Sym2)?;
    let iso = isotypic_decomposition_with(&sym2, exec)?;
    if !iso.multiplicity_free {
        return Err(AppError::NotMultiplicityFree);
    }
    let isotypic: Vec<IsotypicTag> = iso
        .components
        .iter()
        .map(|c| IsotypicTag {
            index: theta_index(spec.n, spec.k, &c.highest_weight),
            highest_weight: c.highest_weight.clone(),
            dim: c.dim,
        })
        .collect();
    let budget = 4 * sym2.dim();
    let (covered, used, exact_closures) =
        stabilized_span(spec, &sym2, &iso, samples, seed, budget, exec)?;
    let span = iso.sum_of(&covered.into_iter().collect::<Vec<_>>());
    let (matched_tail, tail_components) = match_tail(&iso, &isotypic, &span);
    let coords = span.annihilator();
    let l = wedge.dim();
    let ideal = QuadraticIdeal {
        dim_v: l,
        basis: coords
            .basis_rows()
            .map(|psi| functional_matrix(l, psi))
            .collect(),
        coords,
    };
    Ok(ChordalReport {
        spec: *spec,
        intersection: spec.sampled_intersection(),
        wedge_dim: l,
        sym2_dim: sym2.dim(),
        isotypic,
        budget,
        samples_used: used,
        span_dim: span.dim(),
        exact_closures,
        ideal_dim: ideal.dim(),
        matched_tail,
        tail_components,
        ideal,
    })
}

fn stabilized_span(
    spec: &ChordalSpec,
    sym2: &Rep,
    iso: &IsotypicDecomposition,
    samples: usize,
    seed: u64,
    budget: usize,
    exec: Exec,
) -> Result<(BTreeSet<usize>, usize, usize), AppError> {
    let mut covered = BTreeSet::new();
    let mut exact = 0;
    for j in 0..budget {
        let x = primitive(&sample_stream(spec, seed, j as u64)?);
        let xx = SymSquareElem::square(&x).to_coords();
        let support = iso.support(&xx)?;
        let bound: usize = support.iter().map(|&c| iso.components[c].dim).sum();
        if cyclic_dim_lower_bound(sym2, &xx) != Some(bound) {
            exact += 1;
            let closure = cyclic_module_with(sym2, &[xx], exec)?.dim();
            if closure != bound {
                return Err(AppError::SupportMismatch {
                    closure,
                    support: bound,
                });
            }
        }
        let before = covered.len();
        covered.extend(support);
        if covered.len() == before && j >= samples {
            return Ok((covered, j + 1, exact));
        }
    }
    Err(AppError::NotStabilized {
        budget,
        dim: covered.iter().map(|&c| iso.components[c].dim).sum(),
    })
}

fn match_tail(
    iso: &IsotypicDecomposition,
    tags: &[IsotypicTag],
    span: &Subspace,
) -> (Option<usize>, Vec<usize>) {
    let Some(indices) = tags.iter().map(|t| t.index).collect::<Option<Vec<usize>>>() else {
        return (None, Vec::new());
    };
    let top = indices.iter().copied().max().unwrap_or(0);
    for p in 0..=top + 1 {
        let head: Vec<usize> = (0..tags.len()).filter(|&c| indices[c] < p).collect();
        if &iso.sum_of(&head) == span {
            let tail = (0..tags.len()).filter(|&c| indices[c] >= p).collect();
            return (Some(p), tail);
        }
    }
    (None, Vec::new())
}
