use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::correspond::{HyperplaneStatus, Pipeline, Rank1Direction, Rank1Outcome};
use super::decompose::decompose_q;
use super::genseq::leibniz_batch;
use super::{OrbitContext, OrbitError};
use crate::linalg::{self, int, Mat, Scalar, Subspace};
use crate::multimatrix::MultiVector;
use crate::rep::{exp_nilpotent, sym_dim, Rep};

/// Largest doubled box on which the Leibniz identity is checked exhaustively.
const LEIBNIZ_EXHAUSTIVE: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Discrepancy,
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub v: usize,
    pub sym2: usize,
    pub orbit_module: usize,
    pub ideal: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub leibniz_checked: usize,
    pub leibniz_passed: usize,
    pub decompose_trials: usize,
    pub decompose_passes: usize,
    pub hyperplane_trials: usize,
    pub hyperplane_good: usize,
    pub hyperplane_full: usize,
    pub hyperplane_smaller: usize,
    pub forward_trials: usize,
    pub forward_passes: usize,
    pub forward_rank0: usize,
    pub forward_skipped: usize,
    pub reverse_trials: usize,
    pub reverse_passes: usize,
    pub extension_trials: usize,
    pub extension_passes: usize,
}

/// A failed structural check with the exact data that exhibits it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub trial: usize,
    pub detail: String,
    #[serde(with = "linalg::serde_scalar::vec2")]
    pub vectors: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub algebra: String,
    pub rep: String,
    #[serde(with = "linalg::serde_scalar::vec")]
    pub y: Vec<Scalar>,
    pub seed: u64,
    pub trials: usize,
    pub dims: Dims,
    pub rank_a: usize,
    #[serde(rename = "N")]
    pub bounds: Vec<usize>,
    pub sequence: Vec<String>,
    pub counts: Counts,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Copy)]
enum Phase {
    Leibniz = 1,
    Decompose,
    Hyperplane,
    Forward,
    Reverse,
    Extension,
}

fn rng_for(seed: u64, phase: Phase, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((phase as u64) << 40) | trial as u64);
    rng
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(
        rng.gen_range(-5i64..=5).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

/// A point `exp(t_1 D_1) ... exp(t_k D_k) y` with `k <= 4` and
/// `t_i` in `{-2, -1, 1, 2}`.
pub(crate) fn orbit_sample(
    r: &Rep,
    y: &[Scalar],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Scalar>, OrbitError> {
    let letters = r.algebra().nilpotent_indices();
    let k = rng.gen_range(1..=4);
    let mut x = y.to_vec();
    for _ in 0..k {
        let d = *letters.choose(rng).expect("sl(n) has root vectors");
        let t = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        x = exp_nilpotent(r, d, &int(t))?.mul_vec(&x)?;
    }
    Ok(x)
}

/// The orbit point drawn by reverse trial `trial` of a run with `seed`.
pub fn sample_orbit_point(
    r: &Rep,
    y: &[Scalar],
    seed: u64,
    trial: usize,
) -> Result<Vec<Scalar>, OrbitError> {
    orbit_sample(r, y, &mut rng_for(seed, Phase::Reverse, trial))
}

/// The point-evaluation hyperplane drawn by forward trial `trial` of a run
/// with `seed`, or `None` when the drawn evaluation vanishes on `im A^t`.
pub fn sample_evaluation_hyperplane(
    p: &Pipeline,
    seed: u64,
    trial: usize,
) -> Result<Option<Subspace>, OrbitError> {
    evaluation_hyperplane(p, &mut rng_for(seed, Phase::Forward, trial))
}

pub fn certify_irreducibility(
    r: &Rep,
    y: &[Scalar],
    trials: usize,
    seed: u64,
) -> Result<CertReport, OrbitError> {
    certify_with(OrbitContext::new(r, y)?, trials, seed)
}

/// Runs the full pipeline for one `(V, y)`. Each trial is a pure function of
/// the shared artifacts, the seed, its phase and its index.
pub fn certify_with(ctx: OrbitContext, trials: usize, seed: u64) -> Result<CertReport, OrbitError> {
    let exec = ctx.exec();
    let dims = Dims {
        v: ctx.rep().dim(),
        sym2: sym_dim(ctx.rep().dim()),
        orbit_module: ctx.module().dim(),
        ideal: sym_dim(ctx.rep().dim()) - ctx.module().dim(),
    };
    let p = Pipeline::new(ctx)?;
    let grid = p.gs().grid().clone();
    let doubled = grid.doubled()?;
    let mut counts = Counts::default();
    let mut witnesses = Vec::new();

    // Leibniz identity.
    let ns: Vec<Vec<usize>> = if doubled.len() <= LEIBNIZ_EXHAUSTIVE {
        doubled.iter().collect()
    } else {
        (0..trials)
            .map(|i| {
                let mut rng = rng_for(seed, Phase::Leibniz, i);
                doubled
                    .bounds()
                    .iter()
                    .map(|&b| rng.gen_range(0..=b))
                    .collect()
            })
            .collect()
    };
    for (n, ok) in ns.iter().zip(leibniz_batch(p.ctx(), p.gs(), &ns, exec)?) {
        counts.leibniz_checked += 1;
        if ok {
            counts.leibniz_passed += 1;
        } else {
            witnesses.push(Witness {
                check: "leibniz".into(),
                trial: counts.leibniz_checked - 1,
                detail: format!("n = {n:?}"),
                vectors: vec![],
            });
        }
    }

    // Decomposition of random words applied to yy.
    let sys = p.cat_system()?;
    let catalog = p.ctx().rep().algebra().dim();
    let results = exec.map_range(trials, |i| {
        let mut rng = rng_for(seed, Phase::Decompose, i);
        let len = rng.gen_range(0..=4);
        let word: Vec<_> = (0..len)
            .map(|_| p.ctx().rep().algebra().symbol(rng.gen_range(0..catalog)))
            .collect();
        let res = decompose_q(p.ctx(), p.a(), sys, &word);
        (word, res)
    });
    for (i, (word, res)) in results.into_iter().enumerate() {
        counts.decompose_trials += 1;
        match res {
            Ok(_) => counts.decompose_passes += 1,
            Err(e) => witnesses.push(Witness {
                check: "decompose".into(),
                trial: i,
                detail: format!(
                    "word {}: {e}",
                    word.iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                vectors: vec![],
            }),
        }
    }

    // Uniformly drawn hyperplanes of im A^t: the ledger of the hyperplane property.
    let r = p.row_image().clone();
    let results = exec.map_range(trials, |i| -> Result<_, OrbitError> {
        let mut rng = rng_for(seed, Phase::Hyperplane, i);
        let w = random_hyperplane(&r, &mut rng)?;
        let status = p.hyperplane_status(&w)?;
        let outcome = if status == HyperplaneStatus::Hyperplane {
            let v = p.complement_vector(&w)?;
            Some(p.correspond(&Rank1Direction::Forward { w, v }))
        } else {
            None
        };
        Ok((status, outcome))
    });
    let mut forward = Vec::new();
    for res in results {
        let (status, outcome) = res?;
        counts.hyperplane_trials += 1;
        match status {
            HyperplaneStatus::Hyperplane => counts.hyperplane_good += 1,
            HyperplaneStatus::Full => counts.hyperplane_full += 1,
            HyperplaneStatus::Smaller(_) => counts.hyperplane_smaller += 1,
        }
        forward.extend(outcome);
    }

    // Kernels of point evaluations f -> f(t).
    let results = exec.map_range(trials, |i| -> Result<_, OrbitError> {
        let mut rng = rng_for(seed, Phase::Forward, i);
        let Some(w) = evaluation_hyperplane(&p, &mut rng)? else {
            return Ok(None);
        };
        if p.hyperplane_status(&w)? != HyperplaneStatus::Hyperplane {
            return Ok(None);
        }
        let v = p.complement_vector(&w)?;
        Ok(Some(p.correspond(&Rank1Direction::Forward { w, v })))
    });
    for res in results {
        match res? {
            Some(outcome) => forward.push(outcome),
            None => counts.forward_skipped += 1,
        }
    }
    for (i, outcome) in forward.into_iter().enumerate() {
        counts.forward_trials += 1;
        match outcome {
            Ok(o) if o.consistent() => {
                counts.forward_passes += 1;
                if let Rank1Outcome::Forward { rank: 0, .. } = o {
                    counts.forward_rank0 += 1;
                }
            }
            Ok(o) => {
                let Rank1Outcome::Forward {
                    b, rank, factor, ..
                } = o
                else {
                    unreachable!()
                };
                let mut vectors = vec![b.data];
                vectors.extend(factor);
                witnesses.push(Witness {
                    check: "forward".into(),
                    trial: i,
                    detail: format!("rank {rank}"),
                    vectors,
                });
            }
            Err(e) => witnesses.push(Witness {
                check: "forward".into(),
                trial: i,
                detail: e.to_string(),
                vectors: vec![],
            }),
        }
    }

    // Orbit samples.
    let results = exec.map_range(trials, |i| -> Result<_, OrbitError> {
        let mut rng = rng_for(seed, Phase::Reverse, i);
        let x = orbit_sample(p.ctx().rep(), p.ctx().y(), &mut rng)?;
        let out = p.correspond(&Rank1Direction::Reverse { x: x.clone() })?;
        Ok((x, out))
    });
    for (i, res) in results.into_iter().enumerate() {
        let (x, out) = res?;
        counts.reverse_trials += 1;
        if out.consistent() {
            counts.reverse_passes += 1;
        } else {
            witnesses.push(Witness {
                check: "reverse".into(),
                trial: i,
                detail: "orbit point without an exact catalecticant preimage".into(),
                vectors: vec![x],
            });
        }
    }

    // Perturbations of b orthogonal to mu(R . R).
    let results = exec.map_range(2 * trials, |i| -> Result<_, OrbitError> {
        let mut rng = rng_for(seed, Phase::Extension, i);
        let b = MultiVector::new(
            doubled.clone(),
            (0..doubled.len())
                .map(|_| int(rng.gen_range(-3..=3)))
                .collect(),
        )?;
        let coeffs: Vec<(usize, Scalar)> = (0..3)
            .map(|_| (rng.gen_range(0..usize::MAX / 2), small_rational(&mut rng)))
            .collect();
        let delta = p.off_image_vector(&coeffs);
        let moved = MultiVector::new(doubled.clone(), linalg::add_vec(&b.data, &delta))?;
        let same = p.phi(&b)? == p.phi(&moved)?;
        Ok((same, b.data, delta))
    });
    for (i, res) in results.into_iter().enumerate() {
        let (same, b, delta) = res?;
        counts.extension_trials += 1;
        if same {
            counts.extension_passes += 1;
        } else {
            witnesses.push(Witness {
                check: "extension".into(),
                trial: i,
                detail: "phi_A(B) changed under a perturbation orthogonal to mu(R . R)".into(),
                vectors: vec![b, delta],
            });
        }
    }

    let verdict = if !witnesses.is_empty() {
        Verdict::Discrepancy
    } else if counts.forward_passes == 0 || counts.reverse_passes == 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Consistent
    };
    Ok(CertReport {
        algebra: p.ctx().rep().algebra().label(),
        rep: p.ctx().rep().label().to_string(),
        y: p.ctx().y().to_vec(),
        seed,
        trials,
        dims,
        rank_a: r.dim(),
        bounds: grid.bounds().to_vec(),
        sequence: p.gs().symbol_strings(),
        counts,
        verdict,
        witnesses,
    })
}

/// Kernel of a random nonzero functional on `r`.
fn random_hyperplane(r: &Subspace, rng: &mut ChaCha8Rng) -> Result<Subspace, OrbitError> {
    let d = r.dim();
    loop {
        let g: Vec<Scalar> = (0..d).map(|_| int(rng.gen_range(-5..=5))).collect();
        if linalg::is_zero_vec(&g) {
            continue;
        }
        let kernel = Mat::from_rows(d, vec![g])?.kernel();
        let rows: Vec<Vec<Scalar>> = kernel.basis_rows().map(|c| r.combination(c)).collect();
        return Ok(Subspace::span(r.ambient_dim(), rows)?);
    }
}

/// `{f in R : f(t) = 0}` for a random rational point `t`, or `None` when
/// evaluation at `t` vanishes on `R`.
fn evaluation_hyperplane(
    p: &Pipeline,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Subspace>, OrbitError> {
    let grid = p.gs().grid();
    let t: Vec<Scalar> = (0..grid.axes()).map(|_| small_rational(rng)).collect();
    let ev: Vec<Scalar> = grid
        .iter()
        .map(|idx| {
            idx.iter()
                .zip(&t)
                .map(|(&e, tk)| num_traits::pow(tk.clone(), e))
                .product()
        })
        .collect();
    let r = p.row_image();
    let values: Vec<Scalar> = r.basis_rows().map(|row| linalg::dot(row, &ev)).collect();
    if values.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    let kernel = Mat::from_rows(r.dim(), vec![values])?.kernel();
    let rows: Vec<Vec<Scalar>> = kernel.basis_rows().map(|c| r.combination(c)).collect();
    Ok(Some(Subspace::span(r.ambient_dim(), rows)?))
}

#[cfg(test)]
mod tests {
    use super::super::tests::rep;
    use super::*;
    use crate::linalg::ints;

    #[test]
    fn conic_report() {
        let report =
            certify_irreducibility(&rep(2, "sym(2,std)"), &ints(&[1, 0, 0]), 25, 0).unwrap();
        assert_eq!(
            report.dims,
            Dims {
                v: 3,
                sym2: 6,
                orbit_module: 5,
                ideal: 1
            }
        );
        assert_eq!(report.counts.reverse_passes, 25);
        assert_eq!(report.counts.forward_passes, report.counts.forward_trials);
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn twisted_cubic_report() {
        let report =
            certify_irreducibility(&rep(2, "sym(3,std)"), &ints(&[1, 0, 0, 0]), 25, 3).unwrap();
        assert_eq!(
            report.dims,
            Dims {
                v: 4,
                sym2: 10,
                orbit_module: 7,
                ideal: 3
            }
        );
        assert_eq!(report.counts.reverse_passes, 25);
        assert_eq!(report.verdict, Verdict::Consistent);
        assert_eq!(report.rank_a, 4);
    }

    #[test]
    fn reports_are_deterministic() {
        let r = rep(2, "sym(2,std)");
        let a = certify_irreducibility(&r, &ints(&[1, 0, 0]), 5, 11).unwrap();
        let ctx = OrbitContext::with_options(
            &r,
            &ints(&[1, 0, 0]),
            Default::default(),
            crate::Exec::Sequential,
        )
        .unwrap();
        let b = certify_with(ctx, 5, 11).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
