use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use super::decompose::CatSystem;
use super::{build_a, generator_sequence, GenSeq, OrbitContext, OrbitError};
use crate::linalg::{self, Mat, Scalar, Subspace};
use crate::multimatrix::{
    mu, mu_product_image, mu_square_image, phi_a, rank1_factor, Catalecticant, IndexBox,
    IndexSpace, MultiMatrix, MultiMatrixError, MultiVector,
};
use crate::rep::SymSquareElem;

/// Codimension of `mu(W . R)` inside `mu(R . R)`, `R = im A^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperplaneStatus {
    Hyperplane,
    Full,
    Smaller(usize),
}

impl HyperplaneStatus {
    fn from_codim(c: usize) -> Self {
        match c {
            0 => HyperplaneStatus::Full,
            1 => HyperplaneStatus::Hyperplane,
            c => HyperplaneStatus::Smaller(c),
        }
    }
}

fn box_of(a: &MultiMatrix) -> Result<&IndexBox, OrbitError> {
    match &a.cols {
        IndexSpace::Grid(g) => Ok(g),
        IndexSpace::Plain(_) => Err(OrbitError::Precondition("A must have box columns".into())),
    }
}

fn check_hyperplane(r: &Subspace, w: &Subspace) -> Result<(), OrbitError> {
    if w.ambient_dim() != r.ambient_dim() || !r.contains_subspace(w)? || w.dim() + 1 != r.dim() {
        return Err(MultiMatrixError::NotHyperplane {
            dim: w.dim(),
            ambient: r.dim(),
        }
        .into());
    }
    Ok(())
}

pub fn hyperplane_check(a: &MultiMatrix, w: &Subspace) -> Result<HyperplaneStatus, OrbitError> {
    let grid = box_of(a)?;
    let r = a.transpose_image();
    check_hyperplane(&r, w)?;
    let u = mu_square_image(grid, &r)?;
    let h = mu_product_image(grid, w, &r)?;
    Ok(HyperplaneStatus::from_codim(u.dim() - h.dim()))
}

#[derive(Clone, Debug)]
pub enum Rank1Direction {
    /// A hyperplane `W` of `im A^t` and a vector `v` of `im A^t` outside it.
    Forward { w: Subspace, v: Vec<Scalar> },
    /// A point `x` of `M_y`.
    Reverse { x: Vec<Scalar> },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "direction", rename_all = "snake_case")]
pub enum Rank1Outcome {
    Forward {
        b: MultiVector,
        rank: usize,
        #[serde(with = "opt_vec")]
        factor: Option<Vec<Scalar>>,
        member: Option<bool>,
    },
    Reverse {
        member: bool,
        b: Option<MultiVector>,
        exact: bool,
    },
}

mod opt_vec {
    use serde::Serializer;

    use crate::linalg::{format_vector, Scalar};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Scalar>>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => ser.collect_seq(format_vector(v)),
            None => ser.serialize_none(),
        }
    }
}

impl Rank1Outcome {
    /// Forward: rank at most one, and a rank-one factor lies in `M_y`.
    /// Reverse: the point lies in `M_y` and has an exact preimage.
    pub fn consistent(&self) -> bool {
        match self {
            Rank1Outcome::Forward { rank, member, .. } => {
                *rank == 0 || (*rank == 1 && *member == Some(true))
            }
            Rank1Outcome::Reverse { member, exact, .. } => *member && *exact,
        }
    }
}

/// The artifacts shared by every trial for one `(V, y)`: the generator
/// sequence, `A`, `R = im A^t`, `U = mu(R . R)` and the catalecticant solver.
#[derive(Debug)]
pub struct Pipeline {
    ctx: OrbitContext,
    gs: GenSeq,
    a: MultiMatrix,
    r: Subspace,
    u: OnceLock<Subspace>,
    sys: OnceLock<Result<CatSystem, OrbitError>>,
}

impl Pipeline {
    pub fn new(ctx: OrbitContext) -> Result<Self, OrbitError> {
        let gs = generator_sequence(&ctx)?;
        let a = build_a(&ctx, &gs)?;
        Ok(Self::from_parts(ctx, gs, a))
    }

    pub fn from_parts(ctx: OrbitContext, gs: GenSeq, a: MultiMatrix) -> Self {
        let r = a.transpose_image();
        Pipeline {
            ctx,
            gs,
            a,
            r,
            u: OnceLock::new(),
            sys: OnceLock::new(),
        }
    }

    pub fn ctx(&self) -> &OrbitContext {
        &self.ctx
    }

    pub fn gs(&self) -> &GenSeq {
        &self.gs
    }

    pub fn a(&self) -> &MultiMatrix {
        &self.a
    }

    /// `im A^t` inside the box space.
    pub fn row_image(&self) -> &Subspace {
        &self.r
    }

    /// `mu(R . R)` inside the doubled box space.
    pub fn mu_image(&self) -> &Subspace {
        self.u.get_or_init(|| {
            mu_square_image(self.gs.grid(), &self.r).expect("R lives in the box space")
        })
    }

    pub fn cat_system(&self) -> Result<&CatSystem, OrbitError> {
        self.sys
            .get_or_init(|| CatSystem::new(&self.ctx, &self.a))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn phi(&self, b: &MultiVector) -> Result<Mat, OrbitError> {
        Ok(phi_a(&self.a, &Catalecticant::from_b(b.clone())?)?)
    }

    pub fn hyperplane_status(&self, w: &Subspace) -> Result<HyperplaneStatus, OrbitError> {
        check_hyperplane(&self.r, w)?;
        let h = mu_product_image(self.gs.grid(), w, &self.r)?;
        Ok(HyperplaneStatus::from_codim(
            self.mu_image().dim() - h.dim(),
        ))
    }

    /// A basis vector of `R` outside `w`.
    pub fn complement_vector(&self, w: &Subspace) -> Result<Vec<Scalar>, OrbitError> {
        for row in self.r.basis_rows() {
            if !w.contains(row)? {
                return Ok(row.to_vec());
            }
        }
        Err(OrbitError::Precondition("W is all of im A^t".into()))
    }

    pub fn correspond(&self, direction: &Rank1Direction) -> Result<Rank1Outcome, OrbitError> {
        match direction {
            Rank1Direction::Forward { w, v } => self.forward(w, v),
            Rank1Direction::Reverse { x } => self.reverse(x),
        }
    }

    /// Builds `b` from the functional on `U` with kernel `mu(W . R)` and value
    /// one on `mu(v . v)`, extended by zero off the pivots of `U`.
    fn forward(&self, w: &Subspace, v: &[Scalar]) -> Result<Rank1Outcome, OrbitError> {
        if self.hyperplane_status(w)? != HyperplaneStatus::Hyperplane {
            return Err(OrbitError::Precondition(
                "mu(W . R) is not a hyperplane of mu(R . R)".into(),
            ));
        }
        if !self.r.contains(v)? || w.contains(v)? {
            return Err(OrbitError::Precondition(
                "v must lie in im A^t outside W".into(),
            ));
        }
        let grid = self.gs.grid();
        let u = self.mu_image();
        let h = mu_product_image(grid, w, &self.r)?;
        let h_coords: Vec<Vec<Scalar>> = h
            .basis_rows()
            .map(|row| {
                u.coordinates(row)
                    .map(|c| c.expect("mu(W . R) lies in mu(R . R)"))
            })
            .collect::<Result<_, _>>()?;
        let psi = Mat::from_rows(u.dim(), h_coords)?.kernel();
        let psi = psi
            .basis_rows()
            .next()
            .expect("hyperplane has a one-dimensional annihilator")
            .to_vec();
        let vv = mu(
            &MultiVector::new(grid.clone(), v.to_vec())?,
            &MultiVector::new(grid.clone(), v.to_vec())?,
        )?;
        let vv_coords = u.coordinates(&vv.data)?.expect("v . v lies in R . R");
        let norm = linalg::dot(&psi, &vv_coords);
        if norm.is_zero() {
            return Err(OrbitError::Inconsistent(
                "mu(v . v) lies in mu(W . R)".into(),
            ));
        }
        let mut b = MultiVector::zeros(grid.doubled()?);
        for (&p, c) in u.pivots().iter().zip(&psi) {
            b.data[p] = c / &norm;
        }
        let m = self.phi(&b)?;
        let rank = m.rank();
        let (factor, member) = if rank == 1 {
            let f = rank1_factor(&m)?;
            let member = self.ctx.contains(&f)?;
            (Some(f), Some(member))
        } else {
            (None, None)
        };
        Ok(Rank1Outcome::Forward {
            b,
            rank,
            factor,
            member,
        })
    }

    /// Solves `A B A^t = x x^t` for a catalecticant `B`.
    fn reverse(&self, x: &[Scalar]) -> Result<Rank1Outcome, OrbitError> {
        let member = self.ctx.contains(x)?;
        let xx = SymSquareElem::square(x);
        let b = if member {
            self.cat_system()?.solve(&xx.to_coords())?
        } else {
            None
        };
        let exact = match &b {
            Some(b) => &self.phi(b)? == xx.matrix(),
            None => false,
        };
        Ok(Rank1Outcome::Reverse { member, b, exact })
    }

    /// A vector `delta` with `<delta, u> = 0` for all `u` in `mu(R . R)`,
    /// built from free columns of the reduced basis.
    pub fn off_image_vector(&self, coeffs: &[(usize, Scalar)]) -> Vec<Scalar> {
        let u = self.mu_image();
        let free: Vec<usize> = (0..u.ambient_dim())
            .filter(|c| !u.pivots().contains(c))
            .collect();
        let mut delta = vec![Scalar::zero(); u.ambient_dim()];
        if free.is_empty() {
            return delta;
        }
        for (k, c) in coeffs {
            let f = free[k % free.len()];
            delta[f] += c;
            for (row, &p) in u.basis_rows().zip(u.pivots()) {
                if !row[f].is_zero() {
                    delta[p] -= c * &row[f];
                }
            }
        }
        delta
    }
}

/// The forward or reverse correspondence for one input.
pub fn rank1_correspondence(
    ctx: &OrbitContext,
    gs: &GenSeq,
    a: &MultiMatrix,
    direction: &Rank1Direction,
) -> Result<Rank1Outcome, OrbitError> {
    Pipeline::from_parts(ctx.clone(), gs.clone(), a.clone()).correspond(direction)
}

#[cfg(test)]
mod tests {
    use super::super::tests::rep;
    use super::*;
    use crate::linalg::{int, ints, ratio};

    fn full_deg2() -> MultiMatrix {
        let g = IndexBox::new(vec![2]).unwrap();
        MultiMatrix::identity(&g)
    }

    fn sp(ambient: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(ambient, rows.iter().map(|r| ints(r))).unwrap()
    }

    #[test]
    fn hyperplane_examples() {
        let a = full_deg2();
        assert_eq!(
            hyperplane_check(&a, &sp(3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap(),
            HyperplaneStatus::Full
        );
        assert_eq!(
            hyperplane_check(&a, &sp(3, &[&[0, 1, 0], &[0, 0, 1]])).unwrap(),
            HyperplaneStatus::Hyperplane
        );
        let lin = MultiMatrix::identity(&IndexBox::new(vec![1]).unwrap());
        for w in [&[1, 0], &[0, 1], &[1, 1], &[2, -3]] {
            assert_eq!(
                hyperplane_check(&lin, &sp(2, &[w])).unwrap(),
                HyperplaneStatus::Hyperplane
            );
        }
        assert!(hyperplane_check(&a, &sp(3, &[&[1, 0, 0]])).is_err());
    }

    fn pipeline(expr: &str, dim: usize) -> Pipeline {
        let mut y = vec![int(0); dim];
        y[0] = int(1);
        Pipeline::new(OrbitContext::new(&rep(2, expr), &y).unwrap()).unwrap()
    }

    #[test]
    fn forward_from_point_evaluation() {
        let p = pipeline("sym(2,std)", 3);
        // W = {f : f(0) = 0} = span{x, x^2}.
        let w = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        let v = p.complement_vector(&w).unwrap();
        let out = p.correspond(&Rank1Direction::Forward { w, v }).unwrap();
        assert!(out.consistent());
        let Rank1Outcome::Forward { rank, factor, .. } = out else {
            unreachable!()
        };
        assert_eq!(rank, 1);
        let f = factor.unwrap();
        // b^2 = 4ac on the factor.
        assert_eq!(&f[1] * &f[1], int(4) * &f[0] * &f[2]);
        // Evaluation at t = 1/2.
        let t = ratio(1, 2);
        let w = Subspace::span(
            3,
            vec![
                vec![-t.clone(), int(1), int(0)],
                vec![-(&t * &t), int(0), int(1)],
            ],
        )
        .unwrap();
        let v = p.complement_vector(&w).unwrap();
        assert!(p
            .correspond(&Rank1Direction::Forward { w, v })
            .unwrap()
            .consistent());
    }

    #[test]
    fn reverse_cases() {
        let p = pipeline("sym(2,std)", 3);
        let out = p
            .correspond(&Rank1Direction::Reverse {
                x: ints(&[1, 0, 0]),
            })
            .unwrap();
        let Rank1Outcome::Reverse { member, b, exact } = &out else {
            unreachable!()
        };
        assert!(*member && *exact);
        assert_eq!(b.as_ref().unwrap().data, ints(&[1, 0, 0, 0, 0]));
        let out = p
            .correspond(&Rank1Direction::Reverse {
                x: ints(&[1, 2, 1]),
            })
            .unwrap();
        assert!(out.consistent());
        let out = p
            .correspond(&Rank1Direction::Reverse {
                x: ints(&[1, 0, 1]),
            })
            .unwrap();
        assert!(!out.consistent());
    }

    #[test]
    fn perturbations_off_the_image() {
        let p = pipeline("sym(3,std)", 4);
        let b = MultiVector::new(
            IndexBox::new(vec![6]).unwrap(),
            ints(&[1, 2, 0, -1, 3, 0, 1]),
        )
        .unwrap();
        let delta = p.off_image_vector(&[(0, int(3)), (1, int(-2))]);
        let moved = MultiVector::new(b.grid.clone(), linalg::add_vec(&b.data, &delta)).unwrap();
        assert_eq!(p.phi(&b).unwrap(), p.phi(&moved).unwrap());
    }
}
