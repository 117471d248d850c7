mod common;

use common::rep;
use orbitquad::linalg::{int, ints, Scalar};
use orbitquad::orbit::{
    build_a, certify_irreducibility, decompose_q, generator_sequence, leibniz_check, my_membership,
    quadric_ideal, sample_evaluation_hyperplane, sample_orbit_point, Caps, CatSystem,
    HyperplaneStatus, OrbitContext, OrbitError, Pipeline, Rank1Direction, Rank1Outcome, Verdict,
};
use orbitquad::Exec;
use proptest::prelude::*;

#[test]
fn ideal_dimensions() {
    for (n, expr, y, dim) in [
        (2, "sym(2,std)", vec![1, 0, 0], 1),
        (2, "sym(3,std)", vec![1, 0, 0, 0], 3),
        (2, "sym(4,std)", vec![1, 0, 0, 0, 0], 6),
        (3, "std", vec![1, 0, 0], 0),
        (4, "wedge(2,std)", vec![1, 0, 0, 0, 0, 0], 1),
        (4, "wedge(2,std)", vec![1, 0, 0, 0, 0, 1], 0),
    ] {
        let ideal = quadric_ideal(&rep(n, expr), &ints(&y)).unwrap();
        assert_eq!(ideal.dim(), dim, "{expr} {y:?}");
    }
}

#[test]
fn quadrics_vanish_on_orbit_points() {
    let r = rep(2, "sym(3,std)");
    let y = ints(&[1, 0, 0, 0]);
    let ideal = quadric_ideal(&r, &y).unwrap();
    for trial in 0..10 {
        let x = sample_orbit_point(&r, &y, 3, trial).unwrap();
        assert!(ideal.vanishes_at(&x));
        assert!(my_membership(&r, &y, &x).unwrap());
    }
    assert!(!ideal.vanishes_at(&ints(&[1, 0, 0, 1])));
}

#[test]
fn leibniz_for_non_highest_vectors() {
    let r = rep(2, "sym(3,std)");
    let ctx = OrbitContext::new(&r, &ints(&[1, 2, -1, 3])).unwrap();
    let gs = generator_sequence(&ctx).unwrap();
    assert_eq!(gs.symbol_strings(), ["Y(1,2)", "X(1,2)"]);
    for n in gs.grid().doubled().unwrap().iter() {
        assert!(leibniz_check(&ctx, &gs, &n).unwrap(), "n = {n:?}");
    }
}

#[test]
fn decomposition_of_fixed_words() {
    let r = rep(3, "std");
    let ctx = OrbitContext::new(&r, &ints(&[1, 0, 0])).unwrap();
    let gs = generator_sequence(&ctx).unwrap();
    let a = build_a(&ctx, &gs).unwrap();
    let sys = CatSystem::new(&ctx, &a).unwrap();
    let g = r.algebra();
    for k in 0..g.dim() {
        for l in 0..g.dim() {
            decompose_q(&ctx, &a, &sys, &[g.symbol(k), g.symbol(l)]).unwrap();
        }
    }
}

#[test]
fn forward_trials_give_members() {
    let r = rep(2, "sym(2,std)");
    let p = Pipeline::new(OrbitContext::new(&r, &ints(&[1, 0, 0])).unwrap()).unwrap();
    let mut good = 0;
    for trial in 0..10 {
        let Some(w) = sample_evaluation_hyperplane(&p, 0, trial).unwrap() else {
            continue;
        };
        if p.hyperplane_status(&w).unwrap() != HyperplaneStatus::Hyperplane {
            continue;
        }
        let v = p.complement_vector(&w).unwrap();
        let out = p.correspond(&Rank1Direction::Forward { w, v }).unwrap();
        assert!(out.consistent(), "{out:?}");
        good += 1;
    }
    assert!(good > 0);
}

#[test]
fn reverse_rejects_outside_points() {
    let r = rep(2, "sym(2,std)");
    let p = Pipeline::new(OrbitContext::new(&r, &ints(&[1, 0, 0])).unwrap()).unwrap();
    let out = p
        .correspond(&Rank1Direction::Reverse {
            x: ints(&[1, 0, 1]),
        })
        .unwrap();
    assert!(matches!(out, Rank1Outcome::Reverse { member: false, .. }));
}

#[test]
fn box_cap_is_reported() {
    let r = rep(2, "sym(4,std)");
    let caps = Caps {
        max_box: 3,
        ..Caps::default()
    };
    let ctx =
        OrbitContext::with_options(&r, &ints(&[1, 2, -1, 3, 1]), caps, Exec::Sequential).unwrap();
    let err = generator_sequence(&ctx).unwrap_err();
    assert!(err.is_cap(), "{err}");
    assert!(matches!(err, OrbitError::BoxCap { .. }));
}

#[test]
fn zero_vector_is_rejected() {
    let r = rep(2, "sym(2,std)");
    assert!(matches!(
        OrbitContext::new(&r, &ints(&[0, 0, 0])),
        Err(OrbitError::ZeroVector)
    ));
}

#[test]
fn reports_are_reproducible() {
    let r = rep(2, "sym(3,std)");
    let y = ints(&[1, 0, 0, 0]);
    let a = certify_irreducibility(&r, &y, 6, 11).unwrap();
    let b = certify_irreducibility(&r, &y, 6, 11).unwrap();
    assert_eq!(a.verdict, Verdict::Consistent);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_ignores_scaling(x in prop::collection::vec(-2i64..=2, 6), c in nonzero_rational()) {
        prop_assume!(x.iter().any(|&v| v != 0));
        let r = rep(4, "wedge(2,std)");
        let y = ints(&[1, 0, 0, 0, 0, 0]);
        let x = ints(&x);
        let scaled: Vec<Scalar> = x.iter().map(|v| v * &c).collect();
        let yc: Vec<Scalar> = y.iter().map(|v| v * &c).collect();
        let m = my_membership(&r, &y, &x).unwrap();
        prop_assert_eq!(m, my_membership(&r, &y, &scaled).unwrap());
        prop_assert_eq!(m, my_membership(&r, &yc, &x).unwrap());
        // Decomposable 2-forms are exactly the zeros of the Plucker quadric.
        let plucker = &x[0] * &x[5] - &x[1] * &x[4] + &x[2] * &x[3];
        prop_assert_eq!(m, plucker == int(0));
    }
}
