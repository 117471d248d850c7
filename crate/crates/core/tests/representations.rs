mod common;

use common::{add_characters, character, irreducible_character, rep, Character};
use orbitquad::linalg::{int, ints, Scalar};
use orbitquad::rep::{
    act_word, cyclic_module, derived_rep, highest_weight_vectors, isotypic_decomposition, Derived,
    Rep,
};
use orbitquad::Exec;
use proptest::prelude::*;

fn labels(r: &Rep) -> Vec<Vec<i64>> {
    isotypic_decomposition(r)
        .unwrap()
        .components
        .iter()
        .map(|c| {
            c.highest_weight
                .0
                .iter()
                .map(|x| i64::try_from(x.to_integer()).unwrap())
                .collect()
        })
        .collect()
}

/// The isotypic decomposition agrees with the tableau count, weight by weight.
fn check_against_oracle(n: usize, r: &Rep, expected_dims: &[usize]) {
    let iso = isotypic_decomposition(r).unwrap();
    assert!(iso.multiplicity_free);
    assert_eq!(iso.dims(), expected_dims);
    let mut sum = Character::new();
    for (hw, c) in labels(r).iter().zip(&iso.components) {
        let ch = irreducible_character(n, hw);
        assert_eq!(ch.values().sum::<usize>(), c.dim);
        add_characters(&mut sum, &ch);
    }
    assert_eq!(sum, character(r));
}

#[test]
fn symmetric_squares_match_tableau_counts() {
    let s2 = derived_rep(&rep(2, "sym(2,std)"), Derived::Sym2).unwrap();
    check_against_oracle(2, &s2, &[5, 1]);
    let s3 = derived_rep(&rep(2, "sym(3,std)"), Derived::Sym2).unwrap();
    check_against_oracle(2, &s3, &[7, 3]);
    let w = derived_rep(&rep(4, "wedge(2,std)"), Derived::Sym2).unwrap();
    check_against_oracle(4, &w, &[20, 1]);
    assert_eq!(labels(&w), vec![vec![0, 2, 0], vec![0, 0, 0]]);
}

#[test]
fn wedge_square_in_six_variables() {
    let w = derived_rep(&rep(6, "wedge(2,std)"), Derived::Sym2).unwrap();
    check_against_oracle(6, &w, &[105, 15]);
    assert_eq!(labels(&w)[1], vec![0, 0, 0, 1, 0]);
}

#[test]
fn simple_modules_have_one_highest_line() {
    for (n, expr, labels) in [
        (2, "sym(4,std)", vec![4]),
        (3, "sym(2,std)", vec![2, 0]),
        (3, "dual(std)", vec![0, 1]),
        (4, "wedge(2,std)", vec![0, 1, 0]),
    ] {
        let r = rep(n, expr);
        let hws = highest_weight_vectors(&r).unwrap();
        assert_eq!(hws.len(), 1, "{expr}");
        assert_eq!(hws[0].space.dim(), 1);
        assert_eq!(character(&r), irreducible_character(n, &labels), "{expr}");
    }
}

#[test]
fn tensor_of_standard_modules() {
    let r = rep(3, "tensor(std,std)");
    let iso = isotypic_decomposition(&r).unwrap();
    assert_eq!(iso.dims(), vec![6, 3]);
    let mut sum = irreducible_character(3, &[2, 0]);
    add_characters(&mut sum, &irreducible_character(3, &[0, 1]));
    assert_eq!(sum, character(&r));
}

#[test]
fn derived_modules_respect_brackets() {
    let v = rep(3, "std");
    let s = rep(3, "sym(2,std)");
    for kind in [
        Derived::Dual,
        Derived::Wedge(2),
        Derived::Sym(3),
        Derived::Sym2,
        Derived::Tensor(&s),
    ] {
        derived_rep(&v, kind)
            .unwrap()
            .check_homomorphism(Exec::Parallel)
            .unwrap();
    }
}

fn small_vec(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-3i64..=3, len).prop_map(|v| ints(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_modules_are_invariant(v in small_vec(6)) {
        let r = rep(4, "wedge(2,std)");
        let m = cyclic_module(&r, &v).unwrap();
        prop_assert!(m.contains(&v).unwrap());
        for a in r.actions() {
            for row in m.basis_rows() {
                prop_assert!(m.contains(&a.mul_vec(row).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn projections_sum_back(v in small_vec(10)) {
        let r = derived_rep(&rep(2, "sym(3,std)"), Derived::Sym2).unwrap();
        let iso = isotypic_decomposition(&r).unwrap();
        let parts = iso.projections(&v).unwrap();
        let mut total = vec![int(0); v.len()];
        for p in &parts {
            for (t, x) in total.iter_mut().zip(p) {
                *t += x;
            }
        }
        prop_assert_eq!(total, v);
    }

    #[test]
    fn words_are_linear(a in small_vec(4), b in small_vec(4), len in 0usize..4) {
        let r = rep(2, "sym(3,std)");
        let g = r.algebra();
        let word: Vec<_> = (0..len).map(|k| g.symbol((k * 2 + len) % g.dim())).collect();
        let sum: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = act_word(&r, &word, &sum).unwrap();
        let fa = act_word(&r, &word, &a).unwrap();
        let fb = act_word(&r, &word, &b).unwrap();
        let rhs: Vec<Scalar> = fa.iter().zip(&fb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs, rhs);
    }
}
