use orbitquad::linalg::{ints, Mat, Scalar, Subspace};
use orbitquad::multimatrix::{
    mu, mu_square_image, phi_a, Catalecticant, IndexBox, IndexSpace, MultiMatrix, MultiVector,
};
use proptest::prelude::*;

fn grid() -> impl Strategy<Value = IndexBox> {
    prop::collection::vec(0usize..=2, 1..=2).prop_map(|b| IndexBox::new(b).unwrap())
}

fn vector_on(g: IndexBox) -> impl Strategy<Value = MultiVector> {
    let len = g.len();
    prop::collection::vec(-3i64..=3, len)
        .prop_map(move |v| MultiVector::new(g.clone(), ints(&v)).unwrap())
}

fn square_on(g: &IndexBox) -> impl Strategy<Value = MultiMatrix> {
    let g = g.clone();
    let n = g.len();
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        MultiMatrix::new(
            IndexSpace::Grid(g.clone()),
            IndexSpace::Grid(g.clone()),
            Mat::from_vec(n, n, ints(&v)).unwrap(),
        )
        .unwrap()
    })
}

fn triple() -> impl Strategy<Value = (MultiMatrix, MultiMatrix, MultiMatrix)> {
    grid().prop_flat_map(|g| (square_on(&g), square_on(&g), square_on(&g)))
}

fn pair_of_vectors() -> impl Strategy<Value = (MultiVector, MultiVector, MultiVector)> {
    grid().prop_flat_map(|g| (vector_on(g.clone()), vector_on(g.clone()), vector_on(g)))
}

fn doubled_vector() -> impl Strategy<Value = MultiVector> {
    grid().prop_flat_map(|g| vector_on(g.doubled().unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn box_positions_roundtrip(g in grid()) {
        for (pos, idx) in g.iter().enumerate() {
            prop_assert_eq!(g.position(&idx), Some(pos));
            prop_assert_eq!(g.multi_index(pos), idx);
        }
        let embed = g.doubled_embedding().unwrap();
        let d = g.doubled().unwrap();
        for i in g.iter() {
            for j in g.iter() {
                let sum: Vec<usize> = i.iter().zip(&j).map(|(a, b)| a + b).collect();
                let (pi, pj) = (g.position(&i).unwrap(), g.position(&j).unwrap());
                prop_assert_eq!(d.position(&sum), Some(embed[pi] + embed[pj]));
            }
        }
    }

    #[test]
    fn multiplication_is_associative((a, b, c) in triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left.data, right.data);
    }

    #[test]
    fn transpose_reverses_products((a, b, _) in triple()) {
        let lhs = a.mul(&b).unwrap().transpose();
        let rhs = b.transpose().mul(&a.transpose()).unwrap();
        prop_assert_eq!(lhs.data, rhs.data);
        prop_assert_eq!(a.add(&b).unwrap().data, b.add(&a).unwrap().data);
    }

    #[test]
    fn catalecticants_are_symmetric(b in doubled_vector()) {
        let cat = Catalecticant::from_b(b.clone()).unwrap();
        let m = cat.to_matrix();
        prop_assert!(m.data.is_symmetric());
        let back = Catalecticant::from_matrix(&m).unwrap();
        prop_assert_eq!(back.b(), &b);
    }

    #[test]
    fn convolution_is_commutative_and_bilinear((f, g, h) in pair_of_vectors()) {
        prop_assert_eq!(mu(&f, &g).unwrap(), mu(&g, &f).unwrap());
        let gh = MultiVector::new(g.grid.clone(), g.data.iter().zip(&h.data).map(|(x, y)| x + y).collect()).unwrap();
        let lhs = mu(&f, &gh).unwrap();
        let a = mu(&f, &g).unwrap();
        let b = mu(&f, &h).unwrap();
        let rhs: Vec<Scalar> = a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs.data, rhs);
    }

    #[test]
    fn phi_matches_dense_product(b in doubled_vector(), rows in 1usize..=3, seed in prop::collection::vec(-2i64..=2, 27)) {
        let cat = Catalecticant::from_b(b).unwrap();
        let g = cat.grid().clone();
        let n = g.len();
        let entries: Vec<i64> = seed.iter().cycle().take(rows * n).copied().collect();
        let a = MultiMatrix::new(IndexSpace::Plain(rows), IndexSpace::Grid(g), Mat::from_vec(rows, n, ints(&entries)).unwrap()).unwrap();
        let dense = a.data.mul(&cat.to_matrix().data).unwrap().mul(&a.data.transpose()).unwrap();
        prop_assert_eq!(phi_a(&a, &cat).unwrap(), dense);
    }

    #[test]
    fn square_images_contain_squares((f, _, _) in pair_of_vectors()) {
        let s = Subspace::span(f.grid.len(), [f.data.clone()]).unwrap();
        let image = mu_square_image(&f.grid, &s).unwrap();
        prop_assert!(image.contains(&mu(&f, &f).unwrap().data).unwrap());
        prop_assert!(image.dim() <= 1);
    }
}
