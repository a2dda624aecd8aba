//! Property tests for the algebraic invariants of the matrix layer.

use caec::bitmatrix::{BitMatrix, BitVector, ProductKind};
use proptest::prelude::*;

fn arb_bitmatrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), rows * cols).prop_map(move |bits| {
        BitMatrix::from_fn(rows, cols, |r, c| bits[r * cols + c]).unwrap()
    })
}

fn arb_bitvector(len: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(any::<bool>(), len).prop_map(|bits| BitVector::from_bits(&bits))
}

fn arb_permutation(n: usize) -> impl Strategy<Value = BitMatrix> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |perm| BitMatrix::from_fn(n, n, |r, c| perm[r] == c).unwrap())
}

proptest! {
    #[test]
    fn products_are_associative(
        (a, b, c) in (1usize..=12, 1usize..=12, 1usize..=12, 1usize..=12).prop_flat_map(
            |(r, s, t, u)| (arb_bitmatrix(r, s), arb_bitmatrix(s, t), arb_bitmatrix(t, u)),
        )
    ) {
        let left = a.bool_product(&b).unwrap().bool_product(&c).unwrap();
        let right = a.bool_product(&b.bool_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let left = a.gf2_product(&b).unwrap().gf2_product(&c).unwrap();
        let right = a.gf2_product(&b.gf2_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gf2_action_is_linear(
        (t, x, y) in (1usize..=12, 1usize..=12).prop_flat_map(
            |(r, c)| (arb_bitmatrix(r, c), arb_bitvector(c), arb_bitvector(c)),
        )
    ) {
        let sum_then_map = t.gf2_apply(&x.xor(&y).unwrap()).unwrap();
        let map_then_sum = t.gf2_apply(&x).unwrap().xor(&t.gf2_apply(&y).unwrap()).unwrap();
        prop_assert_eq!(sum_then_map, map_then_sum);
    }

    #[test]
    fn products_coincide_on_permutations(
        (p, a) in (1usize..=10, 1usize..=10).prop_flat_map(
            |(n, c)| (arb_permutation(n), arb_bitmatrix(n, c)),
        )
    ) {
        prop_assert!(p.is_permutation());
        prop_assert_eq!(p.bool_product(&a).unwrap(), p.gf2_product(&a).unwrap());
    }

    #[test]
    fn power_exponents_add(
        (a, j, k, kind) in (1usize..=8).prop_flat_map(|n| (
            arb_bitmatrix(n, n),
            0usize..=6,
            0usize..=6,
            prop_oneof![Just(ProductKind::Gf2), Just(ProductKind::Boolean)],
        ))
    ) {
        let combined = a.pow(j + k, kind).unwrap();
        let aj = a.pow(j, kind).unwrap();
        let ak = a.pow(k, kind).unwrap();
        let split = match kind {
            ProductKind::Gf2 => aj.gf2_product(&ak).unwrap(),
            ProductKind::Boolean => aj.bool_product(&ak).unwrap(),
        };
        prop_assert_eq!(combined, split);
    }

    #[test]
    fn affine_solutions_match_brute_force(
        (a, y) in (1usize..=4, 1usize..=4).prop_flat_map(
            |(r, c)| (arb_bitmatrix(r, c), arb_bitvector(r)),
        )
    ) {
        let mut expected: Vec<String> = Vec::new();
        for v in 0..1u64 << a.cols() {
            let x = BitVector::from_value(a.cols(), v);
            if a.gf2_apply(&x).unwrap() == y {
                expected.push(x.to_bit_string());
            }
        }
        let sol = a.gf2_solve_affine(&y).unwrap();
        let mut got: Vec<String> = sol.enumerate().iter().map(|v| v.to_bit_string()).collect();
        got.sort();
        prop_assert_eq!(got, expected);
        if !sol.is_empty() {
            prop_assert_eq!(sol.solution_count(), 1 << (a.cols() - a.gf2_rank()));
        }
    }

    #[test]
    fn transpose_is_involutive_and_reverses_products(
        (a, b) in (1usize..=9, 1usize..=9, 1usize..=9).prop_flat_map(
            |(r, s, t)| (arb_bitmatrix(r, s), arb_bitmatrix(s, t)),
        )
    ) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        let ab_t = a.bool_product(&b).unwrap().transpose();
        let bt_at = b.transpose().bool_product(&a.transpose()).unwrap();
        prop_assert_eq!(ab_t, bt_at);
    }

    #[test]
    fn dump_round_trips(
        a in (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| arb_bitmatrix(r, c))
    ) {
        prop_assert_eq!(BitMatrix::from_dump(&a.to_dump()).unwrap(), a);
    }
}
