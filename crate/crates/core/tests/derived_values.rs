//! Frozen expected values for the worked examples, cross-checked against the
//! independent oracles in `common` before being asserted on the real
//! implementation.

mod common;

use caec::algebra::{basic_generators, close_generators, translation_matrix};
use caec::bitmatrix::{AffineSolutionSet, BitMatrix, BitVector, ProductKind};
use caec::maca::{
    attractor_from_pef, build_std, classify, collapse_to_depth_one, evolve, maca_profile,
    predecessors, CaState,
};
use caec::rules::{mask_sequence, rule_matrix, Boundary, MaskKind, RuleSpec};

use common::{
    brute_predecessors, grid_of_value, naive_bool_product, naive_closure, to_bool_mat,
    value_of_grid,
};

fn m69() -> BitMatrix {
    BitMatrix::from_rows(&["1001", "0100", "0010", "1001"]).unwrap()
}

fn spec69() -> RuleSpec {
    RuleSpec::new(69, Boundary::Null, 2, 2).unwrap()
}

#[test]
fn rule_69_matrix_matches_printed_form() {
    let t = rule_matrix(&spec69()).unwrap();
    assert_eq!(t, m69());
}

#[test]
fn null_2x2_basic_matrices() {
    let gens = basic_generators(Boundary::Null, 2, 2).unwrap();
    assert_eq!(gens[0], BitMatrix::identity(4).unwrap());
    assert_eq!(gens[1], BitMatrix::from_rows(&["0100", "0000", "0001", "0000"]).unwrap());
    assert_eq!(gens[2], BitMatrix::from_rows(&["0001", "0000", "0000", "0000"]).unwrap());
    assert_eq!(gens[3], BitMatrix::from_rows(&["0010", "0001", "0000", "0000"]).unwrap());
    assert_eq!(gens[4], BitMatrix::from_rows(&["0000", "0010", "0000", "0000"]).unwrap());
}

#[test]
fn bool_product_m2_m16_hand_expanded() {
    // Hand expansion of the 4x4 OR-of-ANDs products: M_2 * M_16 has its only
    // 1 at (0,2), the reversed order lands at (1,3).
    let gens = basic_generators(Boundary::Null, 2, 2).unwrap();
    let e13 = BitMatrix::from_rows(&["0010", "0000", "0000", "0000"]).unwrap();
    let e24 = BitMatrix::from_rows(&["0000", "0001", "0000", "0000"]).unwrap();
    let ab = gens[1].bool_product(&gens[4]).unwrap();
    let ba = gens[4].bool_product(&gens[1]).unwrap();
    assert_eq!(ab, e13);
    assert_eq!(ba, e24);
    // Same expansion through the naive oracle.
    let oab = naive_bool_product(&to_bool_mat(&gens[1]), &to_bool_mat(&gens[4]));
    assert_eq!(oab, to_bool_mat(&e13));
}

#[test]
fn gf2_products_on_rule_69_states() {
    let t = m69();
    let nine = BitVector::from_value(4, 9);
    assert_eq!(t.gf2_apply(&nine).unwrap(), BitVector::from_value(4, 0));
    let six = BitVector::from_value(4, 6);
    assert_eq!(t.gf2_apply(&six).unwrap(), six);

    // Same two products through the naive XOR-of-ANDs oracle, with the
    // states as single-column matrices.
    let tg = to_bool_mat(&t);
    let col = |v: u64| -> Vec<Vec<bool>> { (0..4).map(|i| vec![v >> (3 - i) & 1 == 1]).collect() };
    assert_eq!(common::naive_gf2_product(&tg, &col(9)), col(0));
    assert_eq!(common::naive_gf2_product(&tg, &col(6)), col(6));
}

#[test]
fn rank_of_m69_is_three() {
    assert_eq!(m69().gf2_rank(), 3);
}

#[test]
fn affine_solutions_for_m69() {
    let t = m69();
    // Brute force over all 16 states agrees: attractor 0 has the two
    // predecessors 0 and 9, state 1 has none.
    assert_eq!(brute_predecessors(2, 2, 69, Boundary::Null, 0), vec![0, 9]);
    assert_eq!(brute_predecessors(2, 2, 69, Boundary::Null, 1), Vec::<u64>::new());

    let sol = t.gf2_solve_affine(&BitVector::from_value(4, 0)).unwrap();
    let mut values: Vec<u64> = sol.enumerate().iter().map(BitVector::value).collect();
    values.sort_unstable();
    assert_eq!(values, vec![0, 9]);
    assert_eq!(sol.solution_count(), 2);

    let none = t.gf2_solve_affine(&BitVector::from_value(4, 1)).unwrap();
    assert_eq!(none, AffineSolutionSet::Inconsistent);
}

#[test]
fn powers_of_m69() {
    let t = m69();
    let t2 = t.pow(2, ProductKind::Gf2).unwrap();
    assert_eq!(t2, BitMatrix::from_rows(&["0000", "0100", "0010", "0000"]).unwrap());
    let t3 = t.pow(3, ProductKind::Gf2).unwrap();
    assert_eq!(t3, t2);
    assert_ne!(t2, t);
}

#[test]
fn mask_sequences_expand_by_hand() {
    assert_eq!(mask_sequence(MaskKind::S1, 2, 3).to_bit_string(), "101");
    assert_eq!(mask_sequence(MaskKind::S2, 2, 3).to_bit_string(), "010");
    assert_eq!(mask_sequence(MaskKind::S1, 3, 8).to_bit_string(), "11011011");
}

#[test]
fn periodic_2x2_rule_34_cancels_to_zero() {
    // Left and right cyclic shift coincide at n = 2, so their XOR vanishes.
    let t = rule_matrix(&RuleSpec::new(34, Boundary::Periodic, 2, 2).unwrap()).unwrap();
    assert!(t.is_zero());
}

#[test]
fn null_2x2_closure_has_order_eight() {
    let gens = basic_generators(Boundary::Null, 2, 2).unwrap();
    let bool_gens: Vec<_> = gens.iter().map(to_bool_mat).collect();
    let oracle = naive_closure(&bool_gens);
    assert_eq!(oracle.len(), 8);

    let closure = close_generators(&gens).unwrap();
    assert_eq!(closure.order(), 8);
    let want = [
        BitMatrix::identity(4).unwrap(),
        gens[1].clone(),
        gens[2].clone(),
        gens[3].clone(),
        gens[4].clone(),
        BitMatrix::zeros(4, 4).unwrap(),
        BitMatrix::from_rows(&["0010", "0000", "0000", "0000"]).unwrap(),
        BitMatrix::from_rows(&["0000", "0001", "0000", "0000"]).unwrap(),
    ];
    assert_eq!(closure.elements(), &want[..]);
    // Same set per the oracle, independent of discovery order.
    for e in closure.elements() {
        assert!(oracle.contains(&to_bool_mat(e)));
    }
}

#[test]
fn periodic_2x3_closure_has_order_six() {
    let gens = basic_generators(Boundary::Periodic, 2, 3).unwrap();
    let bool_gens: Vec<_> = gens.iter().map(to_bool_mat).collect();
    assert_eq!(naive_closure(&bool_gens).len(), 6);
    assert_eq!(close_generators(&gens).unwrap().order(), 6);
}

#[test]
fn axiom_reports_for_small_grids() {
    // Periodic 2x3: the full translation group of a 2x3 torus.
    let c = close_generators(&basic_generators(Boundary::Periodic, 2, 3).unwrap()).unwrap();
    let report = c.verify_axioms();
    assert_eq!(report.order, 6);
    assert_eq!(report.identity, Some(0));
    assert!(report.commutative);
    assert!(report.all_invertible);
    assert_eq!(report.cyclic_generator, Some(2)); // M_4, the (1,1) translation

    // Periodic 2x2: Klein four-group, not cyclic.
    let c = close_generators(&basic_generators(Boundary::Periodic, 2, 2).unwrap()).unwrap();
    let report = c.verify_axioms();
    assert_eq!(report.order, 4);
    assert!(report.commutative);
    assert!(report.all_invertible);
    assert!(!report.cyclic);
    for i in 0..4 {
        let sq = c.product(i, i);
        assert_eq!(sq, report.identity.unwrap());
    }

    // Null 2x2: not commutative, first counterexample is (M_2, M_16).
    let c = close_generators(&basic_generators(Boundary::Null, 2, 2).unwrap()).unwrap();
    let report = c.verify_axioms();
    assert_eq!(report.order, 8);
    assert!(!report.commutative);
    assert_eq!(report.commutative_counterexample, Some((1, 4)));
    let e13 = BitMatrix::from_rows(&["0010", "0000", "0000", "0000"]).unwrap();
    let e24 = BitMatrix::from_rows(&["0000", "0001", "0000", "0000"]).unwrap();
    assert_eq!(c.elements()[c.product(1, 4)], e13);
    assert_eq!(c.elements()[c.product(4, 1)], e24);
}

#[test]
fn inverses_in_small_closures() {
    let c = close_generators(&basic_generators(Boundary::Periodic, 2, 3).unwrap()).unwrap();
    let inv = c.element_inverse(1).unwrap(); // M_2, the (0,1) translation
    assert_eq!(inv, c.product(1, 1)); // (0,1) inverts to (0,2)

    let c = close_generators(&basic_generators(Boundary::Null, 2, 2).unwrap()).unwrap();
    let zero_idx = c
        .elements()
        .iter()
        .position(|e| e.is_zero())
        .expect("zero matrix in null closure");
    assert!(c.element_inverse(zero_idx).is_err());
    assert_eq!(c.element_inverse(0).unwrap(), 0);
}

#[test]
fn translation_matrices() {
    assert_eq!(
        translation_matrix(0, 0, 3, 3).unwrap(),
        BitMatrix::identity(9).unwrap()
    );

    // Vertical shift by one on a 2x2 grid swaps the rows.
    let t = translation_matrix(1, 0, 2, 2).unwrap();
    let x = BitVector::from_value(4, 0b1001);
    assert_eq!(t.bool_apply(&x).unwrap(), BitVector::from_value(4, 0b0110));

    // The (1,1) translation on a 2x3 torus has multiplicative order 6.
    let t = translation_matrix(1, 1, 2, 3).unwrap();
    let id = BitMatrix::identity(6).unwrap();
    let mut acc = t.clone();
    let mut order = 1;
    while acc != id {
        acc = acc.bool_product(&t).unwrap();
        order += 1;
        assert!(order <= 6);
    }
    assert_eq!(order, 6);
}

#[test]
fn rule_69_std_enumeration() {
    // Successor table computed two independent ways before freezing.
    let want_succ: Vec<u32> = vec![0, 9, 2, 11, 4, 13, 6, 15, 9, 0, 11, 2, 13, 4, 15, 6];
    for v in 0..16u64 {
        let next = value_of_grid(&common::evolve_grid(
            &grid_of_value(2, 2, v),
            69,
            Boundary::Null,
        ));
        assert_eq!(next, u64::from(want_succ[v as usize]));
    }

    let std = build_std(&spec69()).unwrap();
    assert_eq!(std.successor, want_succ);
    assert_eq!(std.attractors, vec![0, 2, 4, 6]);
    for s in [9u64, 11, 13, 15] {
        assert_eq!(std.depth_of[s as usize], 1);
    }
    assert_eq!(std.non_reachable, vec![1, 3, 5, 7, 8, 10, 12, 14]);
    for s in &std.non_reachable {
        assert_eq!(std.depth_of[*s as usize], 2);
    }
}

#[test]
fn rule_69_profile() {
    let profile = maca_profile(&spec69()).unwrap();
    assert!(profile.is_maca);
    assert_eq!(profile.depth, 2);
    assert_eq!(profile.rank, 3);
    assert_eq!(profile.attractor_count(), 4);
    assert_eq!(profile.pef_positions, vec![1, 2]);

    // Theorem-style predecessor law: every reachable state has exactly
    // 2^(4-3) = 2 predecessors.
    for v in 0..16u64 {
        let preds = brute_predecessors(2, 2, 69, Boundary::Null, v);
        assert!(preds.len() == 2 || preds.is_empty());
        let state = CaState::from_value(2, 2, v).unwrap();
        let got = predecessors(profile.matrix(), &state).unwrap();
        let mut got: Vec<u64> = got.iter().map(CaState::value).collect();
        got.sort_unstable();
        assert_eq!(got, preds);
    }
}

#[test]
fn rule_69_classification() {
    let profile = maca_profile(&spec69()).unwrap();
    let six = CaState::from_value(2, 2, 6).unwrap();
    assert_eq!(classify(&six, &profile).unwrap().to_bit_string(), "11");
    let nine = CaState::from_value(2, 2, 9).unwrap();
    assert_eq!(classify(&nine, &profile).unwrap().to_bit_string(), "00");
    let zero = CaState::from_value(2, 2, 0).unwrap();
    assert_eq!(classify(&zero, &profile).unwrap().to_bit_string(), "00");

    assert_eq!(
        attractor_from_pef(&profile, &BitVector::from_bit_str("11").unwrap())
            .unwrap()
            .value(),
        6
    );
    assert_eq!(
        attractor_from_pef(&profile, &BitVector::from_bit_str("00").unwrap())
            .unwrap()
            .value(),
        0
    );
}

#[test]
fn rule_69_depth_one_collapse() {
    let profile = maca_profile(&spec69()).unwrap();
    let d1 = collapse_to_depth_one(&profile).unwrap();
    assert_eq!(d1, BitMatrix::from_rows(&["0000", "0100", "0010", "0000"]).unwrap());
    let one = CaState::from_value(2, 2, 1).unwrap();
    assert_eq!(evolve(&one, &d1).unwrap().value(), 0);
    assert_eq!(d1.gf2_product(&d1).unwrap(), d1);
}

#[test]
fn evolution_chain_from_state_one() {
    let t = m69();
    let one = CaState::from_value(2, 2, 1).unwrap();
    let nine = evolve(&one, &t).unwrap();
    assert_eq!(nine.value(), 9);
    assert_eq!(evolve(&nine, &t).unwrap().value(), 0);
}
