//! Exact values checked against values frozen from an independent
//! brute-force enumeration, plus solver cross-checks on small grounds.

mod common;

use weak_delta::search::{
    build_instance, capset_number, cube, g3, max_equilateral_free_slice, max_free, max_free_containing,
    max_sunflower_free_slice, slice, ternary_space, verify_certificate, SearchConfig,
};
use weak_delta::structures::{is_free, StructureKind};
use weak_delta::{BinaryFamily, TernaryFamily};

use common::*;

fn seq() -> SearchConfig {
    SearchConfig::sequential()
}

#[test]
fn g3_small_values() {
    for (n, expected) in [(0, 1), (1, 2), (2, 3), (3, 5), (4, 7)] {
        let r = g3(n, &seq()).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.extremal_size, expected, "g3({n})");
        assert_eq!(r.witness.len(), expected);
        assert!(is_free(&r.witness, StructureKind::WeakDelta).unwrap());
    }
}

#[test]
fn g3_matches_brute_force_up_to_four() {
    for n in 0..=4 {
        let pts = cube_points(n);
        assert_eq!(g3(n, &seq()).unwrap().extremal_size, naive_max_free(&pts, StructureKind::WeakDelta));
    }
}

#[test]
fn g3_is_monotone() {
    let values: Vec<usize> = (0..=5).map(|n| g3(n, &seq()).unwrap().extremal_size).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    assert_eq!(values[5], 9);
}

#[test]
fn capset_small_values() {
    for (n, expected) in [(0, 1), (1, 2), (2, 4), (3, 9)] {
        let r = capset_number(n, &seq()).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.extremal_size, expected, "capset_number({n})");
        assert!(is_free(&r.witness, StructureKind::CapsetLine).unwrap());
        assert!(r.witness.is_subset_of(&ternary_space(n).unwrap()));
    }
}

#[test]
fn capset_numbers_match_brute_force_up_to_two() {
    for n in 0..=2 {
        let pts = ternary_points(n);
        assert_eq!(capset_number(n, &seq()).unwrap().extremal_size, naive_max_free(&pts, StructureKind::CapsetLine));
    }
}

#[test]
fn capset_in_dimension_four_is_twenty() {
    let r = capset_number(4, &seq()).unwrap();
    assert!(r.is_optimal());
    assert_eq!(r.extremal_size, 20);
    assert!(is_free(&r.witness, StructureKind::CapsetLine).unwrap());
}

#[test]
fn sunflower_free_slice_table() {
    let table: [&[usize]; 4] = [&[1, 1], &[1, 2, 1], &[1, 2, 3, 1], &[1, 2, 4, 4, 1]];
    for (i, row) in table.iter().enumerate() {
        let n = i + 1;
        for (k, &expected) in row.iter().enumerate() {
            let r = max_sunflower_free_slice(n, k, &seq()).unwrap();
            assert_eq!(r.extremal_size, expected, "sunflower-free slice ({n},{k})");
            assert!(is_free(&r.witness, StructureKind::Sunflower).unwrap());
        }
    }
}

#[test]
fn equilateral_free_slice_table() {
    let table: [&[usize]; 4] = [&[1, 1], &[1, 2, 1], &[1, 2, 2, 1], &[1, 2, 4, 2, 1]];
    for (i, row) in table.iter().enumerate() {
        let n = i + 1;
        for (k, &expected) in row.iter().enumerate() {
            let r = max_equilateral_free_slice(n, k, &seq()).unwrap();
            assert_eq!(r.extremal_size, expected, "equilateral-free slice ({n},{k})");
        }
    }
}

#[test]
fn slices_match_brute_force_at_five() {
    for k in 0..=5 {
        let s = slice(5, k).unwrap();
        for kind in [StructureKind::Sunflower, StructureKind::Equilateral, StructureKind::WeakDelta] {
            let r = max_free(&build_instance(&s, kind).unwrap(), &seq()).unwrap();
            assert_eq!(r.extremal_size, naive_max_free(s.members(), kind), "({kind}, k={k})");
        }
    }
}

#[test]
fn random_grounds_match_brute_force() {
    let mut rng = rng(7);
    for round in 0..40 {
        let kind = StructureKind::ALL[round % 4];
        if kind == StructureKind::CapsetLine {
            let ground = random_ternary_family(&mut rng, 3, 0..=16);
            let inst = build_instance(&ground, kind).unwrap();
            let r = max_free(&inst, &seq()).unwrap();
            assert!(verify_certificate(&r.witness, &inst).unwrap());
            assert_eq!(r.extremal_size, naive_max_free(ground.members(), kind));
        } else {
            let ground = random_binary_family(&mut rng, 4, 0..=16);
            let inst = build_instance(&ground, kind).unwrap();
            let r = max_free(&inst, &seq()).unwrap();
            assert!(verify_certificate(&r.witness, &inst).unwrap());
            assert_eq!(r.extremal_size, naive_max_free(ground.members(), kind));
        }
    }
}

#[test]
fn forced_members_are_kept() {
    let ground = cube(3).unwrap();
    let inst = build_instance(&ground, StructureKind::WeakDelta).unwrap();
    let forced = BinaryFamily::from_rows(3, &["000", "111"]).unwrap();
    let r = max_free_containing(&inst, &forced, &seq()).unwrap();
    assert!(forced.is_subset_of(&r.witness));
    assert!(is_free(&r.witness, StructureKind::WeakDelta).unwrap());
    assert!(r.extremal_size <= 5);

    let bad = TernaryFamily::from_rows(1, &["0", "1", "2"]).unwrap();
    let inst = build_instance(&ternary_space(1).unwrap(), StructureKind::CapsetLine).unwrap();
    assert!(max_free_containing(&inst, &bad, &seq()).is_err());
}

#[test]
fn parallel_matches_sequential() {
    let four = SearchConfig::with_workers(4);
    for n in 0..=5 {
        assert_eq!(g3(n, &seq()).unwrap().extremal_size, g3(n, &four).unwrap().extremal_size);
    }
    for k in 0..=6 {
        assert_eq!(
            max_sunflower_free_slice(6, k, &seq()).unwrap().extremal_size,
            max_sunflower_free_slice(6, k, &four).unwrap().extremal_size
        );
    }
}
