mod common;

use posetmat::{
    are_isomorphic, canonical_form, closure_from_edges, compose, dual, hasse_edges, is_connected,
    normalize_linear_extension, validate_axioms, CompositionKind, PosetMatrix, RelationTable,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn arb_grid(max_n: usize) -> impl Strategy<Value = Grid> {
    (1..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0u8..=1, n), n))
}

/// A random poset of order `1..=max_n` in a linear extension.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Grid> {
    (1..=max_n, any::<u64>(), 0.05f64..0.8).prop_map(|(n, seed, density)| {
        random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

fn arb_permuted_poset(max_n: usize) -> impl Strategy<Value = (Grid, Vec<usize>)> {
    arb_poset(max_n).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Cover pairs `(lower, upper)` straight from the definition.
fn reduction_oracle(a: &Grid) -> Vec<(usize, usize)> {
    let n = a.len();
    let mut edges = Vec::new();
    for y in 0..n {
        for z in 0..n {
            if y != z
                && a[y][z] == 1
                && !(0..n).any(|w| w != y && w != z && a[y][w] == 1 && a[w][z] == 1)
            {
                edges.push((z, y));
            }
        }
    }
    edges.sort_unstable();
    edges
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn validation_agrees_with_brute_force(a in arb_grid(6)) {
        let report = validate_axioms(&RelationTable::from_rows(&a).unwrap());
        prop_assert_eq!(report.reflexive_ok, reflexive(&a));
        prop_assert_eq!(report.antisymmetric_ok, antisymmetric(&a));
        prop_assert_eq!(report.transitive_ok, transitive(&a));
        prop_assert_eq!(report.lower_triangular_ok, lower_triangular(&a));
        prop_assert_eq!(report.is_poset(), is_poset(&a));
        prop_assert_eq!(report.violations.is_empty(), is_poset(&a));
        prop_assert_eq!(PosetMatrix::from_rows(&a).is_ok(), is_poset(&a) && lower_triangular(&a));
    }

    #[test]
    fn key_ignores_storage_order((a, perm) in arb_permuted_poset(8)) {
        let relabeled = sort_topologically(&permute(&a, &perm));
        prop_assert_eq!(canonical_form(&matrix(&a)), canonical_form(&matrix(&relabeled)));
        prop_assert!(are_isomorphic(&matrix(&a), &matrix(&relabeled)));
    }

    #[test]
    fn normalization_finds_a_linear_extension((a, perm) in arb_permuted_poset(8)) {
        let scrambled = permute(&a, &perm);
        let table = RelationTable::from_rows(&scrambled).unwrap();
        let normalized = normalize_linear_extension(&table).unwrap();
        prop_assert!(lower_triangular(&grid(&normalized)));
        prop_assert_eq!(canonical_form(&normalized), canonical_form(&matrix(&a)));
    }

    #[test]
    fn hasse_round_trip(a in arb_poset(9)) {
        let m = matrix(&a);
        let edges = hasse_edges(&m);
        prop_assert_eq!(&edges, &reduction_oracle(&a));
        let closed = closure_from_edges(a.len(), &edges).unwrap();
        prop_assert_eq!(closed.to_rows(), a);
    }

    #[test]
    fn dual_is_an_involution(a in arb_poset(9)) {
        let m = matrix(&a);
        prop_assert_eq!(grid(&dual(&m)), dual_grid(&a));
        prop_assert_eq!(dual(&dual(&m)), m);
    }

    #[test]
    fn connectivity_is_structural((a, perm) in arb_permuted_poset(9)) {
        let m = matrix(&a);
        prop_assert_eq!(is_connected(&m), connected_oracle(&a));
        prop_assert_eq!(is_connected(&dual(&m)), is_connected(&m));
        let relabeled = matrix(&sort_topologically(&permute(&a, &perm)));
        prop_assert_eq!(is_connected(&relabeled), is_connected(&m));
    }

    #[test]
    fn point_is_a_unit(a in arb_poset(8), i in 0usize..8) {
        let m = matrix(&a);
        let point = PosetMatrix::point();
        let i = i % m.order() + 1;
        let right = compose(CompositionKind::Square, &m, i, &point).unwrap();
        prop_assert_eq!(right.matrix.to_rows(), a.clone());
        // the triangles may drop relations of a point that is both min and max
        for kind in CompositionKind::ALL {
            let left = compose(kind, &point, 1, &m).unwrap();
            prop_assert_eq!(left.matrix.to_rows(), a.clone());
        }
    }

    #[test]
    fn composition_validity_matches_the_oracle(a in arb_poset(6), b in arb_poset(5), i in 0usize..6) {
        let i = i % a.len() + 1;
        for kind in CompositionKind::ALL {
            let out = compose(kind, &matrix(&a), i, &matrix(&b)).unwrap();
            let g = out.matrix.to_rows();
            prop_assert_eq!(g.len(), a.len() + b.len() - 1);
            prop_assert_eq!(out.is_valid(), is_poset(&g));
            prop_assert!(lower_triangular(&g));
        }
    }
}

#[test]
fn key_is_stable_over_many_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [5, 6, 7] {
        let a = random_poset(&mut rng, n, 0.3);
        let key = canonical_form(&matrix(&a));
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..1000 {
            perm.shuffle(&mut rng);
            let relabeled = matrix(&sort_topologically(&permute(&a, &perm)));
            assert_eq!(canonical_form(&relabeled), key);
        }
    }
}
