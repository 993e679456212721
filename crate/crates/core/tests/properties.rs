mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_faces, delta, is_maximal, to_face};
use dixon_complex::genfun::{three_f2_lhs, three_f2_rhs, MSeries};
use dixon_complex::homology::{bareiss_rank, composes_to_zero, sparse_rank};
use dixon_complex::shelling::{family_decomposition_holds, homology_facets_direct};
use dixon_complex::{
    apply_twist, block_partition, boundary_matrix, enumerate_faces, enumerate_facets, facet_certificate,
    f_vector_formula, is_safe_twist, order_o_compare, shift_vectors, twist_sets, verify_euler_poincare,
    ComplexParams, Face, ShellingOrder, TwistDirection, WitnessMode, DEFAULT_FACE_BUDGET,
};

const BUDGET: u64 = DEFAULT_FACE_BUDGET;

fn small_complexes() -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for p in 1..=3 {
        for n in 1..=4 {
            out.push((p, n));
        }
    }
    out.extend([(4, 1), (4, 2), (4, 3), (4, 4)]);
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for (p, n) in small_complexes() {
        let params = ComplexParams::new(p, n).unwrap();
        let brute: BTreeSet<Face> = all_faces(p, n).iter().map(|c| to_face(p, c)).collect();
        let mut listed = BTreeSet::new();
        for dim in -1..=params.max_dim() {
            let faces: Vec<Face> = enumerate_faces(&params, dim).collect();
            assert_eq!(BigInt::from(faces.len()), BigInt::from(params.face_count(dim)), "p={p} n={n} dim={dim}");
            for f in faces {
                assert!(f.is_chain());
                assert_eq!(f.dim(), dim);
                assert!(listed.insert(f), "duplicate face");
            }
        }
        assert_eq!(listed, brute, "p={p} n={n}");
    }
}

#[test]
fn face_counts_are_symmetric() {
    for p in 1..=5 {
        for n in 1..=12 {
            let f = f_vector_formula(&ComplexParams::new(p, n).unwrap());
            let counts = f.counts();
            let rev: Vec<_> = counts.iter().rev().cloned().collect();
            assert_eq!(counts, rev.as_slice());
        }
    }
}

#[test]
fn facet_criterion_matches_maximality() {
    for (p, n) in small_complexes() {
        let params = ComplexParams::new(p, n).unwrap();
        for chain in all_faces(p, n).into_iter().filter(|c| !c.is_empty()) {
            let cert = facet_certificate(&params, &to_face(p, &chain)).unwrap();
            assert_eq!(cert.is_facet(), is_maximal(p, n, &chain), "{chain:?}");
        }
    }
}

#[test]
fn safe_twists_give_facets() {
    for n in 1..=5 {
        let params = delta(n);
        for facet in enumerate_facets(&params, BUDGET).unwrap() {
            let sets = twist_sets(&params, &facet).unwrap();
            for l in 0..facet.len() {
                for (dir, positions) in [(TwistDirection::Up, &sets.a_sets[l]), (TwistDirection::Down, &sets.b_sets[l])] {
                    for &b in positions {
                        if is_safe_twist(&params, &facet, l, b, dir).unwrap() {
                            let twisted = apply_twist(&params, &facet, l, b, dir).unwrap();
                            assert!(facet_certificate(&params, &twisted).unwrap().is_facet(), "{facet} {l} {b} {dir:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn shift_vectors_round_trip() {
    for n in 1..=5 {
        let params = delta(n);
        for facet in enumerate_facets(&params, BUDGET).unwrap() {
            let sv = shift_vectors(&params, &facet).unwrap();
            assert_eq!(sv.to_face(), facet);
            assert!(sv.sums().iter().all(|&s| s == n + 1));
            for l in 0..=facet.len() {
                assert_eq!(sv.column(l).into_iter().min(), Some(1), "{facet} column {l}");
            }
        }
    }
}

#[test]
fn delta_is_impure_and_disconnected() {
    for n in 2..=6 {
        let params = delta(n);
        let facets = enumerate_facets(&params, BUDGET).unwrap();
        let dims: BTreeSet<i64> = facets.iter().map(Face::dim).collect();
        assert!(dims.len() > 1, "n={n}");
        assert!(facets.iter().any(|f| f.len() == 1), "n={n} has no isolated vertex");
    }
}

#[test]
fn canonical_order_agrees_across_witness_modes() {
    for n in 1..=4 {
        let order = ShellingOrder::canonical(&delta(n), BUDGET).unwrap();
        let report = order.verify(WitnessMode::Both);
        assert!(report.is_shelling());
        assert_eq!(report.modes_agree(), Some(true), "n={n}");
    }
}

#[test]
fn homology_criterion_matches_first_holder() {
    for n in 1..=5 {
        let params = delta(n);
        let order = ShellingOrder::canonical(&params, BUDGET).unwrap();
        let report = order.verify(WitnessMode::Constructive);
        let direct: BTreeSet<Face> = homology_facets_direct(&order.certify(&report).unwrap()).into_iter().collect();
        let by_criterion: BTreeSet<Face> = order
            .facets()
            .iter()
            .filter(|f| dixon_complex::homology_facet_by_criterion(&params, f).unwrap())
            .cloned()
            .collect();
        assert_eq!(direct, by_criterion, "n={n}");
    }
}

#[test]
fn families_decompose() {
    for n in 2..=6 {
        assert!(family_decomposition_holds(&delta(n), BUDGET).unwrap(), "n={n}");
    }
}

#[test]
fn euler_poincare_small() {
    for p in 1..=3 {
        for n in 1..=6 {
            if p == 3 && n == 6 {
                continue;
            }
            assert!(verify_euler_poincare(&ComplexParams::new(p, n).unwrap(), BUDGET).unwrap(), "p={p} n={n}");
        }
    }
}

#[test]
fn boundary_squares_to_zero() {
    for (p, n) in [(3, 3), (3, 4), (2, 5)] {
        let params = ComplexParams::new(p, n).unwrap();
        for k in 0..params.max_dim() {
            let lower = boundary_matrix(&params, k, BUDGET).unwrap();
            let upper = boundary_matrix(&params, k + 1, BUDGET).unwrap();
            assert!(composes_to_zero(&lower, &upper), "p={p} n={n} k={k}");
        }
    }
}

fn delta4_facets() -> &'static [Face] {
    use std::sync::OnceLock;
    static FACETS: OnceLock<Vec<Face>> = OnceLock::new();
    FACETS.get_or_init(|| enumerate_facets(&delta(4), BUDGET).unwrap())
}

fn dense_to_columns(m: &[Vec<i64>], cols: usize) -> Vec<Vec<(usize, i64)>> {
    (0..cols)
        .map(|c| m.iter().enumerate().filter(|(_, row)| row[c] != 0).map(|(r, row)| (r, row[c])).collect())
        .collect()
}

fn series_strategy(vars: usize, t: u32) -> impl Strategy<Value = MSeries> {
    prop::collection::vec((prop::collection::vec(0..=t, vars), -4i64..=4), 0..6).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(MSeries::zero(vars, t), |acc, (e, c)| acc.add(&MSeries::monomial(vars, t, &e, c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facet_pairs_have_matching_private_blocks(i in 0usize..217, k in 0usize..217) {
        let facets = delta4_facets();
        let bp = block_partition(&delta(4), &facets[i], &facets[k]).unwrap();
        prop_assert!(bp.private_block_count().is_some());
    }

    #[test]
    fn sorting_any_shuffle_gives_canonical_order(seed in any::<u64>()) {
        let canonical = ShellingOrder::canonical(&delta(4), BUDGET).unwrap();
        let mut facets = canonical.facets().to_vec();
        facets.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        facets.sort_by(order_o_compare);
        prop_assert_eq!(facets.as_slice(), canonical.facets());
    }

    #[test]
    fn sparse_and_dense_ranks_agree(
        m in prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], 7), 1..8)
    ) {
        let columns = dense_to_columns(&m, 7);
        prop_assert_eq!(sparse_rank(m.len(), &columns), bareiss_rank(&m));
    }

    #[test]
    fn large_entries_do_not_break_rank(
        m in prop::collection::vec(prop::collection::vec(-(1i64 << 40)..(1i64 << 40), 5), 5)
    ) {
        let columns = dense_to_columns(&m, 5);
        prop_assert_eq!(sparse_rank(5, &columns), bareiss_rank(&m));
    }

    #[test]
    fn rank_is_permutation_invariant(seed in any::<u64>(), k in 0i64..3) {
        let params = delta(3);
        let d = boundary_matrix(&params, k, BUDGET).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..d.rows()).collect();
        let mut cols: Vec<usize> = (0..d.cols()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let shuffled = d.permuted(&rows, &cols);
        prop_assert_eq!(sparse_rank(d.rows(), d.columns()), sparse_rank(shuffled.rows(), shuffled.columns()));
        prop_assert_eq!(sparse_rank(d.rows(), d.columns()), bareiss_rank(&shuffled.to_dense()));
    }

    #[test]
    fn series_ring_laws(a in series_strategy(3, 3), b in series_strategy(3, 3), c in series_strategy(3, 3)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), MSeries::zero(3, 3));
        prop_assert_eq!(a.mul(&MSeries::one(3, 3)), a.clone());
        let perm = [2, 0, 1];
        prop_assert_eq!(a.mul(&b).permute(&perm), a.permute(&perm).mul(&b.permute(&perm)));
    }

    #[test]
    fn unit_series_invert(a in series_strategy(3, 4)) {
        let shifted = a.mul(&MSeries::var(3, 4, 0));
        let unit = MSeries::one(3, 4).add(&shifted);
        let inv = unit.invert_unit().unwrap();
        prop_assert_eq!(unit.mul(&inv), MSeries::one(3, 4));
    }

    #[test]
    fn three_f2_holds(n1 in 0u64..15, n2 in 0u64..15, n3 in 0u64..15) {
        prop_assert_eq!(three_f2_lhs(n1, n2, n3), three_f2_rhs(n1, n2, n3));
    }
}
