use khm_core::catalog::catalog;
use khm_core::formats::{parse_blocks, parse_matrix, write_blocks, write_matrix};
use khm_core::group_algebra::{conjugator_q, lambda, to_pm, GroupRingElement};
use khm_core::khm_search::{enumerate_profiles, search, SearchSpec};
use khm_core::kimura::*;
use khm_core::signed_perm::{AutPair, SignedPermutation};
use khm_core::KhmError;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

const SEED: u64 = 0x4b48_4d02;

fn random_element(rng: &mut StdRng, k: usize, size: usize) -> GroupRingElement {
    let support: Vec<usize> = sample(rng, 2 * k, size).into_vec();
    GroupRingElement::from_support(k, &support).unwrap()
}

fn equations_hold(blocks: &KimuraBlocks) -> bool {
    let [a, b, c, d] = blocks.pm_blocks();
    check_block_equations(&a, &b, &c, &d).unwrap().all_pass()
}

#[test]
fn block_equations_match_hadamard_property() {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut positives = 0;
    for _ in 0..200 {
        let blocks = KimuraBlocks::new(
            random_element(&mut rng, 3, 2),
            random_element(&mut rng, 3, 3),
            random_element(&mut rng, 3, 3),
            random_element(&mut rng, 3, 3),
        )
        .unwrap();
        let had = assemble(&blocks).is_hadamard();
        positives += usize::from(had);
        assert_eq!(equations_hold(&blocks), had, "{blocks:?}");
    }
    // the random draw is almost surely all negative; add known solutions
    for blocks in search(&SearchSpec::new(3)).unwrap().results {
        assert!(equations_hold(&blocks));
        positives += 1;
    }
    assert!(positives > 0);
}

#[test]
fn catalog_entries_verify() {
    for e in catalog() {
        let blocks = e.blocks().unwrap();
        let report = verify_blocks(&blocks);
        assert!(report.is_hadamard && report.eq1_ok && report.eq12_ok, "{}", e.id);
        assert!(report.nc_flags.iter().all(|&f| f), "{}", e.id);
        assert!(report.all_pass(), "{}", e.id);
        assert!(enumerate_profiles(e.k).contains(&report.profile), "{}", e.id);
        assert_eq!(report.y_invariant, e.y_invariant);
    }
}

#[test]
fn printed_examples_and_search_conditions() {
    let blocks = catalog().iter().find(|e| e.id == "k13").unwrap().blocks().unwrap();
    // |b1| = 5 < |c1| = |d1| = 7, so the printed elements miss C3
    assert_eq!(check_c_conditions(&blocks), [true, true, false, true, true]);
    // |b1| = 2 is even, and a = 1 + x is not j − 1 − a2
    let k3 = catalog()[0].blocks().unwrap();
    assert_eq!(check_c_conditions(&k3), [true, false, true, false, false]);
}

#[test]
fn decompose_rejects_other_shapes() {
    let blocks = catalog()[0].blocks().unwrap();
    let h = assemble(&blocks);
    assert!(matches!(decompose(&h.negate_row(1), 3), Err(KhmError::NotKimuraForm(_))));
    // a block A that is not ρ of any group-ring element, placed consistently
    let [mut a, b, c, d] = blocks.pm_blocks();
    a.set(0, 0, -a.get(0, 0));
    let broken = assemble_from_matrices(&a, &b, &c, &d).unwrap();
    assert!(matches!(decompose(&broken, 3), Err(KhmError::NotDihedralType { block: 'A' })));
    assert!(decompose(&h, 4).is_err());
}

#[test]
fn left_and_right_blocks_give_equivalent_matrices() {
    // Q·ρ(w)·Qᵀ = λ(w), so (diag(I₄, Q, Q, Q, Q)) maps one matrix to the other
    let blocks = catalog()[0].blocks().unwrap();
    let [a, b, c, d] = blocks.elements().map(|w| to_pm(&lambda(w)).unwrap());
    let left = assemble_from_matrices(&a, &b, &c, &d).unwrap();
    assert!(left.is_hadamard());
    let q = SignedPermutation::from_permutation(conjugator_q(3).unwrap());
    let mut big = SignedPermutation::identity(4);
    for _ in 0..4 {
        big = big.direct_sum(&q);
    }
    let right = assemble(&blocks);
    assert_eq!(AutPair::strong(big).apply(&right).unwrap(), left);
}

#[test]
fn matrix_files_round_trip_for_catalog() {
    for e in catalog() {
        let blocks = e.blocks().unwrap();
        let h = assemble(&blocks);
        let text = write_matrix(&h, e.k);
        let (k, back) = parse_matrix(&text).unwrap();
        let rebuilt = decompose(&back, k).unwrap();
        assert_eq!(rebuilt, blocks);
        assert_eq!(write_matrix(&assemble(&rebuilt), k), text);
        assert_eq!(parse_blocks(&write_blocks(&blocks)).unwrap(), blocks);
    }
}

fn blocks_strategy(k: usize) -> impl Strategy<Value = KimuraBlocks> {
    let el = move || {
        prop::collection::vec(0i64..=1, 2 * k).prop_map(move |c| GroupRingElement::new(k, c).unwrap())
    };
    (el(), el(), el(), el()).prop_map(|(a, b, c, d)| KimuraBlocks::new(a, b, c, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn decompose_inverts_assemble(blocks in blocks_strategy(5)) {
        let h = assemble(&blocks);
        prop_assert_eq!(decompose(&h, 5).unwrap(), blocks);
    }

    #[test]
    fn parse_inverts_write(blocks in blocks_strategy(3)) {
        let h = assemble(&blocks);
        let text = write_matrix(&h, 3);
        prop_assert_eq!(parse_matrix(&text).unwrap(), (3, h));
    }

    #[test]
    fn transpose_satisfies_the_same_identities(blocks in blocks_strategy(3)) {
        let h = assemble(&blocks);
        prop_assert_eq!(h.is_hadamard(), h.transpose().is_hadamard());
        prop_assert_eq!(equations_hold(&blocks), h.is_hadamard());
    }
}
