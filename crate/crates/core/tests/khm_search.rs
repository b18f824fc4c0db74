use std::collections::HashSet;

use khm_core::catalog::entry;
use khm_core::group_algebra::GroupRingElement;
use khm_core::khm_search::{enumerate_profiles, search, CFilters, SearchSpec, SearchStop};
use khm_core::kimura::{assemble, check_c_conditions, parameter_profile, verify_blocks, KimuraBlocks};
use khm_core::KhmError;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Every tuple with |a| = 2 and |b| = |c| = |d| = 3, checked directly.
fn brute_force_k3() -> HashSet<KimuraBlocks> {
    let el = |s: &Vec<usize>| GroupRingElement::from_support(3, s).unwrap();
    let (twos, threes) = (subsets(6, 2), subsets(6, 3));
    let mut out = HashSet::new();
    for a in &twos {
        for b in &threes {
            for c in &threes {
                for d in &threes {
                    let blocks = KimuraBlocks::new(el(a), el(b), el(c), el(d)).unwrap();
                    if assemble(&blocks).is_hadamard() {
                        out.insert(blocks);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn k3_search_matches_brute_force() {
    let outcome = search(&SearchSpec::new(3)).unwrap();
    assert!(outcome.is_complete());
    let found: HashSet<KimuraBlocks> = outcome.results.iter().cloned().collect();
    assert_eq!(found.len(), outcome.results.len(), "duplicates");
    assert_eq!(found, brute_force_k3());
    assert!(found.contains(&entry("k3").unwrap().blocks().unwrap()));
}

#[test]
fn results_are_valid_and_profiles_enumerated() {
    let profiles = enumerate_profiles(3);
    for blocks in search(&SearchSpec::new(3)).unwrap().results {
        assert!(verify_blocks(&blocks).all_pass());
        assert!(profiles.contains(&parameter_profile(&blocks)));
    }
}

#[test]
fn k3_has_no_y_invariant_solutions() {
    let mut spec = SearchSpec::new(3);
    spec.require_y_invariant = true;
    let outcome = search(&spec).unwrap();
    assert!(outcome.is_complete() && outcome.results.is_empty());
}

#[test]
fn filters_select_a_subset() {
    let mut spec = SearchSpec::new(3);
    spec.c_filters = CFilters::from_list(&[1]).unwrap();
    let filtered = search(&spec).unwrap().results;
    assert!(filtered.iter().all(|b| check_c_conditions(b)[0]));
    let all = search(&SearchSpec::new(3)).unwrap().results;
    let expected = all.iter().filter(|b| check_c_conditions(b)[0]).count();
    assert_eq!(filtered.len(), expected);
}

#[test]
fn whitelist_restricts_profiles() {
    let target = parameter_profile(&entry("k3").unwrap().blocks().unwrap());
    let mut spec = SearchSpec::new(3);
    spec.profile_whitelist = Some(vec![target]);
    let outcome = search(&spec).unwrap();
    assert_eq!(outcome.profiles_tried, 1);
    assert!(outcome.results.iter().all(|b| parameter_profile(b) == target));
    assert!(!outcome.results.is_empty());
}

#[test]
fn k5_y_invariant_solutions_verify() {
    let mut spec = SearchSpec::new(5);
    spec.require_y_invariant = true;
    let outcome = search(&spec).unwrap();
    assert!(outcome.is_complete());
    assert!(!outcome.results.is_empty());
    for b in &outcome.results {
        assert!(b.is_y_invariant() && assemble(b).is_hadamard());
    }
}

#[test]
fn node_cap_stops_early() {
    let mut spec = SearchSpec::new(3);
    spec.limits.node_cap = Some(1);
    let outcome = search(&spec).unwrap();
    assert_eq!(outcome.stopped, Some(SearchStop::NodeCap));
    assert!(matches!(outcome.strict(&spec), Err(KhmError::NodeCapExceeded { cap: 1 })));
}

#[test]
fn invalid_specs_are_rejected() {
    for k in [1, 4, 7] {
        assert!(search(&SearchSpec::new(k)).is_err(), "k = {k}");
    }
    assert!(search(&SearchSpec::new(5)).is_err());
    assert!(CFilters::from_list(&[6]).is_err());
}
