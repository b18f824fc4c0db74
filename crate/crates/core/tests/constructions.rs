use khm_core::catalog::entry;
use khm_core::constructions::*;
use khm_core::group_algebra::{aut_apply, DihedralAut};
use khm_core::kimura::{assemble, KimuraBlocks};
use khm_core::perm_group::PermGroup;
use khm_core::signed_perm::{AutPair, GroupElement};
use khm_core::KhmError;

fn blocks(id: &str) -> KimuraBlocks {
    entry(id).unwrap().blocks().unwrap()
}

fn group(gens: &[AutPair]) -> PermGroup<AutPair> {
    PermGroup::closure(AutPair::identity(gens[0].degree()), gens, DEFAULT_CAP).unwrap()
}

#[test]
fn dihedral_relations() {
    for k in [3usize, 5, 7, 9, 11] {
        let (s1, s2) = (sigma1(k).unwrap(), sigma2(k).unwrap());
        assert!(s1.pow(k as u64).is_identity());
        assert_eq!(s1.order(), k as u64);
        assert_eq!(s2.order(), 2);
        assert_eq!(s2.compose(&s1).compose(&s2), s1.inverse());
        assert!(s1.is_strong() && s2.is_strong());
    }
    assert_eq!(group(&[sigma1(9).unwrap(), sigma2(9).unwrap()]).order(), 18);
}

#[test]
fn quaternion_relations() {
    for k in [3usize, 5, 13] {
        let (s3, s4) = (sigma3(k).unwrap(), sigma4(k).unwrap());
        let n = 8 * k + 4;
        assert_eq!(s3.pow(2), AutPair::negative_identity(n));
        assert_eq!(s4.pow(2), AutPair::negative_identity(n));
        assert!(s3.pow(4).is_identity());
        assert_eq!(s3.inverse().compose(&s4).compose(&s3), s4.inverse());
        assert_eq!(s4.inverse().compose(&s3).compose(&s4), s3.inverse());
        assert_eq!(s3.order(), 4);
        let q8 = group(&[s3, s4]);
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.fingerprint().tuple(), (8, 4, 2, 2, vec![2, 2]));
    }
}

#[test]
fn subgroups_commute_and_meet_trivially() {
    for k in [3usize, 5] {
        let d = group(&[sigma1(k).unwrap(), sigma2(k).unwrap()]);
        let q = group(&[sigma3(k).unwrap(), sigma4(k).unwrap()]);
        let c = group(&[sigma5(k)]);
        for (x, y) in [(&d, &q), (&d, &c), (&q, &c)] {
            for g in x.elements() {
                for h in y.elements() {
                    assert_eq!(g.compose(h), h.compose(g));
                    if g == h {
                        assert!(g.is_identity());
                    }
                }
            }
        }
        assert_eq!(sigma5(k).order(), 2);
    }
}

#[test]
fn sigma5_needs_y_invariance() {
    assert!(!sigma5(3).is_automorphism(&assemble(&blocks("k3"))).unwrap());
    for id in ["sy5", "sy13", "k13"] {
        assert!(sigma5(blocks(id).k()).is_automorphism(&assemble(&blocks(id))).unwrap(), "{id}");
    }
}

#[test]
fn holo_fix_identity_and_fixing_automorphisms() {
    assert!(holo_fix(&DihedralAut::identity(7)).is_identity());
    let b = blocks("sy5");
    let h = assemble(&b);
    let mut fixing = 0;
    for phi in DihedralAut::all(5) {
        let fixes = b.elements().iter().all(|w| aut_apply(&phi, w).unwrap() == **w);
        if fixes {
            fixing += 1;
            assert!(holo_fix(&phi).is_automorphism(&h).unwrap(), "{phi}");
        }
    }
    assert!(fixing > 1);
}

#[test]
fn k3_three_cycle_raises_order_to_144() {
    let b = blocks("k3");
    let h = assemble(&b);
    let phi = DihedralAut::new(3, 1, 1).unwrap();
    let g = holo_3cycle_for(&phi, &b).unwrap();
    assert!(g.is_automorphism(&h).unwrap());
    assert_eq!(g.order(), 3);
    let base = [sigma1(3).unwrap(), sigma2(3).unwrap(), sigma3(3).unwrap(), sigma4(3).unwrap(), neg_id(28)];
    assert_eq!(group(&base).order(), 48);
    let mut all = base.to_vec();
    all.push(g);
    assert_eq!(group(&all).order(), 144);
}

#[test]
fn k13_swap_automorphism() {
    let b = blocks("k13");
    let h = assemble(&b);
    let phi = DihedralAut::new(13, 5, 0).unwrap();
    assert!(!holo_fix(&phi).is_automorphism(&h).unwrap());
    let g = holo_swap_cd(&phi, &b).unwrap();
    assert!(g.is_automorphism(&h).unwrap());
    assert_eq!(g.order(), 4);
    assert!(g.is_strong());
    assert!(holo_swap_cd_alt(&phi, &b).unwrap().is_automorphism(&h).unwrap());
    // M·H·Mᵀ = H(A, B, D, C)
    let m = AutPair::strong(swap_cd_matrix(13));
    assert_eq!(m.apply(&h).unwrap(), assemble(&b.swap_cd()));
    let hits = scan_holomorph(&b);
    assert!(hits.iter().any(|x| x.i == 5 && x.j == 0 && x.kind == HolomorphKind::SwapCd));
}

#[test]
fn swap_hypotheses_checked() {
    let phi = DihedralAut::new(3, 1, 0).unwrap();
    match holo_swap_cd(&phi, &blocks("k3")) {
        Err(KhmError::HypothesisViolated(msg)) => assert!(msg.contains("cy + d"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn constructed_subgroup_orders() {
    for (id, order) in [("k3", 144), ("k13", 832), ("sy5", 160)] {
        let b = blocks(id);
        let sub = constructed_subgroup(&assemble(&b), &b, DEFAULT_CAP).unwrap();
        assert_eq!(sub.group.order(), order, "{id}");
        let report = sub.report();
        assert_eq!(report.subgroup_order, order);
        assert!(report.generators.iter().all(|g| g.order >= 2));
    }
    let b = blocks("sy13");
    let sub = constructed_subgroup(&assemble(&b), &b, DEFAULT_CAP).unwrap();
    assert!(sub.group.order() >= 32 * 13);
}

#[test]
fn generic_blocks_have_no_holomorph_hits() {
    // not a KHM; the scan only compares group-ring elements
    let b = KimuraBlocks::parse(5, "1+x+x^3*y+x^4*y", "x+x^2*y", "1+y+x*y", "x^3+x^4").unwrap();
    assert!(scan_holomorph(&b).is_empty());
}
