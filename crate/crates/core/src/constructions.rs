//! Explicit automorphisms of bordered dihedral Hadamard matrices.
//!
//! All matrices of permutations use `P[i][π(i)] = 1`. Block-diagonal sums
//! are written `diag(…)`; `bdiag(…)` places its blocks on the anti-diagonal,
//! first block in the top-right corner.

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::group_algebra::{aut_apply, aut_perm_matrix, DihedralAut, DihedralElement, GroupRingElement};
use crate::kimura::KimuraBlocks;
use crate::matrix::SignMatrix;
use crate::perm_group::{closure_pairs, project_unsigned, GroupFingerprint, PermGroup};
use crate::signed_perm::{AutPair, GroupElement, Permutation, SignedPermutation};

pub const DEFAULT_CAP: usize = 1 << 20;

/// Permutation matrix from 1-based cycles.
fn cyc(n: usize, cycles: &[&[usize]]) -> SignedPermutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
    SignedPermutation::from_permutation(Permutation::from_cycles(n, &cycles).expect("valid cycles"))
}

/// diag(d)·P.
fn left_diag(d: &[i8], p: &SignedPermutation) -> SignedPermutation {
    let signs = (0..p.degree()).map(|i| d[i] * p.sign(i)).collect();
    SignedPermutation::new(p.permutation_part(), signs).expect("matching degree")
}

/// P·diag(d).
fn right_diag(p: &SignedPermutation, d: &[i8]) -> SignedPermutation {
    let signs = (0..p.degree()).map(|i| p.sign(i) * d[p.image(i)]).collect();
    SignedPermutation::new(p.permutation_part(), signs).expect("matching degree")
}

fn signs(d: &[i8]) -> SignedPermutation {
    SignedPermutation::diagonal(d.to_vec()).expect("±1")
}

fn diag(parts: &[SignedPermutation]) -> SignedPermutation {
    parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, p| acc.direct_sum(p))
}

fn bdiag(parts: &[SignedPermutation]) -> SignedPermutation {
    let n: usize = parts.iter().map(SignedPermutation::degree).sum();
    let mut images = Vec::with_capacity(n);
    let mut sg = Vec::with_capacity(n);
    let mut used = 0;
    for p in parts {
        used += p.degree();
        let col = n - used;
        for i in 0..p.degree() {
            images.push(col + p.image(i));
            sg.push(p.sign(i));
        }
    }
    SignedPermutation::new(Permutation::from_images(images).expect("bijection"), sg).expect("±1")
}

fn id(n: usize) -> SignedPermutation {
    SignedPermutation::identity(n)
}

fn require_odd(k: usize) -> Result<()> {
    if k < 3 || k % 2 == 0 {
        return Err(KhmError::UnsupportedParameter(format!("needs odd k ≥ 3, got {k}")));
    }
    Ok(())
}

/// Simultaneous development by x: F = diag(I₄, E, E, E, E), E = diag(p_k, p_k).
pub fn sigma1(k: usize) -> Result<AutPair> {
    require_odd(k)?;
    let pk = SignedPermutation::from_permutation(Permutation::from_images_unchecked(
        (0..k).map(|i| (i + 1) % k).collect(),
    ));
    let e = diag(&[pk.clone(), pk]);
    Ok(AutPair::strong(diag(&[id(4), e.clone(), e.clone(), e.clone(), e])))
}

/// L = diag(I₄, K, K, K, K), K = bdiag(q_k, q_k), q_k the inversion on ℤ_k.
pub fn sigma2(k: usize) -> Result<AutPair> {
    require_odd(k)?;
    let qk = SignedPermutation::from_permutation(Permutation::from_images_unchecked(
        (0..k).map(|i| (k - i) % k).collect(),
    ));
    let kk = bdiag(&[qk.clone(), qk]);
    Ok(AutPair::strong(diag(&[id(4), kk.clone(), kk.clone(), kk.clone(), kk])))
}

fn klein_perms() -> (SignedPermutation, SignedPermutation) {
    (cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]]))
}

/// (R₁, S₁) with R₁ = diag(bdiag(−1,1,−1,1), D₁P₁ ⊗ I_2k) and
/// S₁ = diag(D₂P₂, D₃P₁ ⊗ I_2k).
pub fn sigma3(k: usize) -> Result<AutPair> {
    if k < 3 {
        return Err(KhmError::UnsupportedParameter(format!("needs k ≥ 3, got {k}")));
    }
    let (p1, p2) = klein_perms();
    let i2k = id(2 * k);
    let r = diag(&[
        bdiag(&[signs(&[-1]), signs(&[1]), signs(&[-1]), signs(&[1])]),
        left_diag(&[-1, 1, -1, 1], &p1).kron(&i2k),
    ]);
    let s = diag(&[
        left_diag(&[1, -1, -1, 1], &p2),
        left_diag(&[-1, 1, 1, -1], &p1).kron(&i2k),
    ]);
    AutPair::new(r, s)
}

/// (R₂, S₂) with R₂ = diag(D₁P₁, D₂P₂ ⊗ I_2k) and
/// S₂ = diag(bdiag(1,1,−1,−1), D₃P₂ ⊗ I_2k).
pub fn sigma4(k: usize) -> Result<AutPair> {
    if k < 3 {
        return Err(KhmError::UnsupportedParameter(format!("needs k ≥ 3, got {k}")));
    }
    let (p1, p2) = klein_perms();
    let i2k = id(2 * k);
    let r = diag(&[
        left_diag(&[-1, 1, 1, -1], &p1),
        left_diag(&[1, -1, -1, 1], &p2).kron(&i2k),
    ]);
    let s = diag(&[
        bdiag(&[signs(&[1]), signs(&[1]), signs(&[-1]), signs(&[-1])]),
        left_diag(&[1, 1, -1, -1], &p2).kron(&i2k),
    ]);
    AutPair::new(r, s)
}

/// Swap the rotation and reflection halves of every body block:
/// (Q, Q) with Q = diag(I₄, P, P, P, P), P = bdiag(I_k, I_k).
pub fn sigma5(k: usize) -> AutPair {
    let p = bdiag(&[id(k), id(k)]);
    AutPair::strong(diag(&[id(4), p.clone(), p.clone(), p.clone(), p]))
}

pub fn neg_id(n: usize) -> AutPair {
    AutPair::negative_identity(n)
}

fn p_phi_inverse(phi: &DihedralAut) -> SignedPermutation {
    SignedPermutation::from_permutation(aut_perm_matrix(phi)).inverse()
}

/// (E_φ, E_φ) with E_φ = diag(I₄, P_φ⁻¹, P_φ⁻¹, P_φ⁻¹, P_φ⁻¹).
pub fn holo_fix(phi: &DihedralAut) -> AutPair {
    let pinv = p_phi_inverse(phi);
    AutPair::strong(diag(&[id(4), pinv.clone(), pinv.clone(), pinv.clone(), pinv]))
}

/// R = diag(P₃, P₃ ⊗ P_φ⁻¹), S = diag(P₂, P₁ ⊗ P_φ⁻¹) with P₁ = (2,3,4),
/// P₂ = (1,3,2) and P₃ = diag(1,1,−1,−1)·P₁.
///
/// This is an automorphism when φ fixes a and maps b ↦ d ↦ c ↦ b. For the
/// other orientation use [`holo_3cycle_for`].
pub fn holo_3cycle(phi: &DihedralAut) -> AutPair {
    let p1 = cyc(4, &[&[2, 3, 4]]);
    let p2 = cyc(4, &[&[1, 3, 2]]);
    let p3 = left_diag(&[1, 1, -1, -1], &p1);
    let pinv = p_phi_inverse(phi);
    let r = diag(&[p3.clone(), p3.kron(&pinv)]);
    let s = diag(&[p2, p1.kron(&pinv)]);
    AutPair::new(r, s).expect("equal degrees")
}

/// The 3-cycle automorphism for whichever orientation φ induces on {b, c, d}.
pub fn holo_3cycle_for(phi: &DihedralAut, blocks: &KimuraBlocks) -> Result<AutPair> {
    match three_cycle_orientation(phi, blocks)? {
        Some(ThreeCycle::BDC) => Ok(holo_3cycle(phi)),
        Some(ThreeCycle::BCD) => Ok(holo_3cycle(&phi.inverse()).inverse()),
        None => Err(KhmError::HypothesisViolated(
            "φ does not fix a and cycle {b, c, d}".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeCycle {
    /// b ↦ c ↦ d ↦ b
    BCD,
    /// b ↦ d ↦ c ↦ b
    BDC,
}

fn three_cycle_orientation(phi: &DihedralAut, blocks: &KimuraBlocks) -> Result<Option<ThreeCycle>> {
    let img = |w: &GroupRingElement| aut_apply(phi, w);
    if img(blocks.a())? != *blocks.a() {
        return Ok(None);
    }
    let (b, c, d) = (blocks.b(), blocks.c(), blocks.d());
    let (pb, pc, pd) = (img(b)?, img(c)?, img(d)?);
    if pb == *c && pc == *d && pd == *b {
        Ok(Some(ThreeCycle::BCD))
    } else if pb == *d && pd == *c && pc == *b {
        Ok(Some(ThreeCycle::BDC))
    } else {
        Ok(None)
    }
}

/// M = diag(P₁D, I_2k, I_2k, −Ī_2k, −Ī_2k) with P₁ = (1,2)(3,4),
/// D = diag(1,1,−1,−1) and Ī_2k = bdiag(I_k, I_k). It satisfies
/// M·H(A,B,C,D)·Mᵀ = H(A,B,D,C) for y-invariant blocks.
pub fn swap_cd_matrix(k: usize) -> SignedPermutation {
    let (p1, _) = klein_perms();
    let ibar = bdiag(&[id(k), id(k)]);
    let neg_ibar = left_diag(&vec![-1; 2 * k], &ibar);
    diag(&[right_diag(&p1, &[1, 1, -1, -1]), id(2 * k), id(2 * k), neg_ibar.clone(), neg_ibar])
}

/// Alternative pair (M₁, M₂) with M₁ = diag(bdiag(1,1,1,1), bdiag(I,I,Ī,Ī))
/// and M₂ = diag(diag(1,−1,−1,1), bdiag(−I,I,Ī,−Ī)).
pub fn swap_cd_pair_alt(k: usize) -> AutPair {
    let one = signs(&[1]);
    let i = id(2 * k);
    let neg_i = SignedPermutation::negative_identity(2 * k);
    let ibar = bdiag(&[id(k), id(k)]);
    let neg_ibar = left_diag(&vec![-1; 2 * k], &ibar);
    let m1 = diag(&[
        bdiag(&[one.clone(), one.clone(), one.clone(), one]),
        bdiag(&[i.clone(), i.clone(), ibar.clone(), ibar.clone()]),
    ]);
    let m2 = diag(&[signs(&[1, -1, -1, 1]), bdiag(&[neg_i, i, ibar, neg_ibar])]);
    AutPair::new(m1, m2).expect("equal degrees")
}

fn e_phi(phi: &DihedralAut) -> SignedPermutation {
    holo_fix(phi).r
}

/// Check the swap hypotheses, naming the first that fails.
pub fn check_swap_cd_hypotheses(phi: &DihedralAut, blocks: &KimuraBlocks) -> Result<()> {
    let k = blocks.k();
    if phi.k() != k {
        return Err(KhmError::DimensionMismatch(format!("φ on D_{} vs k = {k}", 2 * phi.k())));
    }
    let y = GroupRingElement::from_group_element(&DihedralElement::y(k));
    if blocks.c().mul(&y)?.add(blocks.d())? != GroupRingElement::total(k) {
        return Err(KhmError::HypothesisViolated("cy + d is not the sum of all group elements".into()));
    }
    if !blocks.is_y_invariant() {
        return Err(KhmError::HypothesisViolated("blocks are not y-invariant".into()));
    }
    if aut_apply(phi, blocks.a())? != *blocks.a() {
        return Err(KhmError::HypothesisViolated("φ(a) ≠ a".into()));
    }
    if aut_apply(phi, blocks.b())? != *blocks.b() {
        return Err(KhmError::HypothesisViolated("φ(b) ≠ b".into()));
    }
    if aut_apply(phi, blocks.c())? != *blocks.d() {
        return Err(KhmError::HypothesisViolated("φ(c) ≠ d".into()));
    }
    Ok(())
}

/// (M_φ·M, M_φ·M) where M_φ = E_φ.
pub fn holo_swap_cd(phi: &DihedralAut, blocks: &KimuraBlocks) -> Result<AutPair> {
    check_swap_cd_hypotheses(phi, blocks)?;
    let m = e_phi(phi).compose(&swap_cd_matrix(blocks.k()));
    Ok(AutPair::strong(m))
}

/// (M_φ·M₁, M_φ·M₂), the non-strong variant.
pub fn holo_swap_cd_alt(phi: &DihedralAut, blocks: &KimuraBlocks) -> Result<AutPair> {
    check_swap_cd_hypotheses(phi, blocks)?;
    let e = e_phi(phi);
    let alt = swap_cd_pair_alt(blocks.k());
    AutPair::new(e.compose(&alt.r), e.compose(&alt.s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum HolomorphKind {
    /// φ fixes a, b, c and d; `pointwise` when it also fixes every group
    /// element in their supports.
    Fix { pointwise: bool },
    ThreeCycle { orientation: ThreeCycle },
    SwapCd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolomorphHit {
    pub i: usize,
    pub j: usize,
    #[serde(flatten)]
    pub kind: HolomorphKind,
}

impl HolomorphHit {
    pub fn phi(&self, k: usize) -> DihedralAut {
        DihedralAut::new(k, self.i as i64, self.j as i64).expect("scanned from Aut(D_2k)")
    }
}

/// Every non-identity σ_ij matching one of the three holomorph patterns.
pub fn scan_holomorph(blocks: &KimuraBlocks) -> Vec<HolomorphHit> {
    let k = blocks.k();
    let mut hits = Vec::new();
    if k < 3 {
        return hits;
    }
    for phi in DihedralAut::all(k) {
        if phi.is_identity() {
            continue;
        }
        let fixes = blocks
            .elements()
            .iter()
            .all(|w| aut_apply(&phi, w).map(|v| v == **w).unwrap_or(false));
        let hit = |kind| HolomorphHit { i: phi.i(), j: phi.j(), kind };
        if fixes {
            let pointwise = blocks.elements().iter().all(|w| {
                w.support()
                    .into_iter()
                    .all(|idx| phi.apply(&DihedralElement::from_index(k, idx)).index() == idx)
            });
            hits.push(hit(HolomorphKind::Fix { pointwise }));
        }
        if let Ok(Some(orientation)) = three_cycle_orientation(&phi, blocks) {
            hits.push(hit(HolomorphKind::ThreeCycle { orientation }));
        }
        if check_swap_cd_hypotheses(&phi, blocks).is_ok() {
            hits.push(hit(HolomorphKind::SwapCd));
        }
    }
    hits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorTag {
    Sigma1,
    Sigma2,
    Sigma3,
    Sigma4,
    Sigma5,
    NegId,
    HoloFix { i: usize, j: usize, pointwise: bool },
    Holo3cycle { i: usize, j: usize },
    HoloSwapCd { i: usize, j: usize },
}

#[derive(Clone, Debug)]
pub struct TaggedGenerator {
    pub tag: GeneratorTag,
    pub pair: AutPair,
}

#[derive(Clone, Debug)]
pub struct ConstructedSubgroup {
    pub generators: Vec<TaggedGenerator>,
    pub holomorph_hits: Vec<HolomorphHit>,
    pub y_invariant: bool,
    pub group: PermGroup<AutPair>,
}

/// Every explicit generator applicable to `blocks`, in a fixed order.
pub fn constructed_generators(blocks: &KimuraBlocks) -> Result<(Vec<TaggedGenerator>, Vec<HolomorphHit>)> {
    let k = blocks.k();
    let mut gens = vec![
        TaggedGenerator { tag: GeneratorTag::Sigma1, pair: sigma1(k)? },
        TaggedGenerator { tag: GeneratorTag::Sigma2, pair: sigma2(k)? },
        TaggedGenerator { tag: GeneratorTag::Sigma3, pair: sigma3(k)? },
        TaggedGenerator { tag: GeneratorTag::Sigma4, pair: sigma4(k)? },
    ];
    if blocks.is_y_invariant() {
        gens.push(TaggedGenerator { tag: GeneratorTag::Sigma5, pair: sigma5(k) });
    }
    let hits = scan_holomorph(blocks);
    for h in &hits {
        let phi = h.phi(k);
        let (tag, pair) = match h.kind {
            HolomorphKind::Fix { pointwise } => (
                GeneratorTag::HoloFix { i: h.i, j: h.j, pointwise },
                holo_fix(&phi),
            ),
            HolomorphKind::ThreeCycle { .. } => (
                GeneratorTag::Holo3cycle { i: h.i, j: h.j },
                holo_3cycle_for(&phi, blocks)?,
            ),
            HolomorphKind::SwapCd => (
                GeneratorTag::HoloSwapCd { i: h.i, j: h.j },
                holo_swap_cd(&phi, blocks)?,
            ),
        };
        if !gens.iter().any(|g| g.pair == pair) {
            gens.push(TaggedGenerator { tag, pair });
        }
    }
    Ok((gens, hits))
}

/// Closure of all explicit generators. Each generator is checked against
/// `h` first; a failure is reported as `ConstructionFailed`.
pub fn constructed_subgroup(h: &SignMatrix, blocks: &KimuraBlocks, cap: usize) -> Result<ConstructedSubgroup> {
    let (generators, holomorph_hits) = constructed_generators(blocks)?;
    for g in &generators {
        if !g.pair.is_automorphism(h)? {
            return Err(KhmError::ConstructionFailed(format!(
                "generator {:?} is not an automorphism",
                g.tag
            )));
        }
    }
    let pairs: Vec<AutPair> = generators.iter().map(|g| g.pair.clone()).collect();
    let group = closure_pairs(h.rows(), &pairs, cap)?;
    Ok(ConstructedSubgroup {
        generators,
        holomorph_hits,
        y_invariant: blocks.is_y_invariant(),
        group,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub tag: GeneratorTag,
    pub order: u64,
    pub strong: bool,
    pub pair: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub generators: Vec<GeneratorSummary>,
    pub subgroup_order: usize,
    pub y_invariant: bool,
    pub holomorph_hits: Vec<HolomorphHit>,
    pub fingerprint: GroupFingerprint,
}

impl ConstructedSubgroup {
    pub fn report(&self) -> ConstructionReport {
        ConstructionReport {
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorSummary {
                    tag: g.tag.clone(),
                    order: g.pair.order(),
                    strong: g.pair.is_strong(),
                    pair: g.pair.text(),
                })
                .collect(),
            subgroup_order: self.group.order(),
            y_invariant: self.y_invariant,
            holomorph_hits: self.holomorph_hits.clone(),
            fingerprint: self.group.fingerprint(),
        }
    }
}

/// A block system on one orbit; cells use 1-based row labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystemReport {
    pub cells: Vec<Vec<usize>>,
    pub cell_size: usize,
    pub quotient: GroupFingerprint,
    pub cell_action: GroupFingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub points: Vec<usize>,
    pub action: GroupFingerprint,
    pub primitive: bool,
    pub block_systems: Vec<BlockSystemReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedActionReport {
    pub k: usize,
    pub row_group_order: usize,
    pub kernel_order: usize,
    pub orbits: Vec<OrbitReport>,
}

impl InducedActionReport {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.points.len()).collect()
    }
}

/// Orbits of A(H) = π(π₁(G)) on rows, with every minimal block system of
/// each orbit and the induced quotient and per-cell actions.
pub fn induced_action_report(g: &PermGroup<AutPair>, k: usize) -> Result<InducedActionReport> {
    let a = project_unsigned(g);
    let mut orbits = Vec::new();
    for orbit in a.orbits() {
        let action = a.action_on(&orbit)?;
        let systems = if orbit.len() > 1 { action.all_minimal_block_systems()? } else { Vec::new() };
        let mut block_systems = Vec::new();
        for bs in &systems {
            let quotient = action.induced_block_action(bs)?.fingerprint();
            let cell_action = action.point_stabilizer_action(&bs.cells[0])?.fingerprint();
            block_systems.push(BlockSystemReport {
                cells: bs
                    .cells
                    .iter()
                    .map(|c| c.iter().map(|&p| orbit[p] + 1).collect())
                    .collect(),
                cell_size: bs.cell_size(),
                quotient,
                cell_action,
            });
        }
        orbits.push(OrbitReport {
            points: orbit.iter().map(|p| p + 1).collect(),
            action: action.fingerprint(),
            primitive: systems.is_empty(),
            block_systems,
        });
    }
    Ok(InducedActionReport {
        k,
        row_group_order: a.order(),
        kernel_order: g.order() / a.order().max(1),
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kimura::assemble;

    fn k3() -> KimuraBlocks {
        KimuraBlocks::parse(3, "1+x", "1+x^2+x^2*y", "1+x^2+x*y", "1+x^2+y").unwrap()
    }

    #[test]
    fn bdiag_places_first_block_top_right() {
        let m = bdiag(&[signs(&[-1]), signs(&[1]), signs(&[-1]), signs(&[1])]).to_matrix();
        assert_eq!(m.get(0, 3), -1);
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.get(2, 1), -1);
        assert_eq!(m.get(3, 0), 1);
    }

    #[test]
    fn diagonal_factors_match_dense_products() {
        let (p1, _) = klein_perms();
        let d = [1i8, 1, -1, -1];
        let dm = signs(&d).to_matrix();
        assert_eq!(left_diag(&d, &p1).to_matrix(), dm.mul(&p1.to_matrix()).unwrap());
        assert_eq!(right_diag(&p1, &d).to_matrix(), p1.to_matrix().mul(&dm).unwrap());
    }

    #[test]
    fn sigma_family_on_k3() {
        let h = assemble(&k3());
        for g in [sigma1(3), sigma2(3), sigma3(3), sigma4(3)] {
            assert!(g.unwrap().is_automorphism(&h).unwrap());
        }
        assert!(!sigma5(3).is_automorphism(&h).unwrap());
        assert!(matches!(sigma1(4), Err(KhmError::UnsupportedParameter(_))));
    }

    #[test]
    fn three_cycle_on_k3() {
        let blocks = k3();
        let h = assemble(&blocks);
        let phi = DihedralAut::new(3, 1, 1).unwrap();
        let g = holo_3cycle_for(&phi, &blocks).unwrap();
        assert!(g.is_automorphism(&h).unwrap());
        assert_eq!(g.order(), 3);
        assert!(!holo_3cycle(&DihedralAut::identity(3)).is_automorphism(&h).unwrap());
        let back = holo_3cycle_for(&phi.inverse(), &blocks).unwrap();
        assert!(back.is_automorphism(&h).unwrap());
    }

    #[test]
    fn swap_rejected_for_k3() {
        let phi = DihedralAut::new(3, 1, 0).unwrap();
        assert!(matches!(holo_swap_cd(&phi, &k3()), Err(KhmError::HypothesisViolated(_))));
    }

    #[test]
    fn k3_scan_and_subgroup() {
        let blocks = k3();
        let hits = scan_holomorph(&blocks);
        assert!(hits.iter().any(|h| h.i == 1 && h.j == 1 && matches!(h.kind, HolomorphKind::ThreeCycle { .. })));
        let sub = constructed_subgroup(&assemble(&blocks), &blocks, DEFAULT_CAP).unwrap();
        assert_eq!(sub.group.order(), 144);
    }
}
