//! The finite-field construction of bordered dihedral Hadamard matrices of
//! order 8p+4 for primes p ≡ 1 (mod 4) with q = 2p − 1 a prime power.
//!
//! K = GF(q²) is built directly as GF(s^{2e}) where q = sᵉ; F = GF(q) is
//! never materialised. Character values are kept as exponents of a fixed
//! primitive 4p-th root of unity ω.

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::field::{is_prime, poly_text, prime_power, ExtField, FieldElement, LogTable};
use crate::group_algebra::{DihedralElement, GroupRingElement};
use crate::kimura::{assemble, KimuraBlocks};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub p: u64,
    pub admissible: bool,
    pub reason: Option<String>,
}

/// p prime, p ≡ 1 (mod 4) and 2p − 1 a prime power.
pub fn is_admissible(p: u64) -> Admissibility {
    let reason = if !is_prime(p) {
        Some(format!("{p} is not prime"))
    } else if p % 4 != 1 {
        Some(format!("{p} is not 1 mod 4"))
    } else if prime_power(2 * p - 1).is_none() {
        Some(format!("q = {} is not a prime power", 2 * p - 1))
    } else {
        None
    };
    Admissibility {
        p,
        admissible: reason.is_none(),
        reason,
    }
}

/// Admissible primes up to `limit`.
pub fn admissible_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_admissible(p).admissible).collect()
}

/// Zero, or ω^exponent with ω a primitive 4p-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclotomicValue {
    Zero,
    Root(u64),
}

impl CyclotomicValue {
    pub fn mul(self, other: Self, p: u64) -> Self {
        match (self, other) {
            (CyclotomicValue::Root(a), CyclotomicValue::Root(b)) => CyclotomicValue::Root((a + b) % (4 * p)),
            _ => CyclotomicValue::Zero,
        }
    }
}

/// Real values ±1 of a cyclotomic value.
pub fn cyclo_to_sign(v: CyclotomicValue, p: u64) -> Result<i64> {
    match v {
        CyclotomicValue::Zero => Err(KhmError::ZeroValue),
        CyclotomicValue::Root(t) => {
            let t = t % (4 * p);
            if t == 0 {
                Ok(1)
            } else if t == 2 * p {
                Ok(-1)
            } else {
                Err(KhmError::NonRealCharacterValue {
                    exponent: t,
                    modulus: 4 * p,
                })
            }
        }
    }
}

/// Quadratic residue symbol modulo the prime p, with χ₂(0) = 0.
pub fn chi2(r: i64, p: u64) -> i64 {
    let r = r.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// χ₄(ζ) = ω^{p·e4} (e4 ∈ {1, 3}) and χ_p(ζ) = ω^{4·jp} (1 ≤ jp < p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterNormalization {
    pub e4: u64,
    pub jp: u64,
}

impl CharacterNormalization {
    pub const DEFAULT: CharacterNormalization = CharacterNormalization { e4: 1, jp: 1 };

    /// All 2(p−1) choices, the default first.
    pub fn all(p: u64) -> Vec<CharacterNormalization> {
        let mut out = Vec::new();
        for e4 in [1, 3] {
            for jp in 1..p {
                out.push(CharacterNormalization { e4, jp });
            }
        }
        out
    }

    /// Exponent of χ(ζ) = χ₄(ζ)·χ_p(ζ).
    pub fn chi_zeta_exponent(&self, p: u64) -> u64 {
        (p * self.e4 + 4 * self.jp) % (4 * p)
    }
}

/// K = GF(q²) with a primitive element and its log table.
#[derive(Clone, Debug)]
pub struct SyParameters {
    pub p: u64,
    pub q: u64,
    pub s: u64,
    pub e: u32,
    pub field: ExtField,
    pub zeta: FieldElement,
    pub table: LogTable,
}

pub fn build_tower(p: u64) -> Result<SyParameters> {
    let adm = is_admissible(p);
    if !adm.admissible {
        return Err(KhmError::NotAdmissible {
            p,
            reason: adm.reason.unwrap_or_default(),
        });
    }
    let q = 2 * p - 1;
    let (s, e) = prime_power(q).expect("admissible");
    let field = ExtField::new(s, 2 * e as usize)?;
    let zeta = field.primitive_element();
    let table = LogTable::new(&field, zeta)?;
    Ok(SyParameters {
        p,
        q,
        s,
        e,
        field,
        zeta,
        table,
    })
}

impl SyParameters {
    /// |K^*| = q² − 1 = 4p(p − 1).
    pub fn group_order(&self) -> u64 {
        self.q * self.q - 1
    }

    /// S_{K/F}(z) = z + z^q.
    pub fn trace(&self, z: FieldElement) -> FieldElement {
        self.field.add(z, self.field.pow(z, self.q))
    }

    /// Trace of ζ^t, via the log table.
    pub fn trace_of_power(&self, t: u64) -> FieldElement {
        let n = self.group_order();
        self.field.add(self.table.exp(t % n), self.table.exp((t % n) * self.q % n))
    }

    pub fn chi4(&self, z: FieldElement, norm: CharacterNormalization) -> CyclotomicValue {
        self.character(z, self.p * norm.e4)
    }

    pub fn chip(&self, z: FieldElement, norm: CharacterNormalization) -> CyclotomicValue {
        self.character(z, 4 * norm.jp)
    }

    pub fn chi(&self, z: FieldElement, norm: CharacterNormalization) -> CyclotomicValue {
        self.character(z, norm.chi_zeta_exponent(self.p))
    }

    fn character(&self, z: FieldElement, zeta_exponent: u64) -> CyclotomicValue {
        match self.table.log(z) {
            None => CyclotomicValue::Zero,
            Some(t) => CyclotomicValue::Root(t % (4 * self.p) * zeta_exponent % (4 * self.p)),
        }
    }

    pub fn modulus_text(&self) -> String {
        poly_text(self.field.modulus())
    }
}

/// Which form of the element a to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AFormula {
    /// a = ((1−y)v + G − (1+y))/2
    Corrected,
    /// a = ((1−y)v + G − (1−y))/2, as usually printed; fails NC1.
    Printed,
}

/// Coefficient vectors u, v, w over ℤ⟨x⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyVectors {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub w: Vec<i64>,
}

fn sign_or_zero(v: CyclotomicValue, p: u64) -> Result<i64> {
    match v {
        CyclotomicValue::Zero => Ok(0),
        other => cyclo_to_sign(other, p),
    }
}

pub fn sy_vectors(params: &SyParameters, norm: CharacterNormalization) -> Result<SyVectors> {
    let p = params.p;
    let mut u = Vec::with_capacity(p as usize);
    let mut v = Vec::with_capacity(p as usize);
    for r in 0..p {
        u.push(sign_or_zero(params.chi(params.trace_of_power(4 * r), norm), p)?);
        v.push(sign_or_zero(params.chi(params.trace_of_power(4 * r + p), norm), p)?);
    }
    // v₀ = χ(0) = 0 is part of the construction; any other zero is not
    if let Some(r) = u.iter().position(|&c| c == 0) {
        return Err(KhmError::ConstructionFailed(format!("trace of ζ^{} is zero", 4 * r)));
    }
    if let Some(r) = v.iter().skip(1).position(|&c| c == 0) {
        return Err(KhmError::ConstructionFailed(format!(
            "trace of ζ^{} is zero",
            4 * (r + 1) as u64 + p
        )));
    }
    let w = (0..p as i64).map(|r| chi2(r, p)).collect();
    Ok(SyVectors { u, v, w })
}

fn rotations(k: usize, c: &[i64]) -> GroupRingElement {
    GroupRingElement::from_halves(c, &vec![0; k]).expect("length k")
}

/// a, b, c = d from u, v, w.
pub fn sy_blocks_from_vectors(p: u64, vecs: &SyVectors, formula: AFormula) -> Result<KimuraBlocks> {
    let k = p as usize;
    let one = GroupRingElement::one(k);
    let y = GroupRingElement::from_group_element(&DihedralElement::y(k));
    let g = GroupRingElement::total(k);
    let one_minus_y = one.sub(&y)?;
    let one_plus_y = one.add(&y)?;
    let a_tail = match formula {
        AFormula::Corrected => &one_plus_y,
        AFormula::Printed => &one_minus_y,
    };
    let a = one_minus_y
        .mul(&rotations(k, &vecs.v))?
        .add(&g)?
        .sub(a_tail)?
        .halve()?;
    let b = one_minus_y.mul(&rotations(k, &vecs.u))?.add(&g)?.halve()?;
    let c = one_minus_y
        .add(&one_plus_y.mul(&rotations(k, &vecs.w))?)?
        .add(&g)?
        .halve()?;
    KimuraBlocks::new(a, b, c.clone(), c)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SyConstruction {
    pub p: u64,
    pub q: u64,
    pub field_characteristic: u64,
    pub field_degree: usize,
    pub modulus: String,
    pub zeta: String,
    pub normalization: CharacterNormalization,
    pub attempts: usize,
    pub vectors: SyVectors,
    pub blocks: KimuraBlocks,
}

/// Build a, b, c, d for p, trying character normalizations in order until
/// the assembled matrix is Hadamard.
pub fn sy_elements(p: u64) -> Result<SyConstruction> {
    let params = build_tower(p)?;
    let mut last_error = None;
    for (attempt, norm) in CharacterNormalization::all(p).into_iter().enumerate() {
        let outcome = sy_vectors(&params, norm).and_then(|vecs| {
            let blocks = sy_blocks_from_vectors(p, &vecs, AFormula::Corrected)?;
            if !assemble(&blocks).is_hadamard() {
                return Err(KhmError::ConstructionFailed("assembled matrix is not Hadamard".into()));
            }
            Ok((vecs, blocks))
        });
        match outcome {
            Ok((vectors, blocks)) => {
                return Ok(SyConstruction {
                    p,
                    q: params.q,
                    field_characteristic: params.s,
                    field_degree: params.field.degree(),
                    modulus: params.modulus_text(),
                    zeta: params.field.display(params.zeta),
                    normalization: norm,
                    attempts: attempt + 1,
                    vectors,
                    blocks,
                })
            }
            Err(e) => last_error = Some(e),
        }
    }
    Err(KhmError::ConstructionFailed(format!(
        "no character normalization works for p = {p}; last error: {}",
        last_error.map(|e| e.to_string()).unwrap_or_default()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(5).admissible);
        assert!(is_admissible(37).admissible);
        let r = is_admissible(17);
        assert!(!r.admissible);
        assert!(r.reason.unwrap().contains("33"));
        assert!(!is_admissible(29).admissible);
        assert!(!is_admissible(7).admissible);
    }

    #[test]
    fn chi2_mod5() {
        let v: Vec<i64> = (0..5).map(|r| chi2(r, 5)).collect();
        assert_eq!(v, vec![0, 1, -1, -1, 1]);
    }

    #[test]
    fn cyclo_sign_rules() {
        assert_eq!(cyclo_to_sign(CyclotomicValue::Root(0), 5).unwrap(), 1);
        assert_eq!(cyclo_to_sign(CyclotomicValue::Root(10), 5).unwrap(), -1);
        assert!(matches!(
            cyclo_to_sign(CyclotomicValue::Root(5), 5),
            Err(KhmError::NonRealCharacterValue { exponent: 5, modulus: 20 })
        ));
        assert!(matches!(cyclo_to_sign(CyclotomicValue::Zero, 5), Err(KhmError::ZeroValue)));
    }

    #[test]
    fn tower_for_p5() {
        let params = build_tower(5).unwrap();
        assert_eq!(params.field.size(), 81);
        assert_eq!(params.group_order(), 80);
        assert!(matches!(build_tower(17), Err(KhmError::NotAdmissible { p: 17, .. })));
    }

    #[test]
    fn p5_construction() {
        let sy = sy_elements(5).unwrap();
        assert_eq!(sy.attempts, 1);
        assert_eq!(sy.blocks.c(), sy.blocks.d());
        assert!(sy.blocks.is_y_invariant());
        assert_eq!(sy.vectors.v[0], 0);
    }
}
