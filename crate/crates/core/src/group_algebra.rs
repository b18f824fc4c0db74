//! The dihedral group D_2k = ⟨x, y | xᵏ = y² = 1, yxy = x⁻¹⟩, its integral
//! group ring, the two regular matrix representations and Aut(D_2k).
//!
//! Elements are indexed by the fixed ordering
//! `x⁰, x¹, …, x^{k−1}, y, xy, …, x^{k−1}y`, i.e. `xⁱ ↦ i` and `xⁱy ↦ k + i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::matrix::IntMatrix;
use crate::signed_perm::Permutation;

fn check_k(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(KhmError::DimensionMismatch(format!("k = {a} vs k = {b}")));
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x^rot · y^flip` in D_2k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    k: usize,
    rot: usize,
    flip: bool,
}

impl DihedralElement {
    pub fn new(k: usize, rot: i64, flip: bool) -> Self {
        DihedralElement {
            k,
            rot: rot.rem_euclid(k as i64) as usize,
            flip,
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::new(k, 0, false)
    }

    pub fn x(k: usize) -> Self {
        Self::new(k, 1, false)
    }

    pub fn y(k: usize) -> Self {
        Self::new(k, 0, true)
    }

    pub fn from_index(k: usize, idx: usize) -> Self {
        DihedralElement {
            k,
            rot: idx % k,
            flip: idx >= k,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rot(&self) -> usize {
        self.rot
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    /// Position in the fixed ordering.
    pub fn index(&self) -> usize {
        self.rot + if self.flip { self.k } else { 0 }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        // x^a y^f · x^b y^g = x^{a + (−1)^f b} y^{f+g}
        let k = self.k as i64;
        let b = if self.flip { -(other.rot as i64) } else { other.rot as i64 };
        DihedralElement {
            k: self.k,
            rot: (self.rot as i64 + b).rem_euclid(k) as usize,
            flip: self.flip ^ other.flip,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn inverse(&self) -> Self {
        if self.flip {
            *self
        } else {
            Self::new(self.k, -(self.rot as i64), false)
        }
    }

    pub fn all(k: usize) -> impl Iterator<Item = DihedralElement> {
        (0..2 * k).map(move |i| DihedralElement::from_index(k, i))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.rot {
            0 if !self.flip => "1".to_string(),
            0 => String::new(),
            1 => "x".to_string(),
            e => format!("x^{e}"),
        };
        if self.flip {
            if r.is_empty() {
                write!(f, "y")
            } else {
                write!(f, "{r}*y")
            }
        } else {
            write!(f, "{r}")
        }
    }
}

pub fn dihedral_mul(g: &DihedralElement, h: &DihedralElement) -> Result<DihedralElement> {
    g.mul(h)
}

/// An element of ℤD_2k as its coefficient vector in the fixed ordering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupRingElement {
    k: usize,
    coeffs: Vec<i64>,
}

impl GroupRingElement {
    pub fn new(k: usize, coeffs: Vec<i64>) -> Result<Self> {
        if k == 0 || coeffs.len() != 2 * k {
            return Err(KhmError::DimensionMismatch(format!(
                "expected {} coefficients for k = {k}, got {}",
                2 * k,
                coeffs.len()
            )));
        }
        Ok(GroupRingElement { k, coeffs })
    }

    pub fn zero(k: usize) -> Self {
        GroupRingElement {
            k,
            coeffs: vec![0; 2 * k],
        }
    }

    pub fn one(k: usize) -> Self {
        Self::from_group_element(&DihedralElement::identity(k))
    }

    /// Σ_{g ∈ D_2k} g.
    pub fn total(k: usize) -> Self {
        GroupRingElement {
            k,
            coeffs: vec![1; 2 * k],
        }
    }

    /// Σ_{i} xⁱ.
    pub fn rotation_sum(k: usize) -> Self {
        let mut c = vec![0; 2 * k];
        c[..k].iter_mut().for_each(|v| *v = 1);
        GroupRingElement { k, coeffs: c }
    }

    pub fn from_group_element(g: &DihedralElement) -> Self {
        let mut w = Self::zero(g.k);
        w.coeffs[g.index()] = 1;
        w
    }

    /// `Σ rot[i]·xⁱ + Σ refl[i]·xⁱy`.
    pub fn from_halves(rot: &[i64], refl: &[i64]) -> Result<Self> {
        check_k(rot.len(), refl.len())?;
        let mut c = rot.to_vec();
        c.extend_from_slice(refl);
        Self::new(rot.len(), c)
    }

    pub fn from_support(k: usize, support: &[usize]) -> Result<Self> {
        let mut w = Self::zero(k);
        for &i in support {
            if i >= 2 * k {
                return Err(KhmError::DimensionMismatch(format!("index {i} outside 2k")));
            }
            w.coeffs[i] += 1;
        }
        Ok(w)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: &DihedralElement) -> i64 {
        self.coeffs[g.index()]
    }

    /// w₁ in w = w₁ + w₂y.
    pub fn rotation_half(&self) -> &[i64] {
        &self.coeffs[..self.k]
    }

    /// w₂ in w = w₁ + w₂y.
    pub fn reflection_half(&self) -> &[i64] {
        &self.coeffs[self.k..]
    }

    /// Number of nonzero coefficients, |w|.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..2 * self.k).filter(|&i| self.coeffs[i] != 0).collect()
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_binary(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0 || c == 1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        Ok(GroupRingElement {
            k: self.k,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        Ok(GroupRingElement {
            k: self.k,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: i64) -> Self {
        GroupRingElement {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Convolution over D_2k.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_k(self.k, other.k)?;
        let k = self.k;
        let mut out = vec![0i64; 2 * k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let g = DihedralElement::from_index(k, i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let h = DihedralElement::from_index(k, j);
                    out[g.mul_unchecked(&h).index()] += a * b;
                }
            }
        }
        Ok(GroupRingElement { k, coeffs: out })
    }

    /// Coefficient-wise division by 2.
    pub fn halve(&self) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().position(|c| c % 2 != 0) {
            return Err(KhmError::NotHalvable { index });
        }
        Ok(GroupRingElement {
            k: self.k,
            coeffs: self.coeffs.iter().map(|c| c / 2).collect(),
        })
    }

    /// The involution Σ a_g g ↦ Σ a_g g⁻¹; ρ(w*) = ρ(w)ᵀ.
    pub fn star(&self) -> Self {
        let mut out = vec![0; 2 * self.k];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[DihedralElement::from_index(self.k, i).inverse().index()] = a;
        }
        GroupRingElement {
            k: self.k,
            coeffs: out,
        }
    }

    /// Both halves fixed by conjugation with y: c[i] = c[−i mod k].
    pub fn is_y_invariant(&self) -> bool {
        let k = self.k;
        let sym = |h: &[i64]| (0..k).all(|i| h[i] == h[(k - i) % k]);
        sym(self.rotation_half()) && sym(self.reflection_half())
    }

    /// ±1 vector: 1 ↦ 1, 0 ↦ −1.
    pub fn to_pm(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(position, &v)| match v {
                1 => Ok(1),
                0 => Ok(-1),
                value => Err(KhmError::NotBinary { position, value }),
            })
            .collect()
    }

    /// Parse the textual grammar, e.g. `1+x^2+x^2*y`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        parse_element(text, k)
    }

    /// Text form in the element grammar when all coefficients are
    /// non-negative; repeated terms encode multiplicities.
    pub fn to_grammar(&self) -> Option<String> {
        if self.coeffs.iter().any(|&c| c < 0) {
            return None;
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            for _ in 0..c {
                terms.push(DihedralElement::from_index(self.k, i).to_string());
            }
        }
        if terms.is_empty() {
            Some("0".into())
        } else {
            Some(terms.join("+"))
        }
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement(k={}, {})", self.k, self)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.to_grammar() {
            return write!(f, "{s}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let g = DihedralElement::from_index(self.k, i);
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{g}")?;
            } else {
                write!(f, "{sign}{mag}*{g}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn ring_mul(u: &GroupRingElement, v: &GroupRingElement) -> Result<GroupRingElement> {
    u.mul(v)
}

pub fn halve(u: &GroupRingElement) -> Result<GroupRingElement> {
    u.halve()
}

pub fn is_y_invariant(w: &GroupRingElement) -> bool {
    w.is_y_invariant()
}

/// Right regular representation of a group element: `u ↦ u·g`.
pub fn rho_perm(g: &DihedralElement) -> Permutation {
    let k = g.k;
    Permutation::from_images_unchecked(
        DihedralElement::all(k).map(|u| u.mul_unchecked(g).index()).collect(),
    )
}

/// Left regular representation of a group element: `u ↦ g⁻¹·u`.
pub fn lambda_perm(g: &DihedralElement) -> Permutation {
    let k = g.k;
    let ginv = g.inverse();
    Permutation::from_images_unchecked(
        DihedralElement::all(k).map(|u| ginv.mul_unchecked(&u).index()).collect(),
    )
}

fn linear_extension(w: &GroupRingElement, rep: impl Fn(&DihedralElement) -> Permutation) -> IntMatrix {
    let n = 2 * w.k;
    let mut m = IntMatrix::zeros(n, n);
    for (i, &c) in w.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let p = rep(&DihedralElement::from_index(w.k, i));
        for u in 0..n {
            let v = p.apply(u);
            m.set(u, v, m.get(u, v) + c);
        }
    }
    m
}

/// ρ(w) = Σ w_g·[δ^{ug}_v].
pub fn rho(w: &GroupRingElement) -> IntMatrix {
    linear_extension(w, rho_perm)
}

/// λ(w) = Σ w_g·[δ^{g⁻¹u}_v].
pub fn lambda(w: &GroupRingElement) -> IntMatrix {
    linear_extension(w, lambda_perm)
}

/// Entrywise 1 ↦ 1, 0 ↦ −1.
pub fn to_pm(m: &IntMatrix) -> Result<IntMatrix> {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.get(i, j) {
                1 => out.set(i, j, 1),
                0 => out.set(i, j, -1),
                value => {
                    return Err(KhmError::NotBinary {
                        position: i * m.cols() + j,
                        value,
                    })
                }
            }
        }
    }
    Ok(out)
}

/// σ_ij: x ↦ xⁱ, y ↦ xʲy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralAut {
    k: usize,
    i: usize,
    j: usize,
}

impl DihedralAut {
    pub fn new(k: usize, i: i64, j: i64) -> Result<Self> {
        if k < 3 {
            return Err(KhmError::NotAnAutomorphism(format!("k = {k} < 3")));
        }
        let i = i.rem_euclid(k as i64) as usize;
        let j = j.rem_euclid(k as i64) as usize;
        if gcd(i, k) != 1 {
            return Err(KhmError::NotAnAutomorphism(format!("gcd({i}, {k}) ≠ 1")));
        }
        Ok(DihedralAut { k, i, j })
    }

    pub fn identity(k: usize) -> Self {
        DihedralAut { k, i: 1, j: 0 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All σ_ij in order of (i, j).
    pub fn all(k: usize) -> Vec<DihedralAut> {
        let mut out = Vec::new();
        for i in 1..k {
            if gcd(i, k) != 1 {
                continue;
            }
            for j in 0..k {
                out.push(DihedralAut { k, i, j });
            }
        }
        out
    }

    pub fn apply(&self, g: &DihedralElement) -> DihedralElement {
        // x^r y^f ↦ x^{ir + jf} y^f
        let f = g.flip as usize;
        DihedralElement::new(self.k, (self.i * g.rot + self.j * f) as i64, g.flip)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &DihedralAut) -> Result<DihedralAut> {
        check_k(self.k, other.k)?;
        let k = self.k;
        Ok(DihedralAut {
            k,
            i: (self.i * other.i) % k,
            j: (self.i * other.j + self.j) % k,
        })
    }

    pub fn inverse(&self) -> DihedralAut {
        let k = self.k;
        let inv_i = (1..k).find(|&t| (t * self.i) % k == 1).expect("unit");
        // σ_{i',j'} with i·i' = 1 and i·j' + j = 0
        let j = ((k - self.j) * inv_i) % k;
        DihedralAut { k, i: inv_i, j }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 1 && self.j == 0
    }
}

impl fmt::Display for DihedralAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma_{{{},{}}}", self.i, self.j)
    }
}

/// Linear extension of g ↦ φ(g).
pub fn aut_apply(phi: &DihedralAut, w: &GroupRingElement) -> Result<GroupRingElement> {
    check_k(phi.k, w.k)?;
    let mut out = vec![0; 2 * w.k];
    for (idx, &c) in w.coeffs.iter().enumerate() {
        out[phi.apply(&DihedralElement::from_index(w.k, idx)).index()] += c;
    }
    Ok(GroupRingElement { k: w.k, coeffs: out })
}

/// P_φ with `P_φ[g][φ(g)] = 1`, so that coeffs(φ(w)) = coeffs(w)·P_φ.
pub fn aut_perm_matrix(phi: &DihedralAut) -> Permutation {
    Permutation::from_images_unchecked(
        DihedralElement::all(phi.k).map(|g| phi.apply(&g).index()).collect(),
    )
}

/// Q = diag(P, I_k) with P the inversion xⁱ ↦ x⁻ⁱ on rotations; it
/// satisfies Q·ρ(g)·Q⁻¹ = λ(g).
pub fn conjugator_q(k: usize) -> Result<Permutation> {
    if k < 3 || k % 2 == 0 {
        return Err(KhmError::UnsupportedParameter(format!(
            "conjugator Q needs odd k ≥ 3, got {k}"
        )));
    }
    let images = (0..2 * k).map(|i| if i < k { (k - i) % k } else { i }).collect();
    Ok(Permutation::from_images_unchecked(images))
}

/// Parse the element grammar:
///
/// ```text
/// element := term ('+' term)* ;  term := '1' | 'x' | 'y' | 'x^' INT | ('x' | 'x^' INT) '*'? 'y'
/// ```
///
/// Whitespace is ignored, exponents are reduced mod k and repeated terms add
/// up. The literal `0` denotes the zero element.
pub fn parse_element(text: &str, k: usize) -> Result<GroupRingElement> {
    if k == 0 {
        return Err(KhmError::parse(0, "k must be positive"));
    }
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut out = GroupRingElement::zero(k);
    if chars.len() == 1 && chars[0].1 == '0' {
        return Ok(out);
    }
    let end = text.len();
    let pos_at = |i: usize| chars.get(i).map_or(end, |&(p, _)| p);
    let mut i = 0;
    loop {
        let (rot, flip);
        match chars.get(i).map(|&(_, c)| c) {
            Some('1') => {
                rot = 0;
                flip = false;
                i += 1;
            }
            Some('y') => {
                rot = 0;
                flip = true;
                i += 1;
            }
            Some('x') => {
                i += 1;
                let mut e: i64 = 1;
                if chars.get(i).map(|&(_, c)| c) == Some('^') {
                    i += 1;
                    let start = i;
                    let mut neg = false;
                    if chars.get(i).map(|&(_, c)| c) == Some('-') {
                        neg = true;
                        i += 1;
                    }
                    let digits_start = i;
                    while chars.get(i).is_some_and(|&(_, c)| c.is_ascii_digit()) {
                        i += 1;
                    }
                    if i == digits_start {
                        return Err(KhmError::parse(pos_at(start), "expected exponent after '^'"));
                    }
                    let s: String = chars[digits_start..i].iter().map(|&(_, c)| c).collect();
                    let v: i64 = s
                        .parse()
                        .map_err(|_| KhmError::parse(pos_at(digits_start), "exponent too large"))?;
                    e = if neg { -v } else { v };
                }
                rot = e.rem_euclid(k as i64) as usize;
                let mut f = false;
                if chars.get(i).map(|&(_, c)| c) == Some('*') {
                    i += 1;
                    if chars.get(i).map(|&(_, c)| c) != Some('y') {
                        return Err(KhmError::parse(pos_at(i), "expected 'y' after '*'"));
                    }
                }
                if chars.get(i).map(|&(_, c)| c) == Some('y') {
                    i += 1;
                    f = true;
                }
                flip = f;
            }
            Some(c) => return Err(KhmError::parse(pos_at(i), format!("unexpected '{c}'"))),
            None => return Err(KhmError::parse(pos_at(i), "expected a term")),
        }
        out.coeffs[rot + if flip { k } else { 0 }] += 1;
        match chars.get(i).map(|&(_, c)| c) {
            None => break,
            Some('+') => i += 1,
            Some(c) => return Err(KhmError::parse(pos_at(i), format!("expected '+', found '{c}'"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(text: &str, k: usize) -> GroupRingElement {
        parse_element(text, k).unwrap()
    }

    #[test]
    fn dihedral_relations() {
        let k = 5;
        let x = DihedralElement::x(k);
        let y = DihedralElement::y(k);
        assert_eq!(x.mul(&y).unwrap(), DihedralElement::new(k, 1, true));
        assert_eq!(y.mul(&x).unwrap(), DihedralElement::new(k, (k - 1) as i64, true));
        let g = DihedralElement::new(k, 3, true);
        let h = DihedralElement::new(k, 4, true);
        assert_eq!(g.mul(&h).unwrap(), DihedralElement::new(k, 4, false));
        assert!(matches!(
            x.mul(&DihedralElement::x(7)),
            Err(KhmError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn ring_examples() {
        let k = 3;
        let one = GroupRingElement::one(k);
        let v = el("1+x^2+x*y", k);
        assert_eq!(one.mul(&v).unwrap(), v);
        let one_minus_y = one.sub(&el("y", k)).unwrap();
        let sq = one_minus_y.mul(&one_minus_y).unwrap();
        assert_eq!(sq, GroupRingElement::new(k, vec![2, 0, 0, -2, 0, 0]).unwrap());
        let p = el("1+x", k).mul(&el("y", k)).unwrap();
        assert_eq!(p.coeffs(), &[0, 0, 0, 1, 1, 0]);
    }

    #[test]
    fn halving() {
        let k = 3;
        let e = GroupRingElement::new(k, vec![2, 0, 0, -2, 0, 0]).unwrap();
        assert_eq!(e.halve().unwrap().coeffs(), &[1, 0, 0, -1, 0, 0]);
        assert_eq!(GroupRingElement::zero(k).halve().unwrap(), GroupRingElement::zero(k));
        assert!(matches!(el("1+x", k).halve(), Err(KhmError::NotHalvable { index: 0 })));
    }

    #[test]
    fn rho_of_identity_and_block_structure() {
        assert_eq!(rho(&GroupRingElement::one(4)), IntMatrix::identity(8));
        let k = 5;
        for g in DihedralElement::all(k) {
            let m = rho(&GroupRingElement::from_group_element(&g));
            let y1 = m.block(0, 0, k);
            let y2 = m.block(0, k, k);
            assert_eq!(m.block(k, 0, k), y2.transpose());
            assert_eq!(m.block(k, k, k), y1.transpose());
            for blk in [&y1, &y2] {
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(blk.get(i, j), blk.get(0, (j + k - i) % k), "circulant");
                    }
                }
            }
        }
    }

    #[test]
    fn to_pm_examples() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(to_pm(&z).unwrap(), IntMatrix::filled(2, 3, -1));
        let id = to_pm(&IntMatrix::identity(2)).unwrap();
        assert_eq!(id, IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap());
        assert_eq!(el("1+x", 3).to_pm().unwrap(), vec![1, 1, -1, -1, -1, -1]);
        assert!(matches!(
            to_pm(&IntMatrix::filled(1, 1, 2)),
            Err(KhmError::NotBinary { .. })
        ));
    }

    #[test]
    fn y_invariance_examples() {
        assert!(GroupRingElement::total(7).is_y_invariant());
        assert!(!el("1+x", 3).is_y_invariant());
        assert!(el("1+x+x^6", 7).is_y_invariant());
        // conjugating 1+x by y gives 1+x^2
        let y = el("y", 3);
        let conj = y.mul(&el("1+x", 3)).unwrap().mul(&y).unwrap();
        assert_eq!(conj, el("1+x^2", 3));
    }

    #[test]
    fn automorphism_examples() {
        let w = el("1+x+x^2*y", 5);
        assert_eq!(aut_apply(&DihedralAut::identity(5), &w).unwrap(), w);
        let phi = DihedralAut::new(3, 1, 1).unwrap();
        assert_eq!(
            aut_apply(&phi, &el("1+x^2+x^2*y", 3)).unwrap(),
            el("1+x^2+y", 3)
        );
        assert!(matches!(DihedralAut::new(9, 3, 0), Err(KhmError::NotAnAutomorphism(_))));
    }

    #[test]
    fn aut_perm_matrix_acts_on_coefficient_rows() {
        let k = 7;
        let w = el("1+x^3+x^5*y+y", k);
        for phi in DihedralAut::all(k) {
            let p = aut_perm_matrix(&phi).to_matrix();
            let row = IntMatrix::from_rows(&[w.coeffs().to_vec()]).unwrap();
            let moved = row.mul(&p).unwrap();
            assert_eq!(moved.row(0), aut_apply(&phi, &w).unwrap().coeffs());
        }
    }

    #[test]
    fn q_for_k3() {
        let q = conjugator_q(3).unwrap();
        assert_eq!(q.images(), &[0, 2, 1, 3, 4, 5]);
        assert!(matches!(conjugator_q(4), Err(KhmError::UnsupportedParameter(_))));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(el("1+x", 3).coeffs(), &[1, 1, 0, 0, 0, 0]);
        assert_eq!(el("1+x^2+x^2*y", 3).coeffs(), &[1, 0, 1, 0, 0, 1]);
        assert_eq!(el(" x^4 y + x*y + 1 + 1", 3).coeffs(), &[2, 0, 0, 0, 2, 0]);
        assert!(matches!(parse_element("x^^2", 3), Err(KhmError::Parse { position: 2, .. })));
        assert!(parse_element("1+", 3).is_err());
        assert!(parse_element("z", 3).is_err());
        assert!(parse_element("x*", 3).is_err());
    }

    #[test]
    fn grammar_round_trip() {
        let w = el("x+x^4+x^12+x^2*y+y", 13);
        assert_eq!(el(&w.to_grammar().unwrap(), 13), w);
    }
}
