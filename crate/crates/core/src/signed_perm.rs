//! Permutations, signed permutation (monomial) matrices and automorphism
//! pairs.
//!
//! Matrix convention used throughout the crate: the permutation `π` has
//! matrix `P` with `P[i][π(i)] = 1`, and a signed permutation with
//! permutation `π` and sign vector `s` has matrix `M[i][π(i)] = s[i]`.
//! Composition is matrix multiplication, so `a.compose(&b)` is `M_a·M_b`.

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::matrix::{IntMatrix, SignMatrix};

/// Elements that can be materialized into a [`crate::perm_group::PermGroup`].
pub trait GroupElement: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    /// `self · other` as matrices.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Identity element of the same degree.
    fn identity_like(&self) -> Self;
    fn degree(&self) -> usize;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Least m ≥ 1 with selfᵐ = identity.
    fn order(&self) -> u64 {
        let mut m = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            m += 1;
        }
        m
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(KhmError::DimensionMismatch(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    /// Build from 0-based disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (t, &p) in c.iter().enumerate() {
                if p >= n {
                    return Err(KhmError::DimensionMismatch(format!(
                        "cycle point {p} outside degree {n}"
                    )));
                }
                images[p] = c[(t + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                c.push(cur);
                cur = self.images[cur];
            }
            out.push(c);
        }
        out
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.degree();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, self.images[i], 1);
        }
        m
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }
}

impl GroupElement for Permutation {
    fn degree(&self) -> usize {
        self.images.len()
    }

    fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// A ±1 monomial matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Permutation,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: Permutation::identity(n),
            signs: vec![1; n],
        }
    }

    pub fn negative_identity(n: usize) -> Self {
        SignedPermutation {
            perm: Permutation::identity(n),
            signs: vec![-1; n],
        }
    }

    pub fn new(perm: Permutation, signs: Vec<i8>) -> Result<Self> {
        if perm.degree() != signs.len() {
            return Err(KhmError::DimensionMismatch(format!(
                "permutation of degree {} with {} signs",
                perm.degree(),
                signs.len()
            )));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(KhmError::DimensionMismatch("signs must be ±1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn from_permutation(perm: Permutation) -> Self {
        let n = perm.degree();
        SignedPermutation {
            perm,
            signs: vec![1; n],
        }
    }

    pub fn diagonal(signs: Vec<i8>) -> Result<Self> {
        Self::new(Permutation::identity(signs.len()), signs)
    }

    /// Recover from a monomial integer matrix.
    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let n = m.rows();
        if m.cols() != n {
            return Err(KhmError::DimensionMismatch("monomial matrix must be square".into()));
        }
        let mut images = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| m.get(i, j) != 0).collect();
            if nz.len() != 1 || m.get(i, nz[0]).abs() != 1 {
                return Err(KhmError::NotMonomial);
            }
            images.push(nz[0]);
            signs.push(m.get(i, nz[0]) as i8);
        }
        let perm = Permutation::from_images(images).map_err(|_| KhmError::NotMonomial)?;
        Ok(SignedPermutation { perm, signs })
    }

    pub fn degree(&self) -> usize {
        self.signs.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.perm.apply(i)
    }

    #[inline]
    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    /// Permutation part P_R of the unique factorisation R = P_R·D_R.
    pub fn permutation_part(&self) -> Permutation {
        self.perm.clone()
    }

    /// Diagonal of D_R in R = P_R·D_R.
    pub fn diagonal_part(&self) -> Vec<i8> {
        let mut d = vec![1; self.degree()];
        for i in 0..self.degree() {
            d[self.perm.apply(i)] = self.signs[i];
        }
        d
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn is_unsigned(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.degree();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, self.perm.apply(i), self.signs[i] as i64);
        }
        m
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &SignedPermutation) -> SignedPermutation {
        let off = self.degree();
        let mut images: Vec<usize> = self.perm.images().to_vec();
        images.extend(other.perm.images().iter().map(|&j| j + off));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        SignedPermutation {
            perm: Permutation::from_images_unchecked(images),
            signs,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SignedPermutation) -> SignedPermutation {
        let m = other.degree();
        let n = self.degree() * m;
        let mut images = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..self.degree() {
            for a in 0..m {
                images[i * m + a] = self.image(i) * m + other.image(a);
                signs[i * m + a] = self.sign(i) * other.sign(a);
            }
        }
        SignedPermutation {
            perm: Permutation::from_images_unchecked(images),
            signs,
        }
    }

    /// `(1,…,n)`-indexed text form `<cycles> | <±vector>`.
    pub fn text(&self) -> String {
        let sv: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        format!("{} | {}", self.perm.cycle_string(), sv)
    }
}

impl GroupElement for SignedPermutation {
    fn degree(&self) -> usize {
        self.signs.len()
    }

    fn compose(&self, other: &Self) -> Self {
        let n = self.degree();
        let mut images = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            let mid = self.perm.apply(i);
            images.push(other.perm.apply(mid));
            signs.push(self.signs[i] * other.signs[mid]);
        }
        SignedPermutation {
            perm: Permutation::from_images_unchecked(images),
            signs,
        }
    }

    fn inverse(&self) -> Self {
        let n = self.degree();
        let mut images = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let j = self.perm.apply(i);
            images[j] = i;
            signs[j] = self.signs[i];
        }
        SignedPermutation {
            perm: Permutation::from_images_unchecked(images),
            signs,
        }
    }

    fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.is_unsigned()
    }

    fn identity_like(&self) -> Self {
        SignedPermutation::identity(self.degree())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// A pair (R, S) acting on n×n matrices by H ↦ R·H·Sᵀ.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AutPair {
    pub r: SignedPermutation,
    pub s: SignedPermutation,
}

impl AutPair {
    pub fn new(r: SignedPermutation, s: SignedPermutation) -> Result<Self> {
        if r.degree() != s.degree() {
            return Err(KhmError::DimensionMismatch(format!(
                "R has degree {}, S has degree {}",
                r.degree(),
                s.degree()
            )));
        }
        Ok(AutPair { r, s })
    }

    pub fn strong(r: SignedPermutation) -> Self {
        AutPair { s: r.clone(), r }
    }

    pub fn identity(n: usize) -> Self {
        Self::strong(SignedPermutation::identity(n))
    }

    pub fn negative_identity(n: usize) -> Self {
        Self::strong(SignedPermutation::negative_identity(n))
    }

    pub fn degree(&self) -> usize {
        self.r.degree()
    }

    pub fn is_strong(&self) -> bool {
        self.r == self.s
    }

    /// R·H·Sᵀ. Entry (i, j) is `r_i·s_j·H[π_R(i)][π_S(j)]`.
    pub fn apply(&self, h: &SignMatrix) -> Result<SignMatrix> {
        let n = self.degree();
        if h.rows() != n || h.cols() != n {
            return Err(KhmError::DimensionMismatch(format!(
                "pair of degree {n} applied to {}x{} matrix",
                h.rows(),
                h.cols()
            )));
        }
        Ok(SignMatrix::from_fn(n, n, |i, j| {
            self.r.sign(i) * self.s.sign(j) * h.get(self.r.image(i), self.s.image(j))
        }))
    }

    pub fn is_automorphism(&self, h: &SignMatrix) -> Result<bool> {
        let n = self.degree();
        if h.rows() != n || h.cols() != n {
            return Err(KhmError::DimensionMismatch(format!(
                "pair of degree {n} tested on {}x{} matrix",
                h.rows(),
                h.cols()
            )));
        }
        for i in 0..n {
            let ri = self.r.image(i);
            let si = self.r.sign(i);
            for j in 0..n {
                if si * self.s.sign(j) * h.get(ri, self.s.image(j)) != h.get(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `R: <cycles> | <±>; S: <cycles> | <±>` with 1-based cycles.
    pub fn text(&self) -> String {
        format!("R: {}; S: {}", self.r.text(), self.s.text())
    }
}

impl GroupElement for AutPair {
    fn degree(&self) -> usize {
        self.r.signs.len()
    }

    fn compose(&self, other: &Self) -> Self {
        AutPair {
            r: self.r.compose(&other.r),
            s: self.s.compose(&other.s),
        }
    }

    fn inverse(&self) -> Self {
        AutPair {
            r: self.r.inverse(),
            s: self.s.inverse(),
        }
    }

    fn is_identity(&self) -> bool {
        self.r.is_identity() && self.s.is_identity()
    }

    fn identity_like(&self) -> Self {
        AutPair::identity(self.degree())
    }
}

impl fmt::Debug for AutPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl fmt::Display for AutPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

pub fn compose(p: &AutPair, q: &AutPair) -> Result<AutPair> {
    if p.degree() != q.degree() {
        return Err(KhmError::DimensionMismatch(format!(
            "degrees {} and {}",
            p.degree(),
            q.degree()
        )));
    }
    Ok(p.compose(q))
}

pub fn inverse(p: &AutPair) -> AutPair {
    p.inverse()
}

pub fn order_of(p: &AutPair) -> u64 {
    p.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> SignMatrix {
        SignMatrix::from_rows(&[vec![1, 1], vec![1, -1]]).unwrap()
    }

    #[test]
    fn composition_is_matrix_product() {
        let a = SignedPermutation::new(
            Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            vec![1, -1, 1],
        )
        .unwrap();
        let b = SignedPermutation::new(
            Permutation::from_cycles(3, &[vec![0, 2]]).unwrap(),
            vec![-1, -1, 1],
        )
        .unwrap();
        let prod = a.to_matrix().mul(&b.to_matrix()).unwrap();
        assert_eq!(a.compose(&b).to_matrix(), prod);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn unique_factorisation() {
        let r = SignedPermutation::new(
            Permutation::from_cycles(4, &[vec![0, 3, 1]]).unwrap(),
            vec![-1, 1, 1, -1],
        )
        .unwrap();
        let p = SignedPermutation::from_permutation(r.permutation_part());
        let d = SignedPermutation::diagonal(r.diagonal_part()).unwrap();
        assert_eq!(p.compose(&d), r);
    }

    #[test]
    fn identity_pairs_fix_h2() {
        let h = h2();
        assert!(AutPair::identity(2).is_automorphism(&h).unwrap());
        assert!(AutPair::negative_identity(2).is_automorphism(&h).unwrap());
        let neg_rows = AutPair::new(
            SignedPermutation::negative_identity(2),
            SignedPermutation::identity(2),
        )
        .unwrap();
        assert!(!neg_rows.is_automorphism(&h).unwrap());
        assert_eq!(order_of(&AutPair::negative_identity(2)), 2);
    }

    #[test]
    fn apply_agrees_with_matrix_product() {
        let h = SignMatrix::from_rows(&[
            vec![1, 1, 1, 1],
            vec![1, -1, 1, -1],
            vec![1, 1, -1, -1],
            vec![1, -1, -1, 1],
        ])
        .unwrap();
        let r = SignedPermutation::new(
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            vec![1, -1, 1, 1],
        )
        .unwrap();
        let s = SignedPermutation::new(
            Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
            vec![-1, 1, 1, -1],
        )
        .unwrap();
        let p = AutPair::new(r.clone(), s.clone()).unwrap();
        let expected = r
            .to_matrix()
            .mul(&h.to_int())
            .unwrap()
            .mul(&s.to_matrix().transpose())
            .unwrap();
        assert_eq!(p.apply(&h).unwrap().to_int(), expected);
    }

    #[test]
    fn kron_and_direct_sum_match_dense() {
        let a = SignedPermutation::new(
            Permutation::from_cycles(2, &[vec![0, 1]]).unwrap(),
            vec![1, -1],
        )
        .unwrap();
        let b = SignedPermutation::new(
            Permutation::from_cycles(3, &[vec![0, 2]]).unwrap(),
            vec![-1, 1, 1],
        )
        .unwrap();
        let k = a.kron(&b).to_matrix();
        let (am, bm) = (a.to_matrix(), b.to_matrix());
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(k.get(i, j), am.get(i / 3, j / 3) * bm.get(i % 3, j % 3));
            }
        }
        let ds = a.direct_sum(&b).to_matrix();
        assert_eq!(ds.get(0, 1), 1);
        assert_eq!(ds.get(2, 4), -1);
        assert_eq!(ds.get(1, 2), 0);
    }

    #[test]
    fn text_form() {
        let p = AutPair::strong(
            SignedPermutation::new(
                Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
                vec![1, -1, 1],
            )
            .unwrap(),
        );
        assert_eq!(p.text(), "R: (1,2) | +-+; S: (1,2) | +-+");
    }
}
