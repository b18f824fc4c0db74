//! Bordered 4-block assembly of order 8k+4 and the arithmetic conditions on
//! its blocks.
//!
//! Layout (m = 2k, W = ±1 version of ρ(w)):
//!
//! ```text
//!  1  1  1  1 |  1  1  1  1
//!  1  1 -1 -1 |  1  1 -1 -1
//!  1 -1  1 -1 |  1 -1  1 -1
//!  1 -1 -1  1 | -1  1  1 -1
//!  1  1  1 -1 |  A  B  C  D
//!  1  1 -1  1 | -B  A  D -C
//!  1 -1  1  1 | -C -D  A  B
//!  1 -1 -1 -1 |  D -C  B -A
//! ```
//!
//! Every entry on the right of the bar in the first four rows stands for a
//! constant row of length m; every entry below the bar on the left stands for
//! a constant column of length m.

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::group_algebra::{rho, to_pm, GroupRingElement};
use crate::matrix::{IntMatrix, SignMatrix};

const CORNER: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
const TOP: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [-1, 1, 1, -1]];
const LEFT: [[i8; 4]; 4] = [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [1, -1, -1, -1]];
/// (block index into [A, B, C, D], sign) for each body slot.
const BODY: [[(usize, i8); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, -1), (0, 1), (3, 1), (2, -1)],
    [(2, -1), (3, -1), (0, 1), (1, 1)],
    [(3, 1), (2, -1), (1, 1), (0, -1)],
];
const NAMES: [char; 4] = ['A', 'B', 'C', 'D'];

/// Four {0,1}-coefficient elements of ℤD_2k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KimuraBlocks {
    k: usize,
    a: GroupRingElement,
    b: GroupRingElement,
    c: GroupRingElement,
    d: GroupRingElement,
}

impl KimuraBlocks {
    pub fn new(
        a: GroupRingElement,
        b: GroupRingElement,
        c: GroupRingElement,
        d: GroupRingElement,
    ) -> Result<Self> {
        let k = a.k();
        for w in [&a, &b, &c, &d] {
            if w.k() != k {
                return Err(KhmError::DimensionMismatch(format!(
                    "blocks mix k = {k} and k = {}",
                    w.k()
                )));
            }
            if let Some(position) = w.coeffs().iter().position(|&v| v != 0 && v != 1) {
                return Err(KhmError::NotBinary {
                    position,
                    value: w.coeffs()[position],
                });
            }
        }
        Ok(KimuraBlocks { k, a, b, c, d })
    }

    /// Parse the four elements in the group-ring grammar.
    pub fn parse(k: usize, a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        Self::new(
            GroupRingElement::parse(a, k)?,
            GroupRingElement::parse(b, k)?,
            GroupRingElement::parse(c, k)?,
            GroupRingElement::parse(d, k)?,
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        8 * self.k + 4
    }

    pub fn a(&self) -> &GroupRingElement {
        &self.a
    }

    pub fn b(&self) -> &GroupRingElement {
        &self.b
    }

    pub fn c(&self) -> &GroupRingElement {
        &self.c
    }

    pub fn d(&self) -> &GroupRingElement {
        &self.d
    }

    pub fn elements(&self) -> [&GroupRingElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// The same blocks with c and d exchanged.
    pub fn swap_cd(&self) -> KimuraBlocks {
        KimuraBlocks {
            k: self.k,
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.d.clone(),
            d: self.c.clone(),
        }
    }

    pub fn is_y_invariant(&self) -> bool {
        self.elements().iter().all(|w| w.is_y_invariant())
    }

    /// ±1 matrices [A, B, C, D].
    pub fn pm_blocks(&self) -> [IntMatrix; 4] {
        self.elements().map(|w| block_matrix(w).expect("binary by construction"))
    }
}

/// to_pm(ρ(w)).
pub fn block_matrix(w: &GroupRingElement) -> Result<IntMatrix> {
    to_pm(&rho(w))
}

pub fn assemble(blocks: &KimuraBlocks) -> SignMatrix {
    let [a, b, c, d] = blocks.pm_blocks();
    assemble_from_matrices(&a, &b, &c, &d).expect("blocks share one size")
}

/// Bordered assembly from four ±1 matrices of equal order m.
pub fn assemble_from_matrices(
    a: &IntMatrix,
    b: &IntMatrix,
    c: &IntMatrix,
    d: &IntMatrix,
) -> Result<SignMatrix> {
    let m = a.rows();
    for w in [a, b, c, d] {
        if w.rows() != m || w.cols() != m {
            return Err(KhmError::DimensionMismatch("blocks must be square of equal order".into()));
        }
    }
    let blocks = [a, b, c, d];
    let n = 4 * m + 4;
    let mut entries = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            entries.set(i, j, slot_value(&blocks, m, i, j));
        }
    }
    SignMatrix::from_int(&entries)
}

fn slot_value(blocks: &[&IntMatrix; 4], m: usize, i: usize, j: usize) -> i64 {
    match (i < 4, j < 4) {
        (true, true) => CORNER[i][j] as i64,
        (true, false) => TOP[i][(j - 4) / m] as i64,
        (false, true) => LEFT[(i - 4) / m][j] as i64,
        (false, false) => {
            let (br, bc) = ((i - 4) / m, (j - 4) / m);
            let (which, sign) = BODY[br][bc];
            sign as i64 * blocks[which].get((i - 4) % m, (j - 4) % m)
        }
    }
}

/// Outcome of the four matrix identities and the seven row-sum identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEquationReport {
    pub matrix_identities: [bool; 4],
    pub row_sum_identities: [bool; 7],
}

impl BlockEquationReport {
    pub fn all_pass(&self) -> bool {
        self.matrix_identities.iter().all(|&b| b) && self.row_sum_identities.iter().all(|&b| b)
    }
}

/// (τ, α, β, γ, δ) sign tuples of the row-sum identities.
pub const ROW_SUM_SIGNS: [[i64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [1, 1, 1, -1, -1],
    [1, 1, -1, 1, -1],
    [1, 1, -1, -1, 1],
    [-1, -1, -1, 1, 1],
    [-1, -1, 1, -1, 1],
    [-1, -1, 1, 1, -1],
];

pub fn check_block_equations(
    a: &IntMatrix,
    b: &IntMatrix,
    c: &IntMatrix,
    d: &IntMatrix,
) -> Result<BlockEquationReport> {
    let m = a.rows();
    for w in [a, b, c, d] {
        if w.rows() != m || w.cols() != m {
            return Err(KhmError::DimensionMismatch("blocks must be square of equal order".into()));
        }
    }
    let t = |x: &IntMatrix| x.transpose();
    let p = |x: &IntMatrix, y: &IntMatrix| x.mul(&t(y)).expect("square");
    let sum = |terms: &[(i64, IntMatrix)]| {
        terms
            .iter()
            .fold(IntMatrix::zeros(m, m), |acc, (s, x)| acc.add(&x.scale(*s)).expect("square"))
    };

    let mut target = IntMatrix::identity(m).scale(4 * m as i64 + 4);
    target = target.sub(&IntMatrix::filled(m, m, 4))?;
    let first = sum(&[(1, p(a, a)), (1, p(b, b)), (1, p(c, c)), (1, p(d, d))]) == target;
    let second = sum(&[(-1, p(a, b)), (1, p(b, a)), (1, p(c, d)), (-1, p(d, c))]).is_zero();
    let third = sum(&[(-1, p(a, c)), (-1, p(b, d)), (1, p(c, a)), (1, p(d, b))]).is_zero();
    let fourth = sum(&[(1, p(a, d)), (-1, p(b, c)), (1, p(c, b)), (-1, p(d, a))]).is_zero();

    let sums = [a.row_sums(), b.row_sums(), c.row_sums(), d.row_sums()];
    let mut row_sum_identities = [false; 7];
    for (flag, signs) in row_sum_identities.iter_mut().zip(ROW_SUM_SIGNS) {
        *flag = (0..m).all(|r| {
            signs[0] * 2 + (0..4).map(|w| signs[w + 1] * sums[w][r]).sum::<i64>() == 0
        });
    }
    Ok(BlockEquationReport {
        matrix_identities: [first, second, third, fourth],
        row_sum_identities,
    })
}

/// Support counts of the rotation and reflection halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParameterProfile {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
    pub c1: usize,
    pub c2: usize,
    pub d1: usize,
    pub d2: usize,
}

impl ParameterProfile {
    pub fn from_array(v: [usize; 8]) -> Self {
        let [a1, a2, b1, b2, c1, c2, d1, d2] = v;
        ParameterProfile { a1, a2, b1, b2, c1, c2, d1, d2 }
    }

    pub fn to_array(&self) -> [usize; 8] {
        [self.a1, self.a2, self.b1, self.b2, self.c1, self.c2, self.d1, self.d2]
    }
}

fn half_support(h: &[i64]) -> usize {
    h.iter().filter(|&&v| v != 0).count()
}

pub fn parameter_profile(blocks: &KimuraBlocks) -> ParameterProfile {
    let mut v = [0; 8];
    for (i, w) in blocks.elements().iter().enumerate() {
        v[2 * i] = half_support(w.rotation_half());
        v[2 * i + 1] = half_support(w.reflection_half());
    }
    ParameterProfile::from_array(v)
}

/// The four counting identities NC1–NC4.
pub fn check_nc(p: &ParameterProfile, k: usize) -> [bool; 4] {
    let [a1, a2, b1, b2, c1, c2, d1, d2] = p.to_array();
    let squares: usize = p.to_array().iter().map(|v| v * v).sum();
    [
        a1 + a2 + 1 == k,
        b1 + b2 == k && c1 + c2 == k && d1 + d2 == k,
        squares == 2 * k * k + 1,
        a1 * a2 + b1 * b2 + c1 * c2 + d1 * d2 == k * (k - 1),
    ]
}

/// Strict bounds |a_i| < k−1 and |b_i|, |c_i|, |d_i| < k. They only hold for
/// k ≥ 5, so smaller k always reports `true`.
pub fn check_bounds(p: &ParameterProfile, k: usize) -> bool {
    if k < 5 {
        return true;
    }
    let v = p.to_array();
    v[..2].iter().all(|&x| x + 1 < k) && v[2..].iter().all(|&x| x < k)
}

/// Flags C1–C5. C5 is checked as exact identities in ℤ⟨x⟩ with j = Σ xⁱ.
pub fn check_c_conditions(blocks: &KimuraBlocks) -> [bool; 5] {
    let p = parameter_profile(blocks);
    let k = blocks.k();
    let delta = |i: usize| i64::from(i == 0);
    let c5_for = |w: &GroupRingElement, f: &dyn Fn(usize, i64) -> i64| {
        (0..k).all(|i| w.rotation_half()[i] == f(i, w.reflection_half()[i]))
    };
    let c5 = c5_for(blocks.a(), &|i, r| 1 - delta(i) - r)
        && c5_for(blocks.b(), &|_, r| 1 - r)
        && c5_for(blocks.c(), &|i, r| delta(i) + r)
        && c5_for(blocks.d(), &|i, r| delta(i) + r);
    [
        p.a1 >= p.a2,
        p.b1 % 2 == 1 && p.c1 % 2 == 1 && p.d1 % 2 == 1,
        p.b1 >= p.c1 && p.b1 >= p.d1,
        blocks.is_y_invariant(),
        c5,
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k: usize,
    pub n: usize,
    pub is_hadamard: bool,
    pub eq1_ok: bool,
    pub eq12_ok: bool,
    pub equations: BlockEquationReport,
    pub profile: ParameterProfile,
    pub nc_flags: [bool; 4],
    pub bound_flags: bool,
    pub c_flags: [bool; 5],
    pub y_invariant: bool,
}

impl VerificationReport {
    /// Hadamard, both equation families, NC1–NC4 and the bounds.
    pub fn all_pass(&self) -> bool {
        self.is_hadamard && self.eq1_ok && self.eq12_ok && self.nc_flags.iter().all(|&b| b) && self.bound_flags
    }
}

pub fn verify_blocks(blocks: &KimuraBlocks) -> VerificationReport {
    let h = assemble(blocks);
    let [a, b, c, d] = blocks.pm_blocks();
    let equations = check_block_equations(&a, &b, &c, &d).expect("equal block sizes");
    let profile = parameter_profile(blocks);
    VerificationReport {
        k: blocks.k(),
        n: blocks.order(),
        is_hadamard: h.is_hadamard(),
        eq1_ok: equations.matrix_identities.iter().all(|&x| x),
        eq12_ok: equations.row_sum_identities.iter().all(|&x| x),
        equations,
        profile,
        nc_flags: check_nc(&profile, blocks.k()),
        bound_flags: check_bounds(&profile, blocks.k()),
        c_flags: check_c_conditions(blocks),
        y_invariant: blocks.is_y_invariant(),
    }
}

/// Inverse of [`assemble`]: read the blocks back out of a bordered matrix.
pub fn decompose(h: &SignMatrix, k: usize) -> Result<KimuraBlocks> {
    let m = 2 * k;
    let n = 4 * m + 4;
    if k == 0 || h.rows() != n || h.cols() != n {
        return Err(KhmError::NotKimuraForm(format!(
            "expected order {n} for k = {k}, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let mut top = Vec::with_capacity(4);
    for which in 0..4 {
        let mut blk = IntMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                blk.set(i, j, h.get(4 + i, 4 + which * m + j) as i64);
            }
        }
        top.push(blk);
    }
    let blocks: [&IntMatrix; 4] = [&top[0], &top[1], &top[2], &top[3]];
    for i in 0..n {
        for j in 0..n {
            if h.get(i, j) as i64 != slot_value(&blocks, m, i, j) {
                let what = if i < 4 || j < 4 { "border" } else { "block sign pattern" };
                return Err(KhmError::NotKimuraForm(format!(
                    "{what} mismatch at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut elements = Vec::with_capacity(4);
    for (blk, name) in top.iter().zip(NAMES) {
        let coeffs: Vec<i64> = blk.row(0).iter().map(|&v| (v + 1) / 2).collect();
        let w = GroupRingElement::new(k, coeffs)?;
        if block_matrix(&w)? != *blk {
            return Err(KhmError::NotDihedralType { block: name });
        }
        elements.push(w);
    }
    let d = elements.pop().unwrap();
    let c = elements.pop().unwrap();
    let b = elements.pop().unwrap();
    let a = elements.pop().unwrap();
    KimuraBlocks::new(a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> KimuraBlocks {
        KimuraBlocks::parse(3, "1+x", "1+x^2+x^2*y", "1+x^2+x*y", "1+x^2+y").unwrap()
    }

    #[test]
    fn k3_is_hadamard_with_expected_profile() {
        let blocks = k3();
        let h = assemble(&blocks);
        assert_eq!(h.rows(), 28);
        assert!(h.is_hadamard());
        assert!(h.row(0).iter().all(|&v| v == 1));
        let p = parameter_profile(&blocks);
        assert_eq!(p.to_array(), [2, 0, 2, 1, 2, 1, 2, 1]);
        assert_eq!(check_nc(&p, 3), [true; 4]);
        let c = check_c_conditions(&blocks);
        assert!(!c[1], "|b1| = 2 is even");
        assert!(!c[3]);
    }

    #[test]
    fn fourth_row_follows_layout() {
        let h = assemble(&k3());
        let m = 6;
        let mut expected = vec![1, -1, -1, 1];
        for s in [-1, 1, 1, -1] {
            expected.extend(std::iter::repeat_n(s, m));
        }
        assert_eq!(h.row(3), expected.as_slice());
    }

    #[test]
    fn block_row_sums() {
        let [a, b, c, d] = k3().pm_blocks();
        assert!(a.row_sums().iter().all(|&s| s == -2));
        for w in [b, c, d] {
            assert!(w.row_sums().iter().all(|&s| s == 0));
        }
    }

    #[test]
    fn all_ones_blocks_fail_first_identity() {
        let j = IntMatrix::filled(6, 6, 1);
        let r = check_block_equations(&j, &j, &j, &j).unwrap();
        assert!(!r.matrix_identities[0]);
        assert!(matches!(
            check_block_equations(&j, &j, &j, &IntMatrix::filled(4, 4, 1)),
            Err(KhmError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn decompose_round_trip_and_rejections() {
        let blocks = k3();
        let h = assemble(&blocks);
        assert_eq!(decompose(&h, 3).unwrap(), blocks);
        assert!(matches!(decompose(&h.negate_row(0), 3), Err(KhmError::NotKimuraForm(_))));
        assert!(matches!(decompose(&h, 5), Err(KhmError::NotKimuraForm(_))));
    }

    #[test]
    fn decompose_detects_non_dihedral_block() {
        let [mut a, b, c, d] = k3().pm_blocks();
        // swap two columns of A everywhere it appears: consistent pattern, not a ρ image
        for i in 0..6 {
            let (x, y) = (a.get(i, 1), a.get(i, 2));
            a.set(i, 1, y);
            a.set(i, 2, x);
        }
        let h = assemble_from_matrices(&a, &b, &c, &d).unwrap();
        assert!(matches!(decompose(&h, 3), Err(KhmError::NotDihedralType { block: 'A' })));
    }

    #[test]
    fn rejects_non_binary_elements() {
        let two = GroupRingElement::parse("1+1", 3).unwrap();
        let one = GroupRingElement::one(3);
        assert!(matches!(
            KimuraBlocks::new(two, one.clone(), one.clone(), one),
            Err(KhmError::NotBinary { position: 0, value: 2 })
        ));
    }
}
