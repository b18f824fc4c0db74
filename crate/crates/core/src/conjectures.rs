//! Checks of the three open conjectures on Aut(H) for a computed group.
//!
//! Violations are reported, never raised: a failing check would be a
//! counterexample, not a bug.

use serde::{Deserialize, Serialize};

use crate::field::prime_factors;
use crate::perm_group::PermGroup;
use crate::signed_perm::{AutPair, SignedPermutation};

/// R restricted to the layout 4 + 4×(2k) + 8×k: the border indices map
/// among themselves, and the 2k-blocks and their k-halves map onto blocks
/// and halves.
pub fn is_block_monomial(p: &SignedPermutation, k: usize) -> bool {
    let n = 8 * k + 4;
    if p.degree() != n || k == 0 {
        return false;
    }
    if (0..4).any(|i| p.image(i) >= 4) {
        return false;
    }
    let cell = |i: usize| (i - 4) / k;
    let mut cell_map = [usize::MAX; 8];
    for i in 4..n {
        let j = p.image(i);
        if j < 4 {
            return false;
        }
        let (from, to) = (cell(i), cell(j));
        if cell_map[from] == usize::MAX {
            cell_map[from] = to;
        } else if cell_map[from] != to {
            return false;
        }
    }
    // halves of the same 2k-block stay together
    (0..4).all(|b| cell_map[2 * b] / 2 == cell_map[2 * b + 1] / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFactorization {
    pub r: u32,
    pub s: u32,
    /// Whether k divides the order; r and s describe |Aut|/k when it does.
    pub k_divides: bool,
    /// What is left after removing k, 2^r and 3^s.
    pub cofactor: u64,
}

/// |Aut| = 2^r · 3^s · k · cofactor, with k extracted first.
pub fn factor_order(order: u64, k: u64) -> OrderFactorization {
    let k_divides = k > 0 && order % k == 0;
    let mut m = if k_divides { order / k } else { order };
    let r = m.trailing_zeros();
    m >>= r;
    let mut s = 0;
    while m % 3 == 0 {
        m /= 3;
        s += 1;
    }
    OrderFactorization { r, s, k_divides, cofactor: m }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub order: u64,
    pub block_monomial_all: bool,
    pub non_block_monomial: usize,
    pub prime_divisors: Vec<u64>,
    pub factorization: OrderFactorization,
    pub violations: Vec<String>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn conjecture_report(group: &PermGroup<AutPair>, k: usize) -> ConjectureReport {
    let order = group.order() as u64;
    let non_block_monomial = group
        .elements()
        .iter()
        .filter(|g| !(is_block_monomial(&g.r, k) && is_block_monomial(&g.s, k)))
        .count();
    let prime_divisors = prime_factors(order);
    let factorization = factor_order(order, k as u64);
    let mut violations = Vec::new();
    if non_block_monomial > 0 {
        violations.push(format!("{non_block_monomial} elements are not block monomial"));
    }
    for &p in &prime_divisors {
        if p != 2 && k as u64 % p != 0 {
            violations.push(format!("prime {p} divides the order but not k = {k}"));
        }
    }
    if !factorization.k_divides {
        violations.push(format!("k = {k} does not divide {order}"));
    } else {
        if factorization.cofactor != 1 {
            violations.push(format!("order has the extra factor {}", factorization.cofactor));
        }
        if factorization.r < 4 {
            violations.push(format!("power of two is 2^{} < 2^4", factorization.r));
        }
        if factorization.s > 1 {
            violations.push(format!("power of three is 3^{} > 3", factorization.s));
        }
    }
    ConjectureReport {
        k,
        order,
        block_monomial_all: non_block_monomial == 0,
        non_block_monomial,
        prime_divisors,
        factorization,
        violations,
    }
}
