//! Arithmetic in GF(s^d) as polynomials over GF(s) modulo a monic
//! irreducible of degree d.
//!
//! An element is stored as its integer code Σ cᵢ·sⁱ, where cᵢ is the
//! coefficient of tⁱ. Codes are also the enumeration order used to pick the
//! modulus and the primitive element, so both choices are deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

/// GF(s^d).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtField {
    s: u64,
    d: usize,
    /// c₀ … c_{d−1}, 1
    modulus: Vec<u64>,
    size: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((s, e))` with n = sᵉ, s prime, e ≥ 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let s = f[0];
    let mut e = 0;
    let mut m = n;
    while m % s == 0 {
        m /= s;
        e += 1;
    }
    Some((s, e))
}

/// Remainder of `f` modulo the monic `g` over GF(s), both low-degree first.
fn poly_rem(f: &[u64], g: &[u64], s: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    for t in (dg..r.len()).rev() {
        let c = r[t] % s;
        if c == 0 {
            continue;
        }
        for i in 0..=dg {
            r[t - dg + i] = (r[t - dg + i] + s - (c * g[i]) % s) % s;
        }
    }
    r.truncate(dg);
    r
}

fn digits(mut code: u64, s: u64, d: usize) -> Vec<u64> {
    let mut v = vec![0; d];
    for c in v.iter_mut() {
        *c = code % s;
        code /= s;
    }
    v
}

/// True iff the monic `f` (low-degree first) has no monic factor of degree
/// 1 ..= deg/2 over GF(s).
pub fn is_irreducible(f: &[u64], s: u64) -> bool {
    let deg = f.len() - 1;
    for dg in 1..=deg / 2 {
        for code in 0..s.pow(dg as u32) {
            let mut g = digits(code, s, dg);
            g.push(1);
            if poly_rem(f, &g, s).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    deg >= 1
}

impl ExtField {
    /// GF(s^d) with the monic irreducible of smallest code.
    pub fn new(s: u64, d: usize) -> Result<Self> {
        if !is_prime(s) || d == 0 {
            return Err(KhmError::UnsupportedParameter(format!("GF({s}^{d})")));
        }
        for code in 0..s.pow(d as u32) {
            let mut f = digits(code, s, d);
            f.push(1);
            if is_irreducible(&f, s) {
                return Ok(ExtField {
                    s,
                    d,
                    modulus: f,
                    size: s.pow(d as u32),
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(s^d) with a caller-supplied monic modulus, low-degree first.
    pub fn with_modulus(s: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(s) || modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(KhmError::UnsupportedParameter("modulus must be monic of degree ≥ 1".into()));
        }
        if !is_irreducible(&modulus, s) {
            return Err(KhmError::UnsupportedParameter("modulus is reducible".into()));
        }
        let d = modulus.len() - 1;
        Ok(ExtField {
            s,
            d,
            modulus,
            size: s.pow(d as u32),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.s
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.s as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.s + c % self.s;
        }
        FieldElement(code as u32)
    }

    pub fn coeffs(&self, z: FieldElement) -> Vec<u64> {
        digits(z.0 as u64, self.s, self.d)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size as u32).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| (p + q) % self.s).collect();
        self.from_coeffs(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let x: Vec<u64> = self.coeffs(a).iter().map(|c| (self.s - c) % self.s).collect();
        self.from_coeffs(&x)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.d - 1];
        for (i, &p) in x.iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (j, &q) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + p * q) % self.s;
            }
        }
        self.from_coeffs(&poly_rem(&prod, &self.modulus, self.s))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// z ↦ z^s.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.s)
    }

    pub fn is_primitive(&self, z: FieldElement) -> bool {
        let n = self.size - 1;
        z.0 != 0
            && self.pow(z, n) == self.one()
            && prime_factors(n).iter().all(|&r| self.pow(z, n / r) != self.one())
    }

    /// Primitive element of smallest code.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .find(|&z| self.is_primitive(z))
            .expect("the multiplicative group is cyclic")
    }

    /// Polynomial text, e.g. `t^2+2*t+2`.
    pub fn display(&self, z: FieldElement) -> String {
        poly_text(&self.coeffs(z))
    }
}

/// Polynomial in t, highest degree first; `0` for the zero polynomial.
pub fn poly_text(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Discrete exponential and logarithm tables for a primitive element.
#[derive(Clone, Debug)]
pub struct LogTable {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl LogTable {
    pub fn new(field: &ExtField, zeta: FieldElement) -> Result<Self> {
        if !field.is_primitive(zeta) {
            return Err(KhmError::UnsupportedParameter("element is not primitive".into()));
        }
        let n = (field.size() - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; field.size() as usize];
        let mut cur = field.one();
        for t in 0..n {
            exp.push(cur.0);
            log[cur.0 as usize] = t as u32;
            cur = field.mul(cur, zeta);
        }
        Ok(LogTable { exp, log })
    }

    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    pub fn exp(&self, t: u64) -> FieldElement {
        FieldElement(self.exp[(t % self.group_order()) as usize])
    }

    /// `None` for zero.
    pub fn log(&self, z: FieldElement) -> Option<u64> {
        match self.log[z.0 as usize] {
            u32::MAX => None,
            t => Some(t as u64),
        }
    }
}
