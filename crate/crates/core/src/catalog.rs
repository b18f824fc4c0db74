//! Explicit block tuples and published automorphism group orders.

use serde::{Deserialize, Serialize};

use crate::error::{KhmError, Result};
use crate::kimura::KimuraBlocks;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub k: usize,
    pub a: &'static str,
    pub b: &'static str,
    pub c: &'static str,
    pub d: &'static str,
    pub expected_aut_order: u64,
    pub source: &'static str,
    pub y_invariant: bool,
}

impl CatalogEntry {
    pub fn blocks(&self) -> Result<KimuraBlocks> {
        KimuraBlocks::parse(self.k, self.a, self.b, self.c, self.d)
    }
}

const ENTRIES: [CatalogEntry; 4] = [
    CatalogEntry {
        id: "k3",
        k: 3,
        a: "1+x",
        b: "1+x^2+x^2*y",
        c: "1+x^2+x*y",
        d: "1+x^2+y",
        expected_aut_order: 144,
        source: "Kimura–Niwasaki, order 28",
        y_invariant: false,
    },
    CatalogEntry {
        id: "k13",
        k: 13,
        a: "x+x^4+x^5+x^6+x^7+x^8+x^9+x^12+x^2*y+x^3*y+x^10*y+x^11*y",
        b: "1+x^4+x^6+x^7+x^9+x*y+x^2*y+x^3*y+x^5*y+x^8*y+x^10*y+x^11*y+x^12*y",
        c: "1+x^2+x^5+x^6+x^7+x^8+x^11+x^2*y+x^5*y+x^6*y+x^7*y+x^8*y+x^11*y",
        d: "1+x+x^3+x^4+x^9+x^10+x^12+x*y+x^3*y+x^4*y+x^9*y+x^10*y+x^12*y",
        expected_aut_order: 832,
        source: "Kimura–Niwasaki, order 108",
        y_invariant: true,
    },
    CatalogEntry {
        id: "sy5",
        k: 5,
        a: "x+x^4+x^2*y+x^3*y",
        b: "1+x*y+x^2*y+x^3*y+x^4*y",
        c: "1+x+x^4+x*y+x^4*y",
        d: "1+x+x^4+x*y+x^4*y",
        expected_aut_order: 160,
        source: "Shinoda–Yamada, p = 5",
        y_invariant: true,
    },
    CatalogEntry {
        id: "sy13",
        k: 13,
        a: "x^2+x^3+x^10+x^11+x*y+x^4*y+x^5*y+x^6*y+x^7*y+x^8*y+x^9*y+x^12*y",
        b: "1+x^4+x^6+x^7+x^9+x*y+x^2*y+x^3*y+x^5*y+x^8*y+x^10*y+x^11*y+x^12*y",
        c: "1+x+x^3+x^4+x^9+x^10+x^12+x*y+x^3*y+x^4*y+x^9*y+x^10*y+x^12*y",
        d: "1+x+x^3+x^4+x^9+x^10+x^12+x*y+x^3*y+x^4*y+x^9*y+x^10*y+x^12*y",
        expected_aut_order: 832,
        source: "Shinoda–Yamada, p = 13",
        y_invariant: true,
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| KhmError::UnsupportedParameter(format!("no catalog entry {id:?}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    KimuraNiwasaki,
    ShinodaYamada,
}

/// A published order for a matrix whose blocks are not all reproducible here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedOrder {
    pub family: Family,
    /// k for Kimura–Niwasaki, p (= k) for Shinoda–Yamada.
    pub k: usize,
    pub order: u64,
    pub structure: &'static str,
}

const fn kn(k: usize, order: u64, structure: &'static str) -> ExpectedOrder {
    ExpectedOrder { family: Family::KimuraNiwasaki, k, order, structure }
}

const fn sy(k: usize, order: u64, structure: &'static str) -> ExpectedOrder {
    ExpectedOrder { family: Family::ShinodaYamada, k, order, structure }
}

const EXPECTED: [ExpectedOrder; 28] = [
    kn(3, 144, "(Q8:C3) x D6"),
    kn(5, 160, "C2 x Q8 x D10"),
    kn(7, 224, "C2 x Q8 x D14"),
    kn(9, 288, "C2 x Q8 x D18"),
    kn(11, 176, "Q8 x D22"),
    kn(13, 832, "C13:(C2.(C4 x Q8))"),
    kn(17, 1088, "C17:(C2.(C4 x Q8))"),
    kn(19, 608, "C19:(C2^2 x Q8)"),
    kn(21, 672, "C21:(C2^2 x Q8)"),
    kn(23, 736, "C23:(C2^2 x Q8)"),
    kn(25, 1600, "C25:(C2.(C4 x Q8))"),
    kn(27, 864, "C27:(C2^2 x Q8)"),
    kn(29, 928, "C29:(C2^2 x Q8)"),
    kn(41, 2624, "C41:(C2.(C4 x Q8))"),
    sy(5, 160, "C2 x Q8 x D10"),
    sy(13, 832, "C13:(C2.(C4 x Q8))"),
    sy(37, 1184, "C2 x Q8 x D74"),
    sy(41, 2624, "C41:(C2 x C4 x Q8)"),
    sy(61, 1952, "C2 x Q8 x D122"),
    sy(97, 3104, "C2 x Q8 x D194"),
    sy(157, 5024, "C157:(C2^2 x Q8)"),
    sy(181, 5792, "C2 x Q8 x D362"),
    sy(229, 7328, "C229:(C2^2 x Q8)"),
    sy(313, 40064, "C313:(C2.(C8 x Q8))"),
    sy(337, 10784, "C2 x Q8 x D674"),
    sy(421, 26944, "C421:(C2.(C4 x Q8))"),
    // printed as 2^5·477, which does not contain the factor 577
    sy(577, 18464, "C577:(C2^2 x Q8)"),
    sy(601, 19232, "C601:(C2^2 x Q8)"),
];

pub fn expected_orders() -> &'static [ExpectedOrder] {
    &EXPECTED
}

pub fn expected_order(family: Family, k: usize) -> Option<u64> {
    EXPECTED
        .iter()
        .find(|e| e.family == family && e.k == k)
        .map(|e| e.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kimura::assemble;
    use crate::shinoda_yamada::admissible_primes;

    #[test]
    fn entries_are_hadamard() {
        for e in catalog() {
            let blocks = e.blocks().unwrap();
            assert!(assemble(&blocks).is_hadamard(), "{}", e.id);
            assert_eq!(blocks.is_y_invariant(), e.y_invariant, "{}", e.id);
        }
    }

    #[test]
    fn orders_have_the_k_factor() {
        for e in expected_orders() {
            assert_eq!(e.order % e.k as u64, 0, "{e:?}");
            let rest = e.order / e.k as u64;
            assert!(rest.is_power_of_two() || rest % 3 == 0, "{e:?}");
        }
        let sy_primes: Vec<u64> = expected_orders()
            .iter()
            .filter(|e| e.family == Family::ShinodaYamada)
            .map(|e| e.k as u64)
            .collect();
        assert_eq!(sy_primes, admissible_primes(601));
    }

    #[test]
    fn lookup() {
        assert_eq!(entry("k3").unwrap().expected_aut_order, 144);
        assert!(entry("k4").is_err());
        assert_eq!(expected_order(Family::ShinodaYamada, 313), Some(128 * 313));
    }
}
