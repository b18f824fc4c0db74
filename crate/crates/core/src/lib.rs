//! Kimura Hadamard matrices of dihedral type.
//!
//! Construction from group-ring elements of ℤD_2k, verification of the
//! block and counting conditions, the explicit automorphism families, a
//! full automorphism-group search and the finite-field construction for
//! primes p ≡ 1 (mod 4) with 2p − 1 a prime power.

pub mod aut_search;
pub mod catalog;
pub mod conjectures;
pub mod constructions;
pub mod error;
pub mod field;
pub mod formats;
pub mod group_algebra;
pub mod khm_search;
pub mod kimura;
pub mod matrix;
pub mod perm_group;
pub mod shinoda_yamada;
pub mod signed_perm;

pub use error::{KhmError, Result};
