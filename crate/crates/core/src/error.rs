use thiserror::Error;

use crate::aut_search::FullAutGroup;

pub type Result<T> = std::result::Result<T, KhmError>;

#[derive(Debug, Error)]
pub enum KhmError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element has an odd coefficient at index {index} and cannot be halved")]
    NotHalvable { index: usize },

    #[error("entry {value} at position {position} is not in {{0,1}}")]
    NotBinary { position: usize, value: i64 },

    #[error("not an automorphism of D_2k: {0}")]
    NotAnAutomorphism(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("entry {value} at ({row},{col}) is not +1 or -1")]
    NotSignMatrix { row: usize, col: usize, value: i64 },

    #[error("matrix is not in Kimura form: {0}")]
    NotKimuraForm(String),

    #[error("block {block} is not the image of a dihedral group ring element")]
    NotDihedralType { block: char },

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("group is not transitive on the given domain")]
    NotTransitive,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("time budget exceeded; partial group of order {}", .partial.group.order())]
    TimeBudgetExceeded { partial: Box<FullAutGroup> },

    #[error("R does not extend to an automorphism (S is not monomial)")]
    NotMonomial,

    #[error("p = {p} is not admissible: {reason}")]
    NotAdmissible { p: u64, reason: String },

    #[error("character value exponent {exponent} (mod {modulus}) is not real")]
    NonRealCharacterValue { exponent: u64, modulus: u64 },

    #[error("character value is zero")]
    ZeroValue,

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("search node cap of {cap} exceeded")]
    NodeCapExceeded { cap: u64 },

    #[error("search time budget exceeded")]
    SearchBudgetExceeded,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl KhmError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        KhmError::Parse {
            position,
            message: message.into(),
        }
    }
}
