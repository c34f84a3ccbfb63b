use thiserror::Error;

use crate::lattice::Subset;
use crate::poset::AxiomViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground size {n} outside the supported range 1..={max}")]
    GroundSize { n: u32, max: u32 },

    #[error("mask {mask:#b} does not fit in a ground set of size {n}")]
    MaskOutOfRange { mask: u32, n: u32 },

    #[error("{lower:?} is not a proper subset of {upper:?}")]
    NotProperSubset { lower: Subset, upper: Subset },

    #[error("{0:?} is not a member of the family")]
    NotMember(Subset),

    #[error("family is empty")]
    EmptyFamily,

    #[error("unknown poset descriptor `{0}`")]
    UnknownPoset(String),

    #[error("poset size must be between 1 and {max}, got {size}")]
    PosetSize { size: usize, max: usize },

    #[error("relation ({0}, {1}) refers to an element outside the poset")]
    RelationOutOfRange(usize, usize),

    #[error("order axiom violated: {0}")]
    OrderAxiom(AxiomViolation),

    #[error("cannot read custom poset: {0}")]
    PosetFile(String),

    #[error("family already contains a copy of the target poset")]
    ContainsCopy,

    #[error("invalid chain partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound formula not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
