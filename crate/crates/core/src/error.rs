use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // structural problems with input tables
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier has {0} elements; at most {max} are supported", max = crate::set::MAX_CARRIER)]
    CarrierTooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("{table} table: expected {expected} rows/columns, found {found} at row {row}")]
    RaggedTable {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table: index {index} out of range for carrier of {size}")]
    IndexOutOfRange {
        table: &'static str,
        index: usize,
        size: usize,
    },

    // preconditions
    #[error("hyperring `{0}` has not been verified")]
    NotVerified(String),
    #[error("hyperring `{name}` failed verification with {violations} violation(s)")]
    AxiomsFailed { name: String, violations: usize },
    #[error("operands belong to different hyperrings")]
    MismatchedRings,
    #[error("a hyper-sum needs at least one term")]
    EmptyTerms,
    #[error("the empty set is not a hyperideal candidate")]
    EmptySet,
    #[error("set is not a hyperideal: {0}")]
    NotAnIdeal(String),
    #[error("operation requires a proper hyperideal")]
    ImproperIdeal,
    #[error("hyperideal is not normal: {0}")]
    NotNormal(String),
    #[error("coset multiplication is not well defined: {0}")]
    QuotientNotWellDefined(String),
    #[error("set is not a subhyperring")]
    NotSubring,
    #[error("refusing a 2^{0} subset scan; use incremental enumeration")]
    EnumerationTooLarge(usize),
    #[error("ideal powers start at exponent 1")]
    ZeroExponent,
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    // value backend
    #[error("value group rank {0} unsupported (1..=4)")]
    UnsupportedRank(usize),
    #[error("vector of length {found} used with a rank {rank} group")]
    RankMismatch { rank: usize, found: usize },
    #[error("invalid cut: {0}")]
    InvalidCut(String),

    // internal consistency: two independent routes disagreed
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
