use thiserror::Error;

/// Snapshot of a Buchberger run that hit one of its [`crate::ComputeLimits`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialState {
    pub limit: &'static str,
    pub basis_size: usize,
    pub pending_pairs: usize,
    pub reductions: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator in coefficient")]
    ZeroDenominator,
    #[error("coefficient not representable in the target field")]
    Coefficient,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("tag `{0}` is used with index tuples of different lengths")]
    MixedArity(String),
    #[error("polynomial is not homogeneous: degrees {first:?} and {second:?}")]
    Inhomogeneous { first: Vec<i64>, second: Vec<i64> },
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("grading has no positivity certificate")]
    MissingCertificate,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("no rational vector omega with omega^T a = 1 for every grading column")]
    NoPositivityCertificate,
    #[error("grading columns are linearly dependent")]
    DependentGrading,
    #[error("terms do not share the same multiset of grading classes")]
    UpperMultisetMismatch,
    #[error("monomial mixes x and y variables")]
    MixedMonomial,
    #[error("unit monomial generates the unit ideal")]
    UnitMonomial,
    #[error("map is not monomial")]
    NotMonomialMap,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("descendant set of edge {edge} is not an interval: {leaves:?}")]
    NonIntervalDescendants { edge: usize, leaves: Vec<usize> },
    #[error("tree has no interior edge")]
    NoInteriorEdge,
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("limit `{}` exceeded (basis {}, pending pairs {}, reductions {}, degree {})",
        .0.limit, .0.basis_size, .0.pending_pairs, .0.reductions, .0.degree)]
    LimitExceeded(PartialState),
    #[error("order is not a term order")]
    NotTermOrder,
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
