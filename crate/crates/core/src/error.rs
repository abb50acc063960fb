use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("first Chern class {0} is not normalized (expected -1 or 0)")]
    NotNormalized(i64),
    #[error("parity violation: c2={c2}, c3={c3} is not admissible for e={e}")]
    Parity { e: i64, c2: i64, c3: i64 },
    #[error("degenerate class: spectrum undefined for c2={0}")]
    DegenerateClass(i64),
    #[error("non-integral Chern coefficient in degree {degree}")]
    NonIntegral { degree: usize },
    #[error("rank mismatch: resolution has rank {found}, expected {expected}")]
    RankMismatch { expected: i64, found: i64 },
    #[error("spectrum has {found} entries but c2 = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("spectrum inadmissible for these Chern classes (s = {0})")]
    NegativeS(i64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("range insufficient: {0}")]
    RangeInsufficient(String),
    #[error("inconsistent table: {0}")]
    InconsistentTable(String),
    #[error("ambiguous curve module at twist {twist}")]
    AmbiguousCurveModule { twist: i64 },
    #[error("sequence infeasible at twist {twist}")]
    SequenceInfeasible { twist: i64 },
    #[error("malformed sequence: {0}")]
    MalformedSequence(String),
    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("verification failed for {component}: {reason}")]
    Verification { component: String, reason: String },
}
