use thiserror::Error;

use crate::bianchi::SubgroupKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid input here")]
    Zero,
    #[error("{0} is outside the supported 64-bit range")]
    OutOfRange(i128),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("expected a positive integer, got {0}")]
    NotPositive(i64),
    #[error("ramification set has odd cardinality {0}")]
    OddRamification(usize),
    #[error("inconsistent local count query: {0}")]
    InconsistentQuery(String),
    #[error("index {lambda} admits no o-compatible order in this algebra over Q(sqrt(-{d}))")]
    NotCompatible { lambda: i64, d: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{kind} does not exist in any maximal order over Q(sqrt(-{d}))")]
    Nonexistent { kind: SubgroupKind, d: i64 },
    #[error("lambda class {0} is not the type of a maximal order of M2(k)")]
    NotAdmissible(i64),
    #[error("height {0} outside the supported range 0..=16")]
    HeightOutOfRange(u32),
    #[error("local count unstable under precision increase: {low} at K={k}, {high} at K={k_next}")]
    PrecisionUnstable { k: u32, k_next: u32, low: u64, high: u64 },
    #[error("gamma paths disagree for {kind} at d={d}: closed form {closed}, composed {composed}")]
    GammaMismatch { kind: SubgroupKind, d: i64, closed: u64, composed: u64 },
}
