use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse partition token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("not a sub-multiset: part {part} is missing or has too small a multiplicity")]
    NotSubMultiset { part: u64 },

    #[error("modulus r must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("residue class t must satisfy 1 <= t <= r-1, got t={t} for r={r}")]
    InvalidResidue { t: u64, r: u64 },

    #[error("size {n} exceeds the enumeration bound {limit}")]
    BoundExceeded { n: u64, limit: u64 },

    #[error("part {part} is divisible by r={r}")]
    DivisiblePart { part: u64, r: u64 },

    #[error("part {part} is repeated {mult} >= r={r} times")]
    RepeatedPart { part: u64, mult: u64, r: u64 },

    #[error("invalid (m, k) tuples: {0}")]
    InvalidTuple(String),

    #[error("zeta precondition violated: {0}")]
    ZetaPrecondition(String),

    #[error("truncation mismatch: ({0}, {1}) vs ({2}, {3})")]
    TruncationMismatch(usize, usize, usize, usize),

    #[error("invalid series request: {0}")]
    InvalidSeries(String),

    #[error("invalid Euler pair: {0}")]
    InvalidEulerPair(String),

    #[error("theorem does not apply: {0}")]
    NotEulerPair(String),

    #[error("malformed b-file at line {line}: {reason}")]
    BFile { line: usize, reason: String },

    #[error("theorem {0} is not handled by this verifier")]
    WrongVerifier(String),

    #[error("invalid OEIS sequence id {0:?}")]
    SequenceId(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_modulus(r: u64) -> Result<()> {
    if r < 2 {
        Err(Error::InvalidModulus(r))
    } else {
        Ok(())
    }
}

pub(crate) fn check_residue(r: u64, t: u64) -> Result<()> {
    check_modulus(r)?;
    if t == 0 || t >= r {
        Err(Error::InvalidResidue { t, r })
    } else {
        Ok(())
    }
}
