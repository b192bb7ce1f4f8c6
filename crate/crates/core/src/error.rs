use crate::half::ParseHalfError;
use crate::Half;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("signature ({p},{q}) has dimension 0")]
    EmptySignature { p: usize, q: usize },
    #[error("expected {expected} entries for the signature, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("entry {entry} is not in Z + {n_minus_one}/2")]
    WrongParityClass { entry: Half, n_minus_one: usize },
    #[error("entries are not strictly decreasing within each block")]
    NotDominant,
    #[error("entry {0} is repeated")]
    RepeatedEntry(Half),
    #[error("{what} = {value} does not have the parity of the dimension {dim}")]
    ParityMismatch {
        what: &'static str,
        value: i64,
        dim: usize,
    },
    #[error("k0 must be -1 or 0, got {0}")]
    InvalidK0(i64),
    #[error("a centered chain of length {0} does not lie in one block")]
    ChainNotPresent(usize),
    #[error("a zero entry outside the removed chain cannot be classified")]
    UnclassifiableZero,
    #[error("target signature ({r},{s}) does not match the split ({expected_r},{expected_s})")]
    SignatureMismatch {
        r: usize,
        s: usize,
        expected_r: usize,
        expected_s: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("internal: lifted block data is not weakly fair")]
    InternalWeaklyFairViolation,
    #[error("internal: product-form and closed-form sign conditions disagree")]
    InternalLemmaMismatch,
    #[error("a noncompact root vanishes on the expanded block parameter")]
    ChamberAmbiguous,
    #[error("block ({p},{q}) is not contained in a compact Levi")]
    NotCompactLevi { p: usize, q: usize },
    #[error("block parameters are not in the good range")]
    NotGoodRange,
    #[error("malformed character: {0}")]
    MalformedCharacter(String),
    #[error("invalid L-parameter: {0}")]
    InvalidLParameter(String),
    #[error("invalid A-parameter: {0}")]
    InvalidAParameter(String),
    #[error("invalid block data: {0}")]
    InvalidBlocks(String),
    #[error("invalid K-type: {0}")]
    InvalidKType(String),
    #[error("weight does not match the joint-harmonics pattern")]
    PatternMismatch,
    #[error(transparent)]
    Parse(#[from] ParseHalfError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
