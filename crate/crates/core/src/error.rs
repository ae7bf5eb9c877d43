use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a 2-adic integer: {0} has an even denominator")]
    NotTwoAdic(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("map parameters must both be odd, got m = {m}, r = {r}")]
    EvenParams { m: i64, r: i64 },
    #[error("period of an eventually periodic expansion must be nonempty")]
    EmptyPeriod,
    #[error("residue does not fit in {0} bits")]
    ResidueOutOfRange(u32),
    #[error("precision {0} is too small for reconstruction (need at least 2 bits)")]
    PrecisionTooSmall(u32),
    #[error("bound {bound} too large for {precision}-bit residue (need 2*bound^2 < 2^{precision})")]
    BoundTooLarge { bound: String, precision: u32 },
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },
    #[error("residue map is not a permutation at k = {0}")]
    NotPermutation(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
