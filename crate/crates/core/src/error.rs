use std::path::PathBuf;

/// Errors produced by the signaling library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not a prime >= 3")]
    NonPrimeModulus(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
    #[error("elements belong to different fields: GF({0}) vs GF({1})")]
    FieldMismatch(u64, u64),
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("code length {n} must divide S-1 = {order} (and K = {k} must satisfy 1 <= K <= N)")]
    IncompatibleRate { n: usize, k: usize, order: u64 },
    #[error("message {message} out of range: must be < {limit}")]
    MessageOutOfRange { message: u64, limit: u64 },
    #[error("grid of {subcarriers}x{symbols} cannot hold {needed_subcarriers}x{needed_symbols}")]
    GridTooSmall {
        subcarriers: usize,
        symbols: usize,
        needed_subcarriers: usize,
        needed_symbols: usize,
    },
    #[error("{kind} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("Zadoff-Chu root {0} must lie in 1..=1020")]
    InvalidRoot(usize),
    #[error("grid has {subcarriers} subcarriers but the FFT size is only {fft_size}")]
    GridLargerThanFft { subcarriers: usize, fft_size: usize },
    #[error("sample stream of length {got} does not match {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("grid dimensions {got:?} do not match {expected:?}")]
    DimensionMismatch {
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("STS band [{offset}, {offset}+{width}) exceeds {subcarriers} subcarriers")]
    BandOutOfRange {
        offset: usize,
        width: usize,
        subcarriers: usize,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
