use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision of {requested} digits is below the minimum of {minimum}")]
    PrecisionTooLow { requested: u32, minimum: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    /// `1 - 2^(1-s)` vanishes near `s = 1 + 2πik/ln 2`; the eta representation
    /// is useless there.
    #[error("s = {s} is within {distance} of the eta-prefactor singularity k = {k}; use the integer path or a different height")]
    RepresentationSingularity { s: String, k: i64, distance: String },

    #[error("series acceleration did not converge within {terms} terms (last change {last_change}); best estimate {best_estimate}")]
    NonConvergence {
        terms: usize,
        best_estimate: String,
        last_change: String,
    },

    #[error("context carries {have} digits but {required} are required")]
    InsufficientPrecision { have: u32, required: u32 },

    #[error("zero table holds {available} zeros but {needed} are required")]
    TableTooShort { needed: usize, available: usize },

    #[error("zero {index}: {reason}")]
    Zero { index: usize, reason: String },

    #[error("Newton iteration for zero {index} did not converge after {iterations} steps")]
    NewtonStalled { index: usize, iterations: usize },

    #[error("Newton iteration from {seed} converged to {found}, outside the basin guard")]
    WrongZero { seed: String, found: String },

    /// Never clamped or discarded: this is the outcome the experiment is
    /// looking for.
    #[error("off-critical-line candidate for zero {index}: s = {re} + i·{im}, |Re(s) - 1/2| = {deviation}")]
    OffCriticalLine {
        index: usize,
        re: String,
        im: String,
        deviation: String,
    },

    #[error("empty range")]
    EmptyRange,

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("unsupported format version {found} (this build reads version {supported})")]
    UnsupportedVersion { found: String, supported: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
