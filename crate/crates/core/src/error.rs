//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter failed validation; the message names it.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Requested more Fourier coefficients than the band holds.
    #[error("requested {requested} coefficients but the band holds only {capacity} in-band indices")]
    BandCapacity { requested: usize, capacity: usize },

    /// Coefficient index outside the tabulated spectral range.
    #[error("index k={k} is out of band; tabulated range is {lo}..={hi} (band edge ±B_h/2)")]
    OutOfBand { k: i64, lo: i64, hi: i64 },

    /// The pulse spectrum vanishes on a selected coefficient, so the
    /// dictionary normalization H^{-1} does not exist.
    #[error("pulse spectrum vanishes at k={k}; cannot normalize the dictionary")]
    VanishingSpectrum { k: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Random scene generation could not satisfy the minimum-separation
    /// constraints within the retry budget.
    #[error("could not place {requested} targets with the given separation after {retries} retries")]
    SeparationUnsatisfiable { requested: usize, retries: usize },

    /// An annihilating-filter prerequisite is not met (|κ| < 2L).
    #[error("unrecoverable: {0}")]
    Unrecoverable(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed dump or scenario file.
    #[error("format error: {0}")]
    Format(String),
}
