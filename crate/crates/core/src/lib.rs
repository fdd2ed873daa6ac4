//! Sub-Nyquist pulse-Doppler radar: simulation, Xampling and recovery.
//!
//! The library simulates multi-pulse target echoes, acquires per-pulse
//! Fourier-series coefficients ("Xamples") at a fraction of the Nyquist
//! rate, and recovers target delay/Doppler/amplitude by Doppler focusing:
//! coherently phase-aligning the per-pulse coefficients so that targets
//! near the focused Doppler frequency add up with gain `P` while the rest
//! cancel. Classic Nyquist matched-filter processing and a two-stage
//! MMV recovery are provided as baselines, plus a Monte Carlo harness
//! that scores all of them with a hit-or-miss criterion.
//!
//! Modules mirror the processing chain:
//!
//! - [`scene`] — radar parameters, targets, clutter, random scenarios
//! - [`waveform`] — pulse spectra and Nyquist-rate signal synthesis
//! - [`xampler`] — Fourier-coefficient acquisition and coefficient noise
//! - [`focusing`] — the Doppler focusing transform and window functions
//! - [`sparse`] — CS dictionary, OMP/IHT solvers, annihilating filter
//! - [`detect`] — full detection pipelines (focusing, classic MF, two-stage)
//! - [`eval`] — scoring, SNR experiments and the benchmark suite
//! - [`io`] — scenario files, binary dumps, CSV exports

pub mod detect;
pub mod error;
pub mod eval;
pub mod fft;
pub mod focusing;
pub mod io;
pub mod linalg;
pub mod scene;
pub mod seed;
pub mod sparse;
pub mod waveform;
pub mod xampler;

pub use error::{Error, Result};

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex64;
