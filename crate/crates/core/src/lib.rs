//! Signature-based over-the-air signaling on an OFDM resource grid.
//!
//! The crate implements single-tone signaling (STS), where each OFDM symbol
//! carries all of its energy on one subcarrier chosen by a Galois-field
//! evaluation code, together with Walsh, Gold and Zadoff-Chu signature
//! baselines. Signals cross an EPA Rayleigh-fading channel and are detected
//! without pilots; [`harness`] runs seeded Monte Carlo sweeps of the
//! detection error rate.
//!
//! Module map:
//!
//! - [`gf`]: prime-field arithmetic and primitive elements
//! - [`sts`]: STS message digits, generator matrix, encoder, decoder
//! - [`seqgen`]: Walsh / Gold / Zadoff-Chu generation and grid mapping
//! - [`grid`]: resource grid, energy normalization, OFDM waveform path
//! - [`channel`]: EPA tapped-delay-line fading and AWGN
//! - [`detect`]: correlation and tone-energy receivers
//! - [`harness`]: sweeps, config files, CSV and SVG output

pub mod channel;
pub mod detect;
mod error;
pub mod gf;
pub mod grid;
pub mod harness;
mod scheme;
pub mod seqgen;
pub mod sts;

pub use error::{Error, Result};
pub use scheme::Scheme;
