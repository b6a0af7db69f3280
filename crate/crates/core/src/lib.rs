//! Exact verification of determinant identities over cyclotomic fields.
//!
//! Everything is computed in Q(ζₙ) with no rounding: circulant symbols and their DFT spectra,
//! determinants of their minors, the Fourier-basis factorisation of the related matrices C_s,
//! and a signed-derangement brute force that serves as an independent oracle.

pub mod circulant;
pub mod cyclotomic;
pub mod derangement;
mod error;
pub mod identities;
pub mod linalg;

pub use circulant::{CirculantSymbol, SpectrumResult, SymbolSpec};
pub use cyclotomic::{cyclotomic_polynomial, CycNum, CyclotomicContext, ExactRational};
pub use error::{Error, Result};
pub use linalg::ExactMatrix;
