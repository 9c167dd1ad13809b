//! Numerical toolkit for homogeneous unimodular Fourier multiplier symbols:
//! special-function constants, spherical-harmonic expansions, the
//! lower-bound functional built from a symbol and two spherical functions,
//! and the scaling laws of the resulting norm estimates.
//!
//! Everything is deterministic, pure, and safe to call concurrently.

pub mod bounds;
pub mod error;
pub mod fkernel;
pub mod gammaconst;
pub mod harmonics;
pub mod quad;
pub mod specfun;
pub mod spherequad;
pub mod symbols;
pub mod testfn;

pub use error::{Error, Result};

/// Crate version, embedded in CLI report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
