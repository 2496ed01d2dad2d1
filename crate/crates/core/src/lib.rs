//! Numerical frame theory for weighted spaces of entire functions.
//!
//! The crate works with truncated (polynomial) models of weighted spaces of
//! holomorphic functions on the plane or the unit disc. It provides:
//!
//! * growth conditions and the weight families they generate ([`weights`]),
//! * Köthe-type sequence spaces and their β-duals ([`seqspace`]),
//! * truncated Taylor expansions with weighted sup norms and exact
//!   Bargmann-Fock norms ([`funcspace`]),
//! * analysis operators, frame-bound estimation, dual-frame synthesis and
//!   reconstruction ([`frames`]),
//! * sampling-set generators, sufficiency constants, uniqueness margins and
//!   a density criterion ([`sampling`]),
//! * Dirichlet (exponential) series expansion, coefficient-decay fits,
//!   non-uniqueness witnesses and the Weierstrass sigma function
//!   ([`dirichlet`]),
//! * the dense complex linear-algebra contract everything else builds on
//!   ([`numkernel`]).

pub mod dirichlet;
pub mod error;
pub mod frames;
pub mod funcspace;
pub mod numkernel;
pub mod sampling;
pub mod seqspace;
pub mod weights;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Cplx = num_complex::Complex<f64>;
