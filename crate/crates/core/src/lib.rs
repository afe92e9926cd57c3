//! Colored permutation groups `G(r, n) = C_r ≀ S_n` and even-signed
//! permutation groups `D(n)`.
//!
//! The crate provides group arithmetic ([`perm`]), scalar and set-valued
//! statistics ([`stats`]), code bijections ([`codes`]), Ferrers-restricted
//! enumeration ([`ferrers`]), exact multivariate polynomials and closed-form
//! generating functions ([`poly`]), and an exhaustive theorem harness
//! ([`verify`]).

pub mod codes;
pub mod error;
pub mod ferrers;
pub mod perm;
pub mod poly;
pub mod stats;
pub mod verify;

pub use codes::{Code, CodeKind, CodeStats, SignedCode};
pub use error::{Error, Result};
pub use ferrers::{FerrersBound, FerrersProfile};
pub use perm::{enumerate_group, ColoredCycle, ColoredPermutation, GroupContext, Letter};
pub use poly::{MVPoly, Var, WeightSpec};
pub use stats::{SetStat, StatBundle, TwistedDStats};
pub use verify::{Report, Status, TheoremId, VerifyParams};

/// Shorthand used throughout: a colored letter.
pub type ColoredLetter = Letter;
