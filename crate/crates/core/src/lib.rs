//! Campbell-Hausdorff and Milnor invariants of string links.
//!
//! The layers build on each other:
//!
//! - [`ncalg`]: truncated non-commutative power series over ℚ
//! - [`freelie`]: the free Lie algebra in the Lyndon basis, with the BCH product
//! - [`freegroup`]: free-group words with their Magnus and Campbell-Hausdorff expansions
//! - [`stringlink`]: (singular) string-link words, Artin action, longitudes, resolutions
//! - [`invariants`]: μ-invariants, CH derivations, non-invertibility, vanishing checks
//! - [`cli`]: the `chlink` command-line front end
//!
//! All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod freegroup;
pub mod freelie;
pub mod invariants;
pub mod ncalg;
pub mod stringlink;

pub use error::{Error, Result};
