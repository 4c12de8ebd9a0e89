//! Abelian complexity of the Rudin-Shapiro sequence `r` and its companion
//! `r'(n) = (-1)^n r(n)`.
//!
//! The crate computes the maximal window sum `M(n)` both by brute force and
//! by its 4-ary recurrence, checks the window-sum identities behind that
//! recurrence, builds the extremal factors that attain `M(n)`, witnesses
//! automaticity and regularity through kernel closures, evaluates the
//! asymptotic function `lambda(x) = lim rho(4^k x) / sqrt(4^k x)` exactly on
//! 4-adic rationals and estimates the box dimension of its graph.

pub mod boxdim;
pub mod complexity;
pub mod error;
pub mod lambda;
pub mod regularity;
pub mod rudin;
pub mod verify;
pub mod words;

pub use error::Error;
