//! Exact q-series engine for Lambert and double Lambert series identities.
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: truncated formal power series over exact rationals.
//! - [`arith`]: number-theoretic oracles (Kronecker symbol, divisor sums, ...).
//! - [`partitions`]: partition enumeration and partition statistics.
//! - [`lambert`]: builders for every named series, driven by [`lambert::TermFamily`].
//! - [`catalog`]: the checked registry of identities and conjecture scans.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod lambert;
pub mod partitions;
pub mod series;

pub use catalog::{IdentityEntry, ScanReport, Status, VerificationReport};
pub use error::{Error, Result};
pub use partitions::{FrobeniusSymbol, Partition};
pub use series::{Coeff, Exponent, TruncatedSeries};
