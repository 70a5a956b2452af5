//! Exact combinatorics for partitions classified by parts divisible by `r`
//! and by parts repeated at least `r` times.
//!
//! The crate enumerates the partition classes `O_{j,r}(n)` (exactly `j`
//! different parts divisible by `r`) and `D_{j,r}(n)` (exactly `j` different
//! parts repeated at least `r` times), implements the bijections between
//! them, computes the part-count statistics that the identities
//! relate, and checks every identity both by enumeration and by truncated
//! generating functions.

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod euler_pair;
pub mod identities;
pub mod oeis;
pub mod partition;
pub mod qseries;

pub use enumeration::{ClassSpec, DivisibleTuple, Family, Mode};
pub use error::{Error, Result};
pub use euler_pair::EulerPair;
pub use identities::{TheoremId, VerificationRecord};
pub use partition::{parse_partition, PartStats, Partition};
pub use qseries::TruncatedBivariateSeries;
