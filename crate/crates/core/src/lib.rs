//! Counting, listing and mapping linear arrangements of `1..=n` that avoid
//! the successions `12, 23, …, (n-1)n`, optionally together with the wrap
//! pair `n1`.
//!
//! - [`arrangement`]: the word type, family membership, fixed points, inverse.
//! - [`enumeration`]: pruned exhaustive listing and counting.
//! - [`formulas`]: exact closed forms and recursions.
//! - [`maps`]: the insert-`n`-before-`1` bijection and inversion.
//! - [`classes`]: leading-digit partitions and equidistribution.
//! - [`verify`]: a registry of identity checks and its report.

pub mod arrangement;
pub mod classes;
#[cfg(feature = "cli")]
pub mod cli;
pub mod decimal;
pub mod enumeration;
pub mod formulas;
pub mod maps;
pub mod verify;

pub use arrangement::{Arrangement, Family};
pub use classes::{ClassPartition, PartitionSource};
pub use enumeration::{EnumConfig, EnumError};
pub use maps::MappingCertificate;
pub use verify::{Status, VerificationReport};
