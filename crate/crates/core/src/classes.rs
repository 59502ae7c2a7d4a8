//! Leading-digit classes and equidistribution.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Family;
use crate::decimal;
use crate::enumeration::{self, EnumConfig, EnumError};

/// The set being partitioned: a family, or the inverses of its members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionSource {
    Family(Family),
    InverseImage(Family),
}

impl fmt::Display for PartitionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionSource::Family(fam) => write!(f, "{fam}"),
            PartitionSource::InverseImage(fam) => write!(f, "inverse-image({fam})"),
        }
    }
}

/// Class sizes by leading digit. `class_sizes[d - 1]` is the size of class `d`;
/// every digit `1..=n` has an entry, empty classes included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartition {
    pub n: usize,
    pub source: PartitionSource,
    #[serde(with = "decimal::vec")]
    pub class_sizes: Vec<BigUint>,
}

impl ClassPartition {
    pub fn total(&self) -> BigUint {
        self.class_sizes.iter().sum()
    }

    pub fn size_of(&self, digit: usize) -> Option<&BigUint> {
        digit.checked_sub(1).and_then(|i| self.class_sizes.get(i))
    }

    pub fn nonempty_classes(&self) -> usize {
        self.class_sizes.iter().filter(|s| !s.is_zero()).count()
    }

    /// All nonempty classes share one size, and at least one class is nonempty.
    /// Empty classes may sit alongside.
    pub fn is_equidistributed(&self) -> bool {
        let mut nonempty = self.class_sizes.iter().filter(|s| !s.is_zero());
        match nonempty.next() {
            None => false,
            Some(first) => nonempty.all(|s| s == first),
        }
    }

    /// `(number of nonempty classes, common size)` when equidistributed.
    pub fn law(&self) -> Option<(usize, BigUint)> {
        self.is_equidistributed().then(|| {
            let size = self.class_sizes.iter().find(|s| !s.is_zero()).cloned().unwrap_or_default();
            (self.nonempty_classes(), size)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("{} at n = {} is not equidistributed", .0.source, .0.n)]
    NotEquidistributed(Box<ClassPartition>),
    #[error("class law for {family} needs n >= {min}, got {n}")]
    Domain { family: Family, n: usize, min: usize },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Exact class sizes, computed by counting (nothing is materialized).
pub fn partition(
    n: usize,
    source: PartitionSource,
    cfg: &EnumConfig,
) -> Result<ClassPartition, EnumError> {
    let class_sizes = match source {
        PartitionSource::Family(f) => enumeration::count_by_leading_digit(n, f, cfg)?,
        // inverse(w) starts with the position of 1 in w
        PartitionSource::InverseImage(f) => (1..=n)
            .map(|p| enumeration::count_pinned(n, f, p, 1, cfg))
            .collect::<Result<_, _>>()?,
    };
    Ok(ClassPartition { n, source, class_sizes })
}

/// The empirical `(nonempty classes, class size)` of a family at size `n`.
pub fn class_size_law(
    n: usize,
    family: Family,
    cfg: &EnumConfig,
) -> Result<(usize, BigUint), ClassError> {
    let min = if family == Family::BigD { 3 } else { 2 };
    if n < min {
        return Err(ClassError::Domain { family, n, min });
    }
    let p = partition(n, PartitionSource::Family(family), cfg)?;
    p.law().ok_or_else(|| ClassError::NotEquidistributed(Box::new(p)))
}
