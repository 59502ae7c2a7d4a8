//! Linear arrangements of `1..=n` and the families they can belong to.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` an [`Arrangement`] can hold (digits are stored as `u8`).
pub const MAX_LEN: usize = u8::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("arrangement of length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("digit {digit} is outside 1..={n}")]
    OutOfRange { digit: usize, n: usize },
    #[error("digit {0} appears more than once")]
    Repeated(usize),
    #[error("cannot parse {0:?} as an arrangement")]
    Parse(String),
}

/// A word listing each of `1..=n` exactly once, in one-line form.
///
/// Positions are 1-indexed wherever they are exposed, matching digit values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Arrangement(Vec<u8>);

impl Arrangement {
    pub fn new(digits: Vec<u8>) -> Result<Self, ArrangementError> {
        let n = digits.len();
        if n > MAX_LEN {
            return Err(ArrangementError::TooLong(n));
        }
        let mut seen = vec![false; n + 1];
        for &d in &digits {
            let d = d as usize;
            if d == 0 || d > n {
                return Err(ArrangementError::OutOfRange { digit: d, n });
            }
            if seen[d] {
                return Err(ArrangementError::Repeated(d));
            }
            seen[d] = true;
        }
        Ok(Arrangement(digits))
    }

    /// Wraps digits already known to form a permutation of `1..=n`.
    pub(crate) fn from_trusted(digits: Vec<u8>) -> Self {
        debug_assert!(Arrangement::new(digits.clone()).is_ok());
        Arrangement(digits)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Arrangement((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.0
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    /// No adjacent pair `(v, v + 1)` anywhere in the word.
    pub fn is_succession_avoiding(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0] + 1)
    }

    /// Contains the adjacent pair `(n, 1)`.
    pub fn contains_wrap(&self) -> bool {
        let n = self.0.len() as u8;
        self.0.windows(2).any(|w| w[0] == n && w[1] == 1)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(p, &d)| d as usize == p + 1)
            .count()
    }

    /// The inverse permutation: `r[w[p]] = p`.
    ///
    /// Reading the word as a permutation in one-line form, this is the
    /// image of `12…n`.
    pub fn inverse(&self) -> Arrangement {
        let mut r = vec![0u8; self.0.len()];
        for (p, &d) in self.0.iter().enumerate() {
            r[d as usize - 1] = (p + 1) as u8;
        }
        Arrangement(r)
    }

    pub fn in_family(&self, family: Family) -> bool {
        match family {
            Family::All => true,
            Family::SmallD => self.is_succession_avoiding(),
            Family::BigD => self.is_succession_avoiding() && !self.contains_wrap(),
            Family::Dn1 => self.is_succession_avoiding() && self.contains_wrap(),
            Family::Derangement => self.fixed_point_count() == 0,
            Family::ExactFixed(k) => self.fixed_point_count() == k,
        }
    }
}

impl fmt::Display for Arrangement {
    /// Digits are concatenated for `n <= 9` and space separated above.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() <= 9 { "" } else { " " };
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Arrangement {
    type Err = ArrangementError;

    /// Accepts either a run of single digits (`"42153"`) or whitespace or
    /// comma separated values (`"10 2 1 ..."`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_err = || ArrangementError::Parse(s.to_string());
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let digits: Vec<u8> = if separated {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| parse_err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(parse_err))
                .collect::<Result<_, _>>()?
        };
        Arrangement::new(digits)
    }
}

impl TryFrom<String> for Arrangement {
    type Error = ArrangementError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Arrangement> for String {
    fn from(a: Arrangement) -> String {
        a.to_string()
    }
}

/// The sets of arrangements studied here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    /// Every arrangement of `1..=n`.
    All,
    /// `{d_n}`: avoids the successions `12, 23, …, (n-1)n`.
    SmallD,
    /// `{D_n}`: avoids the successions and the wrap pair `n1`.
    BigD,
    /// `{d_n1}`: avoids the successions but contains `n1`.
    Dn1,
    /// No fixed points.
    Derangement,
    /// Exactly `k` fixed points.
    ExactFixed(usize),
}

impl Family {
    pub const NAMED: [Family; 5] = [
        Family::All,
        Family::SmallD,
        Family::BigD,
        Family::Dn1,
        Family::Derangement,
    ];

    /// `NAMED` plus `ExactFixed(k)` for every `0 <= k <= n`.
    pub fn all_for(n: usize) -> Vec<Family> {
        let mut v = Family::NAMED.to_vec();
        v.extend((0..=n).map(Family::ExactFixed));
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown family {0:?} (expected all, d, D, dn1, der, fixed=K, small-d, big-d)")]
pub struct ParseFamilyError(pub String);

impl FromStr for Family {
    type Err = ParseFamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // `d` and `D` differ only by case, so no case folding on the short forms.
        match s {
            "all" | "S" => Ok(Family::All),
            "d" | "small-d" => Ok(Family::SmallD),
            "D" | "big-d" => Ok(Family::BigD),
            "dn1" => Ok(Family::Dn1),
            "der" | "derangement" => Ok(Family::Derangement),
            _ => s
                .strip_prefix("fixed=")
                .and_then(|k| k.parse().ok())
                .map(Family::ExactFixed)
                .ok_or_else(|| ParseFamilyError(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::All => f.write_str("all"),
            Family::SmallD => f.write_str("d"),
            Family::BigD => f.write_str("D"),
            Family::Dn1 => f.write_str("dn1"),
            Family::Derangement => f.write_str("der"),
            Family::ExactFixed(k) => write!(f, "fixed={k}"),
        }
    }
}

impl TryFrom<String> for Family {
    type Error = ParseFamilyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}
