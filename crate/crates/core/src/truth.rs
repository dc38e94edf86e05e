//! The infinite-valued truth domain with natural-number indices.
//!
//! Values are totally ordered as
//! `F0 < F1 < F2 < ... < ZERO < ... < T2 < T1 < T0`.
//! Negation-as-failure flips polarity and weakens by one step.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    /// `T_n`: true at stage `n`.
    TrueAt(u32),
    /// `F_n`: false at stage `n`.
    FalseAt(u32),
    /// The neutral value for atoms that never stabilise.
    Zero,
}

/// Result of [`TruthValue::order`]: finite for `T_n`/`F_n`, infinite for `ZERO`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrdinalIndex {
    Finite(u32),
    Infinity,
}

impl OrdinalIndex {
    pub fn finite(self) -> Option<u32> {
        match self {
            OrdinalIndex::Finite(n) => Some(n),
            OrdinalIndex::Infinity => None,
        }
    }
}

impl fmt::Display for OrdinalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalIndex::Finite(n) => write!(f, "{n}"),
            OrdinalIndex::Infinity => f.write_str("inf"),
        }
    }
}

impl TruthValue {
    pub const T0: TruthValue = TruthValue::TrueAt(0);
    pub const F0: TruthValue = TruthValue::FalseAt(0);

    /// Lexicographic sort key: falses first by ascending index, then `ZERO`,
    /// then trues by descending index.
    fn rank(self) -> (u8, i64) {
        match self {
            TruthValue::FalseAt(n) => (0, i64::from(n)),
            TruthValue::Zero => (1, 0),
            TruthValue::TrueAt(n) => (2, -i64::from(n)),
        }
    }

    pub fn order(self) -> OrdinalIndex {
        match self {
            TruthValue::TrueAt(n) | TruthValue::FalseAt(n) => OrdinalIndex::Finite(n),
            TruthValue::Zero => OrdinalIndex::Infinity,
        }
    }

    /// Negation-as-failure: `F_n -> T_{n+1}`, `T_n -> F_{n+1}`, `ZERO -> ZERO`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> TruthValue {
        match self {
            TruthValue::FalseAt(n) => TruthValue::TrueAt(n + 1),
            TruthValue::TrueAt(n) => TruthValue::FalseAt(n + 1),
            TruthValue::Zero => TruthValue::Zero,
        }
    }

    pub fn is_true(self) -> bool {
        matches!(self, TruthValue::TrueAt(_))
    }

    pub fn is_false(self) -> bool {
        matches!(self, TruthValue::FalseAt(_))
    }

    pub fn is_zero(self) -> bool {
        self == TruthValue::Zero
    }
}

impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn cmp(v1: TruthValue, v2: TruthValue) -> Ordering {
    v1.cmp(&v2)
}

/// Least upper bound of a finite set. The empty set yields `F0`, the least element.
pub fn lub<I: IntoIterator<Item = TruthValue>>(vs: I) -> TruthValue {
    vs.into_iter().max().unwrap_or(TruthValue::F0)
}

/// Conjunction of a clause body: the minimum. An empty body is a fact and
/// evaluates to `T0`.
pub fn conj<I: IntoIterator<Item = TruthValue>>(vs: I) -> TruthValue {
    vs.into_iter().min().unwrap_or(TruthValue::T0)
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::TrueAt(n) => write!(f, "T{n}"),
            TruthValue::FalseAt(n) => write!(f, "F{n}"),
            TruthValue::Zero => f.write_str("ZERO"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid truth value `{0}` (expected T<n>, F<n> or ZERO)")]
pub struct ParseTruthError(String);

impl FromStr for TruthValue {
    type Err = ParseTruthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ZERO" {
            return Ok(TruthValue::Zero);
        }
        let err = || ParseTruthError(s.to_string());
        let (tag, digits) = s.split_at_checked(1).ok_or_else(err)?;
        let n: u32 = digits.parse().map_err(|_| err())?;
        match tag {
            "T" => Ok(TruthValue::TrueAt(n)),
            "F" => Ok(TruthValue::FalseAt(n)),
            _ => Err(err()),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
