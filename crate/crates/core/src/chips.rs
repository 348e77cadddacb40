//! Fixed-point chip amounts.
//!
//! All money is tracked in hundredths of a big blind so that pot arithmetic
//! never drifts. The wire and display forms are decimal big blinds.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An amount of chips in centi-big-blinds (1 BB = 100).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Chips(pub i64);

impl Chips {
    pub const ZERO: Chips = Chips(0);
    pub const SMALL_BLIND: Chips = Chips(50);
    pub const BIG_BLIND: Chips = Chips(100);

    pub const fn from_centi(centi: i64) -> Self {
        Chips(centi)
    }

    pub const fn from_bb(bb: i64) -> Self {
        Chips(bb * 100)
    }

    /// Rounds a decimal BB value to the nearest hundredth.
    pub fn from_bb_f64(bb: f64) -> Option<Self> {
        if !bb.is_finite() || bb.abs() > 1e12 {
            return None;
        }
        Some(Chips((bb * 100.0).round() as i64))
    }

    pub fn centi(self) -> i64 {
        self.0
    }

    pub fn as_bb(self) -> f64 {
        self.0 as f64 / 100.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn max(self, other: Chips) -> Chips {
        Chips(self.0.max(other.0))
    }

    pub fn min(self, other: Chips) -> Chips {
        Chips(self.0.min(other.0))
    }

    /// `pct` percent of this amount, rounded to the nearest hundredth of a BB.
    pub fn percent(self, pct: f64) -> Chips {
        Chips((self.0 as f64 * pct / 100.0).round() as i64)
    }

    /// This amount as a percentage of `base`. Returns 0 for a zero base.
    pub fn pct_of(self, base: Chips) -> f64 {
        if base.0 == 0 {
            0.0
        } else {
            self.0 as f64 * 100.0 / base.0 as f64
        }
    }

    /// Two-decimal form, e.g. `54.00`.
    pub fn fixed2(self) -> String {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.abs();
        format!("{sign}{}.{:02}", a / 100, a % 100)
    }
}

/// Shortest decimal form: `18`, `2.75`, `9.5`.
impl fmt::Display for Chips {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.abs();
        let (whole, frac) = (a / 100, a % 100);
        if frac == 0 {
            write!(f, "{sign}{whole}")
        } else if frac % 10 == 0 {
            write!(f, "{sign}{whole}.{}", frac / 10)
        } else {
            write!(f, "{sign}{whole}.{frac:02}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid chip amount `{0}`")]
pub struct ParseChipsError(pub String);

impl FromStr for Chips {
    type Err = ParseChipsError;

    /// Accepts decimal BB with at most two fractional digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseChipsError(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (whole, frac) = match body.split_once('.') {
            Some((w, f)) => (w, f),
            None => (body, ""),
        };
        if whole.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if frac.len() > 2
            || !whole.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let w: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| err())? };
        let f: i64 = match frac.len() {
            0 => 0,
            1 => frac.parse::<i64>().map_err(|_| err())? * 10,
            _ => frac.parse().map_err(|_| err())?,
        };
        let v = w.checked_mul(100).and_then(|x| x.checked_add(f)).ok_or_else(err)?;
        Ok(Chips(if neg { -v } else { v }))
    }
}

impl Add for Chips {
    type Output = Chips;
    fn add(self, rhs: Chips) -> Chips {
        Chips(self.0 + rhs.0)
    }
}

impl Sub for Chips {
    type Output = Chips;
    fn sub(self, rhs: Chips) -> Chips {
        Chips(self.0 - rhs.0)
    }
}

impl Neg for Chips {
    type Output = Chips;
    fn neg(self) -> Chips {
        Chips(-self.0)
    }
}

impl AddAssign for Chips {
    fn add_assign(&mut self, rhs: Chips) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Chips {
    fn sub_assign(&mut self, rhs: Chips) {
        self.0 -= rhs.0;
    }
}

impl Sum for Chips {
    fn sum<I: Iterator<Item = Chips>>(iter: I) -> Chips {
        Chips(iter.map(|c| c.0).sum())
    }
}

// Serialized as a decimal BB number so histories stay human readable.
impl Serialize for Chips {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_bb())
    }
}

impl<'de> Deserialize<'de> for Chips {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Chips::from_bb_f64(v).ok_or_else(|| serde::de::Error::custom("chip amount out of range"))
    }
}
