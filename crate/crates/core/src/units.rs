//! Fixed-point budget units.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

/// Thousandths of a weighted bet. Budget arithmetic stays exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Milli(pub i64);

impl Milli {
    pub const ZERO: Milli = Milli(0);
    pub const ONE: Milli = Milli(1000);

    pub fn from_f64(v: f64) -> Milli {
        Milli((v * 1000.0).round() as i64)
    }

    pub fn from_units(n: i64) -> Milli {
        Milli(n * 1000)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 1000.0
    }

    pub fn max(self, o: Milli) -> Milli {
        Milli(self.0.max(o.0))
    }

    pub fn min(self, o: Milli) -> Milli {
        Milli(self.0.min(o.0))
    }

    /// Scales by `num / den`, rounding half away from zero.
    pub fn scale(self, num: i64, den: i64) -> Milli {
        let p = self.0 * num;
        let q = if (p >= 0) == (den > 0) { (p.abs() + den.abs() / 2) / den.abs() } else { -((p.abs() + den.abs() / 2) / den.abs()) };
        Milli(q)
    }

    /// One decimal, half away from zero: 4550 -> "4.6", 50 -> "0.1".
    pub fn fmt1(self) -> String {
        let a = self.0.abs();
        let tenths = (a + 50) / 100;
        let sign = if self.0 < 0 && tenths != 0 { "-" } else { "" };
        format!("{sign}{}.{}", tenths / 10, tenths % 10)
    }

    /// Like `fmt1` but always signed: "+4.5", "-0.3", "+0.0".
    pub fn fmt1_signed(self) -> String {
        let s = self.fmt1();
        if s.starts_with('-') {
            s
        } else {
            format!("+{s}")
        }
    }

    /// Shortest form up to two decimals: 5000 -> "5", 450 -> "0.45".
    pub fn short(self) -> String {
        let a = self.0.abs();
        let hundredths = (a + 5) / 10;
        let sign = if self.0 < 0 && hundredths != 0 { "-" } else { "" };
        let (w, f) = (hundredths / 100, hundredths % 100);
        if f == 0 {
            format!("{sign}{w}")
        } else if f % 10 == 0 {
            format!("{sign}{w}.{}", f / 10)
        } else {
            format!("{sign}{w}.{f:02}")
        }
    }
}

impl fmt::Display for Milli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

impl Add for Milli {
    type Output = Milli;
    fn add(self, o: Milli) -> Milli {
        Milli(self.0 + o.0)
    }
}

impl Sub for Milli {
    type Output = Milli;
    fn sub(self, o: Milli) -> Milli {
        Milli(self.0 - o.0)
    }
}

impl Neg for Milli {
    type Output = Milli;
    fn neg(self) -> Milli {
        Milli(-self.0)
    }
}

impl AddAssign for Milli {
    fn add_assign(&mut self, o: Milli) {
        self.0 += o.0;
    }
}

impl std::iter::Sum for Milli {
    fn sum<I: Iterator<Item = Milli>>(iter: I) -> Milli {
        Milli(iter.map(|m| m.0).sum())
    }
}

impl Serialize for Milli {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Milli {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Milli::from_f64(f64::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(Milli(4500).fmt1_signed(), "+4.5");
        assert_eq!(Milli(50).fmt1_signed(), "+0.1");
        assert_eq!(Milli(0).fmt1_signed(), "+0.0");
        assert_eq!(Milli(-300).fmt1_signed(), "-0.3");
        assert_eq!(Milli(-40).fmt1(), "0.0");
        assert_eq!(Milli(450).short(), "0.45");
        assert_eq!(Milli(5000).short(), "5");
        assert_eq!(Milli(500).short(), "0.5");
    }

    #[test]
    fn scaling() {
        assert_eq!(Milli(1000).scale(135, 100), Milli(1350));
        assert_eq!(Milli(-1000).scale(1, 3), Milli(-333));
        assert_eq!(Milli(500).scale(1, 2), Milli(250));
    }
}
