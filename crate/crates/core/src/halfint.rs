//! Exact half-integers, stored doubled.

use std::fmt;
use std::ops::{Add, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// The half-integer `x2 / 2`.
    pub fn from_x2(x2: i64) -> Self {
        HalfInt(x2)
    }

    pub fn x2(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(HalfInt::from_x2(3).to_string(), "1.5");
        assert_eq!(HalfInt::from_x2(-1).to_string(), "-0.5");
        assert_eq!(HalfInt::from_int(-2).to_string(), "-2");
        assert_eq!((HalfInt::from_x2(1) + HalfInt::from_x2(1)).to_string(), "1");
    }
}
