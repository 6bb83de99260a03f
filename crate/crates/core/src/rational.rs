//! Exact rational numbers used for every index and turning number.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A reduced fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(Rational64);

impl Rational {
    pub const ZERO: Rational = Rational(Rational64::new_raw(0, 1));
    pub const ONE: Rational = Rational(Rational64::new_raw(1, 1));

    /// Builds `num / den`, reducing and normalizing the sign.
    ///
    /// Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(Rational64::new(num, den))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Rational64::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    pub fn abs(self) -> Self {
        if self.numer() < 0 {
            -self
        } else {
            self
        }
    }

    /// True when `self * n` is an integer.
    pub fn is_multiple_of_inverse(&self, n: u32) -> bool {
        (n as i64) % self.denom() == 0
    }

    /// `self * n` when it is an integer.
    pub fn times_order(&self, n: u32) -> Option<i64> {
        let scaled = *self * Rational::from_integer(n as i64);
        scaled.is_integer().then(|| scaled.numer())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + *x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p`, `p/q`, or `p q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let mut parts = s.split(|c: char| c == '/' || c.is_whitespace()).filter(|p| !p.is_empty());
        let num: i64 = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
        let den: i64 = match parts.next() {
            Some(d) => d.parse().map_err(|_| err())?,
            None => 1,
        };
        if parts.next().is_some() || den == 0 {
            return Err(err());
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: i64,
    den: i64,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire { num: self.numer(), den: self.denom() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        if wire.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(wire.num, wire.den))
    }
}

/// Result of snapping a real-valued number of turns to the nearest multiple of `1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapped {
    pub value: Rational,
    /// Distance from the real value to `value`, in turns.
    pub residual: f64,
}

/// Snaps `turns` to the nearest multiple of `1/n`.
pub fn snap_to_order(turns: f64, n: u32) -> Snapped {
    let scaled = turns * n as f64;
    let k = scaled.round();
    let value = Rational::new(k as i64, n as i64);
    Snapped { value, residual: (turns - value.to_f64()).abs() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rational::new(6, -8);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 4);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(a + b, Rational::new(1, 2));
        assert_eq!(a - b - b, Rational::ZERO);
        assert_eq!([a, a, a].iter().sum::<Rational>(), Rational::ONE);
    }

    #[test]
    fn order_multiples() {
        assert!(Rational::new(3, 4).is_multiple_of_inverse(4));
        assert!(!Rational::new(1, 3).is_multiple_of_inverse(4));
        assert_eq!(Rational::new(-3, 2).times_order(4), Some(-6));
        assert_eq!(Rational::new(1, 3).times_order(2), None);
    }

    #[test]
    fn parses_literals() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("-1 2".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_integer(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&Rational::new(-7, 4)).unwrap();
        assert_eq!(s, r#"{"num":-7,"den":4}"#);
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Rational::new(-7, 4));
    }

    #[test]
    fn snapping() {
        let s = snap_to_order(0.7500000001, 4);
        assert_eq!(s.value, Rational::new(3, 4));
        assert!(s.residual < 1e-9);
        let s = snap_to_order(-1.0000000002, 1);
        assert_eq!(s.value, Rational::from_integer(-1));
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
            let r = Rational::new(num, den);
            let s = serde_json::to_string(&r).unwrap();
            let back: Rational = serde_json::from_str(&s).unwrap();
            proptest::prop_assert_eq!(r, back);
        }
    }
}
