//! Exact rational values.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
///
/// Rendered as `a/b`, or as a bare integer when the denominator is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QValue(BigRational);

impl QValue {
    pub fn zero() -> Self {
        QValue(BigRational::zero())
    }

    pub fn one() -> Self {
        QValue(BigRational::one())
    }

    pub fn from_int<T: Into<BigInt>>(value: T) -> Self {
        QValue(BigRational::from_integer(value.into()))
    }

    /// Builds `numerator / denominator`, reducing the fraction.
    pub fn ratio<N: Into<BigInt>, D: Into<BigInt>>(numerator: N, denominator: D) -> Result<Self> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(QValue(BigRational::new(numerator.into(), denominator)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        QValue(self.0.abs())
    }

    /// Nearest `f64`; large values lose precision but never the sign.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &QValue) -> Option<QValue> {
        if rhs.is_zero() {
            None
        } else {
            Some(QValue(&self.0 / &rhs.0))
        }
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for QValue {
    fn from(value: BigRational) -> Self {
        QValue(value)
    }
}

impl From<BigInt> for QValue {
    fn from(value: BigInt) -> Self {
        QValue(BigRational::from_integer(value))
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for QValue {
            fn from(value: $t) -> Self {
                QValue::from_int(value)
            }
        }
    )*};
}
from_prim!(i32, i64, i128, u32, u64, u128, usize);

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("not a rational value: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(QValue::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                QValue::ratio(n, d)
            }
        }
    }
}

impl serde::Serialize for QValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for QValue {
            type Output = QValue;
            fn $method(self, rhs: QValue) -> QValue {
                QValue(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a QValue> for &'a QValue {
            type Output = QValue;
            fn $method(self, rhs: &'a QValue) -> QValue {
                QValue(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a QValue> for QValue {
            type Output = QValue;
            fn $method(self, rhs: &'a QValue) -> QValue {
                QValue(self.0 $op &rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

/// Panics on a zero divisor, like integer division. Use
/// [`QValue::checked_div`] when the divisor may vanish.
impl Div for QValue {
    type Output = QValue;
    fn div(self, rhs: QValue) -> QValue {
        QValue(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a QValue> for &'a QValue {
    type Output = QValue;
    fn div(self, rhs: &'a QValue) -> QValue {
        QValue(&self.0 / &rhs.0)
    }
}

impl Neg for QValue {
    type Output = QValue;
    fn neg(self) -> QValue {
        QValue(-self.0)
    }
}

impl AddAssign for QValue {
    fn add_assign(&mut self, rhs: QValue) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a QValue> for QValue {
    fn add_assign(&mut self, rhs: &'a QValue) {
        self.0 += &rhs.0;
    }
}

impl Sum for QValue {
    fn sum<I: Iterator<Item = QValue>>(iter: I) -> Self {
        iter.fold(QValue::zero(), |acc, x| acc + x)
    }
}

impl Product for QValue {
    fn product<I: Iterator<Item = QValue>>(iter: I) -> Self {
        iter.fold(QValue::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_reduced() {
        assert_eq!(QValue::ratio(4, 6).unwrap().to_string(), "2/3");
        assert_eq!(QValue::ratio(6, -3).unwrap().to_string(), "-2");
        assert_eq!(QValue::ratio(-1, 2).unwrap().to_string(), "-1/2");
        assert_eq!(QValue::from_int(16).to_string(), "16");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(QValue::ratio(1, 0), Err(Error::Domain(_))));
        assert!(QValue::one().checked_div(&QValue::zero()).is_none());
        assert!("3/0".parse::<QValue>().is_err());
        assert!("x".parse::<QValue>().is_err());
    }

    proptest! {
        #[test]
        fn parse_inverts_display(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = QValue::ratio(n, d).unwrap();
            let back: QValue = q.to_string().parse().unwrap();
            prop_assert_eq!(&back, &q);
            prop_assert!(num_integer::Integer::gcd(q.numerator(), q.denominator()) == BigInt::one());
            prop_assert!(q.denominator() > &BigInt::zero());
        }
    }
}
