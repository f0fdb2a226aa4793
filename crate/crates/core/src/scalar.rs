//! Exact rational scalars and the three-valued sign alphabet.
//!
//! Everything downstream only uses field operations and order comparisons,
//! so nothing here rounds or converts to floating point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sign of a [`Scalar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Neg, Sign::Zero, Sign::Pos];

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// Serialized as its symbol: `"+"`, `"0"` or `"-"`.
impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// Builds `num/den` in canonical form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn sign(&self) -> Sign {
        if self.0.is_positive() {
            Sign::Pos
        } else if self.0.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact order comparison. `Ord` gives the same answer; this exists for
    /// call sites that want the cross-multiplication spelled out.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        (self.numer() * other.denom()).cmp(&(other.numer() * self.denom()))
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        Scalar((&self.0 + &other.0) / BigRational::from_integer(BigInt::from(2)))
    }
}

/// Shorthand for building integer scalars in tests and examples.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

/// Shorthand for `n/d`; panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(n, d).expect("nonzero denominator")
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_integer(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Scalar::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let num = parse_int(n)?;
                // sign belongs on the numerator only
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Scalar::new(num, den)
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($tr::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Panics on a zero divisor, like the underlying rational type. Use
// `checked_div` where the divisor is not known to be nonzero.
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_is_canonical() {
        let x = Scalar::new(6, 4).unwrap();
        assert_eq!((x.numer().clone(), x.denom().clone()), (3.into(), 2.into()));
        let z = Scalar::new(0, 5).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (0.into(), 1.into()));
        let h = Scalar::new(3, -6).unwrap();
        assert_eq!(
            (h.numer().clone(), h.denom().clone()),
            ((-1).into(), 2.into())
        );
        assert_eq!(Scalar::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn signs() {
        assert_eq!(ratio(3, 2).sign(), Sign::Pos);
        assert_eq!(int(0).sign(), Sign::Zero);
        assert_eq!(int(-7).sign(), Sign::Neg);
    }

    #[test]
    fn comparisons() {
        assert_eq!(ratio(1, 3).compare(&ratio(1, 2)), Ordering::Less);
        assert_eq!(ratio(2, 4).compare(&ratio(1, 2)), Ordering::Equal);
        assert_eq!(int(-1).compare(&int(-2)), Ordering::Greater);
    }

    #[test]
    fn parsing() {
        assert_eq!("6/4".parse::<Scalar>().unwrap(), ratio(3, 2));
        assert_eq!("-11".parse::<Scalar>().unwrap(), int(-11));
        assert_eq!("+3/9".parse::<Scalar>().unwrap(), ratio(1, 3));
        assert_eq!("-1/2".parse::<Scalar>().unwrap(), ratio(-1, 2));
        assert_eq!("5/0".parse::<Scalar>(), Err(Error::ZeroDenominator));
        for bad in ["", "x", "1/", "/2", "1/-2", "1.5", "--1", "1/2/3", " 1"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn display() {
        assert_eq!(ratio(-6, 4).to_string(), "-3/2");
        assert_eq!(int(12).to_string(), "12");
        assert_eq!(
            serde_json::to_string(&ratio(1, 3)).unwrap(),
            "\"1/3\"".to_string()
        );
    }

    #[test]
    fn sign_algebra() {
        for a in Sign::ALL {
            for b in Sign::ALL {
                let x = match a {
                    Sign::Neg => int(-2),
                    Sign::Zero => int(0),
                    Sign::Pos => int(3),
                };
                let y = match b {
                    Sign::Neg => ratio(-1, 5),
                    Sign::Zero => int(0),
                    Sign::Pos => ratio(7, 2),
                };
                assert_eq!((&x * &y).sign(), a * b);
            }
        }
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        (-1000i64..=1000, 1i64..=1000).prop_map(|(n, d)| ratio(n, d))
    }

    fn is_canonical(x: &Scalar) -> bool {
        use num_integer::Integer;
        x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
    }

    proptest! {
        #[test]
        fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + (-&x), Scalar::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * x.recip().unwrap(), Scalar::one());
            }
            for r in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(is_canonical(&r));
            }
            if !y.is_zero() {
                let q = x.checked_div(&y).unwrap();
                prop_assert!(is_canonical(&q));
                prop_assert_eq!(&q * &y, x.clone());
            }
        }

        #[test]
        fn sign_is_multiplicative(x in scalar(), y in scalar()) {
            prop_assert_eq!((&x * &y).sign(), x.sign() * y.sign());
        }

        #[test]
        fn compare_agrees_with_ord(x in scalar(), y in scalar()) {
            prop_assert_eq!(x.compare(&y), x.cmp(&y));
        }

        #[test]
        fn text_round_trip(x in scalar()) {
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }
    }
}
