//! Exact scalars of the Gaussian field ℚ(i), generic over the rational type.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational scalar type.
///
/// Implemented for [`BigRational`] (the default, never overflows) and
/// [`Rational64`] (fast, panics on overflow). Floating-point types are
/// deliberately not supported.
pub trait Rational:
    Clone
    + PartialEq
    + Eq
    + PartialOrd
    + Ord
    + Hash
    + Debug
    + Display
    + num_traits::Num
    + Signed
    + Send
    + Sync
    + 'static
{
    /// Converts from an arbitrary-precision rational, if representable.
    fn from_ratio(r: &BigRational) -> Option<Self>;
    fn to_ratio(&self) -> BigRational;
    fn from_int(n: i64) -> Self;
    fn is_integer(&self) -> bool;
    /// Numerator and denominator as big integers (denominator positive).
    fn parts(&self) -> (BigInt, BigInt);
}

impl Rational for BigRational {
    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_ratio(&self) -> BigRational {
        self.clone()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_integer(&self) -> bool {
        num_rational::Ratio::is_integer(self)
    }
    fn parts(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

impl Rational for Rational64 {
    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(Rational64::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }
    fn to_ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }
    fn is_integer(&self) -> bool {
        num_rational::Ratio::is_integer(self)
    }
    fn parts(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Parses a rational literal such as `3`, `-1/2` or `+4/6`.
pub fn parse_rational<R: Rational>(s: &str) -> Result<R, Error> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let big = BigRational::from_str(t).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    R::from_ratio(&big).ok_or_else(|| Error::Parse(format!("rational `{s}` out of range")))
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss<R> {
    pub re: R,
    pub im: R,
}

impl<R: Rational> Gauss<R> {
    pub fn new(re: R, im: R) -> Self {
        Gauss { re, im }
    }
    pub fn real(re: R) -> Self {
        Gauss { re, im: R::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::real(R::from_int(n))
    }
    pub fn i() -> Self {
        Gauss { re: R::zero(), im: R::one() }
    }
    /// `n / d` as a real scalar.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::real(R::from_int(n) / R::from_int(d))
    }
    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }
    /// Field norm `re² + im²`.
    pub fn norm(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gauss { re: self.re.clone() / n.clone(), im: -self.im.clone() / n })
    }
    pub fn scale(&self, r: &R) -> Self {
        Gauss { re: self.re.clone() * r.clone(), im: self.im.clone() * r.clone() }
    }
    pub fn mul_i(&self) -> Self {
        Gauss { re: -self.im.clone(), im: self.re.clone() }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self.clone();
        }
        acc
    }
    /// Converts to another rational backend.
    pub fn cast<S: Rational>(&self) -> Option<Gauss<S>> {
        Some(Gauss { re: S::from_ratio(&self.re.to_ratio())?, im: S::from_ratio(&self.im.to_ratio())? })
    }
}

impl<R: Rational> Zero for Gauss<R> {
    fn zero() -> Self {
        Gauss { re: R::zero(), im: R::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<R: Rational> One for Gauss<R> {
    fn one() -> Self {
        Gauss { re: R::one(), im: R::zero() }
    }
}

impl<R: Rational> Add for Gauss<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a, R: Rational> Add<&'a Gauss<R>> for &'a Gauss<R> {
    type Output = Gauss<R>;
    fn add(self, o: &Gauss<R>) -> Gauss<R> {
        Gauss { re: self.re.clone() + o.re.clone(), im: self.im.clone() + o.im.clone() }
    }
}

impl<R: Rational> AddAssign for Gauss<R> {
    fn add_assign(&mut self, o: Self) {
        self.re = self.re.clone() + o.re;
        self.im = self.im.clone() + o.im;
    }
}

impl<R: Rational> Sub for Gauss<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<'a, R: Rational> Sub<&'a Gauss<R>> for &'a Gauss<R> {
    type Output = Gauss<R>;
    fn sub(self, o: &Gauss<R>) -> Gauss<R> {
        Gauss { re: self.re.clone() - o.re.clone(), im: self.im.clone() - o.im.clone() }
    }
}

impl<R: Rational> SubAssign for Gauss<R> {
    fn sub_assign(&mut self, o: Self) {
        self.re = self.re.clone() - o.re;
        self.im = self.im.clone() - o.im;
    }
}

impl<'a, R: Rational> Mul<&'a Gauss<R>> for &'a Gauss<R> {
    type Output = Gauss<R>;
    fn mul(self, o: &Gauss<R>) -> Gauss<R> {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(self.re.clone() * o.re.clone());
        }
        Gauss {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        }
    }
}

impl<R: Rational> Mul for Gauss<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: Rational> MulAssign for Gauss<R> {
    fn mul_assign(&mut self, o: Self) {
        *self = &*self * &o;
    }
}

impl<R: Rational> Div for Gauss<R> {
    type Output = Self;
    /// Panics on division by zero, like the underlying rationals.
    fn div(self, o: Self) -> Self {
        let inv = o.inv().expect("division by zero in Gauss");
        self * inv
    }
}

impl<R: Rational> Neg for Gauss<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl<R: Rational> Neg for &Gauss<R> {
    type Output = Gauss<R>;
    fn neg(self) -> Gauss<R> {
        Gauss { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl<R: Rational> Display for Gauss<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &R| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let s = im_part(&self.im);
                if s.starts_with('-') {
                    write!(f, "{}{}", self.re, s)
                } else {
                    write!(f, "{}+{}", self.re, s)
                }
            }
        }
    }
}

impl<R: Rational> FromStr for Gauss<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Gauss::real(parse_rational(&t)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_s {
            "" | "+" => R::one(),
            "-" => -R::one(),
            other => parse_rational(other)?,
        };
        Ok(Gauss { re: parse_rational(re_s)?, im })
    }
}

impl<R: Rational> Serialize for Gauss<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de, R: Rational> Deserialize<'de> for Gauss<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = Gauss<BigRational>;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "1/2", "i", "-i", "1/2+1/2i", "-3/4i", "2-i", "-5"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("1/2 + 1/2 i"), g("1/2+1/2i"));
        assert_eq!(g("+3"), g("3"));
        assert_eq!(g("2/4i").to_string(), "1/2i");
        assert!("x".parse::<G>().is_err());
        assert!("1//2".parse::<G>().is_err());
    }

    #[test]
    fn i_squared() {
        assert_eq!(G::i() * G::i(), -G::one());
        assert_eq!(g("1+i") * g("1-i"), g("2"));
        assert_eq!(g("1+i").inv().unwrap(), g("1/2-1/2i"));
    }

    #[test]
    fn rational64_backend() {
        let a: Gauss<Rational64> = "3/4-i".parse().unwrap();
        let b = a.clone() * a.conj();
        assert_eq!(b.to_string(), "25/16");
        assert_eq!(a.cast::<BigRational>().unwrap(), g("3/4-i"));
    }

    fn arb() -> impl Strategy<Value = G> {
        (-20i64..20, 1i64..7, -20i64..20, 1i64..7)
            .prop_map(|(a, b, c, d)| Gauss::new(G::frac(a, b).re, G::frac(c, d).re))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.inv().unwrap(), G::one());
            }
        }

        #[test]
        fn conjugation_is_involutive_automorphism(a in arb(), b in arb()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn string_round_trip(a in arb()) {
            prop_assert_eq!(a.to_string().parse::<G>().unwrap(), a);
        }
    }
}
