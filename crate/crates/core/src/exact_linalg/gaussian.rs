//! Exact elements of ℚ(i).
//!
//! Both parts are `BigRational`, which keeps every value in lowest terms with a
//! positive denominator, so derived `PartialEq` is a structural equality test.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{input}` as a Gaussian rational: {reason}")]
pub struct ParseGaussianError {
    pub input: String,
    pub reason: String,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// `num/den` as a real Gaussian rational.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational::real(BigRational::new(num.into(), den.into()))
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// The value as an integer, if it is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64_pair();
        num_complex::Complex64::new(re, im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        GaussianRational::from_ints(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        GaussianRational::real(v)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(v: BigInt) -> Self {
        GaussianRational::real(BigRational::from_integer(v))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                let f: fn(&GaussianRational, &GaussianRational) -> GaussianRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianRational {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
forward_binop!(Sub, sub, |a, b| GaussianRational {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
forward_binop!(Mul, mul, |a, b| GaussianRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re
});
forward_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero Gaussian rational");
    a * &inv
});

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical form `a/b+c/d*i`; zero parts are omitted, pure zero prints as `0`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses one unsigned rational token: `7`, `7/3`, or a decimal such as `0.25`.
pub(crate) fn parse_unsigned_rational(tok: &str) -> Option<BigRational> {
    if tok.is_empty() {
        return None;
    }
    if let Some((n, d)) = tok.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    parse_decimal(tok)
}

fn parse_decimal(tok: &str) -> Option<BigRational> {
    if tok.is_empty() || !tok.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let (int_part, frac_part) = match tok.split_once('.') {
        Some((a, b)) => (a, b),
        None => (tok, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer, denom))
}

/// Splits a signed term into its sign and body.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        // A sign only separates terms when it is not the first character of a term.
        if (c == b'+' || c == b'-') && i > start {
            terms.push((negative, &s[start..i]));
            negative = c == b'-';
            start = i + 1;
        } else if (c == b'+' || c == b'-') && i == start {
            if c == b'-' {
                negative = !negative;
            }
            start = i + 1;
        }
        i += 1;
    }
    terms.push((negative, &s[start..]));
    terms
}

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseGaussianError { input: input.to_string(), reason: reason.into() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty string"));
        }
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for (negative, body) in split_terms(&s) {
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (value, imaginary) = if body == "i" {
                (BigRational::one(), true)
            } else if let Some(coeff) = body.strip_suffix("*i").or_else(|| body.strip_suffix('i')) {
                (parse_unsigned_rational(coeff).ok_or_else(|| err("bad imaginary coefficient"))?, true)
            } else {
                (parse_unsigned_rational(body).ok_or_else(|| err("bad real part"))?, false)
            };
            let value = if negative { -value } else { value };
            let slot = if imaginary { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err("repeated part"));
            }
            *slot = Some(value);
        }
        Ok(GaussianRational { re: re.unwrap_or_else(BigRational::zero), im: im.unwrap_or_else(BigRational::zero) })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a real rational such as `-3/4` or `0.5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let v = parse_unsigned_rational(body)?;
    Some(if neg { -v } else { v })
}

pub fn format_rational(r: &BigRational) -> String {
    fmt_rational(r)
}

/// Serializes rationals as their string forms.
pub(crate) fn serialize_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// `r mod m` in `[0, m)` for a positive rational modulus.
pub fn rational_mod(r: &BigRational, m: &BigRational) -> BigRational {
    let q = (r / m).floor();
    r - q * m
}
