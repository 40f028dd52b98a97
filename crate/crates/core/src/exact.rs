//! Exact scalars: arbitrary-precision rationals and the Gaussian rationals Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (lowest terms, positive denominator).
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// An element `re + im*i` of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type GQ = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.try_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

/// `conj(alpha) / alpha`, the unit phase realised by the multiplier `alpha`.
pub fn phase_ratio(alpha: &GQ) -> Result<GQ> {
    alpha.conj().try_div(alpha)
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl<'a> Add<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn add(self, rhs: &GQ) -> GQ {
        GQ::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn sub(self, rhs: &GQ) -> GQ {
        GQ::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GQ> for &'a GQ {
    type Output = GQ;
    fn mul(self, rhs: &GQ) -> GQ {
        GQ::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        GQ::new(-&self.re, -&self.im)
    }
}

impl Neg for GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GQ> for GQ {
            type Output = GQ;
            fn $m(self, rhs: GQ) -> GQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GQ> for GQ {
            type Output = GQ;
            fn $m(self, rhs: &GQ) -> GQ {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GQ> for &'a GQ {
            type Output = GQ;
            fn $m(self, rhs: GQ) -> GQ {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Panics on a zero divisor; use [`GaussianRational::try_div`] when the divisor may vanish.
impl Div<GQ> for GQ {
    type Output = GQ;
    fn div(self, rhs: GQ) -> GQ {
        self.try_div(&rhs).expect("division by zero in Q(i)")
    }
}

impl AddAssign<&GQ> for GQ {
    fn add_assign(&mut self, rhs: &GQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GQ> for GQ {
    fn sub_assign(&mut self, rhs: &GQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GQ> for GQ {
    fn mul_assign(&mut self, rhs: &GQ) {
        *self = &*self * rhs;
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational literal `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    if num.is_empty() || den.is_empty() || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `a/b`, `c/d*i`, `a/b+c/d*i`, `i`, `-i`, `1+i` with optional signs.
    fn from_str(raw: &str) -> Result<Self> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&s)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Ok(Self::new(re, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) if self.im.is_negative() => {
                write!(f, "{}-{}*i", self.re, -&self.im)
            }
            (false, false) => write!(f, "{}+{}*i", self.re, self.im),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn gq(s: &str) -> GQ {
    s.parse().expect("valid scalar literal")
}
