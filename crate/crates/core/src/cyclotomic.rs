//! Exact arithmetic in the 2-power cyclotomic fields Q(zeta_n), n = 2, 4, ..., 64.
//!
//! An element of level `m` is stored as its coefficient vector with respect to
//! `1, zeta, ..., zeta^{h-1}` where `zeta = zeta_{2^m}` and `h = 2^{m-1}`. The
//! minimal polynomial of `zeta` is `x^h + 1`, so products are negacyclic
//! convolutions. Level 1 is Q itself (`zeta_2 = -1`).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub const MAX_LEVEL: u8 = 6;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub fn level_of_order(n: u64) -> Result<u8> {
    match n {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        16 => Ok(4),
        32 => Ok(5),
        64 => Ok(6),
        _ => Err(Error::UnsupportedOrder(n)),
    }
}

fn half_len(level: u8) -> usize {
    1usize << (level - 1)
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    level: u8,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn new(level: u8, coeffs: Vec<Rational>) -> Result<Self> {
        if !(1..=MAX_LEVEL).contains(&level) {
            return Err(Error::UnsupportedOrder(1u64 << level));
        }
        if coeffs.len() != half_len(level) {
            return Err(Error::Dimension(format!(
                "level {level} needs {} coefficients, got {}",
                half_len(level),
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { level, coeffs })
    }

    pub fn zero() -> Self {
        Cyclotomic { level: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { level: 1, coeffs: vec![r] }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    /// `zeta_{2^level}^exp`, stored at `level`.
    pub fn zeta_power(level: u8, exp: i64) -> Self {
        debug_assert!((1..=MAX_LEVEL).contains(&level));
        let n = 1i64 << level;
        let h = half_len(level);
        let k = exp.rem_euclid(n) as usize;
        let mut coeffs = vec![Rational::zero(); h];
        if k < h {
            coeffs[k] = Rational::one();
        } else {
            coeffs[k - h] = -Rational::one();
        }
        Cyclotomic { level, coeffs }
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    /// The root-of-unity order `n = 2^level` of the ambient field.
    pub fn order(&self) -> u64 {
        1u64 << self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Embeds into a higher level: coefficient `i` moves to index `i * 2^(target - level)`.
    pub fn promote(&self, level: u8) -> Result<Self> {
        if level < self.level {
            return Err(Error::LevelTooLow { from: self.level, to: level });
        }
        if level > MAX_LEVEL {
            return Err(Error::UnsupportedOrder(1u64 << level));
        }
        Ok(self.promoted(level))
    }

    fn promoted(&self, level: u8) -> Self {
        if level == self.level {
            return self.clone();
        }
        let stride = 1usize << (level - self.level);
        let mut coeffs = vec![Rational::zero(); half_len(level)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * stride] = c.clone();
            }
        }
        Cyclotomic { level, coeffs }
    }

    /// The same element at the smallest level that contains it.
    pub fn reduced(&self) -> Self {
        let mut level = self.level;
        let mut stride = 1usize;
        while level > 1 && self.coeffs.iter().enumerate().all(|(i, c)| (i / stride).is_multiple_of(2) || c.is_zero()) {
            level -= 1;
            stride *= 2;
        }
        if level == self.level {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().step_by(stride).cloned().collect();
        Cyclotomic { level, coeffs }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let level = self.level.max(other.level);
        let a = self.promoted(level);
        let b = other.promoted(level);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect();
        Cyclotomic { level, coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let level = self.level.max(other.level);
        let a = self.promoted(level);
        let b = other.promoted(level);
        let h = half_len(level);
        // integer convolution over common denominators, one normalization per coefficient
        let (na, da) = integral(&a.coeffs);
        let (nb, db) = integral(&b.coeffs);
        let mut out = vec![BigInt::zero(); h];
        for (i, x) in na.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in nb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = i + j;
                if k < h {
                    out[k] += x * y;
                } else {
                    out[k - h] -= x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = out.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        Cyclotomic { level, coeffs }
    }

    /// Multiplies by `zeta_{2^level}^exp` with a signed rotation of the coefficients.
    pub fn mul_zeta(&self, level: u8, exp: i64) -> Self {
        let level = level.max(self.level);
        let a = self.promoted(level);
        let n = 1i64 << level;
        let h = half_len(level);
        let k = exp.rem_euclid(n) as usize;
        let mut out = vec![Rational::zero(); h];
        for (i, c) in a.coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // zeta^(i+k) with i + k < 2h = n
            let t = i + k;
            let (idx, neg) = match t / h {
                0 => (t, false),
                1 => (t - h, true),
                2 => (t - 2 * h, false),
                _ => (t - 3 * h, true),
            };
            out[idx] = if neg { -c } else { c };
        }
        Cyclotomic { level, coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { level: self.level, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse down the tower of quadratic extensions:
    /// `a^-1 = conj(a) * (a conj(a))^-1`, where `conj` sends `zeta` to `-zeta`
    /// and `a conj(a)` lies one level lower.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = self.reduced();
        if a.level == 1 {
            return Ok(Cyclotomic::from_rational(a.coeffs[0].recip()).promoted(self.level));
        }
        let conj_coeffs = a.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
        let conj = Cyclotomic { level: a.level, coeffs: conj_coeffs };
        let norm = a.mul_impl(&conj);
        let lower = Cyclotomic { level: a.level - 1, coeffs: norm.coeffs.into_iter().step_by(2).collect() };
        Ok(conj.mul_impl(&lower.inv()?).promoted(self.level))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

/// Numerators over the least common denominator.
fn integral(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// `zeta_n^k` at the smallest level containing it.
pub fn root_of_unity(n: u64, k: i64) -> Result<Cyclotomic> {
    let level = level_of_order(n)?;
    Ok(Cyclotomic::zeta_power(level, k).reduced())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (lo, hi) = if self.level < other.level { (self, other) } else { (other, self) };
        let stride = 1usize << (hi.level - lo.level);
        hi.coeffs.iter().enumerate().all(|(i, c)| {
            if i % stride == 0 {
                *c == lo.coeffs[i / stride]
            } else {
                c.is_zero()
            }
        })
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.level.hash(state);
        r.coeffs.hash(state);
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Cyclotomic::from_int(i)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_by_value {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_by_value!(Add::add, Sub::sub, Mul::mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Renders rationals as `a/b`, otherwise as `[c0, c1, ...]@n` at the smallest level containing the value.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.level == 1 {
            return write!(f, "{}", r.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in r.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@{}", r.order())
    }
}

/// Accepts the list form `[c0, c1, ...]@n` or a bare rational `a/b`.
impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_prefix('[') else {
            return parse_rational(s).map(Cyclotomic::from_rational);
        };
        let (list, order) =
            body.split_once("]@").ok_or_else(|| Error::Parse(format!("expected `[..]@n`, got `{s}`")))?;
        let n: u64 = order.trim().parse().map_err(|_| Error::Parse(format!("bad order in `{s}`")))?;
        let level = level_of_order(n)?;
        let coeffs = list.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Cyclotomic::new(level, coeffs)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
