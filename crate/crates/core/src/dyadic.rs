//! Exact dyadic rationals `mantissa * 2^exponent`.
//!
//! Every construction we iterate only ever divides by powers of two, so
//! this type keeps interval and grid pipelines bit-exact. Values are kept
//! normalized (odd mantissa, or zero with exponent 0) so that structural
//! equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mantissa: i128,
    exponent: i32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { mantissa: 0, exponent: 0 };
    pub const ONE: Dyadic = Dyadic { mantissa: 1, exponent: 0 };

    pub fn new(mantissa: i128, exponent: i32) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(v as i128, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i32) -> Self {
        Dyadic { mantissa: 1, exponent: k }
    }

    fn normalize(&mut self) {
        if self.mantissa == 0 {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros();
        self.mantissa >>= tz;
        self.exponent += tz as i32;
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    pub fn signum(&self) -> i32 {
        self.mantissa.signum() as i32
    }

    /// Exact halving: decrements the exponent.
    pub fn halve(self) -> Self {
        if self.mantissa == 0 {
            return self;
        }
        Dyadic { mantissa: self.mantissa, exponent: self.exponent - 1 }
    }

    /// Multiplication by `2^k`.
    pub fn shift(self, k: i32) -> Self {
        if self.mantissa == 0 {
            return self;
        }
        Dyadic { mantissa: self.mantissa, exponent: self.exponent + k }
    }

    /// Is this value `2^k` for some integer `k`?
    pub fn is_power_of_two(&self) -> bool {
        self.mantissa == 1
    }

    pub fn abs(self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Rescales the mantissa so that the exponent equals `exp` (which must
    /// not exceed the current exponent for nonzero values).
    fn mantissa_at(&self, exp: i32) -> Result<i128> {
        if self.mantissa == 0 {
            return Ok(0);
        }
        let shift = self.exponent - exp;
        debug_assert!(shift >= 0);
        if shift >= 126 {
            return Err(Error::Overflow);
        }
        self.mantissa.checked_mul(1i128 << shift).ok_or(Error::Overflow)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs);
        }
        if rhs.is_zero() {
            return Ok(self);
        }
        let exp = self.exponent.min(rhs.exponent);
        let a = self.mantissa_at(exp)?;
        let b = rhs.mantissa_at(exp)?;
        Ok(Dyadic::new(a.checked_add(b).ok_or(Error::Overflow)?, exp))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let m = self.mantissa.checked_mul(rhs.mantissa).ok_or(Error::Overflow)?;
        Ok(Dyadic::new(m, self.exponent + rhs.exponent))
    }

    /// Exact conversion: every finite binary64 value is dyadic.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidScale(format!("{x} is not finite")));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i128 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = (bits & ((1u64 << 52) - 1)) as i128;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i128 << 52), raw_exp - 1075)
        };
        Ok(Dyadic::new(sign * m, e))
    }

    /// Nearest binary64 value (exact when the mantissa fits in 53 bits).
    pub fn to_f64(&self) -> f64 {
        (self.mantissa as f64) * (self.exponent as f64).exp2()
    }

    /// Floor of the value, as an integer.
    pub fn floor_int(&self) -> Result<i64> {
        let v = if self.exponent >= 0 {
            self.mantissa_at(0)?
        } else {
            let s = (-self.exponent).min(127) as u32;
            self.mantissa >> s
        };
        i64::try_from(v).map_err(|_| Error::Overflow)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.mantissa.signum() != other.mantissa.signum() {
            return self.mantissa.signum().cmp(&other.mantissa.signum());
        }
        if self.mantissa == 0 {
            return Ordering::Equal;
        }
        let exp = self.exponent.min(other.exponent);
        match (self.mantissa_at(exp), other.mantissa_at(exp)) {
            (Ok(a), Ok(b)) => a.cmp(&b),
            // Shifts this large only occur between values of very different
            // magnitude; fall back to the (monotone) float comparison.
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("dyadic addition overflow")
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Self {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("dyadic multiplication overflow")
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

/// Exact decimal expansion (dyadic rationals have terminating decimals).
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            let v = BigInt::from(self.mantissa) << (self.exponent as usize);
            return write!(f, "{v}");
        }
        let k = (-self.exponent) as u32;
        let scaled = BigInt::from(self.mantissa.unsigned_abs()) * BigInt::from(5u8).pow(k);
        let mut digits = scaled.to_string();
        if digits.len() <= k as usize {
            digits = "0".repeat(k as usize + 1 - digits.len()) + &digits;
        }
        let (int, frac) = digits.split_at(digits.len() - k as usize);
        let frac = frac.trim_end_matches('0');
        let sign = if self.mantissa < 0 { "-" } else { "" };
        if frac.is_empty() {
            write!(f, "{sign}{int}")
        } else {
            write!(f, "{sign}{int}.{frac}")
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a plain decimal literal (`-12.375`, `3`, `1e-3` style exponents
/// are accepted). Fails when the value is not a dyadic rational.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("not a decimal number: {s:?}") };
        let s = s.trim();
        let (body, exp10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
        let mut n = if neg { -digits } else { digits };
        // value = n * 10^pow10
        let pow10 = exp10 - frac.len() as i32;
        let (num, k) = if pow10 >= 0 {
            n *= BigInt::from(10u8).pow(pow10 as u32);
            (n, 0u32)
        } else {
            (n, (-pow10) as u32)
        };
        // num / 10^k = (num / 5^k) * 2^-k, dyadic iff 5^k | num
        let five_k = BigInt::from(5u8).pow(k);
        if &num % &five_k != BigInt::from(0u8) {
            return Err(Error::Parse { line: 0, msg: format!("{s} is not a dyadic rational") });
        }
        let q: i128 = (num / five_k).try_into().map_err(|_| Error::Overflow)?;
        Ok(Dyadic::new(q, -(k as i32)))
    }
}
