use std::fmt;

use crate::dyadic::Dyadic;

/// Default comparison tolerance for float-valued predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Explicit tolerance carried by float comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

impl Tolerance {
    pub fn eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    /// Relative comparison, falling back to absolute near zero.
    pub fn eq_rel(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0 * a.abs().max(b.abs()).max(1.0)
    }
}

/// A scalar that is either an exact dyadic rational or a binary64 float.
#[derive(Clone, Copy, PartialEq)]
pub enum Scalar {
    Exact(Dyadic),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(d) => d.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_dyadic(&self) -> Option<Dyadic> {
        match self {
            Scalar::Exact(d) => Some(*d),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(d) => d.signum() < 0,
            Scalar::Float(x) => *x < 0.0,
        }
    }

    /// `Some(k)` when the value is exactly `2^k`.
    pub fn power_of_two_exponent(&self) -> Option<i32> {
        match self {
            Scalar::Exact(d) if d.is_power_of_two() => Some(d.exponent()),
            Scalar::Float(x) if *x > 0.0 => {
                let d = Dyadic::from_f64(*x).ok()?;
                d.is_power_of_two().then(|| d.exponent())
            }
            _ => None,
        }
    }
}

impl From<Dyadic> for Scalar {
    fn from(d: Dyadic) -> Self {
        Scalar::Exact(d)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Exact(Dyadic::from_int(v))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(d) => write!(f, "{d}"),
            Scalar::Float(x) => write!(f, "{x}f"),
        }
    }
}
