use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use crate::rational::{format_rational, parse_rational, to_f64, Rational};

/// Absolute tolerance for comparisons involving float angles.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// A corner weight or curvature value.
///
/// `Exact(q)` stands for `q·π`. `Radians` only arises in metric mode; any
/// arithmetic that mixes the two falls back to radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Exact(Rational),
    Radians(f64),
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Exact(Rational::from_integer(0))
    }

    /// `(p/q)·π`.
    pub fn pi_times(p: i64, q: i64) -> Self {
        Angle::Exact(Rational::new(p, q))
    }

    pub fn pi() -> Self {
        Self::pi_times(1, 1)
    }

    pub fn two_pi() -> Self {
        Self::pi_times(2, 1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    pub fn as_exact(&self) -> Option<Rational> {
        match self {
            Angle::Exact(q) => Some(*q),
            Angle::Radians(_) => None,
        }
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::Exact(q) => to_f64(q) * PI,
            Angle::Radians(x) => *x,
        }
    }

    pub fn scale(self, k: i64) -> Self {
        match self {
            Angle::Exact(q) => Angle::Exact(q * k),
            Angle::Radians(x) => Angle::Radians(x * k as f64),
        }
    }

    /// Exact comparison when both sides are exact; otherwise values within
    /// [`FLOAT_TOLERANCE`] compare equal.
    pub fn compare(&self, other: &Angle) -> Ordering {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => a.cmp(b),
            _ => {
                let d = self.radians() - other.radians();
                if d.abs() <= FLOAT_TOLERANCE {
                    Ordering::Equal
                } else if d < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn lt(&self, other: &Angle) -> bool {
        self.compare(other) == Ordering::Less
    }

    pub fn le(&self, other: &Angle) -> bool {
        self.compare(other) != Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.lt(&Angle::zero())
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Angle::Exact(_) => true,
            Angle::Radians(x) => x.is_finite(),
        }
    }

    /// Parses `p/q` (exact) or a decimal with an `rad` suffix.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let s = s.strip_suffix("pi").map(str::trim).unwrap_or(s);
        if let Some(x) = s.strip_suffix("rad") {
            return x.trim().parse().ok().map(Angle::Radians);
        }
        parse_rational(s).ok().map(Angle::Exact)
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Exact(q) => write!(f, "{} pi", format_rational(q)),
            Angle::Radians(x) => write!(f, "{x} rad"),
        }
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::Exact(a + b),
            _ => Angle::Radians(self.radians() + rhs.radians()),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::Exact(a) => Angle::Exact(-a),
            Angle::Radians(x) => Angle::Radians(-x),
        }
    }
}

impl Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Angle> for Angle {
    fn sum<I: Iterator<Item = &'a Angle>>(iter: I) -> Angle {
        iter.copied().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Angle::pi_times(1, 3) + Angle::pi_times(1, 6);
        assert_eq!(a, Angle::pi_times(1, 2));
        assert_eq!(a.to_string(), "1/2 pi");
        assert_eq!(Angle::parse("1/2").unwrap(), a);
        assert_eq!(Angle::parse("1/2 pi").unwrap(), a);
    }

    #[test]
    fn mixing_falls_back_to_radians() {
        let a = Angle::pi_times(1, 2) + Angle::Radians(PI / 2.0);
        assert!(matches!(a, Angle::Radians(_)));
        assert_eq!(a.compare(&Angle::pi()), Ordering::Equal);
        assert!(Angle::Radians(3.0).lt(&Angle::pi()));
    }
}
