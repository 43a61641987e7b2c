//! Exact rational arithmetic on `i128` for the worked examples and the
//! comparability constants, where the contract pins exact values.

use crate::error::{HodgeError, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced rational number with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Ratio> {
        if den == 0 {
            return Err(HodgeError::RationalOverflow);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ok(Ratio { num: sign * num / g, den: sign * den / g })
    }

    pub fn integer(n: i128) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    /// Parses `p/q`, a plain integer, or a decimal literal such as `0.9`
    /// (read exactly as 9/10).
    pub fn parse(text: &str) -> Result<Ratio> {
        let s = text.trim();
        let bad = || HodgeError::InvalidConstants { reason: format!("cannot parse '{s}' as a rational") };
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            return Ratio::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.trim_start().starts_with('-');
            let int: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
            if frac.is_empty() || frac.len() > 30 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: i128 = frac.parse().map_err(|_| bad())?;
            let scale = 10i128.checked_pow(frac.len() as u32).ok_or(HodgeError::RationalOverflow)?;
            let frac_part = Ratio::new(if neg { -digits } else { digits }, scale)?;
            return Ok(Ratio::integer(int) + frac_part);
        }
        let n: i128 = s.parse().map_err(|_| bad())?;
        Ok(Ratio::integer(n))
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn recip(&self) -> Ratio {
        Ratio::new(self.den, self.num).expect("reciprocal of zero")
    }

    pub fn max(self, other: Ratio) -> Ratio {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn reduced(num: i128, den: i128) -> Ratio {
        Ratio::new(num, den).expect("zero denominator")
    }
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        Ratio::reduced(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl Sub for Ratio {
    type Output = Ratio;
    fn sub(self, rhs: Ratio) -> Ratio {
        self + (-rhs)
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        Ratio::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        Ratio::reduced(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio { num: -self.num, den: self.den }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_exact() {
        assert_eq!(Ratio::parse("0.9").unwrap(), Ratio::new(9, 10).unwrap());
        assert_eq!(Ratio::parse("1.25").unwrap(), Ratio::new(5, 4).unwrap());
        assert_eq!(Ratio::parse("-0.5").unwrap(), Ratio::new(-1, 2).unwrap());
        assert_eq!(Ratio::parse("3/4").unwrap(), Ratio::new(3, 4).unwrap());
        assert_eq!(Ratio::parse("7").unwrap(), Ratio::integer(7));
    }

    #[test]
    fn arithmetic_reduces() {
        let a = Ratio::new(2, 4).unwrap();
        assert_eq!(a, Ratio::new(1, 2).unwrap());
        assert_eq!(a + a, Ratio::ONE);
        assert_eq!(a * Ratio::integer(4), Ratio::integer(2));
        assert_eq!(Ratio::integer(3) / Ratio::integer(6), a);
        assert_eq!((a - Ratio::ONE).to_f64(), -0.5);
    }

    #[test]
    fn ordering() {
        assert!(Ratio::new(1, 3).unwrap() < Ratio::new(1, 2).unwrap());
        assert_eq!(Ratio::new(-3, -6).unwrap(), Ratio::new(1, 2).unwrap());
        assert_eq!(Ratio::new(1, 3).unwrap().max(Ratio::ONE), Ratio::ONE);
    }
}
