//! Exact rational offsets.
//!
//! Offsets of Beatty sequences only influence membership through
//! `floor(q * beta)`, so a reduced `i64/i64` fraction is all the
//! precision ever needed. Keeping them rational (rather than float)
//! keeps every downstream computation exact.

use std::fmt;

use crate::error::Error;
use crate::modular::gcd;

/// A reduced fraction `num/den` with `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    /// Builds a reduced rational. Rejects a zero denominator; a negative
    /// denominator is folded into the numerator.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ok(Rational {
            num: sign * (num / g),
            den: (den / g).abs(),
        })
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// `floor(k * self)` computed exactly in wide arithmetic.
    pub fn floor_mul(&self, k: i64) -> i128 {
        (k as i128 * self.num as i128).div_euclid(self.den as i128)
    }

    /// `self - k` for an integer `k`.
    pub fn sub_int(&self, k: i64) -> Result<Self, Error> {
        let num = self.num as i128 - k as i128 * self.den as i128;
        if num < i64::MIN as i128 || num > i64::MAX as i128 {
            return Err(Error::Overflow("offset subtraction"));
        }
        Ok(Rational {
            num: num as i64,
            den: self.den,
        })
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
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
    fn reduces_on_construction() {
        let r = Rational::new(4, 6).unwrap();
        assert_eq!((r.num(), r.den()), (2, 3));
        let r = Rational::new(3, -9).unwrap();
        assert_eq!((r.num(), r.den()), (-1, 3));
        let r = Rational::new(0, -5).unwrap();
        assert_eq!((r.num(), r.den()), (0, 1));
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn floor_mul_matches_definition() {
        // floor(3 * 2/3) = 2, floor(2 * -1) = -2, floor(5 * -7/3) = floor(-35/3) = -12
        assert_eq!(Rational::new(2, 3).unwrap().floor_mul(3), 2);
        assert_eq!(Rational::integer(-1).floor_mul(2), -2);
        assert_eq!(Rational::new(-7, 3).unwrap().floor_mul(5), -12);
    }

    #[test]
    fn sub_int_stays_reduced() {
        let r = Rational::new(2, 3).unwrap().sub_int(5).unwrap();
        assert_eq!((r.num(), r.den()), (-13, 3));
        assert_eq!(Rational::integer(0).sub_int(5).unwrap(), Rational::integer(-5));
    }
}
