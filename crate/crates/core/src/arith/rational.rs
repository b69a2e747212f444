//! Rational helpers on top of `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`. Rejects zero denominators and anything with
/// a decimal point or exponent.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Rational with the smallest denominator in the open interval `(lo, hi)`;
/// among integers, the one closest to zero. `hi = None` means `+∞`.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        assert!(lo < h, "empty interval");
        if lo.is_negative() && h.is_positive() {
            return Rational::zero();
        }
        if !h.is_positive() {
            // mirror into the positive half line
            return -simplest_nonneg(&-h, Some(&-lo));
        }
    } else if lo.is_negative() {
        return Rational::zero();
    }
    simplest_nonneg(lo, hi)
}

fn simplest_nonneg(lo: &Rational, hi: Option<&Rational>) -> Rational {
    debug_assert!(!lo.is_negative());
    let fl = floor(lo);
    let next = Rational::from_integer(&fl + 1);
    if hi.map_or(true, |h| &next < h) {
        return next;
    }
    let hi = hi.expect("bounded here");
    let base = Rational::from_integer(fl);
    let a = lo - &base;
    let b = hi - &base;
    // lo = base + 1/y with y in (1/b, 1/a)
    let y_lo = b.recip();
    let y = if a.is_zero() {
        simplest_nonneg(&y_lo, None)
    } else {
        simplest_nonneg(&y_lo, Some(&a.recip()))
    };
    base + y.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(-1, 2), Some(&rat(3, 1))), int(0));
        assert_eq!(simplest_between(&rat(1, 3), Some(&rat(2, 3))), rat(1, 2));
        assert_eq!(simplest_between(&rat(2, 1), Some(&rat(3, 1))), rat(5, 2));
        assert_eq!(simplest_between(&rat(-3, 1), Some(&rat(-2, 1))), rat(-5, 2));
        assert_eq!(simplest_between(&rat(7, 2), None), int(4));
        assert_eq!(simplest_between(&rat(-7, 2), None), int(0));
        assert_eq!(simplest_between(&rat(31, 100), Some(&rat(32, 100))), rat(5, 16));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&int(3)), BigInt::from(3));
    }
}
