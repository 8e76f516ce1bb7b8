//! Exact rational scalars used everywhere in the crate.
//!
//! `Rational` is an arbitrary-precision fraction, always reduced, with a
//! positive denominator. Arithmetic never rounds; conversion to `f64`
//! happens only at explicit evaluation boundaries.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer shorthand.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r` if it fits an `i64` and is integral.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range big integers; divide in floating point as a fallback.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parse "p", "-p/q" or a decimal literal ("0.25") into an exact rational
/// by place value.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = w.abs() * &scale + f;
        let mag = if neg { -mag } else { mag };
        return Some(Rational::new(mag, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Exact `base^exp` for rational `exp`, if the result is rational.
///
/// Integer exponents always succeed (except `0^negative`). For `exp = a/b`
/// the base's numerator and denominator must both be perfect `b`-th powers;
/// even roots of negative bases have no real rational value.
pub fn pow_rational(base: &Rational, exp: &Rational) -> Option<Rational> {
    if let Some(n) = as_i64(exp) {
        if base.is_zero() && n < 0 {
            return None;
        }
        if base.is_zero() {
            return Some(if n == 0 { int(1) } else { int(0) });
        }
        return Some(pow_i64(base, n));
    }
    let b = exp.denom().to_u32()?;
    let a = as_i64(&Rational::from_integer(exp.numer().clone()))?;
    if base.is_zero() {
        return if a > 0 { Some(int(0)) } else { None };
    }
    if base.is_negative() && b % 2 == 0 {
        return None;
    }
    let root_n = exact_nth_root(base.numer(), b)?;
    let root_d = exact_nth_root(base.denom(), b)?;
    Some(pow_i64(&Rational::new(root_n, root_d), a))
}

fn pow_i64(base: &Rational, n: i64) -> Rational {
    base.pow(n as i32)
}

fn exact_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return exact_nth_root(&-v, n).map(|r| -r);
    }
    let root = v.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == *v {
        Some(root)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("7/16").unwrap(), rat(7, 16));
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-2.5").unwrap(), rat(-5, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn rational_powers() {
        assert_eq!(pow_rational(&int(4), &rat(1, 2)).unwrap(), int(2));
        assert_eq!(pow_rational(&rat(1, 8), &rat(1, 3)).unwrap(), rat(1, 2));
        assert_eq!(pow_rational(&int(2), &int(10)).unwrap(), int(1024));
        assert_eq!(pow_rational(&int(-8), &rat(1, 3)).unwrap(), int(-2));
        assert!(pow_rational(&int(2), &rat(1, 2)).is_none());
        assert!(pow_rational(&int(-4), &rat(1, 2)).is_none());
        assert!(pow_rational(&int(0), &int(-1)).is_none());
    }

    #[test]
    fn decimal_expansion_is_place_value() {
        assert_eq!(parse_rational("3.1415").unwrap(), rat(31415, 10000));
    }
}
