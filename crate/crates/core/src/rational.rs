//! Exact rational scalars.
//!
//! All plane geometry in this crate is done over arbitrary-precision
//! rationals, so equality of distances is decidable and every reported
//! statistic is exact. The scalar type is [`num_rational::BigRational`],
//! which keeps values fully reduced with a positive denominator; equality
//! and hashing therefore agree with mathematical equality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer numerator/denominator pair.
///
/// Fails when `den` is zero. The result is reduced and sign-normalized.
pub fn rational(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ParseRational {
            text: format!("{num}/{den}"),
            reason: "denominator is zero",
        });
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses a rational from text.
///
/// Accepted forms, all exact:
/// * integers: `7`, `-13`
/// * fractions: `3/4`, `-22/7` (denominator must be nonzero)
/// * finite decimals: `2.5`, `-0.125`, `.5`
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |reason: &'static str| Error::ParseRational {
        text: text.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }

    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.parse().map_err(|_| fail("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| fail("bad denominator"))?;
        if den.is_zero() {
            return Err(fail("denominator is zero"));
        }
        return Ok(Rational::new(num, den));
    }

    if let Some((whole, frac)) = s.split_once('.') {
        let (sign, whole) = match whole.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if whole.is_empty() && frac.is_empty() {
            return Err(fail("no digits"));
        }
        if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("bad decimal digits"));
        }
        let whole_val: BigInt = if whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| fail("bad integer part"))?
        };
        let frac_val: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| fail("bad fractional part"))?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let num = (whole_val * &scale + frac_val) * BigInt::from(sign);
        return Ok(Rational::new(num, scale));
    }

    let num: BigInt = s.parse().map_err(|_| fail("not an integer"))?;
    Ok(Rational::from_integer(num))
}

/// Renders a rational as `a` (integral values) or `a/b`.
///
/// This is the form used in point files and JSON reports; `parse_rational`
/// round-trips it.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the value is an integer.
pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// True when the value is strictly positive.
pub fn is_positive(value: &Rational) -> bool {
    value.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_decimals() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-13").unwrap(), int(-13));
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4).unwrap());
        assert_eq!(parse_rational("-22/7").unwrap(), rational(-22, 7).unwrap());
        assert_eq!(parse_rational("2.5").unwrap(), rational(5, 2).unwrap());
        assert_eq!(parse_rational("-0.125").unwrap(), rational(-1, 8).unwrap());
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2).unwrap());
        assert_eq!(parse_rational("1.").unwrap(), int(1));
    }

    #[test]
    fn reduction_is_canonical() {
        // Different lexical forms of the same value must be one value.
        let a = parse_rational("2/4").unwrap();
        let b = parse_rational("0.5").unwrap();
        let c = parse_rational("-3/-6").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.numer(), &BigInt::from(1));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn negative_denominator_normalizes() {
        let v = parse_rational("5/-10").unwrap();
        assert!(v.denom().is_positive());
        assert_eq!(v, rational(-1, 2).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "1.2.3", "--4", "3/", "/4", "1e3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for text in ["0", "-7", "3/4", "-22/7", "1/2"] {
            let v = parse_rational(text).unwrap();
            assert_eq!(format_rational(&v), text.to_string());
            assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }
}
