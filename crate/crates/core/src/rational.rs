//! Exact rational arithmetic, the substrate for all coefficient generation.
//!
//! [`Rational`] is GMP's canonical-form rational: always stored in lowest
//! terms with a positive denominator, so structural equality is mathematical
//! equality.

use rug::ops::Pow;

use crate::error::{Error, Result};

pub use rug::Integer;
pub use rug::Rational;

/// Shorthand constructor for small rationals.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rational with zero denominator");
    Rational::from((num, den))
}

/// Formats as `numerator/denominator`, with the denominator always present
/// (`-1` prints as `-1/1`). This is the form used by the JSON coefficient
/// dump, where a uniform shape is worth more than brevity.
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Nearest integer with ties rounded toward the larger integer,
/// i.e. `floor(q + 1/2)`.
pub fn nearest_int_half_up(q: &Rational) -> Integer {
    let shifted = q.clone() + rat(1, 2);
    shifted.floor().into_numer_denom().0
}

/// Parses a rational from `p/q`, integer, or decimal/scientific notation.
///
/// Decimal strings are converted exactly: `0.25` is 1/4 and `1.1e-1` is
/// 11/100, not the nearest binary float.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: Integer = num
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad numerator in {s:?}")))?;
        let d: Integer = den
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad denominator in {s:?}")))?;
        if d == 0 {
            return Err(Error::invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::from((n, d)));
    }

    // Split off a decimal exponent, if any.
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("no digits in {s:?}")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::invalid(format!("non-digit in {s:?}")));
    }

    let mantissa_int: Integer = format!("{int_part}{frac_part}")
        .parse()
        .unwrap_or_else(|_| Integer::new());
    let mut value = Rational::from(mantissa_int * sign);
    let shift = exp - frac_part.len() as i64;
    let ten = Integer::from(10);
    if shift >= 0 {
        value *= Rational::from(ten.pow(shift as u32));
    } else {
        value /= Rational::from(ten.pow((-shift) as u32));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational("1.1E1").unwrap(), rat(11, 1));
        assert_eq!(parse_rational("+.5").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "1e", "--2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn nearest_rounds_half_toward_larger() {
        assert_eq!(nearest_int_half_up(&rat(7, 2)), 4); // 3.5 -> 4
        assert_eq!(nearest_int_half_up(&rat(-1, 2)), 0); // -0.5 -> 0
        assert_eq!(nearest_int_half_up(&rat(67, 4)), 17); // 16.75 -> 17
        assert_eq!(nearest_int_half_up(&rat(17, 1)), 17);
        assert_eq!(nearest_int_half_up(&rat(-7, 2)), -3); // -3.5 -> -3
    }

    #[test]
    fn fraction_string_is_uniform() {
        assert_eq!(fraction_string(&rat(-2, 4)), "-1/2");
        assert_eq!(fraction_string(&rat(3, 1)), "3/1");
    }
}
