//! Exact rational scalars.

use alloc::string::String;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as a rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Converts a rational that is known to be a small integer.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

/// Canonical text form: `"n"` for integers and `"n/d"` otherwise.
pub fn format(r: &Rational) -> String {
    let mut s = String::new();
    if r.denom().is_one() {
        let _ = write!(s, "{}", r.numer());
    } else {
        let _ = write!(s, "{}/{}", r.numer(), r.denom());
    }
    s
}

/// Canonical `"num/den"` form used by the JSON documents (denominator always present).
pub fn format_fraction(r: &Rational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl core::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("invalid rational literal")
    }
}

/// Parses `"a"`, `"-a"`, or `"a/b"` (with optional sign on either part).
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseRationalError)?;
    let den = BigInt::from_str(den).map_err(|_| ParseRationalError)?;
    if den.is_zero() {
        return Err(ParseRationalError);
    }
    Ok(Rational::new(num, den))
}

/// Sign helper used by a few modules that print coefficients.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

/// Writes `terms` as a signed sum such as `2/3 E1 F2 - h1 + 4`.
///
/// Each term is a coefficient and a factor string; an empty string marks a constant.
pub fn write_combination<'a, I>(f: &mut core::fmt::Formatter<'_>, terms: I) -> core::fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut first = true;
    for (c, body) in terms {
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let a = c.abs();
        if body.is_empty() {
            f.write_str(&format(&a))?;
        } else if a.is_one() {
            f.write_str(&body)?;
        } else {
            write!(f, "{} {}", format(&a), body)?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = ratio(4, -6);
        assert_eq!(format_fraction(&r), "-2/3");
        assert_eq!(format(&int(5)), "5");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("4/3").unwrap(), ratio(4, 3));
        assert_eq!(parse(" -5/3 ").unwrap(), ratio(-5, 3));
        assert_eq!(parse("-1").unwrap(), int(-1));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
