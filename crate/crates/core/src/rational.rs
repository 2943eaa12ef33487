//! Rational numbers and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as an exact rational (expected `p` or `p/q`)")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p"` or `"p/q"` with integer `p`, nonzero integer `q`.
///
/// Decimal points and exponents are rejected.
pub fn parse_rational(text: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError {
        input: text.to_string(),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Q::new(num, den))
}

/// Parses a comma separated list of rationals, e.g. `"1,1/2,-2"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Q>, ParseRationalError> {
    text.split(',').map(parse_rational).collect()
}

/// Canonical text: `"3"`, `"-1/2"`.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Serde adaptor writing a rational in its canonical text form.
pub fn serialize_rational<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), q_int(3));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), Q::new((-3).into(), 2.into()));
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }

    #[test]
    fn rejects_floats_and_zero_denominator() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn parses_lists() {
        let v = parse_rational_list("1,1,-2").unwrap();
        assert_eq!(v, vec![q_int(1), q_int(1), q_int(-2)]);
    }
}
