//! Rational literals and small exact-arithmetic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid integer literal `{0}`")]
    InvalidInteger(String),
}

/// Parses `p/q`, `p`, or a finite decimal such as `-1.25`. Unicode minus signs
/// are accepted. The result is always reduced with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim().replace('\u{2212}', "-");
    if t.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_bigint(p).map_err(|_| ParseError::Invalid(s.to_string()))?;
        let q = parse_bigint(q).map_err(|_| ParseError::Invalid(s.to_string()))?;
        if q.is_zero() {
            return Err(ParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(ParseError::Invalid(s.to_string()));
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_value = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            parse_bigint(int_digits).map_err(|_| ParseError::Invalid(s.to_string()))?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_value: BigInt = frac_part.parse().map_err(|_| ParseError::Invalid(s.to_string()))?;
        let mut value = BigRational::new(int_value * &scale + frac_value, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    parse_bigint(&t)
        .map(BigRational::from_integer)
        .map_err(|_| ParseError::Invalid(s.to_string()))
}

fn parse_bigint(s: &str) -> Result<BigInt, ParseError> {
    let t = s.trim().replace('\u{2212}', "-");
    let digits = t.trim_start_matches(['-', '+']);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseError::InvalidInteger(s.to_string()));
    }
    t.parse().map_err(|_| ParseError::InvalidInteger(s.to_string()))
}

/// Parses a comma separated list of rationals, e.g. `"1/2, -3/4"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ParseError> {
    s.split(',').map(parse_rational).collect()
}

/// Parses a comma separated list of integers, e.g. `"2,-1"`.
pub fn parse_integer_list(s: &str) -> Result<Vec<i64>, ParseError> {
    s.split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<i64>().map_err(|_| ParseError::InvalidInteger(t.to_string()))
        })
        .collect()
}

/// `p/q` or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounded half
/// away from zero. Exact and deterministic, used for SVG coordinates.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let twice: BigInt = abs.numer() * 2 + abs.denom();
    let rounded = twice.div_floor(&(abs.denom() * BigInt::from(2)));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut out = String::new();
    if negative && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_rational(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("\u{2212}3/9").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(parse_rational(""), Err(ParseError::Empty));
        assert!(matches!(parse_rational("1/0"), Err(ParseError::ZeroDenominator(_))));
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1/-").is_err());
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor(&rat(4, 3)), BigInt::from(1));
        assert_eq!(floor(&rat(-1, 3)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 3)), BigInt::from(0));
        assert_eq!(ceil(&rat(5, 1)), BigInt::from(5));
    }

    #[test]
    fn formats_and_decimals() {
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&rat(-2, 3), 3), "-0.667");
        assert_eq!(to_decimal(&rat(5, 2), 2), "2.5");
        assert_eq!(to_decimal(&int(0), 2), "0");
    }
}
