//! Number formats of the interchange documents: rationals as `p/q`, floats
//! as shortest round-trip decimals. Decimal input is read exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{CliError, Result};

/// Exact value of `p/q`, an integer, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || CliError::schema(format!("not a number: {s:?}"));
    let s = s.trim();
    if s.contains('/') {
        return s.parse::<BigRational>().map_err(|_| bad());
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let m: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(m);
    if shift >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -q } else { q })
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let x = if s.contains('/') {
        parse_rational(s)?.to_f64().unwrap_or(f64::NAN)
    } else {
        s.trim().parse::<f64>().map_err(|_| CliError::schema(format!("not a number: {s:?}")))?
    };
    if !x.is_finite() {
        return Err(CliError::schema(format!("not a finite number: {s:?}")));
    }
    Ok(x)
}

/// Shortest decimal that parses back to `x`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// `p/q`, or `p` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}
