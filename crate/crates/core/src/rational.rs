//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact non-negative costs, prices, LP values.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParseError(pub String);

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for RationalParseError {}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3`, `3/2`, `1.25` or `.5` exactly.
pub fn parse_rat(text: &str) -> Result<Rat, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = Rat::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Always `p/q`, including integers (`4/1`).
pub fn fmt_rat(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or(f64::INFINITY)
}

/// Rational for a float, snapping to the nearest integer when within `1e-9`
/// and otherwise rounding to six decimals. Used for thresholds such as
/// `n^{4/5}`, where `32^{4/5}` must come out as exactly `16`.
pub fn snap_f64(x: f64) -> Rat {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        return int(r as i64);
    }
    let scaled = (x * 1e6).round();
    Rat::new(BigInt::from(scaled as i64), BigInt::from(1_000_000))
}

pub fn floor_to_u64(value: &Rat) -> Option<u64> {
    if value.is_negative() {
        return None;
    }
    value.floor().to_integer().to_u64()
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rat>>(items: I) -> Rat {
    items.into_iter().fold(Rat::zero(), |acc, v| acc + v)
}

pub fn one_plus(eps: &Rat) -> Rat {
    Rat::one() + eps
}

pub fn ceil_div_usize(numer: usize, denom: usize) -> usize {
    numer.div_ceil(denom)
}
