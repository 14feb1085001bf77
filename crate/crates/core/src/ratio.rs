//! Exact rational parameters (η, ν, τ, α, c) and threshold comparisons.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational used for every fractional parameter.
pub type Rational = Ratio<i64>;

/// Parses `p/q`, an integer, or a finite decimal such as `0.3` into an exact
/// rational (`0.3` becomes `3/10`, not the nearest double).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParams(format!("cannot parse {s:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_abs: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.trim_start_matches('-').parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let num = int_abs
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac.parse::<i64>().ok()?))
            .ok_or_else(bad)?;
        return Ok(Rational::new(if neg { -num } else { num }, den));
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

/// `⌈r⌉` for a non-negative rational, as an index offset.
pub fn ceil_usize(r: Rational) -> usize {
    r.ceil().to_integer().max(0) as usize
}

pub fn floor_usize(r: Rational) -> usize {
    r.floor().to_integer().max(0) as usize
}

/// `value ≥ threshold`, exactly.
pub fn at_least(value: usize, threshold: Rational) -> bool {
    Rational::from_integer(value as i64) >= threshold
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn in_open_unit(r: Rational) -> bool {
    r > Rational::zero() && r < Rational::from_integer(1)
}

pub(crate) fn of_n(r: Rational, n: usize) -> Rational {
    r * Rational::from_integer(n as i64)
}

pub(crate) mod serde_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/81").unwrap(), Rational::new(1, 81));
        assert_eq!(parse_rational("0.3").unwrap(), Rational::new(3, 10));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational(".25").unwrap(), Rational::new(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn threshold_is_exact() {
        // 0.1 * 20 = 2 exactly, so 3 >= 1 + 2 holds with no float slack.
        let t = Rational::from_integer(1) + of_n(Rational::new(1, 10), 20);
        assert!(at_least(3, t));
        assert!(!at_least(2, t));
        assert_eq!(ceil_usize(of_n(Rational::new(1, 81), 200)), 3);
    }
}
