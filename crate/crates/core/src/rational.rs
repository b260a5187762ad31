//! Exact rational arithmetic helpers used throughout the crate.
//!
//! All domain elements, interval endpoints, and quantifier representatives
//! are arbitrary-precision rationals; nothing in the evaluator ever rounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Exact rational number (normalized fraction over big integers).
pub type Q = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `-3`, `5/2`, or `2.5` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let bad = || RationalParseError::Invalid(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let (sign, int_digits) = match int.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int.strip_prefix('+').unwrap_or(int)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{}{}", int_digits, frac);
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Q::new(n * BigInt::from(sign), d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Canonical text form: `2`, `-3`, `5/2`.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

/// Enumerates all of `Q` in a fixed order: by increasing
/// `max(|numerator|, denominator)`, ties broken by value.
pub fn enumerate_rationals() -> impl Iterator<Item = Q> {
    (1i64..).flat_map(|k| {
        let mut batch: Vec<Q> = Vec::new();
        // |numer| == k, denom <= k
        for d in 1..=k {
            if num_integer::gcd(k, d) == 1 {
                batch.push(qr(k, d));
                batch.push(qr(-k, d));
            }
        }
        // denom == k, |numer| < k (including 0 when k == 1)
        for n in 0..k {
            if num_integer::gcd(n, k) == 1 || (n == 0 && k == 1) {
                batch.push(qr(n, k));
                if n != 0 {
                    batch.push(qr(-n, k));
                }
            }
        }
        batch.sort();
        batch.dedup();
        batch
    })
}

/// Uniform-ish random rational in `[lo, hi]` with denominator at most 16.
pub fn random_rational_in<R: Rng>(rng: &mut R, lo: &Q, hi: &Q) -> Q {
    let d = rng.gen_range(1i64..=16);
    let dq = qi(d);
    let n_min = (lo * &dq).ceil().to_integer();
    let n_max = (hi * &dq).floor().to_integer();
    if n_max < n_min {
        return lo.clone();
    }
    let span = (&n_max - &n_min).to_u64().unwrap_or(u64::MAX);
    let offset = rng.gen_range(0..=span);
    Q::new(n_min + BigInt::from(offset), BigInt::from(d))
}

/// |q| as a rational, used by generators to bound magnitudes.
pub fn abs(q: &Q) -> Q {
    if q.is_negative() {
        -q.clone()
    } else {
        q.clone()
    }
}
