//! Exact rational scalars.
//!
//! Every coordinate in this crate is a `num::BigRational`: arbitrary-precision
//! integers over a positive denominator, always in lowest terms. Floating
//! point never appears. The text form accepted and emitted is a decimal
//! integer (`"3"`, `"-1"`) or a fraction (`"1/2"`); anything else, including
//! decimal points and exponents, is rejected, so irrational or floating
//! inputs are unrepresentable rather than silently rounded.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Renders a rational in the canonical text form: `"3"`, `"-1"`, `"1/2"`.
pub fn rat_to_string(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "expected a decimal integer or p/q fraction, got {s:?}"
        )));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Parses the canonical text form. Reduction to lowest terms is applied on
/// load, so `"2/4"` is accepted and becomes `1/2`; `"1/0"`, `"1.5"`, and
/// non-numeric strings are rejected.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_bigint(s)?)),
        Some((p, q)) => {
            let numer = parse_bigint(p)?;
            let denom = parse_bigint(q)?;
            if !denom.is_positive() {
                return Err(Error::Parse(format!(
                    "denominator must be a positive integer in {s:?}"
                )));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm<'a>(vals: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in vals {
        acc = num::integer::lcm(acc, v.denom().clone());
    }
    acc
}

/// Greatest common divisor of the numerators' absolute values; zero when all
/// inputs are zero.
pub fn numerator_gcd<'a>(vals: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::zero();
    for v in vals {
        acc = num::integer::gcd(acc, v.numer().abs());
    }
    acc
}
