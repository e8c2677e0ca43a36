//! Exact rational arithmetic helpers.
//!
//! Everything continuous in this crate is computed over arbitrary-precision
//! rationals; there is no floating point on any assertion path. The type is
//! `num_rational::BigRational`, which keeps values in canonical lowest terms
//! with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator in \"{s}\""))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("bad rational denominator in \"{s}\""))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in \"{s}\""));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical lowest-terms string: `"p/q"`, or just `"p"` when q = 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer n with n <= r, as a `BigInt`.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer n with n >= r, as a `BigInt`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
