//! Exact rational parsing and formatting.
//!
//! All sizes, weights, and distances in this crate are exact
//! `BigRational`s. On the wire they are strings of the form `"p/q"`
//! (lowest terms, positive denominator); a bare integer `"n"` is
//! accepted on input as shorthand for `"n/1"`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty rational literal".into()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator in `{s}`")))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational denominator in `{s}`")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in `{s}`")));
    }
    if denom.is_negative() {
        return Err(Error::InvalidInput(format!(
            "denominator must be positive in `{s}`"
        )));
    }
    Ok(BigRational::new(numer, denom))
}

/// Format as `"p/q"` in lowest terms with `q > 0`, `/1` included.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
