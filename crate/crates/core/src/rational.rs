//! Exact rational scalars and their `"p/q"` text form.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// The scalar field used throughout: arbitrary precision rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
