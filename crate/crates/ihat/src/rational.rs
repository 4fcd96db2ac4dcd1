//! Exact rational scalars.
//!
//! All arithmetic in this crate is exact over the rationals. This module
//! fixes the scalar type [`Q`] (arbitrary-precision rationals), provides
//! constructors and the `"p/q"` string form used by every JSON interface,
//! and a few small helpers shared across modules.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q_from(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`; intended for literals in code and tests.
pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse an exact rational from its string form: `"3"`, `"-3"`, `"3/2"`, `"-3/2"`.
///
/// Rejects zero denominators and anything that is not a ratio of integers;
/// this is the only accepted number format in JSON documents, so that no
/// floating point ever enters the pipeline.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::input(format!("malformed rational string {s:?}")))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| Error::input(format!("malformed rational string {s:?}")))?;
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in rational {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Render a rational in the canonical `"p/q"` (or `"p"`) string form.
pub fn rational_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// True if `q` is a (possibly negative) integer.
pub fn is_integer(q: &Q) -> bool {
    q.denom().is_one()
}

/// If `q` is a positive integer, return it as `u64`.
pub fn as_positive_integer(q: &Q) -> Option<u64> {
    if is_integer(q) && q.is_positive() {
        use num::ToPrimitive;
        q.numer().to_u64()
    } else {
        None
    }
}

/// Exact factorial as a rational, for series coefficients.
pub fn factorial(n: usize) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Binomial coefficient `C(a, j)` for arbitrary rational `a` and `j >= 0`:
/// `a (a-1) ... (a-j+1) / j!`. Used for binomial series expansions.
pub fn binomial_rational(a: &Q, j: usize) -> Q {
    let mut num = Q::one();
    for i in 0..j {
        num *= a - q_from(i as i64);
    }
    num / factorial(j)
}
