//! Exact scalars: arbitrary-precision integers and rationals.
//!
//! Every geometric quantity in this crate is a `Rational`; there is no
//! floating point anywhere. Rationals are kept in lowest terms with a
//! positive denominator and serialize as `"p/q"` (or `"p"` when `q = 1`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(Int::from(p))
}

/// Parses `"p/q"` or `"p"` with optional sign, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: Int = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let denom: Int = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => Int::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// `"p/q"`, or `"p"` when the value is an integer.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of a rational as an integer.
pub fn rat_floor(r: &Rational) -> Int {
    r.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn rat_ceil(r: &Rational) -> Int {
    r.ceil().to_integer()
}

/// lcm(2, ..., m) as a big integer; lcm of the empty range is 1.
pub fn lcm_up_to(m: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=m {
        acc = num_integer::lcm(acc, Int::from(k));
    }
    acc
}

/// n! as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// True when the rational has absolute value small enough for the i128
/// kernel fast path after clearing denominators.
pub fn fits_kernel_bound(v: &Int) -> bool {
    v.abs() <= Int::from(1i64 << 26)
}
