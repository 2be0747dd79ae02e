//! Exact integer and rational helpers shared by every other module.
//!
//! Rationals are [`num_rational::BigRational`], which normalizes after every
//! operation. Their `Display` form ("p/q", or "p" when q = 1) is the wire
//! format used in all JSON output.

mod bivar;
mod unipoly;

pub use bivar::{bivar_diff, BivarPoly};
pub use unipoly::{poly_invert_mod, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Extended Euclid: `(g, u, v)` with `g = gcd(a, b) >= 0` and `u*a + v*b = g`.
///
/// `ext_gcd(0, 0)` is `(0, 0, 0)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a == 0 && b == 0 {
        return (0, 0, 0);
    }
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `n >= 2`, as the representative in `[1, n-1]`.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::PreconditionFailed(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let (g, u, _) = ext_gcd(a.rem_euclid(n), n);
    if g != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    Ok(u.rem_euclid(n))
}

/// Like [`mod_inverse`] but also accepts the modulus 1, where every integer is
/// congruent to 0 and the inverse is taken to be 0.
pub(crate) fn mod_inverse_or_zero(a: i64, n: i64) -> Result<i64> {
    if n == 1 {
        Ok(0)
    } else {
        mod_inverse(a, n)
    }
}

/// Fractional part `{x} = x - floor(x)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `{a / n}` for integers, `n >= 1`.
pub fn frac_int(a: i64, n: i64) -> Rational {
    ratio(a.rem_euclid(n), n)
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The integer value of `x`, if it is one.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Parses the "p/q" or "p" wire format.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}
