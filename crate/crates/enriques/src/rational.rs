//! Exact rational numbers and their canonical text form.
//!
//! Coefficients are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator (the normal form maintained by `num-rational`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num/den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `x` as `"num/den"`, always including the denominator.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses the `"num/den"` form (a bare integer is also accepted).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_int(base: i64, exp: i64) -> Rational {
    let b = int(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b, (-exp) as usize).recip()
    }
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Returns the integer value of `x` if it is an integer fitting in `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Greatest common divisor of a slice of integers (0 for an all-zero slice).
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &v| g.gcd(&v)).abs()
}

/// Positive odd divisors of `n` (of `|n|`); every odd number divides 0, so
/// the caller must not pass 0.
pub fn odd_divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    assert!(n != 0, "odd divisors of 0 are unbounded");
    (1..=n).step_by(2).filter(|k| n % k == 0).collect()
}

/// Sum of `d^power` over positive divisors `d` of `n` (rational for negative
/// powers). Returns 0 for `n <= 0`.
pub fn divisor_sigma(power: i64, n: i64) -> Rational {
    if n <= 0 {
        return Rational::zero();
    }
    (1..=n)
        .filter(|d| n % d == 0)
        .fold(Rational::zero(), |acc, d| acc + pow_int(d, power))
}

/// True when `x` is negative.
pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}
