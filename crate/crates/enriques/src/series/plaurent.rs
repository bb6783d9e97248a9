//! Finite Laurent polynomials in the elliptic variable `p = e^z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, parse_rational, Rational};

/// A Laurent polynomial `Σ c_r p^r` with finitely many nonzero rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PLaurent {
    coeffs: BTreeMap<i64, Rational>,
}

impl PLaurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::monomial(0, int(1))
    }

    /// `c p^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        Self::from_coeffs([(e, c)])
    }

    /// The constant `c`.
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// Builds from (exponent, coefficient) pairs, summing repeats.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, Rational)>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in coeffs {
            p.add_term(e, c);
        }
        p
    }

    /// Builds from integer coefficients.
    pub fn from_integers<I: IntoIterator<Item = (i64, i64)>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(|(e, c)| (e, int(c))))
    }

    /// Adds `c p^e` in place.
    pub fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Adds `c · p^shift · other` in place.
    pub fn add_scaled_shifted(&mut self, other: &PLaurent, c: &Rational, shift: i64) {
        for (&e, x) in &other.coeffs {
            self.add_term(e + shift, x * c);
        }
    }

    /// Coefficient of `p^e`.
    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Stored coefficients.
    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    /// Iterates over (exponent, coefficient) in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent present.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent present.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True when `c(r) = c(−r)` for every `r`.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// The smallest `r >= 0` with `c(r) ≠ c(−r)`, if any.
    pub fn first_asymmetry(&self) -> Option<i64> {
        let mut bad: Vec<i64> = self
            .coeffs
            .keys()
            .map(|e| e.abs())
            .filter(|&r| self.coeff(r) != self.coeff(-r))
            .collect();
        bad.sort_unstable();
        bad.first().copied()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PLaurent {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplies by `p^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        PLaurent {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e + shift, x.clone())).collect(),
        }
    }

    /// Substitutes `p -> p^j` for a nonzero integer `j`.
    pub fn substitute_power(&self, j: i64) -> Self {
        assert!(j != 0, "substitution exponent must be nonzero");
        PLaurent::from_coeffs(self.coeffs.iter().map(|(&e, x)| (e * j, x.clone())))
    }

    /// Substitutes `p -> 1/p`.
    pub fn reflect(&self) -> Self {
        self.substitute_power(-1)
    }

    /// Value at `p = 1`.
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &PLaurent) -> Result<PLaurent> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::NotInvertible("division by the zero polynomial".into())),
        };
        let lead_inv = divisor.coeffs[&dhi].recip();
        let mut rem = self.clone();
        let mut quot = PLaurent::zero();
        while let Some(top) = rem.max_exp() {
            let low = rem.min_exp().unwrap_or(top);
            if top - low < dhi - dlo {
                return Err(Error::Domain("Laurent division leaves a remainder".into()));
            }
            let c = rem.coeffs[&top].clone() * &lead_inv;
            let shift = top - dhi;
            quot.add_term(shift, c.clone());
            rem.add_scaled_shifted(divisor, &(-c), shift);
        }
        Ok(quot)
    }

    /// JSON form: `[[exponent, "num/den"], ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(&e, c)| serde_json::json!([e, fmt_rational(c)]))
                .collect(),
        )
    }

    /// Parses the form produced by [`PLaurent::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<PLaurent> {
        let bad = || Error::InvalidArgument("bad Laurent polynomial JSON".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut out = PLaurent::zero();
        for item in arr {
            let pair = item.as_array().ok_or_else(bad)?;
            let e = pair.first().and_then(|x| x.as_i64()).ok_or_else(bad)?;
            let c = pair.get(1).and_then(|x| x.as_str()).ok_or_else(bad)?;
            out.add_term(e, parse_rational(c)?);
        }
        Ok(out)
    }

    fn add_impl(&self, other: &PLaurent, sign: &Rational) -> PLaurent {
        let mut out = self.clone();
        out.add_scaled_shifted(other, sign, 0);
        out
    }

    fn mul_impl(&self, other: &PLaurent) -> PLaurent {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                *acc.entry(a + b).or_insert_with(Rational::zero) += x * y;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PLaurent { coeffs: acc }
    }

    /// True for the constant 1.
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }
}

impl fmt::Display for PLaurent {
    /// Renders as e.g. `2/1 p^-1 + 12/1 + 2/1 p^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{}", fmt_rational(c))?;
            } else {
                write!(f, "{} p^{}", fmt_rational(c), e)?;
            }
        }
        Ok(())
    }
}

impl Add<&PLaurent> for &PLaurent {
    type Output = PLaurent;
    fn add(self, rhs: &PLaurent) -> PLaurent {
        self.add_impl(rhs, &int(1))
    }
}

impl Sub<&PLaurent> for &PLaurent {
    type Output = PLaurent;
    fn sub(self, rhs: &PLaurent) -> PLaurent {
        self.add_impl(rhs, &int(-1))
    }
}

impl Mul<&PLaurent> for &PLaurent {
    type Output = PLaurent;
    fn mul(self, rhs: &PLaurent) -> PLaurent {
        self.mul_impl(rhs)
    }
}

impl Neg for &PLaurent {
    type Output = PLaurent;
    fn neg(self) -> PLaurent {
        self.scale(&int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_detection() {
        let s = PLaurent::from_integers([(-1, 2), (0, 12), (1, 2)]);
        assert!(s.is_symmetric());
        let a = PLaurent::from_integers([(-1, 1), (2, 1)]);
        assert_eq!(a.first_asymmetry(), Some(1));
    }

    #[test]
    fn exact_division() {
        // (p - 2 + 1/p) = (1 - 1/p)(p - 1)
        let x = PLaurent::from_integers([(-1, 1), (0, -2), (1, 1)]);
        let d = PLaurent::from_integers([(0, 1), (-1, -1)]);
        assert_eq!(x.div_exact(&d).unwrap(), PLaurent::from_integers([(1, 1), (0, -1)]));
        let r = PLaurent::from_integers([(0, 1), (1, 1)]);
        assert!(PLaurent::from_integers([(0, 1)]).div_exact(&r).is_err());
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = PLaurent::from_integers([(-1, 2), (0, 12), (1, 2)]);
        assert_eq!(f.eval_at_one(), int(16));
        assert_eq!(
            f.substitute_power(3),
            PLaurent::from_integers([(-3, 2), (0, 12), (3, 2)])
        );
    }

    #[test]
    fn json_round_trip() {
        let f = PLaurent::from_integers([(-2, 3), (5, -1)]);
        assert_eq!(PLaurent::from_json(&f.to_json()).unwrap(), f);
    }
}
