//! Symbolic tokens for the rational functions `Σ_{n>0} n·c(n)·p^n` with a
//! periodic coefficient sequence `c`.
//!
//! Such series have infinite support in `p`, so they are never expanded into a
//! [`PLaurent`]. Writing `n = mt + j` with period `m`,
//!
//! ```text
//! Σ_{n>0} n c(n) p^n = Σ_{j=1}^{m} c(j) [ j p^j / (1 − p^m) + m p^{j+m} / (1 − p^m)^2 ],
//! ```
//!
//! which is `N(p) / (1 − p^m)^2` for an explicit polynomial `N`. The token
//! `p/(1 − p)^2 = 1/(p^{1/2} − p^{−1/2})^2` is the case `m = 1`, `c = 1`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::rational::{fmt_rational, int, Rational};
use crate::series::PLaurent;

/// `Σ_{n>0} n·c(n)·p^n` where `c(n) = values[n mod m]`, `m = values.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleToken {
    values: Vec<Rational>,
}

impl PoleToken {
    /// Token with the given residues; `values[j]` is `c(n)` for `n ≡ j (mod m)`.
    pub fn new(values: Vec<Rational>) -> Self {
        if values.is_empty() {
            return Self::zero();
        }
        PoleToken { values }
    }

    /// The zero token.
    pub fn zero() -> Self {
        PoleToken {
            values: vec![Rational::zero()],
        }
    }

    /// `p/(1 − p)^2`, the expansion of `1/(p^{1/2} − p^{−1/2})^2` in `|p| < 1`.
    pub fn inverse_theta_polar() -> Self {
        PoleToken::new(vec![int(1)])
    }

    /// Period `m` of the coefficient sequence.
    pub fn period(&self) -> i64 {
        self.values.len() as i64
    }

    /// `c(n)`.
    pub fn value_at(&self, n: i64) -> Rational {
        self.values[n.rem_euclid(self.period()) as usize].clone()
    }

    /// True when every residue vanishes.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn with_period(&self, m: i64) -> Vec<Rational> {
        (0..m).map(|j| self.value_at(j)).collect()
    }

    /// Sum of two tokens (the period becomes the lcm).
    pub fn add(&self, other: &PoleToken) -> PoleToken {
        let m = self.period().lcm(&other.period());
        let a = self.with_period(m);
        let b = other.with_period(m);
        PoleToken::new(a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, c: &Rational) -> PoleToken {
        PoleToken::new(self.values.iter().map(|x| x * c).collect())
    }

    /// Substitutes `p -> p^j` for `j >= 1`: the new sequence is
    /// `c'(N) = c(N/j)/j` when `j | N` and zero otherwise.
    pub fn substitute_power(&self, j: i64) -> PoleToken {
        assert!(j >= 1, "substitution exponent must be positive");
        let m = self.period() * j;
        let inv_j = int(j).recip();
        PoleToken::new(
            (0..m)
                .map(|n| {
                    if n % j == 0 {
                        self.value_at(n / j) * &inv_j
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    /// Partial expansion `Σ_{n=1}^{n_max} n c(n) p^n`.
    pub fn expand(&self, n_max: i64) -> PLaurent {
        PLaurent::from_coeffs((1..=n_max).map(|n| (n, self.value_at(n) * int(n))))
    }

    /// The numerator `N(p)` of the representation `N(p) / (1 − p^m)^2`.
    pub fn numerator(&self) -> PLaurent {
        let m = self.period();
        let mut out = PLaurent::zero();
        for j in 1..=m {
            let c = self.value_at(j);
            if c.is_zero() {
                continue;
            }
            out.add_term(j, &c * int(j));
            out.add_term(j + m, -(&c * int(j)));
            out.add_term(j + m, &c * int(m));
        }
        out
    }

    /// The denominator `(1 − p^m)^2`.
    pub fn denominator(&self) -> PLaurent {
        let m = self.period();
        let base = PLaurent::from_integers([(0, 1), (m, -1)]);
        &base * &base
    }

    /// Coefficients `(A, B)` of the polar part `A/(1 − p)^2 + B/(1 − p)` at
    /// `p = 1`, the only pole that obstructs a Taylor expansion in `z` under
    /// `p = e^z`.
    pub fn polar_part_at_one(&self) -> (Rational, Rational) {
        let m = int(self.period());
        let n = self.numerator();
        let n1 = n.eval_at_one();
        let dn1 = n.iter().fold(Rational::zero(), |acc, (e, c)| acc + c * int(e));
        // N/(1-p^m)^2 = h/(1-p)^2 with h = N/Φ^2, Φ = 1 + p + ... + p^{m-1}
        let phi1 = m.clone();
        let dphi1 = &m * (&m - int(1)) / int(2);
        let a = &n1 / (&phi1 * &phi1);
        let dh1 = (dn1 * &phi1 - int(2) * &n1 * dphi1) / (&phi1 * &phi1 * &phi1);
        (a, -dh1)
    }

    /// True when the rational function is regular at `p = 1`.
    pub fn is_pole_free(&self) -> bool {
        let (a, b) = self.polar_part_at_one();
        a.is_zero() && b.is_zero()
    }

    /// True when the token equals `num/den` as rational functions.
    pub fn equals_rational_function(&self, num: &PLaurent, den: &PLaurent) -> bool {
        &self.numerator() * den == num * &self.denominator()
    }
}

impl fmt::Display for PoleToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum_{{n>0}} n c(n) p^n with c(n mod {}) = [", self.period())?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(v))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_expansion(t: &PoleToken, n_max: i64) {
        // (1 - p^m)^2 · expansion agrees with the numerator in low degrees
        let lhs = &t.expand(n_max) * &t.denominator();
        let num = t.numerator();
        for e in 0..=n_max {
            assert_eq!(lhs.coeff(e), num.coeff(e), "degree {e}");
        }
    }

    #[test]
    fn numerator_matches_expansion() {
        check_expansion(&PoleToken::inverse_theta_polar(), 20);
        check_expansion(&PoleToken::new(vec![int(3), int(-1), int(5)]), 30);
        check_expansion(&PoleToken::new(vec![int(2), int(7)]).substitute_power(3), 40);
    }

    #[test]
    fn inverse_theta_token_is_polar() {
        let t = PoleToken::inverse_theta_polar();
        assert_eq!(t.polar_part_at_one(), (int(1), int(-1)));
        assert!(!t.is_pole_free());
        let num = PLaurent::from_integers([(1, 1)]);
        let den = PLaurent::from_integers([(0, 1), (1, -2), (2, 1)]);
        assert!(t.equals_rational_function(&num, &den));
    }

    #[test]
    fn alternating_token_is_regular_at_one() {
        // c = (a, -a) by parity: a Σ (-1)^{n-1} n p^n = a p/(1+p)^2
        let a = int(5);
        let t = PoleToken::new(vec![-a.clone(), a.clone()]);
        assert!(t.is_pole_free());
        let num = PLaurent::from_coeffs([(1, a)]);
        let den = PLaurent::from_integers([(0, 1), (1, 2), (2, 1)]);
        assert!(t.equals_rational_function(&num, &den));
    }

    #[test]
    fn tokens_add_and_cancel() {
        let t = PoleToken::new(vec![int(1), int(2)]);
        assert!(t.add(&t.scale(&int(-1))).is_zero());
        let u = t.add(&PoleToken::new(vec![int(1), int(1), int(1)]));
        assert_eq!(u.period(), 6);
        assert_eq!(u.value_at(1), int(3));
        assert_eq!(u.value_at(2), int(2));
    }
}
