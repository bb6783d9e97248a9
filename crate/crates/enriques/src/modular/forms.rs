//! q-expansions of Eisenstein series, eta quotients and the weight-2 form
//! `F₂` for Γ₀(2).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};
use crate::series::{euler_product, QSeries};

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![int(1)]))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bernoulli number `B_n` (with `B_1 = −1/2`), from the recursion
/// `Σ_{j=0}^{n} C(n+1, j) B_j = 0`. Values are cached.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = bernoulli_cache().read().expect("cache lock").get(n) {
        return b.clone();
    }
    let mut cache = bernoulli_cache().write().expect("cache lock");
    while cache.len() <= n {
        let m = cache.len() as u64;
        let mut s = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, j as u64)) * b;
        }
        cache.push(-s / int(m as i64 + 1));
    }
    cache[n].clone()
}

fn eisenstein_cache() -> &'static RwLock<HashMap<i64, QSeries>> {
    static CACHE: OnceLock<RwLock<HashMap<i64, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The Eisenstein series `G_k = −B_k/(2k) + Σ_{n≥1} σ_{k−1}(n) q^n`, known
/// below `q^trunc`. For odd `k` this is the zero series.
pub fn eisenstein_g(k: i64, trunc: i64) -> Result<QSeries> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("Eisenstein weight {k} must be positive")));
    }
    if k % 2 == 1 {
        return Ok(QSeries::zero(1, trunc));
    }
    if let Some(s) = eisenstein_cache().read().expect("cache lock").get(&k) {
        if s.trunc() >= trunc {
            return Ok(s.truncate(trunc));
        }
    }
    let n_max = trunc.max(1) as usize;
    let mut sigma: Vec<BigInt> = vec![BigInt::zero(); n_max];
    for d in 1..n_max {
        let dk = num_traits::pow(BigInt::from(d), (k - 1) as usize);
        for n in (d..n_max).step_by(d) {
            sigma[n] += &dk;
        }
    }
    let constant = -bernoulli(k as usize) / int(2 * k);
    let s = QSeries::from_coeffs(
        1,
        trunc,
        std::iter::once((0, constant)).chain(
            sigma
                .into_iter()
                .enumerate()
                .skip(1)
                .map(|(n, v)| (n as i64, Rational::from_integer(v))),
        ),
    );
    eisenstein_cache().write().expect("cache lock").insert(k, s.clone());
    Ok(s)
}

/// The eta quotient `Π_i η(N_i τ)^{e_i}` given as pairs `(N_i, e_i)`, known
/// below `q^trunc`.
///
/// The leading power `q^{Σ N_i e_i / 24}` is carried exactly; the exponent
/// denominator of the result is the smallest one that represents it.
pub fn eta_quotient(factors: &[(i64, i64)], trunc: i64) -> QSeries {
    let s: i64 = factors.iter().map(|&(n, e)| n * e).sum();
    let d = 24 / 24i64.gcd(&s);
    let shift = s * d / 24;
    // integer-exponent product needed below q^{trunc - s/24}
    let prod_trunc = Integer::div_ceil(&(trunc * d - shift), &d);
    let mut prod = QSeries::one(prod_trunc.max(0));
    for &(n, e) in factors {
        assert!(n > 0, "eta argument scale must be positive");
        prod = &prod * &euler_product(n, e, prod_trunc.max(0));
    }
    QSeries::from_coeffs(
        d,
        trunc * d,
        prod.iter().map(|(m, c)| (m * d + shift, c.clone())),
    )
}

/// Dedekind eta `q^{1/24} Π (1 − q^n)`.
pub fn eta(trunc: i64) -> QSeries {
    eta_quotient(&[(1, 1)], trunc)
}

/// The discriminant `Δ = η^24 = q Π (1 − q^n)^24`.
pub fn delta(trunc: i64) -> QSeries {
    eta_quotient(&[(1, 24)], trunc)
}

/// `η(2τ)^16 / η(τ)^8 = q + O(q^2)`, a Γ₀(2) form vanishing at the cusp ∞.
pub fn cusp_quotient(trunc: i64) -> QSeries {
    eta_quotient(&[(2, 16), (1, -8)], trunc)
}

/// `F₂` from odd divisor sums: `1/24 + Σ_{n≥1} (Σ_{odd d | n} d) q^n`.
pub fn f2_odd_divisor_sum(trunc: i64) -> QSeries {
    let n_max = trunc.max(1);
    let mut c: Vec<i64> = vec![0; n_max as usize];
    for d in (1..n_max).step_by(2) {
        for n in (d..n_max).step_by(d as usize) {
            c[n as usize] += d;
        }
    }
    QSeries::from_coeffs(
        1,
        trunc,
        std::iter::once((0, frac(1, 24)))
            .chain(c.into_iter().enumerate().skip(1).map(|(n, v)| (n as i64, int(v)))),
    )
}

/// `F₂ = G₂(τ) − 2 G₂(2τ)`, built from the Eisenstein series and checked
/// against the odd divisor sum expansion.
pub fn f2(trunc: i64) -> Result<QSeries> {
    let g2 = eisenstein_g(2, trunc)?;
    let g2_2 = eisenstein_g(2, Integer::div_ceil(&trunc, &2))?.scale_q(2).truncate(trunc);
    let from_eisenstein = &g2 - &g2_2.scale(&int(2));
    let from_divisors = f2_odd_divisor_sum(trunc);
    if from_eisenstein != from_divisors {
        return Err(Error::Consistency("F2 constructions disagree".into()));
    }
    Ok(from_eisenstein)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(12), frac(-691, 2730));
        assert_eq!(bernoulli(3), int(0));
    }

    #[test]
    fn g2_and_g4() {
        let g2 = eisenstein_g(2, 5).unwrap();
        assert_eq!(
            g2,
            QSeries::from_coeffs(1, 5, [(0, frac(-1, 24)), (1, int(1)), (2, int(3)), (3, int(4)), (4, int(7))])
        );
        assert_eq!(eisenstein_g(4, 3).unwrap().coeff(0), frac(1, 240));
        assert!(eisenstein_g(3, 10).unwrap().is_zero());
        assert!(eisenstein_g(0, 10).is_err());
    }

    #[test]
    fn f2_values() {
        let f = f2(7).unwrap();
        let expected = [frac(1, 24), int(1), int(1), int(4), int(1), int(6), int(4)];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(&f.coeff(n as i64), e);
        }
    }

    #[test]
    fn delta_coefficients() {
        let d = delta(6).normalize_denom();
        assert_eq!(d, QSeries::from_integers(6, &[0, 1, -24, 252, -1472, 4830]));
    }

    #[test]
    fn eta_has_denominator_24() {
        let e = eta(3);
        assert_eq!(e.exp_denom(), 24);
        assert_eq!(e.valuation(), Some(1));
        assert_eq!(e.coeff(25), int(-1));
        assert_eq!(e.trunc(), 72);
    }

    #[test]
    fn cusp_quotient_leading_term() {
        let c = cusp_quotient(6).normalize_denom();
        assert_eq!(c.valuation(), Some(1));
        assert_eq!(c.coeff(1), int(1));
        let back = &c * &eta_quotient(&[(1, 8), (2, -16)], 6);
        assert_eq!(back.normalize_denom().truncate(5), QSeries::one(5));
    }
}
