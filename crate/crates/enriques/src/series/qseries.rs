//! Truncated q-series with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, parse_rational, Rational};

/// A truncated series `Σ c_n q^{n/exp_denom}` with coefficients known for all
/// scaled exponents `n < trunc`.
///
/// Only nonzero coefficients are stored and every stored key is below
/// `trunc`. Binary operations merge exponent denominators through their lcm
/// and track the truncation pessimistically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    exp_denom: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, Rational>,
}

/// JSON mirror of [`QSeries`].
#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    exp_denom: i64,
    trunc: i64,
    coeffs: Vec<(i64, String)>,
}

impl QSeries {
    /// The zero series known below the scaled exponent `trunc`.
    pub fn zero(exp_denom: i64, trunc: i64) -> Self {
        assert!(exp_denom > 0, "exponent denominator must be positive");
        QSeries {
            exp_denom,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1 with integer exponents, known below `q^trunc`.
    pub fn one(trunc: i64) -> Self {
        Self::monomial(1, 0, int(1), trunc)
    }

    /// `c q^{n/exp_denom}` known below the scaled exponent `trunc`.
    pub fn monomial(exp_denom: i64, n: i64, c: Rational, trunc: i64) -> Self {
        Self::from_coeffs(exp_denom, trunc, [(n, c)])
    }

    /// Builds a series from (scaled exponent, coefficient) pairs. Repeated
    /// exponents are summed; zero coefficients and exponents at or above
    /// `trunc` are dropped.
    pub fn from_coeffs<I>(exp_denom: i64, trunc: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut s = Self::zero(exp_denom, trunc);
        for (n, c) in coeffs {
            s.add_term(n, c);
        }
        s
    }

    /// Integer-exponent series `Σ values[i] q^i` known below `q^trunc`.
    pub fn from_integers(trunc: i64, values: &[i64]) -> Self {
        Self::from_coeffs(
            1,
            trunc,
            values.iter().enumerate().map(|(i, &v)| (i as i64, int(v))),
        )
    }

    pub(crate) fn add_term(&mut self, n: i64, c: Rational) {
        if n >= self.trunc || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    /// Exponent denominator: exponents are `n / exp_denom`.
    pub fn exp_denom(&self) -> i64 {
        self.exp_denom
    }

    /// Scaled truncation: coefficients are known for scaled exponents below it.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// The truncation as an actual exponent of q.
    pub fn trunc_exponent(&self) -> Rational {
        Rational::new(BigInt::from(self.trunc), BigInt::from(self.exp_denom))
    }

    /// Stored (nonzero) coefficients keyed by scaled exponent.
    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    /// Iterates over (scaled exponent, coefficient) in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// Coefficient at a scaled exponent, zero when absent. Does not check
    /// the truncation; see [`QSeries::get`].
    pub fn coeff(&self, n: i64) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient at a scaled exponent, failing beyond the truncation.
    pub fn get(&self, n: i64) -> Result<Rational> {
        if n >= self.trunc {
            return Err(Error::shortfall("q-series coefficient", n, self.trunc - 1));
        }
        Ok(self.coeff(n))
    }

    /// Coefficient of `q^e` for a rational exponent `e`. Exponents that are
    /// not multiples of `1/exp_denom` have coefficient zero.
    pub fn coeff_at(&self, e: &Rational) -> Result<Rational> {
        let scaled = e * int(self.exp_denom);
        if !scaled.is_integer() {
            if scaled >= int(self.trunc) {
                return Err(Error::shortfall(
                    "q-series coefficient",
                    scaled.ceil().to_integer().try_into().unwrap_or(i64::MAX),
                    self.trunc - 1,
                ));
            }
            return Ok(Rational::zero());
        }
        let n: i64 = scaled
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent out of range".into()))?;
        self.get(n)
    }

    /// True when no coefficient is stored.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest scaled exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Valuation, treating the zero series as vanishing up to its truncation.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    /// Re-expresses the series over the denominator `d`, a multiple of the
    /// current one.
    pub fn with_exp_denom(&self, d: i64) -> Self {
        assert!(
            d > 0 && d % self.exp_denom == 0,
            "new denominator must be a multiple of the old"
        );
        let f = d / self.exp_denom;
        QSeries {
            exp_denom: d,
            trunc: self.trunc * f,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n * f, c.clone())).collect(),
        }
    }

    /// Rewrites the series over the smallest exponent denominator that
    /// represents every stored exponent.
    pub fn normalize_denom(&self) -> Self {
        let f = self
            .coeffs
            .keys()
            .fold(self.exp_denom, |g, &n| g.gcd(&n));
        if f <= 1 {
            return self.clone();
        }
        QSeries {
            exp_denom: self.exp_denom / f,
            trunc: Integer::div_ceil(&self.trunc, &f),
            coeffs: self.coeffs.iter().map(|(&n, c)| (n / f, c.clone())).collect(),
        }
    }

    /// Drops every coefficient at or above the scaled exponent `trunc`
    /// (no-op if `trunc` exceeds the current truncation).
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        QSeries {
            exp_denom: self.exp_denom,
            trunc: t,
            coeffs: self.coeffs.range(..t).map(|(&n, c)| (n, c.clone())).collect(),
        }
    }

    /// Truncates below the integer exponent `q^t` (scaled by the denominator).
    pub fn truncate_exponent(&self, t: i64) -> Self {
        self.truncate(t * self.exp_denom)
    }

    fn aligned(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let d = a.exp_denom.lcm(&b.exp_denom);
        (a.with_exp_denom(d), b.with_exp_denom(d))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.exp_denom, self.trunc);
        }
        QSeries {
            exp_denom: self.exp_denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&n, x)| (n, x * c)).collect(),
        }
    }

    /// Multiplies by `q^{shift/exp_denom}`, moving the truncation along.
    pub fn shift(&self, shift: i64) -> Self {
        QSeries {
            exp_denom: self.exp_denom,
            trunc: self.trunc + shift,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n + shift, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^{num/den}`.
    pub fn shift_by(&self, num: i64, den: i64) -> Self {
        let d = self.exp_denom.lcm(&den);
        let s = self.with_exp_denom(d);
        s.shift(num * (d / den))
    }

    fn add_impl(&self, other: &QSeries, sign: i64) -> QSeries {
        let (a, b) = Self::aligned(self, other);
        let mut out = a.truncate(a.trunc.min(b.trunc));
        let s = int(sign);
        for (&n, c) in b.coeffs.range(..out.trunc) {
            out.add_term(n, c * &s);
        }
        out
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let (a, b) = Self::aligned(self, other);
        let trunc = (a.trunc + b.effective_valuation()).min(b.trunc + a.effective_valuation());
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                if i + j >= trunc {
                    break;
                }
                let e = acc.entry(i + j).or_insert_with(Rational::zero);
                *e += x * y;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries {
            exp_denom: a.exp_denom,
            trunc,
            coeffs: acc,
        }
    }

    /// Multiplicative inverse; the leading exponent may be any (rational)
    /// value and the result is shifted accordingly.
    pub fn invert(&self) -> Result<QSeries> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let prec = self.trunc - v;
        let a0_inv = self.coeffs[&v].recip();
        let tail: Vec<(i64, &Rational)> = self.coeffs.iter().skip(1).map(|(&n, c)| (n - v, c)).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(prec.max(0) as usize);
        for k in 0..prec {
            if k == 0 {
                b.push(a0_inv.clone());
                continue;
            }
            let mut s = Rational::zero();
            for &(i, c) in &tail {
                if i > k {
                    break;
                }
                let bk = &b[(k - i) as usize];
                if !bk.is_zero() {
                    s += c * bk;
                }
            }
            b.push(-(s * &a0_inv));
        }
        Ok(QSeries::from_coeffs(
            self.exp_denom,
            self.trunc - 2 * v,
            b.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c)),
        ))
    }

    /// Integer power; negative powers go through [`QSeries::invert`].
    pub fn pow(&self, e: i64) -> Result<QSeries> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result: Option<QSeries> = None;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => &r * &sq,
                });
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(result.unwrap_or_else(|| {
            let t = self.trunc - self.effective_valuation();
            QSeries::monomial(self.exp_denom, 0, int(1), t)
        }))
    }

    /// Exponential of a series with vanishing constant term and no negative
    /// exponents.
    pub fn exp(&self) -> Result<QSeries> {
        if let Some(v) = self.valuation() {
            if v <= 0 {
                return Err(Error::Domain(
                    "exp needs zero constant term and no negative exponents".into(),
                ));
            }
        }
        let n_max = self.trunc.max(0);
        let mut f: Vec<Rational> = vec![Rational::zero(); n_max as usize];
        if n_max > 0 {
            f[0] = Rational::one();
        }
        for n in 1..n_max {
            let mut s = Rational::zero();
            for (&k, a) in self.coeffs.range(..=n) {
                let fk = &f[(n - k) as usize];
                if !fk.is_zero() {
                    s += a * fk * int(k);
                }
            }
            f[n as usize] = s / int(n);
        }
        Ok(QSeries::from_coeffs(
            self.exp_denom,
            self.trunc,
            f.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
        ))
    }

    /// Logarithm of a series with constant term 1 and no negative exponents.
    pub fn log(&self) -> Result<QSeries> {
        if self.valuation() != Some(0) || !self.coeffs[&0].is_one() {
            return Err(Error::Domain("log needs constant term 1 and no negative exponents".into()));
        }
        let n_max = self.trunc.max(0);
        let mut l: Vec<Rational> = vec![Rational::zero(); n_max as usize];
        for n in 1..n_max {
            let mut s = self.coeff(n) * int(n);
            for (&k, a) in self.coeffs.range(1..n) {
                let lk = &l[(n - k) as usize];
                if !lk.is_zero() {
                    s -= lk * a * int(n - k);
                }
            }
            l[n as usize] = s / int(n);
        }
        Ok(QSeries::from_coeffs(
            self.exp_denom,
            self.trunc,
            l.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
        ))
    }

    /// Substitutes `q -> q^n`: exponents are multiplied by `n`.
    pub fn scale_q(&self, n: i64) -> QSeries {
        assert!(n > 0, "scaling factor must be positive");
        QSeries {
            exp_denom: self.exp_denom,
            trunc: self.trunc * n,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k * n, c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(i64, &Rational) -> Rational) -> QSeries {
        QSeries::from_coeffs(
            self.exp_denom,
            self.trunc,
            self.coeffs.iter().map(|(&n, c)| (n, f(n, c))),
        )
    }

    /// JSON form `{exp_denom, trunc, coeffs: [[scaled_exp, "num/den"], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QSeriesJson {
            exp_denom: self.exp_denom,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n, fmt_rational(c))).collect(),
        })
        .expect("series JSON is always representable")
    }

    /// Parses the JSON form produced by [`QSeries::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<QSeries> {
        let j: QSeriesJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(format!("bad series JSON: {e}")))?;
        if j.exp_denom <= 0 {
            return Err(Error::InvalidArgument("exp_denom must be positive".into()));
        }
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for (n, c) in j.coeffs {
            coeffs.push((n, parse_rational(&c)?));
        }
        Ok(QSeries::from_coeffs(j.exp_denom, j.trunc, coeffs))
    }
}

/// `Π_{m≥1} (1 − q^{step·m})^power` with integer exponents, known below `q^trunc`.
pub fn euler_product(step: i64, power: i64, trunc: i64) -> QSeries {
    assert!(step > 0, "step must be positive");
    if trunc <= 0 {
        return QSeries::zero(1, trunc);
    }
    let len = trunc as usize;
    let mut c: Vec<BigInt> = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    let mut j = step;
    while j < trunc {
        let ju = j as usize;
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for n in (ju..len).rev() {
                    let prev = c[n - ju].clone();
                    c[n] -= prev;
                }
            } else {
                for n in ju..len {
                    let prev = c[n - ju].clone();
                    c[n] += prev;
                }
            }
        }
        j += step;
    }
    QSeries::from_coeffs(
        1,
        trunc,
        c.into_iter()
            .enumerate()
            .map(|(i, v)| (i as i64, Rational::from_integer(v))),
    )
}

impl fmt::Display for QSeries {
    /// Human-readable rendering such as `1/24 + q + 3q^2 + O(q^5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&n, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = Rational::new(BigInt::from(n), BigInt::from(self.exp_denom));
            if e.is_zero() {
                write!(f, "{}", fmt_rational(c))?;
            } else {
                write!(f, "({})q^({})", fmt_rational(c), e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", self.trunc_exponent())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(self, rhs)
            }
        }
        impl $trait<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                $body(&self, &rhs)
            }
        }
        impl $trait<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QSeries, b: &QSeries| a.add_impl(b, 1));
forward_binop!(Sub, sub, |a: &QSeries, b: &QSeries| a.add_impl(b, -1));
forward_binop!(Mul, mul, |a: &QSeries, b: &QSeries| a.mul_impl(b));

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&int(-1))
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn difference_of_squares() {
        let a = QSeries::from_integers(10, &[1, 1]);
        let b = QSeries::from_integers(10, &[1, -1]);
        assert_eq!(&a * &b, QSeries::from_integers(10, &[1, 0, -1]));
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = QSeries::from_integers(6, &[3, 0, 2, 5]);
        assert_eq!(&a + &QSeries::zero(1, 6), a);
    }

    #[test]
    fn partition_counts_from_inverted_products() {
        let mut p = QSeries::one(4);
        for n in 1..=3 {
            let f = QSeries::from_coeffs(1, 4, [(0, int(1)), (n, int(-1))]);
            p = &p * &f.invert().unwrap();
        }
        assert_eq!(p, QSeries::from_integers(4, &[1, 1, 2, 3]));
    }

    #[test]
    fn geometric_series() {
        let inv = QSeries::from_integers(6, &[1, -1]).invert().unwrap();
        assert_eq!(inv, QSeries::from_integers(6, &[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn inverting_a_shifted_series_shifts_back() {
        // q^{1/2}(1 - q), known below q^{9/2}
        let a = QSeries::from_coeffs(2, 9, [(1, int(1)), (3, int(-1))]);
        let inv = a.invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.trunc(), 7);
        for n in [-1, 1, 3, 5] {
            assert_eq!(inv.coeff(n), int(1));
        }
        assert_eq!((&a * &inv).normalize_denom(), QSeries::one(4));
    }

    #[test]
    fn invert_zero_fails() {
        assert!(matches!(QSeries::zero(1, 5).invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn exp_of_zero_and_log_of_geometric() {
        assert_eq!(QSeries::zero(1, 5).exp().unwrap(), QSeries::one(5));
        let g = QSeries::from_integers(6, &[1, -1]).invert().unwrap();
        let l = g.log().unwrap();
        for n in 1..6 {
            assert_eq!(l.coeff(n), frac(1, n));
        }
        assert_eq!(l.coeff(0), int(0));
    }

    #[test]
    fn exp_and_log_domains() {
        assert!(QSeries::one(4).exp().is_err());
        assert!(QSeries::from_integers(4, &[2, 1]).log().is_err());
    }

    #[test]
    fn scale_q_reindexes() {
        let a = QSeries::from_integers(3, &[1, 2, 3]);
        let s = a.scale_q(2);
        assert_eq!(s, QSeries::from_coeffs(1, 6, [(0, int(1)), (2, int(2)), (4, int(3))]));
        assert_eq!(QSeries::one(4).scale_q(3), QSeries::one(12));
    }

    #[test]
    fn euler_product_matches_repeated_multiplication() {
        let e = euler_product(1, 3, 12);
        let mut direct = QSeries::one(12);
        for n in 1..12 {
            let f = QSeries::from_coeffs(1, 12, [(0, int(1)), (n, int(-1))]);
            direct = &direct * &f.pow(3).unwrap();
        }
        assert_eq!(e, direct);
        // Jacobi: Π(1-q^n)^3 = Σ (-1)^k (2k+1) q^{k(k+1)/2}
        assert_eq!(e.coeff(0), int(1));
        assert_eq!(e.coeff(1), int(-3));
        assert_eq!(e.coeff(3), int(5));
        assert_eq!(e.coeff(6), int(-7));
        assert_eq!(e.coeff(10), int(9));
    }

    #[test]
    fn pow_zero_is_one() {
        let a = QSeries::from_integers(5, &[1, 4]);
        assert_eq!(a.pow(0).unwrap(), QSeries::one(5));
    }

    #[test]
    fn json_round_trip() {
        let a = QSeries::from_coeffs(24, 48, [(1, frac(-3, 7)), (25, int(4))]);
        let v = a.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"exp_denom":24,"trunc":48,"coeffs":[[1,"-3/7"],[25,"4/1"]]}"#
        );
        assert_eq!(QSeries::from_json(&v).unwrap(), a);
    }

    #[test]
    fn coefficient_lookup_respects_truncation() {
        let a = QSeries::from_integers(3, &[1, 2, 3]);
        assert_eq!(a.get(2).unwrap(), int(3));
        assert!(matches!(a.get(3), Err(Error::TruncationShortfall { .. })));
        assert_eq!(a.coeff_at(&frac(1, 2)).unwrap(), int(0));
    }
}
