//! Truncated q-series whose coefficients are Laurent polynomials in `p`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::{PLaurent, QSeries};

/// `Σ_n P_n(p) q^{n/exp_denom}` with coefficients known for scaled exponents
/// `n < trunc`. The truncation conventions match [`QSeries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JQSeries {
    exp_denom: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, PLaurent>,
}

impl JQSeries {
    /// Zero series.
    pub fn zero(exp_denom: i64, trunc: i64) -> Self {
        assert!(exp_denom > 0, "exponent denominator must be positive");
        JQSeries {
            exp_denom,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant 1 with integer q-exponents, known below `q^trunc`.
    pub fn one(trunc: i64) -> Self {
        Self::from_coeffs(1, trunc, [(0, PLaurent::one())])
    }

    /// Builds from (scaled exponent, coefficient) pairs, summing repeats.
    pub fn from_coeffs<I>(exp_denom: i64, trunc: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, PLaurent)>,
    {
        let mut s = Self::zero(exp_denom, trunc);
        for (n, c) in coeffs {
            s.add_term(n, &c);
        }
        s
    }

    /// Embeds a q-series as a p-constant two-variable series.
    pub fn from_qseries(q: &QSeries) -> Self {
        Self::from_coeffs(
            q.exp_denom(),
            q.trunc(),
            q.iter().map(|(n, c)| (n, PLaurent::constant(c.clone()))),
        )
    }

    /// Adds `c q^{n/exp_denom}` in place.
    pub fn add_term(&mut self, n: i64, c: &PLaurent) {
        if n >= self.trunc || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(n).or_default();
        entry.add_scaled_shifted(c, &int(1), 0);
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    /// Exponent denominator.
    pub fn exp_denom(&self) -> i64 {
        self.exp_denom
    }

    /// Scaled truncation.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Stored coefficients.
    pub fn coeffs(&self) -> &BTreeMap<i64, PLaurent> {
        &self.coeffs
    }

    /// Iterates over (scaled exponent, coefficient).
    pub fn iter(&self) -> impl Iterator<Item = (i64, &PLaurent)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// Coefficient at a scaled exponent (zero if absent, truncation unchecked).
    pub fn coeff(&self, n: i64) -> PLaurent {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    /// Coefficient at a scaled exponent, failing beyond the truncation.
    pub fn get(&self, n: i64) -> Result<PLaurent> {
        if n >= self.trunc {
            return Err(Error::shortfall("two-variable series coefficient", n, self.trunc - 1));
        }
        Ok(self.coeff(n))
    }

    /// Coefficient of `q^{num/den}` (zero when not representable).
    pub fn get_exponent(&self, num: i64, den: i64) -> Result<PLaurent> {
        let scaled_num = num * self.exp_denom;
        if scaled_num % den != 0 {
            if scaled_num >= self.trunc * den {
                return Err(Error::shortfall(
                    "two-variable series coefficient",
                    Integer::div_ceil(&scaled_num, &den),
                    self.trunc - 1,
                ));
            }
            return Ok(PLaurent::zero());
        }
        self.get(scaled_num / den)
    }

    /// True when empty.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest scaled exponent present.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    /// True when every coefficient is symmetric under `p -> 1/p`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.values().all(PLaurent::is_symmetric)
    }

    /// Re-expresses over a multiple `d` of the current denominator.
    pub fn with_exp_denom(&self, d: i64) -> Self {
        assert!(d > 0 && d % self.exp_denom == 0, "new denominator must be a multiple of the old");
        let f = d / self.exp_denom;
        JQSeries {
            exp_denom: d,
            trunc: self.trunc * f,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n * f, c.clone())).collect(),
        }
    }

    /// Rewrites over the smallest denominator representing every exponent.
    pub fn normalize_denom(&self) -> Self {
        let f = self.coeffs.keys().fold(self.exp_denom, |g, &n| g.gcd(&n));
        if f <= 1 {
            return self.clone();
        }
        JQSeries {
            exp_denom: self.exp_denom / f,
            trunc: Integer::div_ceil(&self.trunc, &f),
            coeffs: self.coeffs.iter().map(|(&n, c)| (n / f, c.clone())).collect(),
        }
    }

    /// Drops coefficients at or above the scaled exponent `trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        JQSeries {
            exp_denom: self.exp_denom,
            trunc: t,
            coeffs: self.coeffs.range(..t).map(|(&n, c)| (n, c.clone())).collect(),
        }
    }

    /// Multiplies by the rational `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(
            self.exp_denom,
            self.trunc,
            self.coeffs.iter().map(|(&n, x)| (n, x.scale(c))),
        )
    }

    /// Multiplies by `q^{shift/exp_denom}`.
    pub fn shift(&self, shift: i64) -> Self {
        JQSeries {
            exp_denom: self.exp_denom,
            trunc: self.trunc + shift,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^n`.
    pub fn scale_q(&self, n: i64) -> Self {
        assert!(n > 0, "scaling factor must be positive");
        JQSeries {
            exp_denom: self.exp_denom,
            trunc: self.trunc * n,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k * n, c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(i64, &PLaurent) -> PLaurent) -> Self {
        Self::from_coeffs(
            self.exp_denom,
            self.trunc,
            self.coeffs.iter().map(|(&n, c)| (n, f(n, c))),
        )
    }

    fn aligned(a: &JQSeries, b: &JQSeries) -> (JQSeries, JQSeries) {
        let d = a.exp_denom.lcm(&b.exp_denom);
        (a.with_exp_denom(d), b.with_exp_denom(d))
    }

    fn add_impl(&self, other: &JQSeries, sign: i64) -> JQSeries {
        let (a, b) = Self::aligned(self, other);
        let mut out = a.truncate(a.trunc.min(b.trunc));
        let s = int(sign);
        for (&n, c) in b.coeffs.range(..out.trunc) {
            out.add_term(n, &c.scale(&s));
        }
        out
    }

    fn mul_impl(&self, other: &JQSeries) -> JQSeries {
        let (a, b) = Self::aligned(self, other);
        let trunc = (a.trunc + b.effective_valuation()).min(b.trunc + a.effective_valuation());
        let mut out = JQSeries::zero(a.exp_denom, trunc);
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                if i + j >= trunc {
                    break;
                }
                out.add_term(i + j, &(x * y));
            }
        }
        out
    }

    /// Product with a p-free q-series.
    pub fn mul_qseries(&self, q: &QSeries) -> JQSeries {
        self * &JQSeries::from_qseries(q)
    }

    /// Multiplicative inverse. The leading coefficient must be a monomial
    /// `c p^e`, the only units of the Laurent polynomial ring.
    pub fn invert(&self) -> Result<JQSeries> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lead = &self.coeffs[&v];
        if lead.coeffs().len() != 1 {
            return Err(Error::NotInvertible(format!(
                "leading coefficient {lead} is not a unit"
            )));
        }
        let (e, c) = lead.iter().next().map(|(e, c)| (e, c.clone())).expect("nonempty");
        let lead_inv = PLaurent::monomial(-e, c.recip());
        let prec = self.trunc - v;
        let tail: Vec<(i64, &PLaurent)> =
            self.coeffs.iter().skip(1).map(|(&n, c)| (n - v, c)).collect();
        let mut b: Vec<PLaurent> = Vec::with_capacity(prec.max(0) as usize);
        for k in 0..prec {
            if k == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut s = PLaurent::zero();
            for &(i, a) in &tail {
                if i > k {
                    break;
                }
                let bk = &b[(k - i) as usize];
                if !bk.is_zero() {
                    s = &s + &(a * bk);
                }
            }
            b.push(-&(&s * &lead_inv));
        }
        Ok(JQSeries::from_coeffs(
            self.exp_denom,
            self.trunc - 2 * v,
            b.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c)),
        ))
    }

    /// The q-series of coefficients of `p^e`.
    pub fn p_coefficient(&self, e: i64) -> QSeries {
        QSeries::from_coeffs(
            self.exp_denom,
            self.trunc,
            self.coeffs.iter().map(|(&n, c)| (n, c.coeff(e))),
        )
    }

    /// Specialization `p = 1`.
    pub fn eval_p_at_one(&self) -> QSeries {
        QSeries::from_coeffs(
            self.exp_denom,
            self.trunc,
            self.coeffs.iter().map(|(&n, c)| (n, c.eval_at_one())),
        )
    }

    /// JSON form `{exp_denom, trunc, coeffs: [[scaled_exp, [[p_exp, "num/den"], ...]], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "exp_denom": self.exp_denom,
            "trunc": self.trunc,
            "coeffs": self
                .coeffs
                .iter()
                .map(|(&n, c)| serde_json::json!([n, c.to_json()]))
                .collect::<Vec<_>>(),
        })
    }

    /// Parses the form produced by [`JQSeries::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<JQSeries> {
        let bad = || Error::InvalidArgument("bad two-variable series JSON".into());
        let exp_denom = v.get("exp_denom").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        let trunc = v.get("trunc").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        if exp_denom <= 0 {
            return Err(bad());
        }
        let mut out = JQSeries::zero(exp_denom, trunc);
        for item in v.get("coeffs").and_then(|x| x.as_array()).ok_or_else(bad)? {
            let n = item.get(0).and_then(|x| x.as_i64()).ok_or_else(bad)?;
            let c = PLaurent::from_json(item.get(1).ok_or_else(bad)?)?;
            out.add_term(n, &c);
        }
        Ok(out)
    }
}

impl Add<&JQSeries> for &JQSeries {
    type Output = JQSeries;
    fn add(self, rhs: &JQSeries) -> JQSeries {
        self.add_impl(rhs, 1)
    }
}

impl Sub<&JQSeries> for &JQSeries {
    type Output = JQSeries;
    fn sub(self, rhs: &JQSeries) -> JQSeries {
        self.add_impl(rhs, -1)
    }
}

impl Mul<&JQSeries> for &JQSeries {
    type Output = JQSeries;
    fn mul(self, rhs: &JQSeries) -> JQSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &JQSeries {
    type Output = JQSeries;
    fn neg(self) -> JQSeries {
        self.scale(&int(-1))
    }
}

/// Dense working buffer for products of factors `(1 − c p^a q^j)^{±1}` with
/// integer q-exponents in `[0, trunc)`.
///
/// Multiplying or dividing by such a binomial is a single linear pass, which
/// keeps infinite-product expansions cheap.
pub(crate) struct BinomialProduct {
    trunc: i64,
    data: Vec<PLaurent>,
}

impl BinomialProduct {
    /// The constant 1 known below `q^trunc`.
    pub(crate) fn one(trunc: i64) -> Self {
        let mut data = vec![PLaurent::zero(); trunc.max(0) as usize];
        if trunc > 0 {
            data[0] = PLaurent::one();
        }
        BinomialProduct { trunc, data }
    }

    /// Multiplies by `(1 − c p^a q^j)`, `j >= 1`.
    pub(crate) fn mul_binomial(&mut self, c: &Rational, a: i64, j: i64) {
        let ju = j as usize;
        let neg = -c;
        for n in (ju..self.data.len()).rev() {
            let (lo, hi) = self.data.split_at_mut(n);
            let src = &lo[n - ju];
            if !src.is_zero() {
                hi[0].add_scaled_shifted(src, &neg, a);
            }
        }
    }

    /// Divides by `(1 − c p^a q^j)`, `j >= 1`.
    pub(crate) fn div_binomial(&mut self, c: &Rational, a: i64, j: i64) {
        let ju = j as usize;
        for n in ju..self.data.len() {
            let (lo, hi) = self.data.split_at_mut(n);
            let src = &lo[n - ju];
            if !src.is_zero() {
                hi[0].add_scaled_shifted(src, c, a);
            }
        }
    }

    /// Applies `(1 − p^a q^j)^power`.
    pub(crate) fn apply(&mut self, a: i64, j: i64, power: i64) {
        if j >= self.trunc {
            return;
        }
        let one = int(1);
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                self.mul_binomial(&one, a, j);
            } else {
                self.div_binomial(&one, a, j);
            }
        }
    }

    pub(crate) fn finish(self) -> JQSeries {
        let trunc = self.trunc;
        JQSeries::from_coeffs(
            1,
            trunc,
            self.data.into_iter().enumerate().map(|(i, c)| (i as i64, c)),
        )
    }
}

impl JQSeries {
    /// Value of the `p^e` coefficient at `q^{n/exp_denom}`.
    pub fn coeff_pq(&self, n: i64, e: i64) -> Rational {
        self.coeffs
            .get(&n)
            .map(|c| c.coeff(e))
            .unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trip() {
        // 1/(1 - p q) = Σ p^k q^k
        let a = JQSeries::from_coeffs(
            1,
            6,
            [(0, PLaurent::one()), (1, PLaurent::from_integers([(1, -1)]))],
        );
        let inv = a.invert().unwrap();
        for k in 0..6 {
            assert_eq!(inv.coeff(k), PLaurent::from_integers([(k, 1)]));
        }
        assert_eq!(&a * &inv, JQSeries::one(6));
    }

    #[test]
    fn non_unit_leading_coefficient_is_rejected() {
        let a = JQSeries::from_coeffs(1, 4, [(0, PLaurent::from_integers([(0, 1), (1, 1)]))]);
        assert!(matches!(a.invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn binomial_buffer_matches_series_arithmetic() {
        let mut b = BinomialProduct::one(8);
        b.apply(1, 1, 2);
        b.apply(-1, 2, -1);
        let got = b.finish();
        let f1 = JQSeries::from_coeffs(
            1,
            8,
            [(0, PLaurent::one()), (1, PLaurent::from_integers([(1, -1)]))],
        );
        let f2 = JQSeries::from_coeffs(
            1,
            8,
            [(0, PLaurent::one()), (2, PLaurent::from_integers([(-1, -1)]))],
        );
        let expected = &(&f1 * &f1) * &f2.invert().unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn json_round_trip() {
        let a = JQSeries::from_coeffs(
            2,
            7,
            [(1, PLaurent::from_integers([(0, 1)])), (3, PLaurent::from_integers([(-1, 2), (1, 2)]))],
        );
        assert_eq!(JQSeries::from_json(&a.to_json()).unwrap(), a);
    }
}
