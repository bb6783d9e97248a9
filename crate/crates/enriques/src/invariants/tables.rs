//! Coefficient tables: `ω_g(n)`, `ω(r, n)`, `a(n)` and the Euler numbers of
//! Hilbert schemes of points.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, frac, int, Rational};
use crate::series::{euler_product, plaurent_to_zseries, zseries_extract_genus, QSeries};
use crate::theta::km_kernel;

/// The coefficients of the kernel
/// `Θ(z,2τ)²/Θ(z,τ)² · η(2τ)⁸/η(τ)^{16} = Σ ω(r,n) p^r q^n`
/// together with their genus expansion
/// `Σ_g ω_g(n) (−1)^{g−1} z^{2g−2} q^n` under `p = e^z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTable {
    max_g: i64,
    max_n: i64,
    values: BTreeMap<(i64, i64), Rational>,
    p_form: BTreeMap<(i64, i64), Rational>,
}

/// Builds the ω tables for `1 ≤ g ≤ max_g` and `0 ≤ n ≤ max_n`.
pub fn omega_table(max_g: i64, max_n: i64) -> Result<OmegaTable> {
    if max_g < 1 || max_n < 0 {
        return Err(Error::InvalidArgument(format!(
            "omega table bounds max_g = {max_g}, max_n = {max_n}"
        )));
    }
    let kernel = km_kernel(max_n + 1)?;
    let mut values = BTreeMap::new();
    let mut p_form = BTreeMap::new();
    for n in 0..=max_n {
        let c = kernel.get(n)?;
        for (r, x) in c.iter() {
            p_form.insert((r, n), x.clone());
        }
        let genus = zseries_extract_genus(&plaurent_to_zseries(&c, 2 * max_g - 1))?;
        for g in 1..=max_g {
            let v = genus.get(g)?;
            if !v.is_zero() {
                values.insert((g, n), v);
            }
        }
    }
    Ok(OmegaTable {
        max_g,
        max_n,
        values,
        p_form,
    })
}

impl OmegaTable {
    /// Largest genus in the table.
    pub fn max_g(&self) -> i64 {
        self.max_g
    }

    /// Largest q-exponent in the table.
    pub fn max_n(&self) -> i64 {
        self.max_n
    }

    /// `ω_g(n)`: zero for `n < 0` and for `g = 0`; an error beyond the table.
    pub fn omega(&self, g: i64, n: i64) -> Result<Rational> {
        if g < 0 {
            return Err(Error::Domain(format!("negative genus {g}")));
        }
        if n < 0 || g == 0 {
            return Ok(Rational::zero());
        }
        if g > self.max_g {
            return Err(Error::shortfall("genus of the omega table", g, self.max_g));
        }
        if n > self.max_n {
            return Err(Error::shortfall("q-order of the omega table", n, self.max_n));
        }
        Ok(self.values.get(&(g, n)).cloned().unwrap_or_else(Rational::zero))
    }

    /// `ω_g` at a rational argument: zero unless it is a non-negative integer.
    pub fn omega_at(&self, g: i64, x: &Rational) -> Result<Rational> {
        if !x.is_integer() {
            return Ok(Rational::zero());
        }
        let n = crate::rational::to_i64(x)
            .ok_or_else(|| Error::InvalidArgument(format!("argument {x} out of range")))?;
        self.omega(g, n)
    }

    /// `ω(r, n)`, the coefficient of `p^r q^n`.
    pub fn omega_p(&self, r: i64, n: i64) -> Result<Rational> {
        if n < 0 {
            return Ok(Rational::zero());
        }
        if n > self.max_n {
            return Err(Error::shortfall("q-order of the omega table", n, self.max_n));
        }
        Ok(self.p_form.get(&(r, n)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero genus-form entries keyed by `(g, n)`.
    pub fn values(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.values
    }

    /// Nonzero p-form entries keyed by `(r, n)`.
    pub fn p_form(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.p_form
    }

    /// `W_g(q) = Σ_n ω_g(n) q^n`, known below `q^{max_n + 1}`.
    pub fn genus_series(&self, g: i64) -> Result<QSeries> {
        let coeffs = (0..=self.max_n)
            .map(|n| Ok((n, self.omega(g, n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_coeffs(1, self.max_n + 1, coeffs))
    }

    /// JSON mirror: `{max_g, max_n, genus: [[g, n, "v"]], p_form: [[r, n, "v"]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let genus: Vec<_> = self
            .values
            .iter()
            .map(|(&(g, n), v)| json!([g, n, fmt_rational(v)]))
            .collect();
        let p_form: Vec<_> = self
            .p_form
            .iter()
            .map(|(&(r, n), v)| json!([r, n, fmt_rational(v)]))
            .collect();
        json!({"max_g": self.max_g, "max_n": self.max_n, "genus": genus, "p_form": p_form})
    }

    /// Inverse of [`OmegaTable::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("malformed omega table JSON".into());
        let max_g = v["max_g"].as_i64().ok_or_else(bad)?;
        let max_n = v["max_n"].as_i64().ok_or_else(bad)?;
        let read = |key: &str| -> Result<BTreeMap<(i64, i64), Rational>> {
            let mut out = BTreeMap::new();
            for e in v[key].as_array().ok_or_else(bad)? {
                let a = e[0].as_i64().ok_or_else(bad)?;
                let b = e[1].as_i64().ok_or_else(bad)?;
                let c = crate::rational::parse_rational(e[2].as_str().ok_or_else(bad)?)?;
                out.insert((a, b), c);
            }
            Ok(out)
        };
        Ok(OmegaTable {
            max_g,
            max_n,
            values: read("genus")?,
            p_form: read("p_form")?,
        })
    }
}

/// `Π_{n≥1} (1 + q^n)⁸/(1 − q^n)⁸ = Σ a(n) q^n` for `n ≤ max_n`.
pub fn a_coeffs(max_n: i64) -> QSeries {
    let t = max_n + 1;
    // (1 + q^n) = (1 − q^{2n})/(1 − q^n)
    let num = euler_product(2, 8, t);
    let den = euler_product(1, -16, t);
    &num * &den
}

/// `Σ_n e(Hilb^n Y) q^n = Π_{n≥1} (1 − q^n)^{−12}` for `n ≤ max_n`.
pub fn hilb_euler(max_n: i64) -> QSeries {
    euler_product(1, -12, max_n + 1)
}

/// Euler numbers of Hilbert schemes of points, with the convention that
/// `e(Hilb^x Y) = 0` for negative or fractional `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertEuler {
    series: QSeries,
}

impl HilbertEuler {
    /// Table for `n ≤ max_n`.
    pub fn new(max_n: i64) -> Self {
        HilbertEuler {
            series: hilb_euler(max_n),
        }
    }

    /// Largest `n` in the table.
    pub fn max_n(&self) -> i64 {
        self.series.trunc() - 1
    }

    /// The underlying q-series.
    pub fn series(&self) -> &QSeries {
        &self.series
    }

    /// `e(Hilb^n Y)` for an integer `n`.
    pub fn euler(&self, n: i64) -> Result<Rational> {
        if n < 0 {
            return Ok(Rational::zero());
        }
        if n > self.max_n() {
            return Err(Error::shortfall("Hilbert scheme table order", n, self.max_n()));
        }
        Ok(self.series.coeff(n))
    }

    /// `e(Hilb^x Y)` for a rational `x`.
    pub fn euler_at(&self, x: &Rational) -> Result<Rational> {
        if !x.is_integer() {
            return Ok(Rational::zero());
        }
        let n = crate::rational::to_i64(x)
            .ok_or_else(|| Error::InvalidArgument(format!("argument {x} out of range")))?;
        self.euler(n)
    }

    /// `b(x) = [η^{−12}(τ)]_{q^x} = e(Hilb^{x + 1/2} Y)` at `x = two_x/2`.
    pub fn b_half(&self, two_x: i64) -> Result<Rational> {
        if two_x.is_even() {
            return Ok(Rational::zero());
        }
        self.euler((two_x + 1) / 2)
    }

    /// `b(x)` at a rational argument.
    pub fn b(&self, x: &Rational) -> Result<Rational> {
        self.euler_at(&(x + frac(1, 2)))
    }
}

/// `σ_{−1}(x) = Σ_{k | x} 1/k`, zero unless `x` is a positive integer.
pub fn sigma_minus_one(x: &Rational) -> Rational {
    match crate::rational::to_i64(x) {
        Some(n) if x.is_integer() && n > 0 => (1..=n)
            .filter(|k| n % k == 0)
            .map(|k| int(k).recip())
            .sum(),
        _ => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_p_form_examples() {
        let t = omega_table(3, 4).unwrap();
        assert_eq!(t.omega_p(1, 1).unwrap(), int(2));
        assert_eq!(t.omega_p(0, 1).unwrap(), int(12));
        assert_eq!(t.omega_p(-1, 1).unwrap(), int(2));
        for g in 1..=3 {
            assert_eq!(t.omega(g, 0).unwrap(), if g == 1 { int(1) } else { int(0) });
        }
        assert_eq!(t.omega(0, 3).unwrap(), int(0));
        assert!(matches!(t.omega(4, 1), Err(Error::TruncationShortfall { .. })));
        assert!(matches!(t.omega(1, 5), Err(Error::TruncationShortfall { .. })));
        // ω_1(1) = 2 + 12 + 2, ω_2(1) = −(2·1/2 + 2·1/2)
        assert_eq!(t.omega(1, 1).unwrap(), int(16));
        assert_eq!(t.omega(2, 1).unwrap(), int(-2));
        let back = OmegaTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn a_and_hilbert_examples() {
        let a = a_coeffs(4);
        let expected = [1, 16, 144, 960, 5264];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(a.coeff(n as i64), int(*e));
        }
        let h = HilbertEuler::new(3);
        assert_eq!(h.euler(0).unwrap(), int(1));
        assert_eq!(h.euler(1).unwrap(), int(12));
        assert_eq!(h.euler_at(&frac(1, 2)).unwrap(), int(0));
        assert_eq!(h.euler(-1).unwrap(), int(0));
        assert_eq!(h.b_half(-1).unwrap(), int(1));
        assert_eq!(h.b(&frac(1, 2)).unwrap(), int(12));
        assert!(h.euler(4).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_minus_one(&int(2)), frac(3, 2));
        assert_eq!(sigma_minus_one(&frac(1, 2)), int(0));
        assert_eq!(sigma_minus_one(&int(6)), frac(12, 6));
    }
}
