//! Truncated Laurent series in `z`, the genus-expansion variable, and the
//! substitution `p = e^z`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};
use crate::series::PLaurent;

/// `Σ c_k z^k` with coefficients known for exponents `k < trunc`. Library
/// uses never go below `z^{-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    trunc: i64,
    coeffs: BTreeMap<i64, Rational>,
}

impl ZSeries {
    /// Zero series known below `z^trunc`.
    pub fn zero(trunc: i64) -> Self {
        ZSeries {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from (exponent, coefficient) pairs, summing repeats and dropping
    /// exponents at or above `trunc`.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, Rational)>>(trunc: i64, coeffs: I) -> Self {
        let mut s = Self::zero(trunc);
        for (k, c) in coeffs {
            s.add_term(k, c);
        }
        s
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if k >= self.trunc || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Truncation exponent.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Coefficient of `z^k` (zero if absent).
    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Stored coefficients.
    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.trunc, self.coeffs.iter().map(|(&k, x)| (k, x * c)))
    }

    fn valuation_or_trunc(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }
}

impl Add<&ZSeries> for &ZSeries {
    type Output = ZSeries;
    fn add(self, rhs: &ZSeries) -> ZSeries {
        let t = self.trunc.min(rhs.trunc);
        ZSeries::from_coeffs(
            t,
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(&k, c)| (k, c.clone())),
        )
    }
}

impl Mul<&ZSeries> for &ZSeries {
    type Output = ZSeries;
    fn mul(self, rhs: &ZSeries) -> ZSeries {
        let t = (self.trunc + rhs.valuation_or_trunc()).min(rhs.trunc + self.valuation_or_trunc());
        let mut out = ZSeries::zero(t);
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                if a + b >= t {
                    break;
                }
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Substitutes `p = e^z` into a Laurent polynomial: `p^n ↦ Σ_k n^k z^k / k!`,
/// keeping exponents below `z_trunc`.
pub fn plaurent_to_zseries(c: &PLaurent, z_trunc: i64) -> ZSeries {
    let mut out = ZSeries::zero(z_trunc);
    for k in 0..z_trunc.max(0) {
        let mut s = Rational::zero();
        for (n, x) in c.iter() {
            if n != 0 || k == 0 {
                s += x * num_traits::pow(int(n), k as usize);
            }
        }
        out.add_term(k, s / factorial(k as u32));
    }
    out
}

/// Genus table read off a z-series: `g ↦ (−1)^{g−1} [f]_{z^{2g−2}}`.
///
/// Only nonzero values are stored; [`GenusTable::get`] returns zero for
/// unlisted genera up to `max_genus` and fails beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTable {
    max_genus: i64,
    values: BTreeMap<i64, Rational>,
}

impl GenusTable {
    /// Largest genus whose coefficient is known.
    pub fn max_genus(&self) -> i64 {
        self.max_genus
    }

    /// Nonzero entries.
    pub fn values(&self) -> &BTreeMap<i64, Rational> {
        &self.values
    }

    /// Value at genus `g`.
    pub fn get(&self, g: i64) -> Result<Rational> {
        if g > self.max_genus {
            return Err(Error::shortfall("genus", g, self.max_genus));
        }
        Ok(self.values.get(&g).cloned().unwrap_or_else(Rational::zero))
    }
}

/// Reads a z-series supported on even exponents `>= -2` as a genus expansion.
pub fn zseries_extract_genus(f: &ZSeries) -> Result<GenusTable> {
    let mut values = BTreeMap::new();
    for (&k, c) in f.coeffs() {
        if k % 2 != 0 {
            return Err(Error::NotGenusExpansion(k));
        }
        if k < -2 {
            return Err(Error::Domain(format!("pole of order {} in a genus expansion", -k)));
        }
        let g = k / 2 + 1;
        let sign = if (g - 1) % 2 == 0 { int(1) } else { int(-1) };
        values.insert(g, c * sign);
    }
    // genus g is known when 2g - 2 < trunc
    let max_genus = (f.trunc() + 1).div_euclid(2);
    Ok(GenusTable { max_genus, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn two_cosh() {
        let f = PLaurent::from_integers([(1, 1), (-1, 1)]);
        let z = plaurent_to_zseries(&f, 6);
        assert_eq!(
            z,
            ZSeries::from_coeffs(6, [(0, int(2)), (2, int(1)), (4, frac(1, 12))])
        );
    }

    #[test]
    fn constant_maps_to_constant() {
        let z = plaurent_to_zseries(&PLaurent::one(), 5);
        assert_eq!(z, ZSeries::from_coeffs(5, [(0, int(1))]));
    }

    #[test]
    fn polynomial_against_direct_exponential_expansion() {
        // 2p - p^2 = e^z (2 - e^z); its z^k coefficient is (2 - 2^k)/k!
        let f = PLaurent::from_integers([(1, 2), (2, -1)]);
        let z = plaurent_to_zseries(&f, 8);
        for k in 0..8u32 {
            let expected = (int(2) - num_traits::pow(int(2), k as usize)) / factorial(k);
            assert_eq!(z.coeff(k as i64), expected);
        }
    }

    #[test]
    fn genus_extraction_signs() {
        let one = ZSeries::from_coeffs(3, [(0, int(1))]);
        let t = zseries_extract_genus(&one).unwrap();
        assert_eq!(t.values().len(), 1);
        assert_eq!(t.get(1).unwrap(), int(1));
        let pole = ZSeries::from_coeffs(1, [(-2, int(1))]);
        assert_eq!(zseries_extract_genus(&pole).unwrap().get(0).unwrap(), int(-1));
        let odd = ZSeries::from_coeffs(4, [(1, int(1))]);
        assert_eq!(zseries_extract_genus(&odd), Err(Error::NotGenusExpansion(1)));
    }

    #[test]
    fn genus_bound_follows_truncation() {
        // exponents < 11 known: z^10 is genus 6
        let t = zseries_extract_genus(&ZSeries::zero(11)).unwrap();
        assert_eq!(t.max_genus(), 6);
        let t = zseries_extract_genus(&ZSeries::zero(10)).unwrap();
        assert_eq!(t.max_genus(), 5);
    }
}
