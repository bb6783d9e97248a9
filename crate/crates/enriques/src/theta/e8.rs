//! The E8 lattice in a fixed root basis, short-vector enumeration and series
//! graded by E8 vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, gcd_all, int, parse_rational, Rational};
use crate::series::QSeries;

/// Gram matrix of E8 in the root basis `b_1, …, b_8` (Bourbaki labelling:
/// `b_1–b_3–b_4–b_5–b_6–b_7–b_8` with `b_2` attached to `b_4`).
pub const Q_E8: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// A vector of E8 in the root basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct E8Vector(pub [i64; 8]);

impl E8Vector {
    /// The zero vector.
    pub const ZERO: E8Vector = E8Vector([0; 8]);

    /// The `i`-th basis vector.
    pub fn basis(i: usize) -> E8Vector {
        let mut c = [0; 8];
        c[i] = 1;
        E8Vector(c)
    }

    /// Coordinates.
    pub fn coords(&self) -> &[i64; 8] {
        &self.0
    }

    /// `Q_E8 · self`, the pairings with the basis vectors.
    pub fn gram_image(&self) -> [i64; 8] {
        let mut out = [0; 8];
        for (i, row) in Q_E8.iter().enumerate() {
            out[i] = row.iter().zip(&self.0).map(|(q, x)| q * x).sum();
        }
        out
    }

    /// Positive definite pairing `xᵀ Q_E8 y`.
    pub fn dot(&self, other: &E8Vector) -> i64 {
        self.gram_image().iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `α·α`, always even and nonnegative.
    pub fn norm(&self) -> i64 {
        self.dot(self)
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn divisibility(&self) -> i64 {
        gcd_all(&self.0)
    }

    /// `c · self`.
    pub fn scale(&self, c: i64) -> E8Vector {
        E8Vector(self.0.map(|x| c * x))
    }

    /// `self / c` when every coordinate is divisible by `c`.
    pub fn div_exact(&self, c: i64) -> Option<E8Vector> {
        if c == 0 || self.0.iter().any(|x| x % c != 0) {
            return None;
        }
        Some(E8Vector(self.0.map(|x| x / c)))
    }
}

impl Add for E8Vector {
    type Output = E8Vector;
    fn add(self, o: E8Vector) -> E8Vector {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        E8Vector(c)
    }
}

impl Sub for E8Vector {
    type Output = E8Vector;
    fn sub(self, o: E8Vector) -> E8Vector {
        self + (-o)
    }
}

impl Neg for E8Vector {
    type Output = E8Vector;
    fn neg(self) -> E8Vector {
        E8Vector(self.0.map(|x| -x))
    }
}

impl fmt::Display for E8Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `xᵀ G x` for an integer Gram matrix.
pub fn quadratic_form(gram: &[Vec<i64>], x: &[i64]) -> i64 {
    gram.iter()
        .zip(x)
        .map(|(row, xi)| xi * row.iter().zip(x).map(|(g, xj)| g * xj).sum::<i64>())
        .sum()
}

/// All integer vectors `v` with `vᵀ G v ≤ max_norm`, each exactly once,
/// sorted by `(norm, coordinates)`.
///
/// Uses Fincke-Pohst enumeration over an exact rational decomposition
/// `vᵀ G v = Σ_i d_i (v_i + Σ_{j>i} μ_{ij} v_j)²`.
pub fn lattice_enumerate(gram: &[Vec<i64>], max_norm: i64) -> Result<Vec<Vec<i64>>> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("Gram matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
            }
        }
    }
    // q[i][i] = d_i, q[i][j] = μ_ij for j > i
    let mut q: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    for i in 0..n {
        if q[i][i] <= Rational::zero() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    let mut out = Vec::new();
    if max_norm < 0 || n == 0 {
        if n == 0 && max_norm >= 0 {
            out.push(Vec::new());
        }
        return Ok(out);
    }
    let mut x = vec![0i64; n];
    enumerate_level(&q, n - 1, &int(max_norm), &mut x, &mut out);
    let mut keyed: Vec<(i64, Vec<i64>)> = out.into_iter().map(|v| (quadratic_form(gram, &v), v)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, v)| v).collect())
}

fn enumerate_level(q: &[Vec<Rational>], i: usize, budget: &Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let n = q.len();
    let mut c = Rational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            c += &q[i][j] * int(x[j]);
        }
    }
    let d = &q[i][i];
    let centre = (-&c).round().to_integer();
    let centre = i64::try_from(centre).expect("coordinate fits in i64");
    let visit = |xi: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| -> bool {
        let t = int(xi) + &c;
        let used = d * &t * &t;
        if &used > budget {
            return false;
        }
        x[i] = xi;
        if i == 0 {
            out.push(x.clone());
        } else {
            enumerate_level(q, i - 1, &(budget - used), x, out);
        }
        true
    };
    let mut xi = centre;
    while visit(xi, x, out) {
        xi += 1;
    }
    let mut xi = centre - 1;
    while visit(xi, x, out) {
        xi -= 1;
    }
    x[i] = 0;
}

/// `Q_E8` as nested vectors.
pub fn q_e8_rows() -> Vec<Vec<i64>> {
    Q_E8.iter().map(|r| r.to_vec()).collect()
}

fn e8_cache() -> &'static RwLock<(i64, Vec<E8Vector>)> {
    static CACHE: OnceLock<RwLock<(i64, Vec<E8Vector>)>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new((-1, Vec::new())))
}

/// All E8 vectors with `α·α ≤ max_norm`, sorted by `(norm, coordinates)`.
/// Results are cached.
pub fn e8_vectors(max_norm: i64) -> Vec<E8Vector> {
    {
        let cache = e8_cache().read().expect("cache lock");
        if cache.0 >= max_norm {
            return cache.1.iter().copied().filter(|v| v.norm() <= max_norm).collect();
        }
    }
    let vs: Vec<E8Vector> = lattice_enumerate(&q_e8_rows(), max_norm)
        .expect("Q_E8 is positive definite")
        .into_iter()
        .map(|v| E8Vector(v.try_into().expect("eight coordinates")))
        .collect();
    *e8_cache().write().expect("cache lock") = (max_norm, vs.clone());
    vs
}

/// A series `Σ c(n, α) q^n ζ^α` with integer q-exponents `n < trunc` and
/// vectors restricted to `α·α ≤ norm_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E8QSeries {
    trunc: i64,
    norm_bound: i64,
    coeffs: BTreeMap<(i64, E8Vector), Rational>,
}

impl E8QSeries {
    /// The zero series.
    pub fn zero(trunc: i64, norm_bound: i64) -> Self {
        E8QSeries {
            trunc,
            norm_bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a series, dropping zero terms and terms outside the bounds.
    pub fn from_coeffs<I>(trunc: i64, norm_bound: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = ((i64, E8Vector), Rational)>,
    {
        let mut s = E8QSeries::zero(trunc, norm_bound);
        for ((n, a), c) in coeffs {
            s.add_term(n, a, c);
        }
        s
    }

    /// Adds `c q^n ζ^α` when it lies inside the bounds.
    pub fn add_term(&mut self, n: i64, a: E8Vector, c: Rational) {
        if n >= self.trunc || a.norm() > self.norm_bound || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((n, a)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(n, a));
        }
    }

    /// Truncation in q.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Largest retained `α·α`.
    pub fn norm_bound(&self) -> i64 {
        self.norm_bound
    }

    /// Nonzero coefficients.
    pub fn coeffs(&self) -> &BTreeMap<(i64, E8Vector), Rational> {
        &self.coeffs
    }

    /// Coefficient of `q^n ζ^α` (zero if absent).
    pub fn coeff(&self, n: i64, a: &E8Vector) -> Rational {
        self.coeffs.get(&(n, *a)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `q^n ζ^α`, failing outside the known range.
    pub fn get(&self, n: i64, a: &E8Vector) -> Result<Rational> {
        if n >= self.trunc {
            return Err(Error::shortfall("q-exponent", n, self.trunc - 1));
        }
        if a.norm() > self.norm_bound {
            return Err(Error::shortfall("vector norm", a.norm(), self.norm_bound));
        }
        Ok(self.coeff(n, a))
    }

    /// Smallest q-exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().map(|k| k.0)
    }

    /// Multiplies by a constant.
    pub fn scale(&self, c: &Rational) -> Self {
        E8QSeries::from_coeffs(
            self.trunc,
            self.norm_bound,
            self.coeffs.iter().map(|(k, x)| (*k, x * c)),
        )
    }

    /// Sum of two series; bounds are the minima.
    pub fn add(&self, other: &E8QSeries) -> Self {
        let mut out = E8QSeries::from_coeffs(
            self.trunc.min(other.trunc),
            self.norm_bound.min(other.norm_bound),
            self.coeffs.iter().map(|(k, x)| (*k, x.clone())),
        );
        for (&(n, a), c) in &other.coeffs {
            out.add_term(n, a, c.clone());
        }
        out
    }

    /// Product with a p-free series with integer q-exponents.
    pub fn mul_qseries(&self, f: &QSeries) -> Result<E8QSeries> {
        let f = f.normalize_denom();
        if f.exp_denom() != 1 {
            return Err(Error::InvalidArgument("q-series must have integer exponents".into()));
        }
        let va = self.valuation().unwrap_or(self.trunc);
        let vb = f.valuation().unwrap_or(f.trunc());
        let trunc = (self.trunc + vb).min(f.trunc() + va);
        let mut out = E8QSeries::zero(trunc, self.norm_bound);
        for (&(n, a), x) in &self.coeffs {
            for (m, y) in f.iter() {
                if n + m >= trunc {
                    break;
                }
                out.add_term(n + m, a, x * y);
            }
        }
        Ok(out)
    }

    /// Specialization `ζ = 1`. The result is truncated at
    /// `min(trunc, ⌊norm_bound/2⌋ + 1)`, which is exact for series whose
    /// `q^n` coefficients vanish on vectors with `α·α > 2n`.
    pub fn specialize(&self) -> QSeries {
        let t = self.trunc.min(self.norm_bound.div_euclid(2) + 1);
        let mut out = QSeries::zero(1, t);
        for (&(n, _), c) in self.coeffs.range(..(t, E8Vector::ZERO)) {
            out = &out + &QSeries::monomial(1, n, c.clone(), t);
        }
        out
    }

    /// True when `c(n, α) = c(n, −α)` for every stored term.
    pub fn is_reflection_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&(n, a), c)| self.coeff(n, &-a) == *c)
    }

    /// JSON `{trunc, norm_bound, entries: [[q_exp, [8 coords], "num/den"], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "trunc": self.trunc,
            "norm_bound": self.norm_bound,
            "entries": self
                .coeffs
                .iter()
                .map(|(&(n, a), c)| serde_json::json!([n, a.0, fmt_rational(c)]))
                .collect::<Vec<_>>(),
        })
    }

    /// Parses the form produced by [`E8QSeries::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad E8 series JSON".into());
        let trunc = v.get("trunc").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        let norm_bound = v.get("norm_bound").and_then(|x| x.as_i64()).ok_or_else(bad)?;
        let mut terms = Vec::new();
        for e in v.get("entries").and_then(|x| x.as_array()).ok_or_else(bad)? {
            let arr = e.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let n = arr[0].as_i64().ok_or_else(bad)?;
            let a: [i64; 8] = serde_json::from_value(arr[1].clone()).map_err(|_| bad())?;
            let c = parse_rational(arr[2].as_str().ok_or_else(bad)?)?;
            terms.push(((n, E8Vector(a)), c));
        }
        Ok(E8QSeries::from_coeffs(trunc, norm_bound, terms))
    }
}

/// `Θ_{E8} = Σ_α ζ^α q^{α·α/2}` below `q^trunc`, all vectors retained
/// (`norm_bound = 2(trunc − 1)`).
pub fn theta_e8(trunc: i64) -> E8QSeries {
    theta_e8_bounded(trunc, 2 * (trunc - 1))
}

/// `Θ_{E8}` below `q^trunc` restricted to vectors with `α·α ≤ norm_bound`.
pub fn theta_e8_bounded(trunc: i64, norm_bound: i64) -> E8QSeries {
    let bound = norm_bound.min(2 * (trunc - 1));
    E8QSeries::from_coeffs(
        trunc,
        norm_bound,
        e8_vectors(bound).into_iter().map(|a| ((a.norm() / 2, a), Rational::one())),
    )
}

/// Multiplies q-exponents by `n`, keeping the vector part.
pub fn scale_q_e8(f: &E8QSeries, n: i64) -> E8QSeries {
    assert!(n >= 1, "scaling factor must be positive");
    E8QSeries::from_coeffs(
        f.trunc * n,
        f.norm_bound,
        f.coeffs.iter().map(|(&(m, a), c)| ((m * n, a), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_gram_is_unimodular_positive() {
        let vs = e8_vectors(2);
        assert_eq!(vs.len(), 241);
        assert!(vs[0].is_zero());
        assert!(vs.iter().all(|v| v.norm() % 2 == 0));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(lattice_enumerate(&q_e8_rows(), 0).unwrap(), vec![vec![0; 8]]);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(lattice_enumerate(&id, 1).unwrap().len(), 5);
        let bad = vec![vec![1, 2], vec![2, 1]];
        assert!(matches!(lattice_enumerate(&bad, 3), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn theta_e8_coefficients() {
        let t = theta_e8(3);
        let s = t.specialize();
        assert_eq!(s, QSeries::from_integers(3, &[1, 240, 2160]));
        let root = e8_vectors(2)[1];
        assert_eq!(t.coeff(1, &root), int(1));
        assert_eq!(t.coeff(1, &E8Vector::ZERO), int(0));
        assert!(t.is_reflection_symmetric());
        let scaled = scale_q_e8(&t, 2).specialize();
        assert_eq!(scaled.coeff(2), int(240));
        assert_eq!(scaled.coeff(1), int(0));
    }

    #[test]
    fn json_round_trip() {
        let t = theta_e8(2);
        let v = t.to_json();
        assert_eq!(E8QSeries::from_json(&v).unwrap(), t);
    }
}
