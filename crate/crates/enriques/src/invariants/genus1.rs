//! Genus-one identities: the quadratic recursion
//! `(β,β) N_{1,β} = 8 Σ_{β₁+β₂=β} (β₁,β₂) N_{1,β₁} N_{1,β₂}` and the product
//! formula `exp(Σ_β N_{1,β} Q^β) = Π_β ((1 + Q^β)/(1 − Q^β))^{a(β²/2)}`.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::CurveClass;
use crate::rational::{int, odd_divisors, Rational};
use crate::series::QSeries;
use crate::theta::{e8_vectors, E8Vector};

use super::gw::km_n;
use super::tables::{sigma_minus_one, OmegaTable};

/// `N_{1,β}` scaled by `scale`, in machine integers, for the recursion sweep.
struct ScaledN1 {
    omega1: Vec<i128>,
    scale: i128,
}

impl ScaledN1 {
    fn new(table: &OmegaTable, max_n: i64, max_div: i64) -> Result<Self> {
        let mut omega1 = Vec::with_capacity(max_n as usize + 1);
        for n in 0..=max_n {
            let w = table.omega(1, n)?;
            if !w.is_integer() {
                return Err(Error::Consistency(format!("omega_1({n}) = {w} is not an integer")));
            }
            omega1.push(w.to_integer().to_i128().expect("omega_1 fits in i128"));
        }
        let mut scale: i64 = 1;
        let mut k = 1;
        while k <= max_div.max(1) {
            scale = scale.lcm(&k);
            k += 2;
        }
        Ok(ScaledN1 {
            omega1,
            scale: scale as i128,
        })
    }

    /// `scale · 2 Σ_{odd k | div} k^{−1} ω₁(sq/2k²)`.
    fn eval(&self, sq: i64, div: i64) -> i128 {
        if sq < 0 {
            return 0;
        }
        let mut s = 0i128;
        for k in odd_divisors(div) {
            let n = sq / (2 * k * k);
            s += self.scale / k as i128 * self.omega1[n as usize];
        }
        2 * s
    }
}

/// Vectors of norm at most `bound`, with precomputed norms and divisibilities.
struct VectorPool {
    vectors: Vec<(E8Vector, i64, i64)>,
}

impl VectorPool {
    fn new(bound: i64) -> Self {
        let vectors = e8_vectors(bound)
            .into_iter()
            .map(|v| (v, v.norm(), v.divisibility()))
            .collect();
        VectorPool { vectors }
    }

    /// Vectors of norm at most `bound`; the pool is sorted by norm.
    fn up_to(&self, bound: i64) -> &[(E8Vector, i64, i64)] {
        let end = self.vectors.partition_point(|&(_, n, _)| n <= bound);
        &self.vectors[..end]
    }
}

/// Result of a recursion sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    /// Number of classes checked.
    pub checked: usize,
    /// Classes where the two sides differ.
    pub failures: Vec<CurveClass>,
}

struct Recursion {
    n1: ScaledN1,
    pool: VectorPool,
}

/// E8 norm bound needed to enumerate every splitting of `k s + d f + α`
/// with both parts contributing: the smaller of `2 k₁ d₁` and `2 k₂ d₂`.
fn required_norm_bound(k: i64, d: i64) -> i64 {
    let mut need = 0;
    for k1 in 0..=k {
        for d1 in 0..=d {
            need = need.max(2 * (k1 * d1).min((k - k1) * (d - d1)));
        }
    }
    need
}

impl Recursion {
    fn new(table: &OmegaTable, k_max: i64, d_max: i64, norm_bound: i64) -> Result<Self> {
        Ok(Recursion {
            n1: ScaledN1::new(table, k_max * d_max, k_max.max(d_max))?,
            pool: VectorPool::new(norm_bound),
        })
    }

    fn holds(&self, beta: &CurveClass) -> bool {
        let (k, d, alpha) = (beta.k, beta.d, beta.alpha);
        let q_alpha = alpha.gram_image();
        let alpha_norm = alpha.norm();
        let lhs = beta.square() as i128 * self.n1.eval(beta.square(), beta.divisibility()) * self.n1.scale;
        let mut rhs = 0i128;
        for k1 in 0..=k {
            for d1 in 0..=d {
                let (k2, d2) = (k - k1, d - d1);
                if (k1, d1) == (0, 0) || (k2, d2) == (0, 0) {
                    continue;
                }
                // enumerate the E8 part of the side with the smaller bound
                let (ka, da, kb, db) = if k1 * d1 <= k2 * d2 {
                    (k1, d1, k2, d2)
                } else {
                    (k2, d2, k1, d1)
                };
                for &(a, a_norm, a_div) in self.pool.up_to(2 * ka * da) {
                    // b = α − a, |b|² = |α|² − 2 α·a + |a|²
                    let dot: i64 = a.0.iter().zip(q_alpha.iter()).map(|(x, y)| x * y).sum();
                    let b_norm = alpha_norm - 2 * dot + a_norm;
                    if b_norm > 2 * kb * db {
                        continue;
                    }
                    let b = alpha - a;
                    let sq_a = 2 * ka * da - a_norm;
                    let sq_b = 2 * kb * db - b_norm;
                    let div_a = ka.gcd(&da).gcd(&a_div);
                    let div_b = kb.gcd(&db).gcd(&b.divisibility());
                    // (β₁, β₂) = k₁d₂ + k₂d₁ − a·b with a·b = α·a − |a|²
                    let pairing = ka * db + kb * da - (dot - a_norm);
                    let na = self.n1.eval(sq_a, div_a);
                    if na == 0 {
                        continue;
                    }
                    let nb = self.n1.eval(sq_b, div_b);
                    rhs += pairing as i128 * na * nb;
                }
            }
        }
        lhs == 8 * rhs
    }
}

/// Checks the genus-one recursion at one class, enumerating E8 parts of
/// splittings up to `norm_bound`. Fails when the bound is too small to
/// enumerate every contributing splitting.
pub fn genus1_recursion_check(table: &OmegaTable, beta: &CurveClass, norm_bound: i64) -> Result<bool> {
    if beta.k < 0 || beta.d < 0 || (beta.k, beta.d) == (0, 0) {
        return Err(Error::InvalidArgument(format!("{beta} is not on the effective slice")));
    }
    let need = required_norm_bound(beta.k, beta.d);
    if norm_bound < need {
        return Err(Error::shortfall("E8 enumeration norm bound", need, norm_bound));
    }
    let rec = Recursion::new(table, beta.k, beta.d, norm_bound)?;
    Ok(rec.holds(beta))
}

/// Checks the recursion for every `β = k s + d f + α` with
/// `0 ≤ k ≤ k_max`, `0 ≤ d ≤ d_max`, `(k, d) ≠ (0, 0)` and `|α|² ≤ alpha_norm_max`.
pub fn genus1_recursion_sweep(
    table: &OmegaTable,
    k_max: i64,
    d_max: i64,
    alpha_norm_max: i64,
) -> Result<RecursionReport> {
    let rec = Recursion::new(table, k_max, d_max, required_norm_bound(k_max, d_max))?;
    // N₁ is evaluated at squares up to 2 k_max d_max
    let alphas = e8_vectors(alpha_norm_max);
    let mut report = RecursionReport {
        checked: 0,
        failures: Vec::new(),
    };
    for k in 0..=k_max {
        for d in 0..=d_max {
            if (k, d) == (0, 0) {
                continue;
            }
            for alpha in &alphas {
                let beta = CurveClass::new(k, d, *alpha);
                report.checked += 1;
                if !rec.holds(&beta) {
                    report.failures.push(beta);
                }
            }
        }
    }
    Ok(report)
}

type Key = (i64, i64, E8Vector);
type Multi = HashMap<Key, Rational>;

fn add_key(a: &Key, b: &Key) -> Key {
    (a.0 + b.0, a.1 + b.1, a.2 + b.2)
}

fn grade(key: &Key) -> i64 {
    key.0 + key.1
}

fn multi_insert(m: &mut Multi, key: Key, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&key);
    }
}

/// Effective classes `k s + d f + α` of grade `k + d ≤ max_grade` with
/// `β² ≥ 0`, the only ones where `N_{1,β}` or `a(β²/2)` can be nonzero.
fn nonnegative_classes(max_grade: i64) -> Vec<CurveClass> {
    let pool = VectorPool::new(2 * (max_grade / 2) * (max_grade - max_grade / 2));
    let mut out = Vec::new();
    for k in 0..=max_grade {
        for d in 0..=max_grade - k {
            if (k, d) == (0, 0) {
                continue;
            }
            for &(a, _, _) in pool.up_to(2 * k * d) {
                out.push(CurveClass::new(k, d, a));
            }
        }
    }
    out
}

/// Compares `exp(Σ_β N_{1,β} Q^β)` with `Π_β ((1 + Q^β)/(1 − Q^β))^{a(β²/2)}`
/// on the effective slice with E8 parts, through total grade `k + d ≤ max_grade`.
/// Also compares `log Π_d ((1 + q^d)/(1 − q^d))` with `Σ_d N_{1,df} q^d`
/// and with `Σ_d (2σ_{−1}(d) − σ_{−1}(d/2)) q^d` through `q^fiber_order`.
pub fn genus1_product_check(
    table: &OmegaTable,
    a: &QSeries,
    max_grade: i64,
    fiber_order: i64,
) -> Result<bool> {
    let classes = nonnegative_classes(max_grade);
    let key = |b: &CurveClass| (b.k, b.d, b.alpha);
    // logarithm side
    let mut by_grade: Vec<Vec<(Key, Rational)>> = vec![Vec::new(); max_grade as usize + 1];
    for b in &classes {
        let n = km_n(table, 1, b)?;
        if !n.is_zero() {
            by_grade[(b.k + b.d) as usize].push((key(b), n));
        }
    }
    // E_t = (1/t) Σ_j j S_j E_{t−j}
    let mut e: Vec<Multi> = vec![Multi::new(); max_grade as usize + 1];
    e[0].insert((0, 0, E8Vector::default()), Rational::from_integer(1.into()));
    for t in 1..=max_grade as usize {
        let mut acc = Multi::new();
        for j in 1..=t {
            for (ks, s) in &by_grade[j] {
                for (ke, x) in &e[t - j] {
                    multi_insert(&mut acc, add_key(ks, ke), s * x * int(j as i64));
                }
            }
        }
        let inv_t = int(t as i64).recip();
        for v in acc.values_mut() {
            *v *= &inv_t;
        }
        e[t] = acc;
    }
    let mut lhs = Multi::new();
    for layer in e {
        for (k, v) in layer {
            multi_insert(&mut lhs, k, v);
        }
    }
    // product side, factors of high grade first so the product stays small
    let mut sorted = classes.clone();
    sorted.sort_by_key(|b| std::cmp::Reverse(b.k + b.d));
    let mut rhs = Multi::new();
    rhs.insert((0, 0, E8Vector::default()), Rational::from_integer(1.into()));
    for b in &sorted {
        let g = b.k + b.d;
        let exponent = a.get(b.square() / 2)?;
        if exponent.is_zero() {
            continue;
        }
        let top = max_grade / g;
        // (1 + y)^a (1 − y)^{−a} = exp(2a Σ_{odd m} y^m/m)
        let log = QSeries::from_coeffs(
            1,
            top + 1,
            (1..=top).step_by(2).map(|m| (m, &exponent * int(2) / int(m))),
        );
        let factor = log.exp()?;
        let low: Vec<(Key, Rational)> = rhs
            .iter()
            .filter(|(k, _)| grade(k) <= max_grade - g)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for j in 1..=top {
            let c = factor.coeff(j);
            if c.is_zero() {
                continue;
            }
            let shift = (b.k * j, b.d * j, b.alpha.scale(j));
            for (k, v) in &low {
                if grade(k) + j * g <= max_grade {
                    multi_insert(&mut rhs, add_key(k, &shift), v * &c);
                }
            }
        }
    }
    if lhs != rhs {
        return Ok(false);
    }
    // fiber direction in one variable
    let t = fiber_order + 1;
    let mut prod = QSeries::one(t);
    for d in 1..t {
        let exponent = a.get(0)?;
        let log = QSeries::from_coeffs(
            1,
            t,
            (1..t).filter(|m| m % 2 == 1 && d * m < t).map(|m| (d * m, &exponent * int(2) / int(m))),
        );
        prod = &prod * &log.exp()?;
    }
    let log = prod.log()?;
    for d in 1..t {
        let n = km_n(table, 1, &CurveClass::slice(0, d))?;
        let sigma = int(2) * sigma_minus_one(&int(d)) - sigma_minus_one(&(int(d) / int(2)));
        if log.coeff(d) != n || n != sigma {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tables::{a_coeffs, omega_table};

    #[test]
    fn recursion_examples() {
        let t = omega_table(1, 9).unwrap();
        for beta in [CurveClass::slice(0, 2), CurveClass::slice(1, 1), CurveClass::slice(2, 2)] {
            assert!(genus1_recursion_check(&t, &beta, 8).unwrap(), "{beta}");
        }
        let beta = CurveClass::new(2, 2, E8Vector::basis(2).scale(2));
        assert!(genus1_recursion_check(&t, &beta, 8).unwrap());
        assert!(matches!(
            genus1_recursion_check(&t, &CurveClass::slice(2, 2), 0),
            Err(Error::TruncationShortfall { .. })
        ));
        // s + f: 2 N_{1,s+f} = 2 · 32 and 8 · 2 · (s,f) N_{1,s} N_{1,f} = 64
        let n = km_n(&t, 1, &CurveClass::slice(1, 1)).unwrap();
        assert_eq!(n, int(32));
    }

    #[test]
    fn small_sweep() {
        let t = omega_table(1, 4).unwrap();
        let r = genus1_recursion_sweep(&t, 2, 2, 2).unwrap();
        assert_eq!(r.checked, 8 * 241);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn product_formula_low_grade() {
        let t = omega_table(1, 10).unwrap();
        assert!(genus1_product_check(&t, &a_coeffs(10), 3, 10).unwrap());
    }
}
