//! The renormalized odd Jacobi theta function, the theta quotient that
//! generates the ω-invariants, and their exact identities.
//!
//! `Θ(z, τ)` carries a factor `p^{1/2} − p^{−1/2}`. It is represented through
//! the regular part `R(p, q) = Π_{m≥1} (1 − p q^m)(1 − p^{−1} q^m)/(1 − q^m)^2`
//! with `Θ = (p^{1/2} − p^{−1/2}) R`, so every public series has integer
//! p-exponents.

use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::modular::{eisenstein_g, eta_quotient};
use crate::rational::{factorial, int, Rational};
use crate::series::{
    euler_product, plaurent_to_zseries, BinomialProduct, JQSeries, PLaurent, PoleToken, QSeries,
};

/// `Θ = (p^{1/2} − p^{−1/2}) · regular`, with `regular = 1 + O(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    /// The product `R(p, q)`.
    pub regular: JQSeries,
}

/// `1/Θ² = polar + regular`, where `polar` is the q⁰ rational function
/// `1/(p^{1/2} − p^{−1/2})² = p/(1 − p)²` and `regular` collects the
/// q-exponents `≥ 1`, each a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvThetaSquared {
    /// The q⁰ term as a pole token.
    pub polar: PoleToken,
    /// The remaining terms, with zero q⁰ coefficient.
    pub regular: JQSeries,
}

/// `p − 2 + p^{−1} = (p^{1/2} − p^{−1/2})²`.
pub fn theta_prefactor_squared() -> PLaurent {
    PLaurent::from_integers([(-1, 1), (0, -2), (1, 1)])
}

/// `Π_{m≥1} (1 − p q^{sm})^e (1 − p^{−1} q^{sm})^e / (1 − q^{sm})^{2e}`.
fn r_product(step: i64, power: i64, trunc: i64) -> JQSeries {
    let mut b = BinomialProduct::one(trunc);
    let mut j = step;
    while j < trunc {
        b.apply(1, j, power);
        b.apply(-1, j, power);
        j += step;
    }
    b.finish().mul_qseries(&euler_product(step, -2 * power, trunc))
}

/// `Σ_j (−1)^j p^j q^{j(j+1)/2} / Π(1 − q^n)³`, which is `p^{−1/2} Θ` by the
/// half-integer sum definition.
fn theta_from_sum(trunc: i64) -> JQSeries {
    let mut s = JQSeries::zero(1, trunc);
    let mut j: i64 = 0;
    while j * (j + 1) / 2 < trunc {
        for jj in [j, -j - 1] {
            let sign = if jj.rem_euclid(2) == 0 { 1 } else { -1 };
            s.add_term(jj * (jj + 1) / 2, &PLaurent::from_integers([(jj, sign)]));
        }
        j += 1;
    }
    s.mul_qseries(&euler_product(1, -3, trunc))
}

/// `Θ(z, τ)` known below `q^trunc`, built from the triple product and checked
/// against the half-integer sum divided by `η³`.
pub fn theta(trunc: i64) -> Result<ThetaSeries> {
    let regular = r_product(1, 1, trunc);
    let one_minus_inv_p = JQSeries::from_coeffs(1, trunc, [(0, PLaurent::from_integers([(0, 1), (-1, -1)]))]);
    if &one_minus_inv_p * &regular != theta_from_sum(trunc) {
        return Err(Error::Consistency(
            "triple product and half-integer sum for theta disagree".into(),
        ));
    }
    Ok(ThetaSeries { regular })
}

/// `Θ(z, τ)²`, known below `q^trunc`.
pub fn theta_squared(trunc: i64) -> Result<JQSeries> {
    let t = theta(trunc)?;
    let x = JQSeries::from_coeffs(1, trunc, [(0, theta_prefactor_squared())]);
    Ok(&x * &(&t.regular * &t.regular))
}

/// The closed double sum for `1/Θ²` without its q⁰ term:
/// `Σ_{r≥1} (2r q^{r²} + Σ_{n≥1} (2r + n)(p^n + p^{−n}) q^{rn + r²})`.
pub fn inv_theta_sq_closed_form(trunc: i64) -> JQSeries {
    let mut out = JQSeries::zero(1, trunc);
    let mut r = 1;
    while r * r < trunc {
        out.add_term(r * r, &PLaurent::constant(int(2 * r)));
        let mut n = 1;
        while r * n + r * r < trunc {
            out.add_term(r * n + r * r, &PLaurent::from_integers([(n, 2 * r + n), (-n, 2 * r + n)]));
            n += 1;
        }
        r += 1;
    }
    out
}

/// `1/Θ(z, τ)²` known below `q^trunc`, obtained by inverting `Θ²` and checked
/// against the closed double sum.
///
/// With `Θ² = (p − 2 + p^{−1}) R²`, the inverse is `(p − 2 + p^{−1})^{−1} R^{−2}`.
/// The q⁰ part is the pole token; every higher coefficient of `R^{−2}` is
/// divisible by `p − 2 + p^{−1}`, and the quotient is the regular part.
pub fn inv_theta_sq(trunc: i64) -> Result<InvThetaSquared> {
    let t = theta(trunc)?;
    let inv = (&t.regular * &t.regular).invert()?;
    let x = theta_prefactor_squared();
    if !inv.coeff(0).is_one() {
        return Err(Error::Consistency("R^{-2} does not start with 1".into()));
    }
    let mut regular = JQSeries::zero(1, trunc);
    for (n, c) in inv.iter().filter(|&(n, _)| n >= 1) {
        regular.add_term(n, &c.div_exact(&x)?);
    }
    if regular != inv_theta_sq_closed_form(trunc) {
        return Err(Error::Consistency(
            "inverse of theta squared disagrees with the closed double sum".into(),
        ));
    }
    Ok(InvThetaSquared {
        polar: PoleToken::inverse_theta_polar(),
        regular,
    })
}

/// The theta quotient `Θ(z,2τ)²/Θ(z,τ)²`, which is `R(p,q²)²/R(p,q)²`.
pub fn theta_quotient(trunc: i64) -> Result<JQSeries> {
    let t1 = theta(trunc)?;
    let t2 = theta((trunc + 1) / 2)?;
    let num = t2.regular.scale_q(2).truncate(trunc);
    let num = &num * &num;
    let den = (&t1.regular * &t1.regular).invert()?;
    Ok(&num * &den)
}

/// The closed sum `Σ_{r odd ≥ 1} (r q^{r²/2} + Σ_{n≥1} (n + r)(p^n + p^{−n}) q^{rn + r²/2})`,
/// with q-exponent denominator 2, known below `q^trunc`.
pub fn km_closed_sum(trunc: i64) -> JQSeries {
    // scaled exponents: rn + r²/2 ↦ 2rn + r²
    let t = 2 * trunc;
    let mut out = JQSeries::zero(2, t);
    let mut r = 1;
    while r * r < t {
        out.add_term(r * r, &PLaurent::constant(int(r)));
        let mut n = 1;
        while 2 * r * n + r * r < t {
            out.add_term(2 * r * n + r * r, &PLaurent::from_integers([(n, n + r), (-n, n + r)]));
            n += 1;
        }
        r += 2;
    }
    out
}

fn km_cache() -> &'static RwLock<Option<JQSeries>> {
    static CACHE: OnceLock<RwLock<Option<JQSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(None))
}

/// The product
/// `Π_{m≥1} (1 − p q^{2m})²(1 − p^{−1} q^{2m})²(1 − q^{2m})⁴ / ((1 − p q^m)²(1 − p^{−1} q^m)²(1 − q^m)^{12})`
/// known below `q^trunc`. Results are cached.
pub fn km_kernel_product(trunc: i64) -> JQSeries {
    if let Some(s) = km_cache().read().expect("cache lock").as_ref() {
        if s.trunc() >= trunc {
            return s.truncate(trunc);
        }
    }
    let mut b = BinomialProduct::one(trunc);
    let mut m = 1;
    while m < trunc {
        b.apply(1, m, -2);
        b.apply(-1, m, -2);
        if 2 * m < trunc {
            b.apply(1, 2 * m, 2);
            b.apply(-1, 2 * m, 2);
        }
        m += 1;
    }
    let q_part = &euler_product(2, 4, trunc) * &euler_product(1, -12, trunc);
    let s = b.finish().mul_qseries(&q_part);
    *km_cache().write().expect("cache lock") = Some(s.clone());
    s
}

/// The ω-generating kernel `Θ(z,2τ)²/Θ(z,τ)² · η(2τ)⁸/η(τ)^{16}`, known below
/// `q^trunc`.
///
/// The product form is compared with the theta quotient, and its product with
/// `η(τ)^{12}` with the closed sum [`km_closed_sum`]; a mismatch is a
/// consistency error.
pub fn km_kernel(trunc: i64) -> Result<JQSeries> {
    let product = km_kernel_product(trunc);
    let eta_part = eta_quotient(&[(2, 8), (1, -16)], trunc);
    let quotient = theta_quotient(trunc)?.mul_qseries(&eta_part.normalize_denom());
    if quotient != product {
        return Err(Error::Consistency("product and theta quotient disagree".into()));
    }
    let shifted = product.mul_qseries(&eta_quotient(&[(1, 12)], trunc));
    if shifted.normalize_denom() != km_closed_sum(trunc) {
        return Err(Error::Consistency("product and closed sum disagree".into()));
    }
    Ok(product)
}

/// The closed sum [`km_closed_sum`] equals the odd-q part of `1/Θ²` under
/// `(z, τ) ↦ (z/2, τ/2)`, halved. Checked coefficientwise below `q^trunc`.
pub fn check_closed_sum_from_inv_theta(trunc: i64) -> Result<()> {
    let inv = inv_theta_sq(2 * trunc)?;
    let mut halved = JQSeries::zero(2, 2 * trunc);
    for (n, c) in inv.regular.iter().filter(|&(n, _)| n % 2 == 1) {
        let mut d = PLaurent::zero();
        for (e, x) in c.iter() {
            if e % 2 != 0 {
                return Err(Error::Consistency(format!("odd p-exponent {e} at q^{n}")));
            }
            d.add_term(e / 2, x / int(2));
        }
        halved.add_term(n, &d);
    }
    if halved != km_closed_sum(trunc) {
        return Err(Error::Consistency(
            "odd part of the inverse theta square disagrees with the closed sum".into(),
        ));
    }
    Ok(())
}

/// Expands each q-coefficient of `f` under `p = e^z`, returning the q-series
/// coefficients of `z^0, …, z^{z_trunc−1}`.
pub fn jq_to_z_grid(f: &JQSeries, z_trunc: i64) -> Vec<QSeries> {
    let mut grid: Vec<QSeries> = (0..z_trunc).map(|_| QSeries::zero(f.exp_denom(), f.trunc())).collect();
    let mut cols: Vec<Vec<(i64, Rational)>> = vec![Vec::new(); z_trunc.max(0) as usize];
    for (n, c) in f.iter() {
        let z = plaurent_to_zseries(c, z_trunc);
        for (&k, x) in z.coeffs() {
            cols[k as usize].push((n, x.clone()));
        }
    }
    for (k, col) in cols.into_iter().enumerate() {
        grid[k] = QSeries::from_coeffs(f.exp_denom(), f.trunc(), col);
    }
    grid
}

/// `exp(Y)` for `Y = Σ_{k≥1} y_k z^k` with q-series coefficients, via
/// `j E_j = Σ_{i=1}^{j} i y_i E_{j−i}`.
pub fn z_grid_exp(y: &[QSeries], trunc: i64) -> Vec<QSeries> {
    let mut e: Vec<QSeries> = vec![QSeries::one(trunc)];
    for j in 1..y.len() {
        let mut s = QSeries::zero(1, trunc);
        for i in 1..=j {
            if !y[i].is_zero() && !e[j - i].is_zero() {
                s = &s + &(&y[i] * &e[j - i]).scale(&int(i as i64));
            }
        }
        e.push(s.scale(&int(j as i64).recip()));
    }
    e
}

fn grids_equal(a: &[QSeries], b: &[QSeries], trunc: i64) -> bool {
    a.iter().zip(b).all(|(x, y)| x.truncate(trunc) == y.truncate(trunc))
}

/// Checks `Θ = z · exp(−2 Σ_{k≥2} G_k z^k/k!)` through `z^{z_max}` and below
/// `q^q_trunc`, using `p^{1/2} − p^{−1/2} = 2 sinh(z/2)`.
pub fn check_theta_taylor(z_max: i64, q_trunc: i64) -> Result<()> {
    let zt = z_max + 1;
    let r = jq_to_z_grid(&theta(q_trunc)?.regular, zt);
    let mut lhs: Vec<QSeries> = (0..zt).map(|_| QSeries::zero(1, q_trunc)).collect();
    for (j, slot) in lhs.iter_mut().enumerate() {
        for i in (1..=j).step_by(2) {
            // 2 sinh(z/2) = Σ_{i odd} z^i / (2^{i−1} i!)
            let c = (int(2).pow(i as i32 - 1) * factorial(i as u32)).recip();
            *slot = &*slot + &r[j - i].scale(&c);
        }
    }
    let mut y: Vec<QSeries> = vec![QSeries::zero(1, q_trunc)];
    for k in 1..zt {
        let g = if k >= 2 { eisenstein_g(k, q_trunc)? } else { QSeries::zero(1, q_trunc) };
        y.push(g.scale(&(int(-2) / factorial(k as u32))));
    }
    let e = z_grid_exp(&y, q_trunc);
    let mut rhs = vec![QSeries::zero(1, q_trunc)];
    rhs.extend(e.into_iter().take(zt as usize - 1));
    if !grids_equal(&lhs, &rhs, q_trunc) {
        return Err(Error::Consistency("theta Taylor expansion mismatch".into()));
    }
    Ok(())
}

/// Checks `Θ(z,2τ)²/Θ(z,τ)² = exp(4 Σ_{k≥2} (G_k(τ) − G_k(2τ)) z^k/k!)`
/// through `z^{z_max}` and below `q^q_trunc`.
pub fn check_theta_quotient_eisenstein(z_max: i64, q_trunc: i64) -> Result<()> {
    let zt = z_max + 1;
    let lhs = jq_to_z_grid(&theta_quotient(q_trunc)?, zt);
    let mut y: Vec<QSeries> = vec![QSeries::zero(1, q_trunc)];
    for k in 1..zt {
        if k < 2 {
            y.push(QSeries::zero(1, q_trunc));
            continue;
        }
        let g = eisenstein_g(k, q_trunc)?;
        let g2 = eisenstein_g(k, (q_trunc + 1) / 2)?.scale_q(2).truncate(q_trunc);
        y.push((&g - &g2).scale(&(int(4) / factorial(k as u32))));
    }
    let rhs = z_grid_exp(&y, q_trunc);
    if !grids_equal(&lhs, &rhs, q_trunc) {
        return Err(Error::Consistency("theta quotient Eisenstein expansion mismatch".into()));
    }
    Ok(())
}

/// Raw q^n coefficient of [`km_kernel`] (zero for negative `n`).
pub fn km_kernel_coefficient(n: i64) -> Result<PLaurent> {
    if n < 0 {
        return Ok(PLaurent::zero());
    }
    km_kernel_product(n + 1).get(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_leading_terms() {
        let t = theta(10).unwrap();
        assert!(t.regular.coeff(0).is_one());
        let sq = theta_squared(10).unwrap();
        assert_eq!(sq.coeff(0), theta_prefactor_squared());
        assert!(sq.is_symmetric());
    }

    #[test]
    fn inverse_theta_square_terms() {
        let inv = inv_theta_sq(12).unwrap();
        assert_eq!(inv.regular.coeff(1), PLaurent::constant(int(2)));
        assert_eq!(inv.regular.coeff(2), PLaurent::from_integers([(1, 3), (-1, 3)]));
        assert!(inv.regular.coeff(0).is_zero());
        assert!(inv.regular.is_symmetric());
        assert_eq!(inv.polar, PoleToken::inverse_theta_polar());
    }

    #[test]
    fn km_kernel_examples() {
        let k = km_kernel(8).unwrap();
        assert!(k.coeff(0).is_one());
        assert_eq!(k.coeff(1), PLaurent::from_integers([(1, 2), (0, 12), (-1, 2)]));
        let shifted = km_closed_sum(3);
        assert_eq!(shifted.coeff(1), PLaurent::constant(int(1)));
        assert_eq!(shifted.coeff(3), PLaurent::from_integers([(1, 2), (-1, 2)]));
        assert_eq!(shifted.coeff(5), PLaurent::from_integers([(2, 3), (-2, 3)]));
    }

    #[test]
    fn closed_sum_is_odd_part_of_inverse() {
        check_closed_sum_from_inv_theta(10).unwrap();
    }

    #[test]
    fn taylor_identities() {
        check_theta_taylor(9, 10).unwrap();
        check_theta_quotient_eisenstein(8, 10).unwrap();
    }

    #[test]
    fn kernel_coefficients_beyond_cache_and_negative() {
        assert!(km_kernel_coefficient(-2).unwrap().is_zero());
        let c = km_kernel_coefficient(3).unwrap();
        assert!(c.is_symmetric());
    }
}
