//! The Hecke operator `V_ℓ` for Γ₀(2) in its Fourier-coefficient form:
//!
//! ```text
//! c'(v, r) = Σ_{odd a | (v, r, ℓ)} a^{k−1} c(ℓ v / a², r / a).
//! ```
//!
//! For plain q-series the vector part is absent and `a` runs over odd
//! divisors of `gcd(v, ℓ)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{odd_divisors, pow_int, Rational};
use crate::series::QSeries;
use crate::theta::E8QSeries;

fn check_ell(ell: i64) -> Result<()> {
    if ell < 1 {
        return Err(Error::InvalidArgument(format!("Hecke index {ell} must be positive")));
    }
    Ok(())
}

/// Output keys `v` reached from input exponent `n` through the odd divisor
/// `a | ℓ`: `v = n a²/ℓ`, required to be an integer divisible by `a`.
fn target_exponent(n: i64, a: i64, ell: i64) -> Option<i64> {
    let num = n * a * a;
    if num % ell != 0 {
        return None;
    }
    let v = num / ell;
    (v % a == 0).then_some(v)
}

/// `f |_k V_ℓ` for a q-series with integer exponents, known below
/// `q^{⌊trunc/ℓ⌋}`.
pub fn hecke_v(f: &QSeries, ell: i64, k: i64) -> Result<QSeries> {
    check_ell(ell)?;
    let out_trunc = f.normalize_denom().trunc().div_euclid(ell);
    hecke_v_to(f, ell, k, out_trunc)
}

/// `f |_k V_ℓ` known below `q^out_trunc`; fails when a demanded input
/// coefficient is not known.
pub fn hecke_v_to(f: &QSeries, ell: i64, k: i64, out_trunc: i64) -> Result<QSeries> {
    check_ell(ell)?;
    let f = f.normalize_denom();
    if f.exp_denom() != 1 {
        return Err(Error::InvalidArgument("Hecke operator needs integer q-exponents".into()));
    }
    if (out_trunc - 1) * ell >= f.trunc() {
        return Err(Error::Underdetermined(format!(
            "coefficient at q^{} needs input at q^{}, known below q^{}",
            out_trunc - 1,
            (out_trunc - 1) * ell,
            f.trunc()
        )));
    }
    let divisors = odd_divisors(ell);
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for (n, c) in f.iter() {
        for &a in &divisors {
            if let Some(v) = target_exponent(n, a, ell) {
                if v < out_trunc {
                    *out.entry(v).or_insert_with(Rational::zero) += pow_int(a, k - 1) * c;
                }
            }
        }
    }
    Ok(QSeries::from_coeffs(1, out_trunc, out))
}

/// `f |_k V_ℓ` for a series graded by E8 vectors, known below
/// `q^{⌊trunc/ℓ⌋}` with the same norm bound.
pub fn hecke_v_e8(f: &E8QSeries, ell: i64, k: i64) -> Result<E8QSeries> {
    check_ell(ell)?;
    let out_trunc = f.trunc().div_euclid(ell);
    let divisors = odd_divisors(ell);
    let mut out = E8QSeries::zero(out_trunc, f.norm_bound());
    for (&(n, alpha), c) in f.coeffs() {
        for &a in &divisors {
            if let Some(v) = target_exponent(n, a, ell) {
                out.add_term(v, alpha.scale(a), pow_int(a, k - 1) * c);
            }
        }
    }
    Ok(out)
}

/// Direct evaluation of one output coefficient of `f |_k V_ℓ` for an E8
/// series, for cross-checking.
pub fn hecke_coefficient_e8(
    f: &E8QSeries,
    ell: i64,
    k: i64,
    v: i64,
    r: &crate::theta::E8Vector,
) -> Result<Rational> {
    check_ell(ell)?;
    let g = v.gcd(&ell).gcd(&r.divisibility());
    let mut s = Rational::zero();
    for a in odd_divisors(ell) {
        if g % a != 0 {
            continue;
        }
        let rr = r.div_exact(a).expect("a divides r");
        s += pow_int(a, k - 1) * f.get(ell * v / (a * a), &rr)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::eta_quotient;
    use crate::rational::int;
    use crate::theta::{scale_q_e8, theta_e8, E8Vector};

    #[test]
    fn v1_is_identity() {
        let f = QSeries::from_integers(10, &[3, 0, -1, 4, 5]);
        assert_eq!(hecke_v(&f, 1, 7).unwrap(), f);
        let t = theta_e8(3);
        assert_eq!(hecke_v_e8(&t, 1, 4).unwrap(), t);
        assert_eq!(scale_q_e8(&hecke_v_e8(&t, 1, 4).unwrap(), 2), hecke_v_e8(&scale_q_e8(&t, 2), 1, 4).unwrap());
    }

    #[test]
    fn v2_reindexes() {
        // only a = 1 is an odd divisor of 2
        let f = eta_quotient(&[(2, -12)], 41).scale(&int(2)).normalize_denom();
        let g = hecke_v(&f, 2, -1).unwrap();
        assert_eq!(g.trunc(), 20);
        for n in -1..20 {
            assert_eq!(g.coeff(n), f.coeff(2 * n));
        }
    }

    #[test]
    fn v3_uses_odd_divisor() {
        let f = QSeries::from_integers(30, &(1..=30).collect::<Vec<i64>>());
        let g = hecke_v(&f, 3, 2).unwrap();
        // c'(3) = c(9) + 3 c(1)
        assert_eq!(g.coeff(3), f.coeff(9) + int(3) * f.coeff(1));
        assert_eq!(g.coeff(2), f.coeff(6));
        assert!(matches!(hecke_v_to(&f, 3, 2, 20), Err(Error::Underdetermined(_))));
    }

    #[test]
    fn e8_direct_matches_lift() {
        let t = theta_e8(7);
        let h = hecke_v_e8(&t, 3, 4).unwrap();
        assert_eq!(h.trunc(), 2);
        for (&(n, a), c) in h.coeffs() {
            assert_eq!(*c, hecke_coefficient_e8(&t, 3, 4, n, &a).unwrap());
        }
        let b0 = E8Vector::basis(0);
        let f = E8QSeries::from_coeffs(12, 18, [((1, b0), int(1)), ((9, b0.scale(3)), int(1))]);
        let g = hecke_v_e8(&f, 3, 4).unwrap();
        // a = 1 and a = 3 both contribute: c(9, 3b) + 3³ c(1, b)
        assert_eq!(g.coeff(3, &b0.scale(3)), int(28));
        assert_eq!(hecke_coefficient_e8(&f, 3, 4, 3, &b0.scale(3)).unwrap(), int(28));
    }
}
