//! Gromov-Witten side: the multiple-cover formula for `N_{g,β}`, the BPS
//! numbers `n_{g,β}`, the Laurent polynomials `f_β^KM` and the passage from
//! `p` to `z = log p`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::CurveClass;
use crate::rational::{int, odd_divisors, pow_int, Rational};
use crate::series::{plaurent_to_zseries, zseries_extract_genus, GenusTable, PLaurent};
use crate::theta::km_kernel_coefficient;

use super::tables::{HilbertEuler, OmegaTable};

/// `N_{g,β} = 2 Σ_{odd k | β} k^{2g−3} ω_g(β²/2k²)`.
pub fn km_n(table: &OmegaTable, g: i64, beta: &CurveClass) -> Result<Rational> {
    if beta.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sq = beta.square();
    let mut s = Rational::zero();
    for k in odd_divisors(beta.divisibility()) {
        // (β/k)² is even, so β²/2k² is an integer
        let w = table.omega(g, sq / (2 * k * k))?;
        if !w.is_zero() {
            s += pow_int(k, 2 * g - 3) * w;
        }
    }
    Ok(s * int(2))
}

/// `N^Q_{g,β} = 4 N_{g,β}`, the invariant of the Enriques Calabi-Yau threefold.
pub fn nq(table: &OmegaTable, g: i64, beta: &CurveClass) -> Result<Rational> {
    Ok(km_n(table, g, beta)? * int(4))
}

/// `n^Q_{g,β} = 8 ω_g(β²/2)`.
pub fn n_small(table: &OmegaTable, g: i64, beta: &CurveClass) -> Result<Rational> {
    let sq = beta.square();
    if sq < 0 {
        return Ok(Rational::zero());
    }
    Ok(table.omega(g, sq / 2)? * int(8))
}

/// `[Θ(z,2τ)²/Θ(z,τ)² · η(2τ)⁸/η(τ)^{16}]_{q^{β²/2}}`, zero for `β² < 0`.
pub fn f_km_raw(beta: &CurveClass) -> Result<PLaurent> {
    let sq = beta.square();
    if sq < 0 {
        return Ok(PLaurent::zero());
    }
    km_kernel_coefficient(sq / 2)
}

/// The closed double sum for the same coefficient, with `b(x) = [η^{−12}]_{q^x}`:
///
/// ```text
/// Σ_{n>0, r>0 odd} (n + r) b(β²/2 − rn − r²/2) (p^n + p^{−n}) + Σ_{r>0 odd} r b(β²/2 − r²/2).
/// ```
pub fn f_km_double_sum(beta_square: i64, hilb: &HilbertEuler) -> Result<PLaurent> {
    let mut out = PLaurent::zero();
    let mut r = 1;
    // b vanishes below q^{−1/2}
    while r * r <= beta_square + 1 {
        out.add_term(0, int(r) * hilb.b_half(beta_square - r * r)?);
        let mut n = 1;
        while r * r + 2 * r * n <= beta_square + 1 {
            let b = hilb.b_half(beta_square - r * r - 2 * r * n)?;
            if !b.is_zero() {
                let c = int(n + r) * b;
                out.add_term(n, c.clone());
                out.add_term(-n, c);
            }
            n += 1;
        }
        r += 2;
    }
    Ok(out)
}

/// `f_β^KM = 8 [Θ(z,2τ)²/Θ(z,τ)² · η(2τ)⁸/η(τ)^{16}]_{q^{β²/2}}`.
///
/// The raw coefficient is compared with [`f_km_double_sum`]; a mismatch is a
/// consistency error.
pub fn f_km(beta: &CurveClass) -> Result<PLaurent> {
    let raw = f_km_raw(beta)?;
    let sq = beta.square();
    if sq >= 0 {
        let hilb = HilbertEuler::new(sq / 2 + 1);
        if f_km_double_sum(sq, &hilb)? != raw {
            return Err(Error::Consistency(format!(
                "kernel coefficient and double sum disagree at beta^2 = {sq}"
            )));
        }
    }
    Ok(raw.scale(&int(8)))
}

/// Substitutes `p = e^z` into a symmetric Laurent polynomial and reads off
/// `n_g` from `Σ_g n_g (−1)^{g−1} z^{2g−2}`, for `2g − 2 < z_trunc`.
pub fn gwpt_bridge(f: &PLaurent, z_trunc: i64) -> Result<GenusTable> {
    if let Some(e) = f.first_asymmetry() {
        return Err(Error::Asymmetric(e));
    }
    zseries_extract_genus(&plaurent_to_zseries(f, z_trunc))
}

/// `N^−_{g, d f}`: zero for odd `d` and `N_{g, d f}` for even `d`.
pub fn torsion_n_minus(table: &OmegaTable, g: i64, d: i64) -> Result<Rational> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!("fiber degree {d} must be positive")));
    }
    if d % 2 == 1 {
        return Ok(Rational::zero());
    }
    km_n(table, g, &CurveClass::slice(0, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tables::{omega_table, sigma_minus_one};
    use crate::rational::frac;
    use crate::theta::E8Vector;

    #[test]
    fn fiber_class_values() {
        let t = omega_table(3, 2).unwrap();
        assert_eq!(km_n(&t, 1, &CurveClass::slice(0, 1)).unwrap(), int(2));
        for d in 1..=12 {
            let expected = int(2) * sigma_minus_one(&int(d)) - sigma_minus_one(&frac(d, 2));
            assert_eq!(km_n(&t, 1, &CurveClass::slice(0, d)).unwrap(), expected);
            assert_eq!(km_n(&t, 2, &CurveClass::slice(0, d)).unwrap(), int(0));
        }
        assert_eq!(torsion_n_minus(&t, 1, 3).unwrap(), int(0));
        assert_eq!(torsion_n_minus(&t, 1, 2).unwrap(), int(2));
        assert_eq!(torsion_n_minus(&t, 2, 2).unwrap(), int(0));
        assert!(torsion_n_minus(&t, 1, 0).is_err());
    }

    #[test]
    fn primitive_classes_use_one_term() {
        let t = omega_table(3, 3).unwrap();
        let beta = CurveClass::new(1, 2, E8Vector::basis(0));
        assert_eq!(beta.square(), 2);
        for g in 1..=3 {
            assert_eq!(km_n(&t, g, &beta).unwrap(), t.omega(g, 1).unwrap() * int(2));
            assert_eq!(nq(&t, g, &beta).unwrap(), t.omega(g, 1).unwrap() * int(8));
        }
    }

    #[test]
    fn f_km_examples() {
        let f = f_km_raw(&CurveClass::slice(1, 1)).unwrap();
        assert_eq!(f, PLaurent::from_integers([(1, 2), (0, 12), (-1, 2)]));
        assert_eq!(f_km(&CurveClass::slice(1, 1)).unwrap(), f.scale(&int(8)));
        assert!(f_km_raw(&CurveClass::slice(1, 0)).unwrap().is_one());
        let neg = CurveClass::new(0, 0, E8Vector::basis(3));
        assert!(f_km(&neg).unwrap().is_zero());
    }

    #[test]
    fn bridge_examples() {
        let one = gwpt_bridge(&PLaurent::one(), 9).unwrap();
        assert_eq!(one.values().len(), 1);
        assert_eq!(one.get(1).unwrap(), int(1));
        let t = gwpt_bridge(&PLaurent::from_integers([(1, 1), (0, -2), (-1, 1)]), 9).unwrap();
        assert_eq!(t.get(1).unwrap(), int(0));
        assert_eq!(t.get(2).unwrap(), int(-1));
        assert_eq!(t.get(3).unwrap(), frac(1, 12));
        assert!(matches!(
            gwpt_bridge(&PLaurent::from_integers([(1, 1)]), 5),
            Err(Error::Asymmetric(_))
        ));
    }
}
