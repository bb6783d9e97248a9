//! The E8-refined series `F^KM_{g,ℓ}(ζ, q)` and the identities they satisfy:
//! dependence of coefficients on square and divisibility only, and the
//! `d/dG₂` transport between consecutive genera.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hecke::hecke_v_e8;
use crate::modular::{delta, formal_dg2, recognize, Recognition, RingElement, RingTag};
use crate::rational::{int, odd_divisors, pow_int, Rational};
use crate::series::QSeries;
use crate::theta::{e8_vectors, theta_e8_bounded, E8QSeries, E8Vector};

use super::tables::OmegaTable;

fn f_km_level_one(table: &OmegaTable, g: i64, trunc: i64, norm_bound: i64) -> Result<E8QSeries> {
    if trunc - 1 > table.max_n() {
        return Err(Error::shortfall("q-order of the omega table", trunc - 1, table.max_n()));
    }
    let w = table.genus_series(g)?.truncate(trunc).scale(&int(8));
    theta_e8_bounded(trunc, norm_bound).mul_qseries(&w)
}

/// `F^KM_{g,ℓ}`, known below `q^trunc` for E8 vectors of norm at most
/// `norm_bound`: `8 Θ_{E8} Σ_n ω_g(n) q^n` at `ℓ = 1` and its image under
/// `V_ℓ` at weight `2g − 2` otherwise.
pub fn f_km_series(table: &OmegaTable, g: i64, ell: i64, trunc: i64, norm_bound: i64) -> Result<E8QSeries> {
    if ell < 1 || trunc < 0 {
        return Err(Error::InvalidArgument(format!("level {ell}, truncation {trunc}")));
    }
    let base = f_km_level_one(table, g, ell * trunc, norm_bound)?;
    let lifted = hecke_v_e8(&base, ell, 2 * g - 2)?;
    if lifted.trunc() < trunc {
        return Err(Error::shortfall("q-order of the Hecke lift", trunc, lifted.trunc()));
    }
    Ok(E8QSeries::from_coeffs(
        trunc,
        norm_bound,
        lifted.coeffs().iter().filter(|((n, _), _)| *n < trunc).map(|(k, v)| (*k, v.clone())),
    ))
}

/// `[F^KM_{g,ℓ}]_{q^d ζ^α} = Σ_{odd k | (ℓ, d, α)} 8 k^{2g−3} ω_g((2ℓd − |α|²)/2k²)`.
pub fn f_km_coefficient_direct(table: &OmegaTable, g: i64, ell: i64, d: i64, alpha: &E8Vector) -> Result<Rational> {
    let sq = 2 * ell * d - alpha.norm();
    let mut s = Rational::zero();
    for k in odd_divisors(ell.gcd(&d).gcd(&alpha.divisibility())) {
        let w = table.omega(g, sq / (2 * k * k))?;
        if !w.is_zero() {
            s += pow_int(k, 2 * g - 3) * w;
        }
    }
    Ok(s * int(8))
}

/// Result of the coefficient-dependence sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceReport {
    /// Coefficients compared between the Hecke and direct paths.
    pub compared: usize,
    /// Coefficients where the two paths differ, as `(g, ℓ, d, α)`.
    pub path_mismatches: Vec<(i64, i64, i64, E8Vector)>,
    /// Keys `(g, 2ℓd − |α|², gcd(ℓ, d, div α))` seen with two different values.
    pub dependence_violations: Vec<(i64, i64, i64)>,
}

impl DependenceReport {
    /// True when both paths agree and every value depends only on its key.
    pub fn passed(&self) -> bool {
        self.path_mismatches.is_empty() && self.dependence_violations.is_empty()
    }
}

/// For `1 ≤ g ≤ g_max`, `1 ≤ ℓ ≤ ell_max`, `0 ≤ d ≤ d_max` and
/// `|α|² ≤ norm_max`, compares the Hecke-lift coefficients of
/// `F^KM_{g,ℓ}` with the direct odd-divisor formula, and checks that the
/// value depends only on `(g, 2ℓd − |α|², gcd(ℓ, d, div α))`.
pub fn hecke_dependence_check(
    table: &OmegaTable,
    g_max: i64,
    ell_max: i64,
    d_max: i64,
    norm_max: i64,
) -> Result<DependenceReport> {
    let alphas = e8_vectors(norm_max);
    let mut report = DependenceReport {
        compared: 0,
        path_mismatches: Vec::new(),
        dependence_violations: Vec::new(),
    };
    let mut seen: HashMap<(i64, i64, i64), Rational> = HashMap::new();
    for g in 1..=g_max {
        for ell in 1..=ell_max {
            let f = f_km_series(table, g, ell, d_max + 1, norm_max)?;
            for d in 0..=d_max {
                for alpha in &alphas {
                    let lifted = f.get(d, alpha)?;
                    let direct = f_km_coefficient_direct(table, g, ell, d, alpha)?;
                    report.compared += 1;
                    if lifted != direct {
                        report.path_mismatches.push((g, ell, d, *alpha));
                    }
                    let key = (g, 2 * ell * d - alpha.norm(), ell.gcd(&d).gcd(&alpha.divisibility()));
                    match seen.get(&key) {
                        Some(v) if *v != lifted => {
                            if !report.dependence_violations.contains(&key) {
                                report.dependence_violations.push(key);
                            }
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(key, lifted);
                        }
                    }
                }
            }
        }
    }
    report.dependence_violations.sort();
    Ok(report)
}

/// Recognizes `F^KM_{g,1}/(8Θ_{E8}) · Δ = Σ_n ω_g(n) q^n · Δ` as an element
/// of the quasimodular ring of `Γ₀(2)` of weight `2g + 6`, reading the
/// quotient off the `ζ⁰` part of `F^KM_{g,1}` and using coefficients below
/// `q^trunc`.
pub fn recognize_genus_form(table: &OmegaTable, g: i64, trunc: i64) -> Result<RingElement> {
    let f = f_km_series(table, g, 1, trunc, 0)?;
    let zeta_zero = f
        .coeffs()
        .iter()
        .filter(|((_, a), _)| a.is_zero())
        .map(|((n, _), c)| (*n, c / int(8)));
    let w = QSeries::from_coeffs(1, trunc, zeta_zero);
    let target = &w * &delta(trunc);
    match recognize(&target, 2 * g + 6, RingTag::Gamma0QMod, trunc - 1)? {
        Recognition::Member(e) => Ok(e),
        Recognition::NotMember { .. } => Err(Error::Consistency(format!(
            "genus {g} form times Delta is not quasimodular of weight {}",
            2 * g + 6
        ))),
    }
}

/// Checks `d/dG₂ (W_g Δ) = −W_{g−1} Δ` on recognized ring elements, where
/// `W_g = F^KM_{g,1}/(8Θ_{E8})`.
pub fn dg2_transport_check(table: &OmegaTable, g: i64, trunc: i64) -> Result<bool> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("transport needs genus at least 2, got {g}")));
    }
    let upper = recognize_genus_form(table, g, trunc)?;
    let lower = recognize_genus_form(table, g - 1, trunc)?;
    let derived = formal_dg2(&upper)?;
    let negated = RingElement::new(
        lower.ring(),
        lower.weight(),
        lower.terms().iter().map(|(m, c)| (*m, -c)),
    )?;
    Ok(derived == negated)
}
