//! Polynomial rings of (quasi)modular forms and recognition of q-series as
//! ring elements by exact linear algebra.
//!
//! Generators are `G₂, F₂, G₄, G₆`, of weights 2, 2, 4, 6. The four rings are
//! `Mod(SL₂) = C[G₄, G₆]`, `QMod(SL₂) = C[G₂, G₄, G₆]`,
//! `Mod(Γ₀(2)) = C[F₂, G₄]` and `QMod(Γ₀(2)) = C[G₂, F₂, G₄]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::forms::{eisenstein_g, f2};
use crate::modular::linalg::{independent_rows, rank, solve_square};
use crate::rational::{fmt_rational, int, parse_rational, Rational};
use crate::series::QSeries;

/// Exponent vector over the generators `(G₂, F₂, G₄, G₆)`.
pub type Monomial = [u32; 4];

const GENERATOR_WEIGHTS: [i64; 4] = [2, 2, 4, 6];

/// Minimum number of matched coefficients beyond the basis size that a
/// recognition must have.
pub const SURPLUS_EQUATIONS: usize = 5;

/// Which ring an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingTag {
    /// Modular forms for SL₂(Z): `C[G₄, G₆]`.
    #[serde(rename = "SL2-mod")]
    Sl2Mod,
    /// Quasimodular forms for SL₂(Z): `C[G₂, G₄, G₆]`.
    #[serde(rename = "SL2-qmod")]
    Sl2QMod,
    /// Modular forms for Γ₀(2): `C[F₂, G₄]`.
    #[serde(rename = "Gamma0(2)-mod")]
    Gamma0Mod,
    /// Quasimodular forms for Γ₀(2): `C[G₂, F₂, G₄]`.
    #[serde(rename = "Gamma0(2)-qmod")]
    Gamma0QMod,
}

impl RingTag {
    /// Generators allowed in this ring, as a mask over `(G₂, F₂, G₄, G₆)`.
    fn allowed(self) -> [bool; 4] {
        match self {
            RingTag::Sl2Mod => [false, false, true, true],
            RingTag::Sl2QMod => [true, false, true, true],
            RingTag::Gamma0Mod => [false, true, true, false],
            RingTag::Gamma0QMod => [true, true, true, false],
        }
    }

    /// True for the quasimodular rings (those containing `G₂`).
    pub fn is_quasimodular(self) -> bool {
        self.allowed()[0]
    }

    /// Tag name used in JSON.
    pub fn name(self) -> &'static str {
        match self {
            RingTag::Sl2Mod => "SL2-mod",
            RingTag::Sl2QMod => "SL2-qmod",
            RingTag::Gamma0Mod => "Gamma0(2)-mod",
            RingTag::Gamma0QMod => "Gamma0(2)-qmod",
        }
    }
}

/// Total weight of a monomial.
pub fn monomial_weight(m: &Monomial) -> i64 {
    m.iter().zip(GENERATOR_WEIGHTS).map(|(&e, w)| e as i64 * w).sum()
}

/// All monomials of the given weight in the ring, in lexicographic order.
pub fn monomial_basis(ring: RingTag, weight: i64) -> Vec<Monomial> {
    let allowed = ring.allowed();
    let mut out = Vec::new();
    if weight < 0 {
        return out;
    }
    fn rec(i: usize, left: i64, allowed: &[bool; 4], cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == 4 {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        let w = GENERATOR_WEIGHTS[i];
        let max = if allowed[i] { left / w } else { 0 };
        for e in 0..=max {
            cur[i] = e as u32;
            rec(i + 1, left - e * w, allowed, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, weight, &allowed, &mut [0; 4], &mut out);
    out.sort_unstable();
    out
}

/// A homogeneous polynomial in the generators, tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: RingTag,
    weight: i64,
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    /// Builds an element, checking that every monomial has the stated weight
    /// and uses only generators of the ring.
    pub fn new<I>(ring: RingTag, weight: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let allowed = ring.allowed();
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if monomial_weight(&m) != weight {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m:?} does not have weight {weight}"
                )));
            }
            if m.iter().zip(allowed).any(|(&e, ok)| e > 0 && !ok) {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m:?} is not in {}",
                    ring.name()
                )));
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(RingElement {
            ring,
            weight,
            terms: map,
        })
    }

    /// Ring tag.
    pub fn ring(&self) -> RingTag {
        self.ring
    }

    /// Weight.
    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Nonzero terms.
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// q-expansion known below `q^trunc`.
    pub fn evaluate(&self, trunc: i64) -> Result<QSeries> {
        let gens = Generators::new(trunc)?;
        let mut out = QSeries::zero(1, trunc);
        for (m, c) in &self.terms {
            out = &out + &gens.monomial(m).scale(c);
        }
        Ok(out)
    }

    /// JSON form `{ring, weight, terms: [[e_G2, e_F2, e_G4, e_G6, "num/den"], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.name(),
            "weight": self.weight,
            "terms": self
                .terms
                .iter()
                .map(|(m, c)| serde_json::json!([m[0], m[1], m[2], m[3], fmt_rational(c)]))
                .collect::<Vec<_>>(),
        })
    }

    /// Parses the form produced by [`RingElement::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("bad ring element JSON".into());
        let ring: RingTag =
            serde_json::from_value(v.get("ring").cloned().ok_or_else(bad)?).map_err(|_| bad())?;
        let weight = v.get("weight").and_then(|w| w.as_i64()).ok_or_else(bad)?;
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(bad)? {
            let arr = t.as_array().filter(|a| a.len() == 5).ok_or_else(bad)?;
            let mut m = [0u32; 4];
            for (i, slot) in m.iter_mut().enumerate() {
                *slot = arr[i].as_u64().ok_or_else(bad)? as u32;
            }
            terms.push((m, parse_rational(arr[4].as_str().ok_or_else(bad)?)?));
        }
        RingElement::new(ring, weight, terms)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["G2", "F2", "G4", "G6"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", fmt_rational(c))?;
            for (e, name) in m.iter().zip(NAMES) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// q-expansions of the four generators at a common truncation.
struct Generators {
    trunc: i64,
    series: [QSeries; 4],
}

impl Generators {
    fn new(trunc: i64) -> Result<Self> {
        Ok(Generators {
            trunc,
            series: [
                eisenstein_g(2, trunc)?,
                f2(trunc)?,
                eisenstein_g(4, trunc)?,
                eisenstein_g(6, trunc)?,
            ],
        })
    }

    fn monomial(&self, m: &Monomial) -> QSeries {
        let mut out = QSeries::one(self.trunc);
        for (s, &e) in self.series.iter().zip(m) {
            for _ in 0..e {
                out = &out * s;
            }
        }
        out
    }
}

/// Outcome of [`recognize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    /// The series equals this ring element to the requested order.
    Member(RingElement),
    /// No ring element matches; `residual` is the difference between the
    /// series and the best fit on a maximal independent set of coefficients.
    NotMember { residual: QSeries },
}

/// Recognizes `f` as an element of the ring of the given weight, matching
/// coefficients of `q^0 … q^max_order`.
///
/// The monomial basis must be overdetermined by at least
/// [`SURPLUS_EQUATIONS`] coefficients; otherwise the problem is reported as
/// underdetermined.
pub fn recognize(f: &QSeries, weight: i64, ring: RingTag, max_order: i64) -> Result<Recognition> {
    let f = f.normalize_denom();
    if f.exp_denom() != 1 {
        return Err(Error::InvalidArgument(
            "recognition needs integer q-exponents".into(),
        ));
    }
    if f.trunc() <= max_order {
        return Err(Error::Underdetermined(format!(
            "series known below q^{} but matching requested to q^{max_order}",
            f.trunc()
        )));
    }
    let basis = monomial_basis(ring, weight);
    let lowest = f.valuation().unwrap_or(0).min(0);
    let n_eq = (max_order - lowest + 1) as usize;
    if n_eq < basis.len() + SURPLUS_EQUATIONS {
        return Err(Error::Underdetermined(format!(
            "{} coefficients for a basis of size {} (need {} surplus)",
            n_eq,
            basis.len(),
            SURPLUS_EQUATIONS
        )));
    }
    let gens = Generators::new(max_order + 1)?;
    let evals: Vec<QSeries> = basis.iter().map(|m| gens.monomial(m)).collect();
    let rows: Vec<Vec<Rational>> = (lowest..=max_order)
        .map(|n| evals.iter().map(|s| s.coeff(n)).collect())
        .collect();
    let picked = independent_rows(&rows);
    if picked.len() < basis.len() {
        return Err(Error::Underdetermined(format!(
            "coefficients up to q^{max_order} determine only {} of {} basis elements",
            picked.len(),
            basis.len()
        )));
    }
    let a: Vec<Vec<Rational>> = picked.iter().map(|&i| rows[i].clone()).collect();
    let b: Vec<Rational> = picked.iter().map(|&i| f.coeff(lowest + i as i64)).collect();
    let x = solve_square(&a, &b).expect("independent rows give a nonsingular system");
    let mut fit = QSeries::zero(1, max_order + 1);
    for (s, c) in evals.iter().zip(&x) {
        fit = &fit + &s.scale(c);
    }
    let residual = &f.truncate(max_order + 1) - &fit;
    if residual.is_zero() {
        Ok(Recognition::Member(RingElement::new(
            ring,
            weight,
            basis.into_iter().zip(x),
        )?))
    } else {
        Ok(Recognition::NotMember { residual })
    }
}

/// Formal partial derivative with respect to the generator `G₂`.
pub fn formal_dg2(e: &RingElement) -> Result<RingElement> {
    if !e.ring.is_quasimodular() {
        return Err(Error::InvalidArgument(format!(
            "d/dG2 is defined on quasimodular rings, not {}",
            e.ring.name()
        )));
    }
    let terms = e.terms.iter().filter(|(m, _)| m[0] > 0).map(|(m, c)| {
        let mut d = *m;
        d[0] -= 1;
        (d, c * int(m[0] as i64))
    });
    RingElement::new(e.ring, e.weight - 2, terms)
}

/// Checks that a quasimodular form for Γ₀(2) of weight `k` whose Fourier
/// coefficients are supported on multiples of `m` (up to `q^order`) is zero
/// for `k ≠ 0`, and constant for `k = 0`.
///
/// Returns `false` when the linear system admits other solutions, which is
/// what happens for `m = 2`.
pub fn vanishing_lemma_check(m: i64, k: i64, order: i64) -> Result<bool> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus {m} must be at least 2")));
    }
    let basis = monomial_basis(RingTag::Gamma0QMod, k);
    let support: Vec<i64> = (1..=order).filter(|n| n % m != 0).collect();
    if support.len() < basis.len() + SURPLUS_EQUATIONS {
        return Err(Error::Inconclusive(format!(
            "{} vanishing conditions for a basis of size {}",
            support.len(),
            basis.len()
        )));
    }
    let gens = Generators::new(order + 1)?;
    let evals: Vec<QSeries> = basis.iter().map(|mono| gens.monomial(mono)).collect();
    let rows: Vec<Vec<Rational>> = support
        .iter()
        .map(|&n| evals.iter().map(|s| s.coeff(n)).collect())
        .collect();
    let kernel_dim = basis.len() - rank(&rows);
    if k == 0 {
        // the constants always satisfy the conditions
        Ok(kernel_dim == 1)
    } else {
        Ok(kernel_dim == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::forms::eta_quotient;
    use crate::rational::frac;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(RingTag::Gamma0QMod, 2).len(), 2);
        assert_eq!(monomial_basis(RingTag::Gamma0Mod, 12).len(), 4);
        assert_eq!(monomial_basis(RingTag::Sl2Mod, 12).len(), 2);
        assert_eq!(monomial_basis(RingTag::Sl2QMod, 6).len(), 3);
        assert_eq!(monomial_basis(RingTag::Gamma0QMod, 0), vec![[0, 0, 0, 0]]);
        assert!(monomial_basis(RingTag::Gamma0QMod, 3).is_empty());
    }

    #[test]
    fn recognizes_g2_combination() {
        let t = 30;
        let g2 = eisenstein_g(2, t).unwrap();
        let g2_2 = eisenstein_g(2, t / 2).unwrap().scale_q(2);
        let f = &g2.scale(&int(2)) - &g2_2.scale(&int(2));
        match recognize(&f, 2, RingTag::Gamma0QMod, 20).unwrap() {
            Recognition::Member(e) => {
                assert_eq!(e.coeff(&[1, 0, 0, 0]), int(1));
                assert_eq!(e.coeff(&[0, 1, 0, 0]), int(1));
            }
            other => panic!("not recognized: {other:?}"),
        }
    }

    #[test]
    fn recognizes_eta_products_in_modular_ring() {
        let a = eta_quotient(&[(1, 8), (2, 8)], 30);
        assert!(matches!(
            recognize(&a, 8, RingTag::Gamma0Mod, 25).unwrap(),
            Recognition::Member(_)
        ));
        let b = eta_quotient(&[(1, 48), (2, -24)], 30);
        assert!(matches!(
            recognize(&b, 12, RingTag::Gamma0Mod, 25).unwrap(),
            Recognition::Member(_)
        ));
    }

    #[test]
    fn junk_is_rejected_with_residual() {
        let f = QSeries::from_coeffs(1, 30, [(1, int(1)), (5, int(1))]);
        match recognize(&f, 4, RingTag::Gamma0QMod, 20).unwrap() {
            Recognition::NotMember { residual } => assert!(!residual.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn underdetermined_when_too_few_coefficients() {
        let f = eisenstein_g(4, 30).unwrap();
        assert!(matches!(
            recognize(&f, 4, RingTag::Gamma0QMod, 4),
            Err(Error::Underdetermined(_))
        ));
        assert!(matches!(
            recognize(&f.truncate(3), 4, RingTag::Gamma0QMod, 20),
            Err(Error::Underdetermined(_))
        ));
    }

    #[test]
    fn dg2_rules() {
        let g2 = RingElement::new(RingTag::Gamma0QMod, 2, [([1, 0, 0, 0], int(1))]).unwrap();
        assert_eq!(
            formal_dg2(&g2).unwrap(),
            RingElement::new(RingTag::Gamma0QMod, 0, [([0, 0, 0, 0], int(1))]).unwrap()
        );
        let f2e = RingElement::new(RingTag::Gamma0QMod, 2, [([0, 1, 0, 0], int(1))]).unwrap();
        assert!(formal_dg2(&f2e).unwrap().terms().is_empty());
        let e = RingElement::new(RingTag::Sl2QMod, 8, [([2, 0, 1, 0], int(1))]).unwrap();
        assert_eq!(
            formal_dg2(&e).unwrap(),
            RingElement::new(RingTag::Sl2QMod, 6, [([1, 0, 1, 0], int(2))]).unwrap()
        );
        let modular = RingElement::new(RingTag::Gamma0Mod, 2, [([0, 1, 0, 0], int(1))]).unwrap();
        assert!(formal_dg2(&modular).is_err());
    }

    #[test]
    fn invalid_monomials_rejected() {
        assert!(RingElement::new(RingTag::Gamma0Mod, 2, [([1, 0, 0, 0], int(1))]).is_err());
        assert!(RingElement::new(RingTag::Gamma0QMod, 4, [([1, 0, 0, 0], int(1))]).is_err());
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishing_lemma_check(3, 4, 30).unwrap());
        assert!(vanishing_lemma_check(3, 0, 30).unwrap());
        assert!(!vanishing_lemma_check(2, 8, 30).unwrap());
        assert!(matches!(vanishing_lemma_check(3, 12, 8), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn json_round_trip() {
        let e = RingElement::new(
            RingTag::Gamma0QMod,
            6,
            [([1, 0, 1, 0], frac(1, 3)), ([0, 3, 0, 0], int(-2))],
        )
        .unwrap();
        let v = e.to_json();
        assert_eq!(v["ring"], "Gamma0(2)-qmod");
        assert_eq!(RingElement::from_json(&v).unwrap(), e);
    }
}
