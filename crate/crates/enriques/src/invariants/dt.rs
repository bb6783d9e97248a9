//! Sheaf-counting side: the invariants `dt(v)`, `DT(v)` and `VW(v)` of
//! Mukai vectors, the stable-pairs Laurent polynomials `f_β^PT` and their
//! assembly into the logarithm of the stable-pairs series.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hecke::hecke_v_to;
use crate::lattice::{mukai_invariants, orbit_representative, CurveClass, InvariantTriple, MukaiType, MukaiVector};
use crate::modular::eta_quotient;
use crate::rational::{frac, int, odd_divisors, Rational};
use crate::series::{PLaurent, PoleToken};

use super::gw::f_km;
use super::tables::HilbertEuler;

/// A source of the primitive invariants `dt(v)`.
pub trait DtSource {
    /// `dt(v)` for a nonzero Mukai vector.
    fn dt(&self, v: &MukaiVector) -> Result<Rational>;
}

/// The closed form `dt(v) = 8 [η^{−12}(τ)]_{q^{v·v/2}}`.
#[derive(Clone, Debug)]
pub struct ClosedFormDt {
    hilb: HilbertEuler,
}

impl ClosedFormDt {
    /// Closed form valid for `v·v ≤ 2 max_n − 1`.
    pub fn new(max_n: i64) -> Self {
        ClosedFormDt {
            hilb: HilbertEuler::new(max_n),
        }
    }

    /// The Hilbert scheme table in use.
    pub fn hilb(&self) -> &HilbertEuler {
        &self.hilb
    }
}

impl DtSource for ClosedFormDt {
    fn dt(&self, v: &MukaiVector) -> Result<Rational> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.hilb.b_half(v.square())? * int(8))
    }
}

/// The source that returns zero for every vector.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroDt;

impl DtSource for ZeroDt {
    fn dt(&self, v: &MukaiVector) -> Result<Rational> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Rational::zero())
    }
}

/// Values indexed by invariant triple; unlisted triples are an error.
#[derive(Clone, Debug, Default)]
pub struct TableDt {
    values: BTreeMap<InvariantTriple, Rational>,
}

impl TableDt {
    /// Table from explicit entries.
    pub fn new(values: BTreeMap<InvariantTriple, Rational>) -> Self {
        TableDt { values }
    }

    /// The entries.
    pub fn values(&self) -> &BTreeMap<InvariantTriple, Rational> {
        &self.values
    }
}

impl DtSource for TableDt {
    fn dt(&self, v: &MukaiVector) -> Result<Rational> {
        let t = mukai_invariants(v)?;
        self.values
            .get(&t)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no dt value for {t:?}")))
    }
}

/// Recovers `dt` from the polynomials `f_β^KM` alone.
///
/// `dt` is taken to vanish on even type, on odd type with `v²/m²` even, and
/// for `v² < −1`. For odd type with `v²/m²` odd the representative
/// `(m, β, 0)` with `β = m α_d` gives
///
/// ```text
/// [f_β^KM]_{p⁰} = Σ_{r>0} (−1)^{r−1} r dt(r, β, 0),
/// ```
///
/// whose `r = m` term is the unknown. Terms with `r < m` have smaller
/// divisibility and terms with `r > m` have smaller square, so the recursion
/// terminates. Solved triples are memoized.
#[derive(Debug, Default)]
pub struct SudokuDt {
    memo: Mutex<BTreeMap<InvariantTriple, Rational>>,
}

impl SudokuDt {
    /// A solver with an empty memo.
    pub fn new() -> Self {
        Self::default()
    }

    /// `dt` at an invariant triple.
    pub fn solve(&self, t: &InvariantTriple) -> Result<Rational> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(t) {
            return Ok(v.clone());
        }
        let value = self.solve_uncached(t)?;
        self.memo.lock().expect("memo lock").insert(*t, value.clone());
        Ok(value)
    }

    fn solve_uncached(&self, t: &InvariantTriple) -> Result<Rational> {
        let m = t.divisibility;
        if t.square < -1 || t.kind == MukaiType::Even || (t.square / (m * m)) % 2 == 0 {
            return Ok(Rational::zero());
        }
        let rep = orbit_representative(t)?;
        let beta = rep.beta;
        let target = f_km(&beta)?.coeff(0);
        let mut rest = Rational::zero();
        let mut r = 1;
        while r * r <= beta.square() + 1 {
            if r != m {
                let v = MukaiVector::new(r, beta, 0);
                let c = self.solve(&mukai_invariants(&v)?)? * int(r);
                if r % 2 == 1 {
                    rest += c;
                } else {
                    rest -= c;
                }
            }
            r += 1;
        }
        let sign = if m % 2 == 1 { int(1) } else { int(-1) };
        Ok((target - rest) * sign / int(m))
    }

    /// Snapshot of the solved triples.
    pub fn solved(&self) -> BTreeMap<InvariantTriple, Rational> {
        self.memo.lock().expect("memo lock").clone()
    }
}

impl DtSource for SudokuDt {
    fn dt(&self, v: &MukaiVector) -> Result<Rational> {
        self.solve(&mukai_invariants(v)?)
    }
}

/// `DT(v) = Σ_{odd k | v} dt(v/k)/k²`, with `k` dividing `(r, β, n)`.
pub fn dt_total(v: &MukaiVector, source: &dyn DtSource) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = crate::rational::gcd_all(&[v.r, v.beta.divisibility(), v.n]);
    let mut s = Rational::zero();
    for k in odd_divisors(g) {
        let w = MukaiVector::new(
            v.r / k,
            v.beta.div_exact(k).expect("k divides beta"),
            v.n / k,
        );
        s += source.dt(&w)? / int(k * k);
    }
    Ok(s)
}

/// `VW(v) = DT(v)/4`.
pub fn vw(v: &MukaiVector, source: &dyn DtSource) -> Result<Rational> {
    Ok(dt_total(v, source)? / int(4))
}

/// `VW(v) = 2 Σ_{odd k | v} k^{−2} e(Hilb^{(β² − 2rn − r²)/2k² + 1/2} Y)`.
pub fn vw_closed_form(v: &MukaiVector, hilb: &HilbertEuler) -> Result<Rational> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = crate::rational::gcd_all(&[v.r, v.beta.divisibility(), v.n]);
    let mut s = Rational::zero();
    for k in odd_divisors(g) {
        let x = frac(v.square(), 2 * k * k) + frac(1, 2);
        s += hilb.euler_at(&x)? / int(k * k);
    }
    Ok(s * int(2))
}

/// `f_β^PT` split into a Laurent polynomial and a pole token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtSeries {
    /// The finite part.
    pub laurent: PLaurent,
    /// The part `Σ_{n>0} n c(n) p^n` with periodic `c`.
    pub pole: PoleToken,
}

impl PtSeries {
    /// The zero series.
    pub fn zero() -> Self {
        PtSeries {
            laurent: PLaurent::zero(),
            pole: PoleToken::zero(),
        }
    }

    /// True when the pole token vanishes identically.
    pub fn pole_cancels(&self) -> bool {
        self.pole.is_zero()
    }

    /// Sum.
    pub fn add(&self, o: &PtSeries) -> PtSeries {
        PtSeries {
            laurent: &self.laurent + &o.laurent,
            pole: self.pole.add(&o.pole),
        }
    }

    /// Multiplies by a constant.
    pub fn scale(&self, c: &Rational) -> PtSeries {
        PtSeries {
            laurent: self.laurent.scale(c),
            pole: self.pole.scale(c),
        }
    }

    /// Substitutes `p ↦ p^j`.
    pub fn substitute_power(&self, j: i64) -> PtSeries {
        PtSeries {
            laurent: self.laurent.substitute_power(j),
            pole: self.pole.substitute_power(j),
        }
    }
}

/// `f_β^PT` assembled from a dt source:
///
/// ```text
/// Σ_{n>0} Σ_{r>0} (n + r)(−1)^{r−1} dt(r,β,n)(p^n + p^{−n})
///   − Σ_{n>0} n dt(0,β,n) p^n + Σ_{r>0} (−1)^{r−1} r dt(r,β,0).
/// ```
///
/// The terms with `r > 0` are summed over the support `r² + 2rn ≤ β² + 1`.
/// The middle sum is periodic in `n` with period `div β` and is kept as a
/// pole token; its periodicity is checked over a second period.
pub fn f_pt(beta: &CurveClass, source: &dyn DtSource) -> Result<PtSeries> {
    if beta.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sq = beta.square();
    let mut laurent = PLaurent::zero();
    let mut r = 1;
    while r * r <= sq + 1 {
        let sign = if r % 2 == 1 { int(1) } else { int(-1) };
        laurent.add_term(0, source.dt(&MukaiVector::new(r, *beta, 0))? * int(r) * &sign);
        let mut n = 1;
        while r * r + 2 * r * n <= sq + 1 {
            let c = source.dt(&MukaiVector::new(r, *beta, n))? * int(n + r) * &sign;
            if !c.is_zero() {
                laurent.add_term(n, c.clone());
                laurent.add_term(-n, c);
            }
            n += 1;
        }
        r += 1;
    }
    let m = beta.divisibility();
    let mut values = vec![Rational::zero(); m as usize];
    for n in 1..=m {
        values[(n % m) as usize] = -source.dt(&MukaiVector::new(0, *beta, n))?;
    }
    for n in m + 1..=2 * m {
        if -source.dt(&MukaiVector::new(0, *beta, n))? != values[(n % m) as usize] {
            return Err(Error::Consistency(format!(
                "dt(0, {beta}, n) is not periodic in n with period {m}"
            )));
        }
    }
    Ok(PtSeries {
        laurent,
        pole: PoleToken::new(values),
    })
}

/// Coefficients of `log PT` on the slice `β = k s + d f`:
/// `Σ_{odd j | (k, d)} (1/j) f_{β/j}^PT(p^j)` for `0 ≤ k ≤ k_max`,
/// `0 ≤ d ≤ d_max`, `(k, d) ≠ (0, 0)`.
pub fn toda_log_pt(
    k_max: i64,
    d_max: i64,
    source: &dyn DtSource,
) -> Result<BTreeMap<(i64, i64), PtSeries>> {
    let mut primitive_terms: BTreeMap<(i64, i64), PtSeries> = BTreeMap::new();
    for k in 0..=k_max {
        for d in 0..=d_max {
            if (k, d) != (0, 0) {
                primitive_terms.insert((k, d), f_pt(&CurveClass::slice(k, d), source)?);
            }
        }
    }
    let mut out = BTreeMap::new();
    for (&(k, d), _) in primitive_terms.iter() {
        let mut s = PtSeries::zero();
        for j in odd_divisors(num_integer::gcd(k, d)) {
            let f = &primitive_terms[&(k / j, d / j)];
            s = s.add(&f.substitute_power(j).scale(&int(j).recip()));
        }
        out.insert((k, d), s);
    }
    Ok(out)
}

/// Compares `Σ_n VW(r,0,n) q^{−2n−r}` with `2 η^{−12}(2τ)|_{−1} V_r`
/// coefficientwise for exponents `−r ≤ N ≤ q_max`.
pub fn vw_modularity_check(r: i64, q_max: i64, source: &dyn DtSource) -> Result<bool> {
    if r < 1 || q_max < 0 {
        return Err(Error::InvalidArgument(format!("rank {r}, order {q_max}")));
    }
    let input_trunc = r * (q_max + 1);
    let base = eta_quotient(&[(2, -12)], input_trunc).scale(&int(2));
    let rhs = hecke_v_to(&base, r, -1, q_max + 1)?;
    let beta0 = CurveClass::default();
    for big_n in -r..=q_max {
        let lhs = if (big_n + r) % 2 == 0 {
            vw(&MukaiVector::new(r, beta0, -(big_n + r) / 2), source)?
        } else {
            Rational::zero()
        };
        if lhs != rhs.coeff(big_n) {
            return Ok(false);
        }
    }
    Ok(true)
}
