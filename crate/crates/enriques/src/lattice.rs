//! Curve classes in `U ⊕ E8(−1)`, Mukai vectors and their orbit invariants,
//! reflections in even lattices, and the operators `t_λ` and `wt` on `H*(Y)`.
//!
//! The positive definite Gram matrix `Q_E8` is the only stored form; the sign
//! twist of `E8(−1)` and `E8(−2)` is applied where pairings are evaluated.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::gcd_all;
use crate::theta::E8Vector;

/// `β = k s + d f + α` with `s² = f² = 0`, `s·f = 1` and `α ∈ E8(−1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveClass {
    /// Coefficient of `s`.
    pub k: i64,
    /// Coefficient of `f`.
    pub d: i64,
    /// Component in `E8(−1)`, in the root basis.
    pub alpha: E8Vector,
}

impl CurveClass {
    /// `k s + d f + α`.
    pub fn new(k: i64, d: i64, alpha: E8Vector) -> Self {
        CurveClass { k, d, alpha }
    }

    /// `k s + d f`.
    pub fn slice(k: i64, d: i64) -> Self {
        CurveClass::new(k, d, E8Vector::ZERO)
    }

    /// Intersection pairing `k d' + k' d − α·α'`.
    pub fn dot(&self, other: &CurveClass) -> i64 {
        self.k * other.d + other.k * self.d - self.alpha.dot(&other.alpha)
    }

    /// `β² = 2kd − α·α`, always even.
    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// `gcd(k, d, coordinates of α)`; zero for the zero class.
    pub fn divisibility(&self) -> i64 {
        let mut v = vec![self.k, self.d];
        v.extend_from_slice(self.alpha.coords());
        gcd_all(&v)
    }

    /// True for the zero class.
    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.d == 0 && self.alpha.is_zero()
    }

    /// `k, d ≥ 0` and `(k, d) ≠ (0, 0)`.
    pub fn is_effective_slice(&self) -> bool {
        self.k >= 0 && self.d >= 0 && (self.k, self.d) != (0, 0)
    }

    /// `c β`.
    pub fn scale(&self, c: i64) -> CurveClass {
        CurveClass::new(c * self.k, c * self.d, self.alpha.scale(c))
    }

    /// `β / c` when `c` divides `β`.
    pub fn div_exact(&self, c: i64) -> Option<CurveClass> {
        if c == 0 || self.k % c != 0 || self.d % c != 0 {
            return None;
        }
        Some(CurveClass::new(self.k / c, self.d / c, self.alpha.div_exact(c)?))
    }
}

impl Add for CurveClass {
    type Output = CurveClass;
    fn add(self, o: CurveClass) -> CurveClass {
        CurveClass::new(self.k + o.k, self.d + o.d, self.alpha + o.alpha)
    }
}

impl Sub for CurveClass {
    type Output = CurveClass;
    fn sub(self, o: CurveClass) -> CurveClass {
        self + (-o)
    }
}

impl Neg for CurveClass {
    type Output = CurveClass;
    fn neg(self) -> CurveClass {
        self.scale(-1)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s+{}f+{}", self.k, self.d, self.alpha)
    }
}

/// A Mukai vector `(r, β, n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MukaiVector {
    /// Rank.
    pub r: i64,
    /// Curve class.
    pub beta: CurveClass,
    /// Euler characteristic datum.
    pub n: i64,
}

impl MukaiVector {
    /// `(r, β, n)`.
    pub fn new(r: i64, beta: CurveClass, n: i64) -> Self {
        MukaiVector { r, beta, n }
    }

    /// Pairing `β·β' − r r' − r n' − r' n`.
    pub fn dot(&self, other: &MukaiVector) -> i64 {
        self.beta.dot(&other.beta) - self.r * other.r - self.r * other.n - other.r * self.n
    }

    /// `v·v = β² − r² − 2rn`.
    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.n == 0 && self.beta.is_zero()
    }

    /// `gcd(r, div β, 2n)`.
    pub fn divisibility(&self) -> i64 {
        gcd_all(&[self.r, self.beta.divisibility(), 2 * self.n])
    }

    /// `c v`.
    pub fn scale(&self, c: i64) -> MukaiVector {
        MukaiVector::new(c * self.r, self.beta.scale(c), c * self.n)
    }

    /// JSON `{r, beta: {k, d, alpha: [8 ints]}, n}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.r,
            "beta": {"k": self.beta.k, "d": self.beta.d, "alpha": self.beta.alpha.0},
            "n": self.n,
        })
    }

    /// Parses the form produced by [`MukaiVector::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(format!("bad Mukai vector JSON: {e}")))
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.beta, self.n)
    }
}

/// Type of a Mukai vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MukaiType {
    /// Some of `r/m`, `(2n + r)/m` is odd.
    Odd,
    /// Both `r/m` and `(2n + r)/m` are even.
    Even,
}

impl fmt::Display for MukaiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MukaiType::Odd => "odd",
            MukaiType::Even => "even",
        })
    }
}

/// Square, divisibility and type of a Mukai vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantTriple {
    /// `v·v`.
    pub square: i64,
    /// `m = gcd(r, div β, 2n)`.
    pub divisibility: i64,
    /// Odd or even.
    #[serde(rename = "type")]
    pub kind: MukaiType,
}

/// The invariants of a nonzero Mukai vector.
pub fn mukai_invariants(v: &MukaiVector) -> Result<InvariantTriple> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = v.divisibility();
    let even = (v.r / m).is_even() && ((2 * v.n + v.r) / m).is_even();
    Ok(InvariantTriple {
        square: v.square(),
        divisibility: m,
        kind: if even { MukaiType::Even } else { MukaiType::Odd },
    })
}

/// The canonical orbit representative with the given invariants, built
/// from the primitive slice class `α_d = s + d f` of square `2d`:
///
/// * even: `(0, m α_d, 0)`;
/// * odd with `v²/m²` odd: `(m, m α_d, 0)`;
/// * odd with `v²/m²` even: `(0, 2m′ α_d, m′)` where `m = 2m′`.
pub fn orbit_representative(t: &InvariantTriple) -> Result<MukaiVector> {
    let no = || Error::NoSuchOrbit(format!("{t:?}"));
    let m = t.divisibility;
    if m <= 0 {
        return Err(no());
    }
    let m2 = m * m;
    let alpha_d = |d: i64| CurveClass::slice(1, d);
    match t.kind {
        MukaiType::Even => {
            if t.square % (2 * m2) != 0 {
                return Err(no());
            }
            Ok(MukaiVector::new(0, alpha_d(t.square / (2 * m2)).scale(m), 0))
        }
        MukaiType::Odd => {
            if t.square % m2 != 0 {
                return Err(no());
            }
            let q = t.square / m2;
            if q.is_odd() {
                Ok(MukaiVector::new(m, alpha_d((q + 1) / 2).scale(m), 0))
            } else {
                if m.is_odd() {
                    return Err(no());
                }
                let h = m / 2;
                Ok(MukaiVector::new(0, alpha_d(q / 2).scale(m), h))
            }
        }
    }
}

/// A vector in an integral lattice supporting reflections.
pub trait Reflectable: Sized + Copy {
    /// The lattice pairing.
    fn pairing(&self, other: &Self) -> i64;
    /// `self + c · other`.
    fn add_multiple(&self, other: &Self, c: i64) -> Self;
}

/// The reflection `x ↦ x + (x·δ) δ` in a root `δ` with `δ·δ = −2`.
pub fn reflect<V: Reflectable>(x: &V, delta: &V) -> Result<V> {
    let n = delta.pairing(delta);
    if n != -2 {
        return Err(Error::WrongNorm(n));
    }
    Ok(x.add_multiple(delta, x.pairing(delta)))
}

impl Reflectable for CurveClass {
    fn pairing(&self, other: &Self) -> i64 {
        self.dot(other)
    }
    fn add_multiple(&self, other: &Self, c: i64) -> Self {
        *self + other.scale(c)
    }
}

impl Reflectable for MukaiVector {
    fn pairing(&self, other: &Self) -> i64 {
        self.dot(other)
    }
    fn add_multiple(&self, other: &Self, c: i64) -> Self {
        MukaiVector::new(self.r + c * other.r, self.beta + other.beta.scale(c), self.n + c * other.n)
    }
}

/// A vector of `M = U ⊕ U(2) ⊕ E8(−2)`: `(a₁, b₁) ∈ U`, `(a₂, b₂) ∈ U(2)`,
/// `α ∈ E8(−2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MVector {
    /// First `U` coordinate.
    pub a1: i64,
    /// Second `U` coordinate.
    pub b1: i64,
    /// First `U(2)` coordinate.
    pub a2: i64,
    /// Second `U(2)` coordinate.
    pub b2: i64,
    /// `E8(−2)` component.
    pub alpha: E8Vector,
}

impl MVector {
    /// The image of a Mukai vector: `(r, −(2n + r), k, d, α)`. The square
    /// doubles: `φ(v)² = 2 v²`.
    pub fn from_mukai(v: &MukaiVector) -> MVector {
        MVector {
            a1: v.r,
            b1: -(2 * v.n + v.r),
            a2: v.beta.k,
            b2: v.beta.d,
            alpha: v.beta.alpha,
        }
    }

    /// Inverse of [`MVector::from_mukai`], defined when `a₁ ≡ b₁ (mod 2)`.
    pub fn to_mukai(&self) -> Result<MukaiVector> {
        let s = -self.b1;
        if (s - self.a1).is_odd() {
            return Err(Error::Domain(format!("{self:?} is not the image of a Mukai vector")));
        }
        Ok(MukaiVector::new(
            self.a1,
            CurveClass::new(self.a2, self.b2, self.alpha),
            (s - self.a1) / 2,
        ))
    }
}

impl Reflectable for MVector {
    fn pairing(&self, o: &Self) -> i64 {
        self.a1 * o.b1 + o.a1 * self.b1 + 2 * (self.a2 * o.b2 + o.a2 * self.b2)
            - 2 * self.alpha.dot(&o.alpha)
    }
    fn add_multiple(&self, o: &Self, c: i64) -> Self {
        MVector {
            a1: self.a1 + c * o.a1,
            b1: self.b1 + c * o.b1,
            a2: self.a2 + c * o.a2,
            b2: self.b2 + c * o.b2,
            alpha: self.alpha + o.alpha.scale(c),
        }
    }
}

/// A root `δ ∈ M` with `δ² = −2`: given `(a₂, b₂, α)` and a sign, sets
/// `a₁ = ±1` and `b₁ = ±(|α|² − 2a₂b₂ − 1)`.
pub fn m_root(a2: i64, b2: i64, alpha: E8Vector, negative: bool) -> MVector {
    let sign = if negative { -1 } else { 1 };
    MVector {
        a1: sign,
        b1: sign * (alpha.norm() - 2 * a2 * b2 - 1),
        a2,
        b2,
        alpha,
    }
}

/// A class in `H*(Y, Z)` in the basis `{1, s, f, α, pt}`, with `α ∈ E8(−1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    /// Coefficient of `1 ∈ H⁰`.
    pub unit: i64,
    /// The `H²` part.
    pub h2: CurveClass,
    /// Coefficient of the point class.
    pub pt: i64,
}

impl CohomologyClass {
    /// A class concentrated in `H²`.
    pub fn from_h2(h2: CurveClass) -> Self {
        CohomologyClass { unit: 0, h2, pt: 0 }
    }

    /// `∫ x ∪ y`.
    pub fn pairing(&self, o: &CohomologyClass) -> i64 {
        self.unit * o.pt + o.unit * self.pt + self.h2.dot(&o.h2)
    }

    fn add_h2(&self, c: CurveClass) -> Self {
        CohomologyClass {
            h2: self.h2 + c,
            ..*self
        }
    }
}

/// `t_λ(x) = (f·x) λ − (λ·x) f` for `λ ∈ E8(−1)`, the pairing being
/// `∫ x ∪ y`. It vanishes on `H⁰ ⊕ H⁴`.
pub fn t_lambda(lambda: &E8Vector, x: &CohomologyClass) -> CohomologyClass {
    let f = CohomologyClass::from_h2(CurveClass::slice(0, 1));
    let l = CohomologyClass::from_h2(CurveClass::new(0, 0, *lambda));
    let a = f.pairing(x);
    let b = l.pairing(x);
    CohomologyClass::from_h2(CurveClass::new(0, -b, lambda.scale(a)))
}

/// `exp(t_λ) = 1 + t_λ + t_λ²/2`, using `t_λ³ = 0`.
pub fn exp_t_lambda(lambda: &E8Vector, x: &CohomologyClass) -> CohomologyClass {
    let t1 = t_lambda(lambda, x);
    let t2 = t_lambda(lambda, &t1);
    // t_λ² lands in Z·f with an even coefficient since λ² is even
    debug_assert!(t2.h2.d % 2 == 0 && t2.h2.k == 0 && t2.h2.alpha.is_zero());
    x.add_h2(t1.h2).add_h2(CurveClass::slice(0, t2.h2.d / 2))
}

/// Eigenvalue of `x` under the weight operator: `1` on `span{s, pt}`, `0` on
/// `E8(−1)`, `−1` on `span{1, f}`. Fails unless `x` is a nonzero eigenvector.
pub fn wt(x: &CohomologyClass) -> Result<i64> {
    let plus = x.h2.k != 0 || x.pt != 0;
    let zero = !x.h2.alpha.is_zero();
    let minus = x.unit != 0 || x.h2.d != 0;
    match (plus, zero, minus) {
        (true, false, false) => Ok(1),
        (false, true, false) => Ok(0),
        (false, false, true) => Ok(-1),
        _ => Err(Error::InvalidArgument(format!(
            "{x:?} is not a weight eigenvector"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slice_mukai(r: i64, k: i64, d: i64, n: i64) -> MukaiVector {
        MukaiVector::new(r, CurveClass::slice(k, d), n)
    }

    #[test]
    fn invariant_examples() {
        for n in 1..5 {
            let t = mukai_invariants(&slice_mukai(1, 0, 0, -n)).unwrap();
            assert_eq!((t.square, t.divisibility, t.kind), (2 * n - 1, 1, MukaiType::Odd));
        }
        let t = mukai_invariants(&slice_mukai(0, 1, 1, 0)).unwrap();
        assert_eq!((t.square, t.divisibility, t.kind), (2, 1, MukaiType::Even));
        let t = mukai_invariants(&slice_mukai(2, 2, 2, 0)).unwrap();
        assert_eq!((t.square, t.divisibility, t.kind), (4, 2, MukaiType::Odd));
        assert!(matches!(mukai_invariants(&MukaiVector::default()), Err(Error::ZeroVector)));
    }

    #[test]
    fn representatives() {
        let t = InvariantTriple { square: 2, divisibility: 1, kind: MukaiType::Even };
        assert_eq!(orbit_representative(&t).unwrap(), slice_mukai(0, 1, 1, 0));
        let t = InvariantTriple { square: 9 * 5, divisibility: 3, kind: MukaiType::Odd };
        assert_eq!(orbit_representative(&t).unwrap(), slice_mukai(3, 3, 9, 0));
        let t = InvariantTriple { square: 4, divisibility: 1, kind: MukaiType::Odd };
        assert!(matches!(orbit_representative(&t), Err(Error::NoSuchOrbit(_))));
        let t = InvariantTriple { square: 8, divisibility: 2, kind: MukaiType::Odd };
        let v = orbit_representative(&t).unwrap();
        assert_eq!(mukai_invariants(&v).unwrap(), t);
    }

    #[test]
    fn reflection_basics() {
        let delta = CurveClass::new(0, 0, E8Vector::basis(0));
        assert_eq!(delta.square(), -2);
        assert_eq!(reflect(&delta, &delta).unwrap(), -delta);
        let x = CurveClass::slice(1, 1);
        assert_eq!(reflect(&x, &delta).unwrap(), x);
        assert!(matches!(reflect(&x, &x), Err(Error::WrongNorm(2))));
        let root = m_root(1, 2, E8Vector::basis(3), true);
        assert_eq!(root.pairing(&root), -2);
    }

    #[test]
    fn m_embedding_round_trip_and_doubles_square() {
        let v = MukaiVector::new(3, CurveClass::new(2, -1, E8Vector::basis(2)), -4);
        let w = MVector::from_mukai(&v);
        assert_eq!(w.pairing(&w), 2 * v.square());
        assert_eq!(w.to_mukai().unwrap(), v);
    }

    #[test]
    fn t_lambda_examples() {
        let lambda = E8Vector::basis(4) + E8Vector::basis(5);
        let s = CohomologyClass::from_h2(CurveClass::slice(1, 0));
        let f = CohomologyClass::from_h2(CurveClass::slice(0, 1));
        assert_eq!(t_lambda(&lambda, &f), CohomologyClass::default());
        assert_eq!(t_lambda(&lambda, &s), CohomologyClass::from_h2(CurveClass::new(0, 0, lambda)));
        // e^{t_λ}(ks + df + α) = ks + (d − α·λ − kλ²/2) f + α + kλ, pairings in H²
        let (k, d, a) = (3, 5, E8Vector::basis(4));
        let x = CohomologyClass::from_h2(CurveClass::new(k, d, a));
        let l = CurveClass::new(0, 0, lambda);
        let ac = CurveClass::new(0, 0, a);
        let expected = CurveClass::new(k, d - ac.dot(&l) - k * l.square() / 2, a + lambda.scale(k));
        assert_eq!(exp_t_lambda(&lambda, &x).h2, expected);
    }

    #[test]
    fn weights() {
        let s = CohomologyClass::from_h2(CurveClass::slice(1, 0));
        let f = CohomologyClass::from_h2(CurveClass::slice(0, 1));
        let a = CohomologyClass::from_h2(CurveClass::new(0, 0, E8Vector::basis(2)));
        assert_eq!(wt(&s).unwrap(), 1);
        assert_eq!(wt(&a).unwrap(), 0);
        assert_eq!(wt(&f).unwrap(), -1);
        assert_eq!(wt(&CohomologyClass { unit: 1, ..Default::default() }).unwrap(), -1);
        assert_eq!(wt(&CohomologyClass { pt: 2, ..Default::default() }).unwrap(), 1);
        assert!(wt(&CohomologyClass::from_h2(CurveClass::slice(1, 1))).is_err());
    }

    #[test]
    fn json_shape() {
        let v = MukaiVector::new(1, CurveClass::slice(2, 3), -1);
        let j = v.to_json();
        assert_eq!(j["beta"]["alpha"].as_array().unwrap().len(), 8);
        assert_eq!(MukaiVector::from_json(&j).unwrap(), v);
    }
}
