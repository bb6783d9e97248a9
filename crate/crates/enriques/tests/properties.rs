//! Property tests for series arithmetic, ring recognition, lattices and the
//! invariant identities.

use enriques::invariants::{dt_total, f_km, f_pt, ClosedFormDt};
use enriques::lattice::{
    exp_t_lambda, m_root, mukai_invariants, orbit_representative, reflect, CohomologyClass,
    CurveClass, MVector, MukaiVector, Reflectable,
};
use enriques::modular::{monomial_basis, recognize, Recognition, RingElement, RingTag};
use enriques::rational::{int, Rational};
use enriques::series::{plaurent_to_zseries, PLaurent, PoleToken, QSeries};
use enriques::theta::{e8_vectors, lattice_enumerate, quadratic_form, E8Vector};
use proptest::prelude::*;

fn qseries(trunc: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-5i64..=5, trunc as usize).prop_map(move |v| QSeries::from_integers(trunc, &v))
}

fn unit_qseries(trunc: i64) -> impl Strategy<Value = QSeries> {
    (prop::sample::select(vec![-2i64, -1, 1, 3]), qseries(trunc)).prop_map(move |(c, s)| {
        let tail = QSeries::from_coeffs(1, trunc, s.iter().filter(|&(n, _)| n > 0).map(|(n, x)| (n, x.clone())));
        &tail + &QSeries::monomial(1, 0, int(c), trunc)
    })
}

fn plaurent() -> impl Strategy<Value = PLaurent> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..6).prop_map(PLaurent::from_integers)
}

fn e8_small() -> impl Strategy<Value = E8Vector> {
    let pool = e8_vectors(4);
    prop::sample::select(pool)
}

fn curve_class() -> impl Strategy<Value = CurveClass> {
    (-3i64..=3, -3i64..=3, e8_small()).prop_map(|(k, d, a)| CurveClass::new(k, d, a))
}

fn mukai() -> impl Strategy<Value = MukaiVector> {
    (-3i64..=3, curve_class(), -3i64..=3)
        .prop_map(|(r, b, n)| MukaiVector::new(r, b, n))
        .prop_filter("nonzero", |v| !v.is_zero())
}

fn m_roots() -> impl Strategy<Value = MVector> {
    (-2i64..=2, -2i64..=2, e8_small(), any::<bool>()).prop_map(|(a, b, al, neg)| m_root(a, b, al, neg))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_distributive(a in qseries(10), b in qseries(10), c in qseries(10)) {
        // precision can exceed 10 when a factor vanishes to high order
        prop_assert_eq!((&(&a * &b) * &c).truncate(10), (&a * &(&b * &c)).truncate(10));
        prop_assert_eq!((&a * &(&b + &c)).truncate(10), (&(&a * &b) + &(&a * &c)).truncate(10));
    }

    #[test]
    fn inverse_multiplies_to_one(a in unit_qseries(12)) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, QSeries::one(12));
    }

    #[test]
    fn log_inverts_exp(s in qseries(10)) {
        let x = QSeries::from_coeffs(1, 10, s.iter().filter(|&(n, _)| n > 0).map(|(n, c)| (n, c.clone())));
        prop_assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn z_substitution_is_multiplicative(f in plaurent(), g in plaurent()) {
        let lhs = plaurent_to_zseries(&(&f * &g), 7);
        let rhs = &plaurent_to_zseries(&f, 7) * &plaurent_to_zseries(&g, 7);
        for k in 0..7 {
            prop_assert_eq!(lhs.coeff(k), rhs.coeff(k));
        }
    }

    #[test]
    fn pole_tokens_match_their_expansion(
        values in prop::collection::vec(-4i64..=4, 1..4),
        j in 1i64..=3,
    ) {
        let t = PoleToken::new(values.iter().map(|&v| int(v)).collect());
        prop_assert!(t.equals_rational_function(&t.numerator(), &t.denominator()));
        let s = t.substitute_power(j);
        let direct = t.expand(12).substitute_power(j);
        prop_assert_eq!(s.expand(12 * j), direct);
        prop_assert!(t.add(&t.scale(&int(-1))).is_zero());
    }

    #[test]
    fn reflections_are_involutive_isometries(x in curve_class(), y in curve_class(), a in prop::sample::select(e8_vectors(2)[1..].to_vec())) {
        let delta = CurveClass::new(0, 0, a);
        let rx = reflect(&x, &delta).unwrap();
        prop_assert_eq!(reflect(&rx, &delta).unwrap(), x);
        prop_assert_eq!(rx.dot(&reflect(&y, &delta).unwrap()), x.dot(&y));
    }

    #[test]
    fn m_reflections_preserve_mukai_invariants(v in mukai(), roots in prop::collection::vec(m_roots(), 1..5)) {
        let mut x = MVector::from_mukai(&v);
        for d in &roots {
            prop_assert_eq!(d.pairing(d), -2);
            x = reflect(&x, d).unwrap();
        }
        let w = x.to_mukai().unwrap();
        prop_assert_eq!(mukai_invariants(&w).unwrap(), mukai_invariants(&v).unwrap());
        prop_assert_eq!(x.pairing(&x), 2 * v.square());
    }

    #[test]
    fn exp_t_lambda_is_an_isometry(lambda in e8_small(), x in curve_class(), y in curve_class(), u in -3i64..=3, p in -3i64..=3) {
        let a = CohomologyClass { unit: u, h2: x, pt: p };
        let b = CohomologyClass::from_h2(y);
        prop_assert_eq!(exp_t_lambda(&lambda, &a).pairing(&exp_t_lambda(&lambda, &b)), a.pairing(&b));
    }

    #[test]
    fn dt_depends_only_on_the_triple(v in mukai()) {
        let src = ClosedFormDt::new(60);
        let t = mukai_invariants(&v).unwrap();
        let rep = orbit_representative(&t).unwrap();
        prop_assert_eq!(mukai_invariants(&rep).unwrap(), t);
        prop_assert_eq!(dt_total(&v, &src).unwrap(), dt_total(&rep, &src).unwrap());
        if v.square() % 2 == 0 {
            prop_assert_eq!(dt_total(&v, &src).unwrap(), Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn pt_equals_km_on_random_classes(k in 0i64..=3, d in 0i64..=4, a in e8_small()) {
        let beta = CurveClass::new(k, d, a);
        prop_assume!(!beta.is_zero() && beta.square() <= 24);
        let pt = f_pt(&beta, &ClosedFormDt::new(20)).unwrap();
        prop_assert!(pt.pole_cancels());
        prop_assert_eq!(pt.laurent, f_km(&beta).unwrap());
    }
}

fn ring_element(weight: i64) -> impl Strategy<Value = RingElement> {
    let basis = monomial_basis(RingTag::Gamma0QMod, weight);
    prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        RingElement::new(RingTag::Gamma0QMod, weight, basis.iter().copied().zip(cs.into_iter().map(int))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn recognition_round_trips(e in prop::sample::select(vec![2i64, 4, 6, 8, 10, 12, 14, 16]).prop_flat_map(ring_element)) {
        let f = e.evaluate(45).unwrap();
        match recognize(&f, e.weight(), RingTag::Gamma0QMod, 44).unwrap() {
            Recognition::Member(back) => prop_assert_eq!(back, e),
            Recognition::NotMember { .. } => prop_assert!(false, "not recognized"),
        }
    }

    #[test]
    fn enumeration_matches_box_search(a in 1i64..=4, b in -1i64..=1, c in 1i64..=4, bound in 0i64..=12) {
        prop_assume!(4 * a * c - b * b > 0);
        let gram = vec![vec![2 * a, b], vec![b, 2 * c]];
        let found = lattice_enumerate(&gram, bound).unwrap();
        let mut brute = Vec::new();
        for x in -8i64..=8 {
            for y in -8i64..=8 {
                if quadratic_form(&gram, &[x, y]) <= bound {
                    brute.push(vec![x, y]);
                }
            }
        }
        prop_assert_eq!(found.len(), brute.len());
        for v in &brute {
            prop_assert!(found.contains(v));
        }
    }
}
