//! Published values and independently computed reference values.

use enriques::invariants::{
    a_coeffs, dt_total, f_km, f_km_raw, f_pt, gwpt_bridge, hilb_euler, km_n, omega_table,
    toda_log_pt, vw, ClosedFormDt, ZeroDt,
};
use enriques::lattice::{CurveClass, MukaiVector};
use enriques::modular::eisenstein_g;
use enriques::rational::{frac, int, Rational};
use enriques::series::PLaurent;
use enriques::theta::{e8_vectors, theta_e8, E8Vector};

/// Coefficients of `Π (1 + q^n)^8 / (1 − q^n)^8` by repeated multiplication
/// of truncated integer polynomials.
fn naive_a(max_n: usize) -> Vec<i128> {
    let mut c = vec![0i128; max_n + 1];
    c[0] = 1;
    for n in 1..=max_n {
        for _ in 0..8 {
            // multiply by (1 + q^n)
            for i in (n..=max_n).rev() {
                c[i] += c[i - n];
            }
            // multiply by 1/(1 − q^n)
            for i in n..=max_n {
                c[i] += c[i - n];
            }
        }
    }
    c
}

/// `e(Hilb^n)` from the recursion `n h(n) = 12 Σ_{k=1}^{n} σ₁(k) h(n − k)`.
fn hilbert_by_sigma(max_n: usize) -> Vec<i128> {
    let sigma = |k: usize| (1..=k).filter(|d| k % d == 0).sum::<usize>() as i128;
    let mut h = vec![0i128; max_n + 1];
    h[0] = 1;
    for n in 1..=max_n {
        let s: i128 = (1..=n).map(|k| sigma(k) * h[n - k]).sum();
        h[n] = 12 * s / n as i128;
    }
    h
}

#[test]
fn a_matches_naive_product_and_published_values() {
    let a = a_coeffs(30);
    let naive = naive_a(30);
    for (n, v) in naive.iter().enumerate() {
        assert_eq!(a.coeff(n as i64), Rational::from_integer((*v).into()));
    }
    assert_eq!(&naive[..5], &[1, 16, 144, 960, 5264]);
}

#[test]
fn omega_one_is_a() {
    let t = omega_table(1, 30).unwrap();
    let naive = naive_a(30);
    for (n, v) in naive.iter().enumerate() {
        assert_eq!(t.omega(1, n as i64).unwrap(), Rational::from_integer((*v).into()));
    }
}

#[test]
fn hilbert_numbers_match_sigma_recursion() {
    let h = hilb_euler(25);
    for (n, v) in hilbert_by_sigma(25).iter().enumerate() {
        assert_eq!(h.coeff(n as i64), Rational::from_integer((*v).into()));
    }
    assert_eq!(h.coeff(1), int(12));
}

#[test]
fn omega_at_q1_from_the_published_coefficient() {
    // 2p + 12 + 2/p = 16 + 2 Σ_{k≥1} 2 z^{2k}/(2k)!
    let t = omega_table(5, 1).unwrap();
    assert_eq!(t.omega(1, 1).unwrap(), int(16));
    let mut fact = int(1);
    for g in 2..=5i64 {
        fact = fact * int(2 * g - 3) * int(2 * g - 2);
        let sign = if g % 2 == 1 { int(1) } else { int(-1) };
        assert_eq!(t.omega(g, 1).unwrap(), sign * int(4) / &fact);
    }
    for g in 1..=5 {
        assert_eq!(t.omega(g, 0).unwrap(), if g == 1 { int(1) } else { int(0) });
        for n in 0..=1 {
            for r in 0..=3 {
                assert_eq!(t.omega_p(r, n).unwrap(), t.omega_p(-r, n).unwrap());
            }
        }
    }
}

#[test]
fn theta_e8_is_eisenstein_e4() {
    // Θ_E8 = 1 + 240 Σ σ₃(n) q^n = 240 G₄
    let t = theta_e8(5).specialize();
    let g4 = eisenstein_g(4, 5).unwrap().scale(&int(240));
    assert_eq!(t, g4);
    assert_eq!(e8_vectors(2).len(), 241);
    assert_eq!(e8_vectors(4).len(), 1 + 240 + 2160);
}

#[test]
fn published_dt_and_vw_values() {
    let src = ClosedFormDt::new(20);
    let v = MukaiVector::new(1, CurveClass::default(), -1);
    assert_eq!(dt_total(&v, &src).unwrap(), int(96));
    assert_eq!(vw(&v, &src).unwrap(), int(24));
    // primitive DT on the slice: 8 e(Hilb^{(d+1)/2}) at square d
    let hilb = hilbert_by_sigma(10);
    for d in (-1..=15).step_by(2) {
        let beta = CurveClass::slice(1, (d + 1) / 2);
        let v = MukaiVector::new(1, beta, 0);
        assert_eq!(v.square(), d);
        let expected = if d < -1 { 0 } else { 8 * hilb[((d + 1) / 2) as usize] };
        assert_eq!(dt_total(&v, &src).unwrap(), Rational::from_integer(expected.into()));
    }
}

#[test]
fn f_km_published_coefficients() {
    assert_eq!(
        f_km_raw(&CurveClass::slice(1, 1)).unwrap(),
        PLaurent::from_integers([(1, 2), (0, 12), (-1, 2)])
    );
    assert!(f_km_raw(&CurveClass::slice(0, 1)).unwrap().is_one());
    assert!(f_km(&CurveClass::slice(1, -1)).unwrap().is_zero());
    let f = f_pt(&CurveClass::slice(0, 3), &ClosedFormDt::new(10)).unwrap();
    assert_eq!(f.laurent, PLaurent::constant(int(8)));
    assert!(f_pt(&CurveClass::slice(2, 2), &ZeroDt).unwrap().laurent.is_zero());
}

#[test]
fn genus_one_small_classes() {
    let t = omega_table(2, 4).unwrap();
    assert_eq!(km_n(&t, 1, &CurveClass::slice(0, 1)).unwrap(), int(2));
    assert_eq!(km_n(&t, 1, &CurveClass::slice(0, 2)).unwrap(), int(2));
    assert_eq!(km_n(&t, 1, &CurveClass::slice(1, 1)).unwrap(), int(32));
    // N_{1,3f} = 2(1 + 1/3) with the single odd divisor 3
    assert_eq!(km_n(&t, 1, &CurveClass::slice(0, 3)).unwrap(), frac(8, 3));
    let root = E8Vector::basis(5);
    assert_eq!(km_n(&t, 2, &CurveClass::new(1, 2, root)).unwrap(), t.omega(2, 1).unwrap() * int(2));
}

#[test]
fn gw_expansion_examples() {
    let sq2 = f_km(&CurveClass::slice(1, 1)).unwrap();
    let t = omega_table(6, 1).unwrap();
    let genus = gwpt_bridge(&sq2, 11).unwrap();
    for g in 1..=6 {
        assert_eq!(genus.get(g).unwrap(), t.omega(g, 1).unwrap() * int(8));
    }
}

#[test]
fn toda_assembly_uses_odd_divisors() {
    let src = ClosedFormDt::new(30);
    let log = toda_log_pt(3, 3, &src).unwrap();
    let f11 = f_pt(&CurveClass::slice(1, 1), &src).unwrap();
    let f33 = f_pt(&CurveClass::slice(3, 3), &src).unwrap();
    assert_eq!(log[&(3, 3)], f33.add(&f11.substitute_power(3).scale(&frac(1, 3))));
    assert_eq!(log[&(2, 2)], f_pt(&CurveClass::slice(2, 2), &src).unwrap());
    assert_eq!(log[&(1, 0)].laurent, PLaurent::constant(int(8)));
}
