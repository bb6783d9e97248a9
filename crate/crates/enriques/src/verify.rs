//! Named verification suites. Each suite runs a group of exact identity
//! checks and reports one line per check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::invariants::{
    a_coeffs, dg2_transport_check, dt_total, f_km, f_pt, genus1_product_check,
    genus1_recursion_sweep, gwpt_bridge, hecke_dependence_check, km_n, n_small, omega_table,
    sigma_minus_one, torsion_n_minus, vw, vw_closed_form, vw_modularity_check, ClosedFormDt,
    DtSource, HilbertEuler, SudokuDt,
};
use crate::lattice::{
    m_root, mukai_invariants, orbit_representative, reflect, CurveClass, InvariantTriple,
    MVector, MukaiType, MukaiVector,
};
use crate::modular::{
    eisenstein_g, eta_quotient, recognize, vanishing_lemma_check, Recognition, RingElement,
    RingTag,
};
use crate::rational::{frac, int, Rational};
use crate::series::PLaurent;
use crate::theta::{
    check_closed_sum_from_inv_theta, check_theta_quotient_eisenstein, check_theta_taylor,
    e8_vectors, km_closed_sum, km_kernel, E8Vector,
};

/// The verification suites, in report order.
pub const TARGETS: [&str; 12] = [
    "theta-identity",
    "genus1-borcherds",
    "km-pt-bridge",
    "gw-pt-expansion",
    "fiber-class",
    "recursion",
    "vw-modularity",
    "dt-dependence",
    "reflections",
    "hecke-dependence",
    "vanishing-lemma",
    "eta-ring",
];

/// Optional bounds; each suite reads the ones it documents and uses its
/// default for the rest.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Main q-order or size bound.
    pub qmax: Option<i64>,
    /// Largest genus.
    pub gmax: Option<i64>,
    /// E8 norm bound.
    pub norm: Option<i64>,
    /// Largest Hecke level.
    pub ell: Option<i64>,
    /// Largest rank.
    pub rank: Option<i64>,
    /// Number of random samples.
    pub count: Option<i64>,
}

impl VerifyOptions {
    fn get(value: Option<i64>, default: i64, name: &str) -> Result<i64> {
        let v = value.unwrap_or(default);
        if v <= 0 {
            return Err(Error::InvalidArgument(format!("--{name} must be positive, got {v}")));
        }
        Ok(v)
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// Short name.
    pub name: String,
    /// Whether it held.
    pub passed: bool,
    /// What was compared.
    pub detail: String,
}

/// Outcome of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    /// Suite name.
    pub target: String,
    /// Checks in execution order.
    pub checks: Vec<Check>,
}

impl Report {
    fn new(target: &str) -> Self {
        Report {
            target: target.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status}  {}/{}  {}", self.target, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Runs a suite by name.
pub fn run_target(target: &str, opts: &VerifyOptions) -> Result<Report> {
    match target {
        "theta-identity" => theta_identity(opts),
        "genus1-borcherds" => genus1_borcherds(opts),
        "km-pt-bridge" => km_pt_bridge(opts),
        "gw-pt-expansion" => gw_pt_expansion(opts),
        "fiber-class" => fiber_class(opts),
        "recursion" => recursion(opts),
        "vw-modularity" => vw_modularity(opts),
        "dt-dependence" => dt_dependence(opts),
        "reflections" => reflections(opts),
        "hecke-dependence" => hecke_dependence(opts),
        "vanishing-lemma" => vanishing_lemma(opts),
        "eta-ring" => eta_ring(opts),
        other => Err(Error::InvalidArgument(format!("unknown verify target {other}"))),
    }
}

fn consistency(r: Result<()>) -> Result<(bool, String)> {
    match r {
        Ok(()) => Ok((true, String::new())),
        Err(Error::Consistency(m)) => Ok((false, m)),
        Err(e) => Err(e),
    }
}

/// Product, theta quotient and closed sum forms of the kernel agree below
/// `q^{qmax+1}` (`--qmax`, default 20); its `q¹` coefficient and the leading
/// terms of the shifted expansion.
pub fn theta_identity(opts: &VerifyOptions) -> Result<Report> {
    let q = VerifyOptions::get(opts.qmax, 20, "qmax")?;
    let mut rep = Report::new("theta-identity");
    let (ok, msg) = match km_kernel(q + 1) {
        Ok(_) => (true, String::new()),
        Err(Error::Consistency(m)) => (false, m),
        Err(e) => return Err(e),
    };
    rep.check("three-way", ok, format!("product = theta quotient = closed sum through q^{q} {msg}"));
    let k = km_kernel(q + 1)?;
    rep.check(
        "q1-coefficient",
        k.get(1)? == PLaurent::from_integers([(1, 2), (0, 12), (-1, 2)]),
        format!("[kernel]_q^1 = {}", k.get(1)?),
    );
    let s = km_closed_sum(3);
    let expected = [
        PLaurent::zero(),
        PLaurent::one(),
        PLaurent::zero(),
        PLaurent::from_integers([(1, 2), (-1, 2)]),
        PLaurent::zero(),
        PLaurent::from_integers([(2, 3), (-2, 3)]),
    ];
    let leading = expected.iter().enumerate().all(|(n, e)| s.coeff(n as i64) == *e);
    rep.check("shifted-leading", leading, "q^(1/2) + 2(p+1/p) q^(3/2) + 3(p^2+1/p^2) q^(5/2)");
    let (ok, msg) = consistency(check_closed_sum_from_inv_theta(q + 1))?;
    rep.check("inverse-theta-odd-part", ok, format!("closed sum from 1/Theta^2 {msg}"));
    let (ok, msg) = consistency(check_theta_taylor(8, q + 1))?;
    rep.check("theta-taylor", ok, format!("Theta = z exp(-2 sum G_k z^k/k!) to z^8 {msg}"));
    let (ok, msg) = consistency(check_theta_quotient_eisenstein(8, q + 1))?;
    rep.check("quotient-eisenstein", ok, format!("theta quotient as exp of Eisenstein series to z^8 {msg}"));
    Ok(rep)
}

/// `ω₁(n) = a(n)` for `n ≤ qmax` (default 50), the first values of `a`, and
/// the product formula on the slice with E8 parts through grade `k + d ≤ 4`
/// (`--rank` overrides the grade).
pub fn genus1_borcherds(opts: &VerifyOptions) -> Result<Report> {
    let q = VerifyOptions::get(opts.qmax, 50, "qmax")?;
    let grade = VerifyOptions::get(opts.rank, 4, "rank")?;
    let mut rep = Report::new("genus1-borcherds");
    let table = omega_table(1, q)?;
    let a = a_coeffs(q);
    let mut bad = Vec::new();
    for n in 0..=q {
        if table.omega(1, n)? != a.coeff(n) {
            bad.push(n);
        }
    }
    rep.check("omega1-equals-a", bad.is_empty(), format!("n <= {q}, mismatches {bad:?}"));
    let paper = [(1, 16), (2, 144), (3, 960), (4, 5264)];
    let ok = paper.iter().all(|&(n, v)| a.coeff(n) == int(v)) && a.coeff(0) == int(1);
    rep.check("a-values", ok, "a(0..4) = 1, 16, 144, 960, 5264");
    let ok = genus1_product_check(&table, &a, grade, q)?;
    rep.check(
        "product-form",
        ok,
        format!("exp(sum N_1 Q^beta) = prod ((1+Q^beta)/(1-Q^beta))^a through k+d <= {grade}; fiber log through q^{q}"),
    );
    Ok(rep)
}

/// Classes `k s + d f + α` with `0 ≤ k, d ≤ 6`, α of norm at most 2 together
/// with a few multiples, `β ≠ 0` and `β² ≤ bound`.
fn bridge_box(bound: i64) -> Vec<CurveClass> {
    let mut alphas = e8_vectors(2);
    let root = E8Vector::basis(0);
    let norm4 = E8Vector::basis(0) + E8Vector::basis(2);
    alphas.extend([root.scale(2), root.scale(3), norm4, norm4.scale(2)]);
    let mut out = Vec::new();
    for k in 0..=6 {
        for d in 0..=6 {
            for a in &alphas {
                let b = CurveClass::new(k, d, *a);
                if !b.is_zero() && b.square() <= bound {
                    out.push(b);
                }
            }
        }
    }
    out
}

/// `f_PT(β) = f_KM(β)` with closed-form dt over [`bridge_box`] with
/// `β² ≤ qmax` (default 40): equal Laurent parts, cancelling pole tokens,
/// vanishing of dt on even squares, and the converse solve of dt from
/// `f_KM` on slice classes with `β² ≤ qmax/2`.
pub fn km_pt_bridge(opts: &VerifyOptions) -> Result<Report> {
    let bound = VerifyOptions::get(opts.qmax, 40, "qmax")?;
    let mut rep = Report::new("km-pt-bridge");
    let src = ClosedFormDt::new(bound + 2);
    let classes = bridge_box(bound);
    let mut km_by_square: BTreeMap<i64, PLaurent> = BTreeMap::new();
    let mut mismatches = 0;
    let mut poles = 0;
    let mut even_nonzero = 0;
    for beta in &classes {
        let sq = beta.square();
        if !km_by_square.contains_key(&sq) {
            km_by_square.insert(sq, f_km(beta)?);
        }
        let pt = f_pt(beta, &src)?;
        if pt.laurent != km_by_square[&sq] {
            mismatches += 1;
        }
        if !pt.pole_cancels() {
            poles += 1;
        }
        for r in 0..=2 {
            for n in -2..=2 {
                let v = MukaiVector::new(r, *beta, n);
                if v.square() % 2 == 0 && !src.dt(&v)?.is_zero() {
                    even_nonzero += 1;
                }
            }
        }
    }
    rep.check(
        "pt-equals-km",
        mismatches == 0,
        format!("{} classes with beta^2 <= {bound}, {mismatches} mismatches", classes.len()),
    );
    rep.check("pole-tokens-cancel", poles == 0, format!("{poles} classes with a surviving pole token"));
    rep.check("dt-even-square", even_nonzero == 0, format!("{even_nonzero} nonzero dt on even squares"));
    // dt^odd + dt^even at divisibility 2 and square 8j
    let mut shadow = true;
    for j in -1..=bound / 8 {
        let odd = InvariantTriple { square: 8 * j, divisibility: 2, kind: MukaiType::Odd };
        let even = InvariantTriple { square: 8 * j, divisibility: 2, kind: MukaiType::Even };
        let a = dt_total(&orbit_representative(&odd)?, &src)?;
        let b = dt_total(&orbit_representative(&even)?, &src)?;
        shadow &= a == -b;
    }
    rep.check("div2-shadow", shadow, "DT^odd_{8j,2} = -DT^even_{8j,2}");
    let solver = SudokuDt::new();
    let mut converse = true;
    let mut checked = 0;
    for k in 0..=4 {
        for d in 0..=bound / 2 {
            let beta = CurveClass::slice(k, d);
            if beta.is_zero() || beta.square() > bound / 2 {
                continue;
            }
            let pt = f_pt(&beta, &solver)?;
            converse &= pt.laurent == f_km(&beta)? && pt.pole_cancels();
            checked += 1;
        }
    }
    let solved = solver.solved();
    for (t, v) in &solved {
        converse &= *v == src.dt(&orbit_representative(t)?)?;
    }
    rep.check(
        "converse-solve",
        converse,
        format!("dt solved from f_KM on {} triples equals the closed form; f_PT rebuilt on {checked} classes", solved.len()),
    );
    Ok(rep)
}

/// Substituting `p = e^z` into `f_KM(β)` gives `n_g = 8ω_g(β²/2)` for
/// `g ≤ gmax` (default 6) and `β² ≤ qmax` (default 20).
pub fn gw_pt_expansion(opts: &VerifyOptions) -> Result<Report> {
    let bound = VerifyOptions::get(opts.qmax, 20, "qmax")?;
    let gmax = VerifyOptions::get(opts.gmax, 6, "gmax")?;
    let mut rep = Report::new("gw-pt-expansion");
    let table = omega_table(gmax, bound / 2 + 1)?;
    let mut classes = vec![CurveClass::slice(1, -1)];
    for j in 0..=bound / 2 {
        classes.push(CurveClass::slice(1, j));
        classes.push(CurveClass::new(1, j + 1, E8Vector::basis(4)));
    }
    classes.push(CurveClass::slice(2, 2));
    classes.push(CurveClass::new(2, 3, E8Vector::basis(1).scale(2)));
    let mut bad = Vec::new();
    let mut count = 0;
    for beta in classes.iter().filter(|b| b.square() <= bound) {
        let genus = gwpt_bridge(&f_km(beta)?, 2 * gmax - 1)?;
        for g in 1..=gmax {
            count += 1;
            if genus.get(g)? != n_small(&table, g, beta)? {
                bad.push((g, beta.square()));
            }
        }
    }
    rep.check(
        "bps-from-pt",
        bad.is_empty(),
        format!("{count} (g, beta) pairs with g <= {gmax}, beta^2 <= {bound}; mismatches {bad:?}"),
    );
    Ok(rep)
}

/// `N_{1,df} = 2σ₋₁(d) − σ₋₁(d/2)` and `N_{g,df} = 0` for `2 ≤ g ≤ gmax`
/// (default 4), `d ≤ qmax` (default 30); the torsion refinement.
pub fn fiber_class(opts: &VerifyOptions) -> Result<Report> {
    let dmax = VerifyOptions::get(opts.qmax, 30, "qmax")?;
    let gmax = VerifyOptions::get(opts.gmax, 4, "gmax")?;
    let mut rep = Report::new("fiber-class");
    let table = omega_table(gmax.max(1), 1)?;
    let mut genus_one = true;
    let mut higher = true;
    let mut torsion = true;
    for d in 1..=dmax {
        let beta = CurveClass::slice(0, d);
        let expected = int(2) * sigma_minus_one(&int(d)) - sigma_minus_one(&frac(d, 2));
        genus_one &= km_n(&table, 1, &beta)? == expected;
        for g in 2..=gmax {
            higher &= km_n(&table, g, &beta)?.is_zero();
        }
        for g in 1..=gmax {
            let t = torsion_n_minus(&table, g, d)?;
            torsion &= if d % 2 == 1 { t.is_zero() } else { t == km_n(&table, g, &beta)? };
        }
    }
    rep.check("genus-one", genus_one, format!("N_(1,df) = 2 sigma_-1(d) - sigma_-1(d/2), d <= {dmax}"));
    rep.check("higher-genus", higher, format!("N_(g,df) = 0 for 2 <= g <= {gmax}, d <= {dmax}"));
    rep.check("torsion", torsion, "N^-_(g,df) = 0 for odd d, N_(g,df) for even d");
    Ok(rep)
}

/// The genus-one recursion for all `k s + d f + α` with `k, d ≤ qmax`
/// (default 3) and `|α|² ≤ norm` (default 4).
pub fn recursion(opts: &VerifyOptions) -> Result<Report> {
    let kd = VerifyOptions::get(opts.qmax, 3, "qmax")?;
    let norm = VerifyOptions::get(opts.norm, 4, "norm")?;
    let mut rep = Report::new("recursion");
    let table = omega_table(1, kd * kd)?;
    let r = genus1_recursion_sweep(&table, kd, kd, norm)?;
    rep.check(
        "heat-equation",
        r.failures.is_empty(),
        format!("{} classes with k, d <= {kd}, |alpha|^2 <= {norm}; {} failures", r.checked, r.failures.len()),
    );
    Ok(rep)
}

/// `Σ_n VW(r,0,n) q^{−2n−r} = 2 η^{−12}(2τ)|_{−1} V_r` for `r ≤ rank`
/// (default 3) through `q^qmax` (default 20); `VW(1,0,−n) = 2 e(Hilb^n)`.
pub fn vw_modularity(opts: &VerifyOptions) -> Result<Report> {
    let q = VerifyOptions::get(opts.qmax, 20, "qmax")?;
    let rank = VerifyOptions::get(opts.rank, 3, "rank")?;
    let mut rep = Report::new("vw-modularity");
    let src = ClosedFormDt::new(rank * q + rank * rank + 2);
    for r in 1..=rank {
        rep.check(
            &format!("rank-{r}"),
            vw_modularity_check(r, q, &src)?,
            format!("generating series = 2 eta^-12(2 tau)|V_{r} through q^{q}"),
        );
    }
    let hilb = HilbertEuler::new(q + 1);
    let mut ok = hilb.euler(1)? == int(12);
    for n in 0..=q {
        let v = MukaiVector::new(1, CurveClass::default(), -n);
        ok &= vw(&v, &src)? == hilb.euler(n)? * int(2);
        ok &= vw(&v, &src)? == vw_closed_form(&v, &hilb)?;
    }
    rep.check("rank-one-hilbert", ok, format!("VW(1,0,-n) = 2 e(Hilb^n) for n <= {q}, e(Hilb^1) = 12"));
    Ok(rep)
}

/// DT is constant on invariant-triple fibers over `|r|, |n|, |k|, |d| ≤ qmax`
/// (default 4) and equals its value at the orbit representative.
pub fn dt_dependence(opts: &VerifyOptions) -> Result<Report> {
    let b = VerifyOptions::get(opts.qmax, 4, "qmax")?;
    let mut rep = Report::new("dt-dependence");
    let src = ClosedFormDt::new(3 * b * b + 2);
    let mut fibers: HashMap<InvariantTriple, Rational> = HashMap::new();
    let mut constant = true;
    let mut representative = true;
    let mut count = 0;
    for r in -b..=b {
        for k in -b..=b {
            for d in -b..=b {
                for n in -b..=b {
                    let v = MukaiVector::new(r, CurveClass::slice(k, d), n);
                    if v.is_zero() {
                        continue;
                    }
                    count += 1;
                    let t = mukai_invariants(&v)?;
                    let value = dt_total(&v, &src)?;
                    match fibers.get(&t) {
                        Some(x) => constant &= *x == value,
                        None => {
                            let rep_v = orbit_representative(&t)?;
                            representative &= mukai_invariants(&rep_v)? == t;
                            representative &= dt_total(&rep_v, &src)? == value;
                            fibers.insert(t, value);
                        }
                    }
                }
            }
        }
    }
    rep.check("constant-on-fibers", constant, format!("{count} vectors in {} fibers", fibers.len()));
    rep.check("orbit-representative", representative, "representative has the same triple and DT");
    Ok(rep)
}

fn random_root(rng: &mut StdRng, alphas: &[E8Vector]) -> MVector {
    let a2 = rng.gen_range(-2..=2);
    let b2 = rng.gen_range(-2..=2);
    let alpha = alphas[rng.gen_range(0..alphas.len())];
    m_root(a2, b2, alpha, rng.gen_bool(0.5))
}

/// `qmax` (default 500) random reflection words in `U ⊕ U(2) ⊕ E8(−2)`
/// applied to Mukai vectors preserve square, divisibility, type and DT.
pub fn reflections(opts: &VerifyOptions) -> Result<Report> {
    let words = VerifyOptions::get(opts.count.or(opts.qmax), 500, "count")?;
    let mut rep = Report::new("reflections");
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let alphas = e8_vectors(2);
    let src = ClosedFormDt::new(400);
    let mut invariants_kept = true;
    let mut dt_kept = true;
    let mut roots_ok = true;
    for _ in 0..words {
        let v = MukaiVector::new(
            rng.gen_range(-3..=3),
            CurveClass::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), alphas[rng.gen_range(0..alphas.len())]),
            rng.gen_range(-3..=3),
        );
        if v.is_zero() {
            continue;
        }
        let mut x = MVector::from_mukai(&v);
        let len = rng.gen_range(1..=6);
        for _ in 0..len {
            let delta = random_root(&mut rng, &alphas);
            roots_ok &= crate::lattice::Reflectable::pairing(&delta, &delta) == -2;
            x = reflect(&x, &delta)?;
        }
        let w = x.to_mukai()?;
        invariants_kept &= mukai_invariants(&w)? == mukai_invariants(&v)?;
        if w.square() <= 2 * 400 - 1 {
            dt_kept &= dt_total(&w, &src)? == dt_total(&v, &src)?;
        }
    }
    rep.check("roots", roots_ok, "every sampled root has square -2");
    rep.check("invariants", invariants_kept, format!("{words} words of length <= 6"));
    rep.check("dt", dt_kept, "DT unchanged along each word");
    Ok(rep)
}

/// Hecke-lift and direct coefficients of `F^KM_{g,ℓ}` agree and depend only
/// on `(g, 2ℓd − |α|², gcd(ℓ, d, div α))`, for `g ≤ gmax` (default 4),
/// `ℓ ≤ ell` (default 3), `d ≤ qmax` (default 8), `|α|² ≤ norm` (default 8).
pub fn hecke_dependence(opts: &VerifyOptions) -> Result<Report> {
    let gmax = VerifyOptions::get(opts.gmax, 4, "gmax")?;
    let ell = VerifyOptions::get(opts.ell, 3, "ell")?;
    let dmax = VerifyOptions::get(opts.qmax, 8, "qmax")?;
    let norm = VerifyOptions::get(opts.norm, 8, "norm")?;
    let mut rep = Report::new("hecke-dependence");
    let table = omega_table(gmax, ell * (dmax + 1))?;
    let r = hecke_dependence_check(&table, gmax, ell, dmax, norm)?;
    rep.check(
        "paths-agree",
        r.path_mismatches.is_empty(),
        format!("{} coefficients, {} mismatches", r.compared, r.path_mismatches.len()),
    );
    rep.check(
        "square-and-divisibility",
        r.dependence_violations.is_empty(),
        format!("{} keys with two values", r.dependence_violations.len()),
    );
    Ok(rep)
}

/// Quasimodular forms for Γ₀(2) of weight `k ∈ {2, 4, 6}` supported on
/// multiples of `m ∈ {3, …, rank}` (default 5) vanish, checked through
/// `q^qmax` (default 40).
pub fn vanishing_lemma(opts: &VerifyOptions) -> Result<Report> {
    let mmax = VerifyOptions::get(opts.rank, 5, "rank")?;
    if mmax < 3 {
        return Err(Error::InvalidArgument(format!("--rank must be at least 3, got {mmax}")));
    }
    let order = VerifyOptions::get(opts.qmax, 40, "qmax")?;
    let mut rep = Report::new("vanishing-lemma");
    for m in 3..=mmax {
        for k in [2, 4, 6] {
            rep.check(
                &format!("m{m}-k{k}"),
                vanishing_lemma_check(m, k, order)?,
                format!("support in {m}Z forces zero at weight {k}"),
            );
        }
    }
    Ok(rep)
}

fn recognized(f: &crate::series::QSeries, weight: i64, ring: RingTag, order: i64) -> Result<Option<RingElement>> {
    Ok(match recognize(f, weight, ring, order)? {
        Recognition::Member(e) => Some(e),
        Recognition::NotMember { .. } => None,
    })
}

/// Ring recognition through `q^qmax` (default 30): `2G₂(q) − 2G₂(q²) = G₂ + F₂`,
/// `(η(τ)η(2τ))⁸` and `Δ(τ)²/Δ(2τ)` in `Mod(Γ₀(2))`, and the `d/dG₂`
/// transport between genus tables for `2 ≤ g ≤ gmax` (default 4).
pub fn eta_ring(opts: &VerifyOptions) -> Result<Report> {
    let order = VerifyOptions::get(opts.qmax, 30, "qmax")?;
    let gmax = VerifyOptions::get(opts.gmax, 4, "gmax")?;
    let mut rep = Report::new("eta-ring");
    let t = order + 1;
    let g2 = eisenstein_g(2, t)?;
    let g2_q2 = eisenstein_g(2, (t + 1) / 2)?.scale_q(2).truncate(t);
    let f = &g2.scale(&int(2)) - &g2_q2.scale(&int(2));
    let expected = RingElement::new(RingTag::Gamma0QMod, 2, [([1, 0, 0, 0], int(1)), ([0, 1, 0, 0], int(1))])?;
    let got = recognized(&f, 2, RingTag::Gamma0QMod, order)?;
    rep.check(
        "g2-combination",
        got.as_ref() == Some(&expected),
        format!("2G2(q) - 2G2(q^2) recognized as {}", got.map(|e| e.to_string()).unwrap_or("nothing".into())),
    );
    let a = eta_quotient(&[(1, 8), (2, 8)], t);
    rep.check(
        "eta-product",
        recognized(&a, 8, RingTag::Gamma0Mod, order)?.is_some(),
        "(eta(tau) eta(2 tau))^8 in Mod_8(Gamma0(2))",
    );
    let b = eta_quotient(&[(1, 48), (2, -24)], t);
    rep.check(
        "delta-quotient",
        recognized(&b, 12, RingTag::Gamma0Mod, order)?.is_some(),
        "Delta(tau)^2/Delta(2 tau) in Mod_12(Gamma0(2))",
    );
    let trunc = 40.max(order);
    let table = omega_table(gmax, trunc)?;
    for g in 2..=gmax {
        rep.check(
            &format!("dg2-genus-{g}"),
            dg2_transport_check(&table, g, trunc)?,
            format!("d/dG2 of the genus {g} form = -(genus {} form)", g - 1),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_target_is_rejected() {
        assert!(matches!(
            run_target("nope", &VerifyOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
        let bad = VerifyOptions { qmax: Some(0), ..Default::default() };
        assert!(run_target("theta-identity", &bad).is_err());
    }

    #[test]
    fn small_runs_pass() {
        let small = VerifyOptions { qmax: Some(6), ..Default::default() };
        for t in ["theta-identity", "fiber-class", "vw-modularity"] {
            let r = run_target(t, &small).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
