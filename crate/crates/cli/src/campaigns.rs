//! The verification campaigns. Each returns claims ready for a report.

use rayon::prelude::*;
use serde_json::{json, Value};

use nicecurve_core::arith::{int, is_square, rat, rational_roots, Fp};
use nicecurve_core::chabauty::{certify_count, negative_control, DEFAULT_PRECISION};
use nicecurve_core::elliptic::torsion::nice_over;
use nicecurve_core::elliptic::{
    j_invariant, psi3, quadratic_twist, torsion_decomposition_check, twist_transport, twist_transport_inverse,
    TorsionCode,
};
use nicecurve_core::hyper::{
    enumerate_jacobian, jacobian_order_fp, pullback_points, search_points, HyperCurve, Jacobian, MumfordDivisor, WPPoint,
};
use nicecurve_core::nice::{
    aux_lemma_curves_check, c_to_h, conclude_no_3torsion, descent_chain, distinguished_d, param_inverse, param_l,
    rank2_witnesses, sample_nice_l, sample_special_u, sample_squarefree_d, sextic_condition, shifted_psi3,
    shifted_psi3_expected, singular_points, special_l, torsion_classification, u_values_from_h, CuspCubicPoint,
    NiceCurve, SAMPLE_SEED,
};
use nicecurve_core::report::{Claim, ToJson, VerificationReport};
use nicecurve_core::{Rational, RationalCurve};

/// Sample sizes and seed shared by the sampling campaigns.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub seed: u64,
    /// Nice `L` crossed with twists.
    pub l_count: usize,
    pub d_count: usize,
    pub d_bound: i64,
    /// Nice `L` for the ψ₃ and j-invariant checks.
    pub psi3_count: usize,
    pub u_count: usize,
    pub identity_count: usize,
    pub height: i64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            seed: SAMPLE_SEED,
            l_count: 200,
            d_count: 20,
            d_bound: 50,
            psi3_count: 500,
            u_count: 100,
            identity_count: 50,
            height: 50,
        }
    }
}

impl Sampling {
    /// Every per-campaign sample count set to `k`.
    pub fn with_samples(mut self, k: usize) -> Self {
        self.l_count = k;
        self.psi3_count = k;
        self.u_count = k;
        self.identity_count = k;
        self
    }

    fn params(&self, claim: &mut Claim) {
        claim.param("seed", json!(self.seed)).param("height", json!(self.height));
    }
}

/// Which curve `search` runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchCurve {
    H,
    Hq,
}

fn q(s: &str) -> Rational {
    nicecurve_core::arith::parse_rational(s).expect("literal")
}

/// `H_q(ℚ)` as listed in the source.
pub fn listed_hq_points() -> Vec<WPPoint> {
    let mut pts = vec![WPPoint::infinity(int(0), 3)];
    for (x, y) in [("0", "1"), ("0", "-1"), ("-1", "0"), ("-1/4", "0"), ("2", "9"), ("2", "-9")] {
        pts.push(WPPoint::affine(q(x), q(y), 3));
    }
    pts.sort();
    pts
}

/// `H(ℚ)` as listed in the source, in weighted coordinates `(X, Y, Z)`.
pub fn listed_h_points() -> Vec<WPPoint> {
    let triples = [
        ("1", "1", "0"),
        ("1", "-1", "0"),
        ("2/3", "1/27", "-1/3"),
        ("2/3", "-1/27", "-1/3"),
        ("1/2", "1/16", "-1/2"),
        ("1/2", "-1/16", "-1/2"),
        ("0", "1", "-1"),
        ("0", "-1", "-1"),
        ("1", "3", "1"),
        ("1", "-3", "1"),
        ("1/3", "1/27", "-2/3"),
        ("1/3", "-1/27", "-2/3"),
    ];
    let mut pts: Vec<WPPoint> =
        triples.iter().map(|(x, y, z)| WPPoint::new(q(x), q(y), q(z), 4).expect("nonzero")).collect();
    pts.sort();
    pts
}

fn same_set(mut a: Vec<WPPoint>, mut b: Vec<WPPoint>) -> bool {
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    a == b
}

pub fn search(curve: SearchCurve, bound: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (id, hc, listed) = match curve {
        SearchCurve::Hq => ("lemma-quotient", HyperCurve::h_q(), listed_hq_points()),
        SearchCurve::H => ("prop-hyper", HyperCurve::h(), listed_h_points()),
    };
    let mut claim = Claim::new(id);
    claim.param("bound", json!(bound));
    let found = search_points(&hc, bound);
    claim.witness("points", found.to_json()).witness("count", json!(found.len()));
    for p in &listed {
        claim.check(format!("listed point {p} on the curve"), hc.contains(p), Value::Null);
    }
    claim.check(
        format!("search finds exactly the {} listed points", listed.len()),
        same_set(found.clone(), listed.clone()),
        json!({"found": found.to_json(), "listed": listed.to_json()}),
    );
    if curve == SearchCurve::H {
        let h = HyperCurve::h();
        let pulled: Result<Vec<WPPoint>, _> = listed_hq_points().iter().try_fold(Vec::new(), |mut acc, p| {
            acc.extend(pullback_points(p, &h)?);
            Ok::<_, nicecurve_core::Error>(acc)
        });
        if let Some(pulled) = claim.check_result("pullback of H_q(ℚ)", pulled) {
            claim.witness("pullback", pulled.to_json());
            claim.check(
                "pullback of the 7 points equals the search result",
                same_set(pulled.clone(), found),
                json!({"pullback": pulled.to_json()}),
            );
        }
    }
    report.push(claim);
    report
}

/// `E_L(ℚ(√d))_tors` for nice `L` against the label rule: `Z2xZ4` exactly
/// when `d` is the squarefree part of `1 − L`.
pub fn quadratic_torsion(s: &Sampling) -> Claim {
    let mut claim = Claim::new("thm1.ii");
    s.params(&mut claim);
    claim.param("l_count", json!(s.l_count)).param("d_count", json!(s.d_count)).param("d_bound", json!(s.d_bound));
    let ls = sample_nice_l(s.l_count, s.seed, s.height);
    let ds = sample_squarefree_d(s.d_count, s.seed, s.d_bound, &[]);
    claim.witness("d_values", json!(ds));
    claim.check(format!("{} nice L sampled", s.l_count), ls.len() == s.l_count, json!({"sampled": ls.len()}));
    claim.check(format!("{} twists sampled", s.d_count), ds.len() == s.d_count, json!({"sampled": ds.len()}));

    let rows: Vec<Vec<(Rational, i64, Result<(TorsionCode, TorsionCode, Option<Value>), String>)>> = ls
        .par_iter()
        .map(|(_, l)| {
            let dist = match distinguished_d(l) {
                Ok(d) => d,
                Err(e) => return vec![(l.clone(), 0, Err(e.to_string()))],
            };
            let mut twists = ds.clone();
            if !twists.contains(&dist) {
                twists.push(dist);
            }
            twists
                .into_iter()
                .map(|d| {
                    let expected = if d == dist { TorsionCode::Z2xZ4 } else { TorsionCode::Z2xZ2 };
                    let r = classify(l, d).map(|(code, w)| (expected, code, w));
                    (l.clone(), d, r)
                })
                .collect()
        })
        .collect();

    let (mut pairs, mut z4, mut examples) = (0usize, 0usize, Vec::new());
    for (l, d, r) in rows.into_iter().flatten() {
        pairs += 1;
        let ops = json!({"L": l.to_json(), "d": d});
        match r {
            Ok((expected, code, witness)) => {
                if code != expected {
                    claim.check(format!("L = {l}, d = {d}"), false, json!({"L": l.to_json(), "d": d, "expected": expected, "got": code}));
                }
                if code == TorsionCode::Z2xZ4 {
                    z4 += 1;
                    match witness {
                        Some(w) if examples.len() < 5 => examples.push(json!({"L": l.to_json(), "d": d, "point": w})),
                        Some(_) => {}
                        None => {
                            claim.check(format!("L = {l}, d = {d}: order-4 witness"), false, ops);
                        }
                    }
                }
            }
            Err(e) => {
                claim.check(format!("L = {l}, d = {d}"), false, json!({"L": l.to_json(), "d": d, "error": e}));
            }
        }
    }
    claim.witness("pairs", json!(pairs)).witness("z2xz4", json!(z4)).witness("order4_examples", json!(examples));
    claim.check("every pair agrees with the label rule", claim.passed(), json!({"pairs": pairs}));
    claim
}

/// The classification and, for `Z2xZ4`, the order-4 witness checked by the
/// group law over ℚ(√d).
fn classify(l: &Rational, d: i64) -> Result<(TorsionCode, Option<Value>), String> {
    let c = torsion_classification(l, d).map_err(|e| e.to_string())?;
    let Some(w) = c.witness else { return Ok((c.code, None)) };
    let k = nice_over(l, d).map_err(|e| e.to_string())?;
    let p = &w.point;
    let ok = k.contains(p) && !k.double(p).is_infinity() && k.double(&k.double(p)).is_infinity();
    Ok((c.code, ok.then(|| p.to_json())))
}

/// `ψ₃` of every sampled nice `L` has no rational root.
pub fn psi3_rootless(s: &Sampling) -> Claim {
    let mut claim = Claim::new("prop3T");
    s.params(&mut claim);
    claim.param("count", json!(s.psi3_count));
    let ls = sample_nice_l(s.psi3_count, s.seed, s.height);
    claim.check(format!("{} nice L sampled", s.psi3_count), ls.len() == s.psi3_count, json!({"sampled": ls.len()}));
    let roots: Vec<_> = ls.par_iter().map(|(_, l)| (l.clone(), rational_roots(&psi3(l)))).collect();
    let mut empty = 0;
    for (l, r) in roots {
        match r {
            Ok(r) if r.is_empty() => empty += 1,
            Ok(r) => {
                claim.check(format!("ψ₃ at L = {l} has no rational root"), false, json!({"L": l.to_json(), "roots": r.to_json()}));
            }
            Err(e) => {
                claim.check(format!("ψ₃ at L = {l}"), false, json!({"L": l.to_json(), "error": e.to_string()}));
            }
        }
    }
    let spot = rational_roots(&psi3(&rat(8, 5))).map(|r| r.is_empty()).unwrap_or(false);
    claim.check("ψ₃ at L = 8/5 has no rational root", spot, Value::Null);
    claim.witness("rootless", json!(empty));
    claim
}

/// `j(E_L)` is a nonzero rational square.
pub fn j_square(s: &Sampling) -> Claim {
    let mut claim = Claim::new("j-square");
    s.params(&mut claim);
    claim.param("count", json!(s.psi3_count));
    let ls = sample_nice_l(s.psi3_count, s.seed, s.height);
    let mut squares = 0;
    for (_, l) in &ls {
        match j_invariant(l) {
            Ok(j) if j != int(0) && is_square(&j).is_some() => squares += 1,
            Ok(j) => {
                claim.check(format!("j at L = {l} is a nonzero square"), false, json!({"L": l.to_json(), "j": j.to_json()}));
            }
            Err(e) => {
                claim.check(format!("j at L = {l}"), false, json!({"L": l.to_json(), "error": e.to_string()}));
            }
        }
    }
    claim.witness("squares", json!(squares));
    claim.check(format!("{} nice L sampled", s.psi3_count), ls.len() == s.psi3_count, json!({"sampled": ls.len()}));
    let spot = rat(686, 15);
    let j = j_invariant(&rat(8, 5)).ok();
    claim.check("j(8/5) = (686/15)²", j.as_ref() == Some(&(&spot * &spot)), json!({"j": j.map(|j| j.to_json())}));
    claim.note("j ≠ 0 and j ∈ ℚ² are recorded per sample; the CM classification itself is not re-derived");
    claim
}

/// For the `u`-family: one critical value in ℚ², the other in −3·ℚ², both
/// points non-torsion and `σ(Q) = −Q` over ℚ(√−3).
pub fn rank2_family(s: &Sampling) -> Claim {
    let mut claim = Claim::new("thm1.iii-iv");
    s.params(&mut claim);
    claim.param("count", json!(s.u_count));
    let us = sample_special_u(s.u_count, s.seed, s.height);
    claim.check(format!("{} u sampled", s.u_count), us.len() == s.u_count, json!({"sampled": us.len()}));
    let results: Vec<_> = us.par_iter().map(|u| (u.clone(), critical_split(u), rank2_witnesses(u))).collect();
    let mut certified = 0;
    for (u, split, w) in results {
        let ops = json!({"u": u.to_json()});
        if !split {
            claim.check(format!("u = {u}: one critical value in ℚ², the other in −3·ℚ²"), false, ops.clone());
        }
        match w {
            Ok(w) if w.certified() => certified += 1,
            Ok(w) => {
                claim.check(
                    format!("u = {u}: witnesses certified"),
                    false,
                    json!({"u": u.to_json(), "P_non_torsion": w.p_non_torsion, "Q_non_torsion": w.q_non_torsion,
                           "sigma_Q_is_minus_Q": w.sigma_q_is_neg_q, "sigma_P_is_P": w.sigma_p_is_p}),
                );
            }
            Err(e) => {
                claim.check(format!("u = {u}"), false, json!({"u": u.to_json(), "error": e.to_string()}));
            }
        }
    }
    claim.witness("certified", json!(certified));
    for (u, p, q_coeff, qx) in [(2, (rat(3, 8), rat(15, 32)), rat(7, 72), rat(7, 6)), (3, (rat(4, 9), rat(20, 27)), rat(2, 3), int(2))] {
        let w = rank2_witnesses(&int(u));
        let Some(w) = claim.check_result(format!("u = {u} witnesses"), w) else { continue };
        let px = (w.p.x().cloned(), w.p.y().cloned());
        claim.check(format!("u = {u}: P = ({}, {})", p.0, p.1), px == (Some(p.0.clone()), Some(p.1.clone())), json!({"P": w.p.to_json()}));
        let got = (w.q.x().map(|x| x.a().clone()), w.q_coeff.clone());
        claim.check(
            format!("u = {u}: Q = ({qx}, ({q_coeff})√−3)"),
            got == (Some(qx.clone()), q_coeff.clone()),
            json!({"Q": w.q.to_json()}),
        );
    }
    claim
}

fn critical_split(u: &Rational) -> bool {
    let Ok(nc) = special_l(u) else { return false };
    let square = |c: &Rational| is_square(&nc.f(c)).is_some();
    let minus_three = |c: &Rational| is_square(&(-nc.f(c) / int(3))).is_some();
    (square(&nc.r) && !square(&nc.s) && minus_three(&nc.s)) || (square(&nc.s) && !square(&nc.r) && minus_three(&nc.r))
}

/// The identities along the descent from a 3-torsion point to `H`.
pub fn descent(s: &Sampling) -> VerificationReport {
    let mut claim = Claim::new("prop3T.descent");
    s.params(&mut claim);
    claim.param("count", json!(s.identity_count));
    let ls = sample_nice_l(s.identity_count, s.seed, s.height);
    let xs = sample_special_u(s.identity_count, s.seed ^ 0x5EED, s.height);
    for ((_, l), x) in ls.iter().zip(&xs) {
        let ops = json!({"L": l.to_json(), "x": x.to_json()});
        match descent_chain(l, x) {
            Ok(w) => {
                if !(w.discriminant_identity && w.quartic_identity && w.links_hold()) {
                    claim.check(format!("L = {l}, x = {x}: chain identities"), false, w.to_json());
                }
            }
            Err(e) => {
                claim.check(format!("L = {l}, x = {x}"), false, json!({"at": ops, "error": e.to_string()}));
            }
        }
        if shifted_psi3(l) != shifted_psi3_expected(l) {
            claim.check(format!("L = {l}: shifted ψ₃ coefficients"), false, ops);
        }
    }
    claim.check(
        format!("A² − 4B = −3/x² and the shifted-ψ₃ identity at {} specializations", ls.len().min(xs.len())),
        claim.passed() && ls.len() == s.identity_count && xs.len() == s.identity_count,
        json!({"specializations": ls.len().min(xs.len())}),
    );

    let cusps = singular_points();
    if let Some(c) = claim.check_result("singular points of S", cusps) {
        let at = c.iter().map(|p| [p.a.to_json(), p.b.to_json()]).collect::<Vec<_>>();
        claim.check("the only singular point is (3, 9)", c == vec![CuspCubicPoint::new(int(3), int(9))], json!(at));
    }
    let stated = CuspCubicPoint::new(int(-3), rat(9, 2));
    claim.witness("stated_cusp_singular", json!(stated.is_on() && stated.is_singular()));
    claim.note("the cusp of S sits at (3, 9) by vanishing partials; the source states (−3, 9/2), which is not a singular point of S");

    for (u, v) in [(int(0), int(1)), (int(1), int(4)), (rat(1, 3), rat(4, 9))] {
        let got = sextic_condition(&u);
        claim.check(format!("sextic condition at u = {u} gives v = {v}"), got.as_ref() == Some(&v), json!({"v": got.map(|v| v.to_json())}));
    }
    let h_points = listed_h_points();
    for (a, b, c) in [(0, 1, 1), (3, 4, 9)] {
        let image = c_to_h(&int(a), &int(b), &int(c));
        if let Some(p) = claim.check_result(format!("C → H at ({a}, {b}, {c})"), image) {
            claim.check(format!("({a}, {b}, {c}) ↦ {p} is a listed point of H"), h_points.contains(&p), json!({"image": p.to_json()}));
        }
    }
    let mut report = VerificationReport::new();
    report.push(claim);
    report.extend(conclude_no_3torsion(&u_values_from_h(&h_points)));
    report
}

/// Cantor arithmetic against the zeta-function count at the two smallest good
/// primes up to 11.
pub fn jacobian_oracle() -> Claim {
    let mut claim = Claim::new("jacobian-oracle");
    let curve = HyperCurve::h_q();
    let primes: Vec<u64> = [3u64, 5, 7, 11].into_iter().filter(|&p| curve.has_good_reduction(p)).take(2).collect();
    claim.param("primes", json!(primes));
    claim.check("two good primes ≤ 11", primes.len() == 2, json!(primes));
    for p in primes {
        let zeta = jacobian_order_fp(&curve, p);
        let jac = curve.reduce_mod(p).and_then(Jacobian::new);
        let (Some(zeta), Some(jac)) = (claim.check_result(format!("p = {p}: zeta count"), zeta), claim.check_result(format!("p = {p}: Jacobian"), jac)) else {
            continue;
        };
        let elements = enumerate_jacobian(&jac);
        let n = elements.len() as u64;
        let orders: Vec<u64> = elements.iter().map(|d| naive_order(&jac, d, n)).collect();
        let lagrange = orders.iter().all(|&m| m > 0 && n % m == 0);
        let exponent = orders.iter().copied().fold(1, lcm);
        let mut stats = std::collections::BTreeMap::new();
        for m in &orders {
            *stats.entry(*m).or_insert(0u64) += 1;
        }
        claim.witness(format!("p{p}"), json!({"enumerated": n, "zeta": zeta, "exponent": exponent,
            "order_statistics": stats.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>()}));
        claim.check(format!("p = {p}: every element order divides the group size"), lagrange, json!({"size": n}));
        claim.check(format!("p = {p}: Cantor group order = zeta count"), n == zeta, json!({"enumerated": n, "zeta": zeta}));
    }
    claim
}

fn naive_order(jac: &Jacobian<Fp>, d: &MumfordDivisor<Fp>, limit: u64) -> u64 {
    let mut acc = d.clone();
    for k in 1..=limit {
        if acc.is_identity() {
            return k;
        }
        acc = jac.add(&acc, d);
    }
    0
}

fn lcm(a: u64, b: u64) -> u64 {
    use num_integer::Integer;
    a.lcm(&b)
}

pub fn torsion(l: &Rational, d: i64) -> nicecurve_core::Result<VerificationReport> {
    let c = torsion_classification(l, d)?;
    let mut claim = Claim::new("torsion");
    claim.param("L", l.to_json()).param("d", json!(d));
    claim.witness("torsion", json!(c.code.to_string())).witness("distinguished_d", json!(c.distinguished_d));
    let expected = if d == c.distinguished_d { TorsionCode::Z2xZ4 } else { TorsionCode::Z2xZ2 };
    claim.check("label rule agrees", c.code == expected, json!({"expected": expected, "got": c.code}));
    if c.code == TorsionCode::Z2xZ4 {
        let (code, w) = classify(l, d).map_err(nicecurve_core::Error::VerificationFailure)?;
        claim.check("order-4 witness verified by the group law", code == c.code && w.is_some(), json!({"point": w}));
        if let Some(w) = &c.witness {
            claim.witness("witness_label", json!(w.label));
        }
    }
    let mut report = VerificationReport::new();
    report.push(claim);
    Ok(report)
}

pub fn twist(l: &Rational, d: i64) -> nicecurve_core::Result<VerificationReport> {
    NiceCurve::new(l.clone())?;
    let t = quadratic_twist(l, d)?;
    let e = RationalCurve::nice(l)?;
    let mut claim = Claim::new("twist");
    claim.param("L", l.to_json()).param("D", json!(d));
    claim.witness("twist_curve", json!({"a2": t.a2().to_json(), "a4": t.a4().to_json(), "a6": t.a6().to_json()}));
    let dec = torsion_decomposition_check(l, d)?;
    claim.witness("three_torsion", json!(dec));
    claim.check("E(ℚ(√D))[3] ≅ E(ℚ)[3] ⊕ E^D(ℚ)[3]", dec.holds(), json!(dec));
    let k = nice_over(l, d)?;
    let tk = t.base_change(|c| nicecurve_core::arith::QuadExtElem::from_rational(c.clone(), d).expect("d checked"));
    let two_torsion = [int(0), int(1), l.clone()];
    for x in two_torsion {
        let p = e.point(x.clone(), int(0))?;
        let image = twist_transport(&p, d)?;
        let back = twist_transport_inverse(&image, d)?;
        let p_k = p.map(|c| nicecurve_core::arith::QuadExtElem::from_rational(c.clone(), d).expect("d checked"));
        claim.check(format!("({x}, 0) transports onto E^D"), tk.contains(&image), json!({"image": image.to_json()}));
        claim.check(format!("({x}, 0) transports back"), back == p_k && k.contains(&back), Value::Null);
    }
    let mut report = VerificationReport::new();
    report.push(claim);
    Ok(report)
}

/// One row of a `t` sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct TRow {
    pub t: Rational,
    pub nice: NiceCurve,
    pub torsion_class_d: i64,
    pub j: Rational,
}

impl TRow {
    pub const CSV_HEADER: &'static str = "t,L,W,r,s,torsion_class_d,j_num,j_den";

    pub fn csv(&self) -> String {
        let r = |q: &Rational| nicecurve_core::arith::rational::rational_to_string(q);
        format!(
            "{},{},{},{},{},{},{},{}",
            r(&self.t),
            r(&self.nice.l),
            r(&self.nice.w),
            r(&self.nice.r),
            r(&self.nice.s),
            self.torsion_class_d,
            self.j.numer(),
            self.j.denom()
        )
    }
}

pub fn t_row(t: &Rational) -> nicecurve_core::Result<TRow> {
    let (l, _) = param_l(t)?;
    let nice = NiceCurve::new(l.clone())?;
    Ok(TRow { t: t.clone(), torsion_class_d: distinguished_d(&l)?, j: j_invariant(&l)?, nice })
}

/// `L = param_L(t)` for each `t`, with `W² = L² − L + 1` and the inverse map.
pub fn param_t(ts: &[Rational]) -> (VerificationReport, Vec<TRow>) {
    let mut claim = Claim::new("param.t");
    let mut rows = Vec::new();
    for t in ts {
        let Some(row) = claim.check_result(format!("t = {t}"), t_row(t)) else { continue };
        let l = &row.nice.l;
        let w = &row.nice.w;
        claim.check(format!("t = {t}: W² = L² − L + 1"), w * w == l * l - l + int(1), Value::Null);
        let back = param_inverse(l, w).or_else(|_| param_inverse(l, &-w.clone()));
        let recovered = nicecurve_core::nice::param_preimages(l).map(|p| p.contains(t)).unwrap_or(false);
        claim.check(format!("t = {t}: recovered from L"), recovered, json!({"inverse": back.ok().map(|b| b.to_json())}));
        rows.push(row);
    }
    claim.witness(
        "rows",
        json!(rows
            .iter()
            .map(|r| json!({"t": r.t.to_json(), "nice": r.nice.summary(), "torsion_class_d": r.torsion_class_d, "j": r.j.to_json()}))
            .collect::<Vec<_>>()),
    );
    let mut report = VerificationReport::new();
    report.push(claim);
    (report, rows)
}

/// The special `L` of each `u` with its two independent points.
pub fn param_u(us: &[Rational]) -> VerificationReport {
    let mut claim = Claim::new("param.u");
    let mut rows = Vec::new();
    for u in us {
        let Some(w) = claim.check_result(format!("u = {u}"), rank2_witnesses(u)) else { continue };
        claim.check(format!("u = {u}: witnesses certified"), w.certified(), Value::Null);
        rows.push(json!({"u": u.to_json(), "nice": w.nice.summary(), "P": w.p.to_json(), "Q": w.q.to_json(), "P_root": w.p_root}));
    }
    claim.witness("rows", json!(rows));
    let mut report = VerificationReport::new();
    report.push(claim);
    report
}

pub fn chabauty(prime: Option<u64>, precision: u32) -> VerificationReport {
    let mut report = certify_count(prime, precision);
    let p = report
        .claim("chabauty.count")
        .and_then(|c| c.parameters.get("p"))
        .and_then(Value::as_u64)
        .unwrap_or(5);
    report.push(negative_control(p, precision.min(DEFAULT_PRECISION)));
    report
}

/// The theorem-level campaigns.
pub fn verify_theorem(s: &Sampling) -> VerificationReport {
    let jobs: Vec<Job<'_>> = vec![
        Box::new(|| single(quadratic_torsion(s))),
        Box::new(|| single(psi3_rootless(s))),
        Box::new(|| single(rank2_family(s))),
        Box::new(|| single(j_square(s))),
        Box::new(|| descent(s)),
        Box::new(aux_lemma_curves_check),
    ];
    run_all(jobs)
}

/// Everything: theorem campaigns, point searches, the Jacobian oracle and the
/// Chabauty certificate.
pub fn full_report(s: &Sampling, bound: u64, prime: Option<u64>, precision: u32) -> VerificationReport {
    let jobs: Vec<Job<'_>> = vec![
        Box::new(|| verify_theorem(s)),
        Box::new(move || search(SearchCurve::Hq, bound)),
        Box::new(move || search(SearchCurve::H, bound)),
        Box::new(|| single(jacobian_oracle())),
        Box::new(move || chabauty(prime, precision)),
    ];
    run_all(jobs)
}

fn single(c: Claim) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.push(c);
    r
}

type Job<'a> = Box<dyn Fn() -> VerificationReport + Send + Sync + 'a>;

/// Runs the jobs in parallel and concatenates their reports in job order.
fn run_all(jobs: Vec<Job<'_>>) -> VerificationReport {
    let parts: Vec<VerificationReport> = jobs.par_iter().map(|j| j()).collect();
    let mut report = VerificationReport::new();
    for p in parts {
        report.extend(p);
    }
    report
}
