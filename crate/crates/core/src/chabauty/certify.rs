//! The end-to-end certificate: prime sweep, consistency checks and verdict.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hyper::{HyperCurve, Jacobian, MumfordDivisor};
use crate::padic::Padic;
use crate::report::{Claim, ToJson, VerificationReport};
use crate::scalar::Field;
use crate::Rational;

use super::bounds::{disk_zero_bounds, ZeroBounds};
use super::integrals::{
    annihilating_differential, class_integrals, class_integrals_with_multiplier, pair_value, point_class,
    reduction_order, ClassIntegral,
};
use super::setup::{rational_weierstrass_points, ColemanSetup};

pub const DEFAULT_PRECISION: u32 = 30;
pub const RETRY_PRECISION: u32 = 60;
pub const SWEEP_LIMIT: u64 = 50;
/// Digits lost to the multiplier and normalization that the checks tolerate.
pub const SLACK: i64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "COMPLETE")]
    Complete,
    #[serde(rename = "PARTIAL")]
    Partial,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Complete => "COMPLETE",
            Verdict::Partial => "PARTIAL",
        })
    }
}

/// Everything computed at one prime.
#[derive(Debug, Clone)]
pub struct PrimeRun {
    pub setup: ColemanSetup,
    pub generator: ClassIntegral,
    pub annihilator: (Padic, Padic),
    pub bounds: ZeroBounds,
}

impl PrimeRun {
    pub fn p(&self) -> u64 {
        self.setup.p
    }

    pub fn verdict(&self) -> Verdict {
        if self.bounds.bound == self.setup.known.len() {
            Verdict::Complete
        } else {
            Verdict::Partial
        }
    }
}

/// One attempt in the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct Attempt {
    pub p: u64,
    pub precision: u32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

pub fn run_at(setup: ColemanSetup) -> Result<PrimeRun> {
    let generator = class_integrals(&setup, &setup.generator)?;
    let annihilator = annihilating_differential(&generator.values[0], &generator.values[1])?;
    let bounds = disk_zero_bounds(&setup, &annihilator)?;
    Ok(PrimeRun { setup, generator, annihilator, bounds })
}

/// Runs at `p`, retrying once at higher precision.
pub fn run_at_prime(p: u64, precision: u32, attempts: &mut Vec<Attempt>) -> Result<PrimeRun> {
    let mut prec = precision;
    loop {
        let outcome = ColemanSetup::new(p, prec).and_then(run_at);
        match &outcome {
            Ok(r) => attempts.push(Attempt { p, precision: prec, outcome: "ok".into(), bound: Some(r.bounds.bound) }),
            Err(e) => attempts.push(Attempt { p, precision: prec, outcome: e.to_string(), bound: None }),
        }
        match outcome {
            Err(Error::InsufficientPrecision(r)) if prec < RETRY_PRECISION => {
                let _ = r;
                prec = RETRY_PRECISION;
            }
            Err(Error::InsufficientPrecision(r)) => return Err(Error::PrimeUnusable { p, reason: r }),
            other => return other,
        }
    }
}

/// Good primes `5 ≤ p ≤ limit` in increasing order, stopping at the first
/// whose bound equals the known count; otherwise the smallest bound found.
pub fn prime_sweep(limit: u64, precision: u32) -> (Option<PrimeRun>, Vec<Attempt>) {
    let curve = HyperCurve::h_q();
    let mut attempts = Vec::new();
    let mut best: Option<PrimeRun> = None;
    for p in (5..=limit).filter(|&p| crate::arith::finite_field::is_prime_u64(p)) {
        if !curve.has_good_reduction(p) {
            attempts.push(Attempt { p, precision, outcome: "bad reduction".into(), bound: None });
            continue;
        }
        if let Ok(run) = run_at_prime(p, precision, &mut attempts) {
            let done = run.verdict() == Verdict::Complete;
            if best.as_ref().is_none_or(|b| run.bounds.bound < b.bounds.bound) {
                best = Some(run);
            }
            if done {
                break;
            }
        }
    }
    (best, attempts)
}

/// Orders of the reduction of `d` at good primes up to `limit`; two
/// different orders rule out torsion, which injects into `J(𝔽_p)` for odd
/// good `p`.
pub fn certify_non_torsion(curve: &HyperCurve, d: &MumfordDivisor<Rational>, limit: u64) -> Claim {
    let mut claim = Claim::new("chabauty.generator-non-torsion");
    let mut orders: Vec<(u64, u64)> = Vec::new();
    for p in (3..=limit).filter(|&p| crate::arith::finite_field::is_prime_u64(p) && curve.has_good_reduction(p)) {
        let Some(dp) = d.reduce_mod(p) else { continue };
        let Ok(jp) = curve.reduce_mod(p).and_then(Jacobian::new) else { continue };
        let Ok(n) = crate::hyper::jacobian_order_fp(curve, p) else { continue };
        if let Ok(m) = crate::hyper::order_in_jfp(&jp, &dp, n) {
            orders.push((p, m));
        }
    }
    let witness = orders.iter().find_map(|a| orders.iter().find(|b| b.1 != a.1).map(|b| (*a, *b)));
    claim.witness("orders", json!(orders.iter().map(|(p, m)| json!({"p": p, "order": m})).collect::<Vec<_>>()));
    claim.check("reduction orders differ at two good primes", witness.is_some(), json!(witness.map(|(a, b)| [a, b])));
    claim
}

fn digits(x: &Padic) -> i64 {
    x.vanishing_digits()
}

/// The full Chabauty suite on `H_q` at `prime` (or the sweep when `None`).
pub fn certify_count(prime: Option<u64>, precision: u32) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.push(Claim::trusted(
        "chabauty.rank",
        "rank 1 of the Jacobian of the genus-2 quotient, with generator [(0,−1) − ∞], as stated in the source",
    ));
    let curve = HyperCurve::h_q();
    let gen = Jacobian::new(curve.g().clone()).and_then(|j| j.from_point(&crate::arith::int(0), &crate::arith::int(-1)));
    let gen = match gen {
        Ok(g) => g,
        Err(e) => {
            let mut c = Claim::new("chabauty.setup");
            c.check("generator", false, json!({"error": e.to_string()}));
            report.push(c);
            return report;
        }
    };
    report.push(certify_non_torsion(&curve, &gen, SWEEP_LIMIT));

    let (run, attempts) = match prime {
        Some(p) => {
            let mut attempts = Vec::new();
            let r = run_at_prime(p, precision, &mut attempts).ok();
            (r, attempts)
        }
        None => prime_sweep(SWEEP_LIMIT, precision),
    };
    let Some(run) = run else {
        let mut c = Claim::new("chabauty.count");
        c.witness("attempts", json!(attempts));
        c.check("some prime usable", false, Value::Null);
        report.push(c);
        return report;
    };
    let setup = &run.setup;
    let need = setup.precision as i64 - SLACK;

    report.push(torsion_claim(setup, need));
    report.push(pairwise_claim(&run, need));
    report.push(linearity_claim(&run, need));
    report.push(count_claim(&run, &attempts, need));
    report
}

fn torsion_claim(setup: &ColemanSetup, need: i64) -> Claim {
    let mut claim = Claim::new("chabauty.torsion-vanishing");
    claim.param("p", json!(setup.p)).param("precision", json!(setup.precision)).param("min_digits", json!(need));
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let zero = q(0, 1);
    let jac = &setup.jac;
    let w1 = jac.from_point(&q(-1, 1), &zero);
    let w2 = jac.from_point(&q(-1, 4), &zero);
    let (Some(w1), Some(w2)) = (claim.check_result("W₁", w1), claim.check_result("W₂", w2)) else { return claim };
    let w3 = jac.add(&w1, &w2);
    let Some(base) = claim.check_result("generator integrals", class_integrals(setup, &setup.generator)) else { return claim };
    for (name, w) in [("W₁", &w1), ("W₂", &w2), ("W₁ + W₂", &w3)] {
        claim.check(format!("2·{name} = 0"), jac.double(w).is_identity(), Value::Null);
        let shifted = class_integrals(setup, &jac.add(&setup.generator, w));
        let Some(shifted) = claim.check_result(format!("integrals over D + {name}"), shifted) else { continue };
        for j in 0..2 {
            let diff = shifted.values[j].clone() - base.values[j].clone();
            claim.check(
                format!("∫ω{j} over {name} vanishes"),
                digits(&diff) >= need,
                json!({"digits": digits(&diff), "multiplier": shifted.multiplier}),
            );
        }
    }
    claim
}

fn pairwise_claim(run: &PrimeRun, need: i64) -> Claim {
    let setup = &run.setup;
    let mut claim = Claim::new("chabauty.pairwise-annihilation");
    claim.param("p", json!(setup.p)).param("min_digits", json!(need));
    let mut values = Vec::new();
    for pt in &setup.known {
        let v = point_class(setup, pt).and_then(|d| class_integrals(setup, &d));
        match claim.check_result(format!("integrals over [{} − ∞]", pt.to_strings().join(":")), v) {
            Some(v) => values.push((pt, v)),
            None => return claim,
        }
    }
    let mut min = i64::MAX;
    let mut pairs = 0;
    for i in 0..values.len() {
        for k in i + 1..values.len() {
            let a = pair_value(&run.annihilator, &values[i].1.values);
            let b = pair_value(&run.annihilator, &values[k].1.values);
            let d = digits(&(a - b));
            min = min.min(d);
            pairs += 1;
            claim.check(
                format!("ω_A over [{} − {}]", values[i].0.to_strings().join(":"), values[k].0.to_strings().join(":")),
                d >= need,
                json!({"digits": d}),
            );
        }
    }
    claim.witness("pairs", json!(pairs)).witness("min_digits", json!(min));
    claim
}

fn linearity_claim(run: &PrimeRun, need: i64) -> Claim {
    let setup = &run.setup;
    let mut claim = Claim::new("chabauty.linearity");
    let m = run.generator.multiplier;
    let Some(double) = claim.check_result("integrals with multiplier 2m", class_integrals_with_multiplier(setup, &setup.generator, 2 * m)) else {
        return claim;
    };
    for j in 0..2 {
        let d = digits(&(double.values[j].clone() - run.generator.values[j].clone()));
        claim.check(format!("I{j}(m) = I{j}(2m)"), d >= need, json!({"digits": d, "m": m}));
    }
    if let Some(c2) = claim.check_result("annihilator from 2m", annihilating_differential(&double.values[0], &double.values[1])) {
        let cross = run.annihilator.0.clone() * c2.1.clone() - run.annihilator.1.clone() * c2.0;
        claim.check("annihilators proportional", digits(&cross) >= need, json!({"digits": digits(&cross)}));
    }
    claim
}

fn count_claim(run: &PrimeRun, attempts: &[super::certify::Attempt], need: i64) -> Claim {
    let setup = &run.setup;
    let b = &run.bounds;
    let mut claim = Claim::new("chabauty.count");
    claim
        .param("p", json!(setup.p))
        .param("precision", json!(setup.precision))
        .param("series_terms", json!(setup.terms))
        .param("jacobian_order", json!(setup.jacobian_order))
        .param("multiplier", json!(run.generator.multiplier));
    claim.witness("attempts", json!(attempts));
    claim.witness("known_points", setup.known.to_json());
    claim.witness("annihilator", json!([run.annihilator.0.to_string(), run.annihilator.1.to_string()]));
    claim.witness("disks", json!(b.disks.iter().map(|d| json!({
        "residue": d.residue.to_string(),
        "kind": d.kind,
        "method": d.method,
        "strassmann": d.strassmann,
        "bound": d.bound,
        "known": d.known.to_json(),
        "odd_root": d.square_root,
    })).collect::<Vec<_>>()));
    claim.witness("disk_sum", json!(b.disk_sum)).witness("coleman_bound", json!(b.coleman)).witness("bound", json!(b.bound));

    // unanchored Weierstrass centres are irrational only if every rational
    // root of f is a known point
    let roots = rational_weierstrass_points(setup);
    let covered = roots.as_ref().is_ok_and(|rs| rs.iter().all(|r| setup.known.iter().any(|k| !k.is_infinite() && k.x() == r)));
    claim.check("rational roots of f are known points", covered, json!(roots.ok().map(|r| r.to_json())));
    for d in &b.disks {
        claim.check(format!("disk {}: known ≤ Strassmann", d.residue), d.known.len() <= d.strassmann, json!({"known": d.known.len(), "strassmann": d.strassmann}));
        for (k, v) in d.known.iter().zip(&d.known_values) {
            claim.check(
                format!("disk {}: ∫ω_A vanishes at {}", d.residue, k.to_strings().join(":")),
                digits(v) >= need,
                json!({"digits": digits(v)}),
            );
        }
    }
    claim.check("bound ≥ known points", b.bound >= setup.known.len(), json!({"bound": b.bound, "known": setup.known.len()}));
    claim.check("bound ≤ |C(𝔽_p)| + 2", b.bound <= b.coleman, json!({"bound": b.bound, "coleman": b.coleman}));
    let verdict = run.verdict();
    claim.witness("verdict", json!(verdict));
    if verdict == Verdict::Partial {
        let open: Vec<String> = b.disks.iter().filter(|d| !d.is_closed()).map(|d| d.residue.to_string()).collect();
        claim.witness("unresolved_disks", json!(open));
        claim.mark_partial(format!("certified bound {} exceeds the {} known points", b.bound, setup.known.len()));
    }
    claim
}

/// Runs the pipeline with a wrong (torsion) generator; passes when the
/// torsion generator is caught.
pub fn negative_control(p: u64, precision: u32) -> Claim {
    let mut claim = Claim::new("chabauty.negative-control");
    let curve = HyperCurve::h_q();
    let q = |n: i64| Rational::from_integer(n.into());
    let outcome = Jacobian::new(curve.g().clone())
        .and_then(|j| j.from_point(&q(-1), &q(0)))
        .and_then(|w| ColemanSetup::with_generator(curve, w, p, precision))
        .and_then(|s| {
            let m = reduction_order(&s, &s.generator)?;
            let ci = class_integrals(&s, &s.generator)?;
            Ok((m, ci))
        });
    match outcome {
        Ok((m, ci)) => {
            let flagged = ci.values.iter().all(|v| v.is_zero());
            claim.check("torsion generator has vanishing integrals", flagged, json!({"multiplier": m}));
            let refused = annihilating_differential(&ci.values[0], &ci.values[1]);
            claim.check(
                "annihilator refused",
                matches!(refused, Err(Error::InsufficientPrecision(_))),
                Value::Null,
            );
        }
        Err(e) => {
            claim.check("pipeline ran", false, json!({"error": e.to_string()}));
        }
    }
    claim
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_partial_at_five() {
        // the disk of (−1, 0) keeps a triple zero: ω_A vanishes there to
        // working precision, so the bound stops at 9
        let r = certify_count(None, DEFAULT_PRECISION);
        let c = r.claim("chabauty.count").unwrap();
        assert_eq!(c.witnesses["verdict"], "PARTIAL");
        assert_eq!(c.parameters["p"], 5);
        assert_eq!(c.witnesses["bound"], 9);
        assert_eq!(c.witnesses["unresolved_disks"], json!(["(4, 0)"]));
        for id in ["chabauty.generator-non-torsion", "chabauty.torsion-vanishing", "chabauty.pairwise-annihilation", "chabauty.linearity"] {
            assert!(r.claim(id).unwrap().passed(), "{id}");
        }
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn negative_control_is_flagged() {
        assert!(negative_control(5, 30).passed());
    }
}
