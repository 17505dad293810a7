//! Genus-1 curves that rule out rational points of order 4 on `E_L`.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde_json::json;

use crate::arith::rational::divisors;
use crate::arith::{int, is_square, rational_roots, rat};
use crate::elliptic::{EllipticCurve, EllipticPoint};
use crate::error::Result;
use crate::report::{Claim, ToJson, VerificationReport};
use crate::{QPoly, Rational, RationalCurve, RationalPoint};

fn pt(x: Rational, y: Rational) -> RationalPoint {
    EllipticPoint::Affine { x, y }
}

/// Torsion points of `y² = x³ + a₄x + a₆` (`a₄, a₆` integers): every
/// candidate has integral `x` and `y = 0` or `y² | 4a₄³ + 27a₆²`.
pub fn lutz_nagell_points(a4: i64, a6: i64) -> Result<Vec<RationalPoint>> {
    let curve = RationalCurve::new(int(0), int(a4), int(a6))?;
    let disc = BigInt::from(4) * BigInt::from(a4).pow(3) + BigInt::from(27) * BigInt::from(a6).pow(2);
    let disc = disc.abs().to_biguint().expect("nonnegative");
    let mut ys = vec![BigUint::from(0u32)];
    for d in divisors(&disc)? {
        if let Some(r) = is_square(&Rational::from_integer(BigInt::from(d))) {
            let y = r.to_integer().to_biguint().expect("nonnegative");
            if !ys.contains(&y) {
                ys.push(y);
            }
        }
    }
    let mut out = vec![EllipticPoint::Infinity];
    for y in ys {
        let y = Rational::from_integer(BigInt::from(y));
        let cubic = QPoly::new(vec![int(a6) - &y * &y, int(a4), int(0), int(1)]);
        for x in rational_roots(&cubic)? {
            if !x.is_integer() {
                continue;
            }
            for y in [y.clone(), -y.clone()] {
                let p = pt(x.clone(), y);
                if curve.order_up_to(&p, 12).is_some() && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

fn closed<F: crate::Field>(curve: &EllipticCurve<F>, pts: &[EllipticPoint<F>]) -> bool {
    pts.iter().all(|p| pts.iter().all(|q| pts.contains(&curve.add(p, q))))
}

fn group_claim(id: &str, curve: &RationalCurve, pts: &[RationalPoint], gen: &RationalPoint) -> Claim {
    let mut c = Claim::new(id);
    c.witness("points", pts.to_vec().to_json());
    for p in pts {
        c.check(format!("{} on curve", p.to_json()), curve.contains(p), json!(null));
    }
    c.check("closed under the group law", closed(curve, pts), json!(null));
    let ord = curve.order_up_to(gen, 12);
    c.check(
        format!("{} has order 4", gen.to_json()),
        ord == Some(4),
        json!({ "order": ord }),
    );
    c
}

/// The listed points of `E₁`, `E₂`, the quartic `C` and the torsion of its
/// Jacobian `J`, with the rank-0 statements logged as trusted input.
pub fn aux_lemma_curves_check() -> VerificationReport {
    let mut report = VerificationReport::new();

    // E₁ : y² = x(x² − x + 1)
    let e1 = RationalCurve::new(int(-1), int(1), int(0)).expect("smooth");
    let e1_pts = vec![EllipticPoint::Infinity, pt(int(0), int(0)), pt(int(1), int(-1)), pt(int(1), int(1))];
    report.push(group_claim("aux.E1", &e1, &e1_pts, &pt(int(1), int(1))));

    // E₂ : y² = (1 − x)(x² − x + 1); under x ↦ −x it becomes y² = x³ + 2x² + 2x + 1
    let listed = [(int(1), int(0)), (int(0), int(-1)), (int(0), int(1))];
    let f2 = |x: &Rational| (int(1) - x) * (x * x - x + int(1));
    let e2 = RationalCurve::new(int(2), int(2), int(1)).expect("smooth");
    let e2_pts: Vec<RationalPoint> = std::iter::once(EllipticPoint::Infinity)
        .chain(listed.iter().map(|(x, y)| pt(-x.clone(), y.clone())))
        .collect();
    let mut c2 = group_claim("aux.E2", &e2, &e2_pts, &pt(int(0), int(1)));
    for (x, y) in &listed {
        c2.check(format!("({x}, {y}) on the listed model"), y * y == f2(x), json!(null));
    }
    c2.note("group law evaluated on the monic model obtained by x ↦ −x");
    report.push(c2);

    // C : y² = (x² − x)(x² − x + 1), infinite points (1 : ±1 : 0) in weights (1, 2, 1)
    let mut cc = Claim::new("aux.C");
    let g = |x: &Rational, z: &Rational| (x * x - x * z) * (x * x - x * z + z * z);
    let known = [(int(0), int(0), int(1)), (int(1), int(0), int(1)), (int(1), int(1), int(0)), (int(1), int(-1), int(0))];
    for (x, y, z) in &known {
        cc.check(format!("({x} : {y} : {z}) on C"), y * y == g(x, z), json!(null));
    }
    cc.witness("points", json!(known.iter().map(|(x, y, z)| [x.to_json(), y.to_json(), z.to_json()]).collect::<Vec<_>>()));
    report.push(cc);

    // J : y² = x³ + (2/3)x + 7/27, integral model Y² = X³ + 54X + 189 via (x, y) = (X/9, Y/27)
    let mut cj = Claim::new("aux.J");
    match lutz_nagell_points(54, 189) {
        Ok(tors) => {
            let j = RationalCurve::new(int(0), rat(2, 3), rat(7, 27)).expect("smooth");
            let scaled: Vec<RationalPoint> = tors
                .iter()
                .map(|p| p.map(|c| c.clone()))
                .map(|p| match p {
                    EllipticPoint::Infinity => p,
                    EllipticPoint::Affine { x, y } => pt(x / int(9), y / int(27)),
                })
                .collect();
            cj.witness("torsion", scaled.to_json());
            cj.check("|J(ℚ)_tors| = 4", scaled.len() == 4, json!({ "count": scaled.len() }));
            for p in &scaled {
                cj.check(format!("{} on J", p.to_json()), j.contains(p), json!(null));
            }
            cj.check("closed under the group law", closed(&j, &scaled), json!(null));
        }
        Err(e) => {
            cj.check("Lutz–Nagell search", false, json!({ "error": e.to_string() }));
        }
    }
    report.push(cj);

    report.push(Claim::trusted(
        "aux.ranks",
        "rank 0 of E₁, E₂ and J over ℚ, stated in the source alongside the listed point sets",
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lutz_nagell_control() {
        // y² = x³ + 1 has torsion ℤ/6: ∞, (−1, 0), (0, ±1), (2, ±3)
        assert_eq!(lutz_nagell_points(0, 1).unwrap().len(), 6);
        let j = lutz_nagell_points(54, 189).unwrap();
        assert_eq!(j.len(), 4);
        assert!(j.contains(&pt(int(-3), int(0))) && j.contains(&pt(int(6), int(27))));
    }

    #[test]
    fn all_pass() {
        let r = aux_lemma_curves_check();
        assert_eq!(r.exit_code(), 0, "{}", r.to_text());
        assert_eq!(r.claim("aux.ranks").unwrap().status, crate::report::Status::TrustedInput);
    }
}
