use crate::arith::{int, squarefree_part, QuadExtElem};
use crate::elliptic::{has_order3_over, has_order4_over, is_torsion, Order4Witness, TorsionCode};
use crate::error::{Error, Result};
use crate::{Rational, RationalCurve};

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionClassification {
    pub l: Rational,
    pub d: i64,
    pub code: TorsionCode,
    /// Label of ℚ(√(1 − L)).
    pub distinguished_d: i64,
    pub witness: Option<Order4Witness>,
}

/// The squarefree `d` with ℚ(√d) = ℚ(√(1 − L)).
pub fn distinguished_d(l: &Rational) -> Result<i64> {
    QuadExtElem::label(&squarefree_part(&(int(1) - l))?)
}

/// `E_L(ℚ(√d))_tors`, derived twice: from the field label alone, and from an
/// explicit search for points of order 4 and 3. The two must agree.
pub fn torsion_classification(l: &Rational, d: i64) -> Result<TorsionClassification> {
    super::NiceCurve::new(l.clone())?;
    QuadExtElem::sqrt_d(d)?;
    let dist = distinguished_d(l)?;
    let by_label = if d == dist { TorsionCode::Z2xZ4 } else { TorsionCode::Z2xZ2 };

    let curve = RationalCurve::nice(l)?;
    if let Some(p) = has_order3_over(&curve, d)? {
        return Err(Error::ContractViolation(format!("E_{l} has a point of order 3 over ℚ(√{d}): {p:?}")));
    }
    let witness = has_order4_over(l, d)?;
    let by_search = match &witness {
        Some(w) => {
            let k = crate::elliptic::torsion::nice_over(l, d)?;
            if !k.contains(&w.point) || !is_torsion(&k, &w.point) {
                return Err(Error::VerificationFailure(format!("witness {:?} rejected", w.point)));
            }
            TorsionCode::Z2xZ4
        }
        None => TorsionCode::Z2xZ2,
    };
    if by_label != by_search {
        return Err(Error::ContractViolation(format!(
            "L = {l}, d = {d}: label path gives {by_label}, search path gives {by_search}"
        )));
    }
    Ok(TorsionClassification { l: l.clone(), d, code: by_search, distinguished_d: dist, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn examples() {
        let c = torsion_classification(&rat(8, 5), -15).unwrap();
        assert_eq!(c.code, TorsionCode::Z2xZ4);
        assert!(c.witness.is_some());
        assert_eq!(torsion_classification(&rat(8, 5), 2).unwrap().code, TorsionCode::Z2xZ2);
        assert_eq!(torsion_classification(&rat(21, 16), -5).unwrap().code, TorsionCode::Z2xZ4);
        assert!(torsion_classification(&rat(8, 5), 1).is_err());
        assert!(matches!(torsion_classification(&rat(2, 1), -1), Err(Error::Domain(_))));
    }
}
