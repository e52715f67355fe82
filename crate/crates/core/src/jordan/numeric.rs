use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::algebra::{Ring, Scalar, SquareMatrix};

use super::symbolic::JordanError;
use super::template::{JordanTemplate, Slot, TExpr};

/// Evaluates a template expression tree with a caller-supplied power rule.
/// Numeric checks power the slot matrix directly; symbolic instantiation
/// substitutes closed forms.
pub(crate) fn eval_texpr<R: Ring>(
    expr: &TExpr,
    pow: &mut impl FnMut(Slot, &crate::ident::IndexPoly) -> Result<SquareMatrix<R>, JordanError>,
) -> Result<SquareMatrix<R>, JordanError> {
    match expr {
        TExpr::Pow(slot, e) => pow(*slot, e),
        TExpr::Jordan(l, r) => {
            let l = eval_texpr(l, pow)?;
            let r = eval_texpr(r, pow)?;
            Ok(l.jordan_product(&r)?)
        }
        TExpr::Ternary(a, b, c) => {
            let a = eval_texpr(a, pow)?;
            let b = eval_texpr(b, pow)?;
            let c = eval_texpr(c, pow)?;
            Ok(SquareMatrix::ternary_product(&a, &b, &c)?)
        }
        TExpr::IntMul(k, e) => Ok(eval_texpr(e, pow)?.scale(&R::from_int(*k))),
        TExpr::Add(l, r) => {
            let l = eval_texpr(l, pow)?;
            let r = eval_texpr(r, pow)?;
            Ok(l.add(&r)?)
        }
        TExpr::Sub(l, r) => {
            let l = eval_texpr(l, pow)?;
            let r = eval_texpr(r, pow)?;
            Ok(l.sub(&r)?)
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NumericVerdict {
    pub template: String,
    pub exponents: Vec<(String, i64)>,
    pub verified: bool,
    /// First differing entry (1-based), with both values rendered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<(usize, usize, String, String)>,
}

/// Evaluates both template sides on concrete matrices with concrete
/// exponent values and compares exactly.
pub fn template_check_numeric(
    template: &JordanTemplate,
    a: &SquareMatrix<Scalar>,
    b: &SquareMatrix<Scalar>,
    c: &SquareMatrix<Scalar>,
    exponents: &[(String, i64)],
) -> Result<NumericVerdict, JordanError> {
    let mut pow = |slot: Slot, e: &crate::ident::IndexPoly| -> Result<SquareMatrix<Scalar>, JordanError> {
        let value = e
            .eval(exponents)
            .ok_or_else(|| JordanError::UnassignedExponent(format!("{e}")))?;
        if value < 0 {
            return Err(JordanError::NegativeExponent {
                form: format!("{e}"),
                value,
            });
        }
        let base = match slot {
            Slot::A => a,
            Slot::B => b,
            Slot::C => c,
        };
        Ok(base.mat_pow(value as u64))
    };
    let lhs = eval_texpr(&template.lhs, &mut pow)?;
    let rhs = eval_texpr(&template.rhs, &mut pow)?;
    let mut mismatch = None;
    if lhs != rhs {
        'outer: for r in 0..lhs.dim() {
            for cidx in 0..lhs.dim() {
                if lhs.entry(r, cidx) != rhs.entry(r, cidx) {
                    mismatch = Some((
                        r + 1,
                        cidx + 1,
                        lhs.entry(r, cidx).to_string(),
                        rhs.entry(r, cidx).to_string(),
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(NumericVerdict {
        template: String::from(template.id),
        exponents: exponents.to_vec(),
        verified: mismatch.is_none(),
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::super::template::{all_templates, template_by_id};
    use super::*;
    use alloc::vec;

    fn exps(pairs: &[(&str, i64)]) -> Vec<(String, i64)> {
        pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    #[test]
    fn j1_with_fibonacci_matrix_and_identity() {
        let j1 = template_by_id("J1").unwrap();
        let f1 = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).unwrap();
        let id = SquareMatrix::identity(2).unwrap();
        let verdict =
            template_check_numeric(&j1, &f1, &id, &id, &exps(&[("n", 2), ("m", 3)])).unwrap();
        assert!(verdict.verified);
    }

    #[test]
    fn j3_on_3x3_rationals() {
        let j3 = template_by_id("J3").unwrap();
        let a = SquareMatrix::from_ints(3, &[1, 2, 0, -1, 3, 1, 2, 0, 1]).unwrap();
        let b = SquareMatrix::from_ints(3, &[0, 1, 1, 1, 0, 2, -2, 1, 1]).unwrap();
        let c = SquareMatrix::from_ints(3, &[3, -1, 0, 0, 1, 1, 1, 0, -2]).unwrap();
        let verdict = template_check_numeric(&j3, &a, &b, &c, &exps(&[("n", 2)])).unwrap();
        assert!(verdict.verified);
    }

    #[test]
    fn wrong_exponent_fails_for_noncommuting_matrices() {
        // claim {a^n, a^m, b^n} = a^(m+n+1) . b^n: false in general
        let mut j1 = template_by_id("J1").unwrap();
        if let TExpr::Jordan(left, _) = &mut j1.rhs {
            if let TExpr::Pow(_, e) = &mut **left {
                *e = e.offset(1);
            }
        }
        let a = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).unwrap();
        let b = SquareMatrix::from_ints(2, &[2, 1, 0, 1]).unwrap();
        let c = SquareMatrix::identity(2).unwrap();
        let verdict =
            template_check_numeric(&j1, &a, &b, &c, &exps(&[("n", 2), ("m", 1)])).unwrap();
        assert!(!verdict.verified);
        assert!(verdict.mismatch.is_some());
    }

    #[test]
    fn all_templates_hold_on_sample_matrices() {
        let a = SquareMatrix::from_ints(2, &[3, -1, 2, 5]).unwrap();
        let b = SquareMatrix::from_ints(2, &[0, 2, 1, -3]).unwrap();
        let c = SquareMatrix::from_ints(2, &[1, 1, -1, 4]).unwrap();
        for template in all_templates() {
            for (n, m, l) in [(1, 1, 1), (2, 3, 1), (3, 2, 2)] {
                let verdict = template_check_numeric(
                    &template,
                    &a,
                    &b,
                    &c,
                    &exps(&[("n", n), ("m", m), ("l", l)]),
                )
                .unwrap();
                assert!(
                    verdict.verified,
                    "{} failed at n={n} m={m} l={l}: {:?}",
                    template.id, verdict.mismatch
                );
            }
        }
    }

    #[test]
    fn negative_exponent_is_rejected() {
        let k1 = template_by_id("K1").unwrap();
        let a = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).unwrap();
        let id = SquareMatrix::identity(2).unwrap();
        // n = 0 makes the inner exponent n-1 negative
        let err = template_check_numeric(&k1, &a, &id, &id, &exps(&[("n", 0)])).unwrap_err();
        assert!(matches!(err, JordanError::NegativeExponent { .. }));
        // n = 1 gives exponent zero, which is the identity matrix: allowed
        let verdict = template_check_numeric(&k1, &a, &id, &id, &exps(&[("n", 1)])).unwrap();
        assert!(verdict.verified);
    }

    #[test]
    fn dimension_mismatch_propagates() {
        let j1 = template_by_id("J1").unwrap();
        let a = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).unwrap();
        let b = SquareMatrix::<Scalar>::identity(3).unwrap();
        let c = SquareMatrix::identity(2).unwrap();
        let err =
            template_check_numeric(&j1, &a, &b, &c, &exps(&[("n", 1), ("m", 1)])).unwrap_err();
        assert!(matches!(err, JordanError::Matrix(_)));
    }
}
