use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Scalar;
use crate::catalog::{SeqError, SeqMemo};

use super::ast::{Bindings, ScalarExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Seq(SeqError),
    UnassignedParam(String),
    /// An index expression overflowed machine integers.
    IndexOverflow(String),
    /// Literal too large to lift into the scalar ring (never happens for
    /// sane inputs; kept total).
    LiteralOverflow,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Seq(e) => write!(f, "{e}"),
            EvalError::UnassignedParam(p) => write!(f, "parameter {p} has no value"),
            EvalError::IndexOverflow(ix) => write!(f, "index expression {ix} overflowed"),
            EvalError::LiteralOverflow => write!(f, "integer literal out of range"),
        }
    }
}

impl From<SeqError> for EvalError {
    fn from(e: SeqError) -> Self {
        EvalError::Seq(e)
    }
}

/// Evaluation context: one memoized sequence table per binding, shared
/// across all grid points of a verification run. Confine one context to one
/// thread; build another for concurrent work.
pub struct EvalContext {
    memos: Vec<(String, SeqMemo)>,
}

impl EvalContext {
    pub fn new(bindings: &Bindings) -> Self {
        EvalContext {
            memos: bindings
                .iter()
                .map(|(name, def)| (String::from(name), SeqMemo::new(def.clone())))
                .collect(),
        }
    }

    fn memo(&self, name: &str) -> &SeqMemo {
        // the parser guarantees every call is bound
        self.memo_for(name).expect("sequence bound at parse time")
    }

    pub(crate) fn memo_for(&self, name: &str) -> Option<&SeqMemo> {
        self.memos.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// Exact evaluation of one side at integer parameter values. The result is
/// a polynomial in `x` when the expression or its bindings involve the
/// indeterminate, else a degree-0 scalar.
pub fn eval_side(
    expr: &ScalarExpr,
    env: &[(String, i64)],
    ctx: &EvalContext,
) -> Result<Scalar, EvalError> {
    match expr {
        ScalarExpr::Int(v) => Ok(Scalar::from_integer(v.clone())),
        ScalarExpr::Param(p) => {
            let value = env
                .iter()
                .find(|(n, _)| n == p)
                .map(|(_, v)| *v)
                .ok_or_else(|| EvalError::UnassignedParam(p.clone()))?;
            Ok(Scalar::from_int(value))
        }
        ScalarExpr::X => Ok(Scalar::x()),
        ScalarExpr::Call(name, args) => {
            let mut indices = Vec::with_capacity(args.len());
            for arg in args {
                let value = arg
                    .eval(env)
                    .ok_or_else(|| index_error(arg, env))?;
                indices.push(value);
            }
            Ok(ctx.memo(name).value_args(&indices)?)
        }
        ScalarExpr::Neg(e) => Ok(-&eval_side(e, env, ctx)?),
        ScalarExpr::Add(l, r) => Ok(&eval_side(l, env, ctx)? + &eval_side(r, env, ctx)?),
        ScalarExpr::Sub(l, r) => Ok(&eval_side(l, env, ctx)? - &eval_side(r, env, ctx)?),
        ScalarExpr::Mul(l, r) => Ok(&eval_side(l, env, ctx)? * &eval_side(r, env, ctx)?),
        ScalarExpr::Pow(b, e) => Ok(eval_side(b, env, ctx)?.pow(*e as u64)),
    }
}

fn index_error(arg: &super::index::IndexPoly, env: &[(String, i64)]) -> EvalError {
    // distinguish a missing parameter from overflow
    for p in arg.params() {
        if !env.iter().any(|(n, _)| n == p) {
            return EvalError::UnassignedParam(String::from(p));
        }
    }
    EvalError::IndexOverflow(format!("{arg}"))
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_single;
    use super::*;
    use alloc::string::ToString;

    fn env(pairs: &[(&str, i64)]) -> Vec<(String, i64)> {
        pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    #[test]
    fn fibonacci_convolution_value() {
        let stmt = parse_single(
            "params n m;\nbind F = F;\nF(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)\n",
        )
        .unwrap();
        let ctx = EvalContext::new(&stmt.bindings);
        let e = env(&[("n", 4), ("m", 3)]);
        let lhs = eval_side(&stmt.lhs, &e, &ctx).unwrap();
        let rhs = eval_side(&stmt.rhs, &e, &ctx).unwrap();
        // F_3 F_4 + F_4 F_5 = 2*3 + 3*5 = 21 = F_8
        assert_eq!(lhs, Scalar::from_int(21));
        assert_eq!(rhs, Scalar::from_int(21));
    }

    #[test]
    fn literals_and_params() {
        let stmt = parse_single("params n;\nbind F = F;\n7 == n*F(3)\n").unwrap();
        let ctx = EvalContext::new(&stmt.bindings);
        assert_eq!(
            eval_side(&stmt.lhs, &[], &ctx).unwrap(),
            Scalar::from_int(7)
        );
        assert_eq!(
            eval_side(&stmt.rhs, &env(&[("n", 5)]), &ctx).unwrap(),
            Scalar::from_int(10)
        );
    }

    #[test]
    fn polynomial_sides_evaluate_coefficientwise() {
        let stmt = parse_single(
            "params n;\nbind Fx = Fx;\nbind Lx = Lx;\nx*Fx(n)+Fx(n-1) == Fx(n+1)\n",
        )
        .unwrap();
        let ctx = EvalContext::new(&stmt.bindings);
        for n in 1..=8i64 {
            let e = env(&[("n", n)]);
            assert_eq!(
                eval_side(&stmt.lhs, &e, &ctx).unwrap(),
                eval_side(&stmt.rhs, &e, &ctx).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn negative_transform_index_propagates() {
        let stmt = parse_single("params n;\nbind H = H(k=1);\nH(n-5,0) == 0\n").unwrap();
        let ctx = EvalContext::new(&stmt.bindings);
        let err = eval_side(&stmt.lhs, &env(&[("n", 1)]), &ctx).unwrap_err();
        assert!(matches!(
            err,
            EvalError::Seq(SeqError::NegativeTransformIndex { .. })
        ));
    }
}
