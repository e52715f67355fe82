use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as IntegerOps;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, Integer, MatrixError, Rational, Ring, Scalar, SquareMatrix};
use crate::catalog::{FamilyError, MatrixFamily, SeqError, SeqMemo, SequenceDef};
use crate::ident::{EvalContext, EvalError, IndexPoly, ScalarExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordanError {
    Matrix(MatrixError),
    Family(FamilyError),
    Seq(SeqError),
    NegativeExponent { form: String, value: i64 },
    UnassignedExponent(String),
    /// The family's power has no closed form with sequence-call entries;
    /// assigning it to a powered slot is an error, not a silent fallback.
    NoSymbolicForm { family: String },
    /// A literal constant matrix sits in a slot whose occurrences carry
    /// different exponents; only uniformly powered slots may take literals.
    LiteralOnVaryingSlot { slot: char },
    /// The requested literal does not exist at this dimension.
    LiteralDim { literal: String, dim: usize },
    /// Two slot assignments bind the same sequence name differently.
    BindingConflict { name: String },
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanError::Matrix(e) => write!(f, "{e}"),
            JordanError::Family(e) => write!(f, "{e}"),
            JordanError::Seq(e) => write!(f, "{e}"),
            JordanError::NegativeExponent { form, value } => {
                write!(f, "exponent {form} evaluated to {value} < 0")
            }
            JordanError::UnassignedExponent(form) => {
                write!(f, "exponent {form} has unassigned parameters")
            }
            JordanError::NoSymbolicForm { family } => {
                write!(f, "family {family} has no symbolic power form")
            }
            JordanError::LiteralOnVaryingSlot { slot } => write!(
                f,
                "slot {slot} carries varying exponents; assign a family, not a literal"
            ),
            JordanError::LiteralDim { literal, dim } => {
                write!(f, "literal {literal} is not available at dimension {dim}")
            }
            JordanError::BindingConflict { name } => {
                write!(f, "sequence name {name} bound to two different definitions")
            }
        }
    }
}

impl From<MatrixError> for JordanError {
    fn from(e: MatrixError) -> Self {
        JordanError::Matrix(e)
    }
}

impl From<FamilyError> for JordanError {
    fn from(e: FamilyError) -> Self {
        JordanError::Family(e)
    }
}

impl From<SeqError> for JordanError {
    fn from(e: SeqError) -> Self {
        JordanError::Seq(e)
    }
}

/// An atom of the symbolic ring: the indeterminate, an exponent parameter
/// used as a value, or a sequence call with index-polynomial arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    X,
    Param(String),
    Seq(String, Vec<IndexPoly>),
}

/// Power product of atoms, sorted, exponents >= 1.
type Monomial = Vec<(Atom, u32)>;

/// Element of the symbolic expression ring: a rational-coefficient
/// polynomial whose variables are sequence-call atoms. Sums and products
/// flatten and constants fold by construction; no other rewriting happens,
/// so two expressions are equal only when their flattened forms coincide.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SeqExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl SeqExpr {
    pub fn constant(r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        SeqExpr { terms }
    }

    pub fn atom(atom: Atom) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(atom, 1)], Rational::one());
        SeqExpr { terms }
    }

    /// Lifts a polynomial in `x` into the ring.
    pub fn from_scalar(s: &Scalar) -> Self {
        let mut out = SeqExpr::default();
        for (deg, coeff) in s.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mono = if deg == 0 {
                Vec::new()
            } else {
                vec![(Atom::X, deg as u32)]
            };
            out.terms.insert(mono, coeff.clone());
        }
        out
    }

    /// Lifts an index polynomial (entries of families whose closed form is
    /// polynomial in the exponent, e.g. `[[n+1, n], [-n, 1-n]]`).
    pub fn from_index_poly(p: &IndexPoly) -> Self {
        // reuse the textual decomposition: constant + params
        let mut out = SeqExpr::default();
        // IndexPoly has no public term iterator; rebuild via subtraction of
        // the constant part and per-parameter probing would be fragile, so
        // IndexPoly exposes `to_seq_terms` below instead.
        for (coeff, mono) in p.monomials() {
            let mut m: Monomial = mono
                .into_iter()
                .map(|(name, pow)| (Atom::Param(name), pow))
                .collect();
            m.sort();
            let entry = out.terms.entry(m).or_insert_with(Rational::zero);
            *entry += Rational::from_integer(Integer::from(coeff));
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return SeqExpr::default();
        }
        SeqExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        use alloc::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Terms in canonical (monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Evaluates exactly at integer parameter values using memoized
    /// sequence bindings.
    pub fn eval(&self, env: &[(String, i64)], ctx: &EvalContext) -> Result<Scalar, EvalError> {
        let mut acc = Scalar::zero();
        for (mono, coeff) in &self.terms {
            let mut term = Scalar::from_rational(coeff.clone());
            for (atom, pow) in mono {
                let base = match atom {
                    Atom::X => Scalar::x(),
                    Atom::Param(p) => {
                        let v = env
                            .iter()
                            .find(|(n, _)| n == p)
                            .map(|(_, v)| *v)
                            .ok_or_else(|| EvalError::UnassignedParam(p.clone()))?;
                        Scalar::from_int(v)
                    }
                    Atom::Seq(name, args) => {
                        let mut indices = Vec::with_capacity(args.len());
                        for arg in args {
                            indices.push(arg.eval(env).ok_or_else(|| {
                                EvalError::IndexOverflow(format!("{arg}"))
                            })?);
                        }
                        ctx.memo_for(name)
                            .ok_or_else(|| EvalError::UnassignedParam(name.clone()))?
                            .value_args(&indices)?
                    }
                };
                term = &term * &base.pow(*pow as u64);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Ring for SeqExpr {
    fn zero() -> Self {
        SeqExpr::default()
    }

    fn one() -> Self {
        SeqExpr::constant(Rational::one())
    }

    fn from_int(n: i64) -> Self {
        SeqExpr::constant(Rational::from_integer(Integer::from(n)))
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = SeqExpr::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut mono = ma.clone();
                for (atom, pow) in mb {
                    match mono.iter_mut().find(|(a, _)| a == atom) {
                        Some((_, p)) => *p += pow,
                        None => mono.push((atom.clone(), *pow)),
                    }
                }
                mono.sort();
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        SeqExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn halve(&self) -> Self {
        self.scale(&rat(1, 2))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The constant matrices the worked derivations use in unpowered slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiteralMatrix {
    /// Identity (either dimension).
    I,
    /// `[[1,0],[0,0]]`
    E11,
    /// `[[0,1],[0,0]]`
    E12,
    /// `[[0,0],[0,1]]`
    E22,
    /// `[[0,1],[1,0]]`
    Swap,
    /// `[[x,1],[1,0]]`
    Qx,
}

impl LiteralMatrix {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "I" => Some(LiteralMatrix::I),
            "E11" => Some(LiteralMatrix::E11),
            "E12" => Some(LiteralMatrix::E12),
            "E22" => Some(LiteralMatrix::E22),
            "SWAP" | "Swap" => Some(LiteralMatrix::Swap),
            "QX" | "Qx" => Some(LiteralMatrix::Qx),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LiteralMatrix::I => "I",
            LiteralMatrix::E11 => "E11",
            LiteralMatrix::E12 => "E12",
            LiteralMatrix::E22 => "E22",
            LiteralMatrix::Swap => "SWAP",
            LiteralMatrix::Qx => "QX",
        }
    }

    pub fn numeric(&self, dim: usize) -> Result<SquareMatrix<Scalar>, JordanError> {
        let bad = || JordanError::LiteralDim {
            literal: self.name().to_string(),
            dim,
        };
        match self {
            LiteralMatrix::I => Ok(SquareMatrix::identity(dim)?),
            _ if dim != 2 => Err(bad()),
            LiteralMatrix::E11 => Ok(SquareMatrix::from_ints(2, &[1, 0, 0, 0])?),
            LiteralMatrix::E12 => Ok(SquareMatrix::from_ints(2, &[0, 1, 0, 0])?),
            LiteralMatrix::E22 => Ok(SquareMatrix::from_ints(2, &[0, 0, 0, 1])?),
            LiteralMatrix::Swap => Ok(SquareMatrix::from_ints(2, &[0, 1, 1, 0])?),
            LiteralMatrix::Qx => Ok(SquareMatrix::new(
                2,
                vec![Scalar::x(), Scalar::one(), Scalar::one(), Scalar::zero()],
            )?),
        }
    }

    pub fn symbolic(&self, dim: usize) -> Result<SquareMatrix<SeqExpr>, JordanError> {
        Ok(self.numeric(dim)?.map(SeqExpr::from_scalar))
    }
}

/// Builds a literal matrix by name.
pub fn literal_matrix(name: &str, dim: usize) -> Result<SquareMatrix<Scalar>, JordanError> {
    LiteralMatrix::parse(name)
        .ok_or_else(|| JordanError::LiteralDim {
            literal: name.to_string(),
            dim,
        })?
        .numeric(dim)
}

fn seq_atom(
    name: &str,
    args: Vec<IndexPoly>,
    memo: &SeqMemo,
) -> Result<SeqExpr, JordanError> {
    // constant-argument calls fold to their exact value
    let constants: Option<Vec<i64>> = args.iter().map(|a| a.as_constant()).collect();
    if let Some(indices) = constants {
        let value = memo.value_args(&indices)?;
        return Ok(SeqExpr::from_scalar(&value));
    }
    Ok(SeqExpr::atom(Atom::Seq(name.to_string(), args)))
}

/// The symbolic closed form of `family^e` with sequence-call entries, plus
/// the sequence bindings those entries reference. Families whose printed
/// powers cannot be written with sequence calls (parameterized signs or
/// exponentials) have no symbolic form.
pub fn symbolic_power(
    family: &MatrixFamily,
    e: &IndexPoly,
) -> Result<(SquareMatrix<SeqExpr>, Vec<(String, SequenceDef)>), JordanError> {
    use crate::catalog::FamilyKind;
    let kind = family.kind();
    let companion_like = |def: SequenceDef| -> Result<(SquareMatrix<SeqExpr>, Vec<(String, SequenceDef)>), JordanError> {
        let name = def.name.clone();
        let memo = SeqMemo::new(def.clone());
        let at = |d: i64| seq_atom(&name, vec![e.offset(d)], &memo);
        let m = SquareMatrix::new(2, vec![at(1)?, at(0)?, at(0)?, at(-1)?])?;
        Ok((m, vec![(name, def)]))
    };
    match kind {
        FamilyKind::F1 => companion_like(SequenceDef::fibonacci()),
        FamilyKind::Pb { b } => {
            if b == 2 {
                companion_like(SequenceDef::pell())
            } else {
                companion_like(SequenceDef::generalized_pell(b))
            }
        }
        FamilyKind::Q => companion_like(SequenceDef::fibonacci_poly()),
        FamilyKind::Gb { b } => {
            let def = SequenceDef::generalized_fibonacci(b);
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("G", vec![e.offset(d)], &memo);
            let bs = SeqExpr::from_int(b);
            let m = SquareMatrix::new(
                2,
                vec![at(1)?, bs.mul(&at(0)?), at(0)?, bs.mul(&at(-1)?)],
            )?;
            Ok((m, vec![(String::from("G"), def)]))
        }
        FamilyKind::W { p, q } => {
            let def = SequenceDef::horadam(p, q);
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("W", vec![e.offset(d)], &memo);
            let mq = SeqExpr::from_int(-q);
            let m = SquareMatrix::new(
                2,
                vec![at(1)?, mq.mul(&at(0)?), at(0)?, mq.mul(&at(-1)?)],
            )?;
            Ok((m, vec![(String::from("W"), def)]))
        }
        FamilyKind::L => {
            let fdef = SequenceDef::fibonacci();
            let ldef = SequenceDef::lucas();
            let fmemo = SeqMemo::new(fdef.clone());
            let lmemo = SeqMemo::new(ldef.clone());
            let fib = seq_atom("F", vec![e.clone()], &fmemo)?;
            let lucas = seq_atom("L", vec![e.clone()], &lmemo)?;
            let m = SquareMatrix::new(
                2,
                vec![
                    lucas.halve(),
                    fib.scale(&rat(5, 2)),
                    fib.halve(),
                    lucas.halve(),
                ],
            )?;
            Ok((m, vec![(String::from("F"), fdef), (String::from("L"), ldef)]))
        }
        FamilyKind::Tk { k } => {
            let def = SequenceDef::binomial_transform(k);
            let memo = SeqMemo::new(def.clone());
            let at = |j: i64| seq_atom("H", vec![e.clone(), IndexPoly::constant(j)], &memo);
            let m = SquareMatrix::new(2, vec![at(1)?, at(0)?, at(0)?, at(-1)?])?;
            Ok((m, vec![(String::from("H"), def)]))
        }
        FamilyKind::M1 => {
            let at = |p: IndexPoly| SeqExpr::from_index_poly(&p);
            let m = SquareMatrix::new(
                2,
                vec![
                    at(e.offset(1)),
                    at(e.clone()),
                    at(e.neg()),
                    at(IndexPoly::constant(1).sub(e)),
                ],
            )?;
            Ok((m, Vec::new()))
        }
        FamilyKind::T001 => {
            let def = SequenceDef::tribonacci();
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("T", vec![e.offset(d)], &memo);
            let m = SquareMatrix::new(
                3,
                vec![
                    at(2)?,
                    at(0)?.add(&at(1)?),
                    at(1)?,
                    at(1)?,
                    at(0)?.add(&at(-1)?),
                    at(0)?,
                    at(0)?,
                    at(-1)?.add(&at(-2)?),
                    at(-1)?,
                ],
            )?;
            Ok((m, vec![(String::from("T"), def)]))
        }
        FamilyKind::T121 => {
            let def = SequenceDef::s121();
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("S", vec![e.offset(d)], &memo);
            let two = SeqExpr::from_int(2);
            let m = SquareMatrix::new(
                3,
                vec![
                    at(1)?,
                    two.mul(&at(0)?).add(&at(-1)?),
                    at(0)?,
                    at(0)?,
                    two.mul(&at(-1)?).add(&at(-2)?),
                    at(-1)?,
                    at(-1)?,
                    two.mul(&at(-2)?).add(&at(-3)?),
                    at(-2)?,
                ],
            )?;
            Ok((m, vec![(String::from("S"), def)]))
        }
        FamilyKind::Trst { r, s, t } => {
            let def = SequenceDef::u_rst(r, s, t);
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("U", vec![e.offset(d)], &memo);
            let se = SeqExpr::from_int(s);
            let te = SeqExpr::from_int(t);
            let mix = |a: SeqExpr, b: SeqExpr| se.mul(&a).add(&te.mul(&b));
            let m = SquareMatrix::new(
                3,
                vec![
                    at(1)?,
                    mix(at(0)?, at(-1)?),
                    te.mul(&at(0)?),
                    at(0)?,
                    mix(at(-1)?, at(-2)?),
                    te.mul(&at(-1)?),
                    at(-1)?,
                    mix(at(-2)?, at(-3)?),
                    te.mul(&at(-2)?),
                ],
            )?;
            Ok((m, vec![(String::from("U"), def)]))
        }
        FamilyKind::TF => {
            let def = SequenceDef::fibonacci();
            let memo = SeqMemo::new(def.clone());
            let at = |d: i64| seq_atom("F", vec![e.offset(d)], &memo);
            let two = SeqExpr::from_int(2);
            let fm = at(-1)?;
            let f0 = at(0)?;
            let fp = at(1)?;
            let m = SquareMatrix::new(
                3,
                vec![
                    fm.mul(&fm),
                    fm.mul(&f0),
                    f0.mul(&f0),
                    two.mul(&fm.mul(&f0)),
                    fm.mul(&fm).add(&fp.mul(&f0)),
                    two.mul(&fp.mul(&f0)),
                    f0.mul(&f0),
                    f0.mul(&fp),
                    fp.mul(&fp),
                ],
            )?;
            Ok((m, vec![(String::from("F"), def)]))
        }
        FamilyKind::M2 | FamilyKind::M3 | FamilyKind::Sk { .. } => {
            Err(JordanError::NoSymbolicForm {
                family: family.name(),
            })
        }
    }
}

/// Clears denominators and integer content jointly across both sides, then
/// renders each side as a sorted sum-of-products expression. Scaling both
/// sides by the same positive rational preserves the identity; no terms
/// move across the equality.
pub(crate) fn to_statement_sides(lhs: &SeqExpr, rhs: &SeqExpr) -> (ScalarExpr, ScalarExpr) {
    let mut denom_lcm = Integer::one();
    for (_, c) in lhs.terms().chain(rhs.terms()) {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let scale = Rational::from_integer(denom_lcm);
    let mut content = Integer::zero();
    for (_, c) in lhs.terms().chain(rhs.terms()) {
        let n = (c * &scale).numer().abs();
        content = content.gcd(&n);
    }
    if content.is_zero() {
        content = Integer::one();
    }
    let scale = scale / Rational::from_integer(content);
    (side_to_expr(lhs, &scale), side_to_expr(rhs, &scale))
}

fn side_to_expr(side: &SeqExpr, scale: &Rational) -> ScalarExpr {
    let mut expr: Option<ScalarExpr> = None;
    for (mono, coeff) in side.terms() {
        let scaled = coeff * scale;
        debug_assert!(scaled.denom().is_one(), "denominators cleared");
        let magnitude = scaled.numer().abs();
        let negative = scaled.numer().is_negative();
        let term = term_to_expr(&magnitude, mono);
        expr = Some(match expr {
            None => {
                if negative {
                    ScalarExpr::Neg(alloc::boxed::Box::new(term))
                } else {
                    term
                }
            }
            Some(acc) => {
                if negative {
                    ScalarExpr::Sub(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(term))
                } else {
                    ScalarExpr::Add(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(term))
                }
            }
        });
    }
    expr.unwrap_or_else(|| ScalarExpr::int(0))
}

fn term_to_expr(magnitude: &Integer, mono: &Monomial) -> ScalarExpr {
    let mut factors: Vec<ScalarExpr> = Vec::new();
    if !magnitude.is_one() || mono.is_empty() {
        factors.push(ScalarExpr::Int(magnitude.clone()));
    }
    for (atom, pow) in mono {
        let base = match atom {
            Atom::X => ScalarExpr::X,
            Atom::Param(p) => ScalarExpr::Param(p.clone()),
            Atom::Seq(name, args) => ScalarExpr::Call(name.clone(), args.clone()),
        };
        factors.push(if *pow == 1 {
            base
        } else {
            ScalarExpr::Pow(alloc::boxed::Box::new(base), *pow)
        });
    }
    let mut iter = factors.into_iter();
    let first = iter.next().expect("at least one factor");
    iter.fold(first, |acc, f| {
        ScalarExpr::Mul(alloc::boxed::Box::new(acc), alloc::boxed::Box::new(f))
    })
}

/// Converts a parsed expression into the symbolic ring, folding
/// constant-argument sequence calls through the statement's bindings. Used
/// to compare transcribed statements with derived ones structurally.
pub fn expr_to_seqexpr(
    expr: &ScalarExpr,
    bindings: &crate::ident::Bindings,
) -> Result<SeqExpr, JordanError> {
    let memos: Vec<(String, SeqMemo)> = bindings
        .iter()
        .map(|(n, d)| (String::from(n), SeqMemo::new(d.clone())))
        .collect();
    fn go(expr: &ScalarExpr, memos: &[(String, SeqMemo)]) -> Result<SeqExpr, JordanError> {
        Ok(match expr {
            ScalarExpr::Int(v) => SeqExpr::constant(Rational::from_integer(v.clone())),
            ScalarExpr::Param(p) => SeqExpr::atom(Atom::Param(p.clone())),
            ScalarExpr::X => SeqExpr::atom(Atom::X),
            ScalarExpr::Call(name, args) => {
                let memo = memos
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, m)| m)
                    .expect("statement bindings cover calls");
                seq_atom(name, args.clone(), memo)?
            }
            ScalarExpr::Neg(e) => go(e, memos)?.neg(),
            ScalarExpr::Add(l, r) => go(l, memos)?.add(&go(r, memos)?),
            ScalarExpr::Sub(l, r) => go(l, memos)?.sub(&go(r, memos)?),
            ScalarExpr::Mul(l, r) => go(l, memos)?.mul(&go(r, memos)?),
            ScalarExpr::Pow(b, e) => {
                let base = go(b, memos)?;
                let mut acc = SeqExpr::one();
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }
    go(expr, &memos)
}

/// Evaluates a symbolic-ring element at integer parameters.
pub fn seq_expr_eval(
    expr: &SeqExpr,
    env: &[(String, i64)],
    ctx: &EvalContext,
) -> Result<Scalar, EvalError> {
    expr.eval(env, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ident::print_expr;

    #[test]
    fn ring_normal_form_collapses_duplicates() {
        let f_n = SeqExpr::atom(Atom::Seq(
            String::from("F"),
            vec![IndexPoly::param("n")],
        ));
        // (f + f)/2 = f
        assert_eq!(f_n.add(&f_n).halve(), f_n);
        // f - f = 0
        assert!(f_n.sub(&f_n).is_zero());
    }

    #[test]
    fn constant_folding_of_constant_calls() {
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        let folded = seq_atom("F", vec![IndexPoly::constant(6)], &memo).unwrap();
        assert_eq!(folded, SeqExpr::from_int(8));
    }

    #[test]
    fn statement_sides_clear_denominators() {
        // lhs = f/2 + g/2, rhs = h  ->  f + g == 2*h
        let f = SeqExpr::atom(Atom::Seq(String::from("F"), vec![IndexPoly::param("n")]));
        let g = SeqExpr::atom(Atom::Seq(String::from("L"), vec![IndexPoly::param("n")]));
        let h = SeqExpr::atom(Atom::Seq(
            String::from("F"),
            vec![IndexPoly::param("n").offset(1)],
        ));
        let lhs = f.add(&g).halve();
        let (l, r) = to_statement_sides(&lhs, &h);
        assert_eq!(print_expr(&l), "F(n)+L(n)");
        assert_eq!(print_expr(&r), "2*F(n+1)");
    }

    #[test]
    fn content_is_divided_out() {
        // 2f == 4g reduces to f == 2*g
        let f = SeqExpr::atom(Atom::Seq(String::from("F"), vec![IndexPoly::param("n")]));
        let g = SeqExpr::atom(Atom::Seq(String::from("L"), vec![IndexPoly::param("n")]));
        let (l, r) = to_statement_sides(&f.scale(&rat(2, 1)), &g.scale(&rat(4, 1)));
        assert_eq!(print_expr(&l), "F(n)");
        assert_eq!(print_expr(&r), "2*L(n)");
    }

    #[test]
    fn symbolic_f1_power_entries() {
        let fam = MatrixFamily::f1();
        let (m, binds) = symbolic_power(&fam, &IndexPoly::param("n")).unwrap();
        assert_eq!(binds.len(), 1);
        let (l, _) = to_statement_sides(m.entry(0, 0), m.entry(1, 1));
        assert_eq!(print_expr(&l), "F(n+1)");
    }

    #[test]
    fn symbolic_power_at_constant_exponent_folds() {
        let fam = MatrixFamily::f1();
        let (m, _) = symbolic_power(&fam, &IndexPoly::constant(1)).unwrap();
        // [[F(2), F(1)], [F(1), F(0)]] folds to the base matrix values
        assert_eq!(*m.entry(0, 0), SeqExpr::one());
        assert_eq!(*m.entry(1, 1), SeqExpr::default());
    }

    #[test]
    fn no_symbolic_form_families_error() {
        for fam in [MatrixFamily::m2(), MatrixFamily::m3(), MatrixFamily::sk(2).unwrap()] {
            assert!(matches!(
                symbolic_power(&fam, &IndexPoly::param("n")),
                Err(JordanError::NoSymbolicForm { .. })
            ));
        }
    }

    #[test]
    fn literal_dimensions() {
        assert!(LiteralMatrix::Qx.numeric(2).is_ok());
        assert!(matches!(
            LiteralMatrix::Qx.numeric(3),
            Err(JordanError::LiteralDim { .. })
        ));
        assert!(LiteralMatrix::I.numeric(3).is_ok());
    }
}
