use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::ident::IndexPoly;

/// The three matrix slots a template ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
    C,
}

/// Expression tree over matrix slots: powers with integer-polynomial
/// exponents, Jordan product, ternary product, integer scaling, sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TExpr {
    /// `slot^e`; `e` is an integer polynomial in the exponent parameters.
    Pow(Slot, IndexPoly),
    Jordan(Box<TExpr>, Box<TExpr>),
    Ternary(Box<TExpr>, Box<TExpr>, Box<TExpr>),
    IntMul(i64, Box<TExpr>),
    Add(Box<TExpr>, Box<TExpr>),
    Sub(Box<TExpr>, Box<TExpr>),
}

impl TExpr {
    /// Substitutes exponent parameters throughout the tree (used to equate
    /// parameters, e.g. `m := n`).
    pub fn substitute(&self, subst: &[(alloc::string::String, IndexPoly)]) -> TExpr {
        match self {
            TExpr::Pow(slot, e) => TExpr::Pow(*slot, e.substitute(subst)),
            TExpr::Jordan(l, r) => TExpr::Jordan(
                Box::new(l.substitute(subst)),
                Box::new(r.substitute(subst)),
            ),
            TExpr::Ternary(a, b, c) => TExpr::Ternary(
                Box::new(a.substitute(subst)),
                Box::new(b.substitute(subst)),
                Box::new(c.substitute(subst)),
            ),
            TExpr::IntMul(k, e) => TExpr::IntMul(*k, Box::new(e.substitute(subst))),
            TExpr::Add(l, r) => TExpr::Add(
                Box::new(l.substitute(subst)),
                Box::new(r.substitute(subst)),
            ),
            TExpr::Sub(l, r) => TExpr::Sub(
                Box::new(l.substitute(subst)),
                Box::new(r.substitute(subst)),
            ),
        }
    }

    pub fn visit(&self, f: &mut impl FnMut(&TExpr)) {
        f(self);
        match self {
            TExpr::Pow(..) => {}
            TExpr::Jordan(l, r) | TExpr::Add(l, r) | TExpr::Sub(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            TExpr::Ternary(a, b, c) => {
                a.visit(f);
                b.visit(f);
                c.visit(f);
            }
            TExpr::IntMul(_, e) => e.visit(f),
        }
    }
}

/// One identity template: an equality of two slot-expression trees.
#[derive(Clone, Debug)]
pub struct JordanTemplate {
    pub id: &'static str,
    /// Human-readable statement of the identity, `.` for the Jordan product
    /// and `{..}` for the ternary product.
    pub display: &'static str,
    /// Exponent parameters the template mentions, in conventional order.
    pub exponent_params: &'static [&'static str],
    pub lhs: TExpr,
    pub rhs: TExpr,
}

impl JordanTemplate {
    /// Slots appearing anywhere in the template.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        let mut record = |e: &TExpr| {
            e.visit(&mut |node| {
                if let TExpr::Pow(slot, _) = node {
                    if !out.contains(slot) {
                        out.push(*slot);
                    }
                }
            });
        };
        record(&self.lhs);
        record(&self.rhs);
        out
    }
}

fn n() -> IndexPoly {
    IndexPoly::param("n")
}

fn m() -> IndexPoly {
    IndexPoly::param("m")
}

fn l() -> IndexPoly {
    IndexPoly::param("l")
}

fn one() -> IndexPoly {
    IndexPoly::constant(1)
}

fn pw(slot: Slot, e: IndexPoly) -> TExpr {
    TExpr::Pow(slot, e)
}

fn jordan(a: TExpr, b: TExpr) -> TExpr {
    TExpr::Jordan(Box::new(a), Box::new(b))
}

fn ternary(a: TExpr, b: TExpr, c: TExpr) -> TExpr {
    TExpr::Ternary(Box::new(a), Box::new(b), Box::new(c))
}

fn imul(k: i64, e: TExpr) -> TExpr {
    TExpr::IntMul(k, Box::new(e))
}

fn add(a: TExpr, b: TExpr) -> TExpr {
    TExpr::Add(Box::new(a), Box::new(b))
}

fn sub(a: TExpr, b: TExpr) -> TExpr {
    TExpr::Sub(Box::new(a), Box::new(b))
}

use Slot::{A, B, C};

/// All eleven identity templates.
pub fn all_templates() -> Vec<JordanTemplate> {
    vec![
        JordanTemplate {
            id: "J1",
            display: "{a^n, a^m, b^n} = a^(m+n) . b^n",
            exponent_params: &["n", "m"],
            lhs: ternary(pw(A, n()), pw(A, m()), pw(B, n())),
            rhs: jordan(pw(A, m().add(&n())), pw(B, n())),
        },
        JordanTemplate {
            id: "J2",
            display: "{a^l, {a^m, b, a^m}, a^l} = {a^(m+l), b, a^(m+l)}",
            exponent_params: &["m", "l"],
            lhs: ternary(
                pw(A, l()),
                ternary(pw(A, m()), pw(B, one()), pw(A, m())),
                pw(A, l()),
            ),
            rhs: ternary(pw(A, m().add(&l())), pw(B, one()), pw(A, m().add(&l()))),
        },
        JordanTemplate {
            id: "J3",
            display: "{a^n, b, a^n} . c = 2{a^n, a^n . b, c} - {a^(2n), b, c}",
            exponent_params: &["n"],
            lhs: jordan(
                ternary(pw(A, n()), pw(B, one()), pw(A, n())),
                pw(C, one()),
            ),
            rhs: sub(
                imul(
                    2,
                    ternary(
                        pw(A, n()),
                        jordan(pw(A, n()), pw(B, one())),
                        pw(C, one()),
                    ),
                ),
                ternary(pw(A, n().mul(&IndexPoly::constant(2))), pw(B, one()), pw(C, one())),
            ),
        },
        JordanTemplate {
            id: "J4",
            display: "2({a^(nm), b, c} . a^n) = {a^n, {a^(mn-n), b, c}, a^n} + {a^(mn+n), b, c}",
            exponent_params: &["n", "m"],
            lhs: imul(
                2,
                jordan(
                    ternary(pw(A, n().mul(&m())), pw(B, one()), pw(C, one())),
                    pw(A, n()),
                ),
            ),
            rhs: add(
                ternary(
                    pw(A, n()),
                    ternary(pw(A, m().mul(&n()).sub(&n())), pw(B, one()), pw(C, one())),
                    pw(A, n()),
                ),
                ternary(pw(A, m().mul(&n()).add(&n())), pw(B, one()), pw(C, one())),
            ),
        },
        JordanTemplate {
            id: "J5",
            display: "2({a^n, b, a^n} . a^n) = {a^n, b . a^n, a^n} + {a^(2n), b, a^n}",
            exponent_params: &["n"],
            lhs: imul(
                2,
                jordan(ternary(pw(A, n()), pw(B, one()), pw(A, n())), pw(A, n())),
            ),
            rhs: add(
                ternary(pw(A, n()), jordan(pw(B, one()), pw(A, n())), pw(A, n())),
                ternary(
                    pw(A, n().mul(&IndexPoly::constant(2))),
                    pw(B, one()),
                    pw(A, n()),
                ),
            ),
        },
        JordanTemplate {
            id: "J6",
            display: "{a^m, b, a^n} . a^l = {a^m, b . a^l, a^n}",
            exponent_params: &["n", "m", "l"],
            lhs: jordan(
                ternary(pw(A, m()), pw(B, one()), pw(A, n())),
                pw(A, l()),
            ),
            rhs: ternary(pw(A, m()), jordan(pw(B, one()), pw(A, l())), pw(A, n())),
        },
        JordanTemplate {
            id: "J7",
            display: "{a^m, b, a^m} . a^l = {a^(m+l), b, a^m}",
            exponent_params: &["m", "l"],
            lhs: jordan(
                ternary(pw(A, m()), pw(B, one()), pw(A, m())),
                pw(A, l()),
            ),
            rhs: ternary(pw(A, m().add(&l())), pw(B, one()), pw(A, m())),
        },
        JordanTemplate {
            id: "J8",
            display: "{a^l, {a^m, b, a^n}, c} = {a^(l+m), b . a^n, c} + {a^(l+n), b . a^m, c} - {a^(l+m+n), b, c}",
            exponent_params: &["n", "m", "l"],
            lhs: ternary(
                pw(A, l()),
                ternary(pw(A, m()), pw(B, one()), pw(A, n())),
                pw(C, one()),
            ),
            rhs: sub(
                add(
                    ternary(
                        pw(A, l().add(&m())),
                        jordan(pw(B, one()), pw(A, n())),
                        pw(C, one()),
                    ),
                    ternary(
                        pw(A, l().add(&n())),
                        jordan(pw(B, one()), pw(A, m())),
                        pw(C, one()),
                    ),
                ),
                ternary(pw(A, l().add(&m()).add(&n())), pw(B, one()), pw(C, one())),
            ),
        },
        JordanTemplate {
            id: "J9",
            display: "{a^l, {a^m, b, c}, a^n} = {a^(l+m), b, c} . a^n + {a^(m+n), b, c} . a^l - {a^(l+m+n), b, c}",
            exponent_params: &["n", "m", "l"],
            lhs: ternary(
                pw(A, l()),
                ternary(pw(A, m()), pw(B, one()), pw(C, one())),
                pw(A, n()),
            ),
            rhs: sub(
                add(
                    jordan(
                        ternary(pw(A, l().add(&m())), pw(B, one()), pw(C, one())),
                        pw(A, n()),
                    ),
                    jordan(
                        ternary(pw(A, m().add(&n())), pw(B, one()), pw(C, one())),
                        pw(A, l()),
                    ),
                ),
                ternary(pw(A, l().add(&m()).add(&n())), pw(B, one()), pw(C, one())),
            ),
        },
        JordanTemplate {
            id: "K1",
            display: "2({a^n, b, c} . a) = {a, {a^(n-1), b, c}, a} + {a^(n+1), b, c}",
            exponent_params: &["n"],
            lhs: imul(
                2,
                jordan(
                    ternary(pw(A, n()), pw(B, one()), pw(C, one())),
                    pw(A, one()),
                ),
            ),
            rhs: add(
                ternary(
                    pw(A, one()),
                    ternary(pw(A, n().offset(-1)), pw(B, one()), pw(C, one())),
                    pw(A, one()),
                ),
                ternary(pw(A, n().offset(1)), pw(B, one()), pw(C, one())),
            ),
        },
        JordanTemplate {
            id: "K2",
            display: "{a^n, {a^m, b, a^m}, c} = 2{a^(n+m), a^m . b, c} - {a^(n+2m), b, c}",
            exponent_params: &["n", "m"],
            lhs: ternary(
                pw(A, n()),
                ternary(pw(A, m()), pw(B, one()), pw(A, m())),
                pw(C, one()),
            ),
            rhs: sub(
                imul(
                    2,
                    ternary(
                        pw(A, n().add(&m())),
                        jordan(pw(A, m()), pw(B, one())),
                        pw(C, one()),
                    ),
                ),
                ternary(
                    pw(A, n().add(&m().mul(&IndexPoly::constant(2)))),
                    pw(B, one()),
                    pw(C, one()),
                ),
            ),
        },
    ]
}

pub fn template_by_id(id: &str) -> Option<JordanTemplate> {
    all_templates().into_iter().find(|t| t.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_templates_with_unique_ids() {
        let templates = all_templates();
        assert_eq!(templates.len(), 11);
        for (i, a) in templates.iter().enumerate() {
            for b in &templates[i + 1..] {
                assert_ne!(a.id, b.id);
            }
        }
    }

    #[test]
    fn slot_usage() {
        let j1 = template_by_id("J1").unwrap();
        assert_eq!(j1.slots(), vec![Slot::A, Slot::B]);
        let k1 = template_by_id("K1").unwrap();
        assert_eq!(k1.slots(), vec![Slot::A, Slot::B, Slot::C]);
    }

    #[test]
    fn substitution_equates_parameters() {
        let j1 = template_by_id("J1").unwrap();
        let subst = alloc::vec![(alloc::string::String::from("m"), IndexPoly::param("n"))];
        let lhs = j1.lhs.substitute(&subst);
        // {a^n, a^n, b^n}: both a-powers now identical
        if let TExpr::Ternary(first, second, _) = &lhs {
            assert_eq!(first, second);
        } else {
            panic!("J1 lhs should be a ternary product");
        }
    }
}
