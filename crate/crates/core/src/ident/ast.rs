use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::algebra::Integer;
use crate::catalog::SequenceDef;

use super::index::IndexPoly;

/// Expression AST for one side of an identity. `Pow` exponents are literal
/// nonnegative integers; anything fancier belongs in the Jordan template
/// layer, not the scalar DSL.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarExpr {
    Int(Integer),
    Param(String),
    /// The polynomial indeterminate `x`.
    X,
    /// A sequence call with one or two index arguments.
    Call(String, Vec<IndexPoly>),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, u32),
}

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        ScalarExpr::Int(Integer::from(n))
    }

    /// The only no-op normalizations the printer applies: double negation
    /// collapses and negative literals become negated positives. No
    /// algebraic rewriting happens here.
    pub fn canonicalize(&self) -> ScalarExpr {
        match self {
            ScalarExpr::Neg(inner) => match inner.canonicalize() {
                ScalarExpr::Neg(e) => *e,
                e => ScalarExpr::Neg(Box::new(e)),
            },
            ScalarExpr::Int(v) if v.is_negative() => {
                ScalarExpr::Neg(Box::new(ScalarExpr::Int(-v)))
            }
            ScalarExpr::Add(l, r) => ScalarExpr::Add(
                Box::new(l.canonicalize()),
                Box::new(r.canonicalize()),
            ),
            ScalarExpr::Sub(l, r) => ScalarExpr::Sub(
                Box::new(l.canonicalize()),
                Box::new(r.canonicalize()),
            ),
            ScalarExpr::Mul(l, r) => ScalarExpr::Mul(
                Box::new(l.canonicalize()),
                Box::new(r.canonicalize()),
            ),
            ScalarExpr::Pow(b, e) => ScalarExpr::Pow(Box::new(b.canonicalize()), *e),
            other => other.clone(),
        }
    }

    /// Walks the tree, applying `f` to every node.
    pub fn visit(&self, f: &mut impl FnMut(&ScalarExpr)) {
        f(self);
        match self {
            ScalarExpr::Neg(e) => e.visit(f),
            ScalarExpr::Add(l, r) | ScalarExpr::Sub(l, r) | ScalarExpr::Mul(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            ScalarExpr::Pow(b, _) => b.visit(f),
            _ => {}
        }
    }
}

/// Ordered name -> sequence-definition map for one file or statement.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bindings {
    entries: Vec<(String, SequenceDef)>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn insert(&mut self, name: &str, def: SequenceDef) -> bool {
        if self.get(name).is_some() {
            return false;
        }
        self.entries.push((String::from(name), def));
        true
    }

    pub fn get(&self, name: &str) -> Option<&SequenceDef> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    /// Replaces an existing binding, e.g. to sweep the fixed `k` of a
    /// binomial-transform binding across a range.
    pub fn rebind(&mut self, name: &str, def: SequenceDef) -> bool {
        for (n, d) in &mut self.entries {
            if n == name {
                *d = def;
                return true;
            }
        }
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SequenceDef)> {
        self.entries.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One parsed identity with everything needed to evaluate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityStatement {
    /// Declared parameter names, in declaration order.
    pub params: Vec<String>,
    pub bindings: Bindings,
    pub lhs: ScalarExpr,
    pub rhs: ScalarExpr,
}

impl IdentityStatement {
    /// Declared parameters that actually occur in the statement, in
    /// declaration order. Grids only need to cover these.
    pub fn used_params(&self) -> Vec<String> {
        let mut used: Vec<String> = Vec::new();
        let mut record = |expr: &ScalarExpr| {
            expr.visit(&mut |node| match node {
                ScalarExpr::Param(p) => {
                    if !used.contains(p) {
                        used.push(p.clone());
                    }
                }
                ScalarExpr::Call(_, args) => {
                    for arg in args {
                        for p in arg.params() {
                            if !used.iter().any(|u| u == p) {
                                used.push(String::from(p));
                            }
                        }
                    }
                }
                _ => {}
            });
        };
        record(&self.lhs);
        record(&self.rhs);
        let mut ordered: Vec<String> = self
            .params
            .iter()
            .filter(|p| used.contains(p))
            .cloned()
            .collect();
        // parameters used but not declared cannot appear (the parser rejects
        // them); keep the declared order authoritative
        ordered.dedup();
        ordered
    }

    /// Largest degree of any index expression; used to pick default grids.
    pub fn max_index_degree(&self) -> u32 {
        let mut max = 0;
        let mut scan = |expr: &ScalarExpr| {
            expr.visit(&mut |node| {
                if let ScalarExpr::Call(_, args) = node {
                    for arg in args {
                        max = max.max(arg.degree());
                    }
                }
            });
        };
        scan(&self.lhs);
        scan(&self.rhs);
        max
    }
}

/// A statement plus its source line, as loaded from an `.idn` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdnStatement {
    pub line: usize,
    pub statement: IdentityStatement,
}

/// A parsed `.idn` file: shared headers plus one statement per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdnFile {
    pub params: Vec<String>,
    pub bindings: Bindings,
    pub statements: Vec<IdnStatement>,
}
