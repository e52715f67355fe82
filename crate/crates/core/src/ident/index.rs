use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A monomial over parameter names: `{n: 2}` is `n^2`, the empty map is the
/// constant monomial.
pub(crate) type IndexMonomial = BTreeMap<String, u32>;

/// An integer-coefficient polynomial in the declared parameters, the index
/// language of sequence subscripts (`m+n+1`, `2*n+1`, `m*n-n`, `n^2+n-2`).
/// Evaluation at integer parameter values always yields an integer.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IndexPoly {
    /// monomial -> nonzero coefficient
    terms: BTreeMap<IndexMonomial, i64>,
}

impl IndexPoly {
    pub fn zero() -> Self {
        IndexPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(IndexMonomial::new(), c);
        }
        IndexPoly { terms }
    }

    pub fn param(name: &str) -> Self {
        let mut mono = IndexMonomial::new();
        mono.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(mono, 1);
        IndexPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if no parameter occurs.
    pub fn as_constant(&self) -> Option<i64> {
        if self.terms.is_empty() {
            return Some(0);
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&IndexMonomial::new()) {
                return Some(*c);
            }
        }
        None
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (mono, c) in &rhs.terms {
            let entry = terms.entry(mono.clone()).or_insert(0);
            *entry += c;
            if *entry == 0 {
                terms.remove(mono);
            }
        }
        IndexPoly { terms }
    }

    pub fn neg(&self) -> Self {
        IndexPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<IndexMonomial, i64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut mono = ma.clone();
                for (name, pow) in mb {
                    *mono.entry(name.clone()).or_insert(0) += pow;
                }
                let entry = terms.entry(mono).or_insert(0);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| *c != 0);
        IndexPoly { terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = IndexPoly::constant(1);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Adds a constant offset; handy for building shifted subscripts.
    pub fn offset(&self, c: i64) -> Self {
        self.add(&IndexPoly::constant(c))
    }

    /// Exact evaluation at integer parameter values. `None` on a missing
    /// parameter or arithmetic overflow.
    pub fn eval(&self, env: &[(String, i64)]) -> Option<i64> {
        let mut acc: i64 = 0;
        for (mono, coeff) in &self.terms {
            let mut term: i64 = *coeff;
            for (name, pow) in mono {
                let value = env.iter().find(|(n, _)| n == name).map(|(_, v)| *v)?;
                for _ in 0..*pow {
                    term = term.checked_mul(value)?;
                }
            }
            acc = acc.checked_add(term)?;
        }
        Some(acc)
    }

    /// Parameters occurring in the polynomial, in sorted order.
    pub fn params(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for mono in self.terms.keys() {
            for name in mono.keys() {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Largest total degree of any monomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.values().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes index polynomials for parameters. Parameters missing from
    /// the substitution map are kept as themselves.
    pub fn substitute(&self, subst: &[(String, IndexPoly)]) -> Self {
        let mut acc = IndexPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut term = IndexPoly::constant(*coeff);
            for (name, pow) in mono {
                let replacement = subst
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| IndexPoly::param(name));
                term = term.mul(&replacement.pow(*pow));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Raw terms as (coefficient, [(param, power)]) pairs, in map order.
    pub fn monomials(&self) -> Vec<(i64, Vec<(String, u32)>)> {
        self.terms
            .iter()
            .map(|(mono, c)| {
                (
                    *c,
                    mono.iter().map(|(n, p)| (n.clone(), *p)).collect(),
                )
            })
            .collect()
    }

    /// Terms in display order: total degree descending, then monomial order.
    fn ordered_terms(&self) -> Vec<(&IndexMonomial, i64)> {
        let mut terms: Vec<(&IndexMonomial, i64)> =
            self.terms.iter().map(|(m, c)| (m, *c)).collect();
        terms.sort_by(|(ma, _), (mb, _)| {
            let da: u32 = ma.values().sum();
            let db: u32 = mb.values().sum();
            db.cmp(&da).then_with(|| ma.cmp(mb))
        });
        terms
    }
}

impl PartialOrd for IndexPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexPoly {
    /// Deterministic total order used to sort symbolic atoms; compares
    /// display-ordered term lists lexicographically, shorter prefix first.
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.ordered_terms();
        let b = other.ordered_terms();
        for ((ma, ca), (mb, cb)) in a.iter().zip(b.iter()) {
            match ma.cmp(mb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Display for IndexPoly {
    /// Compact form that re-parses as an index expression: `m*n-n+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.ordered_terms().into_iter().enumerate() {
            let magnitude = coeff.unsigned_abs();
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mut wrote_factor = false;
            if magnitude != 1 || mono.is_empty() {
                write!(f, "{magnitude}")?;
                wrote_factor = true;
            }
            for (name, pow) in mono {
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{name}")?;
                if *pow > 1 {
                    write!(f, "^{pow}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IndexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn n() -> IndexPoly {
        IndexPoly::param("n")
    }

    fn m() -> IndexPoly {
        IndexPoly::param("m")
    }

    #[test]
    fn arithmetic_and_eval() {
        // (n-1)*n = n^2 - n
        let p = n().offset(-1).mul(&n());
        let env = vec![(String::from("n"), 5i64)];
        assert_eq!(p.eval(&env), Some(20));
        assert_eq!(p.degree(), 2);
        assert_eq!(p.to_string(), "n^2-n");
    }

    #[test]
    fn display_forms() {
        assert_eq!(IndexPoly::zero().to_string(), "0");
        assert_eq!(IndexPoly::constant(-7).to_string(), "-7");
        assert_eq!(m().add(&n()).offset(1).to_string(), "m+n+1");
        assert_eq!(n().mul(&m()).sub(&n()).to_string(), "m*n-n");
        assert_eq!(
            n().mul(&IndexPoly::constant(2)).offset(1).to_string(),
            "2*n+1"
        );
        assert_eq!(n().pow(2).add(&n()).offset(-2).to_string(), "n^2+n-2");
    }

    #[test]
    fn ordering_puts_shift_after_base() {
        assert!(m() < m().offset(1));
        assert!(m().offset(1) < n());
        assert!(n() < n().offset(1));
    }

    #[test]
    fn substitution() {
        // substitute m := n+1 into m+n gives 2n+1
        let p = m().add(&n());
        let subst = vec![(String::from("m"), n().offset(1))];
        assert_eq!(p.substitute(&subst), n().mul(&IndexPoly::constant(2)).offset(1));
    }

    #[test]
    fn eval_missing_param_is_none() {
        assert_eq!(n().eval(&[]), None);
        assert_eq!(IndexPoly::constant(4).eval(&[]), Some(4));
    }
}
