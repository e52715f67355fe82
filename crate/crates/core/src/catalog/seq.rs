use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_integer::binomial;

use crate::algebra::{int, Rational, Scalar};

/// How a named sequence is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqKind {
    /// `a_n = c_1 a_{n-1} + ... + c_r a_{n-r}` with the given initial block
    /// `a_0 .. a_{r-1}`. Coefficients are most-recent first. Negative indices
    /// are reached by running the recurrence backwards, which requires the
    /// trailing coefficient `c_r` to be a unit.
    Recurrence {
        coeffs: Vec<Scalar>,
        initials: Vec<Scalar>,
    },
    /// The signed binomial transform of shifted Fibonacci numbers,
    /// `h_{n,k}(j) = sum_{i=0}^{n} (-1)^{i-1+j} C(n,i) F_{i-j} (k+1)^{n-i}`,
    /// with `k` fixed per definition and two index arguments `(n, j)`.
    BinomialTransform { k: i64 },
}

/// A named linear recurrence or built-in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDef {
    pub name: String,
    pub kind: SeqKind,
}

impl SequenceDef {
    pub fn recurrence(name: &str, coeffs: Vec<Scalar>, initials: Vec<Scalar>) -> Self {
        assert_eq!(
            coeffs.len(),
            initials.len(),
            "recurrence order must match initial count"
        );
        assert!(
            (1..=3).contains(&coeffs.len()),
            "recurrence order must be 1..=3"
        );
        SequenceDef {
            name: name.to_owned(),
            kind: SeqKind::Recurrence { coeffs, initials },
        }
    }

    fn int_recurrence(name: &str, coeffs: &[i64], initials: &[i64]) -> Self {
        SequenceDef::recurrence(
            name,
            coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
            initials.iter().map(|&a| Scalar::from_int(a)).collect(),
        )
    }

    pub fn fibonacci() -> Self {
        SequenceDef::int_recurrence("F", &[1, 1], &[0, 1])
    }

    pub fn lucas() -> Self {
        SequenceDef::int_recurrence("L", &[1, 1], &[2, 1])
    }

    pub fn pell() -> Self {
        SequenceDef::int_recurrence("P", &[2, 1], &[0, 1])
    }

    pub fn jacobsthal() -> Self {
        SequenceDef::int_recurrence("J", &[1, 2], &[0, 1])
    }

    /// `g_n = g_{n-1} + b g_{n-2}`, `g_0 = 0`, `g_1 = 1`.
    pub fn generalized_fibonacci(b: i64) -> Self {
        SequenceDef::int_recurrence("G", &[1, b], &[0, 1])
    }

    /// `c_n = b c_{n-1} + c_{n-2}`, `c_0 = 0`, `c_1 = 1`.
    pub fn generalized_pell(b: i64) -> Self {
        SequenceDef::int_recurrence("C", &[b, 1], &[0, 1])
    }

    /// `w_n = p w_{n-1} - q w_{n-2}`, `w_0 = 0`, `w_1 = 1`.
    pub fn horadam(p: i64, q: i64) -> Self {
        SequenceDef::int_recurrence("W", &[p, -q], &[0, 1])
    }

    /// Fibonacci polynomials: `F_n(x) = x F_{n-1}(x) + F_{n-2}(x)`.
    pub fn fibonacci_poly() -> Self {
        SequenceDef::recurrence(
            "Fx",
            vec![Scalar::x(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one()],
        )
    }

    /// Lucas polynomials: same recurrence, initials `2, x`.
    pub fn lucas_poly() -> Self {
        SequenceDef::recurrence(
            "Lx",
            vec![Scalar::x(), Scalar::one()],
            vec![Scalar::from_int(2), Scalar::x()],
        )
    }

    /// Tribonacci: `t_n = t_{n-1} + t_{n-2} + t_{n-3}`, `t_0 = t_1 = 0`, `t_2 = 1`.
    pub fn tribonacci() -> Self {
        SequenceDef::int_recurrence("T", &[1, 1, 1], &[0, 0, 1])
    }

    /// `s_n = s_{n-1} + 2 s_{n-2} + s_{n-3}`, `s_0 = 0`, `s_1 = s_2 = 1`.
    pub fn s121() -> Self {
        SequenceDef::int_recurrence("S", &[1, 2, 1], &[0, 1, 1])
    }

    /// `u_n = r u_{n-1} + s u_{n-2} + t u_{n-3}`, `u_0 = 0`, `u_1 = 1`, `u_2 = r`.
    pub fn u_rst(r: i64, s: i64, t: i64) -> Self {
        SequenceDef::int_recurrence("U", &[r, s, t], &[0, 1, r])
    }

    /// `h_{n,k}(j)` with `k` fixed.
    pub fn binomial_transform(k: i64) -> Self {
        SequenceDef {
            name: String::from("H"),
            kind: SeqKind::BinomialTransform { k },
        }
    }

    /// Number of index arguments a call to this sequence takes.
    pub fn index_args(&self) -> usize {
        match self.kind {
            SeqKind::Recurrence { .. } => 1,
            SeqKind::BinomialTransform { .. } => 2,
        }
    }

    /// Whether negative indices are reachable (trailing coefficient a unit).
    pub fn supports_negative_index(&self) -> bool {
        match &self.kind {
            SeqKind::Recurrence { coeffs, .. } => {
                coeffs.last().map_or(false, |c| c.is_unit())
            }
            SeqKind::BinomialTransform { .. } => false,
        }
    }
}

/// Resolves a builtin sequence by its short DSL name or a spelled-out alias.
pub fn builtin_by_name(name: &str) -> Option<SequenceDef> {
    match name {
        "F" | "fibonacci" => Some(SequenceDef::fibonacci()),
        "L" | "lucas" => Some(SequenceDef::lucas()),
        "P" | "pell" => Some(SequenceDef::pell()),
        "J" | "jacobsthal" => Some(SequenceDef::jacobsthal()),
        "Fx" | "fibonacci-poly" => Some(SequenceDef::fibonacci_poly()),
        "Lx" | "lucas-poly" => Some(SequenceDef::lucas_poly()),
        "T3" | "tribonacci" => Some(SequenceDef::tribonacci()),
        "S121" => Some(SequenceDef::s121()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqError {
    /// Backward extension needs a unit trailing coefficient.
    NegativeIndexUnsupported { name: String, idx: i64 },
    /// `h_{n,k}(j)` is only defined for `n >= 0`.
    NegativeTransformIndex { name: String, n: i64 },
    /// `h_{n,k}(j)` shift argument outside `{-1, 0, 1}`.
    ShiftOutOfRange { name: String, j: i64 },
    /// Wrong number of index arguments for the sequence.
    BadIndexArity {
        name: String,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::NegativeIndexUnsupported { name, idx } => write!(
                f,
                "sequence {name} does not support negative indices (requested {idx})"
            ),
            SeqError::NegativeTransformIndex { name, n } => {
                write!(f, "transform {name} needs n >= 0 (requested {n})")
            }
            SeqError::ShiftOutOfRange { name, j } => {
                write!(f, "transform {name} shift must be -1, 0 or 1 (got {j})")
            }
            SeqError::BadIndexArity {
                name,
                expected,
                got,
            } => write!(f, "sequence {name} takes {expected} index argument(s), got {got}"),
        }
    }
}

/// Memoized evaluator for one [`SequenceDef`]. Both directions of the
/// recurrence are cached. The cache uses interior mutability and is meant to
/// be confined to one thread; build one memo per worker.
pub struct SeqMemo {
    def: SequenceDef,
    cache: RefCell<BTreeMap<(i64, i64), Scalar>>,
    /// Fibonacci helper for the binomial transform's `F_{i-j}` factor.
    fib: Option<RefCell<BTreeMap<(i64, i64), Scalar>>>,
}

impl SeqMemo {
    pub fn new(def: SequenceDef) -> Self {
        let fib = match def.kind {
            SeqKind::BinomialTransform { .. } => Some(RefCell::new(BTreeMap::new())),
            SeqKind::Recurrence { .. } => None,
        };
        SeqMemo {
            def,
            cache: RefCell::new(BTreeMap::new()),
            fib,
        }
    }

    pub fn def(&self) -> &SequenceDef {
        &self.def
    }

    /// One-argument lookup; errors on two-argument definitions.
    pub fn value(&self, idx: i64) -> Result<Scalar, SeqError> {
        match &self.def.kind {
            SeqKind::Recurrence { coeffs, initials } => {
                recurrence_value(&self.def.name, coeffs, initials, &self.cache, idx)
            }
            SeqKind::BinomialTransform { .. } => Err(SeqError::BadIndexArity {
                name: self.def.name.clone(),
                expected: 2,
                got: 1,
            }),
        }
    }

    /// Two-argument lookup `(n, j)`; errors on one-argument definitions.
    pub fn value2(&self, n: i64, j: i64) -> Result<Scalar, SeqError> {
        match &self.def.kind {
            SeqKind::Recurrence { .. } => Err(SeqError::BadIndexArity {
                name: self.def.name.clone(),
                expected: 1,
                got: 2,
            }),
            SeqKind::BinomialTransform { k } => {
                if let Some(v) = self.cache.borrow().get(&(n, j)) {
                    return Ok(v.clone());
                }
                let fib_def = SequenceDef::fibonacci();
                let (fib_coeffs, fib_inits) = match &fib_def.kind {
                    SeqKind::Recurrence { coeffs, initials } => {
                        (coeffs.clone(), initials.clone())
                    }
                    _ => unreachable!(),
                };
                let fib_cache = self.fib.as_ref().expect("transform memo has fib cache");
                let fib = |i: i64| {
                    recurrence_value(&fib_def.name, &fib_coeffs, &fib_inits, fib_cache, i)
                };
                let v = h_value_with(n, *k, j, fib)?;
                self.cache.borrow_mut().insert((n, j), v.clone());
                Ok(v)
            }
        }
    }

    /// Dispatch on the call arity used by the identity DSL.
    pub fn value_args(&self, args: &[i64]) -> Result<Scalar, SeqError> {
        match args {
            [idx] => self.value(*idx),
            [n, j] => self.value2(*n, *j),
            _ => Err(SeqError::BadIndexArity {
                name: self.def.name.clone(),
                expected: self.def.index_args(),
                got: args.len(),
            }),
        }
    }
}

fn recurrence_value(
    name: &str,
    coeffs: &[Scalar],
    initials: &[Scalar],
    cache: &RefCell<BTreeMap<(i64, i64), Scalar>>,
    idx: i64,
) -> Result<Scalar, SeqError> {
    let order = coeffs.len() as i64;
    if let Some(v) = cache.borrow().get(&(idx, 0)) {
        return Ok(v.clone());
    }
    if (0..order).contains(&idx) {
        let v = initials[idx as usize].clone();
        cache.borrow_mut().insert((idx, 0), v.clone());
        return Ok(v);
    }
    if idx >= order {
        // forward from the highest cached index at or above the initials
        let mut next = order;
        {
            let c = cache.borrow();
            while c.contains_key(&(next, 0)) {
                next += 1;
            }
        }
        for i in next..=idx {
            let mut acc = Scalar::zero();
            for (d, coeff) in coeffs.iter().enumerate() {
                let prev = recurrence_value(name, coeffs, initials, cache, i - 1 - d as i64)?;
                acc = &acc + &(coeff * &prev);
            }
            cache.borrow_mut().insert((i, 0), acc);
        }
        return Ok(cache.borrow()[&(idx, 0)].clone());
    }
    // idx < 0: solve the recurrence for its lowest term
    let trailing = coeffs.last().expect("order >= 1");
    if !trailing.is_unit() {
        return Err(SeqError::NegativeIndexUnsupported {
            name: name.to_owned(),
            idx,
        });
    }
    let mut lowest = 0;
    {
        let c = cache.borrow();
        while c.contains_key(&(lowest - 1, 0)) {
            lowest -= 1;
        }
    }
    for i in (idx..lowest).rev() {
        // a_i = (a_{i+order} - sum_{d<order-1} c_{d+1} a_{i+order-1-d}) / c_order
        let mut acc = recurrence_value(name, coeffs, initials, cache, i + order)?;
        for (d, coeff) in coeffs.iter().enumerate().take(coeffs.len() - 1) {
            let term = recurrence_value(name, coeffs, initials, cache, i + order - 1 - d as i64)?;
            acc = &acc - &(coeff * &term);
        }
        cache.borrow_mut().insert((i, 0), acc.div_unit(trailing));
    }
    Ok(cache.borrow()[&(idx, 0)].clone())
}

/// `h_{n,k}(j)` as a direct exact sum, using the supplied Fibonacci lookup
/// for the (possibly negative-index) `F_{i-j}` factor.
fn h_value_with(
    n: i64,
    k: i64,
    j: i64,
    fib: impl Fn(i64) -> Result<Scalar, SeqError>,
) -> Result<Scalar, SeqError> {
    if n < 0 {
        return Err(SeqError::NegativeTransformIndex {
            name: String::from("H"),
            n,
        });
    }
    if !(-1..=1).contains(&j) {
        return Err(SeqError::ShiftOutOfRange {
            name: String::from("H"),
            j,
        });
    }
    let base = int(k + 1);
    let n_int = int(n);
    let mut acc = Scalar::zero();
    for i in 0..=n {
        let sign_positive = (i - 1 + j).rem_euclid(2) == 0;
        let choose = binomial(n_int.clone(), int(i));
        let weight = base.pow((n - i) as u32);
        let coeff = Rational::from_integer(choose * weight);
        let term = fib(i - j)?.scale(&coeff);
        acc = if sign_positive { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// `h_{n,k}(j)` for one-off use; hot paths should go through a
/// [`SeqMemo`] built from [`SequenceDef::binomial_transform`].
pub fn h_value(n: i64, k: i64, j: i64) -> Result<Scalar, SeqError> {
    SeqMemo::new(SequenceDef::binomial_transform(k)).value2(n, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent iterative oracle: runs the recurrence forward from the
    /// initial block without touching the memoized path.
    fn iterative_oracle(coeffs: &[i64], initials: &[i64], idx: usize) -> Scalar {
        let mut values: Vec<Scalar> = initials.iter().map(|&a| Scalar::from_int(a)).collect();
        while values.len() <= idx {
            let n = values.len();
            let mut acc = Scalar::zero();
            for (d, &c) in coeffs.iter().enumerate() {
                acc = &acc + &(&Scalar::from_int(c) * &values[n - 1 - d]);
            }
            values.push(acc);
        }
        values[idx].clone()
    }

    #[test]
    fn fibonacci_forward() {
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        assert_eq!(memo.value(9).unwrap(), iterative_oracle(&[1, 1], &[0, 1], 9));
        assert_eq!(memo.value(9).unwrap(), Scalar::from_int(34));
    }

    #[test]
    fn fibonacci_backward() {
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        // F_1 = F_0 + F_{-1} forces F_{-1} = 1
        assert_eq!(memo.value(-1).unwrap(), Scalar::one());
        assert_eq!(memo.value(-2).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn negative_index_fibonacci_law() {
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        for n in 1..=20i64 {
            let pos = memo.value(n).unwrap();
            let neg = memo.value(-n).unwrap();
            let expected = if n % 2 == 0 { -&pos } else { pos.clone() };
            assert_eq!(neg, expected, "F_-{n}");
        }
    }

    #[test]
    fn pell_fifth() {
        let memo = SeqMemo::new(SequenceDef::pell());
        assert_eq!(memo.value(5).unwrap(), iterative_oracle(&[2, 1], &[0, 1], 5));
        assert_eq!(memo.value(5).unwrap(), Scalar::from_int(29));
    }

    #[test]
    fn tribonacci_seventh() {
        let memo = SeqMemo::new(SequenceDef::tribonacci());
        assert_eq!(
            memo.value(7).unwrap(),
            iterative_oracle(&[1, 1, 1], &[0, 0, 1], 7)
        );
        assert_eq!(memo.value(7).unwrap(), Scalar::from_int(13));
    }

    #[test]
    fn recurrences_hold_across_negative_range() {
        for def in [
            SequenceDef::fibonacci(),
            SequenceDef::lucas(),
            SequenceDef::pell(),
            SequenceDef::jacobsthal(),
            SequenceDef::tribonacci(),
            SequenceDef::s121(),
            SequenceDef::fibonacci_poly(),
            SequenceDef::lucas_poly(),
        ] {
            let (coeffs, order) = match &def.kind {
                SeqKind::Recurrence { coeffs, .. } => (coeffs.clone(), coeffs.len() as i64),
                _ => unreachable!(),
            };
            let memo = SeqMemo::new(def.clone());
            for n in -10..=50i64 {
                let mut rhs = Scalar::zero();
                for (d, c) in coeffs.iter().enumerate() {
                    rhs = &rhs + &(c * &memo.value(n - 1 - d as i64).unwrap());
                }
                assert_eq!(memo.value(n).unwrap(), rhs, "{} at {n}", def.name);
            }
            let _ = order;
        }
    }

    #[test]
    fn jacobsthal_backward_requires_halving() {
        // trailing coefficient 2 is a unit in Q, so backwards works and
        // produces genuine rationals: J_{-1} = 1/2.
        let memo = SeqMemo::new(SequenceDef::jacobsthal());
        assert_eq!(
            memo.value(-1).unwrap(),
            Scalar::from_rational(crate::algebra::rat(1, 2))
        );
    }

    #[test]
    fn fibonacci_polynomials() {
        let memo = SeqMemo::new(SequenceDef::fibonacci_poly());
        let x = Scalar::x();
        assert_eq!(memo.value(2).unwrap(), x);
        // F_5(x) = x^4 + 3x^2 + 1
        let expected = &(&(&x.pow(4) + &(&Scalar::from_int(3) * &x.pow(2))) + &Scalar::one());
        assert_eq!(memo.value(5).unwrap(), *expected);
        // negative side: F_{-1}(x) = 1
        assert_eq!(memo.value(-1).unwrap(), Scalar::one());
    }

    #[test]
    fn h_small_values() {
        // h_{2,1}(1) = F_5 = 5
        assert_eq!(h_value(2, 1, 1).unwrap(), Scalar::from_int(5));
        // single-term sum at n = 0, j = 0 collapses to -F_0 = 0
        assert_eq!(h_value(0, 3, 0).unwrap(), Scalar::zero());
        // h_{0,k}(1) = F_{-1} = 1 and h_{0,k}(-1) = F_1 = 1
        assert_eq!(h_value(0, 4, 1).unwrap(), Scalar::one());
        assert_eq!(h_value(0, 4, -1).unwrap(), Scalar::one());
    }

    #[test]
    fn h_matches_t3_cube_entry() {
        // (1,2) entry of T_3^3 is 20; h_{3,2}(0) must agree
        assert_eq!(h_value(3, 2, 0).unwrap(), Scalar::from_int(20));
    }

    #[test]
    fn h_rejects_bad_arguments() {
        assert!(matches!(
            h_value(-1, 1, 0),
            Err(SeqError::NegativeTransformIndex { .. })
        ));
        assert!(matches!(
            h_value(2, 1, 2),
            Err(SeqError::ShiftOutOfRange { .. })
        ));
    }

    #[test]
    fn arity_errors() {
        let f = SeqMemo::new(SequenceDef::fibonacci());
        assert!(matches!(
            f.value_args(&[1, 2]),
            Err(SeqError::BadIndexArity { .. })
        ));
        let h = SeqMemo::new(SequenceDef::binomial_transform(1));
        assert!(matches!(
            h.value_args(&[1]),
            Err(SeqError::BadIndexArity { .. })
        ));
    }
}
