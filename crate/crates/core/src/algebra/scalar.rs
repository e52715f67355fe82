use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer. Sequence values grow like powers of
/// the golden ratio, so fixed-width integers are never enough.
pub type Integer = BigInt;

/// Exact rational with positive denominator in lowest terms.
pub type Rational = BigRational;

/// Shorthand for a machine-word integer lifted to [`Integer`].
pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

/// Shorthand for an exact fraction. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(int(num), int(den))
}

/// 2^e as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let two = int(2);
    if e >= 0 {
        Rational::from_integer(two.pow(e as u32))
    } else {
        Rational::new(Integer::one(), two.pow((-e) as u32))
    }
}

/// A univariate polynomial in `x` with exact rational coefficients, stored
/// densely in ascending degree. Degree-0 values double as plain rationals,
/// so every quantity in the crate lives in this single ring.
///
/// Canonical form: no trailing zero coefficient; the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_integer(int(n))
    }

    pub fn from_integer(n: Integer) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        if r.is_zero() {
            Scalar::zero()
        } else {
            Scalar { coeffs: vec![r] }
        }
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Scalar::monomial(Rational::one(), 1)
    }

    /// `coeff * x^degree`.
    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        if coeff.is_zero() {
            return Scalar::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Scalar { coeffs }
    }

    /// Builds a polynomial from ascending-degree coefficients, normalizing
    /// away trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut s = Scalar { coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The value as a rational if the polynomial is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// The value as an integer if it is a constant with denominator 1.
    pub fn as_integer(&self) -> Option<Integer> {
        let r = self.as_rational()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }

    /// True when the value is invertible in Q[x], i.e. a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Multiplies every coefficient by `r`.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact division by a unit (nonzero constant). Panics if `divisor` is
    /// not a unit; callers gate on [`Scalar::is_unit`].
    pub fn div_unit(&self, divisor: &Scalar) -> Self {
        let d = divisor
            .as_rational()
            .filter(|r| !r.is_zero())
            .expect("division by a non-unit scalar");
        self.scale(&d.recip())
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(a + b);
        }
        Scalar::from_coeffs(coeffs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Scalar::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Descending-degree rendering, e.g. `x^2 - 1/2*x + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one() && deg > 0;
            if !unit_coeff {
                fmt_rational(&abs, f)?;
            }
            if deg > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if deg > 1 {
                    write!(f, "^{}", deg)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Integer> for Scalar {
    fn from(n: Integer) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn rational_halves_sum_to_one() {
        let half = Scalar::from_rational(rat(1, 2));
        assert_eq!(&half + &half, Scalar::one());
    }

    #[test]
    fn difference_of_squares() {
        let x = Scalar::x();
        let lhs = &(&x + &Scalar::one()) * &(&x - &Scalar::one());
        let expected = &(&x * &x) - &Scalar::one();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn x_squared_plus_one() {
        // hand multiplication: x*x + 1 has coefficients [1, 0, 1]
        let x = Scalar::x();
        let got = &(&x * &x) + &Scalar::one();
        assert_eq!(
            got,
            Scalar::from_coeffs(vec![
                Rational::one(),
                Rational::zero(),
                Rational::one()
            ])
        );
        assert_eq!(got.degree(), Some(2));
    }

    #[test]
    fn canonical_zero_has_empty_coeffs() {
        let x = Scalar::x();
        let z = &x - &x;
        assert!(z.is_zero());
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_rational(rat(3, 2)).to_string(), "3/2");
        let p = Scalar::from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.to_string(), "x^2 - 1");
        let q = Scalar::from_coeffs(vec![rat(3, 1), rat(-1, 2), rat(1, 1)]);
        assert_eq!(q.to_string(), "x^2 - 1/2*x + 3");
    }

    #[test]
    fn pow2_handles_negative_exponents() {
        assert_eq!(pow2(3), rat(8, 1));
        assert_eq!(pow2(0), rat(1, 1));
        assert_eq!(pow2(-2), rat(1, 4));
    }

    #[test]
    fn unit_division() {
        let x = Scalar::x();
        let two = Scalar::from_int(2);
        assert_eq!(x.div_unit(&two), Scalar::monomial(rat(1, 2), 1));
        assert!(!x.is_unit());
        assert!(two.is_unit());
    }
}
