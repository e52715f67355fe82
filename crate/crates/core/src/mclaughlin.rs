//! Closed-form powers of arbitrary 2x2 matrices through the scalar
//! sequences `y_n` and `z_n` built from the trace and determinant, plus the
//! Lucas-sequence variant via `zbar_n`.
//!
//! Only the finite binomial sum forms are implemented, never the radical
//! quotients they equal: the sums are exact over any ring we care about and
//! remain valid when the discriminant `T^2 - 4D` vanishes, so the repeated
//! eigenvalue case needs no special treatment.

use alloc::vec;
use core::fmt;

use num_integer::binomial;

use crate::algebra::{int, pow2, Rational, Scalar, SquareMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McLaughlinError {
    /// The closed forms are stated for 2x2 matrices only.
    NotTwoByTwo { dim: usize },
    /// The asserted matrix identity failed (should never happen; kept as a
    /// checked invariant rather than an assumption).
    IdentityViolation,
}

impl fmt::Display for McLaughlinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            McLaughlinError::NotTwoByTwo { dim } => {
                write!(f, "closed-form powers need a 2x2 matrix, got {dim}x{dim}")
            }
            McLaughlinError::IdentityViolation => {
                write!(f, "matrix power disagreed with its closed form")
            }
        }
    }
}

/// Trace and determinant of a concrete 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDetPair {
    pub trace: Scalar,
    pub det: Scalar,
}

impl TraceDetPair {
    pub fn of(a: &SquareMatrix<Scalar>) -> Result<Self, McLaughlinError> {
        if a.dim() != 2 {
            return Err(McLaughlinError::NotTwoByTwo { dim: a.dim() });
        }
        Ok(TraceDetPair {
            trace: a.mat_trace(),
            det: a.mat_det(),
        })
    }
}

/// `z_n = sum_m C(n, 2m+1) T^{n-2m-1} (T^2-4D)^m / 2^{n-1}`, the
/// divided-difference of eigenvalue powers, with `z_0 = 0`, `z_1 = 1`.
pub fn z_seq(trace: &Scalar, det: &Scalar, n: u64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let disc = discriminant(trace, det);
    let mut acc = Scalar::zero();
    let n_int = int(n as i64);
    for m in 0..=((n - 1) / 2) {
        let choose = binomial(n_int.clone(), int((2 * m + 1) as i64));
        let term = &trace.pow(n - 2 * m - 1) * &disc.pow(m);
        acc = &acc + &term.scale(&Rational::from_integer(choose));
    }
    acc.scale(&pow2(1 - n as i64))
}

/// `y_n = sum_i C(n-i, i) T^{n-2i} (-D)^i`; satisfies `y_n = z_{n+1}`.
pub fn y_seq(trace: &Scalar, det: &Scalar, n: u64) -> Scalar {
    let minus_det = -det;
    let mut acc = Scalar::zero();
    for i in 0..=(n / 2) {
        let choose = binomial(int((n - i) as i64), int(i as i64));
        let term = &trace.pow(n - 2 * i) * &minus_det.pow(i);
        acc = &acc + &term.scale(&Rational::from_integer(choose));
    }
    acc
}

/// `zbar_n = sum_i C(n, 2i) T^{n-2i} (T^2-4D)^i / 2^{n-1}`.
///
/// This sum equals `alpha^n + beta^n` (the sum of eigenvalue powers), not the
/// `( alpha^n + beta^n ) / T` its quotient form is usually written as; the
/// two only coincide when `T = 1`, which is the Fibonacci case the Lucas
/// identity uses. See `docs/CORRECTIONS.md`.
pub fn zbar_seq(trace: &Scalar, det: &Scalar, n: u64) -> Scalar {
    let disc = discriminant(trace, det);
    let mut acc = Scalar::zero();
    let n_int = int(n as i64);
    for i in 0..=(n / 2) {
        let choose = binomial(n_int.clone(), int((2 * i) as i64));
        let term = &trace.pow(n - 2 * i) * &disc.pow(i);
        acc = &acc + &term.scale(&Rational::from_integer(choose));
    }
    acc.scale(&pow2(1 - n as i64))
}

fn discriminant(trace: &Scalar, det: &Scalar) -> Scalar {
    &(trace * trace) - &(&Scalar::from_int(4) * det)
}

/// `A^n = z_n A - z_{n-1} D I` for `n >= 1`.
pub fn pow_via_z(a: &SquareMatrix<Scalar>, n: u64) -> Result<SquareMatrix<Scalar>, McLaughlinError> {
    assert!(n >= 1, "pow_via_z needs n >= 1");
    let td = TraceDetPair::of(a)?;
    let zn = z_seq(&td.trace, &td.det, n);
    let zn1 = z_seq(&td.trace, &td.det, n - 1);
    let id = SquareMatrix::identity(2).expect("2 is a valid dim");
    let first = a.scale(&zn);
    let second = id.scale(&(&zn1 * &td.det));
    Ok(first.sub(&second).expect("same dim"))
}

/// `A^n = [[y_n - d y_{n-1}, b y_{n-1}], [c y_{n-1}, y_n - a y_{n-1}]]`
/// for `n >= 1`.
pub fn pow_via_y(a: &SquareMatrix<Scalar>, n: u64) -> Result<SquareMatrix<Scalar>, McLaughlinError> {
    assert!(n >= 1, "pow_via_y needs n >= 1");
    let td = TraceDetPair::of(a)?;
    let yn = y_seq(&td.trace, &td.det, n);
    let yn1 = y_seq(&td.trace, &td.det, n - 1);
    let entry = |r: usize, c: usize| a.entry(r, c);
    Ok(SquareMatrix::new(
        2,
        vec![
            &yn - &(entry(1, 1) * &yn1),
            entry(0, 1) * &yn1,
            entry(1, 0) * &yn1,
            &yn - &(entry(0, 0) * &yn1),
        ],
    )
    .expect("2x2"))
}

/// Extracts `L_n` from the fixed pair `A = [[1,1],[1,0]]`,
/// `B = A^2 + I = [[3,1],[1,2]]` by checking
/// `A^{n-1} B = zbar_n A - zbar_{n-1} D I` and returning `zbar_n`.
/// The matrix identity is verified, not assumed.
pub fn lucas_via_zbar(n: u64) -> Result<Scalar, McLaughlinError> {
    assert!(n >= 1, "lucas_via_zbar needs n >= 1");
    let a = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).expect("2x2");
    let b = SquareMatrix::from_ints(2, &[3, 1, 1, 2]).expect("2x2");
    let td = TraceDetPair::of(&a)?;
    let lhs = a.mat_pow(n - 1).mat_mul(&b).expect("same dim");
    let zn = zbar_seq(&td.trace, &td.det, n);
    let zn1 = zbar_seq(&td.trace, &td.det, n - 1);
    let id = SquareMatrix::identity(2).expect("2x2");
    let rhs = a
        .scale(&zn)
        .sub(&id.scale(&(&zn1 * &td.det)))
        .expect("same dim");
    if lhs != rhs {
        return Err(McLaughlinError::IdentityViolation);
    }
    Ok(zn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{SeqMemo, SequenceDef};

    fn scalar(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn z_matches_fibonacci() {
        // F1 has trace 1, det -1; z_n is then the Fibonacci sequence
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        for n in 0..=15u64 {
            assert_eq!(
                z_seq(&scalar(1), &scalar(-1), n),
                memo.value(n as i64).unwrap(),
                "z_{n}"
            );
        }
    }

    #[test]
    fn z_is_zero_at_zero_for_any_inputs() {
        assert_eq!(z_seq(&scalar(7), &scalar(3), 0), Scalar::zero());
        assert_eq!(z_seq(&Scalar::x(), &scalar(-2), 0), Scalar::zero());
    }

    #[test]
    fn z_degenerate_discriminant() {
        // T = 2, D = 1 has a repeated eigenvalue 1; z_n degenerates to n
        for n in 0..=10u64 {
            assert_eq!(z_seq(&scalar(2), &scalar(1), n), scalar(n as i64));
        }
    }

    #[test]
    fn y_values() {
        // Fibonacci trace/det: y_n = F_{n+1}
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        assert_eq!(y_seq(&scalar(1), &scalar(-1), 4), memo.value(5).unwrap());
        // M2 trace/det: y_3 = 15 = 2^4 - 1
        assert_eq!(y_seq(&scalar(3), &scalar(2), 3), scalar(15));
        // y_0 is the single i = 0 term
        assert_eq!(y_seq(&scalar(9), &scalar(-4), 0), Scalar::one());
    }

    #[test]
    fn y_equals_z_shifted() {
        for (t, d) in [(1i64, -1i64), (2, 1), (3, 2), (0, 5), (-4, 3)] {
            for n in 0..=30u64 {
                assert_eq!(
                    y_seq(&scalar(t), &scalar(d), n),
                    z_seq(&scalar(t), &scalar(d), n + 1),
                    "T={t} D={d} n={n}"
                );
            }
        }
    }

    #[test]
    fn z_satisfies_its_recurrence() {
        for (t, d) in [(1i64, -1i64), (2, 1), (5, 5), (-3, 2)] {
            let (t, d) = (scalar(t), scalar(d));
            for n in 2..=30u64 {
                let expected = &(&t * &z_seq(&t, &d, n - 1)) - &(&d * &z_seq(&t, &d, n - 2));
                assert_eq!(z_seq(&t, &d, n), expected);
            }
        }
    }

    #[test]
    fn pow_via_z_examples() {
        let f1 = SquareMatrix::from_ints(2, &[1, 1, 1, 0]).unwrap();
        assert_eq!(
            pow_via_z(&f1, 6).unwrap(),
            SquareMatrix::from_ints(2, &[13, 8, 8, 5]).unwrap()
        );
        let any = SquareMatrix::from_ints(2, &[4, -7, 2, 5]).unwrap();
        assert_eq!(pow_via_z(&any, 1).unwrap(), any);
        let m1 = SquareMatrix::from_ints(2, &[2, 1, -1, 0]).unwrap();
        assert_eq!(
            pow_via_z(&m1, 4).unwrap(),
            SquareMatrix::from_ints(2, &[5, 4, -4, -3]).unwrap()
        );
    }

    #[test]
    fn pow_via_y_examples() {
        let m2 = SquareMatrix::from_ints(2, &[3, 1, -2, 0]).unwrap();
        assert_eq!(
            pow_via_y(&m2, 3).unwrap(),
            SquareMatrix::from_ints(2, &[15, 7, -14, -6]).unwrap()
        );
        let m3 = SquareMatrix::from_ints(2, &[-2, -1, 1, 1]).unwrap();
        assert_eq!(
            pow_via_y(&m3, 4).unwrap(),
            SquareMatrix::from_ints(2, &[8, 3, -3, -1]).unwrap()
        );
        let a = SquareMatrix::from_ints(2, &[0, -3, 8, 1]).unwrap();
        assert_eq!(pow_via_y(&a, 1).unwrap(), a);
    }

    #[test]
    fn both_routes_agree_with_mat_pow() {
        let samples = [
            [1i64, 1, 1, 0],
            [2, 1, -1, 0],
            [3, 1, -2, 0],
            [-2, -1, 1, 1],
            [4, 2, 2, 1],
            [2, 0, 0, 2], // degenerate discriminant
            [0, 0, 0, 0],
        ];
        for entries in samples {
            let a = SquareMatrix::from_ints(2, &entries).unwrap();
            for n in 1..=12u64 {
                let direct = a.mat_pow(n);
                assert_eq!(pow_via_z(&a, n).unwrap(), direct, "z route {entries:?}^{n}");
                assert_eq!(pow_via_y(&a, n).unwrap(), direct, "y route {entries:?}^{n}");
            }
        }
    }

    #[test]
    fn rejects_3x3() {
        let a = SquareMatrix::<Scalar>::identity(3).unwrap();
        assert!(matches!(
            pow_via_z(&a, 2),
            Err(McLaughlinError::NotTwoByTwo { dim: 3 })
        ));
        assert!(matches!(
            pow_via_y(&a, 2),
            Err(McLaughlinError::NotTwoByTwo { dim: 3 })
        ));
    }

    #[test]
    fn zbar_gives_lucas_numbers() {
        let memo = SeqMemo::new(SequenceDef::lucas());
        for n in 0..=20u64 {
            assert_eq!(
                zbar_seq(&scalar(1), &scalar(-1), n),
                memo.value(n as i64).unwrap(),
                "zbar_{n}"
            );
        }
    }

    #[test]
    fn zbar_sum_is_eigenvalue_power_sum_not_its_trace_quotient() {
        // For T = 3, D = 2 the eigenvalues are 2 and 1, so
        // alpha^n + beta^n = 2^n + 1. The printed quotient form would divide
        // by T; the sum form does not.
        for n in 0..=10u64 {
            assert_eq!(
                zbar_seq(&scalar(3), &scalar(2), n),
                scalar((1i64 << n) + 1)
            );
        }
    }

    #[test]
    fn lucas_via_matrix_identity() {
        let memo = SeqMemo::new(SequenceDef::lucas());
        for n in 1..=20u64 {
            assert_eq!(
                lucas_via_zbar(n).unwrap(),
                memo.value(n as i64).unwrap(),
                "L_{n}"
            );
        }
    }
}
