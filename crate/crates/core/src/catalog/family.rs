use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::algebra::{Scalar, SquareMatrix};

use super::seq::{SeqError, SeqMemo, SequenceDef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    UnknownFamily(String),
    BadParams { family: String, msg: String },
    /// The closed form does not admit this exponent (e.g. n = 0 when the
    /// form needs sequence values below the reachable range).
    NotAdmitted { family: String, n: u64 },
    Seq(SeqError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::UnknownFamily(name) => write!(f, "unknown matrix family {name}"),
            FamilyError::BadParams { family, msg } => {
                write!(f, "bad parameters for family {family}: {msg}")
            }
            FamilyError::NotAdmitted { family, n } => {
                write!(f, "closed form for {family} does not admit exponent {n}")
            }
            FamilyError::Seq(e) => write!(f, "{e}"),
        }
    }
}

impl From<SeqError> for FamilyError {
    fn from(e: SeqError) -> Self {
        FamilyError::Seq(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FamilyId {
    F1,
    Gb { b: i64 },
    W { p: i64, q: i64 },
    Pb { b: i64 },
    Q,
    L,
    Tk { k: i64 },
    M1,
    M2,
    M3,
    Sk { k: i64 },
    T001,
    T121,
    Trst { r: i64, s: i64, t: i64 },
    TF,
}

/// Public descriptor of a family's identity and parameters, for callers that
/// need to dispatch on the family (e.g. symbolic power forms).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    F1,
    Gb { b: i64 },
    W { p: i64, q: i64 },
    Pb { b: i64 },
    Q,
    L,
    Tk { k: i64 },
    M1,
    M2,
    M3,
    Sk { k: i64 },
    T001,
    T121,
    Trst { r: i64, s: i64, t: i64 },
    TF,
}

/// A named matrix family: a base matrix plus the closed form its powers are
/// claimed to satisfy. `predicted_power` is the computation-verified form;
/// `verbatim_power` is the originally printed form where the two differ.
pub struct MatrixFamily {
    id: FamilyId,
    main: Option<SeqMemo>,
    aux: Option<SeqMemo>,
}

impl MatrixFamily {
    fn build(id: FamilyId) -> Self {
        let main = match &id {
            FamilyId::F1 | FamilyId::M3 | FamilyId::TF => Some(SequenceDef::fibonacci()),
            FamilyId::Gb { b } => Some(SequenceDef::generalized_fibonacci(*b)),
            FamilyId::W { p, q } => Some(SequenceDef::horadam(*p, *q)),
            FamilyId::Pb { b } => Some(SequenceDef::generalized_pell(*b)),
            FamilyId::Q => Some(SequenceDef::fibonacci_poly()),
            FamilyId::L => Some(SequenceDef::fibonacci()),
            FamilyId::Tk { k } => Some(SequenceDef::binomial_transform(*k)),
            FamilyId::T001 => Some(SequenceDef::tribonacci()),
            FamilyId::T121 => Some(SequenceDef::s121()),
            FamilyId::Trst { r, s, t } => Some(SequenceDef::u_rst(*r, *s, *t)),
            FamilyId::M1 | FamilyId::M2 | FamilyId::Sk { .. } => None,
        }
        .map(SeqMemo::new);
        let aux = match &id {
            FamilyId::L => Some(SeqMemo::new(SequenceDef::lucas())),
            _ => None,
        };
        MatrixFamily { id, main, aux }
    }

    pub fn f1() -> Self {
        Self::build(FamilyId::F1)
    }

    pub fn gb(b: i64) -> Result<Self, FamilyError> {
        if b < 1 {
            return Err(FamilyError::BadParams {
                family: "Gb".into(),
                msg: format!("b must be >= 1, got {b}"),
            });
        }
        Ok(Self::build(FamilyId::Gb { b }))
    }

    pub fn w(p: i64, q: i64) -> Result<Self, FamilyError> {
        if p < 0 || q < 0 {
            return Err(FamilyError::BadParams {
                family: "W".into(),
                msg: format!("p and q must be >= 0, got p={p}, q={q}"),
            });
        }
        Ok(Self::build(FamilyId::W { p, q }))
    }

    pub fn pb(b: i64) -> Result<Self, FamilyError> {
        if b < 1 {
            return Err(FamilyError::BadParams {
                family: "Pb".into(),
                msg: format!("b must be >= 1, got {b}"),
            });
        }
        Ok(Self::build(FamilyId::Pb { b }))
    }

    pub fn q_poly() -> Self {
        Self::build(FamilyId::Q)
    }

    pub fn l() -> Self {
        Self::build(FamilyId::L)
    }

    pub fn tk(k: i64) -> Result<Self, FamilyError> {
        if k < 1 {
            return Err(FamilyError::BadParams {
                family: "Tk".into(),
                msg: format!("k must be >= 1, got {k}"),
            });
        }
        Ok(Self::build(FamilyId::Tk { k }))
    }

    pub fn m1() -> Self {
        Self::build(FamilyId::M1)
    }

    pub fn m2() -> Self {
        Self::build(FamilyId::M2)
    }

    pub fn m3() -> Self {
        Self::build(FamilyId::M3)
    }

    pub fn sk(k: i64) -> Result<Self, FamilyError> {
        if k < 1 {
            return Err(FamilyError::BadParams {
                family: "Sk".into(),
                msg: format!("k must be >= 1, got {k}"),
            });
        }
        Ok(Self::build(FamilyId::Sk { k }))
    }

    pub fn t001() -> Self {
        Self::build(FamilyId::T001)
    }

    pub fn t121() -> Self {
        Self::build(FamilyId::T121)
    }

    pub fn trst(r: i64, s: i64, t: i64) -> Result<Self, FamilyError> {
        if t == 0 {
            return Err(FamilyError::BadParams {
                family: "Trst".into(),
                msg: "t must be nonzero (the closed form reaches u_{-1})".into(),
            });
        }
        Ok(Self::build(FamilyId::Trst { r, s, t }))
    }

    pub fn tf() -> Self {
        Self::build(FamilyId::TF)
    }

    /// Resolves a family by CLI name plus `name=value` parameters.
    pub fn parse(name: &str, params: &[(String, i64)]) -> Result<Self, FamilyError> {
        let get = |key: &str| -> Result<i64, FamilyError> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| FamilyError::BadParams {
                    family: name.to_string(),
                    msg: format!("missing parameter {key}"),
                })
        };
        match name {
            "F1" => Ok(Self::f1()),
            "Gb" => Self::gb(get("b")?),
            "W" => Self::w(get("p")?, get("q")?),
            "Pb" => Self::pb(get("b")?),
            "Q" => Ok(Self::q_poly()),
            "L" => Ok(Self::l()),
            "Tk" => Self::tk(get("k")?),
            "M1" => Ok(Self::m1()),
            "M2" => Ok(Self::m2()),
            "M3" => Ok(Self::m3()),
            "Sk" => Self::sk(get("k")?),
            "T001" => Ok(Self::t001()),
            "T121" => Ok(Self::t121()),
            "Trst" => Self::trst(get("r")?, get("s")?, get("t")?),
            "TF" => Ok(Self::tf()),
            _ => Err(FamilyError::UnknownFamily(name.to_string())),
        }
    }

    /// Every family name the CLI accepts, with its required parameters.
    pub fn roster() -> &'static [(&'static str, &'static [&'static str])] {
        &[
            ("F1", &[]),
            ("Gb", &["b"]),
            ("W", &["p", "q"]),
            ("Pb", &["b"]),
            ("Q", &[]),
            ("L", &[]),
            ("Tk", &["k"]),
            ("M1", &[]),
            ("M2", &[]),
            ("M3", &[]),
            ("Sk", &["k"]),
            ("T001", &[]),
            ("T121", &[]),
            ("Trst", &["r", "s", "t"]),
            ("TF", &[]),
        ]
    }

    pub fn name(&self) -> String {
        match &self.id {
            FamilyId::F1 => "F1".into(),
            FamilyId::Gb { b } => format!("Gb(b={b})"),
            FamilyId::W { p, q } => format!("W(p={p},q={q})"),
            FamilyId::Pb { b } => format!("Pb(b={b})"),
            FamilyId::Q => "Q".into(),
            FamilyId::L => "L".into(),
            FamilyId::Tk { k } => format!("Tk(k={k})"),
            FamilyId::M1 => "M1".into(),
            FamilyId::M2 => "M2".into(),
            FamilyId::M3 => "M3".into(),
            FamilyId::Sk { k } => format!("Sk(k={k})"),
            FamilyId::T001 => "T001".into(),
            FamilyId::T121 => "T121".into(),
            FamilyId::Trst { r, s, t } => format!("Trst(r={r},s={s},t={t})"),
            FamilyId::TF => "TF".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self.id {
            FamilyId::T001 | FamilyId::T121 | FamilyId::Trst { .. } | FamilyId::TF => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self.id {
            FamilyId::F1 => FamilyKind::F1,
            FamilyId::Gb { b } => FamilyKind::Gb { b },
            FamilyId::W { p, q } => FamilyKind::W { p, q },
            FamilyId::Pb { b } => FamilyKind::Pb { b },
            FamilyId::Q => FamilyKind::Q,
            FamilyId::L => FamilyKind::L,
            FamilyId::Tk { k } => FamilyKind::Tk { k },
            FamilyId::M1 => FamilyKind::M1,
            FamilyId::M2 => FamilyKind::M2,
            FamilyId::M3 => FamilyKind::M3,
            FamilyId::Sk { k } => FamilyKind::Sk { k },
            FamilyId::T001 => FamilyKind::T001,
            FamilyId::T121 => FamilyKind::T121,
            FamilyId::Trst { r, s, t } => FamilyKind::Trst { r, s, t },
            FamilyId::TF => FamilyKind::TF,
        }
    }

    /// The family's base matrix.
    pub fn base(&self) -> SquareMatrix<Scalar> {
        let ints = |dim: usize, entries: &[i64]| SquareMatrix::from_ints(dim, entries).unwrap();
        match &self.id {
            FamilyId::F1 => ints(2, &[1, 1, 1, 0]),
            FamilyId::Gb { b } => ints(2, &[1, *b, 1, 0]),
            FamilyId::W { p, q } => ints(2, &[*p, -q, 1, 0]),
            FamilyId::Pb { b } => ints(2, &[*b, 1, 1, 0]),
            FamilyId::Q => SquareMatrix::new(
                2,
                vec![Scalar::x(), Scalar::one(), Scalar::one(), Scalar::zero()],
            )
            .unwrap(),
            FamilyId::L => ints(2, &[1, 5, 1, 1]).halve(),
            FamilyId::Tk { k } => ints(2, &[k + 1, 1, 1, *k]),
            FamilyId::M1 => ints(2, &[2, 1, -1, 0]),
            FamilyId::M2 => ints(2, &[3, 1, -2, 0]),
            FamilyId::M3 => ints(2, &[-2, -1, 1, 1]),
            FamilyId::Sk { k } => ints(2, &[1, *k, *k, -1]),
            FamilyId::T001 => ints(3, &[1, 1, 1, 1, 0, 0, 0, 1, 0]),
            FamilyId::T121 => ints(3, &[1, 2, 1, 1, 0, 0, 0, 1, 0]),
            FamilyId::Trst { r, s, t } => ints(3, &[*r, *s, *t, 1, 0, 0, 0, 1, 0]),
            FamilyId::TF => ints(3, &[0, 0, 1, 0, 1, 2, 1, 1, 1]),
        }
    }

    /// Smallest exponent the predicted closed form admits. Zero except where
    /// the form evaluates sequence values outside their domain at n = 0.
    pub fn min_exponent(&self) -> u64 {
        match self.id {
            FamilyId::W { q, .. } if q == 0 => 1,
            _ => 0,
        }
    }

    fn seq(&self, idx: i64) -> Result<Scalar, FamilyError> {
        Ok(self.main.as_ref().expect("family has a sequence").value(idx)?)
    }

    fn seq2(&self, n: i64, j: i64) -> Result<Scalar, FamilyError> {
        Ok(self
            .main
            .as_ref()
            .expect("family has a transform")
            .value2(n, j)?)
    }

    fn aux_seq(&self, idx: i64) -> Result<Scalar, FamilyError> {
        Ok(self.aux.as_ref().expect("family has an aux sequence").value(idx)?)
    }

    /// The computation-verified closed form for the n-th power.
    pub fn predicted_power(&self, n: u64) -> Result<SquareMatrix<Scalar>, FamilyError> {
        if n < self.min_exponent() {
            return Err(FamilyError::NotAdmitted {
                family: self.name(),
                n,
            });
        }
        let i = n as i64;
        let m = match &self.id {
            FamilyId::F1 | FamilyId::Pb { .. } | FamilyId::Q => {
                // [[a_{n+1}, a_n], [a_n, a_{n-1}]]
                SquareMatrix::new(
                    2,
                    vec![
                        self.seq(i + 1)?,
                        self.seq(i)?,
                        self.seq(i)?,
                        self.seq(i - 1)?,
                    ],
                )
                .unwrap()
            }
            FamilyId::Gb { b } => {
                let b = Scalar::from_int(*b);
                SquareMatrix::new(
                    2,
                    vec![
                        self.seq(i + 1)?,
                        &b * &self.seq(i)?,
                        self.seq(i)?,
                        &b * &self.seq(i - 1)?,
                    ],
                )
                .unwrap()
            }
            FamilyId::W { q, .. } => {
                let minus_q = Scalar::from_int(-q);
                SquareMatrix::new(
                    2,
                    vec![
                        self.seq(i + 1)?,
                        &minus_q * &self.seq(i)?,
                        self.seq(i)?,
                        &minus_q * &self.seq(i - 1)?,
                    ],
                )
                .unwrap()
            }
            FamilyId::L => {
                let fib = self.seq(i)?;
                let lucas = self.aux_seq(i)?;
                SquareMatrix::new(
                    2,
                    vec![
                        lucas.clone(),
                        &Scalar::from_int(5) * &fib,
                        fib,
                        lucas,
                    ],
                )
                .unwrap()
                .halve()
            }
            FamilyId::Tk { .. } => {
                // corrected off-diagonal: h_{n,k}(0), not h_{n-1,k}(0)
                let off = self.seq2(i, 0)?;
                SquareMatrix::new(
                    2,
                    vec![self.seq2(i, 1)?, off.clone(), off, self.seq2(i, -1)?],
                )
                .unwrap()
            }
            FamilyId::M1 => SquareMatrix::from_ints(2, &[i + 1, i, -i, 1 - i]).unwrap(),
            FamilyId::M2 => {
                let p = Scalar::from_int(2).pow(n);
                let p1 = &Scalar::from_int(2) * &p;
                let one = Scalar::one();
                let two = Scalar::from_int(2);
                SquareMatrix::new(
                    2,
                    vec![&p1 - &one, &p - &one, &two - &p1, &two - &p],
                )
                .unwrap()
            }
            FamilyId::M3 => {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let sign = Scalar::from_int(sign);
                SquareMatrix::new(
                    2,
                    vec![
                        self.seq(i + 2)?,
                        self.seq(i)?,
                        -&self.seq(i)?,
                        -&self.seq(i - 2)?,
                    ],
                )
                .unwrap()
                .scale(&sign)
            }
            FamilyId::Sk { k } => {
                let unit = Scalar::from_int(k * k + 1).pow(n / 2);
                if n % 2 == 0 {
                    SquareMatrix::<Scalar>::identity(2).unwrap().scale(&unit)
                } else {
                    // S^{2m+1} = (k^2+1)^m S; the printed form has the wrong
                    // sign in entry (2,2)
                    self.base().scale(&unit)
                }
            }
            FamilyId::T001 => SquareMatrix::new(
                3,
                vec![
                    self.seq(i + 2)?,
                    &self.seq(i)? + &self.seq(i + 1)?,
                    self.seq(i + 1)?,
                    self.seq(i + 1)?,
                    &self.seq(i)? + &self.seq(i - 1)?,
                    self.seq(i)?,
                    self.seq(i)?,
                    &self.seq(i - 1)? + &self.seq(i - 2)?,
                    self.seq(i - 1)?,
                ],
            )
            .unwrap(),
            FamilyId::T121 => {
                let two = Scalar::from_int(2);
                SquareMatrix::new(
                    3,
                    vec![
                        self.seq(i + 1)?,
                        &(&two * &self.seq(i)?) + &self.seq(i - 1)?,
                        self.seq(i)?,
                        self.seq(i)?,
                        &(&two * &self.seq(i - 1)?) + &self.seq(i - 2)?,
                        self.seq(i - 1)?,
                        self.seq(i - 1)?,
                        &(&two * &self.seq(i - 2)?) + &self.seq(i - 3)?,
                        self.seq(i - 2)?,
                    ],
                )
                .unwrap()
            }
            FamilyId::Trst { s, t, .. } => {
                // corrected third column: the printed form drops the factor
                // t from t*u_n, t*u_{n-1}, t*u_{n-2}
                let s = Scalar::from_int(*s);
                let t = Scalar::from_int(*t);
                let mix = |a: i64, b: i64| -> Result<Scalar, FamilyError> {
                    Ok(&(&s * &self.seq(a)?) + &(&t * &self.seq(b)?))
                };
                SquareMatrix::new(
                    3,
                    vec![
                        self.seq(i + 1)?,
                        mix(i, i - 1)?,
                        &t * &self.seq(i)?,
                        self.seq(i)?,
                        mix(i - 1, i - 2)?,
                        &t * &self.seq(i - 1)?,
                        self.seq(i - 1)?,
                        mix(i - 2, i - 3)?,
                        &t * &self.seq(i - 2)?,
                    ],
                )
                .unwrap()
            }
            FamilyId::TF => {
                let f = |d: i64| self.seq(i + d);
                let sq = |v: &Scalar| v * v;
                let fm = f(-1)?;
                let f0 = f(0)?;
                let fp = f(1)?;
                let two = Scalar::from_int(2);
                SquareMatrix::new(
                    3,
                    vec![
                        sq(&fm),
                        &fm * &f0,
                        sq(&f0),
                        &two * &(&fm * &f0),
                        &sq(&fm) + &(&fp * &f0),
                        &two * &(&fp * &f0),
                        sq(&f0),
                        &f0 * &fp,
                        sq(&fp),
                    ],
                )
                .unwrap()
            }
        };
        Ok(m)
    }

    /// The originally printed closed form where it differs from the
    /// computation-verified one; `None` when the printed form is correct.
    pub fn verbatim_power(&self, n: u64) -> Option<Result<SquareMatrix<Scalar>, FamilyError>> {
        let i = n as i64;
        match &self.id {
            FamilyId::Gb { b } => {
                // printed with g_{n+1} in both left entries
                let b = Scalar::from_int(*b);
                Some((|| {
                    Ok(SquareMatrix::new(
                        2,
                        vec![
                            self.seq(i + 1)?,
                            &b * &self.seq(i)?,
                            self.seq(i + 1)?,
                            &b * &self.seq(i - 1)?,
                        ],
                    )
                    .unwrap())
                })())
            }
            FamilyId::Tk { .. } => {
                // printed off-diagonal h_{n-1,k}(0) is off by one
                if n == 0 {
                    return Some(Err(FamilyError::NotAdmitted {
                        family: self.name(),
                        n,
                    }));
                }
                Some((|| {
                    let off = self.seq2(i - 1, 0)?;
                    Ok(SquareMatrix::new(
                        2,
                        vec![self.seq2(i, 1)?, off.clone(), off, self.seq2(i, -1)?],
                    )
                    .unwrap())
                })())
            }
            FamilyId::Sk { k } => {
                if n % 2 == 0 {
                    None // even powers are printed correctly
                } else {
                    // printed odd form has +(k^2+1)^m in entry (2,2)
                    let v = Scalar::from_int(k * k + 1).pow(n / 2);
                    let kv = &Scalar::from_int(*k) * &v;
                    Some(Ok(SquareMatrix::new(
                        2,
                        vec![v.clone(), kv.clone(), kv, v],
                    )
                    .unwrap()))
                }
            }
            FamilyId::Trst { s, t, .. } if *t != 1 => {
                // printed third column u_n, u_{n-1}, u_{n-2} without the t factor
                let s = Scalar::from_int(*s);
                let t = Scalar::from_int(*t);
                Some((|| {
                    let mix = |a: i64, b: i64| -> Result<Scalar, FamilyError> {
                        Ok(&(&s * &self.seq(a)?) + &(&t * &self.seq(b)?))
                    };
                    Ok(SquareMatrix::new(
                        3,
                        vec![
                            self.seq(i + 1)?,
                            mix(i, i - 1)?,
                            self.seq(i)?,
                            self.seq(i)?,
                            mix(i - 1, i - 2)?,
                            self.seq(i - 1)?,
                            self.seq(i - 1)?,
                            mix(i - 2, i - 3)?,
                            self.seq(i - 2)?,
                        ],
                    )
                    .unwrap())
                })())
            }
            _ => None,
        }
    }
}

/// The printed display claiming `S_k^2 = [[k^2+1, 2k],[2k, k^2+1]]`; the
/// actual square is diagonal.
pub fn sk_square_display(k: i64) -> SquareMatrix<Scalar> {
    SquareMatrix::from_ints(2, &[k * k + 1, 2 * k, 2 * k, k * k + 1]).unwrap()
}

/// The printed display claiming `G_2^n = [[J_{2n-1}, J_{2n}],[J_{2n}, J_{2n+1}]]`.
pub fn g2_jacobsthal_display(n: u64) -> SquareMatrix<Scalar> {
    let memo = SeqMemo::new(SequenceDef::jacobsthal());
    let i = n as i64;
    SquareMatrix::new(
        2,
        vec![
            memo.value(2 * i - 1).unwrap(),
            memo.value(2 * i).unwrap(),
            memo.value(2 * i).unwrap(),
            memo.value(2 * i + 1).unwrap(),
        ],
    )
    .unwrap()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClosedFormEntry {
    pub n: u64,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    /// One-based row and column of the first differing entry.
    pub row: usize,
    pub col: usize,
    pub predicted: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub family: String,
    pub start: u64,
    pub n_max: u64,
    pub all_match: bool,
    pub entries: Vec<ClosedFormEntry>,
}

/// Finds the first differing entry between two equal-dim matrices.
pub(crate) fn first_mismatch(
    predicted: &SquareMatrix<Scalar>,
    actual: &SquareMatrix<Scalar>,
) -> Option<Mismatch> {
    let d = predicted.dim();
    for r in 0..d {
        for c in 0..d {
            if predicted.entry(r, c) != actual.entry(r, c) {
                return Some(Mismatch {
                    row: r + 1,
                    col: c + 1,
                    predicted: predicted.entry(r, c).to_string(),
                    actual: actual.entry(r, c).to_string(),
                });
            }
        }
    }
    None
}

/// Compares `mat_pow(base, n)` with the predicted closed form for every
/// exponent the form admits up to `n_max`. A mismatch is a verdict, not an
/// error.
pub fn closedform_check(family: &MatrixFamily, n_max: u64) -> Result<ClosedFormReport, FamilyError> {
    let base = family.base();
    let start = family.min_exponent();
    let mut entries = Vec::new();
    let mut all_match = true;
    let mut actual = base.mat_pow(start);
    for n in start..=n_max {
        let predicted = family.predicted_power(n)?;
        let mismatch = first_mismatch(&predicted, &actual);
        if mismatch.is_some() {
            all_match = false;
        }
        entries.push(ClosedFormEntry {
            n,
            matched: mismatch.is_none(),
            first_mismatch: mismatch,
        });
        if n < n_max {
            actual = actual.mat_mul(&base).expect("same dim");
        }
    }
    Ok(ClosedFormReport {
        family: family.name(),
        start,
        n_max,
        all_match,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn l_fourth_power() {
        let l = MatrixFamily::l();
        let predicted = l.predicted_power(4).unwrap();
        let expected = SquareMatrix::new(
            2,
            vec![
                Scalar::from_rational(rat(7, 2)),
                Scalar::from_rational(rat(15, 2)),
                Scalar::from_rational(rat(3, 2)),
                Scalar::from_rational(rat(7, 2)),
            ],
        )
        .unwrap();
        assert_eq!(predicted, expected);
        assert_eq!(l.base().mat_pow(4), expected);
    }

    #[test]
    fn m2_cubed_closed_form() {
        let m2 = MatrixFamily::m2();
        let predicted = m2.predicted_power(3).unwrap();
        assert_eq!(predicted, SquareMatrix::from_ints(2, &[15, 7, -14, -6]).unwrap());
        assert_eq!(m2.base().mat_pow(3), predicted);
    }

    #[test]
    fn sk_square_is_diagonal_but_display_claims_otherwise() {
        let s2 = MatrixFamily::sk(2).unwrap();
        let actual = s2.base().mat_pow(2);
        assert_eq!(actual, SquareMatrix::from_ints(2, &[5, 0, 0, 5]).unwrap());
        // the printed square display reads [[5,4],[4,5]] for k = 2
        let display = sk_square_display(2);
        assert_eq!(display, SquareMatrix::from_ints(2, &[5, 4, 4, 5]).unwrap());
        assert_ne!(display, actual);
        let mm = first_mismatch(&display, &actual).unwrap();
        assert_eq!((mm.row, mm.col), (1, 2));
    }

    #[test]
    fn sk_odd_verbatim_sign_error() {
        let s2 = MatrixFamily::sk(2).unwrap();
        let actual = s2.base().mat_pow(3);
        assert_eq!(s2.predicted_power(3).unwrap(), actual);
        let verbatim = s2.verbatim_power(3).unwrap().unwrap();
        let mm = first_mismatch(&verbatim, &actual).unwrap();
        assert_eq!((mm.row, mm.col), (2, 2));
        // even powers are printed correctly, so there is no verbatim variant
        assert!(s2.verbatim_power(4).is_none());
    }

    #[test]
    fn tf_square() {
        let tf = MatrixFamily::tf();
        assert_eq!(tf.predicted_power(2).unwrap(), tf.base().mat_pow(2));
        assert_eq!(
            tf.base().mat_pow(2),
            SquareMatrix::from_ints(3, &[1, 1, 1, 2, 3, 4, 1, 2, 4]).unwrap()
        );
    }

    #[test]
    fn closed_forms_match_for_core_families() {
        for family in [
            MatrixFamily::f1(),
            MatrixFamily::gb(2).unwrap(),
            MatrixFamily::pb(2).unwrap(),
            MatrixFamily::l(),
            MatrixFamily::m1(),
            MatrixFamily::m3(),
            MatrixFamily::t001(),
        ] {
            let report = closedform_check(&family, 15).unwrap();
            assert!(report.all_match, "{} mismatched: {:?}", report.family, report);
        }
    }

    #[test]
    fn q_closed_form_is_polynomial() {
        let q = MatrixFamily::q_poly();
        let report = closedform_check(&q, 10).unwrap();
        assert!(report.all_match);
        // entry (1,1) of Q^5 is F_6(x) = x^5 + 4x^3 + 3x
        let p5 = q.predicted_power(5).unwrap();
        let x = Scalar::x();
        let expected = &(&x.pow(5) + &(&Scalar::from_int(4) * &x.pow(3)))
            + &(&Scalar::from_int(3) * &x);
        assert_eq!(*p5.entry(0, 0), expected);
    }

    #[test]
    fn gb_verbatim_mismatches_at_2_1() {
        let gb = MatrixFamily::gb(3).unwrap();
        let actual = gb.base().mat_pow(4);
        assert_eq!(gb.predicted_power(4).unwrap(), actual);
        let verbatim = gb.verbatim_power(4).unwrap().unwrap();
        let mm = first_mismatch(&verbatim, &actual).unwrap();
        assert_eq!((mm.row, mm.col), (2, 1));
    }

    #[test]
    fn tk_verbatim_off_diagonal_is_off_by_one() {
        let tk = MatrixFamily::tk(1).unwrap();
        let actual = tk.base().mat_pow(2);
        assert_eq!(tk.predicted_power(2).unwrap(), actual);
        let verbatim = tk.verbatim_power(2).unwrap().unwrap();
        let mm = first_mismatch(&verbatim, &actual).unwrap();
        assert_eq!((mm.row, mm.col), (1, 2));
    }

    #[test]
    fn g2_jacobsthal_display_is_wrong() {
        let g2 = MatrixFamily::gb(2).unwrap();
        let actual = g2.base().mat_pow(2);
        assert_ne!(g2_jacobsthal_display(2), actual);
    }

    #[test]
    fn trst_corrected_form_matches_from_zero() {
        let t = MatrixFamily::trst(2, 1, 3).unwrap();
        assert_eq!(t.min_exponent(), 0);
        let report = closedform_check(&t, 12).unwrap();
        assert!(report.all_match, "{report:?}");
    }

    #[test]
    fn trst_verbatim_drops_t_factor_in_third_column() {
        let t = MatrixFamily::trst(2, 1, 3).unwrap();
        let actual = t.base().mat_pow(2);
        let verbatim = t.verbatim_power(2).unwrap().unwrap();
        let mm = first_mismatch(&verbatim, &actual).unwrap();
        assert_eq!((mm.row, mm.col), (1, 3));
        // for t = 1 the printed and corrected forms coincide
        assert!(MatrixFamily::trst(1, 2, 1).unwrap().verbatim_power(2).is_none());
    }

    #[test]
    fn family_parse_roundtrip() {
        let fam = MatrixFamily::parse("Tk", &[("k".into(), 3)]).unwrap();
        assert_eq!(fam.name(), "Tk(k=3)");
        assert!(matches!(
            MatrixFamily::parse("nope", &[]),
            Err(FamilyError::UnknownFamily(_))
        ));
        assert!(matches!(
            MatrixFamily::parse("Sk", &[]),
            Err(FamilyError::BadParams { .. })
        ));
    }
}
