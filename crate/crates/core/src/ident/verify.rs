use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use super::ast::IdentityStatement;
use super::eval::{eval_side, EvalContext};
use super::print::print_canonical;

/// Inclusive integer ranges per parameter, e.g. `n=1..30,m=1..30`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    ranges: Vec<(String, i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    BadGridSpec(String),
    EmptyRange { param: String, lo: i64, hi: i64 },
    MissingRange { param: String },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::BadGridSpec(s) => write!(f, "bad grid spec {s:?} (want name=lo..hi,...)"),
            VerifyError::EmptyRange { param, lo, hi } => {
                write!(f, "empty range {lo}..{hi} for parameter {param}")
            }
            VerifyError::MissingRange { param } => {
                write!(f, "grid does not cover parameter {param}")
            }
        }
    }
}

impl Grid {
    pub fn new(ranges: Vec<(String, i64, i64)>) -> Result<Self, VerifyError> {
        for (param, lo, hi) in &ranges {
            if lo > hi {
                return Err(VerifyError::EmptyRange {
                    param: param.clone(),
                    lo: *lo,
                    hi: *hi,
                });
            }
        }
        Ok(Grid { ranges })
    }

    /// Parses the CLI mini-syntax `name=lo..hi` comma-separated.
    pub fn parse(spec: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::BadGridSpec(spec.to_string());
        let mut ranges = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, range) = part.split_once('=').ok_or_else(bad)?;
            let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            ranges.push((name.trim().to_string(), lo, hi));
        }
        if ranges.is_empty() {
            return Err(bad());
        }
        Grid::new(ranges)
    }

    pub fn range(&self, param: &str) -> Option<(i64, i64)> {
        self.ranges
            .iter()
            .find(|(n, _, _)| n == param)
            .map(|(_, lo, hi)| (*lo, *hi))
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .ranges
            .iter()
            .map(|(n, lo, hi)| format!("{n}={lo}..{hi}"))
            .collect();
        parts.join(",")
    }
}

/// Default grid for a statement: two-parameter identities get `[1,30]` per
/// parameter, three-parameter `[1,12]`, and anything with a nonlinear index
/// expression `[1,6]`.
pub fn default_grid(stmt: &IdentityStatement) -> Grid {
    let used = stmt.used_params();
    let hi = if stmt.max_index_degree() > 1 {
        6
    } else if used.len() >= 3 {
        12
    } else {
        30
    };
    Grid {
        ranges: used.into_iter().map(|p| (p, 1, hi)).collect(),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub env: Vec<(String, i64)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SkippedPoint {
    pub env: Vec<(String, i64)>,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum VerdictKind {
    /// Equal at every grid point, nothing skipped.
    #[serde(rename = "VERIFIED")]
    Verified,
    /// At least one grid point where the sides differ.
    #[serde(rename = "FAILED")]
    Failed,
    /// No failures, but some points could not be evaluated; not verified.
    #[serde(rename = "INCOMPLETE")]
    Incomplete,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Verified => write!(f, "VERIFIED"),
            VerdictKind::Failed => write!(f, "FAILED"),
            VerdictKind::Incomplete => write!(f, "INCOMPLETE"),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub statement: String,
    pub grid: String,
    pub points: u64,
    pub verdict: VerdictKind,
    /// Lexicographically first failing point, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped: Vec<SkippedPoint>,
}

/// Sweeps the full grid in lexicographic order of the statement's used
/// parameters (declaration order, last parameter fastest). Every point is
/// visited: the counterexample reported is the lexicographically first, and
/// all skipped points are listed. VERIFIED requires zero failures and zero
/// skips.
pub fn verify(stmt: &IdentityStatement, grid: &Grid) -> Result<VerifyOutcome, VerifyError> {
    let params = stmt.used_params();
    let mut ranges = Vec::with_capacity(params.len());
    for p in &params {
        let (lo, hi) = grid
            .range(p)
            .ok_or_else(|| VerifyError::MissingRange { param: p.clone() })?;
        if lo > hi {
            return Err(VerifyError::EmptyRange {
                param: p.clone(),
                lo,
                hi,
            });
        }
        ranges.push((p.clone(), lo, hi));
    }

    let ctx = EvalContext::new(&stmt.bindings);
    let mut env: Vec<(String, i64)> = ranges.iter().map(|(p, lo, _)| (p.clone(), *lo)).collect();
    let mut counterexample: Option<Counterexample> = None;
    let mut skipped: Vec<SkippedPoint> = Vec::new();
    let mut points: u64 = 0;

    'sweep: loop {
        points += 1;
        match (
            eval_side(&stmt.lhs, &env, &ctx),
            eval_side(&stmt.rhs, &env, &ctx),
        ) {
            (Ok(lhs), Ok(rhs)) => {
                if lhs != rhs && counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        env: env.clone(),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                skipped.push(SkippedPoint {
                    env: env.clone(),
                    reason: e.to_string(),
                });
            }
        }
        // odometer increment, last parameter fastest
        for i in (0..env.len()).rev() {
            let (_, _, hi) = ranges[i];
            if env[i].1 < hi {
                env[i].1 += 1;
                for j in (i + 1)..env.len() {
                    env[j].1 = ranges[j].1;
                }
                continue 'sweep;
            }
            if i == 0 {
                break 'sweep;
            }
        }
        if env.is_empty() {
            break; // statement with no parameters: a single point
        }
    }

    let verdict = if counterexample.is_some() {
        VerdictKind::Failed
    } else if !skipped.is_empty() {
        VerdictKind::Incomplete
    } else {
        VerdictKind::Verified
    };
    Ok(VerifyOutcome {
        statement: print_canonical(stmt),
        grid: ranges
            .iter()
            .map(|(p, lo, hi)| format!("{p}={lo}..{hi}"))
            .collect::<Vec<_>>()
            .join(","),
        points,
        verdict,
        counterexample,
        skipped,
    })
}
