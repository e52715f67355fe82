use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Integer;

use super::seq::{SeqError, SeqMemo};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfileError {
    /// A line that is neither a `#` comment, blank, nor an `index value` pair.
    Malformed { line: usize, content: String },
    /// Indices must be strictly ascending.
    OutOfOrder { line: usize },
}

impl fmt::Display for BfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BfileError::Malformed { line, content } => {
                write!(f, "malformed b-file line {line}: {content:?}")
            }
            BfileError::OutOfOrder { line } => {
                write!(f, "b-file indices not ascending at line {line}")
            }
        }
    }
}

/// Parsed contents of an OEIS b-file: one `index value` pair per line,
/// ascending index, `#` comment lines ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfileData {
    pub entries: Vec<(i64, Integer)>,
}

pub fn parse_bfile(text: &str) -> Result<BfileData, BfileError> {
    let mut entries: Vec<(i64, Integer)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let malformed = || BfileError::Malformed {
            line,
            content: raw.to_string(),
        };
        let idx: i64 = fields.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        let value: Integer = fields
            .next()
            .ok_or_else(malformed)?
            .parse()
            .map_err(|_| malformed())?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        if let Some((last, _)) = entries.last() {
            if idx <= *last {
                return Err(BfileError::OutOfOrder { line });
            }
        }
        entries.push((idx, value));
    }
    Ok(BfileData { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrosscheckVerdict {
    /// Every overlapping index agreed exactly.
    Match { compared: usize },
    /// First disagreement, with both values rendered.
    Mismatch {
        index: i64,
        bfile: Integer,
        computed: String,
    },
}

impl fmt::Display for CrosscheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrosscheckVerdict::Match { compared } => {
                write!(f, "MATCH ({compared} terms compared)")
            }
            CrosscheckVerdict::Mismatch {
                index,
                bfile,
                computed,
            } => write!(
                f,
                "MISMATCH at index {index}: b-file has {bfile}, computed {computed}"
            ),
        }
    }
}

/// Compares a sequence against b-file data. Indices where the sequence is
/// undefined (negative index without backward extension) do not overlap and
/// are skipped.
pub fn oeis_crosscheck(memo: &SeqMemo, data: &BfileData) -> CrosscheckVerdict {
    let mut compared = 0;
    for (idx, expected) in &data.entries {
        let value = match memo.value(*idx) {
            Ok(v) => v,
            Err(SeqError::NegativeIndexUnsupported { .. }) => continue,
            Err(_) => continue,
        };
        compared += 1;
        if value.as_integer().as_ref() != Some(expected) {
            return CrosscheckVerdict::Mismatch {
                index: *idx,
                bfile: expected.clone(),
                computed: value.to_string(),
            };
        }
    }
    CrosscheckVerdict::Match { compared }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::seq::SequenceDef;

    #[test]
    fn jacobsthal_prefix_matches() {
        let text = "# A001045 prefix\n0 0\n1 1\n2 1\n3 3\n4 5\n5 11\n";
        let data = parse_bfile(text).unwrap();
        let memo = SeqMemo::new(SequenceDef::jacobsthal());
        assert_eq!(
            oeis_crosscheck(&memo, &data),
            CrosscheckVerdict::Match { compared: 6 }
        );
    }

    #[test]
    fn corrupted_line_is_detected() {
        let text = "0 0\n1 1\n2 1\n3 4\n"; // F_3 is 2, not 4
        let data = parse_bfile(text).unwrap();
        let memo = SeqMemo::new(SequenceDef::fibonacci());
        match oeis_crosscheck(&memo, &data) {
            CrosscheckVerdict::Mismatch { index, .. } => assert_eq!(index, 3),
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn pell_prefix_matches() {
        let text = "0 0\n1 1\n2 2\n3 5\n4 12\n5 29\n";
        let data = parse_bfile(text).unwrap();
        let memo = SeqMemo::new(SequenceDef::pell());
        assert_eq!(
            oeis_crosscheck(&memo, &data),
            CrosscheckVerdict::Match { compared: 6 }
        );
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        let err = parse_bfile("0 0\nbogus line\n").unwrap_err();
        assert_eq!(
            err,
            BfileError::Malformed {
                line: 2,
                content: "bogus line".into()
            }
        );
        let err = parse_bfile("0 0\n1 2 3\n").unwrap_err();
        assert!(matches!(err, BfileError::Malformed { line: 2, .. }));
        let err = parse_bfile("5 5\n3 2\n").unwrap_err();
        assert_eq!(err, BfileError::OutOfOrder { line: 2 });
    }
}
