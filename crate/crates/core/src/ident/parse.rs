use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::algebra::{Integer, Scalar};
use crate::catalog::{builtin_by_name, SequenceDef};

use super::ast::{Bindings, IdentityStatement, IdnFile, IdnStatement, ScalarExpr};
use super::index::IndexPoly;

/// A syntax or semantic error with its source position (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(Integer),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    EqEq,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(v) => write!(f, "{v}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
            Tok::Semi => write!(f, ";"),
            Tok::EqEq => write!(f, "=="),
            Tok::Eq => write!(f, "="),
            Tok::End => write!(f, "end of line"),
        }
    }
}

fn lex_line(line: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        let c = bytes[i] as char;
        match c {
            '#' => break, // comment to end of line
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            ';' => {
                out.push((Tok::Semi, col));
                i += 1;
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    out.push((Tok::EqEq, col));
                    i += 2;
                } else {
                    out.push((Tok::Eq, col));
                    i += 1;
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                let value: Integer = digits.parse().expect("digit string");
                out.push((Tok::Int(value), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), col));
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    out.push((Tok::End, text.len() + 1));
    Ok(out)
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    params: &'a [String],
    bindings: &'a Bindings,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn col(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col(),
            message,
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    /// `expr := addsub`; `addsub := mul {(+|-) mul}`; `mul := pow {* pow}`;
    /// `pow := unary [^ int]`; `unary := - unary | atom`. Unary minus binds
    /// tighter than `^`, so `-a^2` is `(-a)^2`.
    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.mul()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.mul()?;
                    lhs = ScalarExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.mul()?;
                    lhs = ScalarExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn mul(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.pow()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.pow()?;
            lhs = ScalarExpr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn pow(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.unary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let col = self.col();
            match self.bump() {
                Tok::Int(v) => {
                    let exp = v.to_u32().ok_or_else(|| ParseError {
                        line: self.line,
                        col,
                        message: String::from("exponent out of range"),
                    })?;
                    Ok(ScalarExpr::Pow(Box::new(base), exp))
                }
                other => Err(ParseError {
                    line: self.line,
                    col,
                    message: format!(
                        "exponent must be a literal nonnegative integer, found {other}"
                    ),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            Ok(ScalarExpr::Neg(Box::new(inner)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<ScalarExpr, ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Int(v) => Ok(ScalarExpr::Int(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = Vec::new();
                    loop {
                        let arg_col = self.col();
                        let arg = self.expr()?;
                        args.push(self.to_index_poly(arg, arg_col)?);
                        match self.bump() {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            other => {
                                return Err(ParseError {
                                    line: self.line,
                                    col,
                                    message: format!("expected , or ) in call, found {other}"),
                                })
                            }
                        }
                    }
                    let def = self.bindings.get(&name).ok_or_else(|| ParseError {
                        line: self.line,
                        col,
                        message: format!("unbound sequence {name}"),
                    })?;
                    if def.index_args() != args.len() {
                        return Err(ParseError {
                            line: self.line,
                            col,
                            message: format!(
                                "sequence {name} takes {} index argument(s), got {}",
                                def.index_args(),
                                args.len()
                            ),
                        });
                    }
                    Ok(ScalarExpr::Call(name, args))
                } else if name == "x" {
                    Ok(ScalarExpr::X)
                } else if self.params.iter().any(|p| *p == name) {
                    Ok(ScalarExpr::Param(name))
                } else {
                    Err(ParseError {
                        line: self.line,
                        col,
                        message: format!("undeclared parameter {name}"),
                    })
                }
            }
            other => Err(ParseError {
                line: self.line,
                col,
                message: format!("expected a value, found {other}"),
            }),
        }
    }

    /// Index arguments are integer polynomials in the parameters: no `x`, no
    /// sequence calls, integer literals only.
    fn to_index_poly(&self, expr: ScalarExpr, col: usize) -> Result<IndexPoly, ParseError> {
        let err = |message: String| ParseError {
            line: self.line,
            col,
            message,
        };
        match expr {
            ScalarExpr::Int(v) => {
                let c = v
                    .to_i64()
                    .ok_or_else(|| err(String::from("index literal too large")))?;
                Ok(IndexPoly::constant(c))
            }
            ScalarExpr::Param(p) => Ok(IndexPoly::param(&p)),
            ScalarExpr::X => Err(err(String::from("x cannot appear in an index expression"))),
            ScalarExpr::Call(name, _) => Err(err(format!(
                "sequence call {name}(...) cannot appear in an index expression"
            ))),
            ScalarExpr::Neg(e) => Ok(self.to_index_poly(*e, col)?.neg()),
            ScalarExpr::Add(l, r) => {
                Ok(self.to_index_poly(*l, col)?.add(&self.to_index_poly(*r, col)?))
            }
            ScalarExpr::Sub(l, r) => {
                Ok(self.to_index_poly(*l, col)?.sub(&self.to_index_poly(*r, col)?))
            }
            ScalarExpr::Mul(l, r) => {
                Ok(self.to_index_poly(*l, col)?.mul(&self.to_index_poly(*r, col)?))
            }
            ScalarExpr::Pow(b, e) => {
                if e > 16 {
                    return Err(err(String::from("index exponent out of range")));
                }
                Ok(self.to_index_poly(*b, col)?.pow(e))
            }
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.bump() {
            Tok::Ident(s) => Ok((s, col)),
            other => Err(ParseError {
                line: self.line,
                col,
                message: format!("expected a name, found {other}"),
            }),
        }
    }

    fn int_literal(&mut self) -> Result<i64, ParseError> {
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let col = self.col();
        match self.bump() {
            Tok::Int(v) => {
                let v = v.to_i64().ok_or_else(|| ParseError {
                    line: self.line,
                    col,
                    message: String::from("integer literal too large"),
                })?;
                Ok(if negative { -v } else { v })
            }
            other => Err(ParseError {
                line: self.line,
                col,
                message: format!("expected an integer, found {other}"),
            }),
        }
    }

    fn int_list(&mut self, terminator: Tok) -> Result<Vec<i64>, ParseError> {
        let mut out = Vec::new();
        loop {
            out.push(self.int_literal()?);
            if *self.peek() == Tok::Comma {
                self.bump();
                continue;
            }
            self.expect(terminator)?;
            return Ok(out);
        }
    }

    /// `rec(order; c1,...,ck; a0,...,a(k-1))`, `U(r,s,t)`, `H(k=INT)`, or a
    /// builtin short name.
    fn binding_spec(&mut self, bound_name: &str) -> Result<SequenceDef, ParseError> {
        let (head, col) = self.ident()?;
        let rename = |mut def: SequenceDef| {
            def.name = String::from(bound_name);
            def
        };
        match head.as_str() {
            "rec" => {
                self.expect(Tok::LParen)?;
                let order = self.int_literal()?;
                if !(1..=3).contains(&order) {
                    return Err(ParseError {
                        line: self.line,
                        col,
                        message: format!("recurrence order must be 1..=3, got {order}"),
                    });
                }
                self.expect(Tok::Semi)?;
                let coeffs = self.int_list(Tok::Semi)?;
                let initials = self.int_list(Tok::RParen)?;
                if coeffs.len() != order as usize || initials.len() != order as usize {
                    return Err(ParseError {
                        line: self.line,
                        col,
                        message: format!(
                            "rec({order}; ...) needs {order} coefficients and {order} initial values"
                        ),
                    });
                }
                Ok(SequenceDef::recurrence(
                    bound_name,
                    coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
                    initials.iter().map(|&a| Scalar::from_int(a)).collect(),
                ))
            }
            "U" => {
                self.expect(Tok::LParen)?;
                let args = self.int_list(Tok::RParen)?;
                if args.len() != 3 {
                    return Err(ParseError {
                        line: self.line,
                        col,
                        message: String::from("U takes exactly three integers: U(r,s,t)"),
                    });
                }
                Ok(rename(SequenceDef::u_rst(args[0], args[1], args[2])))
            }
            "H" => {
                self.expect(Tok::LParen)?;
                let (key, kcol) = self.ident()?;
                if key != "k" {
                    return Err(ParseError {
                        line: self.line,
                        col: kcol,
                        message: format!("H takes k=<int>, found {key}"),
                    });
                }
                self.expect(Tok::Eq)?;
                let k = self.int_literal()?;
                self.expect(Tok::RParen)?;
                Ok(rename(SequenceDef::binomial_transform(k)))
            }
            name => builtin_by_name(name).map(rename).ok_or_else(|| ParseError {
                line: self.line,
                col,
                message: format!("unknown builtin sequence {name}"),
            }),
        }
    }
}

/// Parses the full `.idn` text: `params` and `bind` header lines followed by
/// one identity per line. `#` starts a comment anywhere.
pub fn parse_file(text: &str) -> Result<IdnFile, ParseError> {
    let mut params: Vec<String> = Vec::new();
    let mut bindings = Bindings::new();
    let mut statements: Vec<IdnStatement> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens = lex_line(line, raw)?;
        if tokens.len() == 1 {
            continue; // blank or comment-only line
        }
        let first = tokens[0].0.clone();
        let mut parser = LineParser {
            line,
            tokens,
            pos: 0,
            params: &params,
            bindings: &bindings,
        };
        match &first {
            Tok::Ident(word) if word == "params" => {
                if !statements.is_empty() {
                    return Err(parser.error(String::from(
                        "header lines must precede all statements",
                    )));
                }
                parser.bump();
                let mut names = Vec::new();
                loop {
                    let (name, col) = parser.ident()?;
                    if name == "x" {
                        return Err(ParseError {
                            line,
                            col,
                            message: String::from("x is reserved for the indeterminate"),
                        });
                    }
                    if params.contains(&name) || names.contains(&name) {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("duplicate parameter {name}"),
                        });
                    }
                    names.push(name);
                    if *parser.peek() == Tok::Semi {
                        parser.bump();
                        parser.expect(Tok::End)?;
                        break;
                    }
                }
                params.extend(names);
            }
            Tok::Ident(word) if word == "bind" => {
                if !statements.is_empty() {
                    return Err(parser.error(String::from(
                        "header lines must precede all statements",
                    )));
                }
                parser.bump();
                let (name, col) = parser.ident()?;
                if name == "x" || params.contains(&name) {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("binding name {name} collides with a parameter or x"),
                    });
                }
                parser.expect(Tok::Eq)?;
                let def = parser.binding_spec(&name)?;
                parser.expect(Tok::Semi)?;
                parser.expect(Tok::End)?;
                if !bindings.insert(&name, def) {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("sequence {name} bound twice"),
                    });
                }
            }
            _ => {
                let lhs = parser.expr()?;
                parser.expect(Tok::EqEq)?;
                let rhs = parser.expr()?;
                parser.expect(Tok::End)?;
                statements.push(IdnStatement {
                    line,
                    statement: IdentityStatement {
                        params: params.clone(),
                        bindings: bindings.clone(),
                        lhs,
                        rhs,
                    },
                });
            }
        }
    }

    Ok(IdnFile {
        params,
        bindings,
        statements,
    })
}

/// Parses text that must contain exactly one identity.
pub fn parse_single(text: &str) -> Result<IdentityStatement, ParseError> {
    let file = parse_file(text)?;
    match file.statements.len() {
        1 => Ok(file.statements.into_iter().next().expect("len 1").statement),
        n => Err(ParseError {
            line: 1,
            col: 1,
            message: format!("expected exactly one statement, found {n}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_classic_part_five() {
        let text = "params n m;\nbind F = F;\nF(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)\n";
        let file = parse_file(text).unwrap();
        assert_eq!(file.params, ["n", "m"]);
        assert_eq!(file.statements.len(), 1);
        let stmt = &file.statements[0].statement;
        let mut calls = 0;
        let mut count = |e: &ScalarExpr| {
            e.visit(&mut |n| {
                if matches!(n, ScalarExpr::Call(..)) {
                    calls += 1;
                }
            })
        };
        count(&stmt.lhs);
        count(&stmt.rhs);
        assert_eq!(calls, 5);
        assert_eq!(stmt.used_params(), ["n", "m"]);
    }

    #[test]
    fn syntax_error_carries_position() {
        let text = "params n;\nbind F = F;\nF(n == 1\n";
        let err = parse_file(text).unwrap_err();
        assert_eq!(err.line, 3);
        // the '==' shows up where ',' or ')' was required
        assert!(err.message.contains("=="), "{}", err.message);
    }

    #[test]
    fn two_argument_calls() {
        let text = "params n;\nbind H = H(k=1);\nH(n,1)^3 == H(n,1)*H(n,1)*H(n,1)\n";
        let file = parse_file(text).unwrap();
        let stmt = &file.statements[0].statement;
        assert!(matches!(
            &stmt.lhs,
            ScalarExpr::Pow(b, 3) if matches!(&**b, ScalarExpr::Call(name, args) if name == "H" && args.len() == 2)
        ));
    }

    #[test]
    fn unbound_and_undeclared_are_rejected() {
        let err = parse_file("params n;\nG(n) == 1\n").unwrap_err();
        assert!(err.message.contains("unbound sequence G"));
        let err = parse_file("params n;\nbind F = F;\nF(n) == m\n").unwrap_err();
        assert!(err.message.contains("undeclared parameter m"));
        let err = parse_file("params n;\nbind F = F;\nF(n,1) == 1\n").unwrap_err();
        assert!(err.message.contains("takes 1 index argument"));
    }

    #[test]
    fn rec_and_parameterized_bindings() {
        let text = "params n;\nbind G = rec(2; 1,3; 0,1);\nbind U = U(1,2,1);\nbind H = H(k=2);\nG(n)+U(n)+H(n,0) == G(n)+U(n)+H(n,0)\n";
        let file = parse_file(text).unwrap();
        assert_eq!(file.statements.len(), 1);
        let g = file.bindings.get("G").unwrap();
        assert_eq!(g.index_args(), 1);
        let h = file.bindings.get("H").unwrap();
        assert_eq!(h.index_args(), 2);
    }

    #[test]
    fn unary_minus_binds_tighter_than_caret() {
        let stmt = parse_single("params n;\nbind F = F;\n-F(n)^2 == 0\n").unwrap();
        assert!(matches!(
            &stmt.lhs,
            ScalarExpr::Pow(b, 2) if matches!(&**b, ScalarExpr::Neg(_))
        ));
    }

    #[test]
    fn quadratic_index_expressions() {
        let stmt = parse_single("params n;\nbind F = F;\nF(n^2+n-2) == F((n-1)*n+2*n-2)\n").unwrap();
        // both spellings reduce to the same polynomial
        match (&stmt.lhs, &stmt.rhs) {
            (ScalarExpr::Call(_, a), ScalarExpr::Call(_, b)) => assert_eq!(a, b),
            other => panic!("unexpected shapes {other:?}"),
        }
    }

    #[test]
    fn headers_after_statements_are_rejected() {
        let err = parse_file("params n;\nbind F = F;\nF(n) == F(n)\nbind L = L;\n").unwrap_err();
        assert!(err.message.contains("precede"));
    }

    #[test]
    fn x_usable_only_as_indeterminate() {
        let stmt = parse_single("params n;\nbind Fx = Fx;\nFx(n)*x == x*Fx(n)\n").unwrap();
        let mut saw_x = false;
        stmt.lhs.visit(&mut |e| saw_x |= matches!(e, ScalarExpr::X));
        assert!(saw_x);
        let err = parse_file("params n;\nbind F = F;\nF(x) == 1\n").unwrap_err();
        assert!(err.message.contains("x cannot appear in an index"));
    }
}
