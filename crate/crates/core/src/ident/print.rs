use alloc::string::String;

use super::ast::{IdentityStatement, ScalarExpr};

/// Binding strength used for minimal parenthesization. Matches the parser:
/// `==` < `+`/`-` < `*` < `^` < unary `-` < atoms.
fn level(expr: &ScalarExpr) -> u8 {
    match expr {
        ScalarExpr::Add(..) | ScalarExpr::Sub(..) => 1,
        ScalarExpr::Mul(..) => 2,
        ScalarExpr::Pow(..) => 3,
        ScalarExpr::Neg(..) => 4,
        _ => 5,
    }
}

fn write_expr(out: &mut String, expr: &ScalarExpr, min_level: u8) {
    let lvl = level(expr);
    let parens = lvl < min_level;
    if parens {
        out.push('(');
    }
    match expr {
        ScalarExpr::Int(v) => {
            out.push_str(&alloc::format!("{v}"));
        }
        ScalarExpr::Param(p) => out.push_str(p),
        ScalarExpr::X => out.push('x'),
        ScalarExpr::Call(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&alloc::format!("{arg}"));
            }
            out.push(')');
        }
        ScalarExpr::Neg(inner) => {
            out.push('-');
            // only atoms may follow bare: -a^2 would re-parse as (-a)^2
            write_expr(out, inner, 5);
        }
        ScalarExpr::Add(l, r) => {
            write_expr(out, l, 1);
            out.push('+');
            // right side needs parens for +,- (left associativity) and for
            // a leading unary minus (avoids the unreadable `a+-b`)
            let need = if matches!(**r, ScalarExpr::Neg(_)) { 5 } else { 2 };
            write_expr(out, r, need);
        }
        ScalarExpr::Sub(l, r) => {
            write_expr(out, l, 1);
            out.push('-');
            let need = if matches!(**r, ScalarExpr::Neg(_)) { 5 } else { 2 };
            write_expr(out, r, need);
        }
        ScalarExpr::Mul(l, r) => {
            write_expr(out, l, 2);
            out.push('*');
            write_expr(out, r, 3);
        }
        ScalarExpr::Pow(base, exp) => {
            // unary minus binds tighter than ^, so a bare Neg base is exact
            write_expr(out, base, 4);
            out.push('^');
            out.push_str(&alloc::format!("{exp}"));
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders one expression in canonical form (after the no-op
/// normalizations of [`ScalarExpr::canonicalize`]).
pub fn print_expr(expr: &ScalarExpr) -> String {
    let canonical = expr.canonicalize();
    let mut out = String::new();
    write_expr(&mut out, &canonical, 0);
    out
}

/// Renders `lhs == rhs`. Deterministic; `parse(print_canonical(s))` is
/// structurally equal to `s` up to the no-op normalizations.
pub fn print_canonical(stmt: &IdentityStatement) -> String {
    let mut out = print_expr(&stmt.lhs);
    out.push_str(" == ");
    out.push_str(&print_expr(&stmt.rhs));
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_single;
    use super::*;
    use alloc::format;

    fn roundtrip(stmt_text: &str) -> String {
        let text = format!("params n m l;\nbind F = F;\nbind L = L;\nbind H = H(k=1);\n{stmt_text}\n");
        let stmt = parse_single(&text).unwrap();
        print_canonical(&stmt)
    }

    #[test]
    fn classic_part_five_prints_back() {
        assert_eq!(
            roundtrip("F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)"),
            "F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)"
        );
    }

    #[test]
    fn double_negation_collapses() {
        assert_eq!(roundtrip("-(-F(n)) == F(n)"), "F(n) == F(n)");
    }

    #[test]
    fn reparse_gives_same_ast() {
        let samples = [
            "F(m)*F(n)+F(m+1)*F(n+1) == F(m+n+1)",
            "5*F(n)^2+L(n)^2 == 2*L(2*n)",
            "F(n)-(-F(m)) == F(n)+F(m)",
            "-(F(n)^2) == -(F(n)*F(n))",
            "H(n,1)*(H(m,1)*H(n,1)-H(m+n,1)) == H(n,0)*H(m+n,0)",
            "(F(n)+F(m))*(F(n)-F(m)) == F(n)^2-F(m)^2",
            "x*F(n)+2 == F(n)*x+2",
        ];
        for s in samples {
            let header = "params n m l;\nbind F = F;\nbind L = L;\nbind H = H(k=1);\n";
            let stmt = parse_single(&format!("{header}{s}\n")).unwrap();
            let printed = print_canonical(&stmt);
            let reparsed = parse_single(&format!("{header}{printed}\n")).unwrap();
            assert_eq!(
                reparsed.lhs.canonicalize(),
                stmt.lhs.canonicalize(),
                "{s} -> {printed}"
            );
            assert_eq!(reparsed.rhs.canonicalize(), stmt.rhs.canonicalize());
        }
    }

    #[test]
    fn associativity_parens_preserved() {
        // a-(b-c) must keep its parens
        assert_eq!(
            roundtrip("F(n)-(F(m)-F(l)) == F(n)"),
            "F(n)-(F(m)-F(l)) == F(n)"
        );
        assert_eq!(
            roundtrip("F(n)*(F(m)*F(l)) == F(n)"),
            "F(n)*(F(m)*F(l)) == F(n)"
        );
    }
}
