use super::Formula;

struct Symbols {
    impl_: &'static str,
    or: &'static str,
    and: &'static str,
    neg: &'static str,
    bot: &'static str,
}

const ASCII: Symbols = Symbols { impl_: " -> ", or: " | ", and: " & ", neg: "~", bot: "false" };
const SYMBOLIC: Symbols = Symbols { impl_: " ⊃ ", or: " ∨ ", and: " & ", neg: "~", bot: "⊥" };

// Binding strength: -> 1, | 2, & 3, ~ and atoms 4.
fn level(p: &Formula) -> u8 {
    match p {
        Formula::Atom(_) | Formula::Bot => 4,
        Formula::Impl(_, q) if **q == Formula::Bot => 4,
        Formula::Impl(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
    }
}

fn write(p: &Formula, min: u8, sym: &Symbols, out: &mut String) {
    let parens = level(p) < min;
    if parens {
        out.push('(');
    }
    match p {
        Formula::Atom(i) => {
            out.push('p');
            out.push_str(&i.to_string());
        }
        Formula::Bot => out.push_str(sym.bot),
        Formula::Impl(a, b) if **b == Formula::Bot => {
            out.push_str(sym.neg);
            write(a, 4, sym, out);
        }
        Formula::Impl(a, b) => {
            write(a, 2, sym, out);
            out.push_str(sym.impl_);
            write(b, 1, sym, out);
        }
        Formula::Or(a, b) => {
            write(a, 2, sym, out);
            out.push_str(sym.or);
            write(b, 3, sym, out);
        }
        Formula::And(a, b) => {
            write(a, 3, sym, out);
            out.push_str(sym.and);
            write(b, 4, sym, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Canonical ASCII rendering with the fewest parentheses the grammar needs.
/// `p -> false` is always rendered as `~p`.
pub fn print(p: &Formula) -> String {
    let mut out = String::new();
    write(p, 1, &ASCII, &mut out);
    out
}

/// Rendering in the logician's notation (`⊃`, `∨`, `&`, `~`, `⊥`). Parses back
/// to the same formula.
pub fn print_symbolic(p: &Formula) -> String {
    let mut out = String::new();
    write(p, 1, &SYMBOLIC, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn a(i: u64) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn golden_renderings() {
        assert_eq!(print(&a(3)), "p3");
        assert_eq!(print(&Formula::implies(a(0), Formula::Bot)), "~p0");
        assert_eq!(print(&Formula::or(a(0), Formula::neg(a(0)))), "p0 | ~p0");
        assert_eq!(print(&Formula::Bot), "false");
        assert_eq!(print(&Formula::implies(Formula::implies(a(0), a(1)), a(0))), "(p0 -> p1) -> p0");
        assert_eq!(print(&Formula::implies(a(0), Formula::implies(a(1), a(0)))), "p0 -> p1 -> p0");
        assert_eq!(print(&Formula::or(a(0), Formula::or(a(1), a(2)))), "p0 | (p1 | p2)");
        assert_eq!(print(&Formula::neg(Formula::and(a(0), a(1)))), "~(p0 & p1)");
        assert_eq!(print(&Formula::neg(Formula::neg(a(0)))), "~~p0");
    }

    #[test]
    fn symbolic_rendering_parses_back() {
        let p = parse("~~(p0 | ~p0) -> p1 & false").unwrap();
        assert_eq!(print_symbolic(&p), "~~(p0 ∨ ~p0) ⊃ p1 & ⊥");
        assert_eq!(parse(&print_symbolic(&p)).unwrap(), p);
    }
}
