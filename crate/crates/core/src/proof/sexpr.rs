//! Proof files.
//!
//! A derivation is written as an s-expression whose head is the rule name and
//! whose arguments are either sub-derivations (for `mp`) or quoted formulas:
//!
//! ```text
//! (mp (mp (s "p0" "p0 -> p0" "p0") (k "p0" "p0 -> p0")) (k "p0" "p0"))
//! ```
//!
//! `;` starts a comment that runs to the end of the line.

use super::Derivation;
use crate::syntax::{parse, print, Formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SexprError {
    #[error("proof syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("bad formula in proof at byte {offset}: {source}")]
    Formula { offset: usize, source: ParseError },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Sym(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SexprError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                out.push((Tok::Open, pos));
            }
            ')' => {
                chars.next();
                out.push((Tok::Close, pos));
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match chars.next() {
                            Some((_, e)) => s.push(e),
                            None => break,
                        },
                        Some((_, c)) => s.push(c),
                        None => {
                            return Err(SexprError::Syntax { offset: pos, message: "unterminated string".into() })
                        }
                    }
                }
                // Offset of the string contents, for formula error reporting.
                out.push((Tok::Str(s), pos + 1));
            }
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((Tok::Sym(s), pos));
            }
        }
    }
    Ok(out)
}

struct Reader {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Reader {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SexprError> {
        Err(SexprError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn formula(&mut self) -> Result<Formula, SexprError> {
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Str(s), offset)) => {
                self.pos += 1;
                parse(&s).map_err(|source| SexprError::Formula { offset: offset + source.offset, source })
            }
            _ => self.err("expected a quoted formula"),
        }
    }

    fn derivation(&mut self) -> Result<Derivation, SexprError> {
        if self.toks.get(self.pos).map(|t| &t.0) != Some(&Tok::Open) {
            return self.err("expected \"(\"");
        }
        self.pos += 1;
        let head = match self.toks.get(self.pos).cloned() {
            Some((Tok::Sym(s), _)) => s,
            _ => return self.err("expected a rule name"),
        };
        let head_offset = self.offset();
        self.pos += 1;
        let d = match head.as_str() {
            "mp" => {
                let major = self.derivation()?;
                let minor = self.derivation()?;
                Derivation::mp(major, minor)
            }
            "ax" => Derivation::Ax(self.formula()?),
            "exf" => Derivation::Exf(self.formula()?),
            "k" | "pr1" | "pr2" | "pair" | "inr" | "inl" => {
                let p = self.formula()?;
                let q = self.formula()?;
                match head.as_str() {
                    "k" => Derivation::K(p, q),
                    "pr1" => Derivation::Pr1(p, q),
                    "pr2" => Derivation::Pr2(p, q),
                    "pair" => Derivation::Pair(p, q),
                    "inr" => Derivation::Inr(p, q),
                    _ => Derivation::Inl(p, q),
                }
            }
            "s" | "case" => {
                let p = self.formula()?;
                let q = self.formula()?;
                let r = self.formula()?;
                if head == "s" {
                    Derivation::S(p, q, r)
                } else {
                    Derivation::Case(p, q, r)
                }
            }
            other => {
                return Err(SexprError::Syntax { offset: head_offset, message: format!("unknown rule {other:?}") })
            }
        };
        if self.toks.get(self.pos).map(|t| &t.0) != Some(&Tok::Close) {
            return self.err(format!("expected \")\" closing {head}"));
        }
        self.pos += 1;
        Ok(d)
    }
}

pub fn parse_derivation(text: &str) -> Result<Derivation, SexprError> {
    let mut reader = Reader { toks: lex(text)?, pos: 0, end: text.len() };
    let d = reader.derivation()?;
    if reader.pos != reader.toks.len() {
        return reader.err("trailing input after derivation");
    }
    Ok(d)
}

fn quote(p: &Formula) -> String {
    format!("\"{}\"", print(p))
}

pub fn print_derivation(d: &Derivation) -> String {
    use Derivation::*;
    let args = match d {
        Mp(a, b) => format!("{} {}", print_derivation(a), print_derivation(b)),
        Ax(p) | Exf(p) => quote(p),
        K(p, q) | Pr1(p, q) | Pr2(p, q) | Pair(p, q) | Inr(p, q) | Inl(p, q) => format!("{} {}", quote(p), quote(q)),
        S(p, q, r) | Case(p, q, r) => format!("{} {} {}", quote(p), quote(q), quote(r)),
    };
    format!("({} {})", d.rule_name(), args)
}
