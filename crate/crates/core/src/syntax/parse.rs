use std::fmt;

use super::Formula;

/// Syntax error with the byte offset of the offending token and the set of
/// tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected one of {{{}}}, found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(u64),
    False,
    Neg,
    And,
    Or,
    Impl,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(i) => format!("atom p{i}"),
            Tok::False => "\"false\"".into(),
            Tok::Neg => "\"~\"".into(),
            Tok::And => "\"&\"".into(),
            Tok::Or => "\"|\"".into(),
            Tok::Impl => "\"->\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["atom", "\"false\"", "\"~\"", "\"(\""];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '~' | '¬' => Some(Tok::Neg),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '⊃' => Some(Tok::Impl),
            '⊥' => Some(Tok::False),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push((tok, pos));
            continue;
        }
        match c {
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        out.push((Tok::Impl, pos));
                    }
                    _ => {
                        return Err(ParseError {
                            offset: pos,
                            expected: vec!["\"->\""],
                            found: "\"-\"".into(),
                        })
                    }
                }
            }
            'p' => {
                chars.next();
                let start = pos + 1;
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = i + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                if end == start {
                    return Err(ParseError {
                        offset: start,
                        expected: vec!["digit"],
                        found: found_at(text, start),
                    });
                }
                let index = text[start..end].parse::<u64>().map_err(|_| ParseError {
                    offset: pos,
                    expected: vec!["atom index fitting in 64 bits"],
                    found: format!("p{}", &text[start..end]),
                })?;
                out.push((Tok::Atom(index), pos));
            }
            'f' if text[pos..].starts_with("false") => {
                for _ in 0.."false".len() {
                    chars.next();
                }
                out.push((Tok::False, pos));
            }
            _ => {
                return Err(ParseError {
                    offset: pos,
                    expected: vec!["atom", "\"false\"", "\"~\"", "\"&\"", "\"|\"", "\"->\"", "\"(\"", "\")\""],
                    found: format!("{c:?}"),
                })
            }
        }
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn found_at(text: &str, offset: usize) -> String {
    match text[offset..].chars().next() {
        Some(c) => format!("{c:?}"),
        None => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (tok, offset) = &self.toks[self.pos];
        ParseError { offset: *offset, expected: expected.to_vec(), found: tok.describe() }
    }

    // impl := or ("->" impl)?
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Impl {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    // or := and ("|" and)*
    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    // and := neg ("&" neg)*
    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.negation()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.negation()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // neg := "~" neg | atom
    fn negation(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Neg {
            self.bump();
            return Ok(Formula::neg(self.negation()?));
        }
        self.primary()
    }

    // atom := "p" digits | "false" | "(" formula ")"
    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Atom(i) => {
                self.bump();
                Ok(Formula::Atom(i))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["\"->\"", "\"|\"", "\"&\"", "\")\""]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses a formula. Whitespace is insignificant; the Unicode connectives
/// `⊃ ∨ ∧ ⊥ ¬` are accepted as aliases of `-> | & false ~`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let formula = parser.implication()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(&["\"->\"", "\"|\"", "\"&\"", "end of input"]));
    }
    Ok(formula)
}
