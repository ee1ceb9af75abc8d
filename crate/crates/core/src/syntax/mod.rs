//! Formulas of intuitionistic propositional logic.
//!
//! The language has countably many atoms `p0, p1, ...`, falsum and the three
//! binary connectives. Negation is not a node kind: `~p` is sugar for
//! `p -> false` and is only recognised by the parser and the printer.

mod coding;
mod fragment;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use coding::{decode, decode_u64, encode, pair, unpair};
pub use fragment::{subformulas, subformulas_of_all, Fragment};
pub use parse::{parse, ParseError};
pub use print::{print, print_symbolic};

/// Index of a propositional letter.
pub type Atom = u64;

/// A formula. Children are reference counted so cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Bot,
    Impl(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(i: Atom) -> Formula {
        Formula::Atom(i)
    }

    pub fn bot() -> Formula {
        Formula::Bot
    }

    pub fn implies(p: Formula, q: Formula) -> Formula {
        Formula::Impl(Arc::new(p), Arc::new(q))
    }

    pub fn and(p: Formula, q: Formula) -> Formula {
        Formula::And(Arc::new(p), Arc::new(q))
    }

    pub fn or(p: Formula, q: Formula) -> Formula {
        Formula::Or(Arc::new(p), Arc::new(q))
    }

    /// `~p`, i.e. `p -> false`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(p: Formula) -> Formula {
        Formula::implies(p, Formula::Bot)
    }

    /// Returns `Some(p)` when `self` is `p -> false`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Impl(p, q) if **q == Formula::Bot => Some(p),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 1,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 0,
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Atom indices occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::Bot => {}
            Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(i) => write!(f, "Atom({i})"),
            Formula::Bot => f.write_str("Bot"),
            Formula::Impl(a, b) => write!(f, "Impl({a:?}, {b:?})"),
            Formula::And(a, b) => write!(f, "And({a:?}, {b:?})"),
            Formula::Or(a, b) => write!(f, "Or({a:?}, {b:?})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Atoms occurring in any of the given formulas.
pub fn atoms_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for p in formulas {
        p.collect_atoms(&mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_is_sugar_for_implication_to_bot() {
        let p = Formula::neg(Formula::atom(0));
        assert_eq!(p, Formula::implies(Formula::atom(0), Formula::Bot));
        assert_eq!(p.as_neg(), Some(&Formula::atom(0)));
    }

    #[test]
    fn size_and_atoms() {
        let p = Formula::or(Formula::atom(0), Formula::neg(Formula::atom(2)));
        assert_eq!(p.size(), 5);
        assert_eq!(p.depth(), 2);
        assert_eq!(p.atoms().into_iter().collect::<Vec<_>>(), vec![0, 2]);
    }
}
