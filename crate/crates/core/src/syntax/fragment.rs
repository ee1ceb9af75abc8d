use std::collections::BTreeSet;

use super::Formula;

/// A finite set of formulas closed under immediate subformulas and
/// containing `Bot`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fragment {
    formulas: Vec<Formula>,
}

fn close(p: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(p.clone()) {
        return;
    }
    if let Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) = p {
        close(a, out);
        close(b, out);
    }
}

impl Fragment {
    /// Least fragment containing every given formula.
    pub fn closure_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Fragment {
        let mut set = BTreeSet::new();
        set.insert(Formula::Bot);
        for p in formulas {
            close(p, &mut set);
        }
        Fragment { formulas: set.into_iter().collect() }
    }

    /// Wraps an explicit set, returning `None` unless it is subformula closed
    /// and contains `Bot`.
    pub fn from_set(set: BTreeSet<Formula>) -> Option<Fragment> {
        let fragment = Fragment { formulas: set.into_iter().collect() };
        fragment.is_well_formed().then_some(fragment)
    }

    pub fn is_well_formed(&self) -> bool {
        self.contains(&Formula::Bot)
            && self.formulas.iter().all(|p| match p {
                Formula::Impl(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    self.contains(a) && self.contains(b)
                }
                _ => true,
            })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, p: &Formula) -> bool {
        self.formulas.binary_search(p).is_ok()
    }

    /// Position of `p` in the fragment's sorted order.
    pub fn index_of(&self, p: &Formula) -> Option<usize> {
        self.formulas.binary_search(p).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.formulas
    }
}

impl<'a> IntoIterator for &'a Fragment {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

/// The least subformula-closed set containing `p` and `Bot`.
pub fn subformulas(p: &Formula) -> Fragment {
    Fragment::closure_of(std::iter::once(p))
}

pub fn subformulas_of_all<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Fragment {
    Fragment::closure_of(formulas)
}
