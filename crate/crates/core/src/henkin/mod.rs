//! Henkin-style completeness, made executable.
//!
//! Two finitisations of the prime-theory construction live here:
//!
//! * [`Henkin::prime_up_to`] runs the `insert_form` / `insert_code` /
//!   `insertn` / `primen` tower over the whole language, enumerated by Gödel
//!   code, truncated to a number of stages and a code bound. Every stage
//!   re-treats every disjunction below the bound.
//! * [`Henkin::build_canonical`] and [`Henkin::countermodel`] work inside a
//!   finite subformula-closed [`Fragment`]: worlds are the consistent subsets
//!   of the fragment that are closed under derivability within it and contain
//!   a disjunct of each member disjunction, ordered by inclusion.
//!
//! All derivability questions go to the [`Prover`].

mod canonical;
mod prime;

use std::collections::BTreeSet;
use std::fmt;

use crate::decision::{DecisionError, Prover};
use crate::proof::Context;
use crate::syntax::{Formula, Fragment};

pub use canonical::{CanonicalModel, Direction, TruthLemmaViolation};
pub use prime::{code_bound_covering, PrimeTrace, TraceStep};

/// Largest fragment accepted by the canonical-model operations by default.
pub const DEFAULT_MAX_FRAGMENT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HenkinError {
    #[error(transparent)]
    Decision(#[from] DecisionError),
    #[error("the theory already derives {0}")]
    AlreadyDerives(Formula),
    #[error("fragment has {size} formulas, more than the bound of {bound}")]
    FragmentTooLarge { size: usize, bound: usize },
    #[error("countermodel verification failed: {0}")]
    Verification(String),
}

/// A set of formulas together with the formula it is meant to avoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub formulas: Context,
    pub goal: Formula,
}

impl Theory {
    pub fn new(formulas: Context, goal: Formula) -> Theory {
        Theory { formulas, goal }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} avoiding {}", self.formulas, self.goal)
    }
}

/// The three prime-theory predicates evaluated for a theory, relative to a
/// fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTheoryCert {
    pub theory: Theory,
    pub fragment: Fragment,
    pub closed: bool,
    pub disj: bool,
    pub consistent: bool,
}

impl PrimeTheoryCert {
    pub fn is_prime(&self) -> bool {
        self.closed && self.disj && self.consistent
    }
}

/// Every disjunction in `t` has a disjunct in `t`.
pub fn has_disj(t: &Context) -> bool {
    t.iter().all(|p| match p {
        Formula::Or(a, b) => t.contains(a) || t.contains(b),
        _ => true,
    })
}

/// [`has_disj`] restricted to the disjunctions of `f`.
pub fn has_disj_in(t: &Context, f: &Fragment) -> bool {
    f.iter().all(|p| match p {
        Formula::Or(a, b) if t.contains(p) => t.contains(a) || t.contains(b),
        _ => true,
    })
}

/// Entry point for the Henkin operations, parameterised by the derivability
/// oracle and the fragment size bound.
#[derive(Debug, Clone, Copy)]
pub struct Henkin {
    prover: Prover,
    max_fragment: usize,
}

impl Default for Henkin {
    fn default() -> Self {
        Henkin { prover: Prover::default(), max_fragment: DEFAULT_MAX_FRAGMENT }
    }
}

impl Henkin {
    pub fn new(prover: Prover, max_fragment: usize) -> Henkin {
        Henkin { prover, max_fragment }
    }

    pub fn prover(&self) -> &Prover {
        &self.prover
    }

    pub fn max_fragment(&self) -> usize {
        self.max_fragment
    }

    /// Closure within `f`: every fragment formula `t` derives is in `t`.
    pub fn is_closed(&self, t: &Context, f: &Fragment) -> Result<bool, HenkinError> {
        for q in f {
            if !t.contains(q) && self.prover.proves(t.iter(), q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn certify(&self, theory: &Theory, f: &Fragment) -> Result<PrimeTheoryCert, HenkinError> {
        Ok(PrimeTheoryCert {
            closed: self.is_closed(&theory.formulas, f)?,
            disj: has_disj_in(&theory.formulas, f),
            consistent: self.prover.consistent(&theory.formulas)?,
            theory: theory.clone(),
            fragment: f.clone(),
        })
    }

    /// `{q ∈ f : t ⊢ q}` together with `t` itself.
    pub fn closure_in(&self, t: &BTreeSet<Formula>, f: &Fragment) -> Result<BTreeSet<Formula>, HenkinError> {
        let mut out = t.clone();
        for q in f {
            if !t.contains(q) && self.prover.proves(t.iter(), q)? {
                out.insert(q.clone());
            }
        }
        Ok(out)
    }
}
