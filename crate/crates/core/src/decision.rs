//! Derivability oracle.
//!
//! Decides `Γ ⊢ p` with Dyckhoff's contraction-free sequent calculus G4ip and
//! reconstructs a finite Kripke countermodel whenever the search fails.
//!
//! Search order is fixed. A sequent is first saturated with the invertible
//! left rules (`∧L`, `⊥→L`, `p→L`, `∧→L`, `∨→L`), in the order of the
//! antecedent's sorted formulas, then `→R` and `∧R` are applied, then `∨L`
//! on the first disjunction. What remains is an irreducible sequent whose
//! antecedent holds atoms, `p → C` with `p` absent, and `(A → B) → C`, and
//! whose succedent is an atom, `⊥` or a disjunction. For those, each
//! `(A → B) → C` is tried in order: if `A, B → C, Γ' ⊢ B` the sequent reduces
//! to `C, Γ' ⊢ D`; otherwise the failed premise contributes a child world.
//! Finally `∨R` tries the left disjunct, then the right. If nothing
//! succeeds, the countermodel root makes exactly the antecedent's atoms true
//! and sees the roots of all failed premises, except those for atomic or
//! falsum disjuncts, which the root refutes on its own.
//!
//! Countermodels for identical sequents are shared, so the result is a DAG
//! whose reflexive-transitive closure is the accessibility relation.

use std::collections::{BTreeSet, HashMap};

use crate::proof::Context;
use crate::semantics::{KripkeModel, World};
use crate::syntax::{Atom, Formula};

/// Default limit on the number of sequents visited by one query.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionResult {
    Provable,
    /// A model and world forcing the context but not the formula.
    Refuted(KripkeModel, World),
}

impl DecisionResult {
    pub fn is_provable(&self) -> bool {
        matches!(self, DecisionResult::Provable)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DecisionError {
    #[error("proof search exceeded its budget of {0} sequents")]
    Budget(u64),
}

/// Derivability oracle with a configurable step budget.
#[derive(Debug, Clone, Copy)]
pub struct Prover {
    budget: u64,
}

impl Default for Prover {
    fn default() -> Self {
        Prover { budget: DEFAULT_BUDGET }
    }
}

type NodeId = usize;

struct Node {
    atoms: BTreeSet<Atom>,
    children: Vec<NodeId>,
}

struct Search {
    steps: u64,
    budget: u64,
    memo: HashMap<(BTreeSet<Formula>, Formula), Option<NodeId>>,
    nodes: Vec<Node>,
}

type Outcome = Result<Option<NodeId>, DecisionError>;

impl Search {
    fn new(budget: u64) -> Search {
        Search { steps: 0, budget, memo: HashMap::new(), nodes: Vec::new() }
    }

    /// `None` means provable; `Some(n)` is the root of a countermodel.
    fn prove(&mut self, gamma: BTreeSet<Formula>, goal: Formula) -> Outcome {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(DecisionError::Budget(self.budget));
        }
        let key = (gamma, goal);
        if let Some(&cached) = self.memo.get(&key) {
            return Ok(cached);
        }
        let (gamma, goal) = key.clone();
        let out = self.prove_fresh(gamma, goal)?;
        self.memo.insert(key, out);
        Ok(out)
    }

    fn prove_fresh(&mut self, mut gamma: BTreeSet<Formula>, goal: Formula) -> Outcome {
        saturate(&mut gamma);
        if gamma.contains(&Formula::Bot) || gamma.contains(&goal) {
            return Ok(None);
        }
        match &goal {
            Formula::And(a, b) => {
                if let Some(cm) = self.prove(gamma.clone(), (**a).clone())? {
                    return Ok(Some(cm));
                }
                return self.prove(gamma, (**b).clone());
            }
            Formula::Impl(a, b) => {
                gamma.insert((**a).clone());
                return self.prove(gamma, (**b).clone());
            }
            _ => {}
        }
        if let Some(disj) = gamma.iter().find(|p| matches!(p, Formula::Or(..))).cloned() {
            let Formula::Or(a, b) = &disj else { unreachable!() };
            gamma.remove(&disj);
            let mut left = gamma.clone();
            left.insert((**a).clone());
            if let Some(cm) = self.prove(left, goal.clone())? {
                return Ok(Some(cm));
            }
            gamma.insert((**b).clone());
            return self.prove(gamma, goal);
        }

        // Irreducible sequent.
        let mut children = Vec::new();
        let nested: Vec<Formula> = gamma
            .iter()
            .filter(|p| matches!(p, Formula::Impl(a, _) if matches!(**a, Formula::Impl(..))))
            .cloned()
            .collect();
        for imp in nested {
            let Formula::Impl(ab, c) = &imp else { unreachable!() };
            let Formula::Impl(a, b) = ab.as_ref() else { unreachable!() };
            let mut rest = gamma.clone();
            rest.remove(&imp);
            let mut premise = rest.clone();
            premise.insert(Formula::Impl(b.clone(), c.clone()));
            premise.insert((**a).clone());
            match self.prove(premise, (**b).clone())? {
                None => {
                    rest.insert((**c).clone());
                    return self.prove(rest, goal);
                }
                Some(cm) => children.push(cm),
            }
        }
        if let Formula::Or(a, b) = &goal {
            for disjunct in [a, b] {
                match self.prove(gamma.clone(), (**disjunct).clone())? {
                    None => return Ok(None),
                    // The root already refutes atoms and falsum by itself.
                    Some(_) if matches!(**disjunct, Formula::Atom(_) | Formula::Bot) => {}
                    Some(cm) => children.push(cm),
                }
            }
        }
        let atoms = gamma.iter().filter_map(|p| if let Formula::Atom(i) = p { Some(*i) } else { None }).collect();
        children.sort_unstable();
        children.dedup();
        self.nodes.push(Node { atoms, children });
        Ok(Some(self.nodes.len() - 1))
    }

    fn model(&self, root: NodeId) -> (KripkeModel, World) {
        // Number reachable nodes in DFS preorder from the root.
        let mut order = Vec::new();
        let mut id: HashMap<NodeId, World> = HashMap::new();
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            if id.contains_key(&n) {
                continue;
            }
            id.insert(n, order.len() as World);
            order.push(n);
            stack.extend(self.nodes[n].children.iter().rev());
        }
        let mut rel = Vec::new();
        for &n in &order {
            let mut seen = BTreeSet::new();
            let mut stack = vec![n];
            while let Some(m) = stack.pop() {
                if seen.insert(m) {
                    stack.extend(self.nodes[m].children.iter().copied());
                }
            }
            rel.extend(seen.into_iter().map(|m| (id[&n], id[&m])));
        }
        let mut val = Vec::new();
        for &n in &order {
            val.extend(self.nodes[n].atoms.iter().map(|&a| (a, id[&n])));
        }
        let model = KripkeModel::new(0..order.len() as World, rel, val).expect("ids in range");
        (model, 0)
    }
}

/// Applies the invertible, non-branching left rules until none applies.
fn saturate(gamma: &mut BTreeSet<Formula>) {
    loop {
        let step = gamma.iter().find_map(|p| {
            let replacement: Vec<Formula> = match p {
                Formula::And(a, b) => vec![(**a).clone(), (**b).clone()],
                Formula::Impl(a, c) => match a.as_ref() {
                    Formula::Bot => vec![],
                    Formula::Atom(_) if gamma.contains(a) => vec![(**c).clone()],
                    Formula::And(x, y) => vec![Formula::implies((**x).clone(), Formula::Impl(y.clone(), c.clone()))],
                    Formula::Or(x, y) => vec![Formula::Impl(x.clone(), c.clone()), Formula::Impl(y.clone(), c.clone())],
                    _ => return None,
                },
                _ => return None,
            };
            Some((p.clone(), replacement))
        });
        match step {
            Some((old, new)) => {
                gamma.remove(&old);
                gamma.extend(new);
            }
            None => return,
        }
    }
}

impl Prover {
    pub fn new(budget: u64) -> Prover {
        Prover { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn derivable_from<'a>(
        &self,
        ctx: impl IntoIterator<Item = &'a Formula>,
        p: &Formula,
    ) -> Result<DecisionResult, DecisionError> {
        let mut search = Search::new(self.budget);
        match search.prove(ctx.into_iter().cloned().collect(), p.clone())? {
            None => Ok(DecisionResult::Provable),
            Some(root) => {
                let (model, world) = search.model(root);
                Ok(DecisionResult::Refuted(model, world))
            }
        }
    }

    pub fn derivable(&self, ctx: &Context, p: &Formula) -> Result<DecisionResult, DecisionError> {
        self.derivable_from(ctx.iter(), p)
    }

    /// Verdict only.
    pub fn proves<'a>(&self, ctx: impl IntoIterator<Item = &'a Formula>, p: &Formula) -> Result<bool, DecisionError> {
        Ok(self.derivable_from(ctx, p)?.is_provable())
    }

    pub fn consistent(&self, ctx: &Context) -> Result<bool, DecisionError> {
        Ok(!self.proves(ctx.iter(), &Formula::Bot)?)
    }
}

/// `Γ ⊢ p` with the default budget.
pub fn derivable(ctx: &Context, p: &Formula) -> Result<DecisionResult, DecisionError> {
    Prover::default().derivable(ctx, p)
}

/// `Γ ⊬ ⊥` with the default budget.
pub fn consistent(ctx: &Context) -> Result<bool, DecisionError> {
    Prover::default().consistent(ctx)
}
