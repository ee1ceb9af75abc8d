use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use super::{Henkin, HenkinError};
use crate::decision::{DecisionResult, Prover};
use crate::proof::Context;
use crate::semantics::{KripkeModel, World};
use crate::syntax::{encode, Formula, Fragment};

/// Which half of the truth lemma failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ForcedNotMember,
    MemberNotForced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthLemmaViolation {
    pub world: World,
    pub formula: Formula,
    pub direction: Direction,
}

impl fmt::Display for TruthLemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::ForcedNotMember => write!(f, "world {} forces {} but does not contain it", self.world, self.formula),
            Direction::MemberNotForced => write!(f, "world {} contains {} but does not force it", self.world, self.formula),
        }
    }
}

/// Canonical model of a fragment. World `i` is labelled by `labels[i]`;
/// worlds are numbered by label size, then by fragment-index bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalModel {
    pub fragment: Fragment,
    pub model: KripkeModel,
    pub labels: Vec<BTreeSet<Formula>>,
}

impl CanonicalModel {
    pub fn world_of(&self, label: &BTreeSet<Formula>) -> Option<World> {
        self.labels.iter().position(|l| l == label).map(|i| i as World)
    }

    pub fn label(&self, w: World) -> Option<&BTreeSet<Formula>> {
        self.labels.get(w as usize)
    }
}

/// Closure within a fragment over bitmasks of fragment indices. Worlds of
/// every countermodel seen are kept as forced sets; those are closed, so they
/// bound the closure of anything they contain.
struct Closer<'a> {
    prover: &'a Prover,
    formulas: &'a [Formula],
    index: HashMap<&'a Formula, usize>,
    pool: Vec<u64>,
    memo: HashMap<u64, u64>,
}

fn bit(i: usize) -> u64 {
    1 << i
}

impl<'a> Closer<'a> {
    fn new(prover: &'a Prover, fragment: &'a Fragment) -> Closer<'a> {
        let formulas = fragment.as_slice();
        let index = formulas.iter().enumerate().map(|(i, p)| (p, i)).collect();
        Closer { prover, formulas, index, pool: Vec::new(), memo: HashMap::new() }
    }

    fn full(&self) -> u64 {
        if self.formulas.len() == 64 { u64::MAX } else { bit(self.formulas.len()) - 1 }
    }

    fn mask_of<'b>(&self, set: impl IntoIterator<Item = &'b Formula>) -> u64 {
        set.into_iter().filter_map(|p| self.index.get(p)).fold(0, |m, &i| m | bit(i))
    }

    fn set_of(&self, mask: u64) -> BTreeSet<Formula> {
        self.members(mask).map(|i| self.formulas[i].clone()).collect()
    }

    fn members(&self, mask: u64) -> impl Iterator<Item = usize> {
        (0..self.formulas.len()).filter(move |&i| mask & bit(i) != 0)
    }

    fn has(&self, mask: u64, p: &Formula) -> bool {
        self.index.get(p).is_some_and(|&i| mask & bit(i) != 0)
    }

    fn bot(&self) -> u64 {
        bit(self.index[&Formula::Bot])
    }

    // Sound one-step consequences, iterated to a fixpoint.
    fn cheap(&self, mut s: u64) -> u64 {
        loop {
            let before = s;
            for (i, q) in self.formulas.iter().enumerate() {
                if s & bit(i) != 0 {
                    continue;
                }
                let hit = s & self.bot() != 0
                    || match q {
                        Formula::And(a, b) => self.has(s, a) && self.has(s, b),
                        Formula::Or(a, b) => self.has(s, a) || self.has(s, b),
                        Formula::Impl(_, b) => self.has(s, b),
                        _ => false,
                    }
                    || self.members(s).any(|j| match &self.formulas[j] {
                        Formula::Impl(a, b) => **b == *q && self.has(s, a),
                        Formula::And(a, b) => **a == *q || **b == *q,
                        _ => false,
                    });
                if hit {
                    s |= bit(i);
                }
            }
            if s == before {
                return s;
            }
        }
    }

    fn absorb(&mut self, model: &KripkeModel) {
        let truth: Vec<Vec<bool>> = self.formulas.iter().map(|q| model.truth_set(q)).collect();
        for w in 0..model.len() {
            let t = truth.iter().enumerate().filter(|(_, row)| row[w]).fold(0, |m, (i, _)| m | bit(i));
            if !self.pool.contains(&t) {
                self.pool.push(t);
            }
        }
    }

    fn close(&mut self, s: u64) -> Result<u64, HenkinError> {
        if let Some(&c) = self.memo.get(&s) {
            return Ok(c);
        }
        let mut closed = self.cheap(s);
        let mut candidates = self.pool.iter().filter(|&&t| t & s == s).fold(self.full(), |m, &t| m & t);
        for i in 0..self.formulas.len() {
            if closed & bit(i) != 0 || candidates & bit(i) == 0 {
                continue;
            }
            let ctx: Vec<&Formula> = self.members(s).map(|j| &self.formulas[j]).collect();
            match self.prover.derivable_from(ctx, &self.formulas[i])? {
                DecisionResult::Provable => closed = self.cheap(closed | bit(i)),
                DecisionResult::Refuted(model, w) => {
                    self.absorb(&model);
                    let pos = model.worlds().binary_search(&w).expect("root is a world");
                    let root = self.formulas.iter().enumerate().filter(|(_, q)| model.truth_set(q)[pos]).fold(0, |m, (j, _)| m | bit(j));
                    candidates &= root;
                }
            }
        }
        self.memo.insert(s, closed);
        Ok(closed)
    }

    fn disj_ok(&self, mask: u64) -> bool {
        self.members(mask).all(|i| match &self.formulas[i] {
            Formula::Or(a, b) => self.has(mask, a) || self.has(mask, b),
            _ => true,
        })
    }

    /// Every consistent closed subset, found by adding one formula at a time
    /// to closed sets, starting from the closure of the empty set.
    fn closed_sets(&mut self) -> Result<Vec<u64>, HenkinError> {
        let start = self.close(0)?;
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        if start & self.bot() == 0 {
            seen.insert(start);
            queue.push_back(start);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..self.formulas.len() {
                if c & bit(i) != 0 {
                    continue;
                }
                let d = self.close(c | bit(i))?;
                if d & self.bot() == 0 && seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl Henkin {
    fn check_size(&self, f: &Fragment) -> Result<(), HenkinError> {
        if f.len() > self.max_fragment().min(64) {
            return Err(HenkinError::FragmentTooLarge { size: f.len(), bound: self.max_fragment().min(64) });
        }
        Ok(())
    }

    /// The canonical model of `f`: consistent, closed, disjunction-prime
    /// subsets of `f` ordered by inclusion, with atoms true where they are
    /// members.
    pub fn build_canonical(&self, f: &Fragment) -> Result<CanonicalModel, HenkinError> {
        self.check_size(f)?;
        let mut closer = Closer::new(self.prover(), f);
        self.canonical_with(&mut closer, f)
    }

    fn canonical_with(&self, closer: &mut Closer<'_>, f: &Fragment) -> Result<CanonicalModel, HenkinError> {
        let mut masks: Vec<u64> = closer.closed_sets()?.into_iter().filter(|&m| closer.disj_ok(m)).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let n = masks.len() as World;
        let rel = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| masks[i as usize] & !masks[j as usize] == 0);
        let mut val = Vec::new();
        for (i, &m) in masks.iter().enumerate() {
            for k in closer.members(m) {
                if let Formula::Atom(a) = f.as_slice()[k] {
                    val.push((a, i as World));
                }
            }
        }
        let rel: Vec<_> = rel.collect();
        let model = KripkeModel::new(0..n, rel, val).expect("worlds in range");
        model
            .validate_frame()
            .map_err(|v| HenkinError::Verification(format!("canonical frame: {v}")))?;
        Ok(CanonicalModel {
            fragment: f.clone(),
            model,
            labels: masks.iter().map(|&m| closer.set_of(m)).collect(),
        })
    }

    /// For every world and fragment formula, forcing agrees with membership.
    pub fn truth_lemma_check(&self, cm: &CanonicalModel) -> Result<(), TruthLemmaViolation> {
        for q in cm.fragment.iter() {
            let truth = cm.model.truth_set(q);
            for (i, label) in cm.labels.iter().enumerate() {
                let member = label.contains(q);
                if truth[i] != member {
                    let direction = if truth[i] { Direction::ForcedNotMember } else { Direction::MemberNotForced };
                    return Err(TruthLemmaViolation { world: i as World, formula: q.clone(), direction });
                }
            }
        }
        Ok(())
    }

    /// A world of the canonical model of `ctx ∪ {p}`'s fragment forcing `ctx`
    /// but not `p`, or `None` when `ctx ⊢ p`. The world is reached by a prime
    /// extension of the closure of `ctx` within the fragment.
    pub fn countermodel(&self, ctx: &Context, p: &Formula) -> Result<Option<(CanonicalModel, World)>, HenkinError> {
        let f = Fragment::closure_of(ctx.iter().chain([p]));
        self.check_size(&f)?;
        let mut closer = Closer::new(self.prover(), &f);
        let goal = closer.mask_of([p]);
        let mut delta = closer.close(closer.mask_of(ctx.iter()))?;
        if delta & goal != 0 {
            return Ok(None);
        }
        let mut disjunctions: Vec<&Formula> = f.iter().filter(|q| matches!(q, Formula::Or(..))).collect();
        disjunctions.sort_by_cached_key(|q| encode(q));
        loop {
            let before = delta;
            for d in &disjunctions {
                let Formula::Or(a, b) = d else { unreachable!() };
                if !closer.has(delta, d) || closer.has(delta, a) || closer.has(delta, b) {
                    continue;
                }
                let with_a = closer.close(delta | closer.mask_of([&**a]))?;
                delta = if with_a & goal != 0 { closer.close(delta | closer.mask_of([&**b]))? } else { with_a };
            }
            if delta == before {
                break;
            }
        }
        let cm = self.canonical_with(&mut closer, &f)?;
        let label = closer.set_of(delta);
        let w = cm
            .world_of(&label)
            .ok_or_else(|| HenkinError::Verification("prime extension is not a canonical world".into()))?;
        let forces_ctx = cm.model.forces_ctx(w, ctx).expect("world exists");
        let forces_p = cm.model.forces(w, p).expect("world exists");
        if !forces_ctx || forces_p {
            return Err(HenkinError::Verification(format!("world {w} does not separate the context from {p}")));
        }
        Ok(Some((cm, w)))
    }
}
