use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Henkin, HenkinError, Theory};
use crate::decision::{DecisionResult, Prover};
use crate::proof::Context;
use crate::semantics::{KripkeModel, World};
use crate::syntax::{decode, decode_u64, encode, Formula};

/// One treatment of a disjunction that the current theory derives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based stage number.
    pub stage: usize,
    pub code: u64,
    pub disjunction: Formula,
    pub added: Formula,
    /// Whether `added` was new to the theory.
    pub new: bool,
}

/// Record of a bounded prime extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTrace {
    pub goal: Formula,
    pub code_bound: u64,
    /// `stages[0]` is the input theory, `stages[k]` the output of stage `k`.
    pub stages: Vec<Context>,
    pub steps: Vec<TraceStep>,
}

impl PrimeTrace {
    pub fn result(&self) -> &Context {
        self.stages.last().expect("stage 0 always present")
    }
}

/// Smallest code bound under which every given formula is enumerated, if it
/// fits in a `u64`.
pub fn code_bound_covering<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Option<u64> {
    let max = formulas.into_iter().map(encode).max().unwrap_or_default();
    (max + 1u32).to_u64()
}

/// Derivability from a growing theory, answered from cached countermodels
/// where possible.
struct Extension<'a> {
    prover: &'a Prover,
    goal: Formula,
    theory: BTreeSet<Formula>,
    /// Worlds forcing the theory; each refutes whatever it does not force.
    pool: Vec<(KripkeModel, World)>,
    /// Worlds forcing the theory but not the goal.
    goal_pool: Vec<(KripkeModel, World)>,
    derived: HashSet<Formula>,
    // insert_form verdicts for the current theory, keyed by the disjunct.
    with_disjunct: HashMap<Formula, bool>,
}

fn forced(model: &KripkeModel, w: World, p: &Formula) -> bool {
    model.forces(w, p).expect("pool world belongs to its model")
}

impl<'a> Extension<'a> {
    fn new(prover: &'a Prover, theory: &Context, goal: &Formula) -> Result<Extension<'a>, HenkinError> {
        let goal_pool = match prover.derivable(theory, goal)? {
            DecisionResult::Provable => return Err(HenkinError::AlreadyDerives(goal.clone())),
            DecisionResult::Refuted(m, w) => vec![(m, w)],
        };
        Ok(Extension {
            prover,
            goal: goal.clone(),
            theory: theory.as_set().clone(),
            pool: goal_pool.clone(),
            goal_pool,
            derived: HashSet::new(),
            with_disjunct: HashMap::new(),
        })
    }

    /// `theory ⊢ p`
    fn derives(&mut self, p: &Formula) -> Result<bool, HenkinError> {
        if self.theory.contains(p) || self.derived.contains(p) {
            return Ok(true);
        }
        if let Formula::Or(a, b) = p {
            if self.theory.contains(a) || self.theory.contains(b) {
                return Ok(true);
            }
        }
        if let Some(i) = self.pool.iter().position(|(m, w)| !forced(m, *w, p)) {
            self.pool[..=i].rotate_right(1);
            return Ok(false);
        }
        match self.prover.derivable_from(&self.theory, p)? {
            DecisionResult::Provable => {
                self.derived.insert(p.clone());
                Ok(true)
            }
            DecisionResult::Refuted(m, w) => {
                self.pool.insert(0, (m, w));
                Ok(false)
            }
        }
    }

    /// `theory , p ⊢ goal`
    fn derives_goal_with(&mut self, p: &Formula) -> Result<bool, HenkinError> {
        if self.theory.contains(p) {
            // The theory never derives the goal.
            return Ok(false);
        }
        if let Some(&v) = self.with_disjunct.get(p) {
            return Ok(v);
        }
        let verdict = if self.goal_pool.iter().any(|(m, w)| forced(m, *w, p)) {
            false
        } else {
            let mut extended = self.theory.clone();
            extended.insert(p.clone());
            match self.prover.derivable_from(&extended, &self.goal)? {
                DecisionResult::Provable => true,
                DecisionResult::Refuted(m, w) => {
                    self.goal_pool.push((m, w));
                    false
                }
            }
        };
        self.with_disjunct.insert(p.clone(), verdict);
        Ok(verdict)
    }

    fn add(&mut self, p: Formula) -> bool {
        if !self.theory.insert(p.clone()) {
            return false;
        }
        self.pool.retain(|(m, w)| forced(m, *w, &p));
        self.goal_pool.retain(|(m, w)| forced(m, *w, &p));
        self.with_disjunct.clear();
        true
    }

    /// insert_form: add `q` if `theory , p` derives the goal, else `p`.
    fn insert_form(&mut self, p: &Formula, q: &Formula) -> Result<(Formula, bool), HenkinError> {
        let chosen = if self.derives_goal_with(p)? { q.clone() } else { p.clone() };
        let new = self.add(chosen.clone());
        Ok((chosen, new))
    }
}

impl Henkin {
    /// `t , q` if `t , p ⊢ r`, otherwise `t , p`.
    pub fn insert_form(&self, t: &Context, p: &Formula, q: &Formula, r: &Formula) -> Result<Context, HenkinError> {
        let chosen = if self.prover().proves(t.with(p.clone()).iter(), r)? { q } else { p };
        Ok(t.with(chosen.clone()))
    }

    /// Treats the formula with code `n`: if it is a disjunction `p ∨ q` that
    /// `t` derives, applies [`insert_form`](Self::insert_form); otherwise
    /// returns `t` unchanged.
    pub fn insert_code(&self, t: &Context, r: &Formula, n: &BigUint) -> Result<Context, HenkinError> {
        match decode(n) {
            Some(d @ Formula::Or(..)) => self.treat(t, r, &d),
            _ => Ok(t.clone()),
        }
    }

    fn treat(&self, t: &Context, r: &Formula, d: &Formula) -> Result<Context, HenkinError> {
        let Formula::Or(p, q) = d else { return Ok(t.clone()) };
        if self.prover().proves(t.iter(), d)? {
            self.insert_form(t, p, q, r)
        } else {
            Ok(t.clone())
        }
    }

    /// `insertn t r 0 = t`, `insertn t r (n+1) = insert_code (insertn t r n) r n`.
    pub fn insertn(&self, t: &Context, r: &Formula, n: u64) -> Result<Context, HenkinError> {
        let mut acc = t.clone();
        for code in 0..n {
            if code % 5 == 4 {
                if let Some(d) = decode_u64(code) {
                    acc = self.treat(&acc, r, &d)?;
                }
            }
        }
        Ok(acc)
    }

    /// Bounded prime extension: `stages` rounds, each folding `insert_code`
    /// over every code below `code_bound`. Requires `t.formulas ⊬ t.goal`.
    pub fn prime_up_to(&self, t: &Theory, stages: usize, code_bound: u64) -> Result<Theory, HenkinError> {
        let trace = self.prime_trace(t, stages, code_bound)?;
        Ok(Theory::new(trace.result().clone(), t.goal.clone()))
    }

    /// As [`prime_up_to`](Self::prime_up_to), keeping every stage and every
    /// treated disjunction.
    pub fn prime_trace(&self, t: &Theory, stages: usize, code_bound: u64) -> Result<PrimeTrace, HenkinError> {
        let mut ext = Extension::new(self.prover(), &t.formulas, &t.goal)?;
        let disjunctions: Vec<(u64, Formula)> = (0..code_bound)
            .filter(|n| n % 5 == 4)
            .filter_map(|n| decode_u64(n).map(|d| (n, d)))
            .collect();
        let mut trace = PrimeTrace {
            goal: t.goal.clone(),
            code_bound,
            stages: vec![t.formulas.clone()],
            steps: Vec::new(),
        };
        for stage in 1..=stages {
            for (code, d) in &disjunctions {
                let Formula::Or(p, q) = d else { unreachable!("tag 4 decodes to a disjunction") };
                if ext.derives(d)? {
                    let (added, new) = ext.insert_form(p, q)?;
                    trace.steps.push(TraceStep { stage, code: *code, disjunction: d.clone(), added, new });
                }
            }
            trace.stages.push(ext.theory.iter().cloned().collect());
        }
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn ctx(items: &[&str]) -> Context {
        items.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn insert_form_cases() {
        let h = Henkin::default();
        let out = h.insert_form(&Context::new(), &f("p0"), &f("p1"), &f("p0")).unwrap();
        assert_eq!(out, ctx(&["p1"]));
        let out = h.insert_form(&Context::new(), &f("p0"), &f("p1"), &f("p2")).unwrap();
        assert_eq!(out, ctx(&["p0"]));
    }

    #[test]
    fn insert_code_cases() {
        let h = Henkin::default();
        let t = ctx(&["p0 | p1", "~p0"]);
        // gap
        assert_eq!(h.insert_code(&t, &Formula::Bot, &BigUint::from(6u32)).unwrap(), t);
        // not a disjunction
        assert_eq!(h.insert_code(&t, &Formula::Bot, &encode(&f("p0 & p1"))).unwrap(), t);
        // t, p0 ⊢ ⊥, so p1 is added
        let out = h.insert_code(&t, &Formula::Bot, &encode(&f("p0 | p1"))).unwrap();
        assert_eq!(out, t.with(f("p1")));
        // underivable disjunction is skipped
        assert_eq!(h.insert_code(&Context::new(), &Formula::Bot, &encode(&f("p0 | p1"))).unwrap(), Context::new());
    }

    #[test]
    fn insertn_unfolds() {
        let h = Henkin::default();
        let t = ctx(&["p0 | p1"]);
        let r = f("p2");
        assert_eq!(h.insertn(&t, &r, 0).unwrap(), t);
        for n in [5u64, 104, 105, 300] {
            let step = h.insert_code(&h.insertn(&t, &r, n).unwrap(), &r, &BigUint::from(n)).unwrap();
            assert_eq!(h.insertn(&t, &r, n + 1).unwrap(), step, "n = {n}");
        }
    }

    #[test]
    fn disjunction_gets_a_disjunct() {
        let h = Henkin::default();
        let t = Theory::new(ctx(&["p0 | p1"]), f("p2"));
        let bound = encode(&f("p0 | p1")).to_u64().unwrap() + 1;
        let trace = h.prime_trace(&t, 3, bound).unwrap();
        // p1 | p0 (code 79) precedes p0 | p1 and p1 does not lead to p2.
        let step = trace.steps.iter().find(|s| s.disjunction == f("p1 | p0")).unwrap();
        assert_eq!((step.stage, step.code, &step.added, step.new), (1, 79, &f("p1"), true));
        assert!(trace.stages[1].contains(&f("p1")) && trace.stages[1].contains(&f("p0")));
        assert!(!trace.stages[1].contains(&f("p2")));
        assert_eq!(trace.stages[3], trace.stages[1]);
        assert!(trace.steps.iter().filter(|s| s.stage > 1).all(|s| !s.new));
    }

    #[test]
    fn refuses_derivable_goal() {
        let h = Henkin::default();
        let t = Theory::new(ctx(&["p0"]), f("p0"));
        assert_eq!(h.prime_up_to(&t, 1, 10), Err(HenkinError::AlreadyDerives(f("p0"))));
    }

    #[test]
    fn trace_matches_insertn_tower() {
        // The accelerated stage loop must agree with the literal fold.
        let h = Henkin::default();
        let t = Theory::new(ctx(&["p0 | p1", "p1 -> p2"]), f("p0"));
        let bound = 2000;
        let trace = h.prime_trace(&t, 2, bound).unwrap();
        let stage1 = h.insertn(&t.formulas, &t.goal, bound).unwrap();
        let stage2 = h.insertn(&stage1, &t.goal, bound).unwrap();
        assert_eq!(trace.stages[1], stage1);
        assert_eq!(trace.stages[2], stage2);
        assert!(stage2.contains(&f("p1")));
    }

    #[test]
    fn bound_covering() {
        assert_eq!(code_bound_covering([&f("p0"), &f("p1")]), Some(6));
        assert_eq!(code_bound_covering([]), Some(1));
    }
}
