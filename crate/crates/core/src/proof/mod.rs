//! Hilbert-style derivations.
//!
//! A [`Derivation`] mirrors the eleven rules of the proof system: ten axiom
//! schemes with explicit instantiation plus modus ponens, and `Ax` for
//! hypotheses from the context. Checking is purely syntactic.
//!
//! Note the orientation of the disjunction introductions, which is kept as
//! in the source system: `Inr(p, q)` concludes `p ⊃ (p ∨ q)` and `Inl(p, q)`
//! concludes `q ⊃ (p ∨ q)`.

mod random;
mod sexpr;

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::Formula;

pub use random::{random_derivation, random_derivation_over};
pub use sexpr::{parse_derivation, print_derivation, SexprError};

/// A set of hypotheses. `Γ , p` is set insertion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(BTreeSet<Formula>);

impl Context {
    pub fn new() -> Context {
        Context(BTreeSet::new())
    }

    /// `Γ , p`
    pub fn with(&self, p: Formula) -> Context {
        let mut out = self.clone();
        out.0.insert(p);
        out
    }

    pub fn insert(&mut self, p: Formula) -> bool {
        self.0.insert(p)
    }

    pub fn contains(&self, p: &Formula) -> bool {
        self.0.contains(p)
    }

    pub fn is_subset(&self, other: &Context) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Context) -> Context {
        Context(self.0.union(&other.0).cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Formula> {
        &self.0
    }

    pub fn into_set(self) -> BTreeSet<Formula> {
        self.0
    }
}

impl FromIterator<Formula> for Context {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Context(iter.into_iter().collect())
    }
}

impl From<BTreeSet<Formula>> for Context {
    fn from(set: BTreeSet<Formula>) -> Self {
        Context(set)
    }
}

impl<'a> IntoIterator for &'a Context {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&items.join(", "))
    }
}

/// A derivation tree. Scheme nodes carry their instantiation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    Ax(Formula),
    /// `p ⊃ (q ⊃ p)`
    K(Formula, Formula),
    /// `(p ⊃ (q ⊃ r)) ⊃ ((p ⊃ q) ⊃ (p ⊃ r))`
    S(Formula, Formula, Formula),
    /// `⊥ ⊃ p`
    Exf(Formula),
    /// From `p ⊃ q` and `p`, conclude `q`.
    Mp(Box<Derivation>, Box<Derivation>),
    /// `(p & q) ⊃ p`
    Pr1(Formula, Formula),
    /// `(p & q) ⊃ q`
    Pr2(Formula, Formula),
    /// `p ⊃ (q ⊃ (p & q))`
    Pair(Formula, Formula),
    /// `p ⊃ (p ∨ q)`
    Inr(Formula, Formula),
    /// `q ⊃ (p ∨ q)`
    Inl(Formula, Formula),
    /// `(p ⊃ r) ⊃ ((q ⊃ r) ⊃ ((p ∨ q) ⊃ r))`
    Case(Formula, Formula, Formula),
}

fn imp(p: &Formula, q: &Formula) -> Formula {
    Formula::implies(p.clone(), q.clone())
}

impl Derivation {
    pub fn mp(major: Derivation, minor: Derivation) -> Derivation {
        Derivation::Mp(Box::new(major), Box::new(minor))
    }

    /// The instantiated scheme of a non-`Mp` node. `Mp` has no scheme.
    pub fn scheme_conclusion(&self) -> Option<Formula> {
        use Derivation::*;
        let f = match self {
            Ax(p) => p.clone(),
            K(p, q) => imp(p, &imp(q, p)),
            S(p, q, r) => imp(&imp(p, &imp(q, r)), &imp(&imp(p, q), &imp(p, r))),
            Exf(p) => imp(&Formula::Bot, p),
            Pr1(p, q) => imp(&Formula::and(p.clone(), q.clone()), p),
            Pr2(p, q) => imp(&Formula::and(p.clone(), q.clone()), q),
            Pair(p, q) => imp(p, &imp(q, &Formula::and(p.clone(), q.clone()))),
            Inr(p, q) => imp(p, &Formula::or(p.clone(), q.clone())),
            Inl(p, q) => imp(q, &Formula::or(p.clone(), q.clone())),
            Case(p, q, r) => imp(&imp(p, r), &imp(&imp(q, r), &imp(&Formula::or(p.clone(), q.clone()), r))),
            Mp(..) => return None,
        };
        Some(f)
    }

    /// Conclusion of a well-formed tree, ignoring the context. `None` if some
    /// `Mp` node is ill-formed.
    pub fn conclusion(&self) -> Option<Formula> {
        match self {
            Derivation::Mp(major, minor) => match major.conclusion()? {
                Formula::Impl(a, b) if *a == minor.conclusion()? => Some((*b).clone()),
                _ => None,
            },
            other => other.scheme_conclusion(),
        }
    }

    /// Rule name as written in proof files.
    pub fn rule_name(&self) -> &'static str {
        use Derivation::*;
        match self {
            Ax(_) => "ax",
            K(..) => "k",
            S(..) => "s",
            Exf(_) => "exf",
            Mp(..) => "mp",
            Pr1(..) => "pr1",
            Pr2(..) => "pr2",
            Pair(..) => "pair",
            Inr(..) => "inr",
            Inl(..) => "inl",
            Case(..) => "case",
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Derivation::Mp(a, b) => 1 + a.node_count() + b.node_count(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Derivation::Mp(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_derivation(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    AxNotInContext,
    MpMismatch,
    ConclusionMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::AxNotInContext => "hypothesis not in context",
            RejectReason::MpMismatch => "modus ponens premises do not match",
            RejectReason::ConclusionMismatch => "conclusion differs from goal",
        })
    }
}

/// Position of a node: the sequence of `Mp` children (0 = major premise,
/// 1 = minor premise) taken from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreePath(pub Vec<u8>);

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            write!(f, ".{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { path: TreePath, reason: RejectReason },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

fn conclude(d: &Derivation, ctx: &Context, path: &mut Vec<u8>) -> Result<Formula, (TreePath, RejectReason)> {
    match d {
        Derivation::Ax(p) => {
            if ctx.contains(p) {
                Ok(p.clone())
            } else {
                Err((TreePath(path.clone()), RejectReason::AxNotInContext))
            }
        }
        Derivation::Mp(major, minor) => {
            path.push(0);
            let lhs = conclude(major, ctx, path)?;
            path.pop();
            path.push(1);
            let rhs = conclude(minor, ctx, path)?;
            path.pop();
            match lhs {
                Formula::Impl(a, b) if *a == rhs => Ok((*b).clone()),
                _ => Err((TreePath(path.clone()), RejectReason::MpMismatch)),
            }
        }
        scheme => Ok(scheme.scheme_conclusion().expect("non-mp node")),
    }
}

/// Checks that `d` derives `goal` from `ctx`. Violations are reported at the
/// first offending node in left-to-right post-order.
pub fn check(d: &Derivation, ctx: &Context, goal: &Formula) -> Verdict {
    match conclude(d, ctx, &mut Vec::new()) {
        Ok(c) if c == *goal => Verdict::Accept,
        Ok(_) => Verdict::Reject { path: TreePath::default(), reason: RejectReason::ConclusionMismatch },
        Err((path, reason)) => Verdict::Reject { path, reason },
    }
}

/// Conclusion of `d` relative to `ctx`, or the first violation.
pub fn infer(d: &Derivation, ctx: &Context) -> Result<Formula, Verdict> {
    conclude(d, ctx, &mut Vec::new()).map_err(|(path, reason)| Verdict::Reject { path, reason })
}

/// `mp (mp (s p (p ⊃ p) p) k) k`, a derivation of `p ⊃ p` from any context.
pub fn id_proof(p: &Formula) -> Derivation {
    let pp = imp(p, p);
    Derivation::mp(
        Derivation::mp(Derivation::S(p.clone(), pp.clone(), p.clone()), Derivation::K(p.clone(), pp)),
        Derivation::K(p.clone(), p.clone()),
    )
}

/// Recognises `p` as an instance of one of the axiom schemes and returns the
/// instantiated leaf. Schemes are tried in rule order.
pub fn scheme_instance(p: &Formula) -> Option<Derivation> {
    use Formula::{And, Bot, Impl, Or};
    let Impl(ante, cons) = p else { return None };
    let candidates = [
        match cons.as_ref() {
            Impl(q, p2) if p2 == ante => Some(Derivation::K((**ante).clone(), (**q).clone())),
            _ => None,
        },
        match (ante.as_ref(), cons.as_ref()) {
            (Impl(a, bc), Impl(ab, ac)) => match (bc.as_ref(), ab.as_ref(), ac.as_ref()) {
                (Impl(b, c), Impl(a2, b2), Impl(a3, c2)) if a == a2 && a == a3 && b == b2 && c == c2 => {
                    Some(Derivation::S((**a).clone(), (**b).clone(), (**c).clone()))
                }
                _ => None,
            },
            _ => None,
        },
        (**ante == Bot).then(|| Derivation::Exf((**cons).clone())),
        match ante.as_ref() {
            And(a, b) if a == cons => Some(Derivation::Pr1((**a).clone(), (**b).clone())),
            And(a, b) if b == cons => Some(Derivation::Pr2((**a).clone(), (**b).clone())),
            _ => None,
        },
        match cons.as_ref() {
            Impl(b, ab) => match ab.as_ref() {
                And(a2, b2) if a2 == ante && b2 == b => Some(Derivation::Pair((**ante).clone(), (**b).clone())),
                _ => None,
            },
            _ => None,
        },
        match cons.as_ref() {
            Or(a, b) if a == ante => Some(Derivation::Inr((**a).clone(), (**b).clone())),
            Or(a, b) if b == ante => Some(Derivation::Inl((**a).clone(), (**b).clone())),
            _ => None,
        },
        match (ante.as_ref(), cons.as_ref()) {
            (Impl(a, r), Impl(br, abr)) => match (br.as_ref(), abr.as_ref()) {
                (Impl(b, r2), Impl(ab, r3)) if r == r2 && r == r3 => match ab.as_ref() {
                    Or(a2, b2) if a2 == a && b2 == b => {
                        Some(Derivation::Case((**a).clone(), (**b).clone(), (**r).clone()))
                    }
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        },
    ];
    candidates.into_iter().flatten().next()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeakenError {
    #[error("target context does not include the source context")]
    NotSubset,
    #[error("derivation is not valid in the source context: {0:?}")]
    Invalid(Verdict),
}

/// Transports a derivation valid in `ctx` to a larger context `wider`.
pub fn weaken(d: &Derivation, ctx: &Context, wider: &Context) -> Result<Derivation, WeakenError> {
    if !ctx.is_subset(wider) {
        return Err(WeakenError::NotSubset);
    }
    let goal = infer(d, ctx).map_err(WeakenError::Invalid)?;
    // Only Ax leaves mention the context, and they stay valid in a superset.
    debug_assert!(check(d, wider, &goal).is_accept());
    Ok(d.clone())
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
    fn identity_term_structure() {
        let p = f("p0");
        let expected = Derivation::mp(
            Derivation::mp(Derivation::S(p.clone(), f("p0 -> p0"), p.clone()), Derivation::K(p.clone(), f("p0 -> p0"))),
            Derivation::K(p.clone(), p.clone()),
        );
        assert_eq!(id_proof(&p), expected);
        assert!(check(&id_proof(&p), &Context::new(), &f("p0 -> p0")).is_accept());
        assert!(check(&id_proof(&Formula::Bot), &Context::new(), &f("false -> false")).is_accept());
    }

    #[test]
    fn lemmon_table_lines() {
        // Intermediate conclusions of the identity proof, lines 1-5.
        let p = f("p0");
        let Derivation::Mp(line3, line4) = id_proof(&p) else { panic!() };
        let Derivation::Mp(line1, line2) = line3.as_ref().clone() else { panic!() };
        assert_eq!(line1.conclusion().unwrap(), f("(p0 -> (p0 -> p0) -> p0) -> (p0 -> p0 -> p0) -> p0 -> p0"));
        assert_eq!(line2.conclusion().unwrap(), f("p0 -> (p0 -> p0) -> p0"));
        assert_eq!(line3.conclusion().unwrap(), f("(p0 -> p0 -> p0) -> p0 -> p0"));
        assert_eq!(line4.conclusion().unwrap(), f("p0 -> p0 -> p0"));
    }

    #[test]
    fn axiom_needs_membership() {
        let p = f("p0");
        assert!(check(&Derivation::Ax(p.clone()), &ctx(&["p0"]), &p).is_accept());
        assert_eq!(
            check(&Derivation::Ax(p.clone()), &Context::new(), &p),
            Verdict::Reject { path: TreePath(vec![]), reason: RejectReason::AxNotInContext }
        );
    }

    #[test]
    fn mp_with_k() {
        // k : p0 -> (p1 -> p0), ax : p0  gives p1 -> p0
        let d = Derivation::mp(Derivation::K(f("p0"), f("p1")), Derivation::Ax(f("p0")));
        assert!(check(&d, &ctx(&["p0"]), &f("p1 -> p0")).is_accept());
    }

    #[test]
    fn mp_mismatch_path() {
        let bad = Derivation::mp(Derivation::K(f("p0"), f("p1")), Derivation::Ax(f("p1")));
        let d = Derivation::mp(Derivation::K(f("p2"), f("p2")), bad);
        assert_eq!(
            check(&d, &ctx(&["p1"]), &f("p2")),
            Verdict::Reject { path: TreePath(vec![1]), reason: RejectReason::MpMismatch }
        );
        let not_impl = Derivation::mp(Derivation::Ax(f("p0")), Derivation::Ax(f("p0")));
        assert_eq!(
            check(&not_impl, &ctx(&["p0"]), &f("p0")),
            Verdict::Reject { path: TreePath(vec![]), reason: RejectReason::MpMismatch }
        );
    }

    #[test]
    fn ax_violation_inside_tree() {
        let d = Derivation::mp(Derivation::K(f("p0"), f("p1")), Derivation::Ax(f("p0")));
        let v = check(&d, &Context::new(), &f("p1 -> p0"));
        assert_eq!(v, Verdict::Reject { path: TreePath(vec![1]), reason: RejectReason::AxNotInContext });
        assert_eq!(TreePath(vec![0, 1]).to_string(), "root.0.1");
    }

    #[test]
    fn conclusion_mismatch() {
        assert_eq!(
            check(&Derivation::Exf(f("p0")), &Context::new(), &f("p0")),
            Verdict::Reject { path: TreePath(vec![]), reason: RejectReason::ConclusionMismatch }
        );
    }

    #[test]
    fn scheme_conclusions() {
        let (p, q, r) = (f("p0"), f("p1"), f("p2"));
        let cases = [
            (Derivation::K(p.clone(), q.clone()), "p0 -> p1 -> p0"),
            (Derivation::S(p.clone(), q.clone(), r.clone()), "(p0 -> p1 -> p2) -> (p0 -> p1) -> p0 -> p2"),
            (Derivation::Exf(p.clone()), "false -> p0"),
            (Derivation::Pr1(p.clone(), q.clone()), "p0 & p1 -> p0"),
            (Derivation::Pr2(p.clone(), q.clone()), "p0 & p1 -> p1"),
            (Derivation::Pair(p.clone(), q.clone()), "p0 -> p1 -> p0 & p1"),
            (Derivation::Inr(p.clone(), q.clone()), "p0 -> p0 | p1"),
            (Derivation::Inl(p.clone(), q.clone()), "p1 -> p0 | p1"),
            (Derivation::Case(p.clone(), q.clone(), r.clone()), "(p0 -> p2) -> (p1 -> p2) -> p0 | p1 -> p2"),
        ];
        for (d, expected) in cases {
            assert_eq!(d.scheme_conclusion().unwrap(), f(expected), "{}", d.rule_name());
            assert!(check(&d, &Context::new(), &f(expected)).is_accept());
        }
    }

    #[test]
    fn scheme_recognition_roundtrips() {
        let (p, q, r) = (f("p0 & p1"), f("~p2"), f("p1 | p0"));
        let leaves = [
            Derivation::K(p.clone(), q.clone()),
            Derivation::S(p.clone(), q.clone(), r.clone()),
            Derivation::Exf(p.clone()),
            Derivation::Pr1(p.clone(), q.clone()),
            Derivation::Pr2(p.clone(), q.clone()),
            Derivation::Pair(p.clone(), q.clone()),
            Derivation::Inr(p.clone(), q.clone()),
            Derivation::Inl(p.clone(), q.clone()),
            Derivation::Case(p.clone(), q.clone(), r.clone()),
        ];
        for leaf in leaves {
            let c = leaf.scheme_conclusion().unwrap();
            let found = scheme_instance(&c).unwrap();
            assert_eq!(found.scheme_conclusion().unwrap(), c);
        }
        assert_eq!(scheme_instance(&f("p0 -> p1")), None);
    }

    #[test]
    fn weakening() {
        let p = f("p0");
        let w = weaken(&id_proof(&p), &Context::new(), &ctx(&["p1"])).unwrap();
        assert!(check(&w, &ctx(&["p1"]), &f("p0 -> p0")).is_accept());

        let w = weaken(&Derivation::Ax(p.clone()), &ctx(&["p0"]), &ctx(&["p0", "p1"])).unwrap();
        assert!(check(&w, &ctx(&["p0", "p1"]), &p).is_accept());

        assert_eq!(
            weaken(&Derivation::Ax(p.clone()), &ctx(&["p0"]), &ctx(&["p1"])),
            Err(WeakenError::NotSubset)
        );
        assert!(matches!(
            weaken(&Derivation::Ax(p.clone()), &Context::new(), &ctx(&["p1"])),
            Err(WeakenError::Invalid(_))
        ));
    }
}
