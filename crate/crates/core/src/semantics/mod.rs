//! Finite Kripke models and the forcing relation.
//!
//! A model is a finite set of worlds with an accessibility relation and an
//! atomic valuation. Valid models have a preorder as accessibility and a
//! valuation that persists along it; [`KripkeModel::validate_frame`] checks
//! those laws and names a witness when one fails. Forcing follows the relation
//! literally, so it can also be evaluated on invalid models (useful for
//! negative controls).

mod enumerate;
mod file;

use std::collections::BTreeSet;
use std::fmt;

use crate::proof::Context;
use crate::syntax::{Atom, Formula};

pub use enumerate::{enumerate_models, preorders};
pub use file::{parse_model, print_model, to_dot, ModelFile, ModelFileError};

pub type World = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("world {0} is not in the model")]
    UnknownWorld(World),
}

/// Failure of one of the frame laws, with a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FrameViolation {
    #[error("accessibility is not reflexive at world {world}")]
    Refl { world: World },
    #[error("accessibility is not transitive: {w}->{v} and {v}->{u} but not {w}->{u}")]
    Trans { w: World, v: World, u: World },
    #[error("valuation is not monotone: p{atom} holds at {from} but not at {to}")]
    Mono { atom: Atom, from: World, to: World },
}

impl FrameViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            FrameViolation::Refl { .. } => "Refl",
            FrameViolation::Trans { .. } => "Trans",
            FrameViolation::Mono { .. } => "Mono",
        }
    }
}

/// `w ⊩ p` but not `v ⊩ p` although `w` sees `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceViolation {
    pub from: World,
    pub to: World,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<World>,
    rel: BTreeSet<(World, World)>,
    val: BTreeSet<(Atom, World)>,
    // Dense successor lists, indexed by position in `worlds`.
    succ: Vec<Vec<usize>>,
}

impl KripkeModel {
    /// Builds a model without checking the frame laws. Fails only if `rel` or
    /// `val` mention a world outside `worlds`.
    pub fn new(
        worlds: impl IntoIterator<Item = World>,
        rel: impl IntoIterator<Item = (World, World)>,
        val: impl IntoIterator<Item = (Atom, World)>,
    ) -> Result<KripkeModel, SemanticsError> {
        let worlds: BTreeSet<World> = worlds.into_iter().collect();
        let worlds: Vec<World> = worlds.into_iter().collect();
        let rel: BTreeSet<(World, World)> = rel.into_iter().collect();
        let val: BTreeSet<(Atom, World)> = val.into_iter().collect();
        let pos = |w: World| worlds.binary_search(&w).map_err(|_| SemanticsError::UnknownWorld(w));
        let mut succ = vec![Vec::new(); worlds.len()];
        for &(w, v) in &rel {
            let (i, j) = (pos(w)?, pos(v)?);
            succ[i].push(j);
        }
        for &(_, w) in &val {
            pos(w)?;
        }
        Ok(KripkeModel { worlds, rel, val, succ })
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn rel(&self) -> &BTreeSet<(World, World)> {
        &self.rel
    }

    pub fn val(&self) -> &BTreeSet<(Atom, World)> {
        &self.val
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn contains_world(&self, w: World) -> bool {
        self.worlds.binary_search(&w).is_ok()
    }

    pub fn accessible(&self, w: World, v: World) -> bool {
        self.rel.contains(&(w, v))
    }

    /// Atoms true at `w`.
    pub fn atoms_at(&self, w: World) -> BTreeSet<Atom> {
        self.val.iter().filter(|&&(_, v)| v == w).map(|&(a, _)| a).collect()
    }

    fn position(&self, w: World) -> Result<usize, SemanticsError> {
        self.worlds.binary_search(&w).map_err(|_| SemanticsError::UnknownWorld(w))
    }

    pub fn validate_frame(&self) -> Result<(), FrameViolation> {
        for &w in &self.worlds {
            if !self.rel.contains(&(w, w)) {
                return Err(FrameViolation::Refl { world: w });
            }
        }
        for &(w, v) in &self.rel {
            for &(_, u) in self.rel.range((v, World::MIN)..=(v, World::MAX)) {
                if !self.rel.contains(&(w, u)) {
                    return Err(FrameViolation::Trans { w, v, u });
                }
            }
        }
        for &(atom, w) in &self.val {
            for &(_, v) in self.rel.range((w, World::MIN)..=(w, World::MAX)) {
                if !self.val.contains(&(atom, v)) {
                    return Err(FrameViolation::Mono { atom, from: w, to: v });
                }
            }
        }
        Ok(())
    }

    /// Forcing of `p` at every world, indexed like [`worlds`](Self::worlds).
    pub fn truth_set(&self, p: &Formula) -> Vec<bool> {
        match p {
            Formula::Atom(a) => self.worlds.iter().map(|&w| self.val.contains(&(*a, w))).collect(),
            Formula::Bot => vec![false; self.worlds.len()],
            Formula::And(a, b) => {
                let (ta, tb) = (self.truth_set(a), self.truth_set(b));
                ta.iter().zip(&tb).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(a, b) => {
                let (ta, tb) = (self.truth_set(a), self.truth_set(b));
                ta.iter().zip(&tb).map(|(x, y)| *x || *y).collect()
            }
            Formula::Impl(a, b) => {
                let (ta, tb) = (self.truth_set(a), self.truth_set(b));
                self.succ.iter().map(|vs| vs.iter().all(|&v| !ta[v] || tb[v])).collect()
            }
        }
    }

    /// `w ⊩ p`.
    pub fn forces(&self, w: World, p: &Formula) -> Result<bool, SemanticsError> {
        let i = self.position(w)?;
        Ok(self.truth_set(p)[i])
    }

    /// `w ⊩ Γ`: every member of the context is forced at `w`.
    pub fn forces_ctx(&self, w: World, ctx: &Context) -> Result<bool, SemanticsError> {
        let i = self.position(w)?;
        Ok(ctx.iter().all(|p| self.truth_set(p)[i]))
    }

    /// Checks that forcing of `p` persists along every edge.
    pub fn persistence_check(&self, p: &Formula) -> Result<(), PersistenceViolation> {
        let t = self.truth_set(p);
        for (i, vs) in self.succ.iter().enumerate() {
            if let Some(&j) = vs.iter().find(|&&j| t[i] && !t[j]) {
                return Err(PersistenceViolation { from: self.worlds[i], to: self.worlds[j], formula: p.clone() });
            }
        }
        Ok(())
    }

    /// The sub-model generated by `root`: the worlds it sees, renumbered
    /// `0..n` in ascending order of their old ids.
    pub fn generated_by(&self, root: World) -> Result<(KripkeModel, World), SemanticsError> {
        let i = self.position(root)?;
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(k) = stack.pop() {
            if keep.insert(k) {
                stack.extend(self.succ[k].iter().copied());
            }
        }
        let old: Vec<World> = keep.iter().map(|&k| self.worlds[k]).collect();
        let new_id = |w: World| old.binary_search(&w).ok().map(|n| n as World);
        let rel = self.rel.iter().filter_map(|&(w, v)| Some((new_id(w)?, new_id(v)?)));
        let val = self.val.iter().filter_map(|&(a, w)| Some((a, new_id(w)?)));
        let model = KripkeModel::new(0..old.len() as World, rel, val)?;
        Ok((model, new_id(root).expect("root kept")))
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_model(self, None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consequence {
    NoCounterexample,
    Counterexample(KripkeModel, World),
}

/// Searches a family of models for a world forcing `ctx` but not `p`, and
/// returns the first one in stream order.
pub fn check_consequence_on(
    models: impl IntoIterator<Item = KripkeModel>,
    ctx: &Context,
    p: &Formula,
) -> Consequence {
    for model in models {
        let mut forced = vec![true; model.len()];
        for q in ctx {
            for (f, t) in forced.iter_mut().zip(model.truth_set(q)) {
                *f &= t;
            }
        }
        let target = model.truth_set(p);
        if let Some(i) = (0..model.len()).find(|&i| forced[i] && !target[i]) {
            let w = model.worlds[i];
            return Consequence::Counterexample(model, w);
        }
    }
    Consequence::NoCounterexample
}

/// World `ff` of the excluded-middle countermodel.
pub const FF: World = 0;
/// World `tt` of the excluded-middle countermodel.
pub const TT: World = 1;

/// The two-world countermodel to `p0 ∨ ~p0`: `ff` sees itself and `tt`, `tt`
/// sees itself, and `p0` holds only at `tt`. Returns the model and `ff`.
pub fn build_lem_countermodel() -> (KripkeModel, World) {
    let model = KripkeModel::new([FF, TT], [(FF, FF), (TT, TT), (FF, TT)], [(0, TT)]).expect("static model");
    (model, FF)
}
