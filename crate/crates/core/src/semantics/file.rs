//! Line-oriented model files.
//!
//! ```text
//! worlds: 0 1
//! rel: 0->0 0->1 1->1
//! val: p0@1
//! root: 0
//! ```
//!
//! `root` is optional and names a designated world. Blank lines and lines
//! starting with `#` are ignored. No closure is applied: the relation must
//! already be a preorder and the valuation persistent, or loading fails.

use std::fmt::Write;

use super::{FrameViolation, KripkeModel, SemanticsError, World};
use crate::syntax::Atom;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing \"{0}:\" line")]
    Missing(&'static str),
    #[error(transparent)]
    Structure(#[from] SemanticsError),
    #[error("invalid frame: {0}")]
    Frame(#[from] FrameViolation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub model: KripkeModel,
    pub root: Option<World>,
}

fn world(tok: &str, line: usize) -> Result<World, ModelFileError> {
    tok.parse()
        .map_err(|_| ModelFileError::Syntax { line, message: format!("bad world id {tok:?}") })
}

pub fn parse_model(text: &str) -> Result<ModelFile, ModelFileError> {
    let mut worlds: Option<Vec<World>> = None;
    let mut rel: Option<Vec<(World, World)>> = None;
    let mut val: Option<Vec<(Atom, World)>> = None;
    let mut root = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = trimmed.split_once(':') else {
            return Err(ModelFileError::Syntax { line, message: "expected \"key: ...\"".into() });
        };
        let toks = rest.split_whitespace();
        match key.trim() {
            "worlds" => worlds = Some(toks.map(|t| world(t, line)).collect::<Result<_, _>>()?),
            "rel" => {
                let mut pairs = Vec::new();
                for t in toks {
                    let (a, b) = t.split_once("->").ok_or_else(|| ModelFileError::Syntax {
                        line,
                        message: format!("bad edge {t:?}, expected w->v"),
                    })?;
                    pairs.push((world(a, line)?, world(b, line)?));
                }
                rel = Some(pairs);
            }
            "val" => {
                let mut pairs = Vec::new();
                for t in toks {
                    let bad = || ModelFileError::Syntax { line, message: format!("bad valuation {t:?}, expected pN@w") };
                    let (atom, w) = t.split_once('@').ok_or_else(bad)?;
                    let atom: Atom = atom.strip_prefix('p').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
                    pairs.push((atom, world(w, line)?));
                }
                val = Some(pairs);
            }
            "root" => {
                let toks: Vec<&str> = toks.collect();
                if toks.len() != 1 {
                    return Err(ModelFileError::Syntax { line, message: "root takes one world".into() });
                }
                root = Some(world(toks[0], line)?);
            }
            other => return Err(ModelFileError::Syntax { line, message: format!("unknown key {other:?}") }),
        }
    }
    let model = KripkeModel::new(
        worlds.ok_or(ModelFileError::Missing("worlds"))?,
        rel.ok_or(ModelFileError::Missing("rel"))?,
        val.ok_or(ModelFileError::Missing("val"))?,
    )?;
    if let Some(r) = root {
        if !model.contains_world(r) {
            return Err(SemanticsError::UnknownWorld(r).into());
        }
    }
    model.validate_frame()?;
    Ok(ModelFile { model, root })
}

/// Renders a model file with worlds, edges and valuation pairs sorted.
pub fn print_model(model: &KripkeModel, root: Option<World>) -> String {
    let mut out = String::new();
    let worlds: Vec<String> = model.worlds().iter().map(|w| w.to_string()).collect();
    let _ = writeln!(out, "worlds: {}", worlds.join(" "));
    let rel: Vec<String> = model.rel().iter().map(|(w, v)| format!("{w}->{v}")).collect();
    let _ = writeln!(out, "rel: {}", rel.join(" "));
    let mut val: Vec<(World, Atom)> = model.val().iter().map(|&(a, w)| (w, a)).collect();
    val.sort_unstable();
    let val: Vec<String> = val.iter().map(|(w, a)| format!("p{a}@{w}")).collect();
    let _ = writeln!(out, "val: {}", val.join(" "));
    if let Some(r) = root {
        let _ = writeln!(out, "root: {r}");
    }
    out
}

/// GraphViz rendering. Nodes are labelled with the atoms true there; only
/// non-reflexive edges are drawn.
pub fn to_dot(model: &KripkeModel, root: Option<World>) -> String {
    let mut out = String::from("digraph kripke {\n  rankdir=BT;\n");
    for &w in model.worlds() {
        let atoms: Vec<String> = model.atoms_at(w).iter().map(|a| format!("p{a}")).collect();
        let shape = if Some(w) == root { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  w{w} [label=\"{w}: {}\"{shape}];", atoms.join(" "));
    }
    for &(w, v) in model.rel() {
        if w != v {
            let _ = writeln!(out, "  w{w} -> w{v};");
        }
    }
    out.push_str("}\n");
    out
}
