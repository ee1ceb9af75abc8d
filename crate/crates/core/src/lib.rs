//! Intuitionistic propositional logic: a Hilbert-style proof checker, finite
//! Kripke semantics, a terminating decision procedure with countermodels and
//! an executable Henkin-style completeness construction.

pub mod decision;
pub mod gen;
pub mod henkin;
pub mod proof;
pub mod semantics;
pub mod syntax;

pub use syntax::{Formula, Fragment};
