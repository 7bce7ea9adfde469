//! Exact calculus of Reeb-space homology under normal bubbling surgeries.
//!
//! A bubbling operation along a closed connected orientable manifold `S`
//! embedded in the regular part of an `n`-dimensional target changes the
//! homology of the Reeb space by the homology of `S` shifted up by
//! `n − dim S`, with exactly one new `Z` at the top degree. This crate
//! models that update rule exactly over the integers and builds on it:
//!
//! - [`abelian`] — finitely generated abelian groups in invariant-factor
//!   form, and graded collections of them;
//! - [`snf`] — integer Smith normal form and chain-complex homology, the
//!   independent numerical oracle;
//! - [`manifolds`] — the generating-manifold catalog (point, spheres,
//!   connected sums of sphere products) and its homology;
//! - [`bubbling`] — base Reeb models and the update engine for plans;
//! - [`planner`] — realizability checks for target increment sequences and
//!   plan constructors verified by replay;
//! - [`oracle`] — bounded brute-force realizability search used to
//!   cross-validate the planners.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod abelian;
pub mod bubbling;
pub mod error;
pub mod manifolds;
pub mod oracle;
pub mod planner;
pub mod snf;

pub use abelian::{FgAbelianGroup, GradedGroup};
pub use bubbling::{BaseModel, Plan, ReebModel};
pub use error::{Error, Result};
pub use manifolds::GeneratingManifold;
pub use oracle::{SearchBounds, SearchOutcome};
pub use planner::{FeasibilityReport, FunctionSpec, TargetSequence, Verdict};
