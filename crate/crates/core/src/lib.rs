//! Balanced Abelian-group labelings of directed multigraphs.
//!
//! A labeling assigns elements of a finitely generated Abelian group to the
//! vertices and/or edges of a directed multigraph. It is balanced when the
//! labels sum to zero along every cycle. Two notions of cycle are covered:
//! [`flexible`] walks may cross an edge against its direction (reading the
//! negated label), [`rigid`] walks follow edge directions only. For each, the
//! crate checks balance with explicit witness cycles, parametrizes every
//! balanced labeling, and computes the group structure of the solution sets.
//! [`oracle`] re-derives all of it by brute-force cycle enumeration.

pub mod abelian;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod flexible;
pub mod labeling;
pub mod oracle;
pub mod rigid;
pub mod sample;
pub mod structure;

pub use abelian::{GroupElement, GroupSpec, InvolutionSubgroup, Order};
pub use digraph::{
    Bipartition, Dart, Digraph, Direction, SccDecomposition, TraversalMode, Witness,
};
pub use error::{Error, Result};
pub use flexible::{BfVerdict, FlexibleGraph, Verdict, WfParams};
pub use labeling::Labeling;
pub use rigid::{HrParams, RigidGraph};
pub use structure::{Cardinality, Family, StructureDescriptor};
