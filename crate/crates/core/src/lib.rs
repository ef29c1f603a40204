//! Edge-transitive maps on Rose Window graphs.

pub mod classifier;
pub mod cycles;
pub mod error;
pub mod families;
pub mod graph;
pub mod maps;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod search;

pub use error::{Error, Result};
pub use graph::{build_rose_window, recognize_family, FamilyTag, LabeledGraph, RoseWindowParams};
pub use par::Parallelism;
pub use perm::{PermGroup, Permutation, Symmetry};

/// Schema tag carried by every JSON document this crate emits.
pub const SCHEMA: &str = "rwmaps/1";
