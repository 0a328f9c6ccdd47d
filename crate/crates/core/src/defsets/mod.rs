//! Definable sets of a finite structure. A set of tuples counts as
//! definable when every automorphism of the structure preserves it.

mod aut;
pub mod bundled;
mod category;
mod sets;
mod structure;
mod systems;

pub use aut::{automorphism_group, AutGroup};
pub use category::DefCategory;
pub use sets::{DefMap, DefSet, Definability, OrbitTable, DEFAULT_ARITY_CAP, DEFAULT_HOM_CAP, MAX_TUPLES};
pub use structure::{parse_structure, Constant, FinStructure, Function, Relation};
pub use systems::{eq_relation_union, increasing_union, is_equivalence, type_system, DefIndObject, DefProObject};
pub(crate) use systems::check_directed;
