//! Points of ind- and pro-definable sets in the underlying finite
//! structure, and the functor sending a structure to its system of
//! pointed definable sets.

mod cor;
mod dm;
mod eval;
mod morphisms;

pub use cor::{count_equivariant, pro_subset_points, pro_subsets, verify_cor_proind, CorReport};
pub use dm::{
    build_dm, d_on_morphisms, hom_dm, required_bound, DmEndomorphisms, DmHom, DmIndex, DmMap, DmMode, DmObject,
    PointFamily,
};
pub use eval::{induced_point_map_ind, induced_point_map_pro, ind_point_code, points_ind, points_pro};
pub use morphisms::{graph_to_morphism, point_graph, verify_prop_morphisms, GraphSubobject, PropMorphisms};
