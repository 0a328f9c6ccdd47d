//! Ind- and pro-objects over a base [`Category`](crate::category::Category)
//! with enumerable Hom-sets.

mod compact;
mod hom;
mod iso;
mod object;
mod slice;

pub use hom::{
    compose_ind, compose_pro, count_pro, hom_ind, hom_pro, identity_ind, identity_pro, ind_from_base,
    ind_morphism, pro_from_base, pro_morphism, Certificate, Component, IndHom, IndMorphism, ProMorphism,
};
pub use compact::{build_iso_from_points_ind, build_iso_from_points_pro, IndInverse, ProInverse};
pub use iso::{
    check_iso_lemma, check_iso_lemma_pro, check_iso_pullback, check_iso_pushout, IsoCertificate, ProIsoCertificate,
};
pub use object::{IndObject, ProObject};
pub use slice::{slice_transport_ind, slice_transport_pro, underlying_ind, underlying_pro, SliceTransport};
