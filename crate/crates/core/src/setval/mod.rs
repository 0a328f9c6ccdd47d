//! Set-valued diagrams and their (co)limits.
//!
//! Elements of every set are the integers `0..size`; labels, when a file
//! supplies them, live beside the diagram. Both (co)limit algorithms run
//! on [`Transitions`], a variance-free list of element maps, so that
//! large index systems that are never materialized as a
//! [`FinCategory`] can reuse them.

mod colimit;
mod limit;
mod parse;
mod presheaf;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{is_filtering, FilteringWitness, FinCategory, Variance};

pub use colimit::{colimit_of, ColimitResult, DisjointSets};
pub use limit::{limit_of, LimitResult, DEFAULT_FAMILY_CAP};
pub use parse::{parse_set_diagram, LabeledDiagram};
pub use presheaf::{
    extend_copresheaf, extend_presheaf, extend_presheaf_on_morphism, hom_into_ind, HomColimit,
};

/// One element map `table: sizes[from] -> sizes[to]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transitions {
    pub sizes: Vec<usize>,
    pub arrows: Vec<Arrow>,
}

/// A functor from a finite index category into finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    index: Arc<FinCategory>,
    sizes: Vec<usize>,
    maps: Vec<Vec<usize>>,
    variance: Variance,
}

impl SetDiagram {
    /// `maps[t]` is the element table of the image of index morphism `t`:
    /// from `sizes[dom t]` to `sizes[cod t]` when covariant, reversed when
    /// contravariant.
    pub fn new(
        index: Arc<FinCategory>,
        sizes: Vec<usize>,
        maps: Vec<Vec<usize>>,
        variance: Variance,
    ) -> Result<Self> {
        let d = Self {
            index,
            sizes,
            maps,
            variance,
        };
        d.check()?;
        Ok(d)
    }

    fn ends(&self, t: usize) -> (usize, usize) {
        let (a, b) = (self.index.dom(t), self.index.cod(t));
        match self.variance {
            Variance::Covariant => (a, b),
            Variance::Contravariant => (b, a),
        }
    }

    fn check(&self) -> Result<()> {
        let c = &*self.index;
        if self.sizes.len() != c.object_count() || self.maps.len() != c.morphism_count() {
            return Err(Error::MalformedDiagram(
                "set and map counts do not match the index".into(),
            ));
        }
        for t in 0..c.morphism_count() {
            let (a, b) = self.ends(t);
            let m = &self.maps[t];
            if m.len() != self.sizes[a] || m.iter().any(|&y| y >= self.sizes[b]) {
                return Err(Error::MalformedDiagram(format!(
                    "map of `{}` does not fit its sets",
                    c.morphism(t).name
                )));
            }
        }
        for x in 0..c.object_count() {
            let id = &self.maps[c.identity(x)];
            if id.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::NonFunctorial(format!(
                    "identity of `{}` is not sent to the identity",
                    c.object_name(x)
                )));
            }
        }
        for g in 0..c.morphism_count() {
            for x in 0..c.object_count() {
                for &f in c.hom(x, c.dom(g)) {
                    let gf = &self.maps[c.compose(g, f)];
                    let (first, second) = match self.variance {
                        Variance::Covariant => (&self.maps[f], &self.maps[g]),
                        Variance::Contravariant => (&self.maps[g], &self.maps[f]),
                    };
                    if first.iter().map(|&v| second[v]).ne(gf.iter().copied()) {
                        return Err(Error::NonFunctorial(format!(
                            "composite {} . {} is not preserved",
                            c.morphism(g).name,
                            c.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.index
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn map(&self, t: usize) -> &[usize] {
        &self.maps[t]
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn transitions(&self) -> Transitions {
        Transitions {
            sizes: self.sizes.clone(),
            arrows: (0..self.index.morphism_count())
                .filter(|&t| !self.index.is_identity(t))
                .map(|t| {
                    let (from, to) = self.ends(t);
                    Arrow {
                        from,
                        to,
                        table: self.maps[t].clone(),
                    }
                })
                .collect(),
        }
    }
}

/// Colimit of a diagram over a filtering index (over the opposite index
/// for contravariant diagrams). Without a supplied witness the index is
/// checked first.
pub fn filtered_colimit(d: &SetDiagram, witness: Option<&FilteringWitness>) -> Result<ColimitResult> {
    if witness.is_none() {
        let shape = match d.variance {
            Variance::Covariant => is_filtering(&d.index),
            Variance::Contravariant => is_filtering(&d.index.opposite()),
        };
        if let Err(e) = shape {
            return Err(Error::NonFilteringIndex(e.describe(&d.index)));
        }
    }
    Ok(colimit_of(&d.transitions()))
}

/// Compatible families of the diagram.
pub fn limit(d: &SetDiagram) -> Result<LimitResult> {
    limit_of(&d.transitions(), DEFAULT_FAMILY_CAP)
}
