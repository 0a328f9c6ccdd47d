//! Pointwise evaluation of ind- and pro-objects.
//!
//! A representable `Hom(Y, -)` and any (co)presheaf on a finite base extend
//! to systems by taking the filtered colimit of their values on the levels.

use std::collections::HashMap;
use std::hash::Hash;

use super::{colimit_of, Arrow, ColimitResult, SetDiagram, Transitions};
use crate::category::Category;
use crate::error::{Error, Result};
use crate::fincat::Variance;
use crate::indpro::{IndObject, ProMorphism, ProObject};

/// `Colim_j Hom(Y, X_j)` together with the Hom-sets it was built from.
#[derive(Clone, Debug)]
pub struct HomColimit<M> {
    homs: Vec<Vec<M>>,
    lookup: Vec<HashMap<M, usize>>,
    colimit: ColimitResult,
}

impl<M: Clone + Eq + Hash> HomColimit<M> {
    /// `hom(j)[x]` is element `x` of level `j`.
    pub fn hom(&self, j: usize) -> &[M] {
        &self.homs[j]
    }

    pub fn colimit(&self) -> &ColimitResult {
        &self.colimit
    }

    pub fn class_count(&self) -> usize {
        self.colimit.class_count()
    }

    /// Class of a morphism `Y -> X_j`; `None` if it is not in the level.
    pub fn classify(&self, j: usize, m: &M) -> Option<usize> {
        self.lookup[j].get(m).map(|&x| self.colimit.class(j, x))
    }

    /// Least member `(j, m)` of a class.
    pub fn representative(&self, class: usize) -> (usize, &M) {
        let (j, x) = self.colimit.representative(class);
        (j, &self.homs[j][x])
    }
}

/// `Hom(Y, Ind(X_j)) = Colim_j Hom(Y, X_j)` with post-composition as
/// transition maps.
pub fn hom_into_ind<C>(cat: &C, y: &C::Obj, x: &IndObject<C::Obj, C::Mor>) -> Result<HomColimit<C::Mor>>
where
    C: Category + ?Sized,
{
    let index = x.index();
    let mut homs = Vec::with_capacity(x.len());
    let mut lookup = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let h = cat.hom(y, x.object(j))?;
        lookup.push(h.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect::<HashMap<_, _>>());
        homs.push(h);
    }
    let mut arrows = Vec::new();
    for t in 0..index.morphism_count() {
        if index.is_identity(t) {
            continue;
        }
        let (a, b) = (index.dom(t), index.cod(t));
        let mut table = Vec::with_capacity(homs[a].len());
        for m in &homs[a] {
            let pushed = cat.compose(x.map(t), m);
            let k = lookup[b]
                .get(&pushed)
                .ok_or_else(|| Error::Internal("Hom-set not closed under post-composition".into()))?;
            table.push(*k);
        }
        arrows.push(Arrow { from: a, to: b, table });
    }
    let sizes = homs.iter().map(Vec::len).collect();
    let colimit = colimit_of(&Transitions { sizes, arrows });
    Ok(HomColimit { homs, lookup, colimit })
}

fn check_base(p: &SetDiagram, expected: Variance) -> Result<()> {
    if p.variance() != expected {
        return Err(Error::MalformedDiagram(match expected {
            Variance::Contravariant => "a presheaf must be contravariant".into(),
            Variance::Covariant => "a copresheaf must be covariant".into(),
        }));
    }
    Ok(())
}

/// `P(Pro(X_i)) = Colim_i P(X_i)` for a presheaf `P` on a finite base.
pub fn extend_presheaf(p: &SetDiagram, x: &ProObject<usize, usize>) -> Result<ColimitResult> {
    check_base(p, Variance::Contravariant)?;
    let index = x.index();
    // X(t): X_j -> X_i for t: i -> j, so P(X(t)): P(X_i) -> P(X_j)
    let arrows = (0..index.morphism_count())
        .filter(|&t| !index.is_identity(t))
        .map(|t| Arrow {
            from: index.dom(t),
            to: index.cod(t),
            table: p.map(*x.map(t)).to_vec(),
        })
        .collect();
    let sizes = x.objects().iter().map(|&o| p.sizes()[o]).collect();
    Ok(colimit_of(&Transitions { sizes, arrows }))
}

/// The map `P(B) -> P(A)` induced by a pro-morphism `A -> B`.
///
/// Component `j` of the morphism is represented by some `m: A_i -> B_j`,
/// and an element of `P(B_j)` goes to the class of `P(m)` of it.
pub fn extend_presheaf_on_morphism(p: &SetDiagram, f: &ProMorphism<usize, usize>) -> Result<Vec<usize>> {
    check_base(p, Variance::Contravariant)?;
    let pa = extend_presheaf(p, f.source())?;
    let pb = extend_presheaf(p, f.target())?;
    let mut out = Vec::with_capacity(pb.class_count());
    for class in 0..pb.class_count() {
        let (j, e) = pb.representative(class);
        let comp = f.component(j);
        out.push(pa.class(comp.index, p.map(comp.map)[e]));
    }
    Ok(out)
}

/// `Q(Ind(X_i)) = Colim_i Q(X_i)` for a copresheaf `Q` on a finite base.
pub fn extend_copresheaf(q: &SetDiagram, x: &IndObject<usize, usize>) -> Result<ColimitResult> {
    check_base(q, Variance::Covariant)?;
    let index = x.index();
    let arrows = (0..index.morphism_count())
        .filter(|&t| !index.is_identity(t))
        .map(|t| Arrow {
            from: index.dom(t),
            to: index.cod(t),
            table: q.map(*x.map(t)).to_vec(),
        })
        .collect();
    let sizes = x.objects().iter().map(|&o| q.sizes()[o]).collect();
    Ok(colimit_of(&Transitions { sizes, arrows }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::FinCategory;

    fn representable(c: &Arc<FinCategory>, z: usize) -> SetDiagram {
        // y(Z)(a) = Hom(a, Z), with P(t) = - . t
        let n = c.object_count();
        let sizes: Vec<usize> = (0..n).map(|a| c.hom(a, z).len()).collect();
        let maps = (0..c.morphism_count())
            .map(|t| {
                let (a, b) = (c.dom(t), c.cod(t));
                c.hom(b, z)
                    .iter()
                    .map(|&h| {
                        let ht = c.compose(h, t);
                        c.hom(a, z).iter().position(|&k| k == ht).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetDiagram::new(c.clone(), sizes, maps, Variance::Contravariant).unwrap()
    }

    #[test]
    fn representable_on_constant_pro_object() {
        let c = Arc::new(FinCategory::finite_sets(&[1, 2, 3]).unwrap());
        for w in 0..3 {
            for z in 0..3 {
                let p = representable(&c, z);
                let x = ProObject::constant(&*c, w);
                assert_eq!(extend_presheaf(&p, &x).unwrap().class_count(), c.hom(w, z).len());
            }
        }
    }

    #[test]
    fn hom_into_constant_is_base_hom() {
        let c = FinCategory::finite_sets(&[0, 1, 2]).unwrap();
        for y in 0..3 {
            for w in 0..3 {
                let x = IndObject::constant(&c, w);
                let h = hom_into_ind(&c, &y, &x).unwrap();
                assert_eq!(h.class_count(), c.hom(y, w).len());
            }
        }
    }

    #[test]
    fn empty_source_has_exactly_one_class() {
        // s0 is the empty set; the chain s1 -> s2 is nonempty
        let c = FinCategory::finite_sets(&[0, 1, 2]).unwrap();
        let step = c.hom(1, 2)[0];
        let x = IndObject::chain(&c, vec![1, 2], vec![step]).unwrap();
        assert_eq!(hom_into_ind(&c, &0, &x).unwrap().class_count(), 1);
    }
}
