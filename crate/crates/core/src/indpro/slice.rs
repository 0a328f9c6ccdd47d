//! Systems in a slice category compared with systems of the base category
//! equipped with a structure map to the slicing object.

use crate::category::{Category, Over, OverMor, OverObj};
use crate::error::Result;

use super::{compose_ind, compose_pro, hom_ind, hom_pro, ind_morphism, pro_morphism};
use super::{IndMorphism, IndObject, ProMorphism, ProObject};

/// Hom-set sizes on the two sides and whether forgetting the triangles
/// is a bijection between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceTransport {
    /// Morphisms computed in the slice category.
    pub in_slice: usize,
    /// Morphisms of the underlying systems that commute with the
    /// structure maps.
    pub over_base: usize,
    pub bijective: bool,
}

type SliceInd<C> = IndObject<OverObj<<C as Category>::Obj, <C as Category>::Mor>, OverMor<<C as Category>::Obj, <C as Category>::Mor>>;
type SlicePro<C> = ProObject<OverObj<<C as Category>::Obj, <C as Category>::Mor>, OverMor<<C as Category>::Obj, <C as Category>::Mor>>;

/// The underlying system of a system over `x`, with its structure map to
/// the constant system on `x`.
pub fn underlying_ind<C>(
    base: &C,
    x: &C::Obj,
    a: &SliceInd<C>,
) -> Result<(IndObject<C::Obj, C::Mor>, IndMorphism<C::Obj, C::Mor>)>
where
    C: Category + ?Sized,
{
    let objects = a.objects().iter().map(|o| o.source.clone()).collect();
    let maps = a.maps().iter().map(|m| m.map.clone()).collect();
    let u = IndObject::new(base, a.index().clone(), objects, maps)?;
    let comps: Vec<_> = a.objects().iter().map(|o| (0, o.arrow.clone())).collect();
    let p = ind_morphism(base, &u, &IndObject::constant(base, x.clone()), &comps)?;
    Ok((u, p))
}

pub fn underlying_pro<C>(
    base: &C,
    x: &C::Obj,
    a: &SlicePro<C>,
) -> Result<(ProObject<C::Obj, C::Mor>, ProMorphism<C::Obj, C::Mor>)>
where
    C: Category + ?Sized,
{
    let n = a.len();
    let objects = a.objects().iter().map(|o| o.source.clone()).collect();
    let maps = (0..a.index().morphism_count()).map(|t| a.map(t).map.clone()).collect();
    let u = ProObject::new(base, a.index().clone(), objects, maps)?;
    debug_assert!(n > 0);
    let p = pro_morphism(base, &u, &ProObject::constant(base, x.clone()), &[(0, a.object(0).arrow.clone())])?;
    Ok((u, p))
}

fn compare<T: PartialEq>(forgotten: &[T], over: &[T]) -> SliceTransport {
    let injective = forgotten
        .iter()
        .enumerate()
        .all(|(k, f)| !forgotten[..k].contains(f));
    let onto = over.iter().all(|g| forgotten.contains(g));
    let inside = forgotten.iter().all(|f| over.contains(f));
    SliceTransport {
        in_slice: forgotten.len(),
        over_base: over.len(),
        bijective: injective && onto && inside,
    }
}

/// Compares `Hom(a, b)` computed in `Ind(C/x)` with the morphisms of
/// underlying systems in `Ind(C)` that commute with the maps to `x`.
pub fn slice_transport_ind<C>(base: &C, x: &C::Obj, a: &SliceInd<C>, b: &SliceInd<C>) -> Result<SliceTransport>
where
    C: Category + ?Sized,
{
    let over = Over::new(base, x.clone());
    let (ua, p) = underlying_ind(base, x, a)?;
    let (ub, q) = underlying_ind(base, x, b)?;
    let forgotten = hom_ind(&over, a, b)?
        .iter()
        .map(|phi| {
            let comps: Vec<_> = phi.components().iter().map(|c| (c.index, c.map.map.clone())).collect();
            ind_morphism(base, &ua, &ub, &comps)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut commuting = Vec::new();
    for phi in hom_ind(base, &ua, &ub)? {
        if compose_ind(base, &phi, &q)? == p {
            commuting.push(phi);
        }
    }
    Ok(compare(&forgotten, &commuting))
}

/// The dual comparison for `Pro(C/x)` and `Pro(C)/x`.
pub fn slice_transport_pro<C>(base: &C, x: &C::Obj, a: &SlicePro<C>, b: &SlicePro<C>) -> Result<SliceTransport>
where
    C: Category + ?Sized,
{
    let over = Over::new(base, x.clone());
    let (ua, p) = underlying_pro(base, x, a)?;
    let (ub, q) = underlying_pro(base, x, b)?;
    let forgotten = hom_pro(&over, a, b)?
        .iter()
        .map(|phi| {
            let comps: Vec<_> = phi.components().iter().map(|c| (c.index, c.map.map.clone())).collect();
            pro_morphism(base, &ua, &ub, &comps)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut commuting = Vec::new();
    for phi in hom_pro(base, &ua, &ub)? {
        if compose_pro(base, &phi, &q)? == p {
            commuting.push(phi);
        }
    }
    Ok(compare(&forgotten, &commuting))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::{bundled, DefCategory, DefMap};
    use crate::fincat::FinCategory;

    #[test]
    fn constant_slice_systems_over_finite_sets() {
        let c = FinCategory::finite_sets(&[1, 2, 3]).unwrap();
        let x = 1;
        let over = Over::new(&c, x);
        for f in c.hom(2, x).iter().copied() {
            for g in c.hom(1, x).iter().copied() {
                let a = IndObject::constant(&over, over.object(f).unwrap());
                let b = IndObject::constant(&over, over.object(g).unwrap());
                let r = slice_transport_ind(&c, &x, &a, &b).unwrap();
                let direct = c.hom(2, 1).iter().filter(|&&h| c.compose(g, h) == f).count();
                assert_eq!(r.in_slice, direct);
                assert!(r.bijective);
                let a = ProObject::constant(&over, over.object(f).unwrap());
                let b = ProObject::constant(&over, over.object(g).unwrap());
                assert!(slice_transport_pro(&c, &x, &a, &b).unwrap().bijective);
            }
        }
    }

    #[test]
    fn inclusion_chain_over_a_definable_set() {
        let cat = DefCategory::new(bundled::s3());
        let m = cat.full(1).unwrap();
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let over = Over::new(&cat, m.clone());
        let oa = over.object(DefMap::inclusion(&a, &m).unwrap()).unwrap();
        let om = over.object(DefMap::identity(&m)).unwrap();
        let step = over.morphism(&oa, &om, DefMap::inclusion(&a, &m).unwrap()).unwrap();
        let chain = IndObject::chain(&over, vec![oa.clone(), om.clone()], vec![step]).unwrap();
        let r = slice_transport_ind(&cat, &m, &chain, &chain).unwrap();
        assert!(r.bijective);
        assert_eq!(r.in_slice, 1);
    }
}
