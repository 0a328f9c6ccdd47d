//! The isomorphism criterion for a morphism with a section, in its
//! general form and in the kernel-pair and image forms available for
//! definable sets.

use crate::category::{Category, Opposite};
use crate::defsets::{DefCategory, DefMap, DefSet};
use crate::error::{Error, Result};

use super::{compose_ind, compose_pro, identity_ind, identity_pro, ind_morphism, pro_morphism};
use super::{IndMorphism, IndObject, ProMorphism, ProObject};

/// Output of a successful criterion check.
#[derive(Clone, Debug)]
pub struct IsoCertificate<O, M> {
    /// `g` lifted to a morphism `Y -> Ind(X_i)`.
    pub inverse: IndMorphism<O, M>,
    /// The level holding the section `g: Y -> X_0`.
    pub zero: usize,
    /// The system morphism `t_i` used at each level.
    pub t: Vec<usize>,
    /// Levels reachable from the zero level, with `(r, s)` where
    /// `r: X_0 -> X_i` and `s = t_i . r` realize `s . g . f_i = t_i`.
    pub replay: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ProIsoCertificate<O, M> {
    /// `g` lifted to a morphism `Pro(X_i) -> Y`.
    pub inverse: ProMorphism<O, M>,
    pub zero: usize,
    pub t: Vec<usize>,
}

fn constant_target<O: Clone + PartialEq, M: Clone + PartialEq>(f: &IndMorphism<O, M>) -> Result<O> {
    if !f.target().is_constant() {
        return Err(Error::MalformedDiagram("the target must be a single object".into()));
    }
    Ok(f.target().object(0).clone())
}

/// Checks that `f: Ind(X_i) -> Y` is an isomorphism with inverse `g`,
/// given `g: Y -> X_zero` with `f_zero . g = id` and, for every level `i`,
/// a system morphism `t[i]` out of `i` such that any two maps into `X_i`
/// identified by `f_i` are identified by `X(t[i])`.
///
/// The test pairs come from [`Category::separating_pair`]. After the
/// condition holds, the argument is replayed on the levels reachable from
/// `zero`, and both composites are compared with identities.
pub fn check_iso_lemma<C>(
    cat: &C,
    f: &IndMorphism<C::Obj, C::Mor>,
    g: &C::Mor,
    zero: usize,
    t: &[usize],
) -> Result<IsoCertificate<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    let x = f.source();
    let y = constant_target(f)?;
    let index = x.index();
    if zero >= x.len() || t.len() != x.len() {
        return Err(Error::MalformedDiagram("one system morphism per level expected".into()));
    }
    if cat.dom(g) != y || cat.cod(g) != *x.object(zero) {
        return Err(Error::MalformedDiagram("g must run from the target to the zero level".into()));
    }
    let fi = |i: usize| &f.component(i).map;
    if cat.compose(fi(zero), g) != cat.identity(&y) {
        return Err(Error::SectionMismatch);
    }
    for (i, &ti) in t.iter().enumerate() {
        if index.dom(ti) != i {
            return Err(Error::MalformedDiagram(format!("t at level {i} does not start there")));
        }
        if let Some((h1, h2)) = cat.separating_pair(fi(i), x.map(ti))? {
            return Err(Error::ConditionFails {
                index: i,
                detail: format!("{h1:?} and {h2:?} are identified by f_{i} but not by t_{i}"),
            });
        }
    }

    let reach = index.cofinal_restriction(zero)?;
    let g_fi = |i: usize| cat.compose(g, fi(i));
    let mut replay = Vec::with_capacity(reach.objects.len());
    for &i in &reach.objects {
        let r = index.hom(zero, i)[0];
        let s = index.compose(t[i], r);
        if cat.compose(x.map(s), &g_fi(i)) != *x.map(t[i]) {
            return Err(Error::Internal(format!("s . g . f_{i} differs from t_{i}")));
        }
        replay.push((i, r, s));
    }

    let yc = f.target().clone();
    let inverse = ind_morphism(cat, &yc, x, &[(zero, g.clone())])?;
    if compose_ind(cat, f, &inverse)? != identity_ind(cat, x)? {
        return Err(Error::Internal("g . f is not the identity".into()));
    }
    if compose_ind(cat, &inverse, f)? != identity_ind(cat, &yc)? {
        return Err(Error::Internal("f . g is not the identity".into()));
    }
    Ok(IsoCertificate {
        inverse,
        zero,
        t: t.to_vec(),
        replay,
    })
}

/// The dual criterion for `f: Y -> Pro(X_i)` and `g: X_zero -> Y` with
/// `g . f_zero = id`, checked as the ind criterion of the opposite
/// category. Test pairs are searched exhaustively, so the base must list
/// its objects.
pub fn check_iso_lemma_pro<C>(
    cat: &C,
    f: &ProMorphism<C::Obj, C::Mor>,
    g: &C::Mor,
    zero: usize,
    t: &[usize],
) -> Result<ProIsoCertificate<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    let op = Opposite(cat);
    let cert = check_iso_lemma(&op, f.as_ind_op(), g, zero, t)?;
    let inverse = pro_morphism(cat, f.target(), f.source(), &[(zero, g.clone())])?;
    Ok(ProIsoCertificate {
        inverse,
        zero,
        t: cert.t,
    })
}

/// Pairs of positions identified by a map.
fn kernel_of(f: &DefMap) -> Vec<(usize, usize)> {
    f.kernel()
}

/// The kernel-pair form: at each level the least system morphism `t` out
/// of `i` with `X_i ×_{X_j} X_i = X_i ×_Y X_i`, then the general check.
pub fn check_iso_pullback(
    cat: &DefCategory,
    f: &IndMorphism<DefSet, DefMap>,
    g: &DefMap,
    zero: usize,
) -> Result<IsoCertificate<DefSet, DefMap>> {
    let x = f.source();
    let t = kernel_witnesses(x, |i| kernel_of(&f.component(i).map))?;
    check_iso_lemma(cat, f, g, zero, &t)
}

/// Least system morphism out of each level whose kernel pair equals the
/// given one.
pub(crate) fn kernel_witnesses(
    x: &IndObject<DefSet, DefMap>,
    kernel: impl Fn(usize) -> Vec<(usize, usize)>,
) -> Result<Vec<usize>> {
    let index = x.index();
    (0..x.len())
        .map(|i| {
            let target = kernel(i);
            index
                .out_of(i)
                .find(|&t| kernel_of(x.map(t)) == target)
                .ok_or(Error::NoWitness(i))
        })
        .collect()
}

/// Least system morphism into each level (for a pro-object: an index
/// morphism out of `i`) whose image equals the given one.
pub(crate) fn image_witnesses(x: &ProObject<DefSet, DefMap>, image: impl Fn(usize) -> DefSet) -> Result<Vec<usize>> {
    let index = x.index();
    (0..x.len())
        .map(|i| {
            let target = image(i);
            index
                .out_of(i)
                .find(|&t| x.map(t).image() == target)
                .ok_or(Error::NoWitness(i))
        })
        .collect()
}

/// The image form for `f: Y -> Pro(X_i)` and `g: X_zero -> Y`: at each
/// level the least system map `X_j -> X_i` with the same image as `f_i`,
/// then a check that both composites are identities.
pub fn check_iso_pushout(
    cat: &DefCategory,
    f: &ProMorphism<DefSet, DefMap>,
    g: &DefMap,
    zero: usize,
) -> Result<ProIsoCertificate<DefSet, DefMap>> {
    let x = f.target();
    if !f.source().is_constant() {
        return Err(Error::MalformedDiagram("the source must be a single object".into()));
    }
    let y = f.source().object(0).clone();
    if zero >= x.len() || *g.domain() != *x.object(zero) || *g.codomain() != y {
        return Err(Error::MalformedDiagram("g must run from the zero level to the source".into()));
    }
    if f.component(zero).map.then(g) != DefMap::identity(&y) {
        return Err(Error::SectionMismatch);
    }
    let t = image_witnesses(x, |i| f.component(i).map.image())?;
    let inverse = pro_morphism(cat, x, f.source(), &[(zero, g.clone())])?;
    if compose_pro(cat, f, &inverse)? != identity_pro(cat, f.source())? {
        return Err(Error::Internal("g . f is not the identity".into()));
    }
    if compose_pro(cat, &inverse, f)? != identity_pro(cat, x)? {
        return Err(Error::Internal("f . g is not the identity".into()));
    }
    Ok(ProIsoCertificate { inverse, zero, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::{bundled, increasing_union, type_system};
    use crate::fincat::FinCategory;
    use crate::indpro::{ind_morphism, pro_morphism};

    #[test]
    fn identity_on_constant_system() {
        let c = FinCategory::finite_sets(&[1, 2]).unwrap();
        let x = IndObject::constant(&c, 1);
        let id = c.identity(1);
        let f = ind_morphism(&c, &x, &x, &[(0, id)]).unwrap();
        let cert = check_iso_lemma(&c, &f, &id, 0, &[x.index().identity(0)]).unwrap();
        assert_eq!(cert.inverse, identity_ind(&c, &x).unwrap());
    }

    #[test]
    fn inclusion_chain_with_identity_section() {
        let cat = DefCategory::new(bundled::s3());
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let m = cat.full(1).unwrap();
        let x = increasing_union(&cat, &[a.clone(), m.clone()]).unwrap();
        let y = IndObject::constant(&cat, m.clone());
        let inc = DefMap::inclusion(&a, &m).unwrap();
        let id = DefMap::identity(&m);
        let f = ind_morphism(&cat, &x, &y, &[(0, inc), (0, id.clone())]).unwrap();
        let cert = check_iso_pullback(&cat, &f, &id, 1).unwrap();
        assert_eq!(cert.t.len(), 2);
    }

    #[test]
    fn violated_condition_is_reported() {
        // a constant two-point system mapped onto a point: f_0 . g = id but
        // the identity never identifies the two points
        let cat = DefCategory::new(bundled::s3());
        let m = cat.full(1).unwrap();
        let pt = cat.full(0).unwrap();
        let x = IndObject::constant(&cat, m.clone());
        let y = IndObject::constant(&cat, pt.clone());
        let to_pt = cat.hom(&m, &pt).unwrap()[0].clone();
        let f = ind_morphism(&cat, &x, &y, &[(0, to_pt)]).unwrap();
        let g = cat.hom(&pt, &m).unwrap()[0].clone();
        let id_t = x.index().identity(0);
        assert!(matches!(
            check_iso_lemma(&cat, &f, &g, 0, &[id_t]),
            Err(Error::ConditionFails { index: 0, .. })
        ));
        assert!(matches!(check_iso_pullback(&cat, &f, &g, 0), Err(Error::NoWitness(0))));
    }

    #[test]
    fn section_mismatch() {
        let cat = DefCategory::new(bundled::s3());
        let m = cat.full(1).unwrap();
        let x = IndObject::constant(&cat, m.clone());
        let homs = cat.hom(&m, &m).unwrap();
        let swap = homs.iter().find(|h| h.table() == [1, 0]).unwrap().clone();
        let f = ind_morphism(&cat, &x, &x, &[(0, DefMap::identity(&m))]).unwrap();
        assert!(matches!(
            check_iso_pullback(&cat, &f, &swap, 0),
            Err(Error::SectionMismatch)
        ));
    }

    #[test]
    fn type_chain_with_intersection_source() {
        let cat = DefCategory::new(bundled::s3());
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let m = cat.full(1).unwrap();
        let x = type_system(&cat, &[m.clone(), a.clone()]).unwrap();
        let y = ProObject::constant(&cat, a.clone());
        let inc = DefMap::inclusion(&a, &m).unwrap();
        let id = DefMap::identity(&a);
        let f = pro_morphism(&cat, &y, &x, &[(0, inc), (0, id.clone())]).unwrap();
        let cert = check_iso_pushout(&cat, &f, &id, 1).unwrap();
        assert_eq!(cert.zero, 1);
    }

    #[test]
    fn shrinking_images_have_no_witness() {
        // Y = {a, b} mapped identically into the constant system on M, but
        // the section goes through a level whose system maps never reach
        // the image: here the image of f_0 is a proper subset of a
        // constant level, so no system map matches it
        let cat = DefCategory::new(bundled::s3());
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let m = cat.full(1).unwrap();
        let x = ProObject::constant(&cat, m.clone());
        let y = ProObject::constant(&cat, a.clone());
        let inc = DefMap::inclusion(&a, &m).unwrap();
        let f = pro_morphism(&cat, &y, &x, &[(0, inc)]).unwrap();
        let g = cat.hom(&m, &a).unwrap()[0].clone();
        assert!(matches!(check_iso_pushout(&cat, &f, &g, 0), Err(Error::NoWitness(0))));
    }

    #[test]
    fn dual_lemma_over_finite_sets() {
        let c = FinCategory::finite_sets(&[1, 2]).unwrap();
        let x = ProObject::constant(&c, 1);
        let id = c.identity(1);
        let f = pro_morphism(&c, &x, &x, &[(0, id)]).unwrap();
        let t0 = x.index().identity(0);
        assert!(check_iso_lemma_pro(&c, &f, &id, 0, &[t0]).is_ok());
        let swap = *c.hom(1, 1).iter().find(|&&h| h != id && c.compose(h, h) == id).unwrap();
        assert!(matches!(
            check_iso_lemma_pro(&c, &f, &swap, 0, &[t0]),
            Err(Error::SectionMismatch)
        ));
    }
}
