//! Seeded random systems and morphisms of definable sets.
//!
//! Every generator draws from the supplied RNG only, so a fixed seed
//! reproduces the same sequence of samples.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::defsets::{increasing_union, type_system, DefCategory, DefIndObject, DefMap, DefProObject, DefSet};
use crate::error::{Error, Result};
use crate::indpro::{ind_morphism, pro_morphism, IndMorphism, IndObject, ProMorphism, ProObject};
use crate::points::{induced_point_map_ind, induced_point_map_pro, points_ind, points_pro};

/// Definable sets used by the random systems: all unary sets, and the
/// binary ones when there are at most 16 of them.
pub fn candidate_sets(cat: &DefCategory) -> Result<Vec<DefSet>> {
    let mut out = cat.enumerate(1)?;
    let binary = cat.enumerate(2)?;
    if binary.len() <= 16 {
        out.extend(binary);
    }
    Ok(out)
}

fn pick<'a, R: Rng>(rng: &mut R, sets: &'a [DefSet]) -> &'a DefSet {
    sets.choose(rng).expect("candidate sets are never empty")
}

fn same_arity(sets: &[DefSet], arity: usize) -> Vec<DefSet> {
    sets.iter().filter(|s| s.arity() == arity).cloned().collect()
}

/// A constant system or an increasing chain of one to three unions.
pub fn random_ind<R: Rng>(cat: &DefCategory, rng: &mut R, sets: &[DefSet]) -> Result<DefIndObject> {
    let first = pick(rng, sets).clone();
    if rng.gen_ratio(1, 3) {
        return Ok(IndObject::constant(cat, first));
    }
    let pool = same_arity(sets, first.arity());
    let mut chain = vec![first];
    for _ in 0..rng.gen_range(1..=2) {
        let next = chain.last().unwrap().union(pick(rng, &pool));
        chain.push(next);
    }
    increasing_union(cat, &chain)
}

/// A constant system or a decreasing chain of one to three intersections.
pub fn random_pro<R: Rng>(cat: &DefCategory, rng: &mut R, sets: &[DefSet]) -> Result<DefProObject> {
    let first = pick(rng, sets).clone();
    if rng.gen_ratio(1, 3) {
        return Ok(ProObject::constant(cat, first));
    }
    let pool = same_arity(sets, first.arity());
    let mut chain = vec![first];
    for _ in 0..rng.gen_range(1..=2) {
        let next = chain.last().unwrap().intersection(pick(rng, &pool));
        chain.push(next);
    }
    type_system(cat, &chain)
}

fn unary_nonempty(cat: &DefCategory) -> Result<Vec<DefSet>> {
    Ok(cat.enumerate(1)?.into_iter().filter(|s| !s.is_empty()).collect())
}

/// `S_0 ⊆ ... ⊆ S_n = top`, each a unary set.
fn ascending<R: Rng>(rng: &mut R, unary: &[DefSet], top: &DefSet, n: usize) -> Vec<DefSet> {
    let mut chain = vec![top.clone()];
    for _ in 0..n {
        let next = chain.last().unwrap().intersection(pick(rng, unary));
        chain.push(next);
    }
    chain.reverse();
    chain
}

/// `top = S_n ⊆ ... ⊆ S_0`, each a unary set.
fn descending<R: Rng>(rng: &mut R, unary: &[DefSet], bottom: &DefSet, n: usize) -> Vec<DefSet> {
    let mut chain = vec![bottom.clone()];
    for _ in 0..n {
        let next = chain.last().unwrap().union(pick(rng, unary));
        chain.push(next);
    }
    chain.reverse();
    chain
}

/// `f: X -> Y` from a chain of levels `S_i` or `S_i × M` with `S_i` growing
/// to a subset of `Y`. Levels with the extra coordinate come first and
/// the coordinate is forgotten at the first plain level.
fn ind_from_shape(
    cat: &DefCategory,
    chain: &[DefSet],
    products: usize,
    y: &DefSet,
) -> Result<IndMorphism<DefSet, DefMap>> {
    let m = cat.full(1)?;
    let objects: Vec<DefSet> = chain
        .iter()
        .enumerate()
        .map(|(i, s)| if i < products { cat.product(s, &m).0 } else { s.clone() })
        .collect();
    let keep = |t: &[usize], wide: bool| if wide { t.to_vec() } else { vec![t[0]] };
    let mut steps = Vec::with_capacity(objects.len().saturating_sub(1));
    for k in 0..objects.len() - 1 {
        let wide = k + 1 < products;
        steps.push(cat.map_fn(&objects[k], &objects[k + 1], |t| keep(t, wide))?);
    }
    let x = IndObject::chain(cat, objects.clone(), steps)?;
    let comps = objects
        .iter()
        .map(|o| Ok((0, cat.map_fn(o, y, |t| vec![t[0]])?)))
        .collect::<Result<Vec<_>>>()?;
    ind_morphism(cat, &x, &IndObject::constant(cat, y.clone()), &comps)
}

/// A morphism from a chain system to a unary set that is bijective on
/// points.
pub fn bijective_ind<R: Rng>(cat: &DefCategory, rng: &mut R) -> Result<IndMorphism<DefSet, DefMap>> {
    let unary = unary_nonempty(cat)?;
    let y = pick(rng, &unary).clone();
    let n = rng.gen_range(0..=2);
    let chain = ascending(rng, &unary, &y, n);
    let products = rng.gen_range(0..=n);
    ind_from_shape(cat, &chain, products, &y)
}

/// A morphism from a chain system to a unary set that is not bijective
/// on points, found by rejection.
pub fn non_bijective_ind<R: Rng>(cat: &DefCategory, rng: &mut R) -> Result<IndMorphism<DefSet, DefMap>> {
    let unary = unary_nonempty(cat)?;
    for _ in 0..100 {
        let y = pick(rng, &unary).clone();
        let n = rng.gen_range(0..=2);
        let (chain, products) = if rng.gen_bool(0.5) {
            // the extra coordinate is never forgotten
            (ascending(rng, &unary, &y, n), n + 1)
        } else {
            let top = y.intersection(pick(rng, &unary));
            (ascending(rng, &unary, &top, n), rng.gen_range(0..=n))
        };
        let f = ind_from_shape(cat, &chain, products, &y)?;
        let table = induced_point_map_ind(&f)?;
        let mut hit = table.clone();
        hit.sort_unstable();
        hit.dedup();
        if table.len() != y.len() || hit.len() != y.len() {
            return Ok(f);
        }
    }
    Err(Error::Unsupported("every unary set has at most one point".into()))
}

/// `f: Y -> X` into a chain system whose levels are `S_i` or the diagonal
/// of `S_i`, with `S_i` shrinking to `bottom`; `f_i` sends `y` to the
/// first coordinate copies.
fn pro_from_shape(
    cat: &DefCategory,
    chain: &[DefSet],
    diagonal: &[bool],
    y: &DefSet,
    first: impl Fn(&[usize]) -> usize,
) -> Result<ProMorphism<DefSet, DefMap>> {
    let objects: Vec<DefSet> = chain
        .iter()
        .zip(diagonal)
        .map(|(s, &d)| if d { cat.diagonal(s) } else { s.clone() })
        .collect();
    let shape = |a: usize, d: bool| if d { vec![a, a] } else { vec![a] };
    let mut steps = Vec::with_capacity(objects.len().saturating_sub(1));
    for k in 0..objects.len() - 1 {
        let to_diag = diagonal[k];
        steps.push(cat.map_fn(&objects[k + 1], &objects[k], |t| shape(t[0], to_diag))?);
    }
    let x = ProObject::chain(cat, objects.clone(), steps)?;
    let comps = objects
        .iter()
        .zip(diagonal)
        .map(|(o, &d)| Ok((0, cat.map_fn(y, o, |t| shape(first(t), d))?)))
        .collect::<Result<Vec<_>>>()?;
    pro_morphism(cat, &ProObject::constant(cat, y.clone()), &x, &comps)
}

/// A morphism from a unary set to a chain system that is bijective on
/// points.
pub fn bijective_pro<R: Rng>(cat: &DefCategory, rng: &mut R) -> Result<ProMorphism<DefSet, DefMap>> {
    let unary = unary_nonempty(cat)?;
    let bottom = pick(rng, &unary).clone();
    let n = rng.gen_range(0..=2);
    let chain = descending(rng, &unary, &bottom, n);
    let diagonal: Vec<bool> = (0..=n).map(|_| rng.gen_bool(0.5)).collect();
    pro_from_shape(cat, &chain, &diagonal, &bottom, |t| t[0])
}

/// A morphism from a definable set to a chain system that is not
/// bijective on points, found by rejection: either the source carries an
/// extra coordinate or it misses part of the intersection.
pub fn non_bijective_pro<R: Rng>(cat: &DefCategory, rng: &mut R) -> Result<ProMorphism<DefSet, DefMap>> {
    let unary = unary_nonempty(cat)?;
    let m = cat.full(1)?;
    for _ in 0..100 {
        let bottom = pick(rng, &unary).clone();
        let n = rng.gen_range(0..=2);
        let chain = descending(rng, &unary, &bottom, n);
        let diagonal: Vec<bool> = (0..=n).map(|_| rng.gen_bool(0.5)).collect();
        let y = if rng.gen_bool(0.5) {
            cat.product(&bottom, &m).0
        } else {
            bottom.intersection(pick(rng, &unary))
        };
        let f = pro_from_shape(cat, &chain, &diagonal, &y, |t| t[0])?;
        let table = induced_point_map_pro(&f)?;
        let families = points_pro(f.target())?.len();
        let mut hit = table.clone();
        hit.sort_unstable();
        hit.dedup();
        if table.len() != families || hit.len() != families {
            return Ok(f);
        }
    }
    Err(Error::Unsupported("every unary set has at most one point".into()))
}

/// Codes of the points of an inclusion system, as the union of its
/// levels is expected to be.
pub fn ind_point_codes(x: &DefIndObject) -> Vec<u32> {
    let pts = points_ind(x);
    let mut out: Vec<u32> = (0..pts.class_count())
        .map(|c| {
            let (i, k) = pts.representative(c);
            x.object(i).members()[k]
        })
        .collect();
    out.sort_unstable();
    out
}

/// Codes of the points of an inclusion pro-system, read at level 0.
pub fn pro_point_codes(x: &DefProObject) -> Result<Vec<u32>> {
    let fams = points_pro(x)?;
    let mut out: Vec<u32> = fams.families().iter().map(|f| x.object(0).members()[f[0]]).collect();
    out.sort_unstable();
    Ok(out)
}
