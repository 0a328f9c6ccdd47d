//! Morphisms of ind-definable sets from bijections and graphs on points.

use crate::defsets::{DefCategory, DefIndObject, DefMap, DefSet};
use crate::error::{Error, Result};
use crate::indpro::{
    build_iso_from_points_ind, compose_ind, identity_ind, ind_morphism, IndInverse, IndMorphism, IndObject,
};

use super::eval::{induced_point_map_ind, points_ind};

/// An ind-definable subset of `x × y`: a system of subsets of `x × y`
/// whose transition maps are inclusions.
#[derive(Clone, Debug)]
pub struct GraphSubobject {
    x: DefSet,
    y: DefSet,
    system: DefIndObject,
}

impl GraphSubobject {
    pub fn new(cat: &DefCategory, x: DefSet, y: DefSet, system: DefIndObject) -> Result<Self> {
        let arity = x.arity() + y.arity();
        for (i, r) in system.objects().iter().enumerate() {
            let inside = r.members().iter().all(|&c| {
                let (a, b) = cat.split(c, y.arity());
                x.contains(a) && y.contains(b)
            });
            if r.arity() != arity || !inside {
                return Err(Error::MalformedDiagram(format!("level {i} is not a subset of X × Y")));
            }
        }
        for t in 0..system.index().morphism_count() {
            let m = system.map(t);
            if DefMap::inclusion(m.domain(), m.codomain()).as_ref() != Some(m) {
                return Err(Error::MalformedDiagram(format!("system map {t} is not an inclusion")));
            }
        }
        Ok(Self { x, y, system })
    }

    /// A single definable subset of `x × y`.
    pub fn constant(cat: &DefCategory, x: DefSet, y: DefSet, r: DefSet) -> Result<Self> {
        let system = IndObject::constant(cat, r);
        Self::new(cat, x, y, system)
    }

    pub fn x(&self) -> &DefSet {
        &self.x
    }

    pub fn y(&self) -> &DefSet {
        &self.y
    }

    pub fn system(&self) -> &DefIndObject {
        &self.system
    }

    /// Codes of the points, which for an inclusion system form the union
    /// of the levels.
    pub fn points(&self) -> Vec<u32> {
        let pts = points_ind(&self.system);
        let mut codes: Vec<u32> = (0..pts.class_count())
            .map(|c| {
                let (i, k) = pts.representative(c);
                self.system.object(i).members()[k]
            })
            .collect();
        codes.sort_unstable();
        codes
    }
}

/// The graph of a morphism between two single definable sets.
pub fn point_graph(cat: &DefCategory, f: &IndMorphism<DefSet, DefMap>) -> Result<GraphSubobject> {
    if !f.source().is_constant() || !f.target().is_constant() {
        return Err(Error::Unsupported("point graphs of non-constant systems".into()));
    }
    let m = &f.component(0).map;
    GraphSubobject::constant(cat, m.domain().clone(), m.codomain().clone(), cat.graph(m))
}

/// Result of replaying the argument that a morphism bijective on points
/// is invertible.
#[derive(Clone, Debug)]
pub struct PropMorphisms {
    pub inverse: IndMorphism<DefSet, DefMap>,
    /// For each target level `j`, the inverse built for the pulled-back
    /// system over `Y_j`.
    pub levels: Vec<IndInverse>,
    /// Points of each pulled-back system.
    pub pullback_points: Vec<usize>,
}

/// Inverts `f: X -> Y` between ind-definable sets that is bijective on
/// points.
///
/// All levels of `Y` are compared in a level `Y_K` carrying a total
/// cocone. For each level `j` the system `X_i ×_{Y_K} Y_j` maps to `Y_j`;
/// its points are checked against the pullback of the point sets, and its
/// inverse is built by [`build_iso_from_points_ind`]. The inverses are
/// assembled into `Y -> X` and both composites are compared with
/// identities.
pub fn verify_prop_morphisms(cat: &DefCategory, f: &IndMorphism<DefSet, DefMap>) -> Result<PropMorphisms> {
    let (x, y) = (f.source(), f.target());
    let table = induced_point_map_ind(f)?;
    let ypts = points_ind(y);
    let mut seen = vec![false; ypts.class_count()];
    for &v in &table {
        seen[v] = true;
    }
    if table.len() != ypts.class_count() || seen.iter().any(|s| !s) {
        return Err(Error::NotBijective(format!(
            "{} points map to {} points",
            table.len(),
            ypts.class_count()
        )));
    }
    let (_, legs) = y
        .index()
        .total_cocone()
        .ok_or_else(|| Error::Internal("a filtering index without a total cocone".into()))?;
    let to_k: Vec<DefMap> = (0..x.len())
        .map(|i| {
            let c = f.component(i);
            c.map.then(y.map(legs[c.index]))
        })
        .collect();
    let xpts = points_ind(x);

    let mut levels = Vec::with_capacity(y.len());
    let mut pullback_points = Vec::with_capacity(y.len());
    let mut comps = Vec::with_capacity(y.len());
    for j in 0..y.len() {
        let yj = y.object(j);
        let yk = y.map(legs[j]);
        let mut objects = Vec::with_capacity(x.len());
        let mut firsts = Vec::with_capacity(x.len());
        let mut seconds = Vec::with_capacity(x.len());
        for m in &to_k {
            let (p, p1, p2) = cat.fiber_product(m, yk)?;
            objects.push(p);
            firsts.push(p1);
            seconds.push(p2);
        }
        let index = x.index();
        let mut maps = Vec::with_capacity(index.morphism_count());
        for t in 0..index.morphism_count() {
            let (a, b) = (index.dom(t), index.cod(t));
            let xt = x.map(t);
            let table: Vec<u32> = (0..objects[a].len())
                .map(|p| {
                    let xa = xt.apply_at(firsts[a].table()[p] as usize);
                    let yb = yj.members()[seconds[a].table()[p] as usize];
                    objects[b].position(cat.concat(xa, yb, yj.arity())).expect("pullback is functorial") as u32
                })
                .collect();
            maps.push(cat.map(&objects[a], &objects[b], table)?);
        }
        let pulled = IndObject::new(cat, index.clone(), objects, maps)?;

        // points of X ×_Y Y_j computed on point sets
        let expected = (0..yj.len())
            .map(|k| {
                let target = ypts.class(j, k);
                table.iter().filter(|&&v| v == target).count()
            })
            .sum::<usize>();
        let got = points_ind(&pulled).class_count();
        if got != expected {
            return Err(Error::Internal(format!(
                "level {j}: {got} points in the pulled-back system, {expected} expected"
            )));
        }
        pullback_points.push(got);

        let target = IndObject::constant(cat, yj.clone());
        let comps_j: Vec<_> = seconds.iter().map(|p2| (0, p2.clone())).collect();
        let q = ind_morphism(cat, &pulled, &target, &comps_j)?;
        let inv = build_iso_from_points_ind(cat, &q)?;
        let z = inv.certificate.zero;
        comps.push((z, inv.g.then(&firsts[z])));
        levels.push(inv);
    }
    let inverse = ind_morphism(cat, y, x, &comps)?;
    if compose_ind(cat, f, &inverse)? != identity_ind(cat, x)? {
        return Err(Error::Internal("g . f is not the identity".into()));
    }
    if compose_ind(cat, &inverse, f)? != identity_ind(cat, y)? {
        return Err(Error::Internal("f . g is not the identity".into()));
    }
    let back = induced_point_map_ind(&inverse)?;
    if (0..xpts.class_count()).any(|c| back[table[c]] != c) {
        return Err(Error::Internal("the inverse is not the inverse on points".into()));
    }
    Ok(PropMorphisms {
        inverse,
        levels,
        pullback_points,
    })
}

/// The morphism `X -> Y` whose graph on points is `R`.
///
/// `R` must be the graph of a function on points. Its projection to `X`
/// is then bijective on points and is inverted by
/// [`verify_prop_morphisms`]; composing with the projection to `Y` gives
/// the morphism, whose point map is compared with `R`.
pub fn graph_to_morphism(cat: &DefCategory, r: &GraphSubobject) -> Result<IndMorphism<DefSet, DefMap>> {
    let (x, y) = (r.x(), r.y());
    let points = r.points();
    let mut value = vec![None; x.len()];
    for &c in &points {
        let (a, b) = cat.split(c, y.arity());
        let k = x.position(a).expect("inside X");
        if value[k].replace(b).is_some() {
            return Err(Error::NotAFunction(format!(
                "{} has more than one value",
                cat.tuple_label(a, x.arity())
            )));
        }
    }
    if let Some(k) = value.iter().position(Option::is_none) {
        return Err(Error::NotAFunction(format!(
            "{} has no value",
            cat.tuple_label(x.members()[k], x.arity())
        )));
    }

    let sys = r.system();
    let first: Vec<usize> = (0..x.arity()).collect();
    let second: Vec<usize> = (x.arity()..x.arity() + y.arity()).collect();
    let p_comps = sys
        .objects()
        .iter()
        .map(|l| Ok((0, cat.projection(l, &first, x)?)))
        .collect::<Result<Vec<_>>>()?;
    let q_comps = sys
        .objects()
        .iter()
        .map(|l| Ok((0, cat.projection(l, &second, y)?)))
        .collect::<Result<Vec<_>>>()?;
    let xc = IndObject::constant(cat, x.clone());
    let yc = IndObject::constant(cat, y.clone());
    let p = ind_morphism(cat, sys, &xc, &p_comps)?;
    let q = ind_morphism(cat, sys, &yc, &q_comps)?;
    let inv = verify_prop_morphisms(cat, &p)?;
    let f = compose_ind(cat, &inv.inverse, &q)?;
    let m = &f.component(0).map;
    if (0..x.len()).any(|k| Some(m.apply_at(k)) != value[k]) {
        return Err(Error::Internal("the built morphism does not have graph R".into()));
    }
    Ok(f)
}
