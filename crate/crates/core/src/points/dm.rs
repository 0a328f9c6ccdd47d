//! The system `d(M)` of pointed definable sets, truncated at an arity
//! bound, and the two Hom computations it supports.

use std::collections::HashMap;
use std::sync::Arc;

use crate::defsets::{DefCategory, DefMap, DefSet};
use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, SizeCaps};
use crate::setval::{colimit_of, limit_of, Arrow, ColimitResult, Transitions, DEFAULT_FAMILY_CAP};

/// Which definable sets enter the index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DmMode {
    /// Every definable set of arity at most the bound.
    Full,
    /// Only single orbits. Every pointed set `(X, a)` receives the
    /// inclusion of `(orbit of a, a)`, so this subsystem has the same
    /// limits and colimits as the full one.
    Orbits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmObject {
    /// Index into [`DmIndex::sets`].
    pub set: usize,
    /// Position of the point among the members of the set.
    pub position: usize,
    /// Code of the point.
    pub point: u32,
}

/// A definable map between two sets of the index, which induces one index
/// morphism `(X, a) -> (Y, f(a))` per point `a` of `X`.
#[derive(Clone, Debug)]
pub struct DmMap {
    pub from: usize,
    pub to: usize,
    pub map: DefMap,
}

/// Pairs `(X, a)` with `X` definable of arity at most `bound` and `a` a
/// point of `X`; morphisms `(X, a) -> (Y, b)` are the definable maps
/// `f: X -> Y` with `f(a) = b`.
#[derive(Clone, Debug)]
pub struct DmIndex {
    bound: usize,
    mode: DmMode,
    sets: Vec<DefSet>,
    set_ids: HashMap<DefSet, usize>,
    objects: Vec<DmObject>,
    first_object: Vec<usize>,
    maps: Vec<DmMap>,
}

impl DmIndex {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn mode(&self) -> DmMode {
        self.mode
    }

    /// Nonempty sets of the index, by arity and then enumeration order.
    pub fn sets(&self) -> &[DefSet] {
        &self.sets
    }

    pub fn objects(&self) -> &[DmObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn maps(&self) -> &[DmMap] {
        &self.maps
    }

    pub fn set_of(&self, o: usize) -> &DefSet {
        &self.sets[self.objects[o].set]
    }

    /// The object `(x, a)`, if `x` is a set of the index containing `a`.
    pub fn find(&self, x: &DefSet, a: u32) -> Option<usize> {
        let s = *self.set_ids.get(x)?;
        let k = x.position(a)?;
        Some(self.first_object[s] + k)
    }

    /// The object for position `k` of set `s`.
    fn object_at(&self, s: usize, k: usize) -> usize {
        self.first_object[s] + k
    }

    /// Number of index morphisms, identities included.
    pub fn morphism_count(&self) -> usize {
        self.maps.iter().map(|m| m.map.domain().len()).sum()
    }

    /// Every index morphism as `(from, to, map)`.
    pub fn morphisms(&self) -> impl Iterator<Item = (usize, usize, &DefMap)> + '_ {
        self.maps.iter().flat_map(move |m| {
            (0..m.map.domain().len())
                .map(move |k| (self.object_at(m.from, k), self.object_at(m.to, m.map.table()[k] as usize), &m.map))
        })
    }

    /// The index as a finite category, when it fits the caps.
    pub fn to_category(&self, caps: SizeCaps) -> Result<FinCategory> {
        let mut b = CategoryBuilder::with_caps(caps);
        for (o, obj) in self.objects.iter().enumerate() {
            b.object(format!("{o}:{}@{}", self.sets[obj.set].arity(), obj.point));
        }
        let morphisms: Vec<(usize, usize, &DefMap)> = self.morphisms().collect();
        if morphisms.len() > caps.max_morphisms {
            return Err(Error::CategoryTooLarge {
                objects: self.objects.len(),
                morphisms: morphisms.len(),
                max_objects: caps.max_objects,
                max_morphisms: caps.max_morphisms,
            });
        }
        let mut ids: HashMap<(usize, usize, &[u32]), usize> = HashMap::new();
        for (k, &(from, to, map)) in morphisms.iter().enumerate() {
            let id = b.morphism(format!("m{k}"), from, to);
            ids.insert((from, to, map.table()), id);
            if from == to && *map == DefMap::identity(map.domain()) {
                b.identity(from, id);
            }
        }
        for &(f_from, f_to, f) in &morphisms {
            for &(g_from, g_to, g) in morphisms.iter().filter(|m| m.0 == f_to) {
                let h = f.then(g);
                let hid = ids[&(f_from, g_to, h.table())];
                b.compose(ids[&(g_from, g_to, g.table())], ids[&(f_from, f_to, f.table())], hid);
            }
        }
        b.build()
    }
}

/// Materializes the index of `d(M)` on the sets of arities `1..=bound`.
///
/// The full mode lists every definable set and is limited by the arity
/// cap of the structure; the orbit mode only needs the orbit tables.
pub fn build_dm(cat: &DefCategory, bound: usize, mode: DmMode) -> Result<DmIndex> {
    build_range(cat, 1, bound, mode)
}

fn build_range(cat: &DefCategory, lowest: usize, bound: usize, mode: DmMode) -> Result<DmIndex> {
    let mut sets = Vec::new();
    for arity in lowest..=bound {
        let level = match mode {
            DmMode::Full => cat.enumerate(arity)?,
            DmMode::Orbits => cat.orbits(arity)?,
        };
        sets.extend(level.into_iter().filter(|s| !s.is_empty()));
    }
    let set_ids = sets.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
    let mut objects = Vec::new();
    let mut first_object = Vec::with_capacity(sets.len());
    for (s, x) in sets.iter().enumerate() {
        first_object.push(objects.len());
        for (position, &point) in x.members().iter().enumerate() {
            objects.push(DmObject { set: s, position, point });
        }
    }
    let mut maps = Vec::new();
    for (from, x) in sets.iter().enumerate() {
        for (to, y) in sets.iter().enumerate() {
            for f in cat.hom_shared(x, y)?.iter() {
                maps.push(DmMap {
                    from,
                    to,
                    map: f.clone(),
                });
            }
        }
    }
    Ok(DmIndex {
        bound,
        mode,
        sets,
        set_ids,
        objects,
        first_object,
        maps,
    })
}

/// `Hom(d(M), Y)` as a colimit over the index of `Hom(X_a, Y)`, with the
/// evaluation map to the points of `Y` and its inverse.
#[derive(Clone, Debug)]
pub struct DmHom {
    pub target: DefSet,
    index: Arc<DmIndex>,
    homs: Vec<Arc<Vec<DefMap>>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
    colimit: ColimitResult,
    /// `f(a)` for the representative `f` at `(X, a)` of each class.
    pub forward: Vec<u32>,
    /// For each member `b` of `Y`, the class of the identity (in orbit
    /// mode: the inclusion of the orbit of `b`) at the object holding `b`.
    pub inverse: Vec<usize>,
}

impl DmHom {
    pub fn index(&self) -> &DmIndex {
        &self.index
    }

    pub fn class_count(&self) -> usize {
        self.colimit.class_count()
    }

    pub fn colimit(&self) -> &ColimitResult {
        &self.colimit
    }

    /// Class of `h: X -> Y` placed at `(X, a)`.
    pub fn classify(&self, x: &DefSet, a: u32, h: &DefMap) -> Option<usize> {
        let o = self.index.find(x, a)?;
        let s = self.index.objects[o].set;
        let k = *self.lookup[s].get(h.table())?;
        Some(self.colimit.class(o, k))
    }

    /// The least member of a class: an index object and a map out of it.
    pub fn representative(&self, class: usize) -> (usize, &DefMap) {
        let (o, k) = self.colimit.representative(class);
        (o, &self.homs[self.index.objects[o].set][k])
    }
}

fn bound_too_small(what: impl Into<String>) -> Error {
    Error::BoundTooSmall(what.into())
}

/// Computes `Hom(d(M), Y)` over the index truncated at
/// `bound + arity(Y)`, so that the graph of a map `X_a -> Y` with `X` of
/// arity at most `bound` lies in the index. The point of arity 0 joins
/// the index only when `Y` itself has arity 0.
///
/// Checks performed: evaluation at the base point is constant on classes
/// and a bijection onto `Y`; each class representative `f: X_a -> Y` is
/// joined to the identity at `Y_{f(a)}` through its graph; the two maps
/// are mutually inverse.
pub fn hom_dm(cat: &DefCategory, bound: usize, y: &DefSet, mode: DmMode) -> Result<DmHom> {
    let lowest = usize::from(y.arity() > 0);
    let index = Arc::new(build_range(cat, lowest, bound + y.arity(), mode)?);
    let mut homs = Vec::with_capacity(index.sets.len());
    let mut lookup = Vec::with_capacity(index.sets.len());
    for x in &index.sets {
        let h = cat.hom_shared(x, y)?;
        lookup.push(h.iter().enumerate().map(|(k, m)| (m.table().to_vec(), k)).collect::<HashMap<_, _>>());
        homs.push(h);
    }

    let mut arrows = Vec::new();
    for m in &index.maps {
        if m.from == m.to && m.map == DefMap::identity(m.map.domain()) {
            continue;
        }
        // Hom(X', Y) -> Hom(X, Y) by precomposition, once per point of X
        let table: Vec<usize> = homs[m.to]
            .iter()
            .map(|h| lookup[m.from][m.map.then(h).table()])
            .collect();
        for k in 0..m.map.domain().len() {
            arrows.push(Arrow {
                from: index.object_at(m.to, m.map.table()[k] as usize),
                to: index.object_at(m.from, k),
                table: table.clone(),
            });
        }
    }
    let sizes = index.objects.iter().map(|o| homs[o.set].len()).collect();
    let colimit = colimit_of(&Transitions { sizes, arrows });

    let eval = |o: usize, k: usize| homs[index.objects[o].set][k].apply_at(index.objects[o].position);
    let mut forward = Vec::with_capacity(colimit.class_count());
    for class in 0..colimit.class_count() {
        let (o, k) = colimit.representative(class);
        let v = eval(o, k);
        if colimit.members(class).into_iter().any(|(o2, k2)| eval(o2, k2) != v) {
            return Err(Error::Internal(format!("class {class} has two values")));
        }
        forward.push(v);
    }
    let mut hit = vec![usize::MAX; y.len()];
    for (class, &v) in forward.iter().enumerate() {
        let p = y.position(v).expect("values lie in Y");
        if hit[p] != usize::MAX {
            return Err(bound_too_small(format!(
                "classes {} and {class} both evaluate to {}",
                hit[p],
                cat.tuple_label(v, y.arity())
            )));
        }
        hit[p] = class;
    }

    let mut out = DmHom {
        target: y.clone(),
        index: index.clone(),
        homs,
        lookup,
        colimit,
        forward,
        inverse: Vec::with_capacity(y.len()),
    };
    for &b in y.members() {
        let home = match mode {
            DmMode::Full => y.clone(),
            DmMode::Orbits => cat.orbit_of(b, y.arity()),
        };
        let incl = DefMap::inclusion(&home, y).expect("orbit inside Y");
        let class = out
            .classify(&home, b, &incl)
            .ok_or_else(|| bound_too_small("the target is missing from the index"))?;
        out.inverse.push(class);
    }
    for (p, &class) in out.inverse.iter().enumerate() {
        if out.forward[class] != y.members()[p] || hit[p] != class {
            return Err(Error::Internal(format!("the two maps disagree at member {p}")));
        }
    }
    if out.forward.len() != y.len() {
        return Err(bound_too_small("evaluation is not onto"));
    }

    for class in 0..out.class_count() {
        let (o, h) = out.representative(class);
        let h = h.clone();
        let x = index.set_of(o).clone();
        if x.arity() + y.arity() > index.bound {
            return Err(bound_too_small(format!(
                "the graph of a map out of arity {} needs bound {}",
                x.arity(),
                x.arity() + y.arity()
            )));
        }
        let a = index.objects[o].point;
        let fa = h.apply_at(index.objects[o].position);
        let gamma = cat.graph(&h);
        let ga = cat.concat(a, fa, y.arity());
        let home = match mode {
            DmMode::Full => y.clone(),
            DmMode::Orbits => cat.orbit_of(fa, y.arity()),
        };
        let coords: Vec<usize> = (x.arity()..x.arity() + y.arity()).collect();
        let pi2 = cat.projection(&gamma, &coords, &home)?;
        let incl = DefMap::inclusion(&home, y).expect("orbit inside Y");
        let via_graph = out
            .classify(&gamma, ga, &pi2.then(&incl))
            .ok_or_else(|| bound_too_small("a graph is missing from the index"))?;
        if via_graph != class || out.inverse[y.position(fa).expect("value in Y")] != class {
            return Err(Error::Internal(format!("class {class} is not joined to the identity")));
        }
    }
    Ok(out)
}

/// A compatible choice of one point in each `X_a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointFamily {
    /// Code of the chosen point, per index object.
    pub points: Vec<u32>,
}

impl PointFamily {
    pub fn at(&self, o: usize) -> u32 {
        self.points[o]
    }
}

/// `Hom(d(M), d(M))` as compatible families, each read as the map
/// `a -> family(M_a)` on elements.
#[derive(Clone, Debug)]
pub struct DmEndomorphisms {
    pub index_objects: usize,
    pub families: Vec<PointFamily>,
    /// The element map of each family.
    pub maps: Vec<Vec<usize>>,
}

/// Smallest bound at which compatible families of `d(M)` determine
/// elementary maps: pairs are needed to see equality, a relation of arity
/// `r` needs `r`, a function of arity `r` needs its graph of arity `r + 1`.
pub fn required_bound(cat: &DefCategory) -> usize {
    let m = cat.structure();
    let funcs = m.max_function_arity().map_or(0, |r| r + 1);
    2.max(m.max_relation_arity()).max(funcs)
}

/// Enumerates `Hom(d(M), d(N))` for `M = N` and checks that the element
/// maps of the families are exactly the automorphisms of `M`.
pub fn d_on_morphisms(m: &DefCategory, n: &DefCategory, bound: usize, mode: DmMode) -> Result<DmEndomorphisms> {
    if m.structure() != n.structure() {
        return Err(Error::Unsupported("only maps from a structure to itself are enumerated".into()));
    }
    let need = required_bound(n);
    if bound < need {
        return Err(bound_too_small(format!("bound {bound} is below {need}")));
    }
    let index = build_dm(n, bound, mode)?;
    // higher arities first, so that projections force lower coordinates
    let mut order: Vec<usize> = (0..index.len()).collect();
    order.sort_by_key(|&o| (std::cmp::Reverse(index.set_of(o).arity()), o));
    let mut rank = vec![0; index.len()];
    for (r, &o) in order.iter().enumerate() {
        rank[o] = r;
    }
    let mut arrows = Vec::new();
    for (from, to, map) in index.morphisms() {
        if from == to && *map == DefMap::identity(map.domain()) {
            continue;
        }
        arrows.push(Arrow {
            from: rank[from],
            to: rank[to],
            table: map.table().iter().map(|&k| k as usize).collect(),
        });
    }
    let sizes = order.iter().map(|&o| index.set_of(o).len()).collect();
    let limit = limit_of(&Transitions { sizes, arrows }, DEFAULT_FAMILY_CAP)?;

    let size = n.size();
    let mut families: Vec<PointFamily> = limit
        .families()
        .iter()
        .map(|fam| PointFamily {
            points: (0..index.len()).map(|o| index.set_of(o).members()[fam[rank[o]]]).collect(),
        })
        .collect();
    families.sort();
    let mut maps = Vec::with_capacity(families.len());
    for fam in &families {
        let sigma: Vec<usize> = (0..size)
            .map(|a| {
                let home = match mode {
                    DmMode::Full => n.full(1)?,
                    DmMode::Orbits => n.orbit_of(a as u32, 1),
                };
                let o = index
                    .find(&home, a as u32)
                    .ok_or_else(|| Error::Internal("an element is missing from the index".into()))?;
                Ok(fam.at(o) as usize)
            })
            .collect::<Result<_>>()?;
        if !n.aut().contains(&sigma) {
            return Err(bound_too_small(format!("family gives {sigma:?}, not an automorphism")));
        }
        maps.push(sigma);
    }
    let mut distinct = maps.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != maps.len() {
        return Err(bound_too_small("two families share an element map"));
    }
    if distinct != n.aut().elements() {
        return Err(Error::Internal("an automorphism gives no compatible family".into()));
    }
    Ok(DmEndomorphisms {
        index_objects: index.len(),
        families,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::bundled;
    use crate::fincat::is_filtering;

    fn cat(d: crate::defsets::Definability) -> DefCategory {
        DefCategory::new(d)
    }

    #[test]
    fn index_sizes() {
        assert_eq!(build_dm(&cat(bundled::s3()), 1, DmMode::Full).unwrap().len(), 4);
        assert_eq!(build_dm(&cat(bundled::s1()), 1, DmMode::Full).unwrap().len(), 3);
        assert_eq!(build_dm(&cat(bundled::s1()), 1, DmMode::Orbits).unwrap().len(), 3);
        assert_eq!(build_dm(&cat(bundled::s1()), 2, DmMode::Full).unwrap().len(), 21);
    }

    #[test]
    fn empty_structure_contributes_no_objects() {
        let d = crate::defsets::Definability::new(crate::defsets::parse_structure("universe:\n").unwrap());
        assert!(build_dm(&cat(d), 2, DmMode::Full).unwrap().is_empty());
    }

    #[test]
    fn truncated_index_filtering() {
        let s3 = build_dm(&cat(bundled::s3()), 1, DmMode::Full).unwrap();
        let c = s3.to_category(SizeCaps::default()).unwrap();
        assert!(is_filtering(&c.opposite()).is_ok());
        // three points of M with only identities between them
        let s1 = build_dm(&cat(bundled::s1()), 1, DmMode::Full).unwrap();
        let c = s1.to_category(SizeCaps::default()).unwrap();
        assert!(is_filtering(&c.opposite()).is_err());
    }

    #[test]
    fn hom_into_unary_sets() {
        for d in [bundled::s1(), bundled::s2(), bundled::s3()] {
            let c = cat(d);
            for y in c.enumerate(1).unwrap() {
                let h = hom_dm(&c, 1, &y, DmMode::Full).unwrap();
                assert_eq!(h.class_count(), y.len());
            }
        }
    }

    #[test]
    fn hom_into_the_point() {
        let c = cat(bundled::s1());
        let pt = c.full(0).unwrap();
        assert_eq!(hom_dm(&c, 1, &pt, DmMode::Full).unwrap().class_count(), 1);
    }

    #[test]
    fn orbit_mode_agrees() {
        let c = cat(bundled::s2());
        for y in c.enumerate(1).unwrap() {
            let full = hom_dm(&c, 1, &y, DmMode::Full).unwrap();
            let orb = hom_dm(&c, 1, &y, DmMode::Orbits).unwrap();
            assert_eq!(full.forward, orb.forward);
        }
    }

    #[test]
    fn diagonal_of_s1_in_orbit_mode() {
        let c = cat(bundled::s1());
        let m = c.full(1).unwrap();
        let diag = c.diagonal(&m);
        let h = hom_dm(&c, 2, &diag, DmMode::Orbits).unwrap();
        assert_eq!(h.class_count(), 3);
    }

    #[test]
    fn endomorphisms_are_automorphisms() {
        for (d, order) in [(bundled::s1(), 6), (bundled::s2(), 3), (bundled::s3(), 1)] {
            let c = cat(d);
            let e = d_on_morphisms(&c, &c, 2, DmMode::Full).unwrap();
            assert_eq!(e.families.len(), order);
            let o = d_on_morphisms(&c, &c, 2, DmMode::Orbits).unwrap();
            assert_eq!(o.maps.len(), order);
        }
    }

    #[test]
    fn small_bound_is_rejected() {
        let c = cat(bundled::s1());
        assert!(matches!(
            d_on_morphisms(&c, &c, 1, DmMode::Full),
            Err(Error::BoundTooSmall(_))
        ));
        let other = cat(bundled::s2());
        assert!(matches!(d_on_morphisms(&c, &other, 2, DmMode::Full), Err(Error::Unsupported(_))));
    }
}
