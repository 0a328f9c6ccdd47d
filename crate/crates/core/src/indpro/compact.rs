//! Inverses built from bijections on points, for morphisms between a
//! system of definable sets and a single definable set.

use crate::defsets::{DefCategory, DefMap, DefSet};
use crate::error::{Error, Result};
use crate::points::{induced_point_map_ind, induced_point_map_pro, points_pro};

use super::iso::{check_iso_lemma, check_iso_pushout, IsoCertificate, ProIsoCertificate};
use super::{IndMorphism, ProMorphism};

#[derive(Clone, Debug)]
pub struct IndInverse {
    /// Levels whose images cover the target.
    pub cover: Vec<usize>,
    /// A level where `f_k` is already onto.
    pub k: usize,
    pub g: DefMap,
    pub certificate: IsoCertificate<DefSet, DefMap>,
}

#[derive(Clone, Debug)]
pub struct ProInverse {
    /// Levels separating the pairs of points of the source.
    pub separating: Vec<usize>,
    /// A level where `f_k` is already one-to-one.
    pub k: usize,
    /// The system morphism `u: k -> zero` whose map has the image of `f_k`.
    pub u: usize,
    pub g: DefMap,
    pub certificate: ProIsoCertificate<DefSet, DefMap>,
}

fn is_bijection(table: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    table.len() == n && table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

fn not_found(what: &str) -> Error {
    Error::Internal(format!("{what} not found although the point map is bijective"))
}

/// Inverse of `f: Ind(X_i) -> Y` for `Y` a single definable set, built
/// from the bijectivity of `f` on points.
///
/// A finite cover of `Y` by images of levels is pushed to a common level
/// `k`. Each level gets the least system morphism `t_i` whose kernel pair
/// equals that of `f_i`. With `zero` the end of `t_k`, `g` inverts `f_zero`
/// on the image of `X(t_k)`. The result is certified by
/// [`check_iso_lemma`].
pub fn build_iso_from_points_ind(cat: &DefCategory, f: &IndMorphism<DefSet, DefMap>) -> Result<IndInverse> {
    let x = f.source();
    if !f.target().is_constant() {
        return Err(Error::MalformedDiagram("the target must be a single object".into()));
    }
    let y = f.target().object(0).clone();
    let table = induced_point_map_ind(f)?;
    if !is_bijection(&table, y.len()) {
        return Err(Error::NotBijective(format!(
            "{} points map to {} points, {} hit",
            table.len(),
            y.len(),
            {
                let mut t = table.clone();
                t.sort_unstable();
                t.dedup();
                t.len()
            }
        )));
    }
    let fi = |i: usize| &f.component(i).map;

    let mut covered = vec![false; y.len()];
    let mut cover = Vec::new();
    for i in 0..x.len() {
        let mut new = false;
        for &v in fi(i).table() {
            new |= !std::mem::replace(&mut covered[v as usize], true);
        }
        if new {
            cover.push(i);
        }
    }
    let k = if cover.is_empty() {
        // Y is empty, so is every level; any level does
        0
    } else {
        x.witness()
            .upper_bound(x.index(), &cover)
            .ok_or_else(|| not_found("an upper bound of the cover"))?
            .0
    };
    if !fi(k).is_surjective() {
        return Err(not_found("an onto level"));
    }

    let index = x.index();
    let t: Vec<usize> = (0..x.len())
        .map(|i| {
            let target = fi(i).kernel();
            index
                .out_of(i)
                .find(|&t| x.map(t).kernel() == target)
                .ok_or_else(|| not_found("a collapsing system morphism"))
        })
        .collect::<Result<_>>()?;

    let tk = x.map(t[k]);
    let zero = index.cod(t[k]);
    let mut g_table = vec![u32::MAX; y.len()];
    for (pos, &v) in fi(k).table().iter().enumerate() {
        g_table[v as usize] = tk.table()[pos];
    }
    let g = cat.map(&y, x.object(zero), g_table)?;
    let certificate = check_iso_lemma(cat, f, &g, zero, &t).map_err(|e| match e {
        Error::NoWitness(i) => Error::Internal(format!("no witness at level {i}")),
        e => e,
    })?;
    Ok(IndInverse {
        cover,
        k,
        g,
        certificate,
    })
}

/// Inverse of `f: Y -> Pro(X_i)` for `Y` a single definable set, built
/// from the bijectivity of `f` on points.
///
/// Levels separating each pair of points of `Y` are pushed to a common
/// level `k`, where `f_k` is one-to-one. The least system map `u` into
/// `X_k` with the image of `f_k` gives `g = f_k^{-1} . X(u)`, certified by
/// [`check_iso_pushout`].
pub fn build_iso_from_points_pro(cat: &DefCategory, f: &ProMorphism<DefSet, DefMap>) -> Result<ProInverse> {
    let x = f.target();
    if !f.source().is_constant() {
        return Err(Error::MalformedDiagram("the source must be a single object".into()));
    }
    let y = f.source().object(0).clone();
    let table = induced_point_map_pro(f)?;
    let families = points_pro(x)?.len();
    if !is_bijection(&table, families) {
        return Err(Error::NotBijective(format!(
            "{} points map into {} compatible families",
            table.len(),
            families
        )));
    }
    let fi = |i: usize| &f.component(i).map;

    let mut separating: Vec<usize> = Vec::new();
    for a in 0..y.len() {
        for b in a + 1..y.len() {
            if separating.iter().any(|&i| fi(i).table()[a] != fi(i).table()[b]) {
                continue;
            }
            let i = (0..x.len())
                .find(|&i| fi(i).table()[a] != fi(i).table()[b])
                .ok_or_else(|| not_found("a separating level"))?;
            separating.push(i);
        }
    }
    separating.sort_unstable();
    let k = if separating.is_empty() {
        0
    } else {
        x.witness()
            .upper_bound(x.index(), &separating)
            .ok_or_else(|| not_found("an upper bound of the separating levels"))?
            .0
    };
    if !fi(k).is_injective() {
        return Err(not_found("a one-to-one level"));
    }

    let target = fi(k).image();
    let u = x
        .index()
        .out_of(k)
        .find(|&u| x.map(u).image() == target)
        .ok_or_else(|| not_found("a system map with the image of f_k"))?;
    let zero = x.index().cod(u);
    let xu = x.map(u);
    let mut inverse_k = vec![u32::MAX; fi(k).codomain().len()];
    for (pos, &v) in fi(k).table().iter().enumerate() {
        inverse_k[v as usize] = pos as u32;
    }
    let g_table: Vec<u32> = xu.table().iter().map(|&v| inverse_k[v as usize]).collect();
    let g = cat.map(x.object(zero), &y, g_table)?;
    let certificate = check_iso_pushout(cat, f, &g, zero).map_err(|e| match e {
        Error::NoWitness(i) => Error::Internal(format!("no witness at level {i}")),
        e => e,
    })?;
    Ok(ProInverse {
        separating,
        k,
        u,
        g,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use crate::defsets::{bundled, increasing_union, type_system};
    use crate::indpro::{ind_morphism, pro_morphism, IndObject, ProObject};

    #[test]
    fn identity_on_constant_system() {
        let cat = DefCategory::new(bundled::s2());
        let m = cat.full(1).unwrap();
        let x = IndObject::constant(&cat, m.clone());
        let id = DefMap::identity(&m);
        let f = ind_morphism(&cat, &x, &x, &[(0, id.clone())]).unwrap();
        let inv = build_iso_from_points_ind(&cat, &f).unwrap();
        assert_eq!(inv.g, id);
        assert_eq!(inv.certificate.t, vec![0]);
    }

    #[test]
    fn union_stabilizing_at_the_last_stage() {
        let cat = DefCategory::new(bundled::s3());
        let e = cat.empty(1);
        let m = cat.full(1).unwrap();
        let x = increasing_union(&cat, &[e.clone(), m.clone(), m.clone()]).unwrap();
        let y = IndObject::constant(&cat, m.clone());
        let comps: Vec<_> = x.objects().iter().map(|o| (0, DefMap::inclusion(o, &m).unwrap())).collect();
        let f = ind_morphism(&cat, &x, &y, &comps).unwrap();
        let inv = build_iso_from_points_ind(&cat, &f).unwrap();
        assert_eq!(inv.g, DefMap::inclusion(&m, x.object(inv.certificate.zero)).unwrap());
        assert!(fi_onto(&f, inv.k));
    }

    fn fi_onto(f: &IndMorphism<DefSet, DefMap>, k: usize) -> bool {
        f.component(k).map.is_surjective()
    }

    #[test]
    fn non_bijective_ind() {
        let cat = DefCategory::new(bundled::s3());
        let m = cat.full(1).unwrap();
        let pt = cat.full(0).unwrap();
        let x = IndObject::constant(&cat, m.clone());
        let y = IndObject::constant(&cat, pt.clone());
        let f = ind_morphism(&cat, &x, &y, &[(0, cat.hom(&m, &pt).unwrap()[0].clone())]).unwrap();
        assert!(matches!(build_iso_from_points_ind(&cat, &f), Err(Error::NotBijective(_))));
    }

    #[test]
    fn constant_pro_iso() {
        let cat = DefCategory::new(bundled::s2());
        let m = cat.full(1).unwrap();
        let x = ProObject::constant(&cat, m.clone());
        let homs = cat.hom(&m, &m).unwrap();
        let rot = homs.iter().find(|h| h.table() == [1, 2, 0]).unwrap().clone();
        let f = pro_morphism(&cat, &x, &x, &[(0, rot.clone())]).unwrap();
        let inv = build_iso_from_points_pro(&cat, &f).unwrap();
        assert_eq!(rot.then(&inv.g), DefMap::identity(&m));
    }

    #[test]
    fn partial_type_onto_its_intersection() {
        let cat = DefCategory::new(bundled::s3());
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let m = cat.full(1).unwrap();
        let x = type_system(&cat, &[m.clone(), a.clone()]).unwrap();
        let y = ProObject::constant(&cat, a.clone());
        let comps: Vec<_> = x.objects().iter().map(|o| (0, DefMap::inclusion(&a, o).unwrap())).collect();
        let f = pro_morphism(&cat, &y, &x, &comps).unwrap();
        let inv = build_iso_from_points_pro(&cat, &f).unwrap();
        assert_eq!(inv.g.domain(), &a);
        assert_eq!(inv.g, DefMap::identity(&a));
    }

    #[test]
    fn non_bijective_pro() {
        let cat = DefCategory::new(bundled::s3());
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let m = cat.full(1).unwrap();
        let x = ProObject::constant(&cat, m.clone());
        let y = ProObject::constant(&cat, a.clone());
        let f = pro_morphism(&cat, &y, &x, &[(0, DefMap::inclusion(&a, &m).unwrap())]).unwrap();
        assert!(matches!(build_iso_from_points_pro(&cat, &f), Err(Error::NotBijective(_))));
    }
}
