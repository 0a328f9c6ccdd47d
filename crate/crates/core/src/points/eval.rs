//! Points of ind- and pro-definable sets and of morphisms between them.

use crate::defsets::{DefIndObject, DefMap, DefProObject, DefSet};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::indpro::{IndMorphism, ProMorphism};
use crate::setval::{colimit_of, limit_of, Arrow, ColimitResult, LimitResult, Transitions, DEFAULT_FAMILY_CAP};

/// Element tables of the non-identity system maps, on member positions.
fn transitions(index: &FinCategory, objects: &[DefSet], maps: impl Fn(usize) -> DefMap, reversed: bool) -> Transitions {
    let arrows = (0..index.morphism_count())
        .filter(|&t| !index.is_identity(t))
        .map(|t| {
            let (a, b) = (index.dom(t), index.cod(t));
            let (from, to) = if reversed { (b, a) } else { (a, b) };
            Arrow {
                from,
                to,
                table: maps(t).table().iter().map(|&k| k as usize).collect(),
            }
        })
        .collect();
    Transitions {
        sizes: objects.iter().map(DefSet::len).collect(),
        arrows,
    }
}

/// `Ind(X_i)(M) = Colim_i X_i(M)`. An element `(i, k)` is the member of
/// `X_i` at position `k`.
pub fn points_ind(x: &DefIndObject) -> ColimitResult {
    colimit_of(&transitions(x.index(), x.objects(), |t| x.map(t).clone(), false))
}

/// `Pro(X_i)(M) = Lim_i X_i(M)`, as families of member positions.
pub fn points_pro(x: &DefProObject) -> Result<LimitResult> {
    limit_of(&transitions(x.index(), x.objects(), |t| x.map(t).clone(), true), DEFAULT_FAMILY_CAP)
}

/// Code of the point at `(i, k)`.
pub fn ind_point_code(x: &DefIndObject, (i, k): (usize, usize)) -> u32 {
    x.object(i).members()[k]
}

/// The function on points induced by an ind-morphism, as a table from
/// source classes to target classes. Every member of every class is
/// evaluated and the results are required to agree.
pub fn induced_point_map_ind(f: &IndMorphism<DefSet, DefMap>) -> Result<Vec<usize>> {
    let src = points_ind(f.source());
    let dst = points_ind(f.target());
    let at = |(i, k): (usize, usize)| {
        let c = f.component(i);
        dst.class(c.index, c.map.table()[k] as usize)
    };
    (0..src.class_count())
        .map(|class| {
            let v = at(src.representative(class));
            if src.members(class).into_iter().any(|m| at(m) != v) {
                return Err(Error::Internal(format!("point class {class} has two images")));
            }
            Ok(v)
        })
        .collect()
}

/// The function on points induced by a pro-morphism, as a table from
/// source families to target families. Each target coordinate is
/// computed from its representative and cross-checked against every other
/// representative `A_i' -> B_j` reachable through the source system.
pub fn induced_point_map_pro(f: &ProMorphism<DefSet, DefMap>) -> Result<Vec<usize>> {
    let src = points_pro(f.source())?;
    let dst = points_pro(f.target())?;
    let sx = f.source();
    src.families()
        .iter()
        .map(|fam| {
            let image: Vec<usize> = (0..f.target().len())
                .map(|j| {
                    let c = f.component(j);
                    c.map.table()[fam[c.index]] as usize
                })
                .collect();
            // alternate representatives: m . X(t) for t: i -> i'
            for j in 0..f.target().len() {
                let c = f.component(j);
                for t in sx.index().out_of(c.index) {
                    let alt = sx.map(t).then(&c.map);
                    let i2 = sx.index().cod(t);
                    if alt.table()[fam[i2]] as usize != image[j] {
                        return Err(Error::Internal(format!("coordinate {j} depends on the representative")));
                    }
                }
            }
            dst.position(&image)
                .ok_or_else(|| Error::Internal("image of a family is not compatible".into()))
        })
        .collect()
}
