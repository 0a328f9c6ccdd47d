//! Comparison of morphisms of ind- and pro-definable sets with
//! automorphism-equivariant maps of their points, and pro-definable
//! subsets of a fixed definable set.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{Over, OverMor, OverObj};
use crate::defsets::{check_directed, type_system, DefCategory, DefIndObject, DefMap, DefProObject, DefSet};
use crate::error::{Error, Result};
use crate::indpro::{hom_ind, hom_pro, underlying_pro, ProObject};
use crate::sample::{candidate_sets, ind_point_codes, pro_point_codes, random_ind, random_pro};

use super::eval::{induced_point_map_ind, induced_point_map_pro, points_ind, points_pro};
use super::morphisms::{graph_to_morphism, GraphSubobject};

/// Counts from a sampled comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorReport {
    pub ind_pairs: usize,
    pub pro_pairs: usize,
    /// Morphisms compared, on both sides.
    pub morphisms: usize,
    /// Pairs whose morphisms induce repeated point maps.
    pub not_faithful: usize,
    /// Pairs where the number of equivariant point maps differs from the
    /// number of morphisms.
    pub not_full: usize,
    /// Point maps between single sets rebuilt from their graphs.
    pub lifted: usize,
    /// Sampled systems whose points equal the union or intersection of
    /// their levels.
    pub realized: usize,
    pub counterexample: Option<String>,
}

impl CorReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn fail(&mut self, what: String) {
        self.counterexample.get_or_insert(what);
    }
}

/// Action of every automorphism on a list of points, as permutations.
type Action = Vec<Vec<usize>>;

fn ind_action(cat: &DefCategory, x: &DefIndObject) -> Action {
    let pts = points_ind(x);
    cat.aut()
        .elements()
        .iter()
        .map(|p| {
            (0..pts.class_count())
                .map(|c| {
                    let (i, k) = pts.representative(c);
                    let level = x.object(i);
                    let moved = cat.act(p, level.members()[k], level.arity());
                    pts.class(i, level.position(moved).expect("invariant level"))
                })
                .collect()
        })
        .collect()
}

fn pro_action(cat: &DefCategory, x: &DefProObject) -> Result<Action> {
    let fams = points_pro(x)?;
    cat.aut()
        .elements()
        .iter()
        .map(|p| {
            fams.families()
                .iter()
                .map(|fam| {
                    let moved: Vec<usize> = fam
                        .iter()
                        .enumerate()
                        .map(|(i, &k)| {
                            let level = x.object(i);
                            level.position(cat.act(p, level.members()[k], level.arity())).expect("invariant level")
                        })
                        .collect();
                    fams.position(&moved)
                        .ok_or_else(|| Error::Internal("automorphism moved a family out of the limit".into()))
                })
                .collect()
        })
        .collect()
}

/// For each orbit representative of the source, the target points fixed
/// by its stabilizer.
fn equivariant_choices(src: &Action, dst: &Action, n_src: usize, n_dst: usize) -> Vec<(usize, Vec<usize>)> {
    let mut done = vec![false; n_src];
    let mut out = Vec::new();
    for r in 0..n_src {
        if done[r] {
            continue;
        }
        for g in src {
            done[g[r]] = true;
        }
        let stab: Vec<usize> = (0..src.len()).filter(|&g| src[g][r] == r).collect();
        let allowed = (0..n_dst).filter(|&d| stab.iter().all(|&g| dst[g][d] == d)).collect();
        out.push((r, allowed));
    }
    out
}

/// Number of maps commuting with the actions, saturating.
pub fn count_equivariant(src: &Action, dst: &Action, n_src: usize, n_dst: usize) -> u128 {
    equivariant_choices(src, dst, n_src, n_dst)
        .iter()
        .fold(1u128, |acc, (_, a)| acc.saturating_mul(a.len() as u128))
}

/// A random map commuting with the actions, if one exists.
fn random_equivariant<R: Rng>(rng: &mut R, src: &Action, dst: &Action, n_src: usize, n_dst: usize) -> Option<Vec<usize>> {
    let mut out = vec![usize::MAX; n_src];
    for (r, allowed) in equivariant_choices(src, dst, n_src, n_dst) {
        if allowed.is_empty() {
            return None;
        }
        let v = allowed[rng.gen_range(0..allowed.len())];
        for (g, perm) in src.iter().enumerate() {
            out[perm[r]] = dst[g][v];
        }
    }
    Some(out)
}

fn distinct(maps: &[Vec<usize>]) -> bool {
    let mut sorted = maps.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.len() == maps.len()
}

/// Compares morphisms with equivariant maps of points on `samples` seeded
/// pairs of ind-systems and of pro-systems.
///
/// Faithfulness: the morphisms of a pair induce pairwise distinct point
/// maps. Fullness: their number equals the number of equivariant maps of
/// points, and for pairs of single sets a random equivariant map is
/// rebuilt from its graph by [`graph_to_morphism`]. Realization: the
/// points of every sampled inclusion system are the union (ind) or
/// intersection (pro) of its levels.
pub fn verify_cor_proind(cat: &DefCategory, seed: u64, samples: usize) -> Result<CorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = candidate_sets(cat)?;
    let mut report = CorReport::default();
    for s in 0..samples {
        let a = random_ind(cat, &mut rng, &sets)?;
        let b = random_ind(cat, &mut rng, &sets)?;
        report.ind_pairs += 1;
        for x in [&a, &b] {
            let union = x.objects().iter().fold(cat.empty(x.object(0).arity()), |acc, l| acc.union(l));
            if ind_point_codes(x) == union.members() {
                report.realized += 1;
            } else {
                report.fail(format!("ind sample {s}: points differ from the union"));
            }
        }
        let homs = hom_ind(cat, &a, &b)?;
        report.morphisms += homs.len();
        let maps = homs.iter().map(induced_point_map_ind).collect::<Result<Vec<_>>>()?;
        if !distinct(&maps) {
            report.not_faithful += 1;
            report.fail(format!("ind sample {s}: two morphisms agree on points"));
        }
        let (sa, sb) = (ind_action(cat, &a), ind_action(cat, &b));
        let (na, nb) = (points_ind(&a).class_count(), points_ind(&b).class_count());
        let count = count_equivariant(&sa, &sb, na, nb);
        if count != homs.len() as u128 {
            report.not_full += 1;
            report.fail(format!("ind sample {s}: {} morphisms, {count} equivariant maps", homs.len()));
        }
        if a.is_constant() && b.is_constant() {
            if let Some(phi) = random_equivariant(&mut rng, &sa, &sb, na, nb) {
                let (x, y) = (a.object(0), b.object(0));
                let codes = (0..x.len())
                    .map(|k| cat.concat(x.members()[k], y.members()[phi[k]], y.arity()))
                    .collect();
                let graph = cat.set(x.arity() + y.arity(), codes)?;
                let r = GraphSubobject::constant(cat, x.clone(), y.clone(), graph)?;
                let f = graph_to_morphism(cat, &r)?;
                if f.component(0).map.table().iter().map(|&v| v as usize).ne(phi.iter().copied()) {
                    report.fail(format!("ind sample {s}: rebuilt morphism has another graph"));
                }
                report.lifted += 1;
            }
        }

        let a = random_pro(cat, &mut rng, &sets)?;
        let b = random_pro(cat, &mut rng, &sets)?;
        report.pro_pairs += 1;
        for x in [&a, &b] {
            let meet = x.objects().iter().fold(x.object(0).clone(), |acc, l| acc.intersection(l));
            if pro_point_codes(x)? == meet.members() {
                report.realized += 1;
            } else {
                report.fail(format!("pro sample {s}: points differ from the intersection"));
            }
        }
        let homs = hom_pro(cat, &a, &b)?;
        report.morphisms += homs.len();
        let maps = homs.iter().map(induced_point_map_pro).collect::<Result<Vec<_>>>()?;
        if !distinct(&maps) {
            report.not_faithful += 1;
            report.fail(format!("pro sample {s}: two morphisms agree on points"));
        }
        let (sa, sb) = (pro_action(cat, &a)?, pro_action(cat, &b)?);
        let count = count_equivariant(&sa, &sb, points_pro(&a)?.len(), points_pro(&b)?.len());
        if count != homs.len() as u128 {
            report.not_full += 1;
            report.fail(format!("pro sample {s}: {} morphisms, {count} equivariant maps", homs.len()));
        }
    }
    Ok(report)
}

/// A pro-definable subset of `x`: a downward directed family of
/// definable subsets of `x`, as a pro-object of the slice over `x`.
pub fn pro_subsets(
    cat: &DefCategory,
    x: &DefSet,
    family: &[DefSet],
) -> Result<ProObject<OverObj<DefSet, DefMap>, OverMor<DefSet, DefMap>>> {
    if let Some(k) = family.iter().position(|s| !s.is_subset(x) || s.arity() != x.arity()) {
        return Err(Error::MalformedDiagram(format!("member {k} is not a subset of X")));
    }
    check_directed(family)?;
    let sys = type_system(cat, family)?;
    let over = Over::new(cat, x.clone());
    let objects: Vec<_> = sys
        .objects()
        .iter()
        .map(|s| over.object(DefMap::inclusion(s, x).expect("subset of X")).expect("lands in X"))
        .collect();
    let index = sys.index();
    let maps = (0..index.morphism_count())
        .map(|t| {
            let (i, j) = (index.dom(t), index.cod(t));
            over.morphism(&objects[j], &objects[i], sys.map(t).clone())
                .expect("inclusions commute over X")
        })
        .collect();
    ProObject::new(&over, index.clone(), objects, maps)
}

/// Points of a pro-definable subset of `x`, as a subset of `x`.
pub fn pro_subset_points(
    cat: &DefCategory,
    x: &DefSet,
    p: &ProObject<OverObj<DefSet, DefMap>, OverMor<DefSet, DefMap>>,
) -> Result<DefSet> {
    let (u, _) = underlying_pro(cat, x, p)?;
    cat.set(x.arity(), pro_point_codes(&u)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::bundled;
    use crate::indpro::slice_transport_pro;

    #[test]
    fn sampled_comparison_passes() {
        for d in [bundled::s1(), bundled::s2(), bundled::s3()] {
            let cat = DefCategory::new(d);
            let r = verify_cor_proind(&cat, 7, 12).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.realized, 48);
        }
    }

    #[test]
    fn constant_systems_count_definable_maps() {
        let cat = DefCategory::new(bundled::s1());
        let m = cat.full(1).unwrap();
        let a = crate::indpro::IndObject::constant(&cat, m.clone());
        let act = ind_action(&cat, &a);
        assert_eq!(count_equivariant(&act, &act, 3, 3), cat.hom(&m, &m, 100).unwrap().len() as u128);
    }

    #[test]
    fn subsets_of_a_set() {
        let cat = DefCategory::new(bundled::s3());
        let m = cat.full(1).unwrap();
        let a = cat.set_of_tuples(1, &[vec![0]]).unwrap();
        let whole = pro_subsets(&cat, &m, &[m.clone()]).unwrap();
        assert_eq!(pro_subset_points(&cat, &m, &whole).unwrap(), m);
        let nested = pro_subsets(&cat, &m, &[m.clone(), a.clone()]).unwrap();
        assert_eq!(pro_subset_points(&cat, &m, &nested).unwrap(), a);
        assert!(slice_transport_pro(&cat, &m, &nested, &whole).unwrap().bijective);
        let b = cat.set_of_tuples(1, &[vec![1]]).unwrap();
        assert!(matches!(pro_subsets(&cat, &m, &[a, b]), Err(Error::NotDirected(_))));
    }
}
