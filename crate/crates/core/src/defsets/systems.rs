//! Standard systems of definable sets: partial types, increasing unions
//! and increasing unions of equivalence relations.

use std::sync::Arc;

use super::category::DefCategory;
use super::sets::{DefMap, DefSet};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::indpro::{IndObject, ProObject};

pub type DefIndObject = IndObject<DefSet, DefMap>;
pub type DefProObject = ProObject<DefSet, DefMap>;

fn dedup(sets: &[DefSet]) -> Vec<DefSet> {
    let mut out: Vec<DefSet> = Vec::new();
    for s in sets {
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// Checks that `sets` share an arity and that any two members contain a
/// common member.
pub(crate) fn check_directed(sets: &[DefSet]) -> Result<()> {
    let Some(first) = sets.first() else {
        return Err(Error::NotDirected("empty family".into()));
    };
    if sets.iter().any(|s| s.arity() != first.arity()) {
        return Err(Error::MalformedDiagram("sets of different arities".into()));
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            let meet = a.intersection(b);
            if !sets.iter().any(|c| c.is_subset(&meet)) {
                return Err(Error::NotDirected(format!("members {i} and {j} have no common lower bound")));
            }
        }
    }
    Ok(())
}

/// The pro-object of a downward directed family of sets, indexed by the
/// family under reverse inclusion, with inclusions as transition maps.
/// Repeated sets are dropped.
pub fn type_system(cat: &DefCategory, sets: &[DefSet]) -> Result<DefProObject> {
    let sets = dedup(sets);
    check_directed(&sets)?;
    let n = sets.len();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && sets[j].is_subset(&sets[i]) {
                rel.push((i, j));
            }
        }
    }
    let index = Arc::new(FinCategory::preorder(n, &rel)?);
    let maps = (0..index.morphism_count())
        .map(|t| DefMap::inclusion(&sets[index.cod(t)], &sets[index.dom(t)]).expect("reverse inclusion"))
        .collect();
    ProObject::new(cat, index, sets, maps)
}

/// The chain `X_0 ⊆ X_1 ⊆ ...` as an ind-object.
pub fn increasing_union(cat: &DefCategory, chain: &[DefSet]) -> Result<DefIndObject> {
    if chain.is_empty() {
        return Err(Error::MalformedDiagram("empty chain".into()));
    }
    let mut steps = Vec::with_capacity(chain.len() - 1);
    for (k, w) in chain.windows(2).enumerate() {
        steps.push(DefMap::inclusion(&w[0], &w[1]).ok_or(Error::NotAscending(k))?);
    }
    IndObject::chain(cat, chain.to_vec(), steps)
}

/// Whether `e`, a set of pairs of tuples of `x`, is an equivalence
/// relation on `x`.
pub fn is_equivalence(cat: &DefCategory, x: &DefSet, e: &DefSet) -> bool {
    let m = x.arity();
    if e.arity() != 2 * m {
        return false;
    }
    let pairs: Vec<(u32, u32)> = e.members().iter().map(|&c| cat.split(c, m)).collect();
    let has = |a: u32, b: u32| e.contains(cat.concat(a, b, m));
    pairs.iter().all(|&(a, b)| x.contains(a) && x.contains(b) && has(b, a))
        && x.members().iter().all(|&a| has(a, a))
        && pairs
            .iter()
            .all(|&(a, b)| pairs.iter().filter(|p| p.0 == b).all(|&(_, c)| has(a, c)))
}

/// An increasing chain of equivalence relations on `x` as an ind-object.
pub fn eq_relation_union(cat: &DefCategory, x: &DefSet, chain: &[DefSet]) -> Result<DefIndObject> {
    for (k, e) in chain.iter().enumerate() {
        if !is_equivalence(cat, x, e) {
            return Err(Error::NotEquivalence(k));
        }
    }
    for (k, w) in chain.windows(2).enumerate() {
        if !w[0].is_subset(&w[1]) {
            return Err(Error::NotCoarsening(k));
        }
    }
    increasing_union(cat, chain)
}
