use std::collections::BTreeMap;
use std::fmt;

use super::FinCategory;

/// Apex and legs chosen for a pair of objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cocone {
    pub apex: usize,
    pub left: usize,
    pub right: usize,
}

/// `arrow . t1 = arrow . t2` for a parallel pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub apex: usize,
    pub arrow: usize,
}

/// The data of both filtering axioms, chosen least-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteringWitness {
    objects: usize,
    cocones: Vec<Cocone>,
    equalizers: BTreeMap<(usize, usize), Equalizer>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilteringFailure {
    NoCocone { i: usize, j: usize },
    NoEqualizer { t1: usize, t2: usize },
}

impl FilteringFailure {
    pub fn describe(&self, c: &FinCategory) -> String {
        match *self {
            FilteringFailure::NoCocone { i, j } => format!(
                "objects `{}` and `{}` have no common upper bound",
                c.object_name(i),
                c.object_name(j)
            ),
            FilteringFailure::NoEqualizer { t1, t2 } => format!(
                "parallel pair `{}`, `{}` is never equalized",
                c.morphism(t1).name,
                c.morphism(t2).name
            ),
        }
    }
}

impl fmt::Display for FilteringFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilteringFailure::NoCocone { i, j } => write!(f, "no cocone for objects ({i}, {j})"),
            FilteringFailure::NoEqualizer { t1, t2 } => {
                write!(f, "no equalizing arrow for ({t1}, {t2})")
            }
        }
    }
}

impl FilteringWitness {
    pub fn cocone(&self, i: usize, j: usize) -> Cocone {
        self.cocones[i * self.objects + j]
    }

    /// Equalizing arrow for a parallel pair (in either order).
    pub fn equalizer(&self, t1: usize, t2: usize) -> Equalizer {
        let key = (t1.min(t2), t1.max(t2));
        self.equalizers[&key]
    }

    pub fn parallel_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Equalizer)> {
        self.equalizers.iter()
    }

    /// Folds pairwise cocones into an upper bound of `objects`, returning
    /// the apex and one arrow from each listed object.
    pub fn upper_bound(&self, c: &FinCategory, objects: &[usize]) -> Option<(usize, Vec<usize>)> {
        let (&first, rest) = objects.split_first()?;
        let mut apex = first;
        let mut legs = vec![c.identity(first)];
        for &o in rest {
            let cc = self.cocone(apex, o);
            for leg in legs.iter_mut() {
                *leg = c.compose(cc.left, *leg);
            }
            legs.push(cc.right);
            apex = cc.apex;
        }
        Some((apex, legs))
    }
}

/// Checks both filtering axioms by exhaustive search. Object pairs are
/// examined before parallel pairs, each in lexicographic order, and the
/// least admissible `(apex, arrows)` is recorded. The empty category is
/// vacuously filtering.
pub fn is_filtering(c: &FinCategory) -> Result<FilteringWitness, FilteringFailure> {
    let n = c.object_count();
    let mut cocones = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let found = (0..n).find_map(|k| {
                let u = *c.hom(i, k).first()?;
                let v = *c.hom(j, k).first()?;
                Some(Cocone {
                    apex: k,
                    left: u,
                    right: v,
                })
            });
            match found {
                Some(cc) => cocones.push(cc),
                None => return Err(FilteringFailure::NoCocone { i, j }),
            }
        }
    }
    let mut equalizers = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let par = c.hom(i, j);
            for (a, &t1) in par.iter().enumerate() {
                for &t2 in &par[a..] {
                    let found = (0..n).find_map(|k| {
                        c.hom(j, k)
                            .iter()
                            .find(|&&s| c.compose(s, t1) == c.compose(s, t2))
                            .map(|&s| Equalizer { apex: k, arrow: s })
                    });
                    match found {
                        Some(e) => {
                            equalizers.insert((t1, t2), e);
                        }
                        None => return Err(FilteringFailure::NoEqualizer { t1, t2 }),
                    }
                }
            }
        }
    }
    Ok(FilteringWitness {
        objects: n,
        cocones,
        equalizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    #[test]
    fn one_object_is_filtering_with_itself_as_apex() {
        let c = FinCategory::terminal();
        let w = is_filtering(&c).unwrap();
        assert_eq!(w.cocone(0, 0).apex, 0);
    }

    #[test]
    fn discrete_pair_has_no_cocone() {
        let c = FinCategory::discrete(2).unwrap();
        assert_eq!(
            is_filtering(&c).unwrap_err(),
            FilteringFailure::NoCocone { i: 0, j: 1 }
        );
    }

    #[test]
    fn chain_cocone_is_the_max() {
        let c = FinCategory::chain(3).unwrap();
        let w = is_filtering(&c).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.cocone(i, j).apex, i.max(j));
            }
        }
    }

    #[test]
    fn parallel_pair_alone_is_not_filtering() {
        let mut b = CategoryBuilder::new();
        let i = b.object("i");
        let j = b.object("j");
        let t1 = b.morphism("t1", i, j);
        let t2 = b.morphism("t2", i, j);
        let c = b.build().unwrap();
        assert_eq!(
            is_filtering(&c).unwrap_err(),
            FilteringFailure::NoEqualizer { t1, t2 }
        );
    }

    #[test]
    fn idempotent_monoid_is_filtering() {
        let m = FinCategory::monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]]).unwrap();
        let w = is_filtering(&m).unwrap();
        assert_eq!(w.equalizer(0, 1).arrow, 1);
    }

    #[test]
    fn upper_bound_folds_cocones() {
        let c = FinCategory::preorder(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let w = is_filtering(&c).unwrap();
        let (k, legs) = w.upper_bound(&c, &[0, 1, 2]).unwrap();
        assert_eq!(k, 3);
        for (o, leg) in [0, 1, 2].iter().zip(legs) {
            assert_eq!(c.dom(leg), *o);
            assert_eq!(c.cod(leg), 3);
        }
    }
}
