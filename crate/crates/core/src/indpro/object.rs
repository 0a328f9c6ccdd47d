use std::fmt;
use std::sync::Arc;

use crate::category::{Category, Opposite};
use crate::error::{Error, Result};
use crate::fincat::{is_filtering, FilteringWitness, FinCategory};

struct SystemData<O, M> {
    index: Arc<FinCategory>,
    witness: FilteringWitness,
    objects: Vec<O>,
    maps: Vec<M>,
}

/// A filtering system `(X_i)`: a functor from a filtering index category
/// into a base category, standing for its formal colimit.
pub struct IndObject<O, M>(Arc<SystemData<O, M>>);

impl<O, M> Clone for IndObject<O, M> {
    fn clone(&self) -> Self {
        Self(self.0.clone())
    }
}

impl<O: PartialEq, M: PartialEq> PartialEq for IndObject<O, M> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.index == other.0.index
                && self.0.objects == other.0.objects
                && self.0.maps == other.0.maps)
    }
}

impl<O: Eq, M: Eq> Eq for IndObject<O, M> {}

impl<O: fmt::Debug, M> fmt::Debug for IndObject<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndObject")
            .field("objects", &self.0.objects)
            .field("index_morphisms", &self.0.index.morphism_count())
            .finish()
    }
}

impl<O: Clone, M: Clone> IndObject<O, M> {
    /// Checks that `index` is filtering and that `objects`/`maps` form a
    /// functor into `cat` (`maps[t]: objects[dom t] -> objects[cod t]`).
    pub fn new<C>(cat: &C, index: Arc<FinCategory>, objects: Vec<O>, maps: Vec<M>) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let witness = is_filtering(&index).map_err(|e| Error::NonFilteringIndex(e.describe(&index)))?;
        check_functor(cat, &index, &objects, &maps)?;
        Ok(Self(Arc::new(SystemData {
            index,
            witness,
            objects,
            maps,
        })))
    }

    /// The one-object system on `x`: the Yoneda image of `x`.
    pub fn constant<C>(cat: &C, x: O) -> Self
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let id = cat.identity(&x);
        Self::new(cat, Arc::new(FinCategory::terminal()), vec![x], vec![id])
            .expect("constant system")
    }

    /// The chain `X_0 -> X_1 -> ...` with `steps[k]: X_k -> X_{k+1}`.
    pub fn chain<C>(cat: &C, objects: Vec<O>, steps: Vec<M>) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let (index, maps) = chain_maps(cat, &objects, &steps, false)?;
        Self::new(cat, index, objects, maps)
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        &self.0.index
    }

    pub fn witness(&self) -> &FilteringWitness {
        &self.0.witness
    }

    pub fn object(&self, i: usize) -> &O {
        &self.0.objects[i]
    }

    pub fn objects(&self) -> &[O] {
        &self.0.objects
    }

    pub fn map(&self, t: usize) -> &M {
        &self.0.maps[t]
    }

    pub fn maps(&self) -> &[M] {
        &self.0.maps
    }

    pub fn len(&self) -> usize {
        self.0.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.objects.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.index.object_count() == 1 && self.0.index.morphism_count() == 1
    }

    /// The same system restricted to a full subcategory of its index.
    pub fn restrict<C>(&self, cat: &C, objects: &[usize]) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let r = self.0.index.full_subcategory(objects)?;
        let objs = r.objects.iter().map(|&i| self.0.objects[i].clone()).collect();
        let maps = r.morphisms.iter().map(|&t| self.0.maps[t].clone()).collect();
        Self::new(cat, Arc::new(r.category), objs, maps)
    }
}

/// A co-filtering system, stored as an ind-object of the opposite
/// category: `maps[t]` for `t: i -> j` is a base morphism `X_j -> X_i`.
pub struct ProObject<O, M>(IndObject<O, M>);

impl<O, M> Clone for ProObject<O, M> {
    fn clone(&self) -> Self {
        Self(self.0.clone())
    }
}

impl<O: PartialEq, M: PartialEq> PartialEq for ProObject<O, M> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<O: Eq, M: Eq> Eq for ProObject<O, M> {}

impl<O: fmt::Debug, M> fmt::Debug for ProObject<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProObject")
            .field("objects", &self.0 .0.objects)
            .field("index_morphisms", &self.0 .0.index.morphism_count())
            .finish()
    }
}

impl<O: Clone, M: Clone> ProObject<O, M> {
    pub fn new<C>(cat: &C, index: Arc<FinCategory>, objects: Vec<O>, maps: Vec<M>) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        IndObject::new(&Opposite(cat), index, objects, maps).map(Self)
    }

    pub fn constant<C>(cat: &C, x: O) -> Self
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        Self(IndObject::constant(&Opposite(cat), x))
    }

    /// The cochain `X_0 <- X_1 <- ...` with `steps[k]: X_{k+1} -> X_k`.
    pub fn chain<C>(cat: &C, objects: Vec<O>, steps: Vec<M>) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let (index, maps) = chain_maps(cat, &objects, &steps, true)?;
        Self::new(cat, index, objects, maps)
    }

    pub fn from_ind_op(ind: IndObject<O, M>) -> Self {
        Self(ind)
    }

    /// The underlying ind-object of the opposite category.
    pub fn as_ind_op(&self) -> &IndObject<O, M> {
        &self.0
    }

    pub fn index(&self) -> &Arc<FinCategory> {
        self.0.index()
    }

    pub fn witness(&self) -> &FilteringWitness {
        self.0.witness()
    }

    pub fn object(&self, i: usize) -> &O {
        self.0.object(i)
    }

    pub fn objects(&self) -> &[O] {
        self.0.objects()
    }

    pub fn map(&self, t: usize) -> &M {
        self.0.map(t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_constant()
    }

    pub fn restrict<C>(&self, cat: &C, objects: &[usize]) -> Result<Self>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        self.0.restrict(&Opposite(cat), objects).map(Self)
    }
}

fn chain_maps<C>(
    cat: &C,
    objects: &[C::Obj],
    steps: &[C::Mor],
    reversed: bool,
) -> Result<(Arc<FinCategory>, Vec<C::Mor>)>
where
    C: Category + ?Sized,
{
    let n = objects.len();
    if n == 0 || steps.len() + 1 != n {
        return Err(Error::MalformedDiagram("a chain needs one step per consecutive pair".into()));
    }
    let index = Arc::new(FinCategory::chain(n)?);
    let mut maps = Vec::with_capacity(index.morphism_count());
    for t in 0..index.morphism_count() {
        let (i, j) = (index.dom(t), index.cod(t));
        let mut m = cat.identity(&objects[if reversed { j } else { i }]);
        if reversed {
            for step in steps[i..j].iter().rev() {
                m = cat.compose(step, &m);
            }
        } else {
            for step in &steps[i..j] {
                m = cat.compose(step, &m);
            }
        }
        maps.push(m);
    }
    Ok((index, maps))
}

pub(crate) fn check_functor<C>(cat: &C, index: &FinCategory, objects: &[C::Obj], maps: &[C::Mor]) -> Result<()>
where
    C: Category + ?Sized,
{
    if objects.len() != index.object_count() || maps.len() != index.morphism_count() {
        return Err(Error::MalformedDiagram(
            "object and map counts do not match the index".into(),
        ));
    }
    for t in 0..index.morphism_count() {
        let (i, j) = (index.dom(t), index.cod(t));
        if cat.dom(&maps[t]) != objects[i] || cat.cod(&maps[t]) != objects[j] {
            return Err(Error::MalformedDiagram(format!(
                "image of `{}` has the wrong endpoints",
                index.morphism(t).name
            )));
        }
    }
    for x in 0..index.object_count() {
        if maps[index.identity(x)] != cat.identity(&objects[x]) {
            return Err(Error::NonFunctorial(format!(
                "identity of `{}` is not preserved",
                index.object_name(x)
            )));
        }
    }
    for g in 0..index.morphism_count() {
        for x in 0..index.object_count() {
            for &f in index.hom(x, index.dom(g)) {
                if maps[index.compose(g, f)] != cat.compose(&maps[g], &maps[f]) {
                    return Err(Error::NonFunctorial(format!(
                        "composite {} . {} is not preserved",
                        index.morphism(g).name,
                        index.morphism(f).name
                    )));
                }
            }
        }
    }
    Ok(())
}
