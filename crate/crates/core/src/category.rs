//! Categories with enumerable Hom-sets.
//!
//! Ind- and pro-objects are built over any [`Category`]: a
//! [`FinCategory`], the category of definable sets of a finite structure,
//! or an [`Opposite`] / [`Over`] wrapper around either.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::fincat::FinCategory;

pub trait Category {
    type Obj: Clone + Eq + Hash + Debug;
    type Mor: Clone + Eq + Hash + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g . f`; panics on a non-composable pair.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    /// All morphisms `x -> y` in a fixed canonical order.
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>>;

    /// Every object, when the category is small enough to list.
    fn objects(&self) -> Option<Vec<Self::Obj>> {
        None
    }

    /// Looks for `h1, h2: V -> dom(f)` with `f . h1 = f . h2` but
    /// `t . h1 != t . h2`. The default scans every `V` from
    /// [`Category::objects`].
    fn separating_pair(&self, f: &Self::Mor, t: &Self::Mor) -> Result<Option<(Self::Mor, Self::Mor)>> {
        let x = self.dom(f);
        let objects = self
            .objects()
            .ok_or_else(|| Error::Unsupported("test pairs need an enumerable category".into()))?;
        for v in objects {
            let hs = self.hom(&v, &x)?;
            for (a, h1) in hs.iter().enumerate() {
                for h2 in &hs[a + 1..] {
                    if self.compose(f, h1) == self.compose(f, h2)
                        && self.compose(t, h1) != self.compose(t, h2)
                    {
                        return Ok(Some((h1.clone(), h2.clone())));
                    }
                }
            }
        }
        Ok(None)
    }
}

impl Category for FinCategory {
    type Obj = usize;
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        FinCategory::dom(self, *f)
    }

    fn cod(&self, f: &usize) -> usize {
        FinCategory::cod(self, *f)
    }

    fn identity(&self, x: &usize) -> usize {
        FinCategory::identity(self, *x)
    }

    fn compose(&self, g: &usize, f: &usize) -> usize {
        FinCategory::compose(self, *g, *f)
    }

    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<usize>> {
        Ok(FinCategory::hom(self, *x, *y).to_vec())
    }

    fn objects(&self) -> Option<Vec<usize>> {
        Some((0..self.object_count()).collect())
    }
}

impl<C: Category + ?Sized> Category for &C {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        (**self).dom(f)
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        (**self).cod(f)
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (**self).identity(x)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        (**self).compose(g, f)
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>> {
        (**self).hom(x, y)
    }

    fn objects(&self) -> Option<Vec<Self::Obj>> {
        (**self).objects()
    }

    fn separating_pair(&self, f: &Self::Mor, t: &Self::Mor) -> Result<Option<(Self::Mor, Self::Mor)>> {
        (**self).separating_pair(f, t)
    }
}

/// The opposite of a borrowed category.
#[derive(Clone, Copy, Debug)]
pub struct Opposite<'a, C: ?Sized>(pub &'a C);

impl<C: Category + ?Sized> Category for Opposite<'_, C> {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        self.0.cod(f)
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        self.0.dom(f)
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        self.0.identity(x)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        self.0.compose(f, g)
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>> {
        self.0.hom(y, x)
    }

    fn objects(&self) -> Option<Vec<Self::Obj>> {
        self.0.objects()
    }
}

/// Object of a slice category: an arrow into the fixed base object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverObj<O, M> {
    pub source: O,
    pub arrow: M,
}

/// Morphism of a slice category: a commuting triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverMor<O, M> {
    pub from: OverObj<O, M>,
    pub to: OverObj<O, M>,
    pub map: M,
}

/// The slice category `C/X` over a borrowed category.
#[derive(Clone, Debug)]
pub struct Over<'a, C: Category + ?Sized> {
    base: &'a C,
    target: C::Obj,
}

impl<'a, C: Category + ?Sized> Over<'a, C> {
    pub fn new(base: &'a C, target: C::Obj) -> Self {
        Self { base, target }
    }

    pub fn base(&self) -> &'a C {
        self.base
    }

    pub fn target(&self) -> &C::Obj {
        &self.target
    }

    /// Wraps an arrow into the base object; `None` if it lands elsewhere.
    pub fn object(&self, arrow: C::Mor) -> Option<OverObj<C::Obj, C::Mor>> {
        (self.base.cod(&arrow) == self.target).then(|| OverObj {
            source: self.base.dom(&arrow),
            arrow,
        })
    }

    /// Wraps a base morphism as a triangle, if it commutes.
    pub fn morphism(
        &self,
        from: &OverObj<C::Obj, C::Mor>,
        to: &OverObj<C::Obj, C::Mor>,
        map: C::Mor,
    ) -> Option<OverMor<C::Obj, C::Mor>> {
        (self.base.dom(&map) == from.source
            && self.base.cod(&map) == to.source
            && self.base.compose(&to.arrow, &map) == from.arrow)
            .then(|| OverMor {
                from: from.clone(),
                to: to.clone(),
                map,
            })
    }
}

impl<C: Category + ?Sized> Category for Over<'_, C> {
    type Obj = OverObj<C::Obj, C::Mor>;
    type Mor = OverMor<C::Obj, C::Mor>;

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        f.from.clone()
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        f.to.clone()
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        OverMor {
            from: x.clone(),
            to: x.clone(),
            map: self.base.identity(&x.source),
        }
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        assert_eq!(f.to, g.from, "non-composable slice morphisms");
        OverMor {
            from: f.from.clone(),
            to: g.to.clone(),
            map: self.base.compose(&g.map, &f.map),
        }
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>> {
        Ok(self
            .base
            .hom(&x.source, &y.source)?
            .into_iter()
            .filter(|h| self.base.compose(&y.arrow, h) == x.arrow)
            .map(|h| OverMor {
                from: x.clone(),
                to: y.clone(),
                map: h,
            })
            .collect())
    }

    fn objects(&self) -> Option<Vec<Self::Obj>> {
        let mut out = Vec::new();
        for y in self.base.objects()? {
            for a in self.base.hom(&y, &self.target).ok()? {
                out.push(OverObj {
                    source: y.clone(),
                    arrow: a,
                });
            }
        }
        Some(out)
    }
}
