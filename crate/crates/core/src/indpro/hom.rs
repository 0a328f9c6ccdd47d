use std::fmt;

use crate::category::{Category, Opposite};
use crate::error::{Error, Result};
use crate::setval::{hom_into_ind, limit_of, Arrow, HomColimit, Transitions, DEFAULT_FAMILY_CAP};

use super::{IndObject, ProObject};

/// Representative `(j, map: X_i -> Y_j)` of one component class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component<M> {
    pub index: usize,
    pub map: M,
}

/// Witness that the components at `dom t` and `cod t` agree along the
/// source index morphism `t: i -> i'`: with `(j, f) = f_i` and
/// `(j', f') = f_{i'}`, `Y(left) . f = Y(right) . f' . X(t)` where
/// `left: j -> apex` and `right: j' -> apex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub morphism: usize,
    pub apex: usize,
    pub left: usize,
    pub right: usize,
}

/// An element of `Lim_i Colim_j Hom(X_i, Y_j)`, stored as the least
/// representative of each component class.
#[derive(Clone)]
pub struct IndMorphism<O, M> {
    source: IndObject<O, M>,
    target: IndObject<O, M>,
    components: Vec<Component<M>>,
    certificates: Vec<Certificate>,
}

impl<O: PartialEq, M: PartialEq> PartialEq for IndMorphism<O, M> {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && self.source == other.source && self.target == other.target
    }
}

impl<O: Eq, M: Eq> Eq for IndMorphism<O, M> {}

impl<O, M: fmt::Debug> fmt::Debug for IndMorphism<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndMorphism").field("components", &self.components).finish()
    }
}

impl<O: Clone + PartialEq, M: Clone + PartialEq> IndMorphism<O, M> {
    pub fn source(&self) -> &IndObject<O, M> {
        &self.source
    }

    pub fn target(&self) -> &IndObject<O, M> {
        &self.target
    }

    pub fn components(&self) -> &[Component<M>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component<M> {
        &self.components[i]
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Re-checks endpoints and every compatibility certificate.
    pub fn verify<C>(&self, cat: &C) -> Result<()>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        let (a, b) = (&self.source, &self.target);
        if self.components.len() != a.len() {
            return Err(Error::MalformedDiagram("one component per source level expected".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.index >= b.len() || cat.dom(&c.map) != *a.object(i) || cat.cod(&c.map) != *b.object(c.index) {
                return Err(Error::MalformedDiagram(format!("component {i} has the wrong endpoints")));
            }
        }
        let ai = a.index();
        let bi = b.index();
        let mut seen = vec![false; ai.morphism_count()];
        for cert in &self.certificates {
            let t = cert.morphism;
            let (i, i2) = (ai.dom(t), ai.cod(t));
            let (c1, c2) = (&self.components[i], &self.components[i2]);
            if bi.dom(cert.left) != c1.index
                || bi.dom(cert.right) != c2.index
                || bi.cod(cert.left) != cert.apex
                || bi.cod(cert.right) != cert.apex
            {
                return Err(Error::IncompatibleMorphisms(format!(
                    "certificate for `{}` has the wrong shape",
                    ai.morphism(t).name
                )));
            }
            let lhs = cat.compose(b.map(cert.left), &c1.map);
            let rhs = cat.compose(b.map(cert.right), &cat.compose(&c2.map, a.map(t)));
            if lhs != rhs {
                return Err(Error::IncompatibleMorphisms(format!(
                    "components disagree along `{}`",
                    ai.morphism(t).name
                )));
            }
            seen[t] = true;
        }
        if let Some(t) = (0..ai.morphism_count()).find(|&t| !seen[t] && !ai.is_identity(t)) {
            return Err(Error::IncompatibleMorphisms(format!(
                "no certificate for `{}`",
                ai.morphism(t).name
            )));
        }
        Ok(())
    }
}

/// The level-wise data of `Hom(A, B)` between two ind-objects:
/// `Colim_j Hom(A_i, B_j)` for every source level `i`.
pub struct IndHom<'a, C: Category + ?Sized> {
    cat: &'a C,
    source: IndObject<C::Obj, C::Mor>,
    target: IndObject<C::Obj, C::Mor>,
    levels: Vec<HomColimit<C::Mor>>,
}

impl<'a, C: Category + ?Sized> IndHom<'a, C> {
    pub fn new(cat: &'a C, source: &IndObject<C::Obj, C::Mor>, target: &IndObject<C::Obj, C::Mor>) -> Result<Self> {
        let levels = source
            .objects()
            .iter()
            .map(|x| hom_into_ind(cat, x, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cat,
            source: source.clone(),
            target: target.clone(),
            levels,
        })
    }

    pub fn level(&self, i: usize) -> &HomColimit<C::Mor> {
        &self.levels[i]
    }

    /// Class of `m: A_i -> B_j` in level `i`.
    pub fn canonical(&self, i: usize, j: usize, m: &C::Mor) -> Result<usize> {
        self.levels[i].classify(j, m).ok_or_else(|| {
            Error::MalformedDiagram(format!("{m:?} is not a morphism from level {i} to level {j}"))
        })
    }

    /// For `t: i -> i'`, the class map `Colim_j Hom(A_{i'}, B_j) ->
    /// Colim_j Hom(A_i, B_j)` given by precomposition with `A(t)`.
    fn transitions(&self) -> Result<Transitions> {
        let index = self.source.index();
        let mut arrows = Vec::new();
        for t in 0..index.morphism_count() {
            if index.is_identity(t) {
                continue;
            }
            let (i, i2) = (index.dom(t), index.cod(t));
            let lv = &self.levels[i2];
            let table = (0..lv.class_count())
                .map(|c| {
                    let (j, m) = lv.representative(c);
                    self.canonical(i, j, &self.cat.compose(m, self.source.map(t)))
                })
                .collect::<Result<Vec<_>>>()?;
            arrows.push(Arrow { from: i2, to: i, table });
        }
        Ok(Transitions {
            sizes: self.levels.iter().map(HomColimit::class_count).collect(),
            arrows,
        })
    }

    /// Every morphism `A -> B`, ordered lexicographically by the class
    /// index of each component.
    pub fn enumerate(&self) -> Result<Vec<IndMorphism<C::Obj, C::Mor>>> {
        let lim = limit_of(&self.transitions()?, DEFAULT_FAMILY_CAP)?;
        lim.families().iter().map(|f| self.materialize(f)).collect()
    }

    pub fn count(&self) -> Result<usize> {
        Ok(limit_of(&self.transitions()?, DEFAULT_FAMILY_CAP)?.len())
    }

    /// Canonical morphism with the given representatives, one `(j, map)`
    /// per source level.
    pub fn morphism(&self, components: &[(usize, C::Mor)]) -> Result<IndMorphism<C::Obj, C::Mor>> {
        if components.len() != self.source.len() {
            return Err(Error::MalformedDiagram("one component per source level expected".into()));
        }
        let classes = components
            .iter()
            .enumerate()
            .map(|(i, (j, m))| self.canonical(i, *j, m))
            .collect::<Result<Vec<_>>>()?;
        let tr = self.transitions()?;
        for a in &tr.arrows {
            if a.table[classes[a.from]] != classes[a.to] {
                return Err(Error::IncompatibleMorphisms(format!(
                    "components at levels {} and {} disagree",
                    a.to, a.from
                )));
            }
        }
        self.materialize(&classes)
    }

    fn materialize(&self, classes: &[usize]) -> Result<IndMorphism<C::Obj, C::Mor>> {
        let components: Vec<Component<C::Mor>> = classes
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let (j, m) = self.levels[i].representative(c);
                Component {
                    index: j,
                    map: m.clone(),
                }
            })
            .collect();
        let ai = self.source.index();
        let mut certificates = Vec::new();
        for t in 0..ai.morphism_count() {
            if !ai.is_identity(t) {
                certificates.push(self.certify(t, &components)?);
            }
        }
        Ok(IndMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
            certificates,
        })
    }

    fn certify(&self, t: usize, components: &[Component<C::Mor>]) -> Result<Certificate> {
        let (a, b, cat) = (&self.source, &self.target, self.cat);
        let ai = a.index();
        let bi = b.index();
        let (c1, c2) = (&components[ai.dom(t)], &components[ai.cod(t)]);
        let pulled = cat.compose(&c2.map, a.map(t));
        for k in 0..b.len() {
            for &u in bi.hom(c1.index, k) {
                let lhs = cat.compose(b.map(u), &c1.map);
                for &v in bi.hom(c2.index, k) {
                    if lhs == cat.compose(b.map(v), &pulled) {
                        return Ok(Certificate {
                            morphism: t,
                            apex: k,
                            left: u,
                            right: v,
                        });
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "equal classes without a common refinement along `{}`",
            ai.morphism(t).name
        )))
    }
}

/// `Hom(A, B) = Lim_i Colim_j Hom(A_i, B_j)`.
pub fn hom_ind<C>(cat: &C, a: &IndObject<C::Obj, C::Mor>, b: &IndObject<C::Obj, C::Mor>) -> Result<Vec<IndMorphism<C::Obj, C::Mor>>>
where
    C: Category + ?Sized,
{
    IndHom::new(cat, a, b)?.enumerate()
}

/// Canonical morphism from one `(j, f_i: A_i -> B_j)` per source level.
pub fn ind_morphism<C>(
    cat: &C,
    a: &IndObject<C::Obj, C::Mor>,
    b: &IndObject<C::Obj, C::Mor>,
    components: &[(usize, C::Mor)],
) -> Result<IndMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    IndHom::new(cat, a, b)?.morphism(components)
}

pub fn identity_ind<C>(cat: &C, a: &IndObject<C::Obj, C::Mor>) -> Result<IndMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    let comps: Vec<_> = (0..a.len()).map(|i| (i, cat.identity(a.object(i)))).collect();
    ind_morphism(cat, a, a, &comps)
}

/// A base morphism `x -> y` as a morphism of constant systems.
pub fn ind_from_base<C>(cat: &C, m: &C::Mor) -> Result<IndMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    let a = IndObject::constant(cat, cat.dom(m));
    let b = IndObject::constant(cat, cat.cod(m));
    ind_morphism(cat, &a, &b, &[(0, m.clone())])
}

/// `g . f`.
pub fn compose_ind<C>(
    cat: &C,
    f: &IndMorphism<C::Obj, C::Mor>,
    g: &IndMorphism<C::Obj, C::Mor>,
) -> Result<IndMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    if f.target != g.source {
        return Err(Error::IncompatibleMorphisms(
            "target of the first morphism is not the source of the second".into(),
        ));
    }
    let comps: Vec<_> = f
        .components
        .iter()
        .map(|c| {
            let d = &g.components[c.index];
            (d.index, cat.compose(&d.map, &c.map))
        })
        .collect();
    ind_morphism(cat, &f.source, &g.target, &comps)
}

/// An element of `Lim_j Colim_i Hom(A_i, B_j)`. Component `j` is a
/// representative `(i, A_i -> B_j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProMorphism<O, M> {
    inner: IndMorphism<O, M>,
    source: ProObject<O, M>,
    target: ProObject<O, M>,
}

impl<O, M: fmt::Debug> fmt::Debug for ProMorphism<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProMorphism")
            .field("components", &self.inner.components)
            .finish()
    }
}

impl<O: Clone + PartialEq, M: Clone + PartialEq> ProMorphism<O, M> {
    fn wrap(inner: IndMorphism<O, M>) -> Self {
        Self {
            source: ProObject::from_ind_op(inner.target.clone()),
            target: ProObject::from_ind_op(inner.source.clone()),
            inner,
        }
    }

    pub fn source(&self) -> &ProObject<O, M> {
        &self.source
    }

    pub fn target(&self) -> &ProObject<O, M> {
        &self.target
    }

    pub fn components(&self) -> &[Component<M>] {
        self.inner.components()
    }

    pub fn component(&self, j: usize) -> &Component<M> {
        self.inner.component(j)
    }

    /// The same morphism as an ind-morphism of the opposite category,
    /// running from the target system to the source system.
    pub fn as_ind_op(&self) -> &IndMorphism<O, M> {
        &self.inner
    }

    pub fn verify<C>(&self, cat: &C) -> Result<()>
    where
        C: Category<Obj = O, Mor = M> + ?Sized,
    {
        self.inner.verify(&Opposite(cat))
    }
}

/// `Hom(A, B) = Lim_j Colim_i Hom(A_i, B_j)`, computed as
/// `Hom(B, A)` among ind-objects of the opposite category.
pub fn hom_pro<C>(cat: &C, a: &ProObject<C::Obj, C::Mor>, b: &ProObject<C::Obj, C::Mor>) -> Result<Vec<ProMorphism<C::Obj, C::Mor>>>
where
    C: Category + ?Sized,
{
    Ok(hom_ind(&Opposite(cat), b.as_ind_op(), a.as_ind_op())?
        .into_iter()
        .map(ProMorphism::wrap)
        .collect())
}

pub fn count_pro<C>(cat: &C, a: &ProObject<C::Obj, C::Mor>, b: &ProObject<C::Obj, C::Mor>) -> Result<usize>
where
    C: Category + ?Sized,
{
    IndHom::new(&Opposite(cat), b.as_ind_op(), a.as_ind_op())?.count()
}

/// Canonical morphism from one `(i, f_j: A_i -> B_j)` per target level.
pub fn pro_morphism<C>(
    cat: &C,
    a: &ProObject<C::Obj, C::Mor>,
    b: &ProObject<C::Obj, C::Mor>,
    components: &[(usize, C::Mor)],
) -> Result<ProMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    ind_morphism(&Opposite(cat), b.as_ind_op(), a.as_ind_op(), components).map(ProMorphism::wrap)
}

pub fn identity_pro<C>(cat: &C, a: &ProObject<C::Obj, C::Mor>) -> Result<ProMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    identity_ind(&Opposite(cat), a.as_ind_op()).map(ProMorphism::wrap)
}

pub fn pro_from_base<C>(cat: &C, m: &C::Mor) -> Result<ProMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    let a = ProObject::constant(cat, cat.dom(m));
    let b = ProObject::constant(cat, cat.cod(m));
    pro_morphism(cat, &a, &b, &[(0, m.clone())])
}

/// `g . f`.
pub fn compose_pro<C>(
    cat: &C,
    f: &ProMorphism<C::Obj, C::Mor>,
    g: &ProMorphism<C::Obj, C::Mor>,
) -> Result<ProMorphism<C::Obj, C::Mor>>
where
    C: Category + ?Sized,
{
    compose_ind(&Opposite(cat), &g.inner, &f.inner).map(ProMorphism::wrap)
}
