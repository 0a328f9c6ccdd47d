//! Finite categories stored as explicit composition tables.
//!
//! A [`FinCategory`] is the ambient small category for every other
//! construction in the crate: index categories of ind/pro systems, finite
//! base categories, their opposites and slices. Objects and morphisms are
//! dense `usize` identifiers; every search in this module walks them in
//! ascending order so results are reproducible.

mod filtering;
mod functor;
mod parse;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub use filtering::{is_filtering, Cocone, Equalizer, FilteringFailure, FilteringWitness};
pub use functor::{Functor, Variance};
pub use parse::{parse_category, parse_category_unchecked, CategorySections};

/// Upper bounds on the size of a [`FinCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCaps {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        Self {
            max_objects: 64,
            max_morphisms: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category with a total composition table on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // compose[g * n + f] = g . f
    compose: Vec<Option<u32>>,
    // hom[dom * objects + cod], ascending morphism ids
    hom: Vec<Vec<usize>>,
}

/// One entry of a [`FinCategory::validate`] report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityEndpoints { object: usize },
    MissingComposite { g: usize, f: usize },
    NonComposableEntry { g: usize, f: usize },
    WrongEndpoints { g: usize, f: usize, h: usize },
    LeftIdentity { f: usize },
    RightIdentity { f: usize },
    Associativity { h: usize, g: usize, f: usize },
}

impl Violation {
    pub fn describe(&self, c: &FinCategory) -> String {
        let m = |i: usize| c.morphism(i).name.as_str();
        match *self {
            Violation::IdentityEndpoints { object } => {
                format!("identity of `{}` is not an endomorphism of it", c.object_name(object))
            }
            Violation::MissingComposite { g, f } => format!("missing composite {} . {}", m(g), m(f)),
            Violation::NonComposableEntry { g, f } => {
                format!("composite {} . {} given for a non-composable pair", m(g), m(f))
            }
            Violation::WrongEndpoints { g, f, h } => {
                format!("{} . {} = {} has the wrong endpoints", m(g), m(f), m(h))
            }
            Violation::LeftIdentity { f } => format!("left identity law fails for {}", m(f)),
            Violation::RightIdentity { f } => format!("right identity law fails for {}", m(f)),
            Violation::Associativity { h, g, f } => {
                format!("associativity fails for ({}, {}, {})", m(h), m(g), m(f))
            }
        }
    }
}

/// Incremental constructor for [`FinCategory`].
///
/// Identities that are not declared are synthesized as `id_<object>` (an
/// existing endomorphism with that name is reused), and identity
/// composites missing from the table are filled in.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<usize>>,
    entries: Vec<(usize, usize, usize)>,
    caps: SizeCaps,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_caps(caps: SizeCaps) -> Self {
        Self {
            caps,
            ..Self::default()
        }
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, dom: usize, cod: usize) -> usize {
        self.morphisms.push(Morphism {
            name: name.into(),
            dom,
            cod,
        });
        self.morphisms.len() - 1
    }

    /// Declares `mor` as the identity of `object`.
    pub fn identity(&mut self, object: usize, mor: usize) {
        self.identities[object] = Some(mor);
    }

    /// Records `g . f = h`.
    pub fn compose(&mut self, g: usize, f: usize, h: usize) {
        self.entries.push((g, f, h));
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Builds and checks every category law.
    pub fn build(self) -> Result<FinCategory> {
        let c = self.build_unchecked()?;
        let report = c.validate();
        if let Some(first) = report.first() {
            return Err(Error::InvalidCategory {
                count: report.len(),
                first: first.describe(&c),
            });
        }
        Ok(c)
    }

    /// Builds after checking only names, references and caps; law
    /// violations are left for [`FinCategory::validate`] to report.
    pub fn build_unchecked(mut self) -> Result<FinCategory> {
        let n_obj = self.objects.len();
        let mut seen = HashMap::new();
        for o in &self.objects {
            if seen.insert(o.clone(), ()).is_some() {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        for m in &self.morphisms {
            if m.dom >= n_obj || m.cod >= n_obj {
                return Err(Error::UnknownObject(format!("endpoint of `{}`", m.name)));
            }
        }
        for x in 0..n_obj {
            if self.identities[x].is_none() {
                let name = format!("id_{}", self.objects[x]);
                let id = match self.morphisms.iter().position(|m| m.name == name) {
                    Some(id) => id,
                    None => self.morphism(name, x, x),
                };
                self.identities[x] = Some(id);
            }
        }
        let mut names = HashMap::new();
        for m in &self.morphisms {
            if names.insert(m.name.clone(), ()).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
        }
        let n_mor = self.morphisms.len();
        if n_obj > self.caps.max_objects || n_mor > self.caps.max_morphisms {
            return Err(Error::CategoryTooLarge {
                objects: n_obj,
                morphisms: n_mor,
                max_objects: self.caps.max_objects,
                max_morphisms: self.caps.max_morphisms,
            });
        }
        let identities: Vec<usize> = self.identities.iter().map(|i| i.unwrap()).collect();
        let mut compose = vec![None; n_mor * n_mor];
        for &(g, f, h) in &self.entries {
            if g >= n_mor || f >= n_mor || h >= n_mor {
                return Err(Error::UnknownMorphism(format!("composition entry ({g}, {f}, {h})")));
            }
            compose[g * n_mor + f] = Some(h as u32);
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            let left = identities[m.cod];
            let right = identities[m.dom];
            compose[left * n_mor + f].get_or_insert(f as u32);
            compose[f * n_mor + right].get_or_insert(f as u32);
        }
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for (f, m) in self.morphisms.iter().enumerate() {
            hom[m.dom * n_obj + m.cod].push(f);
        }
        Ok(FinCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            identities,
            compose,
            hom,
        })
    }
}

/// Full subcategory together with the embedding into its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub category: FinCategory,
    /// Parent id of each object of `category`.
    pub objects: Vec<usize>,
    /// Parent id of each morphism of `category`.
    pub morphisms: Vec<usize>,
}

impl FinCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.dom(f)] == f
    }

    /// `g . f`, or `None` when the table has no entry.
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f].map(|h| h as usize)
    }

    /// `g . f` for a composable pair of a validated category.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite {} . {}",
                self.morphisms[g].name, self.morphisms[f].name
            )
        })
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    /// Morphisms with domain `x`, ordered by (codomain, id).
    pub fn out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |y| self.hom(x, y).iter().copied())
    }

    /// Lists every identity, composition-table and associativity
    /// violation. Empty iff the data is a category.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.morphisms.len();
        let mut out = Vec::new();
        for (x, &id) in self.identities.iter().enumerate() {
            if self.dom(id) != x || self.cod(id) != x {
                out.push(Violation::IdentityEndpoints { object: x });
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.cod(f) == self.dom(g);
                match (composable, self.try_compose(g, f)) {
                    (true, None) => out.push(Violation::MissingComposite { g, f }),
                    (false, Some(_)) => out.push(Violation::NonComposableEntry { g, f }),
                    (true, Some(h)) if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) => {
                        out.push(Violation::WrongEndpoints { g, f, h })
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            if self.try_compose(self.identities[self.cod(f)], f) != Some(f) {
                out.push(Violation::LeftIdentity { f });
            }
            if self.try_compose(f, self.identities[self.dom(f)]) != Some(f) {
                out.push(Violation::RightIdentity { f });
            }
        }
        for f in 0..n {
            for g in self.out_of(self.cod(f)) {
                for h in self.out_of(self.cod(g)) {
                    let left = self
                        .try_compose(h, g)
                        .and_then(|hg| self.try_compose(hg, f));
                    let right = self
                        .try_compose(g, f)
                        .and_then(|gf| self.try_compose(h, gf));
                    if left.is_some() && right.is_some() && left != right {
                        out.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        out
    }

    /// The opposite category: endpoints swapped, composition reversed.
    /// Ids and names are preserved, so `c.opposite().opposite() == c`.
    pub fn opposite(&self) -> FinCategory {
        let n = self.morphisms.len();
        let no = self.objects.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                dom: m.cod,
                cod: m.dom,
            })
            .collect();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                compose[g * n + f] = self.compose[f * n + g];
            }
        }
        let mut hom = vec![Vec::new(); no * no];
        for (f, m) in morphisms.iter().enumerate() {
            hom[m.dom * no + m.cod].push(f);
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            compose,
            hom,
        }
    }

    /// The slice category over `x`: objects are the morphisms into `x`,
    /// morphisms are commuting triangles.
    pub fn slice(&self, x: usize) -> Result<FinCategory> {
        self.slice_with_caps(x, SizeCaps::default())
    }

    pub fn slice_with_caps(&self, x: usize, caps: SizeCaps) -> Result<FinCategory> {
        if x >= self.objects.len() {
            return Err(Error::UnknownObject(format!("#{x}")));
        }
        let over: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| self.cod(f) == x)
            .collect();
        let mut b = CategoryBuilder::with_caps(caps);
        for &f in &over {
            b.object(self.morphisms[f].name.clone());
        }
        // (underlying morphism, source slot, target slot) -> slice morphism
        let mut index = HashMap::new();
        let mut triangles = Vec::new();
        for (s, &p) in over.iter().enumerate() {
            for (t, &q) in over.iter().enumerate() {
                for &h in self.hom(self.dom(p), self.dom(q)) {
                    if self.compose(q, h) != p {
                        continue;
                    }
                    let id = if s == t && self.is_identity(h) {
                        let id = b.morphism(format!("id_{}", self.morphisms[p].name), s, t);
                        b.identity(s, id);
                        id
                    } else {
                        b.morphism(
                            format!(
                                "{}:{}->{}",
                                self.morphisms[h].name, self.morphisms[p].name, self.morphisms[q].name
                            ),
                            s,
                            t,
                        )
                    };
                    index.insert((h, s, t), id);
                    triangles.push((h, s, t, id));
                }
            }
        }
        for &(h1, s1, t1, id1) in &triangles {
            for &(h2, s2, t2, id2) in &triangles {
                if s2 == t1 {
                    let h = self.compose(h2, h1);
                    b.compose(id2, id1, index[&(h, s1, t2)]);
                }
            }
        }
        b.build()
    }

    /// Full subcategory on `objects` (parent ids, kept in the given order).
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<Restriction> {
        let mut b = CategoryBuilder::with_caps(SizeCaps {
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        });
        let mut slot = vec![None; self.objects.len()];
        for &x in objects {
            slot[x] = Some(b.object(self.objects[x].clone()));
        }
        let mut local = vec![None; self.morphisms.len()];
        let mut parent = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if let (Some(s), Some(t)) = (slot[m.dom], slot[m.cod]) {
                let id = b.morphism(m.name.clone(), s, t);
                if self.is_identity(f) {
                    b.identity(s, id);
                }
                local[f] = Some(id);
                parent.push(f);
            }
        }
        for &g in &parent {
            for &f in &parent {
                if let Some(h) = self.try_compose(g, f) {
                    b.compose(local[g].unwrap(), local[f].unwrap(), local[h].unwrap());
                }
            }
        }
        Ok(Restriction {
            category: b.build()?,
            objects: objects.to_vec(),
            morphisms: parent,
        })
    }

    /// Full subcategory on the objects that receive a morphism from `i0`.
    pub fn cofinal_restriction(&self, i0: usize) -> Result<Restriction> {
        let reach: Vec<usize> = (0..self.objects.len())
            .filter(|&x| !self.hom(i0, x).is_empty())
            .collect();
        self.full_subcategory(&reach)
    }

    /// A cocone over the identity functor: an object `k` and arrows
    /// `c_i: i -> k` with `c_j . t = c_i` for every `t: i -> j`. Exists
    /// for every nonempty finite filtering category.
    pub fn total_cocone(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.objects.len();
        for k in 0..n {
            let mut choice = vec![usize::MAX; n];
            if self.total_cocone_search(k, 0, &mut choice) {
                return Some((k, choice));
            }
        }
        None
    }

    fn total_cocone_search(&self, k: usize, i: usize, choice: &mut Vec<usize>) -> bool {
        if i == self.objects.len() {
            return true;
        }
        for &c in self.hom(i, k) {
            choice[i] = c;
            let ok = (0..self.morphisms.len()).all(|t| {
                let (a, b) = (self.dom(t), self.cod(t));
                if a > i || b > i {
                    return true;
                }
                self.compose(choice[b], t) == choice[a]
            });
            if ok && self.total_cocone_search(k, i + 1, choice) {
                return true;
            }
        }
        choice[i] = usize::MAX;
        false
    }

    /// The one-object category with only its identity.
    pub fn terminal() -> FinCategory {
        let mut b = CategoryBuilder::new();
        b.object("*");
        b.build().expect("terminal category")
    }

    /// Discrete category on `n` objects named `0..n`.
    pub fn discrete(n: usize) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(i.to_string());
        }
        b.build()
    }

    /// Thin category of the preorder generated by `relations` (pairs
    /// `(i, j)` meaning `i <= j`) on `n` objects named `0..n`.
    pub fn preorder(n: usize, relations: &[(usize, usize)]) -> Result<FinCategory> {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::UnknownObject(format!("{}", i.max(j))));
            }
            le[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i * n + k] && le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(i.to_string());
        }
        let mut id = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in 0..n {
                if le[i * n + j] {
                    let name = if i == j {
                        format!("id_{i}")
                    } else {
                        format!("{i}<={j}")
                    };
                    id[i * n + j] = b.morphism(name, i, j);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if le[i * n + j] && le[j * n + k] {
                        b.compose(id[j * n + k], id[i * n + j], id[i * n + k]);
                    }
                }
            }
        }
        b.build()
    }

    /// The chain `0 -> 1 -> ... -> n-1`.
    pub fn chain(n: usize) -> Result<FinCategory> {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::preorder(n, &rel)
    }

    /// One-object category from a monoid multiplication table over
    /// elements `0..n`, where element 0 is the unit and `table[a][b] = a . b`.
    pub fn monoid(names: &[&str], table: &[Vec<usize>]) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        let x = b.object("*");
        let ids: Vec<usize> = names.iter().map(|n| b.morphism(*n, x, x)).collect();
        b.identity(x, ids[0]);
        for (a, row) in table.iter().enumerate() {
            for (c, &p) in row.iter().enumerate() {
                b.compose(ids[a], ids[c], ids[p]);
            }
        }
        b.build()
    }

    /// Category of all functions between the sets `{0..s}` for each given
    /// size `s`. Object `k` is named `s<k>:<size>`.
    pub fn finite_sets(sizes: &[usize]) -> Result<FinCategory> {
        let mut b = CategoryBuilder::new();
        for (k, s) in sizes.iter().enumerate() {
            b.object(format!("s{k}:{s}"));
        }
        let mut tables: Vec<Vec<usize>> = Vec::new();
        let mut lookup = HashMap::new();
        for (a, &sa) in sizes.iter().enumerate() {
            for (c, &sc) in sizes.iter().enumerate() {
                for table in all_functions(sa, sc) {
                    let name = if a == c && table.iter().enumerate().all(|(i, &v)| i == v) {
                        format!("id_s{a}:{sa}")
                    } else {
                        format!("s{a}>s{c}{table:?}")
                    };
                    let id = b.morphism(name, a, c);
                    lookup.insert((a, c, table.clone()), id);
                    tables.push(table);
                }
            }
        }
        let snapshot = b.clone();
        let ms: Vec<(usize, usize)> = (0..tables.len())
            .map(|f| {
                let m = &snapshot.morphisms[f];
                (m.dom, m.cod)
            })
            .collect();
        for (g, &(gd, gc)) in ms.iter().enumerate() {
            for (f, &(fd, fc)) in ms.iter().enumerate() {
                if fc != gd {
                    continue;
                }
                let t: Vec<usize> = tables[f].iter().map(|&v| tables[g][v]).collect();
                b.compose(g, f, lookup[&(fd, gc, t)]);
            }
        }
        b.build()
    }
}

pub(crate) fn all_functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if to == 0 {
        if from == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0; from];
    loop {
        out.push(cur.clone());
        let mut i = from;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < to {
                break;
            }
            cur[i] = 0;
        }
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects:")?;
        for o in &self.objects {
            writeln!(f, "  {o}")?;
        }
        writeln!(f, "morphisms:")?;
        for m in &self.morphisms {
            writeln!(
                f,
                "  {}: {} -> {}",
                m.name, self.objects[m.dom], self.objects[m.cod]
            )?;
        }
        writeln!(f, "compose:")?;
        let n = self.morphisms.len();
        for g in 0..n {
            for h in 0..n {
                if let Some(c) = self.try_compose(g, h) {
                    if self.is_identity(g) || self.is_identity(h) {
                        continue;
                    }
                    writeln!(
                        f,
                        "  {} . {} = {}",
                        self.morphisms[g].name, self.morphisms[h].name, self.morphisms[c].name
                    )?;
                }
            }
        }
        Ok(())
    }
}
