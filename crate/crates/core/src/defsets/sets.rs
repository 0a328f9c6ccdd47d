use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::aut::{automorphism_group, AutGroup};
use super::structure::FinStructure;
use crate::error::{Error, Result};

pub const DEFAULT_ARITY_CAP: usize = 3;
pub const DEFAULT_HOM_CAP: usize = 1_000_000;
/// Largest power of the universe for which orbit tables are built.
pub const MAX_TUPLES: usize = 1 << 22;

/// An automorphism-invariant set of tuples, stored as sorted tuple codes
/// (a tuple read as a base-`|M|` number, first entry most significant).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefSet {
    arity: usize,
    members: Arc<Vec<u32>>,
}

impl fmt::Debug for DefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DefSet{}{:?}", self.arity, self.members)
    }
}

impl DefSet {
    pub(crate) fn from_sorted(arity: usize, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            arity,
            members: Arc::new(members),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, code: u32) -> bool {
        self.position(code).is_some()
    }

    pub fn position(&self, code: u32) -> Option<usize> {
        self.members.binary_search(&code).ok()
    }

    pub fn is_subset(&self, other: &DefSet) -> bool {
        self.arity == other.arity && self.members.iter().all(|&c| other.contains(c))
    }

    pub fn intersection(&self, other: &DefSet) -> DefSet {
        assert_eq!(self.arity, other.arity, "intersection of different arities");
        let m = self.members.iter().copied().filter(|&c| other.contains(c)).collect();
        DefSet::from_sorted(self.arity, m)
    }

    pub fn union(&self, other: &DefSet) -> DefSet {
        assert_eq!(self.arity, other.arity, "union of different arities");
        let mut m: Vec<u32> = self.members.iter().chain(other.members.iter()).copied().collect();
        m.sort_unstable();
        m.dedup();
        DefSet::from_sorted(self.arity, m)
    }
}

/// A function between definable sets with invariant graph. `table[k]` is
/// the position in the codomain of the image of the `k`-th domain member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DefMap {
    domain: DefSet,
    codomain: DefSet,
    table: Arc<Vec<u32>>,
}

impl fmt::Debug for DefMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(u32, u32)> = self
            .domain
            .members
            .iter()
            .zip(self.table.iter())
            .map(|(&x, &k)| (x, self.codomain.members[k as usize]))
            .collect();
        write!(f, "DefMap{}->{}{:?}", self.domain.arity, self.codomain.arity, pairs)
    }
}

impl DefMap {
    pub(crate) fn from_table(domain: DefSet, codomain: DefSet, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), domain.len());
        Self {
            domain,
            codomain,
            table: Arc::new(table),
        }
    }

    pub fn identity(x: &DefSet) -> DefMap {
        DefMap::from_table(x.clone(), x.clone(), (0..x.len() as u32).collect())
    }

    /// Inclusion `x -> y`, if `x` is a subset of `y`.
    pub fn inclusion(x: &DefSet, y: &DefSet) -> Option<DefMap> {
        if x.arity != y.arity {
            return None;
        }
        let table: Option<Vec<u32>> = x.members.iter().map(|&c| y.position(c).map(|p| p as u32)).collect();
        table.map(|t| DefMap::from_table(x.clone(), y.clone(), t))
    }

    pub fn domain(&self) -> &DefSet {
        &self.domain
    }

    pub fn codomain(&self) -> &DefSet {
        &self.codomain
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Image of the domain member at position `k`, as a code.
    pub fn apply_at(&self, k: usize) -> u32 {
        self.codomain.members[self.table[k] as usize]
    }

    pub fn apply(&self, code: u32) -> Option<u32> {
        self.domain.position(code).map(|k| self.apply_at(k))
    }

    /// `g . self`; panics unless `g` starts where `self` ends.
    pub fn then(&self, g: &DefMap) -> DefMap {
        assert_eq!(self.codomain, g.domain, "non-composable definable maps");
        let table = self.table.iter().map(|&k| g.table[k as usize]).collect();
        DefMap::from_table(self.domain.clone(), g.codomain.clone(), table)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.table.iter().all(|&k| !std::mem::replace(&mut seen[k as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &k in self.table.iter() {
            seen[k as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn image(&self) -> DefSet {
        let mut m: Vec<u32> = (0..self.domain.len()).map(|k| self.apply_at(k)).collect();
        m.sort_unstable();
        m.dedup();
        DefSet::from_sorted(self.codomain.arity, m)
    }

    /// Pairs of domain positions with equal images.
    pub fn kernel(&self) -> Vec<(usize, usize)> {
        let n = self.domain.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.table[a] == self.table[b] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Orbits of `Aut(M)` on tuples of one arity, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub arity: usize,
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<Vec<u32>>,
}

/// The category of definable sets of a finite structure: sets are the
/// `Aut(M)`-invariant sets of tuples.
pub struct Definability {
    structure: FinStructure,
    aut: AutGroup,
    arity_cap: usize,
    tables: Mutex<BTreeMap<usize, Arc<OrbitTable>>>,
}

impl fmt::Debug for Definability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Definability")
            .field("size", &self.structure.size())
            .field("aut_order", &self.aut.order())
            .finish()
    }
}

impl Definability {
    pub fn new(structure: FinStructure) -> Self {
        let aut = automorphism_group(&structure);
        Self::with_aut(structure, aut)
    }

    /// Uses a previously computed automorphism group.
    pub fn with_aut(structure: FinStructure, aut: AutGroup) -> Self {
        Self {
            structure,
            aut,
            arity_cap: DEFAULT_ARITY_CAP,
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_arity_cap(mut self, cap: usize) -> Self {
        self.arity_cap = cap;
        self
    }

    pub fn structure(&self) -> &FinStructure {
        &self.structure
    }

    pub fn aut(&self) -> &AutGroup {
        &self.aut
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn size(&self) -> usize {
        self.structure.size()
    }

    pub fn tuple_count(&self, arity: usize) -> Result<usize> {
        let n = self.size();
        let mut total: usize = 1;
        for _ in 0..arity {
            total = total.saturating_mul(n);
        }
        if total > MAX_TUPLES {
            return Err(Error::SizeCapExceeded {
                what: format!("tuples of arity {arity}"),
                cap: MAX_TUPLES,
            });
        }
        Ok(total)
    }

    pub fn encode(&self, tuple: &[usize]) -> u32 {
        let n = self.size() as u32;
        tuple.iter().fold(0, |acc, &a| acc * n + a as u32)
    }

    pub fn decode(&self, mut code: u32, arity: usize) -> Vec<usize> {
        let n = self.size() as u32;
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = (code % n) as usize;
            code /= n;
        }
        t
    }

    /// `p` applied entrywise to a tuple code.
    pub fn act(&self, p: &[usize], code: u32, arity: usize) -> u32 {
        let n = self.size() as u32;
        let mut out = 0;
        let mut scale = 1;
        let mut c = code;
        for _ in 0..arity {
            out += p[(c % n) as usize] as u32 * scale;
            c /= n;
            scale *= n;
        }
        out
    }

    /// Code of the concatenation of two tuples.
    pub fn concat(&self, x: u32, y: u32, y_arity: usize) -> u32 {
        x * (self.size() as u32).pow(y_arity as u32) + y
    }

    /// Inverse of [`Definability::concat`].
    pub fn split(&self, code: u32, y_arity: usize) -> (u32, u32) {
        let scale = (self.size() as u32).pow(y_arity as u32);
        (code / scale, code % scale)
    }

    pub fn orbit_table(&self, arity: usize) -> Result<Arc<OrbitTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&arity) {
            return Ok(t.clone());
        }
        let total = self.tuple_count(arity)?;
        let mut orbit_of = vec![u32::MAX; total];
        let mut orbits = Vec::new();
        for code in 0..total as u32 {
            if orbit_of[code as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit: Vec<u32> = self.aut.elements().iter().map(|p| self.act(p, code, arity)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &c in &orbit {
                orbit_of[c as usize] = id;
            }
            orbits.push(orbit);
        }
        let table = Arc::new(OrbitTable {
            arity,
            orbit_of,
            orbits,
        });
        self.tables.lock().unwrap().insert(arity, table.clone());
        Ok(table)
    }

    /// Installs a previously computed orbit table.
    pub fn insert_orbit_table(&self, table: OrbitTable) {
        self.tables.lock().unwrap().insert(table.arity, Arc::new(table));
    }

    pub fn cached_orbit_tables(&self) -> Vec<Arc<OrbitTable>> {
        self.tables.lock().unwrap().values().cloned().collect()
    }

    fn check_cap(&self, arity: usize) -> Result<()> {
        if arity > self.arity_cap {
            return Err(Error::ArityCapExceeded {
                requested: arity,
                cap: self.arity_cap,
            });
        }
        Ok(())
    }

    /// All definable sets of the given arity, as unions of orbits, in the
    /// order of the bit masks selecting the orbits.
    pub fn enumerate(&self, arity: usize) -> Result<Vec<DefSet>> {
        self.check_cap(arity)?;
        let t = self.orbit_table(arity)?;
        let k = t.orbits.len();
        if k >= 24 {
            return Err(Error::SizeCapExceeded {
                what: format!("definable sets of arity {arity} (2^{k})"),
                cap: 1 << 24,
            });
        }
        Ok((0u32..1 << k)
            .map(|mask| {
                let sel: Vec<usize> = (0..k).filter(|&o| mask >> o & 1 == 1).collect();
                self.union_of_orbits(&t, &sel)
            })
            .collect())
    }

    fn union_of_orbits(&self, t: &OrbitTable, sel: &[usize]) -> DefSet {
        let mut m: Vec<u32> = sel.iter().flat_map(|&o| t.orbits[o].iter().copied()).collect();
        m.sort_unstable();
        DefSet::from_sorted(t.arity, m)
    }

    /// Each orbit of the given arity as a definable set.
    pub fn orbits(&self, arity: usize) -> Result<Vec<DefSet>> {
        let t = self.orbit_table(arity)?;
        Ok((0..t.orbits.len()).map(|o| self.union_of_orbits(&t, &[o])).collect())
    }

    /// The orbit of a single tuple.
    pub fn orbit_of(&self, code: u32, arity: usize) -> DefSet {
        let mut orbit: Vec<u32> = self.aut.elements().iter().map(|p| self.act(p, code, arity)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        DefSet::from_sorted(arity, orbit)
    }

    /// Indices of the orbits making up `x`.
    pub fn orbit_decomposition(&self, x: &DefSet) -> Result<Vec<usize>> {
        let t = self.orbit_table(x.arity)?;
        let mut out: Vec<usize> = x.members.iter().map(|&c| t.orbit_of[c as usize] as usize).collect();
        out.dedup();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn is_invariant(&self, arity: usize, members: &[u32]) -> bool {
        let sorted = members.windows(2).all(|w| w[0] < w[1]);
        let lookup = |c: u32| {
            if sorted {
                members.binary_search(&c).is_ok()
            } else {
                members.contains(&c)
            }
        };
        self.aut
            .generators()
            .iter()
            .all(|p| members.iter().all(|&c| lookup(self.act(p, c, arity))))
    }

    /// A definable set from arbitrary tuple codes (deduplicated).
    pub fn set(&self, arity: usize, mut members: Vec<u32>) -> Result<DefSet> {
        let total = self.tuple_count(arity)?;
        members.sort_unstable();
        members.dedup();
        if members.last().is_some_and(|&c| c as usize >= total) {
            return Err(Error::NotInvariant("tuple code out of range".into()));
        }
        if !self.is_invariant(arity, &members) {
            return Err(Error::NotInvariant(format!(
                "{} is not closed under automorphisms",
                self.label_members(arity, &members)
            )));
        }
        Ok(DefSet::from_sorted(arity, members))
    }

    /// A definable set from tuples of element ids.
    pub fn set_of_tuples(&self, arity: usize, tuples: &[Vec<usize>]) -> Result<DefSet> {
        if tuples.iter().any(|t| t.len() != arity || t.iter().any(|&a| a >= self.size())) {
            return Err(Error::MalformedDiagram("tuple of the wrong shape".into()));
        }
        self.set(arity, tuples.iter().map(|t| self.encode(t)).collect())
    }

    /// `M^arity`.
    pub fn full(&self, arity: usize) -> Result<DefSet> {
        let total = self.tuple_count(arity)?;
        Ok(DefSet::from_sorted(arity, (0..total as u32).collect()))
    }

    pub fn empty(&self, arity: usize) -> DefSet {
        DefSet::from_sorted(arity, Vec::new())
    }

    /// The diagonal `{(x, x)}` inside `x × x`.
    pub fn diagonal(&self, x: &DefSet) -> DefSet {
        let m = x.members.iter().map(|&c| self.concat(c, c, x.arity)).collect();
        DefSet::from_sorted(2 * x.arity, m)
    }

    /// `n/o1,o2,...`: the arity and the orbits making up the set.
    pub fn canonical_id(&self, x: &DefSet) -> Result<String> {
        let orbits = self.orbit_decomposition(x)?;
        let list: Vec<String> = orbits.iter().map(usize::to_string).collect();
        Ok(format!("{}/{}", x.arity, list.join(",")))
    }

    pub fn set_by_id(&self, id: &str) -> Result<DefSet> {
        let bad = || Error::UnknownSetId(id.to_string());
        let (arity, list) = id.trim().split_once('/').ok_or_else(bad)?;
        let arity: usize = arity.trim().parse().map_err(|_| bad())?;
        self.check_cap(arity)?;
        let t = self.orbit_table(arity)?;
        let mut sel = Vec::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let o: usize = part.parse().map_err(|_| bad())?;
            if o >= t.orbits.len() || sel.contains(&o) {
                return Err(bad());
            }
            sel.push(o);
        }
        Ok(self.union_of_orbits(&t, &sel))
    }

    /// `a` for unary tuples, `(a,b)` otherwise.
    pub fn tuple_label(&self, code: u32, arity: usize) -> String {
        let t = self.decode(code, arity);
        let names: Vec<&str> = t.iter().map(|&a| self.structure.element_name(a)).collect();
        if arity == 1 {
            names[0].to_string()
        } else {
            format!("({})", names.join(","))
        }
    }

    fn label_members(&self, arity: usize, members: &[u32]) -> String {
        let items: Vec<String> = members.iter().map(|&c| self.tuple_label(c, arity)).collect();
        format!("{{{}}}", items.join(" "))
    }

    pub fn set_label(&self, x: &DefSet) -> String {
        self.label_members(x.arity, &x.members)
    }

    /// The graph `{(x, f(x))}` as a set of arity `m + n`.
    pub fn graph(&self, f: &DefMap) -> DefSet {
        let n = f.codomain.arity;
        let m = (0..f.domain.len())
            .map(|k| self.concat(f.domain.members[k], f.apply_at(k), n))
            .collect();
        DefSet::from_sorted(f.domain.arity + n, m)
    }

    /// Whether `table` (codomain positions) is a definable map `x -> y`.
    /// Equivariance and invariance of the graph are both computed and
    /// must agree.
    pub fn is_definable_map(&self, table: &[u32], x: &DefSet, y: &DefSet) -> bool {
        if table.len() != x.len() || table.iter().any(|&k| k as usize >= y.len()) {
            return false;
        }
        let f = DefMap::from_table(x.clone(), y.clone(), table.to_vec());
        let equivariant = self.aut.elements().iter().all(|p| {
            (0..x.len()).all(|k| {
                let moved = self.act(p, x.members[k], x.arity);
                match x.position(moved) {
                    Some(k2) => f.apply_at(k2) == self.act(p, f.apply_at(k), y.arity),
                    None => false,
                }
            })
        });
        let graph = self.graph(&f);
        let invariant = self.is_invariant(graph.arity, &graph.members);
        assert_eq!(
            equivariant, invariant,
            "equivariance and graph invariance disagree on {f:?}"
        );
        equivariant
    }

    pub fn map(&self, x: &DefSet, y: &DefSet, table: Vec<u32>) -> Result<DefMap> {
        if !self.is_definable_map(&table, x, y) {
            return Err(Error::NotDefinable(format!("{table:?}")));
        }
        Ok(DefMap::from_table(x.clone(), y.clone(), table))
    }

    /// A definable map given on tuples of element ids.
    pub fn map_fn(&self, x: &DefSet, y: &DefSet, f: impl Fn(&[usize]) -> Vec<usize>) -> Result<DefMap> {
        let mut table = Vec::with_capacity(x.len());
        for &c in x.members.iter() {
            let image = f(&self.decode(c, x.arity));
            if image.len() != y.arity || image.iter().any(|&a| a >= self.size()) {
                return Err(Error::NotDefinable("image tuple of the wrong shape".into()));
            }
            let k = y
                .position(self.encode(&image))
                .ok_or_else(|| Error::NotDefinable("image outside the codomain".into()))?;
            table.push(k as u32);
        }
        self.map(x, y, table)
    }

    /// The map `x -> y` sending a tuple to the listed coordinates.
    pub fn projection(&self, x: &DefSet, coords: &[usize], y: &DefSet) -> Result<DefMap> {
        if coords.len() != y.arity || coords.iter().any(|&c| c >= x.arity) {
            return Err(Error::NotDefinable("projection coordinates out of range".into()));
        }
        self.map_fn(x, y, |t| coords.iter().map(|&c| t[c]).collect())
    }

    /// Every definable map `x -> y`, in lexicographic order of the images
    /// of the orbit representatives of `x`.
    ///
    /// A map is fixed by its values on one representative `a` per orbit,
    /// and `b` is an admissible value at `a` iff the stabilizer of `a`
    /// fixes `b`.
    pub fn hom(&self, x: &DefSet, y: &DefSet, cap: usize) -> Result<Vec<DefMap>> {
        let t = self.orbit_table(x.arity)?;
        let mut reps: Vec<u32> = Vec::new();
        let mut seen_orbit = Vec::new();
        for &c in x.members.iter() {
            let o = t.orbit_of[c as usize];
            if !seen_orbit.contains(&o) {
                seen_orbit.push(o);
                reps.push(c);
            }
        }
        // per orbit: the partial tables for every admissible value
        let mut options: Vec<Vec<Vec<(u32, u32)>>> = Vec::with_capacity(reps.len());
        let mut total: usize = 1;
        for &a in &reps {
            let stab: Vec<&Vec<usize>> = self
                .aut
                .elements()
                .iter()
                .filter(|p| self.act(p, a, x.arity) == a)
                .collect();
            let mut opts = Vec::new();
            for &b in y.members.iter() {
                if stab.iter().all(|p| self.act(p, b, y.arity) == b) {
                    let mut partial: Vec<(u32, u32)> = self
                        .aut
                        .elements()
                        .iter()
                        .map(|p| {
                            let xa = x.position(self.act(p, a, x.arity)).expect("invariant domain") as u32;
                            let yb = y.position(self.act(p, b, y.arity)).expect("invariant codomain") as u32;
                            (xa, yb)
                        })
                        .collect();
                    partial.sort_unstable();
                    partial.dedup();
                    opts.push(partial);
                }
            }
            total = total.saturating_mul(opts.len());
            options.push(opts);
        }
        if total > cap {
            return Err(Error::SizeCapExceeded {
                what: format!("Hom of a {}-element set into a {}-element set", x.len(), y.len()),
                cap,
            });
        }
        let mut out = Vec::with_capacity(total);
        let mut choice = vec![0usize; options.len()];
        if options.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        loop {
            let mut table = vec![0u32; x.len()];
            for (o, &c) in choice.iter().enumerate() {
                for &(k, v) in &options[o][c] {
                    table[k as usize] = v;
                }
            }
            out.push(DefMap::from_table(x.clone(), y.clone(), table));
            // odometer, last orbit fastest
            let mut pos = options.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < options[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    /// `x × y` with its two projections.
    pub fn product(&self, x: &DefSet, y: &DefSet) -> (DefSet, DefMap, DefMap) {
        let mut members = Vec::with_capacity(x.len() * y.len());
        let mut p1 = Vec::with_capacity(x.len() * y.len());
        let mut p2 = Vec::with_capacity(x.len() * y.len());
        for (i, &a) in x.members.iter().enumerate() {
            for (j, &b) in y.members.iter().enumerate() {
                members.push(self.concat(a, b, y.arity));
                p1.push(i as u32);
                p2.push(j as u32);
            }
        }
        let prod = DefSet::from_sorted(x.arity + y.arity, members);
        let pi1 = DefMap::from_table(prod.clone(), x.clone(), p1);
        let pi2 = DefMap::from_table(prod.clone(), y.clone(), p2);
        (prod, pi1, pi2)
    }

    /// `{(a, b) : p(a) = q(b)}` with its two projections.
    pub fn fiber_product(&self, p: &DefMap, q: &DefMap) -> Result<(DefSet, DefMap, DefMap)> {
        if p.codomain != q.codomain {
            return Err(Error::IncompatibleMorphisms("fiber product of maps with different targets".into()));
        }
        let (x, y) = (&p.domain, &q.domain);
        let mut members = Vec::new();
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        for i in 0..x.len() {
            for j in 0..y.len() {
                if p.table[i] == q.table[j] {
                    members.push(self.concat(x.members[i], y.members[j], y.arity));
                    p1.push(i as u32);
                    p2.push(j as u32);
                }
            }
        }
        let fp = DefSet::from_sorted(x.arity + y.arity, members);
        Ok((
            fp.clone(),
            DefMap::from_table(fp.clone(), x.clone(), p1),
            DefMap::from_table(fp, y.clone(), p2),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsets::bundled;

    fn orbit_counts(def: &Definability, arity: usize) -> usize {
        def.orbit_table(arity).unwrap().orbits.len()
    }

    #[test]
    fn orbit_counts_of_bundled_structures() {
        let (s1, s2, s3) = (bundled::s1(), bundled::s2(), bundled::s3());
        assert_eq!(orbit_counts(&s1, 2), 2);
        assert_eq!(orbit_counts(&s2, 2), 3);
        assert_eq!(orbit_counts(&s3, 1), 2);
        assert_eq!(s1.enumerate(2).unwrap().len(), 4);
        assert_eq!(s2.enumerate(2).unwrap().len(), 8);
        assert_eq!(s3.enumerate(1).unwrap().len(), 4);
        assert_eq!(s1.enumerate(0).unwrap().len(), 2);
    }

    #[test]
    fn orbits_partition_the_tuples() {
        for def in [bundled::s1(), bundled::s2(), bundled::s3()] {
            for arity in 0..=3 {
                let t = def.orbit_table(arity).unwrap();
                let mut all: Vec<u32> = t.orbits.concat();
                all.sort_unstable();
                assert_eq!(all, (0..def.tuple_count(arity).unwrap() as u32).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn arity_cap_is_enforced() {
        let s1 = bundled::s1();
        assert!(matches!(
            s1.enumerate(4),
            Err(Error::ArityCapExceeded { requested: 4, cap: 3 })
        ));
    }

    #[test]
    fn hom_counts() {
        let s2 = bundled::s2();
        let m = s2.full(1).unwrap();
        assert_eq!(s2.hom(&m, &m, DEFAULT_HOM_CAP).unwrap().len(), 3);
        let s3 = bundled::s3();
        let m = s3.full(1).unwrap();
        assert_eq!(s3.hom(&m, &m, DEFAULT_HOM_CAP).unwrap().len(), 4);
        let e = s3.empty(1);
        assert_eq!(s3.hom(&e, &m, DEFAULT_HOM_CAP).unwrap().len(), 1);
        assert_eq!(s3.hom(&m, &e, DEFAULT_HOM_CAP).unwrap().len(), 0);
    }

    #[test]
    fn hom_agrees_with_filtering_all_tables() {
        for def in [bundled::s1(), bundled::s2(), bundled::s3()] {
            let sets: Vec<DefSet> = (0..=2).flat_map(|a| def.enumerate(a).unwrap()).collect();
            for x in &sets {
                for y in &sets {
                    let total = (y.len() as u64).pow(x.len() as u32);
                    if total > 5000 {
                        continue;
                    }
                    let mut brute = Vec::new();
                    for mut code in 0..total {
                        let mut table = vec![0u32; x.len()];
                        for slot in table.iter_mut().rev() {
                            *slot = (code % y.len() as u64) as u32;
                            code /= y.len() as u64;
                        }
                        if def.is_definable_map(&table, x, y) {
                            brute.push(table);
                        }
                    }
                    let mut fast: Vec<Vec<u32>> =
                        def.hom(x, y, DEFAULT_HOM_CAP).unwrap().iter().map(|f| f.table().to_vec()).collect();
                    fast.sort();
                    assert_eq!(fast, brute);
                }
            }
        }
    }

    #[test]
    fn successor_is_definable_and_a_fixing_map_is_not() {
        let s2 = bundled::s2();
        let m = s2.full(1).unwrap();
        let succ = s2.map_fn(&m, &m, |t| vec![(t[0] + 1) % 3]).unwrap();
        let edges = s2.set_of_tuples(2, &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(s2.graph(&succ), edges);
        let s1 = bundled::s1();
        let m = s1.full(1).unwrap();
        // fixes a, swaps b and c
        assert!(!s1.is_definable_map(&[0, 2, 1], &m, &m));
        assert!(s1.is_definable_map(&[0, 1, 2], &m, &m));
    }

    #[test]
    fn canonical_ids_round_trip() {
        let s2 = bundled::s2();
        for x in s2.enumerate(2).unwrap() {
            let id = s2.canonical_id(&x).unwrap();
            assert_eq!(s2.set_by_id(&id).unwrap(), x);
        }
        assert!(s2.set_by_id("2/7").is_err());
        assert!(s2.set_by_id("nonsense").is_err());
    }

    #[test]
    fn products_and_fiber_products() {
        let s1 = bundled::s1();
        let m = s1.full(1).unwrap();
        let d = s1.diagonal(&m);
        let (p, _, _) = s1.product(&m, &d);
        assert_eq!(p.len(), 9);
        assert!(s1.is_invariant(p.arity(), p.members()));
        let id = DefMap::identity(&m);
        let (fp, p1, _) = s1.fiber_product(&id, &id).unwrap();
        assert_eq!(fp, s1.diagonal(&m));
        assert!(p1.is_injective() && p1.is_surjective());
    }

    #[test]
    fn non_invariant_set_is_rejected() {
        let s1 = bundled::s1();
        assert!(matches!(s1.set_of_tuples(1, &[vec![0]]), Err(Error::NotInvariant(_))));
    }
}
