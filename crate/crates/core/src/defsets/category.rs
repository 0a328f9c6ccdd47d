use std::collections::HashMap;
use std::ops::Deref;
use std::sync::{Arc, Mutex};

use super::sets::{DefMap, DefSet, Definability, DEFAULT_HOM_CAP};
use crate::category::Category;
use crate::error::Result;

/// Definable sets and maps of one structure as a [`Category`], with a
/// memo of computed Hom-sets.
pub struct DefCategory {
    def: Arc<Definability>,
    hom_cap: usize,
    cache: Mutex<HashMap<(DefSet, DefSet), Arc<Vec<DefMap>>>>,
}

impl Deref for DefCategory {
    type Target = Definability;

    fn deref(&self) -> &Definability {
        &self.def
    }
}

impl DefCategory {
    pub fn new(def: impl Into<Arc<Definability>>) -> Self {
        Self {
            def: def.into(),
            hom_cap: DEFAULT_HOM_CAP,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_hom_cap(mut self, cap: usize) -> Self {
        self.hom_cap = cap;
        self
    }

    pub fn definability(&self) -> &Arc<Definability> {
        &self.def
    }

    pub fn hom_cap(&self) -> usize {
        self.hom_cap
    }

    pub fn hom_shared(&self, x: &DefSet, y: &DefSet) -> Result<Arc<Vec<DefMap>>> {
        let key = (x.clone(), y.clone());
        if let Some(h) = self.cache.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.def.hom(x, y, self.hom_cap)?);
        self.cache.lock().unwrap().insert(key, h.clone());
        Ok(h)
    }

    /// Installs a previously computed Hom-set.
    pub fn insert_hom(&self, x: DefSet, y: DefSet, maps: Vec<DefMap>) {
        self.cache.lock().unwrap().insert((x, y), Arc::new(maps));
    }

    /// Every memoized Hom-set, sorted by endpoints.
    pub fn cached_homs(&self) -> Vec<(DefSet, DefSet, Arc<Vec<DefMap>>)> {
        let mut out: Vec<_> = self
            .cache
            .lock()
            .unwrap()
            .iter()
            .map(|((x, y), h)| (x.clone(), y.clone(), h.clone()))
            .collect();
        out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        out
    }

    /// The kernel pair of `f` with its two projections.
    pub fn kernel_pair(&self, f: &DefMap) -> (DefSet, DefMap, DefMap) {
        self.def.fiber_product(f, f).expect("a map and itself share a target")
    }
}

impl Category for DefCategory {
    type Obj = DefSet;
    type Mor = DefMap;

    fn dom(&self, f: &DefMap) -> DefSet {
        f.domain().clone()
    }

    fn cod(&self, f: &DefMap) -> DefSet {
        f.codomain().clone()
    }

    fn identity(&self, x: &DefSet) -> DefMap {
        DefMap::identity(x)
    }

    fn compose(&self, g: &DefMap, f: &DefMap) -> DefMap {
        f.then(g)
    }

    fn hom(&self, x: &DefSet, y: &DefSet) -> Result<Vec<DefMap>> {
        Ok(self.hom_shared(x, y)?.as_ref().clone())
    }

    fn objects(&self) -> Option<Vec<DefSet>> {
        let mut out = Vec::new();
        for a in 0..=self.def.arity_cap() {
            out.extend(self.def.enumerate(a).ok()?);
        }
        Some(out)
    }

    /// A pair identified by `f` but not by `t` spans an orbit `V` inside
    /// `X × X`; the two projections `V -> X` then separate.
    fn separating_pair(&self, f: &DefMap, t: &DefMap) -> Result<Option<(DefMap, DefMap)>> {
        let x = f.domain();
        let n = x.len();
        for a in 0..n {
            for b in 0..n {
                if f.table()[a] == f.table()[b] && t.table()[a] != t.table()[b] {
                    let code = self.def.concat(x.members()[a], x.members()[b], x.arity());
                    let v = self.def.orbit_of(code, 2 * x.arity());
                    let split = |second: bool| {
                        let table = v
                            .members()
                            .iter()
                            .map(|&c| {
                                let (p, q) = self.def.split(c, x.arity());
                                x.position(if second { q } else { p }).expect("orbit inside X × X") as u32
                            })
                            .collect();
                        DefMap::from_table(v.clone(), x.clone(), table)
                    };
                    return Ok(Some((split(false), split(true))));
                }
            }
        }
        Ok(None)
    }
}
