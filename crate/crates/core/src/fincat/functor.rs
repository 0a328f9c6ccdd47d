use std::sync::Arc;

use super::FinCategory;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A functor between finite categories, possibly contravariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
    variance: Variance,
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
        variance: Variance,
    ) -> Result<Self> {
        let f = Self {
            source,
            target,
            object_map,
            morphism_map,
            variance,
        };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.object_map.len() != s.object_count() || self.morphism_map.len() != s.morphism_count() {
            return Err(Error::MalformedDiagram("functor maps have the wrong length".into()));
        }
        if self.object_map.iter().any(|&o| o >= t.object_count())
            || self.morphism_map.iter().any(|&m| m >= t.morphism_count())
        {
            return Err(Error::MalformedDiagram("functor maps outside the target".into()));
        }
        for f in 0..s.morphism_count() {
            let (a, b) = (self.object_map[s.dom(f)], self.object_map[s.cod(f)]);
            let (a, b) = match self.variance {
                Variance::Covariant => (a, b),
                Variance::Contravariant => (b, a),
            };
            let img = self.morphism_map[f];
            if t.dom(img) != a || t.cod(img) != b {
                return Err(Error::NonFunctorial(format!(
                    "image of `{}` has the wrong endpoints",
                    s.morphism(f).name
                )));
            }
        }
        for x in 0..s.object_count() {
            if self.morphism_map[s.identity(x)] != t.identity(self.object_map[x]) {
                return Err(Error::NonFunctorial(format!(
                    "identity of `{}` not preserved",
                    s.object_name(x)
                )));
            }
        }
        for g in 0..s.morphism_count() {
            for f in (0..s.object_count()).flat_map(|x| s.hom(x, s.dom(g)).iter().copied()) {
                let gf = self.morphism_map[s.compose(g, f)];
                let (fg, ff) = (self.morphism_map[g], self.morphism_map[f]);
                let expected = match self.variance {
                    Variance::Covariant => t.compose(fg, ff),
                    Variance::Contravariant => t.compose(ff, fg),
                };
                if gf != expected {
                    return Err(Error::NonFunctorial(format!(
                        "composite {} . {} not preserved",
                        s.morphism(g).name,
                        s.morphism(f).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }
}
