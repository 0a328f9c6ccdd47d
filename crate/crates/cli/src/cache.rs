//! On-disk cache of automorphism groups, orbit tables and Hom tables,
//! keyed by a hash of the structure text and the caps. Entries are
//! advisory: a missing or unreadable file is recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use indpro::defsets::{AutGroup, DefCategory, DefSet, FinStructure, OrbitTable};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct SetEntry {
    arity: usize,
    members: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct OrbitEntry {
    arity: usize,
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct HomEntry {
    from: SetEntry,
    to: SetEntry,
    tables: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    format: u32,
    aut: Vec<Vec<usize>>,
    orbit_tables: Vec<OrbitEntry>,
    homs: Vec<HomEntry>,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn key(structure_text: &str, arity_cap: usize, hom_cap: usize) -> String {
    let mut h = Sha256::new();
    h.update(structure_text.as_bytes());
    h.update(format!("\0arity_cap={arity_cap}\0hom_cap={hom_cap}").as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored automorphism group, orbit tables and Hom tables for
    /// `key`, installed into a fresh category. `None` on a miss.
    pub fn load(&self, key: &str, structure: &FinStructure, arity_cap: usize, hom_cap: usize) -> Option<DefCategory> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.format != FORMAT {
            return None;
        }
        let def = indpro::defsets::Definability::with_aut(structure.clone(), AutGroup::from_elements(entry.aut))
            .with_arity_cap(arity_cap);
        for t in entry.orbit_tables {
            def.insert_orbit_table(OrbitTable {
                arity: t.arity,
                orbit_of: t.orbit_of,
                orbits: t.orbits,
            });
        }
        let cat = DefCategory::new(def).with_hom_cap(hom_cap);
        for h in entry.homs {
            let x = cat.set(h.from.arity, h.from.members).ok()?;
            let y = cat.set(h.to.arity, h.to.members).ok()?;
            let maps = h
                .tables
                .into_iter()
                .map(|t| cat.map(&x, &y, t))
                .collect::<indpro::Result<Vec<_>>>()
                .ok()?;
            cat.insert_hom(x, y, maps);
        }
        Some(cat)
    }

    /// Writes everything `cat` has computed so far, through a temporary
    /// file renamed into place.
    pub fn store(&self, key: &str, cat: &DefCategory) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let set = |x: &DefSet| SetEntry {
            arity: x.arity(),
            members: x.members().to_vec(),
        };
        let entry = Entry {
            format: FORMAT,
            aut: cat.aut().elements().to_vec(),
            orbit_tables: cat
                .cached_orbit_tables()
                .iter()
                .map(|t| OrbitEntry {
                    arity: t.arity,
                    orbit_of: t.orbit_of.clone(),
                    orbits: t.orbits.clone(),
                })
                .collect(),
            homs: cat
                .cached_homs()
                .iter()
                .map(|(x, y, maps)| HomEntry {
                    from: set(x),
                    to: set(y),
                    tables: maps.iter().map(|m| m.table().to_vec()).collect(),
                })
                .collect(),
        };
        let target = self.path(key);
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let mut file = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        file.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, &target).with_context(|| format!("renaming into {}", target.display()))?;
        Ok(())
    }
}
