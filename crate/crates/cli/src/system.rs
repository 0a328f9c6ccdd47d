//! System files for the `points` command:
//!
//! ```text
//! # comment
//! kind: union          # union | type | equivalence
//! sets: 1/0 1/0,1      # canonical ids, in chain order
//! over: 1/0,1          # equivalence only: the underlying set
//! ```
//!
//! `union` is an increasing chain, `type` a downward directed family and
//! `equivalence` an increasing chain of equivalence relations on `over`.

use anyhow::{Context, Result};
use indpro::defsets::{eq_relation_union, increasing_union, type_system, DefCategory, DefSet};
use indpro::points::{points_ind, points_pro};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Union,
    Type,
    Equivalence,
}

#[derive(Debug)]
pub struct SystemFile {
    pub kind: Kind,
    pub sets: Vec<String>,
    pub over: Option<String>,
}

/// A syntax error with its 1-based line.
#[derive(Debug)]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SyntaxError {}

pub fn parse(text: &str) -> Result<SystemFile, SyntaxError> {
    let mut kind = None;
    let mut sets = None;
    let mut over = None;
    let err = |line: usize, message: String| SyntaxError { line, message };
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(n + 1, format!("expected `key: value`, found `{line}`")))?;
        let value = value.trim();
        match key.trim() {
            "kind" => {
                kind = Some(match value {
                    "union" => Kind::Union,
                    "type" => Kind::Type,
                    "equivalence" => Kind::Equivalence,
                    other => return Err(err(n + 1, format!("unknown kind `{other}`"))),
                })
            }
            "sets" => sets = Some(value.split_whitespace().map(str::to_string).collect::<Vec<_>>()),
            "over" => over = Some(value.to_string()),
            other => return Err(err(n + 1, format!("unknown key `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let kind = kind.ok_or_else(|| err(last, "missing `kind`".into()))?;
    let sets = sets.filter(|s| !s.is_empty()).ok_or_else(|| err(last, "missing `sets`".into()))?;
    if kind == Kind::Equivalence && over.is_none() {
        return Err(err(last, "`equivalence` needs `over`".into()));
    }
    Ok(SystemFile { kind, sets, over })
}

/// One point with its label and, for ind-systems, the size of its class.
pub struct Point {
    pub label: String,
    pub detail: String,
}

pub fn evaluate(cat: &DefCategory, file: &SystemFile) -> Result<Vec<Point>> {
    let sets: Vec<DefSet> = file
        .sets
        .iter()
        .map(|id| cat.set_by_id(id).with_context(|| format!("set `{id}`")))
        .collect::<Result<_>>()?;
    match file.kind {
        Kind::Union | Kind::Equivalence => {
            let x = if file.kind == Kind::Union {
                increasing_union(cat, &sets)?
            } else {
                let id = file.over.as_deref().unwrap();
                let over = cat.set_by_id(id).with_context(|| format!("set `{id}`"))?;
                eq_relation_union(cat, &over, &sets)?
            };
            let pts = points_ind(&x);
            Ok((0..pts.class_count())
                .map(|c| {
                    let (i, k) = pts.representative(c);
                    let level = x.object(i);
                    Point {
                        label: cat.tuple_label(level.members()[k], level.arity()),
                        detail: format!("level={i} class_size={}", pts.members(c).len()),
                    }
                })
                .collect())
        }
        Kind::Type => {
            let x = type_system(cat, &sets)?;
            let fams = points_pro(&x)?;
            Ok(fams
                .families()
                .iter()
                .map(|f| {
                    let level = x.object(0);
                    Point {
                        label: cat.tuple_label(level.members()[f[0]], level.arity()),
                        detail: format!("levels={}", f.len()),
                    }
                })
                .collect())
        }
    }
}
