//! The category text format:
//!
//! ```text
//! objects:
//!   A
//!   B
//! morphisms:
//!   f: A -> B
//! compose:
//!   g . f = h
//! ```
//!
//! Identities may be omitted; they are synthesized as `id_<object>`.

use super::{CategoryBuilder, FinCategory, SizeCaps};
use crate::error::{parse_err, Result};
use crate::text::{arrow, find, split_sections, Section};

/// The three category sections, already split out of a larger file.
pub struct CategorySections<'a> {
    pub objects: Option<&'a Section>,
    pub morphisms: Option<&'a Section>,
    pub compose: Option<&'a Section>,
}

impl<'a> CategorySections<'a> {
    pub fn from_sections(sections: &'a [Section]) -> Self {
        Self {
            objects: find(sections, "objects"),
            morphisms: find(sections, "morphisms"),
            compose: find(sections, "compose"),
        }
    }

    pub fn builder(&self, caps: SizeCaps) -> Result<CategoryBuilder> {
        let mut b = CategoryBuilder::with_caps(caps);
        if let Some(s) = self.objects {
            for (line, content) in &s.lines {
                for name in content.split_whitespace() {
                    if b.object_id(name).is_some() {
                        return Err(parse_err(*line, format!("duplicate object `{name}`")));
                    }
                    b.object(name);
                }
            }
        }
        if let Some(s) = self.morphisms {
            for (line, content) in &s.lines {
                let (name, ends) = content
                    .split_once(':')
                    .ok_or_else(|| parse_err(*line, "expected `name: dom -> cod`"))?;
                let (d, c) = arrow(*line, ends)?;
                let dom = b
                    .object_id(&d)
                    .ok_or_else(|| parse_err(*line, format!("unknown object `{d}`")))?;
                let cod = b
                    .object_id(&c)
                    .ok_or_else(|| parse_err(*line, format!("unknown object `{c}`")))?;
                let name = name.trim();
                if b.morphism_id(name).is_some() {
                    return Err(parse_err(*line, format!("duplicate morphism `{name}`")));
                }
                let id = b.morphism(name, dom, cod);
                if dom == cod && name == format!("id_{d}") {
                    b.identity(dom, id);
                }
            }
        }
        // identities are only synthesized at build time, so resolve
        // `id_X` names in compose lines lazily
        let mut pending = Vec::new();
        if let Some(s) = self.compose {
            for (line, content) in &s.lines {
                let (lhs, h) = content
                    .split_once('=')
                    .ok_or_else(|| parse_err(*line, "expected `g . f = h`"))?;
                let (g, f) = lhs
                    .split_once('.')
                    .ok_or_else(|| parse_err(*line, "expected `g . f = h`"))?;
                pending.push((*line, g.trim().to_string(), f.trim().to_string(), h.trim().to_string()));
            }
        }
        for x in 0..b.objects.len() {
            if b.identities[x].is_none() {
                let name = format!("id_{}", b.objects[x]);
                let id = match b.morphism_id(&name) {
                    Some(id) => id,
                    None => b.morphism(name, x, x),
                };
                b.identity(x, id);
            }
        }
        for (line, g, f, h) in pending {
            let look = |n: &str| {
                b.morphism_id(n)
                    .ok_or_else(|| parse_err(line, format!("unknown morphism `{n}`")))
            };
            let (g, f, h) = (look(&g)?, look(&f)?, look(&h)?);
            b.compose(g, f, h);
        }
        Ok(b)
    }
}

/// Parses and validates a category file.
pub fn parse_category(text: &str) -> Result<FinCategory> {
    let sections = split_sections(text, &["objects", "morphisms", "compose"])?;
    CategorySections::from_sections(&sections)
        .builder(SizeCaps::default())?
        .build()
}

/// Parses a category file without checking the category laws, so that
/// [`FinCategory::validate`] can report them.
pub fn parse_category_unchecked(text: &str) -> Result<FinCategory> {
    let sections = split_sections(text, &["objects", "morphisms", "compose"])?;
    CategorySections::from_sections(&sections)
        .builder(SizeCaps::default())?
        .build_unchecked()
}
