//! Set-diagram files: a category file plus
//!
//! ```text
//! variance: covariant
//! sets:
//!   A: x y
//!   B: z
//! maps:
//!   f: x -> z
//!   f: y -> z
//! ```
//!
//! Identity maps may be omitted.

use std::sync::Arc;

use super::SetDiagram;
use crate::error::{parse_err, Result};
use crate::fincat::{CategorySections, SizeCaps, Variance};
use crate::text::{arrow, find, split_sections};

#[derive(Clone, Debug)]
pub struct LabeledDiagram {
    pub diagram: SetDiagram,
    pub labels: Vec<Vec<String>>,
}

pub fn parse_set_diagram(text: &str) -> Result<LabeledDiagram> {
    let sections = split_sections(
        text,
        &["objects", "morphisms", "compose", "variance", "sets", "maps"],
    )?;
    let index = Arc::new(
        CategorySections::from_sections(&sections)
            .builder(SizeCaps::default())?
            .build()?,
    );
    let variance = match find(&sections, "variance") {
        None => Variance::Covariant,
        Some(s) => match s.lines.first().map(|(l, v)| (*l, v.as_str())) {
            Some((_, "covariant")) | None => Variance::Covariant,
            Some((_, "contravariant")) => Variance::Contravariant,
            Some((l, other)) => return Err(parse_err(l, format!("unknown variance `{other}`"))),
        },
    };
    let n = index.object_count();
    let mut labels: Vec<Option<Vec<String>>> = vec![None; n];
    if let Some(s) = find(&sections, "sets") {
        for (line, content) in &s.lines {
            let (obj, elems) = content
                .split_once(':')
                .ok_or_else(|| parse_err(*line, "expected `object: elements`"))?;
            let o = index
                .object_id(obj.trim())
                .ok_or_else(|| parse_err(*line, format!("unknown object `{}`", obj.trim())))?;
            let names: Vec<String> = elems.split_whitespace().map(str::to_string).collect();
            for (k, e) in names.iter().enumerate() {
                if names[..k].contains(e) {
                    return Err(parse_err(*line, format!("duplicate element `{e}`")));
                }
            }
            if labels[o].is_some() {
                return Err(parse_err(*line, format!("set of `{}` given twice", obj.trim())));
            }
            labels[o] = Some(names);
        }
    }
    let labels: Vec<Vec<String>> = labels.into_iter().map(Option::unwrap_or_default).collect();
    let ends = |t: usize| {
        let (a, b) = (index.dom(t), index.cod(t));
        match variance {
            Variance::Covariant => (a, b),
            Variance::Contravariant => (b, a),
        }
    };
    let mut maps: Vec<Vec<Option<usize>>> = (0..index.morphism_count())
        .map(|t| vec![None; labels[ends(t).0].len()])
        .collect();
    for x in 0..n {
        let id = index.identity(x);
        maps[id] = (0..labels[x].len()).map(Some).collect();
    }
    if let Some(s) = find(&sections, "maps") {
        for (line, content) in &s.lines {
            let (name, rest) = content
                .split_once(':')
                .ok_or_else(|| parse_err(*line, "expected `morphism: x -> y`"))?;
            let t = index
                .morphism_id(name.trim())
                .ok_or_else(|| parse_err(*line, format!("unknown morphism `{}`", name.trim())))?;
            let (x, y) = arrow(*line, rest)?;
            let (a, b) = ends(t);
            let xi = labels[a]
                .iter()
                .position(|e| *e == x)
                .ok_or_else(|| parse_err(*line, format!("`{x}` is not an element of the source")))?;
            let yi = labels[b]
                .iter()
                .position(|e| *e == y)
                .ok_or_else(|| parse_err(*line, format!("`{y}` is not an element of the target")))?;
            maps[t][xi] = Some(yi);
        }
    }
    let mut tables = Vec::with_capacity(maps.len());
    for (t, m) in maps.into_iter().enumerate() {
        let table: Option<Vec<usize>> = m.into_iter().collect();
        match table {
            Some(table) => tables.push(table),
            None => {
                let line = find(&sections, "maps").map_or(0, |s| s.line);
                return Err(parse_err(
                    line,
                    format!("map of `{}` is not total", index.morphism(t).name),
                ));
            }
        }
    }
    let sizes = labels.iter().map(Vec::len).collect();
    Ok(LabeledDiagram {
        diagram: SetDiagram::new(index, sizes, tables, variance)?,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setval::filtered_colimit;

    #[test]
    fn chain_into_point() {
        let text = "objects: A B\nmorphisms:\n  f: A -> B\nsets:\n  A: x y\n  B: z\nmaps:\n  f: x -> z\n  f: y -> z\n";
        let d = parse_set_diagram(text).unwrap();
        assert_eq!(d.labels[0], vec!["x", "y"]);
        assert_eq!(filtered_colimit(&d.diagram, None).unwrap().class_count(), 1);
    }

    #[test]
    fn partial_map_is_an_error() {
        let text = "objects: A B\nmorphisms:\n  f: A -> B\nsets:\n  A: x y\n  B: z\nmaps:\n  f: x -> z\n";
        assert!(parse_set_diagram(text).is_err());
    }

    #[test]
    fn unknown_element_names_the_line() {
        let text = "objects: A B\nmorphisms:\n  f: A -> B\nsets:\n  A: x\n  B: z\nmaps:\n  f: q -> z\n";
        let err = parse_set_diagram(text).unwrap_err();
        assert!(err.to_string().starts_with("line 8"), "{err}");
    }
}
