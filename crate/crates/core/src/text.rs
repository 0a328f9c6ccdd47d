//! Line-oriented section splitting shared by the file formats.

use crate::error::{parse_err, Result};

/// One `name:` section with its content lines (1-based line numbers).
#[derive(Clone, Debug, Default)]
pub struct Section {
    pub name: String,
    pub line: usize,
    pub lines: Vec<(usize, String)>,
}

/// Splits `text` into the sections named in `known`. Text after a
/// header's colon counts as a content line. `#` starts a comment; blank
/// lines are dropped. Content before the first header is an error.
pub fn split_sections(text: &str, known: &[&str]) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, rest)) = line.split_once(':') {
            let key = key.trim();
            if known.contains(&key) {
                if out.iter().any(|s| s.name == key) {
                    return Err(parse_err(line_no, format!("duplicate section `{key}`")));
                }
                let mut s = Section {
                    name: key.to_string(),
                    line: line_no,
                    lines: Vec::new(),
                };
                let rest = rest.trim();
                if !rest.is_empty() {
                    s.lines.push((line_no, rest.to_string()));
                }
                out.push(s);
                continue;
            }
        }
        match out.last_mut() {
            Some(s) => s.lines.push((line_no, line.to_string())),
            None => return Err(parse_err(line_no, format!("content outside any section: `{line}`"))),
        }
    }
    Ok(out)
}

pub fn find<'a>(sections: &'a [Section], name: &str) -> Option<&'a Section> {
    sections.iter().find(|s| s.name == name)
}

/// Splits `a -> b` into trimmed halves.
pub fn arrow(line_no: usize, s: &str) -> Result<(String, String)> {
    let (a, b) = s
        .split_once("->")
        .ok_or_else(|| parse_err(line_no, format!("expected `->` in `{s}`")))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}
