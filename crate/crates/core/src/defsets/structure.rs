//! Finite first-order structures and their text format:
//!
//! ```text
//! universe: a b c
//! relations:
//!   E/2: (a,b) (b,c) (c,a)
//!   P/1: a
//! functions:
//!   s/1: a->b b->c c->a
//!   m/2: (a,a)->a (a,b)->b ...
//! constants:
//!   z = a
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::text::{find, split_sections};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// `table` is indexed by the argument tuple read as a base-`|universe|`
/// number, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Function {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constant {
    pub name: String,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinStructure {
    universe: Vec<String>,
    relations: Vec<Relation>,
    functions: Vec<Function>,
    constants: Vec<Constant>,
}

impl FinStructure {
    pub fn new(
        universe: Vec<String>,
        relations: Vec<Relation>,
        functions: Vec<Function>,
        constants: Vec<Constant>,
    ) -> Result<Self> {
        let n = universe.len();
        for (k, e) in universe.iter().enumerate() {
            if universe[..k].contains(e) {
                return Err(Error::DuplicateName(e.clone()));
            }
        }
        let mut names = BTreeSet::new();
        let symbols = relations
            .iter()
            .map(|r| &r.name)
            .chain(functions.iter().map(|f| &f.name))
            .chain(constants.iter().map(|c| &c.name));
        for s in symbols {
            if !names.insert(s.clone()) {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        for r in &relations {
            if r.tuples.iter().any(|t| t.len() != r.arity || t.iter().any(|&a| a >= n)) {
                return Err(Error::MalformedDiagram(format!("relation `{}` has a bad tuple", r.name)));
            }
        }
        for f in &functions {
            if f.table.len() != n.pow(f.arity as u32) || f.table.iter().any(|&a| a >= n) {
                return Err(Error::MalformedDiagram(format!("function `{}` is not total", f.name)));
            }
        }
        if let Some(c) = constants.iter().find(|c| c.value >= n) {
            return Err(Error::MalformedDiagram(format!("constant `{}` is not an element", c.name)));
        }
        Ok(Self {
            universe,
            relations,
            functions,
            constants,
        })
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.universe[a]
    }

    pub fn element_id(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|e| e == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn functions(&self) -> &[Function] {
        &self.functions
    }

    pub fn constants(&self) -> &[Constant] {
        &self.constants
    }

    /// Largest arity of a relation symbol (0 without relations).
    pub fn max_relation_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity).max().unwrap_or(0)
    }

    /// Largest arity of a function symbol (0 without functions).
    pub fn max_function_arity(&self) -> Option<usize> {
        self.functions.iter().map(|f| f.arity).max()
    }

    /// Reads an argument tuple as a table index.
    pub fn function_index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size() + a)
    }

    /// Whether the permutation `p` (as an image table) preserves every
    /// symbol.
    pub fn preserved_by(&self, p: &[usize]) -> bool {
        let map = |t: &[usize]| t.iter().map(|&a| p[a]).collect::<Vec<_>>();
        self.relations
            .iter()
            .all(|r| r.tuples.iter().all(|t| r.tuples.contains(&map(t))))
            && self.functions.iter().all(|f| {
                all_tuples(self.size(), f.arity).all(|args| {
                    let image = f.table[self.function_index(&map(&args))];
                    image == p[f.table[self.function_index(&args)]]
                })
            })
            && self.constants.iter().all(|c| p[c.value] == c.value)
    }
}

/// Every tuple of the given arity in lexicographic order.
pub(crate) fn all_tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

impl fmt::Display for FinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |a: &usize| self.universe[*a].as_str();
        let tuple = |t: &[usize]| format!("({})", t.iter().map(name).collect::<Vec<_>>().join(","));
        writeln!(f, "universe: {}", self.universe.join(" "))?;
        if !self.relations.is_empty() {
            writeln!(f, "relations:")?;
            for r in &self.relations {
                let ts: Vec<String> = r.tuples.iter().map(|t| tuple(t)).collect();
                writeln!(f, "  {}/{}: {}", r.name, r.arity, ts.join(" "))?;
            }
        }
        if !self.functions.is_empty() {
            writeln!(f, "functions:")?;
            for fun in &self.functions {
                let entries: Vec<String> = all_tuples(self.size(), fun.arity)
                    .zip(&fun.table)
                    .map(|(args, v)| format!("{}->{}", tuple(&args), name(v)))
                    .collect();
                writeln!(f, "  {}/{}: {}", fun.name, fun.arity, entries.join(" "))?;
            }
        }
        if !self.constants.is_empty() {
            writeln!(f, "constants:")?;
            for c in &self.constants {
                writeln!(f, "  {} = {}", c.name, name(&c.value))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Atom(String),
    Tuple(Vec<String>),
    Arrow,
}

fn tokenize(line: usize, s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom)));
        }
    };
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                flush(&mut atom, &mut out);
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some(')') => break,
                        Some('(') | None => return Err(parse_err(line, "unbalanced parenthesis")),
                        Some(c) => inner.push(c),
                    }
                }
                let parts: Vec<String> = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(|p| p.trim().to_string()).collect()
                };
                if parts.iter().any(String::is_empty) {
                    return Err(parse_err(line, format!("empty tuple entry in `({inner})`")));
                }
                out.push(Token::Tuple(parts));
            }
            ')' => return Err(parse_err(line, "unbalanced parenthesis")),
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                flush(&mut atom, &mut out);
                out.push(Token::Arrow);
            }
            c if c.is_whitespace() || c == ',' => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    Ok(out)
}

fn symbol_header(line: usize, content: &str) -> Result<(String, usize, String)> {
    let (head, rest) = content
        .split_once(':')
        .ok_or_else(|| parse_err(line, "expected `name/arity: ...`"))?;
    let (name, arity) = head
        .trim()
        .split_once('/')
        .ok_or_else(|| parse_err(line, format!("missing arity in `{}`", head.trim())))?;
    let arity: usize = arity
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("bad arity `{}`", arity.trim())))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(parse_err(line, "empty symbol name"));
    }
    Ok((name.to_string(), arity, rest.to_string()))
}

pub fn parse_structure(text: &str) -> Result<FinStructure> {
    let sections = split_sections(text, &["universe", "relations", "functions", "constants"])?;
    let universe_sec = find(&sections, "universe").ok_or_else(|| parse_err(1, "missing `universe:` section"))?;
    let mut universe: Vec<String> = Vec::new();
    for (line, content) in &universe_sec.lines {
        for e in content.split_whitespace() {
            if universe.iter().any(|u| u == e) {
                return Err(parse_err(*line, format!("duplicate element `{e}`")));
            }
            if e.contains(['(', ')', ',']) || e.contains("->") {
                return Err(parse_err(*line, format!("bad element name `{e}`")));
            }
            universe.push(e.to_string());
        }
    }
    let elem = |line: usize, e: &str| {
        universe
            .iter()
            .position(|u| u == e)
            .ok_or_else(|| parse_err(line, format!("unknown element `{e}`")))
    };
    let tuple_of = |line: usize, tok: &Token, arity: usize| -> Result<Vec<usize>> {
        let parts: Vec<&str> = match tok {
            Token::Atom(a) => vec![a.as_str()],
            Token::Tuple(p) => p.iter().map(String::as_str).collect(),
            Token::Arrow => return Err(parse_err(line, "unexpected `->`")),
        };
        if parts.len() != arity {
            return Err(parse_err(line, format!("expected {arity} entries, found {}", parts.len())));
        }
        parts.iter().map(|p| elem(line, p)).collect()
    };
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut claim = |line: usize, name: &str| {
        if names.insert(name.to_string()) {
            Ok(())
        } else {
            Err(parse_err(line, format!("duplicate symbol `{name}`")))
        }
    };

    let mut relations = Vec::new();
    if let Some(s) = find(&sections, "relations") {
        for (line, content) in &s.lines {
            let (name, arity, rest) = symbol_header(*line, content)?;
            claim(*line, &name)?;
            let mut tuples = BTreeSet::new();
            for tok in tokenize(*line, &rest)? {
                tuples.insert(tuple_of(*line, &tok, arity)?);
            }
            relations.push(Relation { name, arity, tuples });
        }
    }

    let n = universe.len();
    let mut functions = Vec::new();
    if let Some(s) = find(&sections, "functions") {
        for (line, content) in &s.lines {
            let (name, arity, rest) = symbol_header(*line, content)?;
            claim(*line, &name)?;
            let toks = tokenize(*line, &rest)?;
            if toks.len() % 3 != 0 {
                return Err(parse_err(*line, "expected entries `args->value`"));
            }
            let mut table = vec![None; n.pow(arity as u32)];
            for entry in toks.chunks(3) {
                if entry[1] != Token::Arrow {
                    return Err(parse_err(*line, "expected entries `args->value`"));
                }
                let args = tuple_of(*line, &entry[0], arity)?;
                let value = tuple_of(*line, &entry[2], 1)?[0];
                let idx = args.iter().fold(0, |acc, &a| acc * n + a);
                if table[idx].replace(value).is_some_and(|old| old != value) {
                    return Err(parse_err(*line, format!("`{name}` has two values at one argument")));
                }
            }
            let table: Option<Vec<usize>> = table.into_iter().collect();
            let table = table.ok_or_else(|| parse_err(*line, format!("function `{name}` is not total")))?;
            functions.push(Function { name, arity, table });
        }
    }

    let mut constants = Vec::new();
    if let Some(s) = find(&sections, "constants") {
        for (line, content) in &s.lines {
            let (name, value) = content
                .split_once('=')
                .ok_or_else(|| parse_err(*line, "expected `name = element`"))?;
            let name = name.trim().to_string();
            claim(*line, &name)?;
            let value = elem(*line, value.trim())?;
            constants.push(Constant { name, value });
        }
    }
    FinStructure::new(universe, relations, functions, constants)
}
