//! The three default structures.

use super::{parse_structure, Definability};

/// A pure set with three elements.
pub const S1: &str = "universe: a b c\n";

/// A directed 3-cycle.
pub const S2: &str = "universe: a b c\nrelations:\n  E/2: (a,b) (b,c) (c,a)\n";

/// Two elements, one of them named by a unary predicate.
pub const S3: &str = "universe: a b\nrelations:\n  P/1: a\n";

/// `(name, text)` of every bundled structure.
pub const ALL: [(&str, &str); 3] = [("S1", S1), ("S2", S2), ("S3", S3)];

pub fn s1() -> Definability {
    Definability::new(parse_structure(S1).expect("bundled structure"))
}

pub fn s2() -> Definability {
    Definability::new(parse_structure(S2).expect("bundled structure"))
}

pub fn s3() -> Definability {
    Definability::new(parse_structure(S3).expect("bundled structure"))
}

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, t)| *t)
}
