//! Line-oriented text format for pregroup tables.
//!
//! ```text
//! pregroup free1
//! elements 1 x X
//! identity 1
//! inv x X
//! # mul rows forced by identity and inverses may be omitted
//! end
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::pregroup::{Pregroup, PregroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `pregroup <name>` header")]
    MissingHeader,
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{directive}` takes {expected} argument(s)")]
    Arity { directive: &'static str, expected: &'static str },
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("no elements declared")]
    NoElements,
    #[error("missing `identity` line")]
    MissingIdentity,
    #[error("identity declared twice")]
    DuplicateIdentity,
    #[error("inverse of `{0}` declared inconsistently")]
    ConflictingInverse(String),
    #[error("no inverse declared for `{0}`")]
    MissingInverse(String),
    #[error("product {x} {y} already declared as `{previous}` on line {previous_line}")]
    ConflictingProduct { x: String, y: String, previous: String, previous_line: usize },
    #[error("product {x} {y} = {given} contradicts the forced value `{forced}`")]
    ContradictsForced { x: String, y: String, given: String, forced: String },
    #[error("missing `end` line")]
    MissingEnd,
    #[error("content after `end`")]
    TrailingContent,
    #[error(transparent)]
    Invalid(#[from] PregroupError),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses the pregroup file format.
pub fn parse_pregroup(text: &str) -> Result<Pregroup, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    if header[0] != "pregroup" {
        return Err(err(header_line, ParseErrorKind::MissingHeader));
    }
    if header.len() != 2 {
        return Err(err(header_line, ParseErrorKind::Arity { directive: "pregroup", expected: "1" }));
    }
    let name = header[1].to_string();

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut identity: Option<(usize, String)> = None;
    let mut invs: Vec<(usize, String, String)> = Vec::new();
    let mut muls: Vec<(usize, [String; 3])> = Vec::new();
    let mut end_line = None;
    let mut last_line = header_line;

    for (ln, toks) in lines.by_ref() {
        last_line = ln;
        let args = &toks[1..];
        match toks[0] {
            "elements" => {
                for &t in args {
                    if index.insert(t.to_string(), names.len()).is_some() {
                        return Err(err(ln, ParseErrorKind::DuplicateElement(t.into())));
                    }
                    names.push(t.to_string());
                }
            }
            "identity" => {
                if args.len() != 1 {
                    return Err(err(ln, ParseErrorKind::Arity { directive: "identity", expected: "1" }));
                }
                if identity.is_some() {
                    return Err(err(ln, ParseErrorKind::DuplicateIdentity));
                }
                identity = Some((ln, args[0].to_string()));
            }
            "inv" => {
                if args.len() != 2 {
                    return Err(err(ln, ParseErrorKind::Arity { directive: "inv", expected: "2" }));
                }
                invs.push((ln, args[0].into(), args[1].into()));
            }
            "mul" => {
                if args.len() != 3 {
                    return Err(err(ln, ParseErrorKind::Arity { directive: "mul", expected: "3" }));
                }
                muls.push((ln, [args[0].into(), args[1].into(), args[2].into()]));
            }
            "end" => {
                end_line = Some(ln);
                break;
            }
            other => return Err(err(ln, ParseErrorKind::UnknownDirective(other.into()))),
        }
    }
    let end_line = end_line.ok_or_else(|| err(last_line, ParseErrorKind::MissingEnd))?;
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, ParseErrorKind::TrailingContent));
    }
    if names.is_empty() {
        return Err(err(end_line, ParseErrorKind::NoElements));
    }

    let resolve = |ln: usize, s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| err(ln, ParseErrorKind::UnknownElement(s.into())))
    };

    let (id_line, id_name) = identity.ok_or_else(|| err(end_line, ParseErrorKind::MissingIdentity))?;
    let one = resolve(id_line, &id_name)?;

    let n = names.len();
    let mut inverse: Vec<Option<usize>> = vec![None; n];
    inverse[one] = Some(one);
    for (ln, a, b) in &invs {
        let (x, y) = (resolve(*ln, a)?, resolve(*ln, b)?);
        for (u, v) in [(x, y), (y, x)] {
            match inverse[u] {
                Some(w) if w != v => {
                    return Err(err(*ln, ParseErrorKind::ConflictingInverse(names[u].clone())))
                }
                _ => inverse[u] = Some(v),
            }
        }
    }
    let inverse: Vec<usize> = inverse
        .iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| err(end_line, ParseErrorKind::MissingInverse(names[i].clone()))))
        .collect::<Result<_, _>>()?;

    let forced = |x: usize, y: usize| -> Option<usize> {
        if x == one {
            Some(y)
        } else if y == one {
            Some(x)
        } else if inverse[x] == y {
            Some(one)
        } else {
            None
        }
    };

    let mut declared: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut products = Vec::with_capacity(muls.len());
    for (ln, [a, b, c]) in &muls {
        let (x, y, z) = (resolve(*ln, a)?, resolve(*ln, b)?, resolve(*ln, c)?);
        if let Some(f) = forced(x, y) {
            if f != z {
                return Err(err(
                    *ln,
                    ParseErrorKind::ContradictsForced {
                        x: a.clone(),
                        y: b.clone(),
                        given: c.clone(),
                        forced: names[f].clone(),
                    },
                ));
            }
        }
        if let Some(&(prev, prev_ln)) = declared.get(&(x, y)) {
            if prev != z {
                return Err(err(
                    *ln,
                    ParseErrorKind::ConflictingProduct {
                        x: a.clone(),
                        y: b.clone(),
                        previous: names[prev].clone(),
                        previous_line: prev_ln,
                    },
                ));
            }
        }
        declared.insert((x, y), (z, *ln));
        products.push((x, y, z));
    }

    Pregroup::new(name, names, one, inverse, products).map_err(|e| err(end_line, e.into()))
}

/// Writes a pregroup in the file format. Rows forced by identity and inverse
/// are omitted; every other defined product is written in row-major order.
pub fn serialize_pregroup(p: &Pregroup) -> String {
    let mut out = String::new();
    let one = p.identity();
    writeln!(out, "pregroup {}", p.name()).unwrap();
    writeln!(out, "elements {}", p.element_names().join(" ")).unwrap();
    writeln!(out, "identity {}", p.elem_name(one)).unwrap();
    for x in p.elements() {
        let y = p.inv(x);
        if x != one && x <= y {
            writeln!(out, "inv {} {}", p.elem_name(x), p.elem_name(y)).unwrap();
        }
    }
    for (x, y, z) in p.products() {
        let forced = if x == one {
            Some(y)
        } else if y == one {
            Some(x)
        } else if p.inv(x) == y {
            Some(one)
        } else {
            None
        };
        if forced != Some(z) {
            writeln!(out, "mul {} {} {}", p.elem_name(x), p.elem_name(y), p.elem_name(z)).unwrap();
        }
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FREE1: &str = "\
pregroup free1
elements 1 x X
identity 1
inv x X
end
";

    #[test]
    fn free_pregroup_domain() {
        let p = parse_pregroup(FREE1).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.domain_size(), 7);
        assert_eq!(p.element_names(), ["1", "x", "X"]);
    }

    #[test]
    fn conflicting_mul_reported_with_line() {
        let text = "pregroup t\nelements 1 a b c d\nidentity 1\ninv a a\ninv b b\ninv c c\ninv d d\nmul a b c\nmul a b d\nend\n";
        let e = parse_pregroup(text).unwrap_err();
        assert_eq!(e.line, 9);
        assert!(matches!(e.kind, ParseErrorKind::ConflictingProduct { previous_line: 8, .. }));
    }

    #[test]
    fn duplicate_element() {
        let e = parse_pregroup("pregroup t\nelements 1 a\nelements a\nidentity 1\nend\n").unwrap_err();
        assert_eq!(e, err(3, ParseErrorKind::DuplicateElement("a".into())));
    }

    #[test]
    fn unknown_names() {
        let e = parse_pregroup("pregroup t\nelements 1 a\nidentity 1\ninv a q\nend\n").unwrap_err();
        assert_eq!(e, err(4, ParseErrorKind::UnknownElement("q".into())));
        let e = parse_pregroup("pregroup t\nelements 1 a\nidentity 1\ninv a a\nmul a z a\nend\n")
            .unwrap_err();
        assert_eq!(e, err(5, ParseErrorKind::UnknownElement("z".into())));
    }

    #[test]
    fn missing_identity_and_end() {
        let e = parse_pregroup("pregroup t\nelements 1 a\ninv a a\nend\n").unwrap_err();
        assert_eq!(e, err(4, ParseErrorKind::MissingIdentity));
        let e = parse_pregroup("pregroup t\nelements 1 a\nidentity 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingEnd);
    }

    #[test]
    fn forced_rows_cannot_be_contradicted() {
        let e = parse_pregroup("pregroup t\nelements 1 a b\nidentity 1\ninv a b\nmul a b a\nend\n")
            .unwrap_err();
        assert_eq!(e.line, 5);
        assert!(matches!(e.kind, ParseErrorKind::ContradictsForced { .. }));
        // restating a forced row is fine
        parse_pregroup("pregroup t\nelements 1 a b\nidentity 1\ninv a b\nmul a b 1\nmul 1 a a\nend\n")
            .unwrap();
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# leading comment\n\npregroup t # trailing\nelements 1 a\nidentity 1\ninv a a\nend\n# after\n";
        assert_eq!(parse_pregroup(text).unwrap().len(), 2);
        let e = parse_pregroup("pregroup t\nelements 1\nidentity 1\nend\nmul 1 1 1\n").unwrap_err();
        assert_eq!(e, err(5, ParseErrorKind::TrailingContent));
    }

    #[test]
    fn missing_inverse() {
        let e = parse_pregroup("pregroup t\nelements 1 a\nidentity 1\nend\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingInverse("a".into()));
    }

    #[test]
    fn roundtrip_free() {
        let p = parse_pregroup(FREE1).unwrap();
        let text = serialize_pregroup(&p);
        assert_eq!(text, FREE1);
        assert_eq!(parse_pregroup(&text).unwrap(), p);
    }
}
