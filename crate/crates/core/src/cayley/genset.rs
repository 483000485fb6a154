//! Finite generating sets given as words over `P`.
//!
//! ```text
//! gen a = a
//! gen t = a b
//! ```

use std::collections::HashSet;

use thiserror::Error;

use crate::universal::UniversalGroup;
use crate::word::Reduced;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenSetError {
    #[error("line {line}: expected `gen <name> = <word>`")]
    Syntax { line: usize },
    #[error("line {line}: unknown element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("generator `{0}` is the identity")]
    Identity(String),
    #[error("duplicate generator `{0}`")]
    Duplicate(String),
    #[error("empty generating set")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Canonical form of the generator in `U(P)`.
    pub word: Reduced,
}

/// Generators `S`; the ball uses moves by `S ∪ S⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    gens: Vec<Generator>,
}

impl GenSet {
    pub fn new(ug: &UniversalGroup, gens: Vec<(String, Reduced)>) -> Result<Self, GenSetError> {
        if gens.is_empty() {
            return Err(GenSetError::Empty);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(gens.len());
        for (name, w) in gens {
            if !seen.insert(name.clone()) {
                return Err(GenSetError::Duplicate(name));
            }
            let word = ug.canonical(&w);
            if word.is_identity(ug.pregroup()) {
                return Err(GenSetError::Identity(name));
            }
            out.push(Generator { name, word });
        }
        Ok(GenSet { gens: out })
    }

    /// `S = P ∖ {1}`, each generator named after its element.
    pub fn default_for(ug: &UniversalGroup) -> Result<Self, GenSetError> {
        let p = ug.pregroup();
        let gens = p
            .elements()
            .filter(|&x| !p.is_identity(x))
            .map(|x| (p.elem_name(x).to_string(), Reduced::single(x)))
            .collect();
        Self::new(ug, gens)
    }

    /// Generators named after single elements of `P`.
    pub fn from_elements(ug: &UniversalGroup, names: &[&str]) -> Result<Self, GenSetError> {
        let p = ug.pregroup();
        let gens = names
            .iter()
            .map(|&n| {
                p.elem(n)
                    .map(|x| (n.to_string(), Reduced::single(x)))
                    .ok_or_else(|| GenSetError::UnknownElement { line: 0, name: n.to_string() })
            })
            .collect::<Result<_, _>>()?;
        Self::new(ug, gens)
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// Right multiplications by `s` and `s⁻¹` for every generator, as
    /// `(generator index, canonical word)`; duplicates kept.
    pub fn moves(&self, ug: &UniversalGroup) -> Vec<(usize, Reduced)> {
        let mut out = Vec::with_capacity(2 * self.gens.len());
        for (i, g) in self.gens.iter().enumerate() {
            out.push((i, g.word.clone()));
            out.push((i, ug.canonical(&ug.invert(&g.word))));
        }
        out
    }
}

/// Parses `gen <name> = <word>` lines; `#` starts a comment.
pub fn parse_genset(ug: &UniversalGroup, text: &str) -> Result<GenSet, GenSetError> {
    let p = ug.pregroup();
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let rest = body.strip_prefix("gen").filter(|r| r.starts_with(char::is_whitespace));
        let (name, word) = rest
            .and_then(|r| r.split_once('='))
            .ok_or(GenSetError::Syntax { line })?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) || word.trim().is_empty() {
            return Err(GenSetError::Syntax { line });
        }
        let elems = p
            .parse_word(word)
            .map_err(|e| match e {
                crate::PregroupError::UnknownElement(n) => GenSetError::UnknownElement { line, name: n },
                _ => GenSetError::Syntax { line },
            })?;
        gens.push((name.to_string(), ug.reduce(&elems)));
    }
    GenSet::new(ug, gens)
}

pub fn serialize_genset(ug: &UniversalGroup, s: &GenSet) -> String {
    let p = ug.pregroup();
    s.gens.iter().map(|g| format!("gen {} = {}\n", g.name, p.format_word(g.word.factors()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::amalgam_cyclic;

    #[test]
    fn parse_and_roundtrip() {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let ug = UniversalGroup::new(&p);
        let s = parse_genset(&ug, "# gens\ngen a = a\ngen t = a3 b3  # canonicalized\n").unwrap();
        assert_eq!(s.names(), ["a", "t"]);
        assert_eq!(p.format_word(s.gens()[1].word.factors()), "a b");
        let again = parse_genset(&ug, &serialize_genset(&ug, &s)).unwrap();
        assert_eq!(again, s);
        assert_eq!(s.moves(&ug).len(), 4);
    }

    #[test]
    fn errors() {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let ug = UniversalGroup::new(&p);
        assert_eq!(parse_genset(&ug, "gen a = a a3\n"), Err(GenSetError::Identity("a".into())));
        assert_eq!(parse_genset(&ug, "gen a = a\ngen a = b\n"), Err(GenSetError::Duplicate("a".into())));
        assert_eq!(parse_genset(&ug, "gen a a\n"), Err(GenSetError::Syntax { line: 1 }));
        assert_eq!(
            parse_genset(&ug, "gen a = q\n"),
            Err(GenSetError::UnknownElement { line: 1, name: "q".into() })
        );
        assert_eq!(parse_genset(&ug, ""), Err(GenSetError::Empty));
        assert_eq!(GenSet::default_for(&ug).unwrap().len(), 5);
    }
}
