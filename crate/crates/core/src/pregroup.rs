//! The finite pregroup: a carrier with identity, involutive inversion and a
//! partial multiplication table.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// An element of a pregroup, addressed by its position in declaration order.
///
/// The derived `Ord` is the canonical total order on the carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Elem(u32);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(u32::try_from(index).expect("carrier too large"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PregroupError {
    #[error("empty carrier")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("inverse map is not an involution at `{0}`")]
    NotInvolution(String),
    #[error("identity `{0}` must be its own inverse")]
    IdentityInverse(String),
    #[error("product {0} {1} has conflicting results `{2}` and `{3}`")]
    ConflictingProduct(String, String, String, String),
}

/// A finite partial multiplication table together with identity and inversion.
///
/// Rows forced by the identity and inverse axioms are always present after
/// construction through [`Pregroup::new`]. [`Pregroup::with_product`] can
/// remove or rewrite any entry afterwards; the axiom checkers are what
/// detect such tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Pregroup {
    name: String,
    names: Vec<String>,
    lookup: HashMap<String, Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    table: Vec<Option<Elem>>,
}

impl fmt::Debug for Pregroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pregroup")
            .field("name", &self.name)
            .field("elements", &self.names)
            .field("domain", &self.domain_size())
            .finish()
    }
}

impl Pregroup {
    /// Builds a pregroup from element names, identity, inverse map and a
    /// list of declared products. Identity and inverse rows are inserted
    /// automatically; declared products that contradict them are rejected.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        identity: usize,
        inverse: Vec<usize>,
        products: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, PregroupError> {
        let n = names.len();
        if n == 0 {
            return Err(PregroupError::Empty);
        }
        let mut lookup = HashMap::with_capacity(n);
        for (i, nm) in names.iter().enumerate() {
            if lookup.insert(nm.clone(), Elem::new(i)).is_some() {
                return Err(PregroupError::DuplicateElement(nm.clone()));
            }
        }
        if identity >= n {
            return Err(PregroupError::IndexOutOfRange(identity));
        }
        if inverse.len() != n {
            return Err(PregroupError::IndexOutOfRange(inverse.len()));
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= n {
                return Err(PregroupError::IndexOutOfRange(j));
            }
            if inverse[j] != i {
                return Err(PregroupError::NotInvolution(names[i].clone()));
            }
        }
        if inverse[identity] != identity {
            return Err(PregroupError::IdentityInverse(names[identity].clone()));
        }
        let mut pg = Pregroup {
            name: name.into(),
            names,
            lookup,
            identity: Elem::new(identity),
            inverse: inverse.into_iter().map(Elem::new).collect(),
            table: vec![None; n * n],
        };
        let one = pg.identity;
        for u in pg.elements() {
            pg.insert(one, u, u)?;
            pg.insert(u, one, u)?;
            let ui = pg.inv(u);
            pg.insert(u, ui, one)?;
            pg.insert(ui, u, one)?;
        }
        for (x, y, z) in products {
            for k in [x, y, z] {
                if k >= n {
                    return Err(PregroupError::IndexOutOfRange(k));
                }
            }
            pg.insert(Elem::new(x), Elem::new(y), Elem::new(z))?;
        }
        Ok(pg)
    }

    fn insert(&mut self, x: Elem, y: Elem, z: Elem) -> Result<(), PregroupError> {
        let slot = &mut self.table[x.index() * self.names.len() + y.index()];
        match *slot {
            Some(old) if old != z => Err(PregroupError::ConflictingProduct(
                self.names[x.index()].clone(),
                self.names[y.index()].clone(),
                self.names[old.index()].clone(),
                self.names[z.index()].clone(),
            )),
            _ => {
                *slot = Some(z);
                Ok(())
            }
        }
    }

    /// Returns a copy with the entry for `(x, y)` replaced, without
    /// re-inserting identity or inverse rows.
    pub fn with_product(&self, x: Elem, y: Elem, result: Option<Elem>) -> Pregroup {
        let mut out = self.clone();
        let n = out.len();
        out.table[x.index() * n + y.index()] = result;
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Number of carrier elements.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.names.len()).map(Elem::new)
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn is_identity(&self, x: Elem) -> bool {
        x == self.identity
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x.index()]
    }

    /// The product `xy` if `(x, y)` lies in the domain.
    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.table[x.index() * self.names.len() + y.index()]
    }

    #[inline]
    pub fn defined(&self, x: Elem, y: Elem) -> bool {
        self.mul(x, y).is_some()
    }

    /// `xyz`, associated on the left when possible and on the right otherwise.
    pub fn mul3(&self, x: Elem, y: Elem, z: Elem) -> Option<Elem> {
        self.mul(x, y)
            .and_then(|xy| self.mul(xy, z))
            .or_else(|| self.mul(y, z).and_then(|yz| self.mul(x, yz)))
    }

    /// Size of the domain `D`.
    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|e| e.is_some()).count()
    }

    /// All defined products `(x, y, xy)` in row-major order.
    pub fn products(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        let n = self.names.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(k, e)| e.map(|z| (Elem::new(k / n), Elem::new(k % n), z)))
    }

    pub fn elem_name(&self, x: Elem) -> &str {
        &self.names[x.index()]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.lookup.get(name).copied()
    }

    pub fn try_elem(&self, name: &str) -> Result<Elem, PregroupError> {
        self.elem(name)
            .ok_or_else(|| PregroupError::UnknownElement(name.to_string()))
    }

    /// Parses a whitespace-separated word of element names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Elem>, PregroupError> {
        text.split_whitespace().map(|t| self.try_elem(t)).collect()
    }

    pub fn format_word(&self, word: &[Elem]) -> String {
        word.iter()
            .map(|&e| self.elem_name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn names_of(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.elem_name(e).to_string()).collect()
    }

    /// Elements `b` such that `zb` and `bz` are defined for every `z`.
    pub fn bp(&self) -> BTreeSet<Elem> {
        self.elements().filter(|&b| self.in_bp(b)).collect()
    }

    pub fn in_bp(&self, b: Elem) -> bool {
        self.elements()
            .all(|z| self.defined(z, b) && self.defined(b, z))
    }

    /// `L(x) = { a : (a, x) ∈ D }`.
    pub fn left_set(&self, x: Elem) -> BTreeSet<Elem> {
        self.elements().filter(|&a| self.defined(a, x)).collect()
    }

    pub(crate) fn left_mask(&self, x: Elem) -> Vec<bool> {
        self.elements().map(|a| self.defined(a, x)).collect()
    }
}
