//! Built-in pregroups: free, finite groups, amalgams (and chains of
//! amalgams), and seeded random tables.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pregroup::{Pregroup, PregroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("amalgam embedding mismatch: {0}")]
    EmbeddingMismatch(String),
    #[error("element name `{0}` used by two factors")]
    NameClash(String),
    #[error("random pregroup size must be at least 1")]
    EmptyRandom,
    #[error(transparent)]
    Pregroup(#[from] PregroupError),
}

/// A finite group given by its full multiplication table; index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: identity at 0, associativity, inverses.
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self, ConstructError> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(ConstructError::NotAGroup("table shape".into()));
        }
        if table.iter().any(|&z| z >= n) {
            return Err(ConstructError::NotAGroup("entry out of range".into()));
        }
        let g = FiniteGroup { names, table };
        for x in 0..n {
            if g.mul(0, x) != x || g.mul(x, 0) != x {
                return Err(ConstructError::NotAGroup(format!("`{}` is not the identity", g.names[0])));
            }
            if !(0..n).any(|y| g.mul(x, y) == 0) {
                return Err(ConstructError::NotAGroup(format!("`{}` has no inverse", g.names[x])));
            }
            for y in 0..n {
                for z in 0..n {
                    if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)) {
                        return Err(ConstructError::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            g.names[x], g.names[y], g.names[z]
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `Z_n` with elements `1, a, a2, …` for generator letter `a`.
    pub fn cyclic(n: usize, letter: &str) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => letter.to_string(),
                _ => format!("{letter}{k}"),
            })
            .collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup { names, table }
    }

    /// `Z_2 × Z_2` with elements `1, c, d, cd` for letters `c`, `d`.
    pub fn klein(c: &str, d: &str) -> Self {
        let names = vec!["1".into(), c.into(), d.into(), format!("{c}{d}")];
        let table = (0..16).map(|k| (k / 4) ^ (k % 4)).collect();
        FiniteGroup { names, table }
    }

    /// The dihedral group of order `2n`, elements `r^i f^j` named `1, r, r2, …, f, rf, r2f, …`.
    pub fn dihedral(n: usize, r: &str, f: &str) -> Self {
        assert!(n >= 1);
        let name = |i: usize, j: usize| -> String {
            let rot = match i {
                0 => String::new(),
                1 => r.to_string(),
                _ => format!("{r}{i}"),
            };
            let s = format!("{rot}{}", if j == 1 { f } else { "" });
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        };
        let idx = |i: usize, j: usize| j * n + i;
        let mut names = vec![String::new(); 2 * n];
        for j in 0..2 {
            for i in 0..n {
                names[idx(i, j)] = name(i, j);
            }
        }
        let mut table = vec![0; 4 * n * n];
        for (a, b) in (0..2 * n).flat_map(|a| (0..2 * n).map(move |b| (a, b))) {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            // r^i f^j r^k f^l = r^(i ± k) f^(j+l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table[a * 2 * n + b] = idx(rot, (j + l) % 2);
        }
        FiniteGroup { names, table }
    }

    /// `S_3`, as the dihedral group of order 6 generated by `r` and `f`.
    pub fn s3() -> Self {
        Self::dihedral(3, "r", "f")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.names.len() + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul(x, y) == 0).unwrap()
    }

    /// The cyclic subgroup generated by `x`, in power order.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut cur = x;
        while cur != 0 {
            out.push(cur);
            cur = self.mul(cur, x);
        }
        out
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> FiniteGroup {
        FiniteGroup {
            names: self.names.iter().map(|n| if n == "1" { n.clone() } else { f(n) }).collect(),
            table: self.table.clone(),
        }
    }
}

/// Which built-in pregroup to construct.
#[derive(Clone, Debug)]
pub enum ExampleKind {
    /// The free pregroup on `n` letters: only identity and inverse products.
    Free(usize),
    /// A group regarded as a pregroup with total multiplication.
    Group(FiniteGroup),
    /// `G1 ∪ G2` amalgamated along `shared`, a list of `(g1, g2)` index pairs.
    Amalgam { left: FiniteGroup, right: FiniteGroup, shared: Vec<(usize, usize)> },
    Random { seed: u64, size: usize, mode: RandomMode },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomMode {
    /// Amalgams and nested chains of small groups with shuffled declaration
    /// order. Always satisfies P1–P5.
    Perturbed,
    /// Unconstrained tables: uniformly random partial products, induced
    /// subsets of cyclic groups, or a valid table with one entry corrupted.
    Raw,
}

pub fn make_example(kind: &ExampleKind) -> Result<Pregroup, ConstructError> {
    match kind {
        ExampleKind::Free(n) => Ok(free(*n)),
        ExampleKind::Group(g) => group(g, "group"),
        ExampleKind::Amalgam { left, right, shared } => amalgam(left, right, shared),
        ExampleKind::Random { seed, size, mode } => random_pregroup(*seed, *size, *mode),
    }
}

fn free_letters(n: usize) -> Vec<(String, String)> {
    const SMALL: [&str; 4] = ["x", "y", "z", "w"];
    (0..n)
        .map(|i| {
            if n <= SMALL.len() {
                (SMALL[i].to_string(), SMALL[i].to_uppercase())
            } else {
                (format!("x{}", i + 1), format!("X{}", i + 1))
            }
        })
        .collect()
}

/// `P = X ∪ X⁻¹ ∪ {1}` with products defined only against the identity or an inverse.
pub fn free(n: usize) -> Pregroup {
    let mut names = vec!["1".to_string()];
    let mut inverse = vec![0];
    for (i, (lo, up)) in free_letters(n).into_iter().enumerate() {
        names.push(lo);
        names.push(up);
        inverse.push(2 * i + 2);
        inverse.push(2 * i + 1);
    }
    Pregroup::new(format!("free{n}"), names, 0, inverse, []).expect("free pregroup is well formed")
}

/// A group as a pregroup with `D = G × G`.
pub fn group(g: &FiniteGroup, name: &str) -> Result<Pregroup, ConstructError> {
    let n = g.order();
    let inverse = (0..n).map(|x| g.inv(x)).collect();
    let products = (0..n).flat_map(|x| (0..n).map(move |y| (x, y, g.mul(x, y))));
    Ok(Pregroup::new(name, g.names.clone(), 0, inverse, products)?)
}

/// `G1 ∪ G2` with `xy` defined iff both factors lie in a common `G_i`.
pub fn amalgam(
    left: &FiniteGroup,
    right: &FiniteGroup,
    shared: &[(usize, usize)],
) -> Result<Pregroup, ConstructError> {
    chain(&[left.clone(), right.clone()], &[shared.to_vec()], "amalgam")
}

/// A chain `G_0 — G_1 — … — G_k` of finite groups, consecutive factors
/// amalgamated along the given subgroup correspondences. Elements are
/// identified transitively along the chain; `xy` is defined iff `x` and `y`
/// lie in a common factor. Names of identified elements come from the
/// leftmost factor that contains them.
pub fn chain(
    groups: &[FiniteGroup],
    links: &[Vec<(usize, usize)>],
    name: &str,
) -> Result<Pregroup, ConstructError> {
    assert_eq!(links.len() + 1, groups.len(), "one link per consecutive pair");
    for (i, link) in links.iter().enumerate() {
        check_embedding(&groups[i], &groups[i + 1], link)?;
    }

    // Assign carrier ids factor by factor.
    let mut carrier_of: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
    let mut names: Vec<String> = Vec::new();
    let mut by_name: BTreeMap<String, usize> = BTreeMap::new();
    for (gi, g) in groups.iter().enumerate() {
        let mut ids = vec![usize::MAX; g.order()];
        if gi > 0 {
            for &(a, b) in &links[gi - 1] {
                ids[b] = carrier_of[gi - 1][a];
            }
        }
        for (x, slot) in ids.iter_mut().enumerate() {
            if *slot == usize::MAX {
                let nm = g.names[x].clone();
                if by_name.insert(nm.clone(), names.len()).is_some() {
                    return Err(ConstructError::NameClash(nm));
                }
                *slot = names.len();
                names.push(nm);
            }
        }
        carrier_of.push(ids);
    }

    let n = names.len();
    let mut inverse = vec![usize::MAX; n];
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (g, ids) in groups.iter().zip(&carrier_of) {
        for x in 0..g.order() {
            let inv = ids[g.inv(x)];
            if inverse[ids[x]] != usize::MAX && inverse[ids[x]] != inv {
                return Err(ConstructError::EmbeddingMismatch(format!(
                    "inverse of `{}` differs between factors",
                    names[ids[x]]
                )));
            }
            inverse[ids[x]] = inv;
            for y in 0..g.order() {
                let z = ids[g.mul(x, y)];
                if let Some(&old) = table.get(&(ids[x], ids[y])) {
                    if old != z {
                        return Err(ConstructError::EmbeddingMismatch(format!(
                            "product {} {} differs between factors",
                            names[ids[x]], names[ids[y]]
                        )));
                    }
                }
                table.insert((ids[x], ids[y]), z);
            }
        }
    }
    let products = table.into_iter().map(|((x, y), z)| (x, y, z));
    Ok(Pregroup::new(name, names, 0, inverse, products)?)
}

fn check_embedding(
    left: &FiniteGroup,
    right: &FiniteGroup,
    shared: &[(usize, usize)],
) -> Result<(), ConstructError> {
    let mismatch = |m: String| Err(ConstructError::EmbeddingMismatch(m));
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for &(a, b) in shared {
        if a >= left.order() || b >= right.order() {
            return mismatch(format!("index pair ({a}, {b}) out of range"));
        }
        if fwd.insert(a, b).is_some_and(|old| old != b) || back.insert(b, a).is_some_and(|old| old != a) {
            return mismatch(format!("({a}, {b}) is not injective"));
        }
    }
    if fwd.get(&0) != Some(&0) {
        return mismatch("identity must be shared".into());
    }
    for (&a1, &b1) in &fwd {
        for (&a2, &b2) in &fwd {
            match fwd.get(&left.mul(a1, a2)) {
                Some(&b) if b == right.mul(b1, b2) => {}
                _ => {
                    return mismatch(format!(
                        "`{} {}` in the left factor does not correspond to `{} {}` in the right",
                        left.names[a1], left.names[a2], right.names[b1], right.names[b2]
                    ))
                }
            }
        }
    }
    Ok(())
}

/// `Z_m *_{Z_k} Z_n` with generators `a` and `b`; `a^(m/k)` is identified with `b^(n/k)`.
pub fn amalgam_cyclic(m: usize, n: usize, k: usize) -> Result<Pregroup, ConstructError> {
    if k == 0 || !m.is_multiple_of(k) || !n.is_multiple_of(k) {
        return Err(ConstructError::EmbeddingMismatch(format!(
            "Z{k} does not embed in both Z{m} and Z{n}"
        )));
    }
    let left = FiniteGroup::cyclic(m, "a");
    let right = FiniteGroup::cyclic(n, "b");
    let shared: Vec<_> = (0..k).map(|j| (j * (m / k), j * (n / k))).collect();
    let mut p = amalgam(&left, &right, &shared)?;
    p.set_name(format!("amalgam_z{m}_z{k}_z{n}"));
    Ok(p)
}

/// Seeded random pregroup; see [`RandomMode`].
pub fn random_pregroup(seed: u64, size: usize, mode: RandomMode) -> Result<Pregroup, ConstructError> {
    if size == 0 {
        return Err(ConstructError::EmptyRandom);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = match mode {
        RandomMode::Perturbed => perturbed(&mut rng, size)?,
        RandomMode::Raw => match rng.gen_range(0..3) {
            0 => raw_uniform(&mut rng, size),
            1 => raw_induced(&mut rng, size),
            _ => {
                let valid = perturbed(&mut rng, size)?;
                corrupt_one(&mut rng, &valid)
            }
        },
    };
    p.set_name(format!("random_{}_{seed}", if mode == RandomMode::Raw { "raw" } else { "perturbed" }));
    Ok(p)
}

const LETTERS: [&str; 8] = ["a", "b", "c", "d", "g", "h", "k", "m"];

fn library(rng: &mut ChaCha8Rng, letter: &str, max_order: usize) -> FiniteGroup {
    let mut options: Vec<FiniteGroup> = (2.min(max_order)..=6.min(max_order)).map(|n| FiniteGroup::cyclic(n, letter)).collect();
    if max_order >= 4 {
        options.push(FiniteGroup::klein(letter, &format!("{letter}q")));
    }
    if max_order >= 6 {
        options.push(FiniteGroup::dihedral(3, letter, &format!("{letter}f")));
    }
    if max_order >= 8 {
        options.push(FiniteGroup::cyclic(8, letter));
        options.push(FiniteGroup::dihedral(4, letter, &format!("{letter}f")));
    }
    options.choose(rng).unwrap().clone()
}

fn perturbed(rng: &mut ChaCha8Rng, size: usize) -> Result<Pregroup, ConstructError> {
    let factors = rng.gen_range(1..=4usize);
    let first = library(rng, LETTERS[0], (size / factors).max(2));
    let mut groups = vec![first];
    let mut links: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut total = groups[0].order();
    // the subgroup of the previous factor glued to the next one; kept nested
    // (each new edge group contains the previous edge group) so P5 holds
    let mut prev_edge: Vec<usize> = vec![0];
    for i in 1..factors {
        let prev = groups.last().unwrap().clone();
        let subs: Vec<Vec<usize>> = {
            let mut all: Vec<Vec<usize>> = (0..prev.order()).map(|x| prev.powers(x)).collect();
            all.iter_mut().for_each(|s| s.sort_unstable());
            all.sort();
            all.dedup();
            all.into_iter()
                .filter(|s| prev_edge.iter().all(|e| s.contains(e)) && s.len() < prev.order())
                .collect()
        };
        // bias towards trivial first edges and strictly growing later ones:
        // those chains are the ones that break P6
        let growing: Vec<&Vec<usize>> = subs.iter().filter(|s| s.len() > prev_edge.len()).collect();
        let edge = if i == 1 && rng.gen_bool(0.3) {
            vec![0]
        } else if i > 1 && !growing.is_empty() && rng.gen_bool(0.5) {
            (*growing.choose(rng).unwrap()).clone()
        } else {
            let Some(e) = subs.choose(rng).cloned() else { break };
            e
        };
        let budget = size.saturating_sub(total) + edge.len();
        let next = library(rng, LETTERS[i % LETTERS.len()], budget.max(1));
        // embed the cyclic edge group into `next` via a generator of matching order
        let gen_prev = *edge.iter().max_by_key(|&&x| prev.powers(x).len()).unwrap();
        let order = edge.len();
        let candidates: Vec<usize> = (0..next.order()).filter(|&y| next.powers(y).len() == order).collect();
        let Some(&gen_next) = candidates.choose(rng) else { break };
        if next.order() == order {
            // the edge group would swallow the whole next factor
            break;
        }
        let pp = prev.powers(gen_prev);
        let np = next.powers(gen_next);
        let link: Vec<(usize, usize)> = pp.into_iter().zip(np).collect();
        total += next.order() - order;
        if total > size.max(groups[0].order()) {
            break;
        }
        // the next edge must contain the image of this one
        prev_edge = link.iter().map(|&(_, b)| b).collect();
        groups.push(next);
        links.push(link);
    }
    let p = chain(&groups, &links, "perturbed")?;
    Ok(shuffle(rng, &p))
}

/// Same table with a random declaration order (identity included).
fn shuffle(rng: &mut ChaCha8Rng, p: &Pregroup) -> Pregroup {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let names = order.iter().map(|&o| p.element_names()[o].clone()).collect();
    let inverse = order.iter().map(|&o| pos[p.inv(crate::Elem::new(o)).index()]).collect();
    let products: Vec<_> = p
        .products()
        .map(|(x, y, z)| (pos[x.index()], pos[y.index()], pos[z.index()]))
        .collect();
    Pregroup::new(p.name(), names, pos[p.identity().index()], inverse, products)
        .expect("relabelling preserves well-formedness")
}

fn random_involution(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut inverse: Vec<usize> = (0..n).collect();
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    while rest.len() >= 2 {
        if rng.gen_bool(0.5) {
            let a = rest.pop().unwrap();
            let b = rest.pop().unwrap();
            inverse[a] = b;
            inverse[b] = a;
        } else {
            rest.pop();
        }
    }
    inverse
}

fn raw_uniform(rng: &mut ChaCha8Rng, n: usize) -> Pregroup {
    let names = (0..n).map(|i| if i == 0 { "1".into() } else { format!("e{i}") }).collect();
    let inverse = random_involution(rng, n);
    let density = rng.gen_range(0.05..0.5);
    let mut products = Vec::new();
    for (x, &xi) in inverse.iter().enumerate().skip(1) {
        for y in 1..n {
            if xi != y && rng.gen_bool(density) {
                products.push((x, y, rng.gen_range(0..n)));
            }
        }
    }
    Pregroup::new("raw", names, 0, inverse, products).expect("forced rows never conflict here")
}

/// An inverse-closed subset of `Z_m` containing 0, with `D = {(x, y) : x + y ∈ subset}`.
fn raw_induced(rng: &mut ChaCha8Rng, size: usize) -> Pregroup {
    let m = rng.gen_range(size.max(2)..=2 * size + 1);
    let mut subset = vec![0usize];
    let mut pool: Vec<usize> = (1..=m / 2).collect();
    pool.shuffle(rng);
    for v in pool {
        let pair = if 2 * v == m { 1 } else { 2 };
        if subset.len() + pair > size {
            continue;
        }
        subset.push(v);
        if pair == 2 {
            subset.push(m - v);
        }
    }
    subset.sort_unstable();
    let pos: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let names = subset.iter().map(|v| if *v == 0 { "1".into() } else { format!("z{v}") }).collect();
    let inverse = subset.iter().map(|&v| pos[&((m - v) % m)]).collect();
    let mut products = Vec::new();
    for &x in &subset {
        for &y in &subset {
            if let Some(&z) = pos.get(&((x + y) % m)) {
                products.push((pos[&x], pos[&y], z));
            }
        }
    }
    Pregroup::new(format!("induced_z{m}"), names, 0, inverse, products).expect("induced table is consistent")
}

/// Changes, adds or deletes exactly one table entry.
pub fn corrupt_one(rng: &mut impl Rng, p: &Pregroup) -> Pregroup {
    let n = p.len();
    loop {
        let x = crate::Elem::new(rng.gen_range(0..n));
        let y = crate::Elem::new(rng.gen_range(0..n));
        let old = p.mul(x, y);
        let new = match rng.gen_range(0..3) {
            0 => None,
            _ => Some(crate::Elem::new(rng.gen_range(0..n))),
        };
        if new != old {
            return p.with_product(x, y, new);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_names_and_table() {
        let z4 = FiniteGroup::cyclic(4, "a");
        assert_eq!(z4.names(), ["1", "a", "a2", "a3"]);
        assert_eq!(z4.mul(3, 3), 2);
        assert_eq!(z4.inv(1), 3);
        FiniteGroup::from_table(z4.names.clone(), z4.table.clone()).unwrap();
    }

    #[test]
    fn dihedral_is_a_group() {
        for n in 1..6 {
            let d = FiniteGroup::dihedral(n, "r", "f");
            FiniteGroup::from_table(d.names.clone(), d.table.clone()).unwrap();
        }
        let s3 = FiniteGroup::s3();
        assert_eq!(s3.names(), ["1", "r", "r2", "f", "rf", "r2f"]);
        // f r = r^-1 f
        let (r, f) = (s3.index_of("r").unwrap(), s3.index_of("f").unwrap());
        assert_eq!(s3.mul(f, r), s3.index_of("r2f").unwrap());
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["1".to_string(), "a".to_string()];
        assert!(FiniteGroup::from_table(names.clone(), vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(names, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn free_sizes() {
        let f1 = free(1);
        assert_eq!(f1.element_names(), ["1", "x", "X"]);
        assert_eq!(f1.domain_size(), 7);
        let f2 = free(2);
        assert_eq!(f2.len(), 5);
        assert_eq!(free(6).element_names()[1], "x1");
    }

    #[test]
    fn amalgam_z4_z2_z4_carrier() {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        assert_eq!(p.element_names(), ["1", "a", "a2", "a3", "b", "b3"]);
        let (a, b, a2) = (p.elem("a").unwrap(), p.elem("b").unwrap(), p.elem("a2").unwrap());
        assert_eq!(p.mul(a, b), None);
        assert_eq!(p.mul(b, b), Some(a2));
        assert_eq!(p.mul(a2, b), p.elem("b3"));
    }

    #[test]
    fn amalgam_embedding_mismatch() {
        let z4 = FiniteGroup::cyclic(4, "a");
        let z4b = FiniteGroup::cyclic(4, "b");
        // a ↦ b2 is not a homomorphism from <a> = Z4
        let bad = vec![(0, 0), (1, 2)];
        assert!(matches!(amalgam(&z4, &z4b, &bad), Err(ConstructError::EmbeddingMismatch(_))));
        assert!(amalgam_cyclic(4, 6, 4).is_err());
        // same names in both factors
        assert!(matches!(amalgam(&z4, &z4, &[(0, 0)]), Err(ConstructError::NameClash(_))));
    }

    #[test]
    fn random_is_deterministic() {
        for mode in [RandomMode::Perturbed, RandomMode::Raw] {
            for seed in 0..20 {
                let a = random_pregroup(seed, 9, mode).unwrap();
                let b = random_pregroup(seed, 9, mode).unwrap();
                assert_eq!(a, b);
            }
        }
        assert_eq!(random_pregroup(1, 0, RandomMode::Raw), Err(ConstructError::EmptyRandom));
    }
}
