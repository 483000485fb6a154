//! Equivalence of reduced products and canonical forms in `U(P)`.
//!
//! Two reduced products `u_1⋯u_n` and `v_1⋯v_n` are equivalent when there
//! are interleaving elements `a_1, …, a_{n-1}` with `v_i = a_{i-1}⁻¹ u_i a_i`
//! (`a_0 = a_n = 1`). Classes of equivalent reduced products are the
//! elements of `U(P)`.

use std::collections::BTreeSet;

use crate::pregroup::{Elem, Pregroup, PregroupError};
use crate::word::{self, Reduced, Strategy, WordError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error(transparent)]
    Pregroup(#[from] PregroupError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A pregroup together with the data the interleaver search needs.
#[derive(Clone, Debug)]
pub struct UniversalGroup<'a> {
    p: &'a Pregroup,
    bp: Vec<bool>,
    p6: bool,
    space: Vec<Elem>,
}

impl<'a> UniversalGroup<'a> {
    pub fn new(p: &'a Pregroup) -> Self {
        let bp: Vec<bool> = p.elements().map(|x| p.in_bp(x)).collect();
        let p6 = crate::axioms::p6_holds(p, &bp);
        let space = if p6 {
            p.elements().filter(|x| bp[x.index()]).collect()
        } else {
            p.elements().collect()
        };
        UniversalGroup { p, bp, p6, space }
    }

    pub fn pregroup(&self) -> &'a Pregroup {
        self.p
    }

    /// Whether the interleaver search is restricted to `B_P`.
    pub fn p6(&self) -> bool {
        self.p6
    }

    pub fn in_bp(&self, x: Elem) -> bool {
        self.bp[x.index()]
    }

    pub fn identity(&self) -> Reduced {
        Reduced::identity(self.p)
    }

    /// Parses and reduces a word.
    pub fn parse(&self, text: &str) -> Result<Reduced, PregroupError> {
        Ok(self.reduce(&self.p.parse_word(text)?))
    }

    /// Parses a word that must already be reduced.
    pub fn parse_reduced(&self, text: &str) -> Result<Reduced, WordParseError> {
        Ok(Reduced::new(self.p, self.p.parse_word(text)?)?)
    }

    pub fn reduce(&self, w: &[Elem]) -> Reduced {
        word::reduce(self.p, w, Strategy::Leftmost)
    }

    pub fn multiply(&self, u: &Reduced, v: &Reduced) -> Reduced {
        word::multiply(self.p, u, v)
    }

    pub fn invert(&self, u: &Reduced) -> Reduced {
        word::invert(self.p, u)
    }

    /// Candidates for `a_i` given `a_{i-1}`, `u_i`, as `(v_i, a_i)` sorted.
    fn steps(&self, prev: Elem, ui: Elem, last: bool) -> Vec<(Elem, Elem)> {
        let left = self.p.inv(prev);
        if last {
            let one = self.p.identity();
            return self.p.mul3(left, ui, one).map(|v| vec![(v, one)]).unwrap_or_default();
        }
        let mut out: Vec<(Elem, Elem)> = self
            .space
            .iter()
            .filter_map(|&a| self.p.mul3(left, ui, a).map(|v| (v, a)))
            .collect();
        out.sort_unstable();
        out
    }

    /// An interleaver witnessing `u ∼ v`, if one exists.
    pub fn equivalent(&self, u: &Reduced, v: &Reduced) -> Option<Vec<Elem>> {
        if u.len() != v.len() {
            return None;
        }
        let (u, v) = (u.factors(), v.factors());
        let n = u.len();
        let mut a = Vec::with_capacity(n - 1);
        fn go(g: &UniversalGroup, u: &[Elem], v: &[Elem], a: &mut Vec<Elem>) -> bool {
            let i = a.len();
            let n = u.len();
            let prev = if i == 0 { g.p.identity() } else { a[i - 1] };
            for (vi, ai) in g.steps(prev, u[i], i + 1 == n) {
                if vi != v[i] {
                    continue;
                }
                if i + 1 == n {
                    return true;
                }
                a.push(ai);
                if go(g, u, v, a) {
                    return true;
                }
                a.pop();
            }
            false
        }
        go(self, u, v, &mut a).then_some(a)
    }

    /// Applies an interleaver: `v_i = a_{i-1}⁻¹ u_i a_i`.
    pub fn interleave(&self, u: &Reduced, a: &[Elem]) -> Option<Reduced> {
        let n = u.len();
        if a.len() + 1 != n {
            return None;
        }
        let one = self.p.identity();
        let v: Option<Vec<Elem>> = (0..n)
            .map(|i| {
                let prev = if i == 0 { one } else { a[i - 1] };
                let next = if i + 1 == n { one } else { a[i] };
                self.p.mul3(self.p.inv(prev), u.factors()[i], next)
            })
            .collect();
        Reduced::new(self.p, v?).ok()
    }

    /// Depth-first walk over all reduced interleavings of `u`, visiting
    /// candidates in increasing order. `visit` returns `true` to stop.
    fn walk(&self, u: &[Elem], visit: &mut dyn FnMut(&[Elem]) -> bool) {
        fn go(
            g: &UniversalGroup,
            u: &[Elem],
            prev: Elem,
            out: &mut Vec<Elem>,
            visit: &mut dyn FnMut(&[Elem]) -> bool,
        ) -> bool {
            let i = out.len();
            let n = u.len();
            let mut last_v = None;
            for (vi, ai) in g.steps(prev, u[i], i + 1 == n) {
                if let Some(&w) = out.last() {
                    if g.p.defined(w, vi) {
                        continue;
                    }
                }
                // in a valid pregroup a_i is determined by v_i; skip repeats
                if g.p6 && last_v == Some(vi) {
                    continue;
                }
                last_v = Some(vi);
                out.push(vi);
                let stop = if i + 1 == n { visit(out) } else { go(g, u, ai, out, visit) };
                out.pop();
                if stop {
                    return true;
                }
            }
            false
        }
        let mut out = Vec::with_capacity(u.len());
        go(self, u, self.p.identity(), &mut out, visit);
    }

    /// The lexicographically least reduced product equivalent to `u`.
    pub fn canonical(&self, u: &Reduced) -> Reduced {
        if u.len() == 1 {
            return u.clone();
        }
        let mut best = None;
        self.walk(u.factors(), &mut |v| {
            best = Some(v.to_vec());
            true
        });
        best.map(Reduced::from_vec_unchecked).unwrap_or_else(|| u.clone())
    }

    /// Every reduced product equivalent to `u`, in increasing order.
    pub fn class_members(&self, u: &Reduced) -> Vec<Reduced> {
        if u.len() == 1 {
            return vec![u.clone()];
        }
        let mut all = BTreeSet::new();
        self.walk(u.factors(), &mut |v| {
            all.insert(v.to_vec());
            false
        });
        all.insert(u.factors().to_vec());
        all.into_iter().map(Reduced::from_vec_unchecked).collect()
    }

    /// Canonical form of the element represented by an arbitrary product.
    pub fn normal_form(&self, w: &[Elem]) -> Reduced {
        self.canonical(&self.reduce(w))
    }

    pub fn equal_in_group(&self, u: &[Elem], v: &[Elem]) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// All elements of reduced length at most `max_len`, as canonical forms
    /// in shortlex order.
    pub fn enumerate_elements(&self, max_len: usize) -> Vec<Reduced> {
        let mut out: Vec<Reduced> = self.p.elements().map(Reduced::single).collect();
        let mut layer = out.clone();
        for _ in 1..max_len {
            let mut next = BTreeSet::new();
            for c in &layer {
                let last = *c.factors().last().unwrap();
                for x in self.p.elements() {
                    if self.p.defined(last, x) {
                        continue;
                    }
                    let mut f = c.factors().to_vec();
                    f.push(x);
                    next.insert(self.canonical(&Reduced::from_vec_unchecked(f)));
                }
            }
            layer = next.into_iter().collect();
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
        }
        out
    }
}
