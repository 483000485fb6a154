//! `P`-products and their reduction.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pregroup::{Elem, Pregroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty product")]
    Empty,
    #[error("product is not reduced at position {0}")]
    NotReduced(usize),
}

/// A reduced `P`-product: no adjacent pair has a defined product.
///
/// The identity of `U(P)` is the one-factor product `[1]`. Ordered shortlex
/// (length first, then factor by factor in carrier order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reduced(Vec<Elem>);

impl Reduced {
    pub fn new(p: &Pregroup, factors: Vec<Elem>) -> Result<Self, WordError> {
        if factors.is_empty() {
            return Err(WordError::Empty);
        }
        if let Some(i) = factors.windows(2).position(|w| p.defined(w[0], w[1])) {
            return Err(WordError::NotReduced(i));
        }
        Ok(Reduced(factors))
    }

    pub(crate) fn from_vec_unchecked(factors: Vec<Elem>) -> Self {
        debug_assert!(!factors.is_empty());
        Reduced(factors)
    }

    pub fn identity(p: &Pregroup) -> Self {
        Reduced(vec![p.identity()])
    }

    pub fn single(x: Elem) -> Self {
        Reduced(vec![x])
    }

    pub fn factors(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_factors(self) -> Vec<Elem> {
        self.0
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_identity(&self, p: &Pregroup) -> bool {
        self.0.len() == 1 && p.is_identity(self.0[0])
    }

    pub fn display<'a>(&'a self, p: &'a Pregroup) -> impl std::fmt::Display + 'a {
        DisplayWord(p, &self.0)
    }
}

struct DisplayWord<'a>(&'a Pregroup, &'a [Elem]);

impl std::fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.format_word(self.1))
    }
}

impl Ord for Reduced {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Reduced {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order in which defined adjacent pairs are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
    Random(u64),
}

pub fn is_reduced(p: &Pregroup, w: &[Elem]) -> bool {
    w.windows(2).all(|x| !p.defined(x[0], x[1]))
}

/// Reduces a `P`-product until no adjacent pair is defined. An empty input
/// reduces to `[1]`.
pub fn reduce(p: &Pregroup, w: &[Elem], strategy: Strategy) -> Reduced {
    let out = match strategy {
        Strategy::Leftmost => {
            let mut stack = Vec::with_capacity(w.len());
            push_all(p, &mut stack, w.iter().copied());
            stack
        }
        Strategy::Rightmost => {
            let mut stack: Vec<Elem> = Vec::with_capacity(w.len());
            for &x in w.iter().rev() {
                let mut cur = x;
                while let Some(&top) = stack.last() {
                    match p.mul(cur, top) {
                        Some(z) => {
                            stack.pop();
                            cur = z;
                        }
                        None => break,
                    }
                }
                stack.push(cur);
            }
            stack.reverse();
            stack
        }
        Strategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cur = w.to_vec();
            loop {
                let spots: Vec<usize> = (0..cur.len().saturating_sub(1))
                    .filter(|&i| p.defined(cur[i], cur[i + 1]))
                    .collect();
                if spots.is_empty() {
                    break;
                }
                let i = spots[rng.gen_range(0..spots.len())];
                let z = p.mul(cur[i], cur[i + 1]).unwrap();
                cur.splice(i..i + 2, [z]);
            }
            cur
        }
    };
    if out.is_empty() {
        Reduced::identity(p)
    } else {
        Reduced(out)
    }
}

/// Leftmost reduction onto a stack that is already reduced.
fn push_all(p: &Pregroup, stack: &mut Vec<Elem>, items: impl IntoIterator<Item = Elem>) {
    for x in items {
        let mut cur = x;
        while let Some(&top) = stack.last() {
            match p.mul(top, cur) {
                Some(z) => {
                    stack.pop();
                    cur = z;
                }
                None => break,
            }
        }
        stack.push(cur);
    }
}

/// `uv`, reduced leftmost from the junction.
pub fn multiply(p: &Pregroup, u: &Reduced, v: &Reduced) -> Reduced {
    let mut stack = u.0.clone();
    stack.reserve(v.len());
    push_all(p, &mut stack, v.0.iter().copied());
    Reduced(stack)
}

/// Reverses the factors and inverts each one.
pub fn invert(p: &Pregroup, u: &Reduced) -> Reduced {
    Reduced(u.0.iter().rev().map(|&x| p.inv(x)).collect())
}

/// Prefix products `u(1), …, u(n)` as reduced products.
pub fn prefixes(u: &Reduced) -> Vec<Reduced> {
    (1..=u.len()).map(|i| Reduced(u.0[..i].to_vec())).collect()
}
