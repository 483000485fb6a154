//! Exhaustive checkers for the pregroup axioms and their companions.
//!
//! Every checker is a scan over a finite tuple space for the first tuple (in
//! carrier order) that violates the axiom. The violating tuple is returned
//! as a witness, and [`replay_witness`] re-evaluates exactly that tuple.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::pregroup::{Elem, Pregroup};
use crate::word::{self, Reduced, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomTag {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P6Prime,
    A1,
    A2,
    A3,
    A4,
    A5,
    H0,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 13] = [
        AxiomTag::P1,
        AxiomTag::P2,
        AxiomTag::P3,
        AxiomTag::P4,
        AxiomTag::P5,
        AxiomTag::P6,
        AxiomTag::P6Prime,
        AxiomTag::A1,
        AxiomTag::A2,
        AxiomTag::A3,
        AxiomTag::A4,
        AxiomTag::A5,
        AxiomTag::H0,
    ];

    /// The pregroup axioms proper.
    pub const PREGROUP: [AxiomTag; 5] = [AxiomTag::P1, AxiomTag::P2, AxiomTag::P3, AxiomTag::P4, AxiomTag::P5];

    pub fn name(self) -> &'static str {
        match self {
            AxiomTag::P1 => "P1",
            AxiomTag::P2 => "P2",
            AxiomTag::P3 => "P3",
            AxiomTag::P4 => "P4",
            AxiomTag::P5 => "P5",
            AxiomTag::P6 => "P6",
            AxiomTag::P6Prime => "P6'",
            AxiomTag::A1 => "A1",
            AxiomTag::A2 => "A2",
            AxiomTag::A3 => "A3",
            AxiomTag::A4 => "A4",
            AxiomTag::A5 => "A5",
            AxiomTag::H0 => "H0",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for AxiomTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("unknown axiom `{0}`")]
    UnknownTag(String),
    #[error("A2 needs bounds (sequence length m and exponent cap)")]
    MissingA2Bounds,
    #[error("witness for {axiom} has {got} elements, expected {expected}")]
    WitnessArity { axiom: AxiomTag, expected: usize, got: usize },
}

impl FromStr for AxiomTag {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let tag = match t.as_str() {
            "P1" => AxiomTag::P1,
            "P2" => AxiomTag::P2,
            "P3" => AxiomTag::P3,
            "P4" => AxiomTag::P4,
            "P5" => AxiomTag::P5,
            "P6" => AxiomTag::P6,
            "P6'" | "P6P" | "P6PRIME" => AxiomTag::P6Prime,
            "A1" => AxiomTag::A1,
            "A2" => AxiomTag::A2,
            "A3" => AxiomTag::A3,
            "A4" => AxiomTag::A4,
            "A5" => AxiomTag::A5,
            "H0" => AxiomTag::H0,
            _ => return Err(AxiomError::UnknownTag(s.to_string())),
        };
        Ok(tag)
    }
}

/// Bounds for the A2 scan: sequences of length `1..=m`, exponents `1..=alpha_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct A2Bounds {
    pub m: usize,
    pub alpha_max: u32,
}

impl Default for A2Bounds {
    fn default() -> Self {
        A2Bounds { m: 2, alpha_max: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: AxiomTag,
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
    pub note: String,
}

/// A verdict with element names resolved, for output.
#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<Vec<String>>,
    pub note: String,
}

impl AxiomVerdict {
    pub fn record(&self, p: &Pregroup) -> VerdictRecord {
        VerdictRecord {
            axiom: self.axiom.name().to_string(),
            holds: self.holds,
            witness: self.witness.as_ref().map(|w| p.names_of(w)),
            note: self.note.clone(),
        }
    }
}

/// Positive powers `p, p², …` computed left-associatively, stopping at the
/// first undefined product or the first repeated value.
pub fn powers(p: &Pregroup, x: Elem) -> Vec<Elem> {
    let mut out = vec![x];
    let mut cur = x;
    while let Some(next) = p.mul(cur, x) {
        if out.contains(&next) {
            break;
        }
        out.push(next);
        cur = next;
    }
    out
}

/// Whether `x^n = 1` for some `n ≥ 1` in the iterated partial powers.
fn has_finite_order(p: &Pregroup, x: Elem) -> bool {
    let mut cur = x;
    for _ in 0..=p.len() {
        if p.is_identity(cur) {
            return true;
        }
        match p.mul(cur, x) {
            Some(n) => cur = n,
            None => return false,
        }
    }
    false
}

fn bp_mask(p: &Pregroup) -> Vec<bool> {
    p.elements().map(|x| p.in_bp(x)).collect()
}

/// Does the tuple violate the axiom? Tuples have the axiom's own arity
/// (see [`witness_arity`]); A2 witnesses are sequences.
fn violates(p: &Pregroup, bp: &[bool], tag: AxiomTag, t: &[Elem], a2: Option<A2Bounds>) -> bool {
    let one = p.identity();
    let in_bp = |x: Elem| bp[x.index()];
    match tag {
        AxiomTag::P1 => p.mul(one, t[0]) != Some(t[0]) || p.mul(t[0], one) != Some(t[0]),
        AxiomTag::P2 => {
            let i = p.inv(t[0]);
            p.mul(t[0], i) != Some(one) || p.mul(i, t[0]) != Some(one)
        }
        AxiomTag::P3 => match p.mul(t[0], t[1]) {
            Some(uv) => p.mul(p.inv(t[1]), p.inv(t[0])) != Some(p.inv(uv)),
            None => false,
        },
        AxiomTag::P4 => {
            let (u, v, w) = (t[0], t[1], t[2]);
            match (p.mul(u, v), p.mul(v, w)) {
                (Some(uv), Some(vw)) => p.mul(uv, w) != p.mul(u, vw),
                _ => false,
            }
        }
        AxiomTag::P5 => {
            let (u, v, w, z) = (t[0], t[1], t[2], t[3]);
            p.defined(u, v)
                && p.defined(v, w)
                && p.defined(w, z)
                && p.mul3(u, v, w).is_none()
                && p.mul3(v, w, z).is_none()
        }
        AxiomTag::P6 => {
            let (x, a, y) = (t[0], t[1], t[2]);
            !p.defined(x, y) && p.defined(x, a) && p.defined(p.inv(a), y) && !in_bp(a)
        }
        AxiomTag::P6Prime => {
            let (a, x, y) = (t[0], t[1], t[2]);
            !p.defined(x, y) && p.mul(a, x).is_some_and(|ax| p.defined(ax, y) && !in_bp(ax))
        }
        AxiomTag::A1 => {
            // (p, q) with q = p^n or p^-n for n ≥ 1, q ∈ B_P, p ∉ B_P
            let (x, q) = (t[0], t[1]);
            !in_bp(x) && in_bp(q) && (powers(p, x).contains(&q) || powers(p, p.inv(x)).contains(&q))
        }
        AxiomTag::A2 => match a2 {
            Some(b) => a2_sequence_fails(p, bp, t, b),
            None => false,
        },
        AxiomTag::A3 => in_bp(t[0]) && !p.is_identity(t[0]) && has_finite_order(p, t[0]),
        AxiomTag::A4 => {
            let (x, a) = (t[0], t[1]);
            !in_bp(x)
                && in_bp(a)
                && !p.is_identity(a)
                && p.mul3(p.inv(x), a, x).is_some_and(in_bp)
        }
        AxiomTag::A5 => in_bp(t[1]) && p.mul3(p.inv(t[0]), t[1], t[0]).is_none(),
        AxiomTag::H0 => false,
    }
}

pub fn witness_arity(tag: AxiomTag) -> Option<usize> {
    match tag {
        AxiomTag::P1 | AxiomTag::P2 | AxiomTag::A3 => Some(1),
        AxiomTag::P3 | AxiomTag::A1 | AxiomTag::A4 | AxiomTag::A5 => Some(2),
        AxiomTag::P4 | AxiomTag::P6 | AxiomTag::P6Prime => Some(3),
        AxiomTag::P5 => Some(4),
        AxiomTag::A2 | AxiomTag::H0 => None,
    }
}

/// First tuple in lexicographic carrier order of the given arity violating `tag`.
fn scan(p: &Pregroup, bp: &[bool], tag: AxiomTag, arity: usize) -> Option<Vec<Elem>> {
    let n = p.len();
    let total = n.pow(arity as u32);
    let decode = |mut k: usize| {
        let mut t = vec![Elem::new(0); arity];
        for slot in t.iter_mut().rev() {
            *slot = Elem::new(k % n);
            k /= n;
        }
        t
    };
    if total < 4096 {
        (0..total).map(decode).find(|t| violates(p, bp, tag, t, None))
    } else {
        (0..total)
            .into_par_iter()
            .with_min_len(1024)
            .map(decode)
            .find_first(|t| violates(p, bp, tag, t, None))
    }
}

pub(crate) fn p6_holds(p: &Pregroup, bp: &[bool]) -> bool {
    scan(p, bp, AxiomTag::P6, 3).is_none()
}

fn a2_commutes(p: &Pregroup, x: Elem, y: Elem) -> bool {
    let w = [p.inv(x), p.inv(y), x, y];
    word::reduce(p, &w, Strategy::Leftmost).is_identity(p)
}

fn in_bp_reduced(bp: &[bool], r: &Reduced) -> bool {
    r.len() == 1 && bp[r.factors()[0].index()]
}

/// Least threshold `t` such that every exponent tuple in `[t, alpha_max]^k`
/// gives a product outside `B_P`; `alpha_max + 1` if none does.
pub fn a2_threshold(p: &Pregroup, bp: &[bool], seq: &[Elem], alpha_max: u32) -> u32 {
    let k = seq.len();
    let mut worst = 0u32;
    let mut alphas = vec![1u32; k];
    loop {
        let mut w = Vec::new();
        for (&x, &e) in seq.iter().zip(&alphas) {
            w.extend(std::iter::repeat_n(x, e as usize));
        }
        if in_bp_reduced(bp, &word::reduce(p, &w, Strategy::Leftmost)) {
            worst = worst.max(*alphas.iter().min().unwrap());
        }
        let mut i = 0;
        loop {
            if i == k {
                return worst + 1;
            }
            alphas[i] += 1;
            if alphas[i] <= alpha_max {
                break;
            }
            alphas[i] = 1;
            i += 1;
        }
    }
}

fn a2_eligible(p: &Pregroup, bp: &[bool], seq: &[Elem]) -> bool {
    seq.iter().any(|x| !bp[x.index()]) && seq.windows(2).all(|w| !a2_commutes(p, w[0], w[1]))
}

fn a2_sequence_fails(p: &Pregroup, bp: &[bool], seq: &[Elem], b: A2Bounds) -> bool {
    !seq.is_empty()
        && seq.len() <= b.m
        && a2_eligible(p, bp, seq)
        && a2_threshold(p, bp, seq, b.alpha_max) > b.alpha_max.div_ceil(2)
}

fn check_a2(p: &Pregroup, bp: &[bool], b: A2Bounds) -> Option<Vec<Elem>> {
    let n = p.len();
    for k in 1..=b.m {
        let total = n.pow(k as u32);
        let found = (0..total).into_par_iter().find_first(|&code| {
            let mut c = code;
            let mut seq = vec![Elem::new(0); k];
            for slot in seq.iter_mut().rev() {
                *slot = Elem::new(c % n);
                c /= n;
            }
            a2_sequence_fails(p, bp, &seq, b)
        });
        if let Some(mut c) = found {
            let mut seq = vec![Elem::new(0); k];
            for slot in seq.iter_mut().rev() {
                *slot = Elem::new(c % n);
                c /= n;
            }
            return Some(seq);
        }
    }
    None
}

fn a1_witness(p: &Pregroup, bp: &[bool]) -> Option<Vec<Elem>> {
    for x in p.elements() {
        if bp[x.index()] {
            continue;
        }
        let mut cands: Vec<Elem> = powers(p, x).into_iter().chain(powers(p, p.inv(x))).filter(|q| bp[q.index()]).collect();
        // prefer a non-trivial power as the witness
        cands.sort_unstable_by_key(|&q| (p.is_identity(q), q));
        if let Some(&q) = cands.first() {
            return Some(vec![x, q]);
        }
    }
    None
}

/// Checks one axiom exhaustively.
pub fn check_axiom(p: &Pregroup, tag: AxiomTag, a2: Option<A2Bounds>) -> Result<AxiomVerdict, AxiomError> {
    let bp = bp_mask(p);
    let mut note = String::new();
    let witness = match tag {
        AxiomTag::A1 => a1_witness(p, &bp),
        AxiomTag::A2 => {
            let b = a2.ok_or(AxiomError::MissingA2Bounds)?;
            note = format!("bounded heuristic: sequences of length <= {}, exponents <= {}", b.m, b.alpha_max);
            check_a2(p, &bp, b)
        }
        AxiomTag::A4 if bp.iter().filter(|&&b| b).count() <= 1 => {
            note = "B_P is trivial".into();
            None
        }
        AxiomTag::H0 => {
            note = format!("|B_P| = {}", bp.iter().filter(|&&b| b).count());
            None
        }
        _ => scan(p, &bp, tag, witness_arity(tag).unwrap()),
    };
    Ok(AxiomVerdict { axiom: tag, holds: witness.is_none(), witness, note })
}

/// Checks a list of axioms in order.
pub fn check_all(p: &Pregroup, tags: &[AxiomTag], a2: Option<A2Bounds>) -> Result<Vec<AxiomVerdict>, AxiomError> {
    tags.iter().map(|&t| check_axiom(p, t, a2)).collect()
}

/// True iff `witness` demonstrates a failure of `tag` on `p`.
pub fn replay_witness(p: &Pregroup, tag: AxiomTag, witness: &[Elem], a2: Option<A2Bounds>) -> Result<bool, AxiomError> {
    if let Some(k) = witness_arity(tag) {
        if witness.len() != k {
            return Err(AxiomError::WitnessArity { axiom: tag, expected: k, got: witness.len() });
        }
    }
    if tag == AxiomTag::A2 && a2.is_none() {
        return Err(AxiomError::MissingA2Bounds);
    }
    Ok(violates(p, &bp_mask(p), tag, witness, a2))
}
