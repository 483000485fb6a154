//! Length functions on `U(P)`: Chiswell's length and the order-tree length,
//! plus a probe of the Lyndon length-function axioms on a finite sample.

use rayon::prelude::*;
use serde::Serialize;

use crate::halfint::HalfInt;
use crate::order_tree::{TreeError, TreeMetric};
use crate::pregroup::Pregroup;
use crate::universal::UniversalGroup;
use crate::word::Reduced;

/// `n` for `n > 1` factors; for one factor, 0 on `B_P` and 1 elsewhere.
pub fn chiswell_length(g: &UniversalGroup, u: &Reduced) -> usize {
    match u.len() {
        1 if g.in_bp(u.factors()[0]) => 0,
        n => n,
    }
}

/// `Σ_{i=1}^{n+1} d(x_{i-1}⁻¹, x_i)` with `x_0 = x_{n+1} = 1`.
pub fn tree_length(p: &Pregroup, metric: &TreeMetric, u: &Reduced) -> usize {
    let one = p.identity();
    let mut xs = vec![one];
    xs.extend_from_slice(u.factors());
    xs.push(one);
    xs.windows(2).map(|w| metric.distance(p.inv(w[0]), w[1])).sum()
}

/// Tree length with the treeness check folded in.
pub fn tree_length_checked(p: &Pregroup, u: &Reduced) -> Result<usize, TreeError> {
    let metric = crate::order_tree::OrderTree::new(p).metric()?;
    Ok(tree_length(p, &metric, u))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LyndonCheck {
    /// `l(1) = 0`
    Identity,
    /// `l(g) = l(g⁻¹)`
    Inverse,
    /// `c(g, h) ≥ 0`
    NonNegative,
    /// `c(g, h) ≥ min(c(g, k), c(k, h))`
    Triple,
}

#[derive(Clone, Debug, Serialize)]
pub struct LyndonFailure {
    pub check: LyndonCheck,
    /// Canonical words of the sample elements involved.
    pub elements: Vec<String>,
    /// Doubled values of `c` involved, in the order of the inequality.
    pub values_x2: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LyndonReport {
    pub sample_size: usize,
    pub triples_checked: u64,
    pub failures: Vec<LyndonFailure>,
    pub note: &'static str,
}

impl LyndonReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `c(g, h) = ½(l(g) + l(h) − l(g⁻¹h))`.
pub fn gromov_c(g: &UniversalGroup, x: &Reduced, y: &Reduced) -> HalfInt {
    let q = g.multiply(&g.invert(x), y);
    HalfInt::from_x2(chiswell_length(g, x) as i64 + chiswell_length(g, y) as i64 - chiswell_length(g, &q) as i64)
}

/// Checks the Lyndon axioms on all pairs and triples from `sample`. At most
/// `max_failures` failures are kept.
pub fn lyndon_probe(g: &UniversalGroup, sample: &[Reduced], max_failures: usize) -> LyndonReport {
    let p = g.pregroup();
    let word = |r: &Reduced| p.format_word(r.factors());
    let mut failures = Vec::new();
    let id = g.identity();
    if chiswell_length(g, &id) != 0 {
        failures.push(LyndonFailure { check: LyndonCheck::Identity, elements: vec![word(&id)], values_x2: vec![] });
    }
    for x in sample {
        let (a, b) = (chiswell_length(g, x), chiswell_length(g, &g.invert(x)));
        if a != b {
            failures.push(LyndonFailure {
                check: LyndonCheck::Inverse,
                elements: vec![word(x)],
                values_x2: vec![2 * a as i64, 2 * b as i64],
            });
        }
    }
    let n = sample.len();
    let lengths: Vec<i64> = sample.iter().map(|x| chiswell_length(g, x) as i64).collect();
    let c: Vec<i64> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let q = g.multiply(&g.invert(&sample[i]), &sample[j]);
            lengths[i] + lengths[j] - chiswell_length(g, &q) as i64
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if c[i * n + j] < 0 && failures.len() < max_failures {
                failures.push(LyndonFailure {
                    check: LyndonCheck::NonNegative,
                    elements: vec![word(&sample[i]), word(&sample[j])],
                    values_x2: vec![c[i * n + j]],
                });
            }
        }
    }
    let triple_failures: Vec<(usize, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let c = &c;
            (0..n).flat_map(move |j| {
                (0..n).filter_map(move |k| {
                    let lhs = c[i * n + j];
                    (lhs < c[i * n + k].min(c[k * n + j])).then_some((i, j, k))
                })
            })
        })
        .collect();
    for &(i, j, k) in triple_failures.iter() {
        if failures.len() >= max_failures {
            break;
        }
        failures.push(LyndonFailure {
            check: LyndonCheck::Triple,
            elements: vec![word(&sample[i]), word(&sample[j]), word(&sample[k])],
            values_x2: vec![c[i * n + j], c[i * n + k], c[k * n + j]],
        });
    }
    LyndonReport {
        sample_size: n,
        triples_checked: (n as u64).pow(3),
        failures,
        note: "probe of the standard Lyndon axioms on a finite sample; not a certification",
    }
}
