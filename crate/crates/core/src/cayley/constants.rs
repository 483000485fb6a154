//! Ball estimates of the constants `C0`–`C3`.
//!
//! * `C0 = max |b|` over `b ∈ B_P`.
//! * `C1`: thinness of geodesic triangles on `{1, p, pq}`, `p, q ∈ P`.
//! * `C2 = max (p⁻¹ · q)_1` over pairs with `pq` undefined.
//! * `C3`: for points `x` on geodesics from `1` to `p ∈ P`, the least `|p₂|`
//!   over factorizations `x = p₁p₂` (a one-factor `x` counts with `p₂ = 1`).
//!
//! Every value is a lower bound for the constant of the full Cayley graph
//! ("estimated at radius R"). Instances whose distances are not exact are
//! skipped and counted; a constant is flagged exact when none was skipped.

use rayon::prelude::*;
use serde::Serialize;

use super::ball::Ball;
use super::geodesic::Dag;
use super::hyperbolicity::triangle_thin;
use super::{Best, GeometryError, VertexId};
use crate::pregroup::Elem;
use crate::universal::UniversalGroup;
use crate::word::Reduced;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constant {
    pub value_x2: i64,
    /// Words naming the instance that attains the value.
    pub witness: Vec<String>,
    pub exact: bool,
    pub instances: u64,
    pub skipped: u64,
}

impl Constant {
    fn from_best(p: &crate::Pregroup, best: Best<Vec<Elem>>, instances: u64, skipped: u64) -> Self {
        Constant {
            value_x2: best.value_or(0).max(0),
            witness: best.witness.map(|w| p.names_of(&w)).unwrap_or_default(),
            exact: skipped == 0,
            instances,
            skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub radius: u32,
    pub bp_size: usize,
    pub c0: Constant,
    pub c1: Constant,
    pub c2: Constant,
    pub c3: Constant,
    /// Geodesic points with no factorization of at most two factors.
    pub h3_failures: Vec<String>,
    pub note: String,
}

fn vertex_of(ug: &UniversalGroup, ball: &Ball, w: &[Elem]) -> Option<VertexId> {
    ball.locate(ug, w)
}

/// `|b|` for `b ∈ B_P`; `None` when `b` lies outside the ball.
pub fn c0_instance(ug: &UniversalGroup, ball: &Ball, b: Elem) -> Option<u32> {
    vertex_of(ug, ball, &[b]).map(|v| ball.dist0(v))
}

/// Thinness of the triangle `{1, p, pq}` over all geodesic choices.
pub fn c1_instance(ug: &UniversalGroup, ball: &Ball, p: Elem, q: Elem) -> Result<u32, GeometryError> {
    let m = ball.metric()?;
    let pv = ball.locate_or_err(ug, &[p])?;
    let pqv = ball.locate_or_err(ug, &[p, q])?;
    Ok(triangle_thin(ball, m, [0, pv, pqv])?.0)
}

/// `2 (p⁻¹ · q)_1`.
pub fn c2_instance_x2(ug: &UniversalGroup, ball: &Ball, p: Elem, q: Elem) -> Result<i64, GeometryError> {
    let m = ball.metric()?;
    let pi = ball.locate_or_err(ug, &[ug.pregroup().inv(p)])?;
    let qv = ball.locate_or_err(ug, &[q])?;
    Ok(super::hyperbolicity::gromov_product(m, pi, qv, 0)?.x2())
}

/// Least `|p₂|` over `x = p₁p₂`; `Ok(None)` when `x` needs three or more factors.
pub fn c3_point(ug: &UniversalGroup, ball: &Ball, x: VertexId) -> Result<Option<u32>, GeometryError> {
    let w = ball.word(x);
    match w.len() {
        1 => Ok(Some(0)),
        2 => {
            let mut best = None;
            for r in ug.class_members(w) {
                let p2 = r.factors()[1];
                let v = vertex_of(ug, ball, &[p2])
                    .ok_or_else(|| GeometryError::OutsideBall(ug.pregroup().elem_name(p2).to_string()))?;
                let d = ball.dist0(v);
                best = Some(best.map_or(d, |b: u32| b.min(d)));
            }
            Ok(best)
        }
        _ => Ok(None),
    }
}

pub fn estimate_h_constants(ug: &UniversalGroup, ball: &Ball) -> Result<ConstantsReport, GeometryError> {
    let p = ug.pregroup();
    let m = ball.metric()?;
    let elems: Vec<Elem> = p.elements().collect();

    // C0
    let mut c0 = Best::new();
    let mut c0_skipped = 0;
    let bp: Vec<Elem> = elems.iter().copied().filter(|&b| ug.in_bp(b)).collect();
    for &b in &bp {
        match c0_instance(ug, ball, b) {
            Some(d) => c0.offer(2 * d as i64, vec![b]),
            None => c0_skipped += 1,
        }
    }
    let c0 = Constant::from_best(p, c0, (bp.len() - c0_skipped) as u64, c0_skipped as u64);

    // C1
    let pairs: Vec<(Elem, Elem)> = elems.iter().flat_map(|&x| elems.iter().map(move |&y| (x, y))).collect();
    let (c1, n1, s1) = pairs
        .par_iter()
        .map(|&(x, y)| match c1_instance(ug, ball, x, y) {
            Ok(v) => {
                let mut b = Best::new();
                b.offer(2 * v as i64, vec![x, y]);
                (b, 1u64, 0u64)
            }
            Err(_) => (Best::new(), 0, 1),
        })
        .reduce(|| (Best::new(), 0, 0), |(a, c, s), (b, d, t)| (a.merge(b), c + d, s + t));
    let c1 = Constant::from_best(p, c1, n1, s1);

    // C2
    let (mut c2, mut n2, mut s2) = (Best::new(), 0u64, 0u64);
    for &(x, y) in &pairs {
        if p.defined(x, y) {
            continue;
        }
        match c2_instance_x2(ug, ball, x, y) {
            Ok(v) => {
                c2.offer(v, vec![x, y]);
                n2 += 1;
            }
            Err(_) => s2 += 1,
        }
    }
    let c2 = Constant::from_best(p, c2, n2, s2);

    // C3
    let (mut c3, mut n3, mut s3) = (Best::new(), 0u64, 0u64);
    let mut h3_failures = Vec::new();
    for &x in &elems {
        let Some(pv) = vertex_of(ug, ball, &[x]) else {
            s3 += 1;
            continue;
        };
        let dag = Dag::new(ball, m, 0, pv)?;
        let mut pts: Vec<VertexId> = dag.vertices().collect();
        pts.sort_unstable();
        pts.dedup();
        for pt in pts {
            match c3_point(ug, ball, pt) {
                Ok(Some(d)) => {
                    n3 += 1;
                    let mut w = vec![x];
                    w.extend_from_slice(ball.word(pt).factors());
                    c3.offer(2 * d as i64, w);
                }
                Ok(None) => {
                    h3_failures.push(format!(
                        "{} on a geodesic to {}",
                        p.format_word(ball.word(pt).factors()),
                        p.elem_name(x)
                    ));
                }
                Err(_) => s3 += 1,
            }
        }
    }
    let c3 = Constant::from_best(p, c3, n3, s3);

    Ok(ConstantsReport {
        radius: ball.radius(),
        bp_size: bp.len(),
        c0,
        c1,
        c2,
        c3,
        h3_failures,
        note: format!("estimated at radius {}; lower bounds for the constants of the whole Cayley graph", ball.radius()),
    })
}

/// Canonical words of `U(P)` elements of reduced length at most `max_len`
/// that lie in the ball.
pub fn elements_in_ball(ug: &UniversalGroup, ball: &Ball, max_len: usize) -> Vec<(Reduced, VertexId)> {
    ug.enumerate_elements(max_len)
        .into_iter()
        .filter_map(|r| ball.vertex(&r).map(|v| (r, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{BallOptions, GenSet};
    use crate::construct::{amalgam_cyclic, free};

    #[test]
    fn free_constants() {
        let p = free(2);
        let ug = UniversalGroup::new(&p);
        let s = GenSet::from_elements(&ug, &["x", "y"]).unwrap();
        let b = Ball::build(&ug, &s, 4, BallOptions::default()).unwrap();
        let r = estimate_h_constants(&ug, &b).unwrap();
        assert_eq!((r.c0.value_x2, r.c1.value_x2, r.c2.value_x2, r.c3.value_x2), (0, 0, 0, 0));
        assert!(r.c0.exact && r.c1.exact && r.c2.exact && r.c3.exact);
        assert!(r.h3_failures.is_empty());
    }

    #[test]
    fn amalgam_constants() {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let ug = UniversalGroup::new(&p);
        let s = GenSet::from_elements(&ug, &["a", "b"]).unwrap();
        let b = Ball::build(&ug, &s, 4, BallOptions::default()).unwrap();
        let r = estimate_h_constants(&ug, &b).unwrap();
        assert_eq!(r.c0.value_x2, 4);
        assert_eq!(r.c0.witness, ["a2"]);
        assert_eq!(r.c3.value_x2, 0);
        // witnesses replay
        let (x, y) = (p.elem(&r.c1.witness[0]).unwrap(), p.elem(&r.c1.witness[1]).unwrap());
        assert_eq!(2 * c1_instance(&ug, &b, x, y).unwrap() as i64, r.c1.value_x2);
        let (x, y) = (p.elem(&r.c2.witness[0]).unwrap(), p.elem(&r.c2.witness[1]).unwrap());
        assert_eq!(c2_instance_x2(&ug, &b, x, y).unwrap(), r.c2.value_x2);
    }
}
