//! Gromov products and two estimates of the hyperbolicity constant on a ball.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ball::{Ball, Metric};
use super::geodesic::Dag;
use super::paths::{triangle_thinness, PathFamily};
use super::{Best, GeometryError, VertexId};
use crate::halfint::HalfInt;

/// `(x · y)_v = ½(d(x, v) + d(y, v) − d(x, y))`, refused unless all three
/// distances are exact.
pub fn gromov_product(metric: &Metric, x: VertexId, y: VertexId, v: VertexId) -> Result<HalfInt, GeometryError> {
    let (xv, yv, xy) = (metric.exact_d(x, v)?, metric.exact_d(y, v)?, metric.exact_d(x, y)?);
    Ok(HalfInt::from_x2(xv as i64 + yv as i64 - xy as i64))
}

#[inline]
fn gp2(m: &Metric, x: VertexId, y: VertexId, v: VertexId) -> i64 {
    m.d(x, v) as i64 + m.d(y, v) as i64 - m.d(x, y) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Exhaustive when the instance count is at most this; otherwise this
    /// many instances are sampled.
    pub budget: u64,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { budget: 2_000_000_000, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Delta4Report {
    /// `4δ`: the four-point defect can be a half-integer, so `δ` is a
    /// multiple of ¼.
    pub delta_4pt_x4: i64,
    /// Largest `min((x·z)_v, (z·y)_v) − (x·y)_v`, doubled.
    pub defect_x2: i64,
    /// `(x, y, z, v)` attaining the defect.
    pub witness: Option<[VertexId; 4]>,
    pub quadruples: u64,
    pub mode: ScanMode,
}

/// Defect of the four-point inequality at one quadruple, doubled; `None` if
/// some distance is not exact.
pub fn four_point_defect_x2(m: &Metric, [x, y, z, v]: [VertexId; 4]) -> Option<i64> {
    let pairs = [(x, y), (x, z), (x, v), (y, z), (y, v), (z, v)];
    if !pairs.iter().all(|&(a, b)| m.exact(a, b)) {
        return None;
    }
    Some(gp2(m, x, z, v).min(gp2(m, z, y, v)) - gp2(m, x, y, v))
}

/// Least `δ` with `(x·y)_v ≥ min((x·z)_v, (z·y)_v) − 2δ` over every
/// quadruple of the ball whose six distances are exact.
pub fn delta_4pt(ball: &Ball, opts: ScanOptions) -> Result<Delta4Report, GeometryError> {
    let m = ball.metric()?;
    let n = ball.len() as u64;
    let total = n.saturating_pow(4);
    let (best, count, mode) = if total <= opts.budget {
        let exact_with: Vec<Vec<VertexId>> =
            ball.vertices().map(|v| ball.vertices().filter(|&w| m.exact(v, w)).collect()).collect();
        let (best, count) = ball
            .vertices()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|v| {
                let mut best = Best::new();
                let mut count = 0u64;
                let ev = &exact_with[v as usize];
                for &x in ev {
                    for &y in ev.iter().filter(|&&y| y >= x && m.exact(x, y)) {
                        let xy = gp2(m, x, y, v);
                        for &z in ev {
                            if !(m.exact(x, z) && m.exact(y, z)) {
                                continue;
                            }
                            count += 1;
                            let defect = gp2(m, x, z, v).min(gp2(m, z, y, v)) - xy;
                            best.offer(defect, [x, y, z, v]);
                            // the expression is symmetric in (x, y) up to the witness
                            if x != y {
                                count += 1;
                                best.offer(defect, [y, x, z, v]);
                            }
                        }
                    }
                }
                (best, count)
            })
            .reduce(|| (Best::new(), 0), |(a, c), (b, d)| (a.merge(b), c + d));
        (best, count, ScanMode::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let quads: Vec<[VertexId; 4]> =
            (0..opts.budget).map(|_| std::array::from_fn(|_| rng.gen_range(0..n as VertexId))).collect();
        let (best, count) = quads
            .par_iter()
            .filter_map(|&q| four_point_defect_x2(m, q).map(|d| (d, q)))
            .fold(|| (Best::new(), 0u64), |(mut b, c), (d, q)| {
                b.offer(d, q);
                (b, c + 1)
            })
            .reduce(|| (Best::new(), 0), |(a, c), (b, d)| (a.merge(b), c + d));
        (best, count, ScanMode::Sampled)
    };
    let defect = best.value_or(0).max(0);
    Ok(Delta4Report {
        delta_4pt_x4: defect,
        defect_x2: best.value_or(0),
        witness: best.witness,
        quadruples: count,
        mode,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThinWitness {
    pub triangle: [VertexId; 3],
    /// Index of the side `[t_i, t_{i+1}]` holding the point.
    pub side: usize,
    pub point: VertexId,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThinReport {
    pub delta_thin_x2: i64,
    pub witness: Option<ThinWitness>,
    pub triangles: u64,
    pub skipped: u64,
    pub mode: ScanMode,
    /// Thinness is maximised over every choice of geodesic sides.
    pub geodesic_choices: &'static str,
}

/// Thinness of the geodesic triangle `(x, y, z)` over all choices of sides,
/// with the side index and point attaining it.
pub fn triangle_thin(ball: &Ball, m: &Metric, t: [VertexId; 3]) -> Result<(u32, usize, VertexId), GeometryError> {
    let side = |a, b| Dag::new(ball, m, a, b).map(PathFamily::from_dag);
    let sides = [side(t[0], t[1])?, side(t[1], t[2])?, side(t[2], t[0])?];
    let (v, (s, pt)) = triangle_thinness(m, [&sides[0], &sides[1], &sides[2]])?;
    Ok((v, s, pt))
}

/// Largest thinness of a geodesic triangle with exact sides whose points
/// are pairwise exact, over all triangles (or a sample) and all geodesic
/// choices.
/// Triangle corners, side index and point of a thinness witness.
type ThinHit = (VertexId, VertexId, VertexId, usize, VertexId);

pub fn delta_thin(ball: &Ball, opts: ScanOptions) -> Result<ThinReport, GeometryError> {
    let m = ball.metric()?;
    let n = ball.len() as u64;
    // triangles x ≤ y ≤ z, bigons included
    let total = n * (n + 1) * (n + 2) / 6;
    let eval = |t: [VertexId; 3]| -> Option<(i64, ThinHit)> {
        if !(m.exact(t[0], t[1]) && m.exact(t[1], t[2]) && m.exact(t[0], t[2])) {
            return None;
        }
        triangle_thin(ball, m, t).ok().map(|(v, s, pt)| (v as i64, (t[0], t[1], t[2], s, pt)))
    };
    let fold = |acc: (Best<_>, u64, u64), t: [VertexId; 3]| {
        let (mut b, c, s) = acc;
        match eval(t) {
            Some((v, w)) => {
                b.offer(v, w);
                (b, c + 1, s)
            }
            None => (b, c, s + 1),
        }
    };
    let merge = |(a, c, s): (Best<_>, u64, u64), (b, d, t): (Best<_>, u64, u64)| (a.merge(b), c + d, s + t);
    let ((best, count, skipped), mode) = if total <= opts.budget {
        let r = (0..n as VertexId)
            .into_par_iter()
            .map(|x| {
                let mut acc = (Best::new(), 0, 0);
                for y in x..n as VertexId {
                    for z in y..n as VertexId {
                        acc = fold(acc, [x, y, z]);
                    }
                }
                acc
            })
            .reduce(|| (Best::new(), 0, 0), merge);
        (r, ScanMode::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let tris: Vec<[VertexId; 3]> = (0..opts.budget)
            .map(|_| {
                let mut t: [VertexId; 3] = std::array::from_fn(|_| rng.gen_range(0..n as VertexId));
                t.sort_unstable();
                t
            })
            .collect();
        let r = tris.par_iter().fold(|| (Best::new(), 0, 0), |acc, &t| fold(acc, t)).reduce(|| (Best::new(), 0, 0), merge);
        (r, ScanMode::Sampled)
    };
    Ok(ThinReport {
        delta_thin_x2: 2 * best.value_or(0),
        witness: best.witness.map(|(x, y, z, side, point)| ThinWitness { triangle: [x, y, z], side, point }),
        triangles: count,
        skipped,
        mode,
        geodesic_choices: "all",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{BallOptions, GenSet};
    use crate::construct::{amalgam_cyclic, free, group, FiniteGroup};
    use crate::UniversalGroup;

    fn ball(p: &crate::Pregroup, gens: &[&str], r: u32) -> Ball {
        let ug = UniversalGroup::new(p);
        let s = GenSet::from_elements(&ug, gens).unwrap();
        Ball::build(&ug, &s, r, BallOptions::default()).unwrap()
    }

    #[test]
    fn gromov_products_in_free_ball() {
        let p = free(2);
        let ug = UniversalGroup::new(&p);
        let b = ball(&p, &["x", "y"], 4);
        let m = b.metric().unwrap();
        let at = |w: &str| b.locate(&ug, &p.parse_word(w).unwrap()).unwrap();
        assert_eq!(gromov_product(m, at("x"), at("x"), 0).unwrap(), HalfInt::from_int(1));
        assert_eq!(gromov_product(m, at("x"), at("y"), 0).unwrap(), HalfInt::ZERO);
        assert_eq!(gromov_product(m, at("x"), at("x y"), 0).unwrap(), HalfInt::from_int(1));
    }

    #[test]
    fn trees_have_zero_delta() {
        let p = amalgam_cyclic(2, 2, 1).unwrap();
        let b = ball(&p, &["a", "b"], 5);
        assert_eq!(delta_4pt(&b, ScanOptions::default()).unwrap().delta_4pt_x4, 0);
        assert_eq!(delta_thin(&b, ScanOptions::default()).unwrap().delta_thin_x2, 0);
    }

    #[test]
    fn s3_delta_reproduces_from_witness() {
        let p = group(&FiniteGroup::s3(), "s3").unwrap();
        let b = ball(&p, &["r", "f"], 6);
        let m = b.metric().unwrap();
        let r = delta_4pt(&b, ScanOptions::default()).unwrap();
        assert_eq!(r.quadruples, 6u64.pow(4));
        assert_eq!(four_point_defect_x2(m, r.witness.unwrap()), Some(r.defect_x2));
        let t = delta_thin(&b, ScanOptions::default()).unwrap();
        let w = t.witness.unwrap();
        assert_eq!(triangle_thin(&b, m, w.triangle).unwrap().0 as i64 * 2, t.delta_thin_x2);
    }
}
