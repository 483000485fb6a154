//! Paths traced by reduced products and Hausdorff-type comparisons.
//!
//! A reduced product `u = u_1⋯u_n` read from a base vertex `x` visits the
//! anchors `x, x·u(1), …, x·u(n)` where `u(i) = u_1⋯u_i`; consecutive anchors
//! are joined by geodesics. [`PathInBall`] fixes one geodesic per segment;
//! [`PathFamily`] keeps every choice (and optionally several products), so
//! quantities computed on it are maxima over all choices.

use serde::Serialize;

use super::ball::{Ball, Metric};
use super::geodesic::Dag;
use super::{GeometryError, VertexId};
use crate::halfint::HalfInt;
use crate::universal::UniversalGroup;
use crate::word::Reduced;

/// Anchors `base·u(i)` of a product read from `base`.
pub fn anchors(ug: &UniversalGroup, ball: &Ball, base: VertexId, u: &Reduced) -> Result<Vec<VertexId>, GeometryError> {
    let p = ug.pregroup();
    let w = ball.word(base);
    let mut out = vec![base];
    for i in 1..=u.len() {
        let prefix = Reduced::new(p, u.factors()[..i].to_vec()).expect("prefix of a reduced product");
        let g = ug.canonical(&ug.multiply(w, &prefix));
        let v = ball.vertex(&g).ok_or_else(|| GeometryError::OutsideBall(p.format_word(g.factors())))?;
        out.push(v);
    }
    Ok(out)
}

/// One concrete path: anchors joined by the first geodesic of each segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathInBall {
    pub anchors: Vec<VertexId>,
    pub vertices: Vec<VertexId>,
}

pub fn path_of_product(
    ug: &UniversalGroup,
    ball: &Ball,
    base: VertexId,
    u: &Reduced,
) -> Result<PathInBall, GeometryError> {
    let metric = ball.metric()?;
    let anchors = anchors(ug, ball, base, u)?;
    let mut vertices = vec![base];
    for w in anchors.windows(2) {
        let seg = Dag::new(ball, metric, w[0], w[1])?.first();
        vertices.extend_from_slice(&seg[1..]);
    }
    Ok(PathInBall { anchors, vertices })
}

/// All paths of a product for every geodesic choice, as a list of
/// segment DAGs.
pub fn segments_of_product(
    ug: &UniversalGroup,
    ball: &Ball,
    base: VertexId,
    u: &Reduced,
) -> Result<Vec<Dag>, GeometryError> {
    let metric = ball.metric()?;
    let anchors = anchors(ug, ball, base, u)?;
    if anchors.len() == 1 {
        return Ok(vec![Dag::point(base)]);
    }
    anchors.windows(2).map(|w| Dag::new(ball, metric, w[0], w[1])).collect()
}

/// A set of paths: several alternatives, each a chain of segment DAGs whose
/// geodesic choices are independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    alternatives: Vec<Vec<Dag>>,
    points: Vec<VertexId>,
}

impl PathFamily {
    pub fn new(alternatives: Vec<Vec<Dag>>) -> Self {
        assert!(alternatives.iter().all(|a| !a.is_empty()), "empty alternative");
        let mut points: Vec<VertexId> = alternatives.iter().flatten().flat_map(|d| d.vertices()).collect();
        points.sort_unstable();
        points.dedup();
        PathFamily { alternatives, points }
    }

    pub fn from_dag(d: Dag) -> Self {
        Self::new(vec![vec![d]])
    }

    /// Every path of `u` read from `base`.
    pub fn of_product(ug: &UniversalGroup, ball: &Ball, base: VertexId, u: &Reduced) -> Result<Self, GeometryError> {
        Ok(Self::new(vec![segments_of_product(ug, ball, base, u)?]))
    }

    /// `η(x, y)`: paths of every reduced product representing `x⁻¹y`, read from `x`.
    pub fn eta(ug: &UniversalGroup, ball: &Ball, x: VertexId, y: VertexId) -> Result<Self, GeometryError> {
        let g = ball.quotient(ug, x, y);
        let alts = ug
            .class_members(&g)
            .iter()
            .map(|u| segments_of_product(ug, ball, x, u))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(alts))
    }

    /// Every vertex on some path of the family, sorted.
    pub fn points(&self) -> &[VertexId] {
        &self.points
    }

    pub fn alternatives(&self) -> &[Vec<Dag>] {
        &self.alternatives
    }

    /// `max over paths π in the family of d(a, π)`.
    pub fn far(&self, metric: &Metric, a: VertexId) -> u32 {
        self.alternatives
            .iter()
            .map(|segs| segs.iter().map(|d| d.maximin(|w| metric.d(a, w))).min().unwrap())
            .max()
            .unwrap()
    }

    /// Largest distance between two points of the family.
    pub fn diameter(&self, metric: &Metric) -> Result<u32, GeometryError> {
        let mut best = 0;
        for &a in &self.points {
            for &b in &self.points {
                best = best.max(metric.exact_d(a, b)?);
            }
        }
        Ok(best)
    }
}

pub(crate) fn check_exact(metric: &Metric, xs: &[VertexId], ys: &[VertexId]) -> Result<(), GeometryError> {
    for &x in xs {
        for &y in ys {
            if !metric.exact(x, y) {
                return Err(GeometryError::NotExact(x, y));
            }
        }
    }
    Ok(())
}

/// Hausdorff distance between two concrete paths.
pub fn hausdorff(metric: &Metric, a: &PathInBall, b: &PathInBall) -> Result<HalfInt, GeometryError> {
    check_exact(metric, &a.vertices, &b.vertices)?;
    let one_sided = |xs: &[VertexId], ys: &[VertexId]| {
        xs.iter().map(|&x| ys.iter().map(|&y| metric.d(x, y)).min().unwrap()).max().unwrap()
    };
    let h = one_sided(&a.vertices, &b.vertices).max(one_sided(&b.vertices, &a.vertices));
    Ok(HalfInt::from_int(h as i64))
}

/// Hausdorff distance maximised over all choices in both families, with the
/// point attaining it.
pub fn hausdorff_families(metric: &Metric, a: &PathFamily, b: &PathFamily) -> Result<(u32, VertexId), GeometryError> {
    check_exact(metric, a.points(), b.points())?;
    let mut best = (0, a.points()[0]);
    for (from, to) in [(a, b), (b, a)] {
        for &x in from.points() {
            let v = to.far(metric, x);
            if v > best.0 {
                best = (v, x);
            }
        }
    }
    Ok(best)
}

/// Hausdorff distance between one fixed vertex sequence and a family,
/// maximised over the family's choices.
pub fn hausdorff_path_family(metric: &Metric, a: &[VertexId], b: &PathFamily) -> Result<u32, GeometryError> {
    check_exact(metric, a, b.points())?;
    let to_b = a.iter().map(|&x| b.far(metric, x)).max().unwrap_or(0);
    let to_a = b
        .points()
        .iter()
        .map(|&y| a.iter().map(|&x| metric.d(x, y)).min().unwrap())
        .max()
        .unwrap_or(0);
    Ok(to_b.max(to_a))
}

/// Thinness of a triangle whose sides are families: the largest distance
/// from a point of one side to the union of the other two, over all
/// choices. Returns the value with `(side, point)` attaining it.
pub fn triangle_thinness(metric: &Metric, sides: [&PathFamily; 3]) -> Result<(u32, (usize, VertexId)), GeometryError> {
    for i in 0..3 {
        for j in i + 1..3 {
            check_exact(metric, sides[i].points(), sides[j].points())?;
        }
    }
    let mut best = (0, (0, sides[0].points()[0]));
    for i in 0..3 {
        let (y, z) = (sides[(i + 1) % 3], sides[(i + 2) % 3]);
        for &x in sides[i].points() {
            let v = y.far(metric, x).min(z.far(metric, x));
            if v > best.0 {
                best = (v, (i, x));
            }
        }
    }
    Ok(best)
}
