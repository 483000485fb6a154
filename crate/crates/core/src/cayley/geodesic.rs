//! The DAG of all geodesics between two vertices of a ball.

use super::ball::{Ball, Metric};
use super::{GeometryError, VertexId};

/// Every vertex and edge lying on some geodesic from `from` to `to`,
/// arranged in layers by distance from `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dag {
    from: VertexId,
    to: VertexId,
    layers: Vec<Vec<VertexId>>,
    /// `succ[k][i]`: positions in layer `k + 1` adjacent to `layers[k][i]`.
    succ: Vec<Vec<Vec<u32>>>,
}

impl Dag {
    /// Refused unless `d(from, to)` is exact, since otherwise ambient
    /// geodesics could leave the ball.
    pub fn new(ball: &Ball, metric: &Metric, from: VertexId, to: VertexId) -> Result<Dag, GeometryError> {
        let len = metric.exact_d(from, to)?;
        let mut layers = vec![vec![from]];
        let mut succ = Vec::with_capacity(len as usize);
        for k in 0..len {
            let cur = &layers[k as usize];
            let mut next: Vec<VertexId> = cur
                .iter()
                .flat_map(|&u| ball.neighbours(u).iter().copied())
                .filter(|&w| metric.d(from, w) == k + 1 && metric.d(w, to) == len - k - 1)
                .collect();
            next.sort_unstable();
            next.dedup();
            let s: Vec<Vec<u32>> = cur
                .iter()
                .map(|&u| {
                    let nb = ball.neighbours(u);
                    next.iter()
                        .enumerate()
                        .filter(|(_, w)| nb.binary_search(w).is_ok())
                        .map(|(i, _)| i as u32)
                        .collect()
                })
                .collect();
            succ.push(s);
            layers.push(next);
        }
        Ok(Dag { from, to, layers, succ })
    }

    /// The one-point DAG at `v`.
    pub fn point(v: VertexId) -> Dag {
        Dag { from: v, to: v, layers: vec![vec![v]], succ: vec![] }
    }

    pub fn from(&self) -> VertexId {
        self.from
    }

    pub fn to(&self) -> VertexId {
        self.to
    }

    /// Length of every geodesic in the DAG.
    pub fn len(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn layers(&self) -> &[Vec<VertexId>] {
        &self.layers
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.layers.iter().flatten().copied()
    }

    /// Number of distinct geodesics (saturating).
    pub fn count(&self) -> u128 {
        let mut ways = vec![1u128];
        for k in (0..self.succ.len()).rev() {
            ways = self.succ[k]
                .iter()
                .map(|s| s.iter().fold(0u128, |acc, &j| acc.saturating_add(ways[j as usize])))
                .collect();
        }
        ways[0]
    }

    /// The geodesic taking the smallest vertex id at every step.
    pub fn first(&self) -> Vec<VertexId> {
        let mut out = vec![self.from];
        let mut i = 0usize;
        for k in 0..self.succ.len() {
            // by construction every DAG vertex reaches `to`
            let j = self.succ[k][i][0] as usize;
            out.push(self.layers[k + 1][j]);
            i = j;
        }
        out
    }

    /// A geodesic chosen by a uniform step at every layer.
    pub fn random_path(&self, rng: &mut impl rand::Rng) -> Vec<VertexId> {
        let mut out = vec![self.from];
        let mut i = 0usize;
        for k in 0..self.succ.len() {
            let s = &self.succ[k][i];
            let j = s[rng.gen_range(0..s.len())] as usize;
            out.push(self.layers[k + 1][j]);
            i = j;
        }
        out
    }

    /// Up to `cap` geodesics in lexicographic order of vertex ids.
    pub fn enumerate(&self, cap: usize) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        let mut path = vec![self.from];
        self.walk(0, 0, &mut path, &mut out, cap);
        out
    }

    fn walk(&self, k: usize, i: usize, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if k == self.succ.len() {
            out.push(path.clone());
            return;
        }
        for &j in &self.succ[k][i] {
            path.push(self.layers[k + 1][j as usize]);
            self.walk(k + 1, j as usize, path, out, cap);
            path.pop();
        }
    }

    /// `max over geodesics γ of min over w ∈ γ of f(w)`.
    pub fn maximin(&self, f: impl Fn(VertexId) -> u32) -> u32 {
        let last = self.layers.len() - 1;
        let mut best: Vec<u32> = self.layers[last].iter().map(|&w| f(w)).collect();
        for k in (0..last).rev() {
            best = self.layers[k]
                .iter()
                .zip(&self.succ[k])
                .map(|(&w, s)| {
                    let tail = s.iter().map(|&j| best[j as usize]).max().unwrap_or(0);
                    f(w).min(tail)
                })
                .collect();
        }
        best[0]
    }
}
