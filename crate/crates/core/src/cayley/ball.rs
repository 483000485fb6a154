//! Radius-`R` balls of the Cayley graph, their text cache format, and the
//! all-pairs in-ball metric.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use super::genset::GenSet;
use super::{GeometryError, VertexId};
use crate::pregroup::Elem;
use crate::universal::UniversalGroup;
use crate::word::Reduced;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BallError {
    #[error("ball exceeds the vertex limit of {limit} (reached radius {radius})")]
    VertexLimit { limit: usize, radius: u32 },
    #[error("ball of {0} vertices is too large for an all-pairs metric (limit {1})")]
    MetricTooLarge(usize, usize),
    #[error("ball file line {line}: {msg}")]
    File { line: usize, msg: String },
}

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    pub vertex_limit: usize,
    pub metric_limit: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions { vertex_limit: 200_000, metric_limit: 12_000 }
    }
}

#[derive(Debug)]
pub struct Ball {
    pregroup_name: String,
    radius: u32,
    gen_names: Vec<String>,
    words: Vec<Reduced>,
    index: HashMap<Reduced, VertexId>,
    dist0: Vec<u32>,
    /// Sorted, deduplicated neighbours.
    adj: Vec<Vec<VertexId>>,
    /// `(u, u·s, s)` for every generator `s`; inverse moves are the reversed edges.
    edges: Vec<(VertexId, VertexId, usize)>,
    metric_limit: usize,
    metric: OnceLock<Metric>,
}

impl Ball {
    /// Breadth-first closure of `{1}` under right multiplication by `S ∪ S⁻¹`.
    /// Vertices are numbered layer by layer in shortlex order of their
    /// canonical forms.
    pub fn build(ug: &UniversalGroup, s: &GenSet, radius: u32, opts: BallOptions) -> Result<Ball, BallError> {
        let moves = s.moves(ug);
        let mut words = vec![ug.identity()];
        let mut index = HashMap::from([(ug.identity(), 0)]);
        let mut dist0 = vec![0u32];
        let mut edges = Vec::new();
        let mut layer: Vec<VertexId> = vec![0];
        let mut depth = 0u32;
        while !layer.is_empty() {
            // neighbours of each vertex in the layer, computed in parallel
            let products: Vec<Vec<(usize, bool, Reduced)>> = layer
                .par_iter()
                .map(|&v| {
                    moves
                        .iter()
                        .enumerate()
                        .map(|(k, (g, m))| (*g, k % 2 == 0, ug.canonical(&ug.multiply(&words[v as usize], m))))
                        .collect()
                })
                .collect();
            let mut fresh: Vec<Reduced> = Vec::new();
            if depth < radius {
                for prods in &products {
                    for (_, _, w) in prods {
                        if !index.contains_key(w) {
                            fresh.push(w.clone());
                        }
                    }
                }
                fresh.sort_unstable();
                fresh.dedup();
                if words.len() + fresh.len() > opts.vertex_limit {
                    return Err(BallError::VertexLimit { limit: opts.vertex_limit, radius: depth + 1 });
                }
            }
            let mut next = Vec::with_capacity(fresh.len());
            for w in fresh {
                let id = words.len() as VertexId;
                index.insert(w.clone(), id);
                words.push(w);
                dist0.push(depth + 1);
                next.push(id);
            }
            for (&v, prods) in layer.iter().zip(&products) {
                // every tail is processed once its head exists, so forward
                // moves alone record each labelled edge
                for (g, forward, w) in prods {
                    if *forward {
                        if let Some(&t) = index.get(w) {
                            edges.push((v, t, *g));
                        }
                    }
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(Self::assemble(
            ug.pregroup().name().to_string(),
            radius,
            s.names(),
            words,
            index,
            dist0,
            edges,
            opts.metric_limit,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        pregroup_name: String,
        radius: u32,
        gen_names: Vec<String>,
        words: Vec<Reduced>,
        index: HashMap<Reduced, VertexId>,
        dist0: Vec<u32>,
        mut edges: Vec<(VertexId, VertexId, usize)>,
        metric_limit: usize,
    ) -> Ball {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); words.len()];
        for &(u, v, _) in &edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ball { pregroup_name, radius, gen_names, words, index, dist0, adj, edges, metric_limit, metric: OnceLock::new() }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn pregroup_name(&self) -> &str {
        &self.pregroup_name
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn word(&self, v: VertexId) -> &Reduced {
        &self.words[v as usize]
    }

    /// `|g| = d(1, g)`; exact for every vertex in the ball.
    pub fn dist0(&self, v: VertexId) -> u32 {
        self.dist0[v as usize]
    }

    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        0..self.words.len() as VertexId
    }

    /// The vertex of an element given by its canonical form.
    pub fn vertex(&self, canonical: &Reduced) -> Option<VertexId> {
        self.index.get(canonical).copied()
    }

    /// The vertex of an element given by any product.
    pub fn locate(&self, ug: &UniversalGroup, w: &[Elem]) -> Option<VertexId> {
        self.vertex(&ug.normal_form(w))
    }

    pub fn locate_or_err(&self, ug: &UniversalGroup, w: &[Elem]) -> Result<VertexId, GeometryError> {
        self.locate(ug, w).ok_or_else(|| GeometryError::OutsideBall(ug.pregroup().format_word(w)))
    }

    /// `x⁻¹ y` as a canonical word.
    pub fn quotient(&self, ug: &UniversalGroup, x: VertexId, y: VertexId) -> Reduced {
        ug.canonical(&ug.multiply(&ug.invert(self.word(x)), self.word(y)))
    }

    /// All-pairs in-ball distances, computed on first use.
    pub fn metric(&self) -> Result<&Metric, BallError> {
        if let Some(m) = self.metric.get() {
            return Ok(m);
        }
        if self.len() > self.metric_limit {
            return Err(BallError::MetricTooLarge(self.len(), self.metric_limit));
        }
        Ok(self.metric.get_or_init(|| Metric::compute(self)))
    }

    /// Text cache: header, one `v` line per vertex, one `e` line per edge.
    pub fn to_text(&self, ug: &UniversalGroup) -> String {
        let p = ug.pregroup();
        let mut out = String::new();
        writeln!(out, "ball {} R={} gens={}", self.pregroup_name, self.radius, self.gen_names.join(",")).unwrap();
        for v in self.vertices() {
            writeln!(out, "v {} {} {}", v, p.format_word(self.word(v).factors()), self.dist0(v)).unwrap();
        }
        for &(u, v, g) in &self.edges {
            writeln!(out, "e {} {} {}", u, v, self.gen_names[g]).unwrap();
        }
        out
    }

    /// Reads a ball cache written by [`Ball::to_text`]. Words must be
    /// canonical and the pregroup name must match.
    pub fn from_text(ug: &UniversalGroup, text: &str, opts: BallOptions) -> Result<Ball, BallError> {
        let p = ug.pregroup();
        let bad = |line: usize, msg: String| BallError::File { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "empty file".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let (name, radius, gens) = match toks.as_slice() {
            ["ball", name, r, g] => {
                let r = r
                    .strip_prefix("R=")
                    .and_then(|r| r.parse::<u32>().ok())
                    .ok_or_else(|| bad(hl, format!("bad radius `{r}`")))?;
                let g = g.strip_prefix("gens=").ok_or_else(|| bad(hl, format!("bad generator list `{g}`")))?;
                (name.to_string(), r, g.split(',').filter(|s| !s.is_empty()).map(String::from).collect::<Vec<_>>())
            }
            _ => return Err(bad(hl, "expected `ball <name> R=<r> gens=<names>`".into())),
        };
        if name != p.name() {
            return Err(bad(hl, format!("ball is for pregroup `{name}`, not `{}`", p.name())));
        }
        let gen_index: HashMap<&str, usize> = gens.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut words = Vec::new();
        let mut index = HashMap::new();
        let mut dist0 = Vec::new();
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[0] {
                "v" if toks.len() >= 4 => {
                    let id: usize = toks[1].parse().map_err(|_| bad(ln, "bad vertex id".into()))?;
                    if id != words.len() {
                        return Err(bad(ln, format!("vertex ids must be consecutive, expected {}", words.len())));
                    }
                    let d: u32 = toks[toks.len() - 1].parse().map_err(|_| bad(ln, "bad distance".into()))?;
                    let w = p.parse_word(&toks[2..toks.len() - 1].join(" ")).map_err(|e| bad(ln, e.to_string()))?;
                    let r = Reduced::new(p, w).map_err(|e| bad(ln, e.to_string()))?;
                    if ug.canonical(&r) != r {
                        return Err(bad(ln, "word is not canonical".into()));
                    }
                    if index.insert(r.clone(), id as VertexId).is_some() {
                        return Err(bad(ln, "duplicate vertex".into()));
                    }
                    words.push(r);
                    dist0.push(d);
                }
                "e" if toks.len() == 4 => {
                    let parse = |s: &str| -> Result<VertexId, BallError> {
                        let v: usize = s.parse().map_err(|_| bad(ln, format!("bad vertex id `{s}`")))?;
                        if v >= words.len() {
                            return Err(bad(ln, format!("unknown vertex {v}")));
                        }
                        Ok(v as VertexId)
                    };
                    let g = *gen_index.get(toks[3]).ok_or_else(|| bad(ln, format!("unknown generator `{}`", toks[3])))?;
                    edges.push((parse(toks[1])?, parse(toks[2])?, g));
                }
                _ => return Err(bad(ln, format!("unexpected line `{l}`"))),
            }
        }
        if words.first().is_none_or(|w| !w.is_identity(p)) {
            return Err(bad(hl, "vertex 0 must be the identity".into()));
        }
        if words.len() > opts.vertex_limit {
            return Err(BallError::VertexLimit { limit: opts.vertex_limit, radius });
        }
        Ok(Self::assemble(name, radius, gens, words, index, dist0, edges, opts.metric_limit))
    }
}

/// All-pairs in-ball distances with the exactness predicate.
#[derive(Debug)]
pub struct Metric {
    n: usize,
    d: Vec<u16>,
    dist0: Vec<u32>,
    two_r: u32,
}

const UNREACHABLE: u16 = u16::MAX;

impl Metric {
    fn compute(ball: &Ball) -> Metric {
        let n = ball.len();
        let rows: Vec<Vec<u16>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut d = vec![UNREACHABLE; n];
                d[s] = 0;
                let mut q = VecDeque::from([s as VertexId]);
                while let Some(u) = q.pop_front() {
                    let du = d[u as usize];
                    for &v in ball.neighbours(u) {
                        if d[v as usize] == UNREACHABLE {
                            d[v as usize] = du + 1;
                            q.push_back(v);
                        }
                    }
                }
                d
            })
            .collect();
        Metric { n, d: rows.concat(), dist0: ball.dist0.clone(), two_r: 2 * ball.radius }
    }

    /// In-ball distance (the ball is connected through the identity).
    #[inline]
    pub fn d(&self, u: VertexId, v: VertexId) -> u32 {
        self.d[u as usize * self.n + v as usize] as u32
    }

    #[inline]
    pub fn exact(&self, u: VertexId, v: VertexId) -> bool {
        self.dist0[u as usize] + self.dist0[v as usize] + self.d(u, v) <= self.two_r
    }

    /// Distance with its exactness flag.
    pub fn dist(&self, u: VertexId, v: VertexId) -> (u32, bool) {
        (self.d(u, v), self.exact(u, v))
    }

    /// The distance if exact, an error otherwise.
    pub fn exact_d(&self, u: VertexId, v: VertexId) -> Result<u32, GeometryError> {
        if self.exact(u, v) {
            Ok(self.d(u, v))
        } else {
            Err(GeometryError::NotExact(u, v))
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{amalgam_cyclic, free, group, FiniteGroup};

    fn ball(p: &crate::Pregroup, gens: &[&str], r: u32) -> Ball {
        let ug = UniversalGroup::new(p);
        let s = GenSet::from_elements(&ug, gens).unwrap();
        Ball::build(&ug, &s, r, BallOptions::default()).unwrap()
    }

    #[test]
    fn free_ball_sizes() {
        let p = free(2);
        let b = ball(&p, &["x", "y"], 2);
        assert_eq!(b.len(), 17);
        assert_eq!(b.edges().len(), 16);
        let b = ball(&p, &["x", "y"], 4);
        assert_eq!(b.len(), 161);
    }

    #[test]
    fn s3_saturates() {
        let p = group(&FiniteGroup::s3(), "s3").unwrap();
        let b = ball(&p, &["r", "f"], 6);
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn dihedral_line() {
        let p = amalgam_cyclic(2, 2, 1).unwrap();
        let b = ball(&p, &["a", "b"], 3);
        assert_eq!(b.len(), 7);
        assert!(b.vertices().all(|v| b.neighbours(v).len() <= 2));
        let ug = UniversalGroup::new(&p);
        let m = b.metric().unwrap();
        let a = b.locate(&ug, &p.parse_word("a").unwrap()).unwrap();
        let ba = b.locate(&ug, &p.parse_word("b a").unwrap()).unwrap();
        assert_eq!(m.dist(a, ba), (3, true));
        assert_eq!(m.dist(a, a), (0, true));
    }

    #[test]
    fn cache_roundtrip() {
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let ug = UniversalGroup::new(&p);
        let s = GenSet::from_elements(&ug, &["a", "b"]).unwrap();
        let b = Ball::build(&ug, &s, 3, BallOptions::default()).unwrap();
        let text = b.to_text(&ug);
        assert!(text.starts_with("ball amalgam_z4_z2_z4 R=3 gens=a,b\nv 0 1 0\n"));
        let c = Ball::from_text(&ug, &text, BallOptions::default()).unwrap();
        assert_eq!(c.to_text(&ug), text);
        assert_eq!(c.adj, b.adj);
        let e = Ball::from_text(&ug, "ball other R=1 gens=a\nv 0 1 0\n", BallOptions::default()).unwrap_err();
        assert!(matches!(e, BallError::File { line: 1, .. }));
    }

    #[test]
    fn vertex_limit() {
        let p = free(2);
        let ug = UniversalGroup::new(&p);
        let s = GenSet::from_elements(&ug, &["x", "y"]).unwrap();
        let e = Ball::build(&ug, &s, 5, BallOptions { vertex_limit: 100, ..Default::default() }).unwrap_err();
        assert_eq!(e, BallError::VertexLimit { limit: 100, radius: 4 });
    }
}
