//! The order tree `P/∼`: classes of equal left sets, ordered by reverse
//! inclusion of left sets, with covering pairs as edges.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::pregroup::{Elem, Pregroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// Representatives of the classes reachable from the first class.
    #[error("order-tree edge graph is disconnected; component of the first class: {component:?}")]
    Disconnected { component: Vec<Elem> },
    /// Representatives of the classes along a cycle.
    #[error("order-tree edge graph has a cycle through {cycle:?}")]
    Cycle { cycle: Vec<Elem> },
}

#[derive(Clone, Debug)]
pub struct OrderTree {
    class_of: Vec<usize>,
    classes: Vec<Vec<Elem>>,
    leq: Vec<bool>,
    edges: Vec<(usize, usize)>,
    heights: Vec<Option<usize>>,
    left_sets: Vec<BTreeSet<Elem>>,
}

impl OrderTree {
    pub fn new(p: &Pregroup) -> Self {
        let masks: Vec<Vec<bool>> = p.elements().map(|x| p.left_mask(x)).collect();
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut class_of = vec![0; p.len()];
        for x in p.elements() {
            match classes.iter().position(|c| masks[c[0].index()] == masks[x.index()]) {
                Some(c) => {
                    classes[c].push(x);
                    class_of[x.index()] = c;
                }
                None => {
                    class_of[x.index()] = classes.len();
                    classes.push(vec![x]);
                }
            }
        }
        let k = classes.len();
        let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                // [i] ≤ [j] iff L(j) ⊆ L(i)
                leq[i * k + j] = subset(&masks[classes[j][0].index()], &masks[classes[i][0].index()]);
            }
        }
        let lt = |i: usize, j: usize| i != j && leq[i * k + j];
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                    edges.push((i, j));
                }
            }
        }

        // longest covering chain from the class of 1
        let root = class_of[p.identity().index()];
        let mut heights: Vec<Option<usize>> = vec![None; k];
        heights[root] = Some(0);
        let mut order: Vec<usize> = (0..k).filter(|&c| c == root || lt(root, c)).collect();
        // strict order size is a valid topological key
        order.sort_by_key(|&c| (0..k).filter(|&m| lt(m, c)).count());
        for &c in &order {
            if let Some(h) = heights[c] {
                for &(lo, hi) in &edges {
                    if lo == c {
                        heights[hi] = Some(heights[hi].map_or(h + 1, |old: usize| old.max(h + 1)));
                    }
                }
            }
        }

        let left_sets = masks
            .iter()
            .map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Elem::new(i)).collect())
            .collect();
        OrderTree { class_of, classes, leq, edges, heights, left_sets }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x.index()]
    }

    /// `x ⩽ y` iff `L(y) ⊆ L(x)`.
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        let k = self.classes.len();
        self.leq[self.class_of(x) * k + self.class_of(y)]
    }

    pub fn equivalent(&self, x: Elem, y: Elem) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        self.le(x, y) && !self.equivalent(x, y)
    }

    /// Covering pairs `(lower, upper)` as class indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Longest covering chain from `[1]`; `None` for classes not above `[1]`.
    pub fn height(&self, class: usize) -> Option<usize> {
        self.heights[class]
    }

    /// Always true for a finite carrier.
    pub fn finite_height(&self) -> bool {
        true
    }

    pub fn left_set(&self, x: Elem) -> &BTreeSet<Elem> {
        &self.left_sets[x.index()]
    }

    fn rep(&self, class: usize) -> Elem {
        self.classes[class][0]
    }

    /// Validates that the edge graph is a tree and precomputes all distances.
    pub fn metric(&self) -> Result<TreeMetric, TreeError> {
        let k = self.classes.len();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let bfs = |s: usize| {
            let mut d = vec![usize::MAX; k];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v] == usize::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            d
        };
        let first = bfs(0);
        if first.contains(&usize::MAX) {
            let component = (0..k).filter(|&c| first[c] != usize::MAX).map(|c| self.rep(c)).collect();
            return Err(TreeError::Disconnected { component });
        }
        if self.edges.len() != k - 1 {
            return Err(TreeError::Cycle { cycle: self.find_cycle(&adj).into_iter().map(|c| self.rep(c)).collect() });
        }
        let dist = (0..k).flat_map(bfs).collect();
        Ok(TreeMetric { class_of: self.class_of.clone(), k, dist })
    }

    fn find_cycle(&self, adj: &[Vec<usize>]) -> Vec<usize> {
        let k = adj.len();
        let mut parent = vec![usize::MAX; k];
        let mut seen = vec![false; k];
        let mut stack = vec![(0usize, usize::MAX)];
        while let Some((u, from)) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            parent[u] = from;
            for &v in &adj[u] {
                if v == from {
                    continue;
                }
                if seen[v] {
                    // walk both ends up to the common ancestor
                    let path_to_root = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let pu = path_to_root(u);
                    let pv = path_to_root(v);
                    let common = *pu.iter().find(|x| pv.contains(x)).unwrap();
                    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != common).collect();
                    cycle.push(common);
                    let mut tail: Vec<usize> = pv.iter().copied().take_while(|&x| x != common).collect();
                    tail.reverse();
                    cycle.extend(tail);
                    return cycle;
                }
                stack.push((v, u));
            }
        }
        Vec::new()
    }
}

/// All-pairs distances in a validated order tree.
#[derive(Clone, Debug)]
pub struct TreeMetric {
    class_of: Vec<usize>,
    k: usize,
    dist: Vec<usize>,
}

impl TreeMetric {
    /// Distance between `[x]` and `[y]` in the order tree.
    pub fn distance(&self, x: Elem, y: Elem) -> usize {
        self.dist[self.class_of[x.index()] * self.k + self.class_of[y.index()]]
    }
}

/// Distance between `[x]` and `[y]`; fails if the edge graph is not a tree.
pub fn tree_distance(tree: &OrderTree, x: Elem, y: Elem) -> Result<usize, TreeError> {
    Ok(tree.metric()?.distance(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{amalgam_cyclic, free, group, FiniteGroup};

    #[test]
    fn group_pregroup_single_class() {
        let p = group(&FiniteGroup::s3(), "s3").unwrap();
        let t = OrderTree::new(&p);
        assert_eq!(t.class_count(), 1);
        assert!(t.edges().is_empty());
        let m = t.metric().unwrap();
        assert_eq!(m.distance(p.elem("r").unwrap(), p.elem("f").unwrap()), 0);
    }

    #[test]
    fn free_one_is_a_cherry() {
        let p = free(1);
        let t = OrderTree::new(&p);
        let (one, x, xi) = (p.identity(), p.elem("x").unwrap(), p.elem("X").unwrap());
        assert_eq!(t.class_count(), 3);
        assert_eq!(t.edges(), &[(0, 1), (0, 2)]);
        assert_eq!((t.height(0), t.height(1), t.height(2)), (Some(0), Some(1), Some(1)));
        assert!(t.lt(one, x) && !t.le(x, xi) && !t.le(xi, x));
        assert_eq!(t.left_set(x), &BTreeSet::from([one, xi]));
        assert_eq!(tree_distance(&t, x, x).unwrap(), 0);
        assert_eq!(tree_distance(&t, x, xi).unwrap(), 2);
        assert_eq!(tree_distance(&t, one, x).unwrap(), 1);
        assert!(t.finite_height());
    }

    #[test]
    fn amalgam_star() {
        let p = amalgam_cyclic(2, 2, 1).unwrap();
        let t = OrderTree::new(&p);
        assert_eq!(t.class_count(), 3);
        assert_eq!(t.edges(), &[(0, 1), (0, 2)]);
        let p = amalgam_cyclic(4, 4, 2).unwrap();
        let t = OrderTree::new(&p);
        // [1] = {1, a2}
        assert_eq!(t.classes()[0], vec![p.identity(), p.elem("a2").unwrap()]);
        assert_eq!(t.class_count(), 3);
    }

    #[test]
    fn disconnected_edge_graph_is_reported() {
        // drop the identity rows of x so [1] is no longer the minimum
        let p = free(1);
        let (one, x) = (p.identity(), p.elem("x").unwrap());
        let broken = p.with_product(x, one, None);
        let t = OrderTree::new(&broken);
        assert!(matches!(t.metric(), Err(TreeError::Disconnected { .. }) | Err(TreeError::Cycle { .. })));
    }
}
