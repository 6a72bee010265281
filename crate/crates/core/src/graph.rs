//! Simple undirected graphs on at most 128 vertices with bit-row adjacency.
//!
//! Vertices are the integers `0..n`. Every row of the adjacency matrix is a
//! single `u128`, so neighbourhood intersections and degree counts are a
//! handful of word operations.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

mod graph6;

pub use graph6::Graph6Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} outside 1..={MAX_ORDER}")]
    Order(usize),
    #[error("vertex {v} out of range for order {n}")]
    Vertex { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("{op} requires at least {min} vertices, graph has {n}")]
    TooSmall { op: &'static str, min: usize, n: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.order()).field("edges", &self.edges()).finish()
    }
}

/// Iterates the set bits of a row, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(u128);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

#[inline]
fn bit(v: usize) -> u128 {
    1u128 << v
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::Order(n));
        }
        Ok(Graph { rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.rows[u] = g.full_mask() & !bit(u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall { op: "cycle", min: 3, n });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u128>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::Order(n));
        }
        let full = if n == 128 { u128::MAX } else { bit(n) - 1 };
        for (u, &r) in rows.iter().enumerate() {
            if r & bit(u) != 0 {
                return Err(GraphError::Loop(u));
            }
            if r & !full != 0 {
                return Err(GraphError::Vertex { v: 127 - r.leading_zeros() as usize, n });
            }
            for v in Bits(r) {
                if rows[v] & bit(u) == 0 {
                    return Err(GraphError::Vertex { v, n });
                }
            }
        }
        Ok(Graph { rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn full_mask(&self) -> u128 {
        let n = self.order();
        if n == 128 {
            u128::MAX
        } else {
            bit(n) - 1
        }
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            Err(GraphError::Vertex { v, n: self.order() })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
        Ok(())
    }

    /// Copy of the graph with `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Copy of the graph with `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.rows[u] & bit(v) != 0
    }

    /// Neighbourhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> u128 {
        self.rows[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.rows[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn is_cubic(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() == 3)
    }

    /// Number of vertices of degree 2 (the `m` of the edge bound).
    pub fn count_degree2(&self) -> usize {
        self.rows.iter().filter(|r| r.count_ones() == 2).count()
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in Bits(self.rows[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Pairs of distinct nonadjacent vertices `(u, v)` with `u < v`, lexicographic.
    pub fn nonedges(&self) -> Vec<(usize, usize)> {
        let full = self.full_mask();
        let mut out = Vec::new();
        for u in 0..self.order() {
            let above = if u + 1 >= 128 { 0 } else { u128::MAX << (u + 1) };
            for v in Bits(!self.rows[u] & full & above) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced by `vertices`, relabeled `0..k` in ascending order of
    /// the old labels. Also returns the old label of each new vertex.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut keep = 0u128;
        for &v in vertices {
            self.check(v)?;
            keep |= bit(v);
        }
        if keep == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let old: Vec<usize> = Bits(keep).collect();
        let mut new_of = [usize::MAX; MAX_ORDER];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let rows = old.iter().map(|&v| Bits(self.rows[v] & keep).fold(0u128, |acc, w| acc | bit(new_of[w]))).collect();
        Ok((Graph { rows }, old))
    }

    /// `G - v`; returns the old label of each remaining vertex.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check(v)?;
        let rest: Vec<usize> = (0..self.order()).filter(|&w| w != v).collect();
        self.induced_subgraph(&rest)
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0, 0) == self.full_mask()
    }

    /// Vertices reachable from `start` while avoiding the vertices in `blocked`.
    pub fn component_of(&self, start: usize, blocked: u128) -> u128 {
        let allowed = self.full_mask() & !blocked;
        if allowed & bit(start) == 0 {
            return 0;
        }
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// Cut vertices, ascending.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.order();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, remaining neighbours)
            let mut stack = vec![(root, usize::MAX, self.rows[root])];
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 == 0 {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                    continue;
                }
                let w = top.2.trailing_zeros() as usize;
                top.2 &= top.2 - 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, self.rows[w]));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Connected with no cut vertex. Needs `n >= 3`.
    pub fn is_two_connected(&self) -> Result<bool, GraphError> {
        if self.order() < 3 {
            return Err(GraphError::TooSmall { op: "is_two_connected", min: 3, n: self.order() });
        }
        Ok(self.is_connected() && self.articulation_points().is_empty())
    }

    /// No separating set of at most two vertices. Brute force over vertex pairs.
    pub fn is_three_connected(&self) -> bool {
        let n = self.order();
        if n < 4 || !self.is_connected() {
            return false;
        }
        for u in 0..n {
            for v in u + 1..n {
                let blocked = bit(u) | bit(v);
                let start = (0..n).find(|w| blocked & bit(*w) == 0).unwrap();
                if self.component_of(start, blocked) != self.full_mask() & !blocked {
                    return false;
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[v] + 1 >= b {
                        break;
                    }
                }
                for w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// True iff `map` (old vertex -> new vertex) is an isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        let n = self.order();
        if other.order() != n || map.len() != n || self.size() != other.size() {
            return false;
        }
        let mut image = 0u128;
        for &m in map {
            if m >= n {
                return false;
            }
            image |= bit(m);
        }
        if image != self.full_mask() {
            return false;
        }
        self.edges().into_iter().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode(text)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn complete_graph_has_no_nonedges() {
        let k4 = Graph::complete(4).unwrap();
        assert!(k4.nonedges().is_empty());
        assert_eq!(k4.size(), 6);
    }

    #[test]
    fn star_degrees() {
        assert_eq!(star(3).degrees(), vec![3, 1, 1, 1]);
        assert_eq!(star(3).count_degree2(), 0);
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(Graph::complete(3).unwrap().girth(), Some(3));
        assert_eq!(Graph::cycle(7).unwrap().girth(), Some(7));
        assert_eq!(Graph::path(6).unwrap().girth(), None);
        assert_eq!(star(4).girth(), None);
        assert_eq!(Graph::complete(5).unwrap().girth(), Some(3));
    }

    #[test]
    fn two_connectivity() {
        assert!(Graph::cycle(5).unwrap().is_two_connected().unwrap());
        assert!(!Graph::path(4).unwrap().is_two_connected().unwrap());
        assert_eq!(Graph::path(4).unwrap().articulation_points(), vec![1, 2]);
        assert!(matches!(Graph::path(2).unwrap().is_two_connected(), Err(GraphError::TooSmall { .. })));
        // two triangles sharing vertex 2
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.articulation_points(), vec![2]);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let k5 = Graph::complete(5).unwrap();
        let (k3, old) = k5.induced_subgraph(&[4, 1, 3]).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(old, vec![1, 3, 4]);
        let (same, _) = k5.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(same, k5);
        assert_eq!(k5.induced_subgraph(&[]).unwrap_err(), GraphError::EmptyVertexSet);
    }

    #[test]
    fn rejects_bad_vertices() {
        assert_eq!(Graph::empty(0).unwrap_err(), GraphError::Order(0));
        assert_eq!(Graph::empty(129).unwrap_err(), GraphError::Order(129));
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1).unwrap_err(), GraphError::Loop(1));
        assert!(matches!(g.add_edge(0, 3), Err(GraphError::Vertex { v: 3, n: 3 })));
    }

    #[test]
    fn order_128_is_supported() {
        let g = Graph::cycle(128).unwrap();
        assert!(g.is_two_connected().unwrap());
        assert_eq!(g.nonedges().len(), 128 * 127 / 2 - 128);
        assert_eq!(g.girth(), Some(128));
    }

    #[test]
    fn three_connectivity() {
        assert!(Graph::complete(4).unwrap().is_three_connected());
        assert!(!Graph::cycle(6).unwrap().is_three_connected());
    }
}
