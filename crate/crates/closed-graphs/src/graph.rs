//! Immutable simple undirected graphs with named vertices.
//!
//! Vertex names are opaque strings; a dense index `0..n` in first-appearance
//! order backs every algorithm. The index order is fixed at construction and
//! doubles as the deterministic tie-break ("smallest vertex") everywhere else
//! in the crate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index_of: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Graph on `n` vertices named `"0".."n-1"` with the given edges.
    ///
    /// Panics on self-loops or out-of-range endpoints; this is the
    /// constructor for generated graphs, not for untrusted input.
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![BTreeSet::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            assert_ne!(u, v, "self-loop");
            if adj[u].insert(v) {
                adj[v].insert(u);
                edge_count += 1;
            }
        }
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index_of = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let g = Graph {
            names,
            index_of,
            adj,
            edge_count,
        };
        debug_assert!(g.check_invariants());
        g
    }

    /// Path on `n` vertices: `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        Graph::from_indexed_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_indexed_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        Graph::from_indexed_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Star with one center and `leaves` leaves (`K_{1,leaves}`).
    pub fn star(leaves: usize) -> Graph {
        Graph::from_indexed_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index_of.get(name).copied()
    }

    /// Neighbors of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, ordered lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].range(u + 1..).map(move |&v| (u, v)))
    }

    /// True iff every pair of distinct vertices of `set` is adjacent.
    /// Sets of size at most one are complete vacuously.
    pub fn is_complete_on(&self, set: &[usize]) -> bool {
        for (pos, &u) in set.iter().enumerate() {
            for &v in &set[pos + 1..] {
                if u != v && !self.is_adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Breadth-first distances from `source`; unreachable vertices map to `None`.
    pub fn bfs_distances(&self, source: usize) -> Result<DistanceMap> {
        if source >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(source));
        }
        let (dist, _) = self.bfs_with_parents(source);
        Ok(DistanceMap { source, dist })
    }

    /// BFS distances plus a deterministic parent array (neighbors are
    /// explored in ascending index order, so the implied shortest-path tree
    /// is the lexicographically least one).
    pub(crate) fn bfs_with_parents(&self, source: usize) -> (Vec<Option<u32>>, Vec<Option<usize>>) {
        let n = self.vertex_count();
        let mut dist = vec![None; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        (dist, parent)
    }

    /// Shortest path from `from` to `to` visiting only vertices accepted by
    /// `allowed` (both endpoints must be allowed). Deterministic: the
    /// lexicographically least BFS tree path.
    pub(crate) fn restricted_shortest_path(
        &self,
        from: usize,
        to: usize,
        allowed: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if !allowed(from) || !allowed(to) {
            return None;
        }
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for v in self.neighbors(u) {
                if !seen[v] && allowed(v) {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Maximal connected vertex sets, each listed in index order; the
    /// components themselves are ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::new();
            seen[start] = true;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() >= 1 && self.connected_components().len() == 1
    }

    pub(crate) fn ensure_connected(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Subgraph induced on `verts` (which must be strictly increasing).
    /// Local vertex `i` is global vertex `verts[i]`; names carry over.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Graph {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut builder = Graph::builder();
        for &v in verts {
            builder.vertex(self.name(v));
        }
        let mut edges = Vec::new();
        for &v in verts {
            for w in self.neighbors(v) {
                if v < w {
                    if let (Some(&a), Some(&b)) = (local.get(&v), local.get(&w)) {
                        edges.push((a, b));
                    }
                }
            }
        }
        builder.build_with_indexed_edges(edges)
    }

    /// Same abstract graph with vertex order permuted: new vertex `k` is the
    /// old vertex `order[k]`. Used to test that verdicts do not depend on
    /// vertex order.
    pub fn with_vertex_order(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.vertex_count());
        let mut pos = vec![usize::MAX; order.len()];
        for (k, &old) in order.iter().enumerate() {
            assert!(pos[old] == usize::MAX, "order is not a permutation");
            pos[old] = k;
        }
        let mut builder = Graph::builder();
        for &old in order {
            builder.vertex(self.name(old));
        }
        let edges: Vec<(usize, usize)> = self.edges().map(|(u, v)| (pos[u], pos[v])).collect();
        builder.build_with_indexed_edges(edges)
    }

    /// Parse the whitespace-separated edge-list format: one `u v` edge per
    /// line, single-token lines declare isolated vertices, blank lines and
    /// lines starting with `#` are ignored, duplicate edges collapse.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut builder = Graph::builder();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    builder.vertex(v);
                }
                [u, v] => {
                    if u == v {
                        return Err(Error::Parse {
                            line,
                            msg: format!("self-loop at vertex {u:?}"),
                        });
                    }
                    builder.edge(u, v).map_err(|e| Error::Parse {
                        line,
                        msg: e.to_string(),
                    })?;
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected 1 or 2 tokens, found {}", tokens.len()),
                    });
                }
            }
        }
        let g = builder.build();
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    /// Simplicity and symmetry of the adjacency structure, plus the edge
    /// count identity. Checked after every ingestion path.
    pub fn check_invariants(&self) -> bool {
        let n = self.vertex_count();
        if self.index_of.len() != n || self.adj.len() != n {
            return false;
        }
        let mut half_degrees = 0usize;
        for u in 0..n {
            half_degrees += self.adj[u].len();
            if self.adj[u].contains(&u) {
                return false;
            }
            for &v in &self.adj[u] {
                if v >= n || !self.adj[v].contains(&u) {
                    return false;
                }
            }
        }
        half_degrees == 2 * self.edge_count
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices, {} edges",
            self.vertex_count(),
            self.edge_count()
        )
    }
}

#[derive(Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    index_of: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl GraphBuilder {
    /// Index of `name`, inserting it at the end of the order if new.
    pub fn vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index_of.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index_of.insert(name.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    /// Insert an undirected edge, declaring endpoints as needed.
    pub fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let u = self.vertex(a);
        let v = self.vertex(b);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn build(self) -> Graph {
        let edge_count = self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
        Graph {
            names: self.names,
            index_of: self.index_of,
            adj: self.adj,
            edge_count,
        }
    }

    fn build_with_indexed_edges(mut self, edges: Vec<(usize, usize)>) -> Graph {
        for (u, v) in edges {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
        self.build()
    }
}

/// BFS distances from a fixed source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    source: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceMap {
    pub fn source(&self) -> usize {
        self.source
    }

    /// Distance to `v`, or `None` if `v` is unreachable from the source.
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    /// Largest finite distance, `None` for a graph with no vertices.
    pub fn max_finite(&self) -> Option<u32> {
        self.dist.iter().flatten().copied().max()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Option<u32>)> + '_ {
        self.dist.iter().copied().enumerate().map(|(v, d)| (v, d))
    }
}
