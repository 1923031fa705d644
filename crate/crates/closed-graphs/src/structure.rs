//! The three structural predicates behind closedness — chordal, claw-free,
//! narrow — each with a checkable witness on failure, plus the longest
//! shortest path machinery they share.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Chordless cycle of length at least four, in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleWitness {
    pub cycle: Vec<usize>,
}

impl HoleWitness {
    /// Re-check the witness against the graph: all vertices distinct,
    /// cyclically consecutive vertices adjacent, no other pair adjacent.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 4 {
            return false;
        }
        let mut sorted = self.cycle.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if g.is_adjacent(self.cycle[i], self.cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// An induced star `K_{1,3}`: a center adjacent to three pairwise
/// non-adjacent leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl ClawWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let [a, b, c] = self.leaves;
        a != b
            && a != c
            && b != c
            && self.leaves.iter().all(|&l| g.is_adjacent(self.center, l))
            && !g.is_adjacent(a, b)
            && !g.is_adjacent(a, c)
            && !g.is_adjacent(b, c)
    }
}

/// A vertex at distance two or more from a longest shortest path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NarrowWitness {
    pub vertex: usize,
    pub path: Vec<usize>,
    pub endpoints: (usize, usize),
}

impl NarrowWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let (u, w) = self.endpoints;
        let Ok(diam) = diameter(g) else {
            return false;
        };
        let Ok(du) = g.bfs_distances(u) else {
            return false;
        };
        if du.get(w) != Some(diam) {
            return false;
        }
        if self.path.len() != diam as usize + 1 {
            return false;
        }
        if self.path.first() != Some(&u) || self.path.last() != Some(&w) {
            return false;
        }
        if !self.path.windows(2).all(|e| g.is_adjacent(e[0], e[1])) {
            return false;
        }
        let v = self.vertex;
        !self.path.contains(&v) && self.path.iter().all(|&x| !g.is_adjacent(v, x))
    }
}

/// Maximum cardinality search: repeatedly visit the unvisited vertex with
/// the most visited neighbors (ties to the smallest index). Returns the
/// candidate perfect elimination order, first-eliminated vertex first; the
/// graph is chordal iff this order eliminates perfectly.
pub fn maximum_cardinality_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit_order = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited[u] = true;
        visit_order.push(u);
        for v in g.neighbors(u) {
            if !visited[v] {
                weight[v] += 1;
            }
        }
    }
    visit_order.reverse();
    visit_order
}

fn eliminates_perfectly(g: &Graph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut position = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    for (p, &v) in order.iter().enumerate() {
        let later: Vec<usize> = g.neighbors(v).filter(|&w| position[w] > p).collect();
        if !g.is_complete_on(&later) {
            return false;
        }
    }
    true
}

/// Decide chordality via maximum cardinality search plus elimination-order
/// verification. Works per component.
pub fn is_chordal(g: &Graph) -> bool {
    if g.vertex_count() <= 3 {
        return true;
    }
    eliminates_perfectly(g, &maximum_cardinality_order(g))
}

/// Exhaustively search for a chordless cycle of length >= 4, independent of
/// [`is_chordal`]. For every vertex `v` and non-adjacent pair `a, b` of its
/// neighbors, any shortest `a`-`b` path through vertices outside the closed
/// neighborhood of `v` closes up into a hole, and every hole arises this way.
pub fn find_hole(g: &Graph) -> Option<HoleWitness> {
    for v in g.vertices() {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (pos, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[pos + 1..] {
                if g.is_adjacent(a, b) {
                    continue;
                }
                let allowed = |x: usize| x == a || x == b || (x != v && !g.is_adjacent(v, x));
                if let Some(path) = g.restricted_shortest_path(a, b, &allowed) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    let witness = HoleWitness { cycle };
                    debug_assert!(witness.verify(g));
                    return Some(witness);
                }
            }
        }
    }
    None
}

/// Search for a chordless cycle of length exactly 4, 5, or 6; such a cycle
/// is an induced subgraph that is connected and 2-regular.
pub fn find_short_hole(g: &Graph) -> Option<HoleWitness> {
    let n = g.vertex_count();
    for k in 4..=6usize {
        if n < k {
            break;
        }
        for subset in (0..n).combinations(k) {
            if let Some(cycle) = induced_cycle_order(g, &subset) {
                let witness = HoleWitness { cycle };
                debug_assert!(witness.verify(g));
                return Some(witness);
            }
        }
    }
    None
}

/// True iff every cycle of length 4, 5, or 6 has a chord. Strictly weaker
/// than chordality.
pub fn is_chordal_456(g: &Graph) -> bool {
    find_short_hole(g).is_none()
}

/// If the subgraph induced on `subset` is a single cycle, list it in cyclic
/// order starting from its smallest vertex towards its smaller neighbor.
fn induced_cycle_order(g: &Graph, subset: &[usize]) -> Option<Vec<usize>> {
    let degree_in = |v: usize| subset.iter().filter(|&&w| g.is_adjacent(v, w)).count();
    if subset.iter().any(|&v| degree_in(v) != 2) {
        return None;
    }
    let start = subset[0];
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *subset[1..]
        .iter()
        .find(|&&w| g.is_adjacent(start, w))
        .expect("2-regular vertex has a neighbor");
    while cur != start {
        cycle.push(cur);
        let next = *subset
            .iter()
            .find(|&&w| w != prev && g.is_adjacent(cur, w))
            .expect("2-regular vertex has a second neighbor");
        prev = cur;
        cur = next;
    }
    // 2-regular but disconnected subsets close up early
    (cycle.len() == subset.len()).then_some(cycle)
}

/// Search the neighborhood of every vertex for three pairwise non-adjacent
/// members.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for center in g.vertices() {
        let nbrs: Vec<usize> = g.neighbors(center).collect();
        for triple in nbrs.iter().copied().combinations(3) {
            let (a, b, c) = (triple[0], triple[1], triple[2]);
            if !g.is_adjacent(a, b) && !g.is_adjacent(a, c) && !g.is_adjacent(b, c) {
                let witness = ClawWitness {
                    center,
                    leaves: [a, b, c],
                };
                debug_assert!(witness.verify(g));
                return Some(witness);
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

/// Largest distance between any two vertices of a connected, nonempty graph.
pub fn diameter(g: &Graph) -> Result<u32> {
    g.ensure_connected()?;
    let mut best = 0;
    for u in g.vertices() {
        let d = g.bfs_distances(u)?;
        best = best.max(d.max_finite().unwrap_or(0));
    }
    Ok(best)
}

/// All unordered pairs `(u, w)`, `u <= w`, realizing the diameter; the pair
/// members are exactly the endpoints of longest shortest paths. On a single
/// vertex the unique pair is the vertex with itself.
pub fn diametral_pairs(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let diam = diameter(g)?;
    let mut pairs = Vec::new();
    for u in g.vertices() {
        let d = g.bfs_distances(u)?;
        for w in u..g.vertex_count() {
            if d.get(w) == Some(diam) && (u != w || diam == 0) {
                pairs.push((u, w));
            }
        }
    }
    Ok(pairs)
}

/// Decide narrowness: every vertex must be within distance one of every
/// longest shortest path. A violation is found as a diametral pair `(u, w)`
/// plus a vertex `v` (with `u`, `w` outside the closed neighborhood of `v`)
/// such that `w` is still reachable from `u` through the shortest-path DAG
/// restricted to vertices avoiding the closed neighborhood of `v`.
pub fn narrowness_violation(g: &Graph) -> Result<Option<NarrowWitness>> {
    let diam = diameter(g)?;
    for (u, w) in diametral_pairs(g)? {
        let du = g.bfs_distances(u)?;
        let dw = g.bfs_distances(w)?;
        let on_path =
            |x: usize| matches!((du.get(x), dw.get(x)), (Some(a), Some(b)) if a + b == diam);
        for v in g.vertices() {
            if v == u || v == w || g.is_adjacent(v, u) || g.is_adjacent(v, w) {
                continue;
            }
            let allowed = |x: usize| on_path(x) && x != v && !g.is_adjacent(v, x);
            if let Some(path) = monotone_dag_path(g, &du, u, w, &allowed) {
                let witness = NarrowWitness {
                    vertex: v,
                    path,
                    endpoints: (u, w),
                };
                debug_assert!(witness.verify(g));
                return Ok(Some(witness));
            }
        }
    }
    Ok(None)
}

pub fn is_narrow(g: &Graph) -> Result<bool> {
    Ok(narrowness_violation(g)?.is_none())
}

/// BFS from `from` to `to` moving only along edges that increase the
/// distance from the BFS source by exactly one, i.e. along shortest paths.
fn monotone_dag_path(
    g: &Graph,
    du: &crate::graph::DistanceMap,
    from: usize,
    to: usize,
    allowed: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    if !allowed(from) || !allowed(to) {
        return None;
    }
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let dx = du.get(x).expect("reachable in a connected graph");
        for y in g.neighbors(x) {
            if !seen[y] && du.get(y) == Some(dx + 1) && allowed(y) {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Every longest shortest path of the graph, each reported once with its
/// smaller-indexed endpoint first, in lexicographic order; output truncated
/// at `cap` paths. Exponential in the worst case — this is the explicit
/// oracle that cross-checks [`narrowness_violation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestShortestPaths {
    pub paths: Vec<Vec<usize>>,
    pub truncated: bool,
}

pub fn longest_shortest_paths(g: &Graph, cap: usize) -> Result<LongestShortestPaths> {
    if cap == 0 {
        return Err(Error::Guard {
            what: "cap",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let diam = diameter(g)?;
    let mut result = LongestShortestPaths {
        paths: Vec::new(),
        truncated: false,
    };
    for (u, w) in diametral_pairs(g)? {
        let du = g.bfs_distances(u)?;
        let dw = g.bfs_distances(w)?;
        let on_path =
            |x: usize| matches!((du.get(x), dw.get(x)), (Some(a), Some(b)) if a + b == diam);
        let mut stack = vec![u];
        extend_paths(g, &du, w, &on_path, &mut stack, cap, &mut result);
        if result.truncated {
            break;
        }
    }
    Ok(result)
}

fn extend_paths(
    g: &Graph,
    du: &crate::graph::DistanceMap,
    target: usize,
    on_path: &dyn Fn(usize) -> bool,
    stack: &mut Vec<usize>,
    cap: usize,
    out: &mut LongestShortestPaths,
) {
    if out.truncated {
        return;
    }
    let x = *stack.last().unwrap();
    if x == target {
        if out.paths.len() == cap {
            out.truncated = true;
            return;
        }
        out.paths.push(stack.clone());
        return;
    }
    let dx = du.get(x).expect("connected");
    for y in g.neighbors(x) {
        if du.get(y) == Some(dx + 1) && on_path(y) {
            stack.push(y);
            extend_paths(g, du, target, on_path, stack, cap, out);
            stack.pop();
            if out.truncated {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDE_FIXTURE: &str = "A B\nA C\nB C\nB E\nC E\nC F\nE F\nB D\nD E";

    fn wide() -> Graph {
        Graph::parse_edge_list(WIDE_FIXTURE).unwrap()
    }

    #[test]
    fn four_cycle_yields_a_hole() {
        let g = Graph::cycle(4);
        assert!(!is_chordal(&g));
        let hole = find_hole(&g).unwrap();
        assert_eq!(hole.cycle.len(), 4);
        assert!(hole.verify(&g));
    }

    #[test]
    fn star_and_fixture_are_chordal() {
        assert!(is_chordal(&Graph::star(3)));
        let g = wide();
        assert!(is_chordal(&g));
        assert!(find_hole(&g).is_none());
    }

    #[test]
    fn long_cycles_are_chordless() {
        for n in 4..=8 {
            let g = Graph::cycle(n);
            let hole = find_hole(&g).unwrap();
            assert_eq!(hole.cycle.len(), n);
            assert!(hole.verify(&g));
        }
    }

    #[test]
    fn short_hole_detection() {
        // the 7-cycle contains no cycle of length 4, 5, or 6 at all
        assert!(is_chordal_456(&Graph::cycle(7)));
        assert!(!is_chordal(&Graph::cycle(7)));

        let hole = find_short_hole(&Graph::cycle(4)).unwrap();
        assert_eq!(hole.cycle.len(), 4);

        for g in [Graph::star(3), wide(), Graph::complete(5), Graph::path(6)] {
            assert!(is_chordal(&g));
            assert!(is_chordal_456(&g));
        }
    }

    #[test]
    fn claw_detection() {
        let star = Graph::star(3);
        let claw = find_claw(&star).unwrap();
        assert_eq!(claw.center, 0);
        assert_eq!(claw.leaves, [1, 2, 3]);
        assert!(claw.verify(&star));

        assert!(is_claw_free(&Graph::cycle(4)));
        assert!(is_claw_free(&wide()));
        assert!(!is_claw_free(&Graph::star(5)));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&wide()).unwrap(), 2);
        assert_eq!(diameter(&Graph::complete(4)).unwrap(), 1);
        assert_eq!(diameter(&Graph::path(4)).unwrap(), 3);
        assert_eq!(diameter(&Graph::complete(1)).unwrap(), 0);
        assert_eq!(
            diameter(&Graph::parse_edge_list("A B\nC D").unwrap()),
            Err(Error::Disconnected)
        );
        assert_eq!(
            diameter(&Graph::parse_edge_list("").unwrap()),
            Err(Error::EmptyGraph)
        );
    }

    #[test]
    fn diametral_pair_examples() {
        let g = wide();
        let pairs = diametral_pairs(&g).unwrap();
        let by_name = |a: &str, b: &str| (g.vertex(a).unwrap(), g.vertex(b).unwrap());
        assert!(pairs.contains(&by_name("A", "F")));
        assert!(pairs.contains(&by_name("A", "D")));

        assert_eq!(diametral_pairs(&Graph::complete(3)).unwrap().len(), 3);
        assert_eq!(diametral_pairs(&Graph::path(4)).unwrap(), vec![(0, 3)]);
        assert_eq!(diametral_pairs(&Graph::complete(1)).unwrap(), vec![(0, 0)]);
    }

    #[test]
    fn the_wide_fixture_is_not_narrow() {
        let g = wide();
        let witness = narrowness_violation(&g).unwrap().unwrap();
        assert!(witness.verify(&g));
        let name = |v: usize| g.name(v);
        assert_eq!(name(witness.vertex), "D");
        let path: Vec<&str> = witness.path.iter().map(|&v| name(v)).collect();
        assert_eq!(path, ["A", "C", "F"]);
        assert_eq!(
            (name(witness.endpoints.0), name(witness.endpoints.1)),
            ("A", "F")
        );
    }

    #[test]
    fn narrow_examples() {
        assert!(is_narrow(&Graph::star(3)).unwrap());
        assert!(is_narrow(&Graph::cycle(4)).unwrap());
        assert!(is_narrow(&Graph::complete(1)).unwrap());
        assert!(is_narrow(&Graph::path(5)).unwrap());
        assert!(!is_narrow(&Graph::cycle(7)).unwrap());
        assert_eq!(
            is_narrow(&Graph::parse_edge_list("A B\nC D").unwrap()),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn path_enumeration_examples() {
        let p4 = Graph::path(4);
        let out = longest_shortest_paths(&p4, 100).unwrap();
        assert_eq!(out.paths, vec![vec![0, 1, 2, 3]]);
        assert!(!out.truncated);

        let c4 = Graph::cycle(4);
        let out = longest_shortest_paths(&c4, 100).unwrap();
        assert_eq!(out.paths.len(), 4);

        let g = wide();
        let out = longest_shortest_paths(&g, 100).unwrap();
        let acf: Vec<usize> = ["A", "C", "F"].iter().map(|s| g.vertex(s).unwrap()).collect();
        assert!(out.paths.contains(&acf));

        let truncated = longest_shortest_paths(&c4, 2).unwrap();
        assert_eq!(truncated.paths.len(), 2);
        assert!(truncated.truncated);
    }
}
