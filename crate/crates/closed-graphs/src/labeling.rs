//! Vertex labelings and the greedy labeling procedure.
//!
//! [`greedy_labeling`] labels a connected graph `1..=n` by starting from a
//! minimum-degree endpoint of a longest shortest path and then sweeping the
//! neighborhood of each label in order, always picking an unlabeled vertex
//! with the fewest unlabeled neighbors. For chordal, claw-free, narrow
//! graphs the result is a closed labeling; on other connected graphs it
//! still produces a labeling, just not necessarily a closed one.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::diametral_pairs;

/// A bijection between the vertices of a graph and the labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    to_label: Vec<usize>,
    of_label: Vec<usize>,
}

impl Labeling {
    /// Build from `(vertex, label)` pairs covering each side exactly once.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Labeling>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut to_label = vec![0usize; n];
        let mut of_label = vec![usize::MAX; n];
        let mut count = 0usize;
        for (v, label) in pairs {
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if !(1..=n).contains(&label) {
                return Err(Error::NotBijective {
                    n,
                    msg: format!("label {label} out of range"),
                });
            }
            if to_label[v] != 0 {
                return Err(Error::NotBijective {
                    n,
                    msg: format!("vertex {v} labeled twice"),
                });
            }
            if of_label[label - 1] != usize::MAX {
                return Err(Error::NotBijective {
                    n,
                    msg: format!("label {label} used twice"),
                });
            }
            to_label[v] = label;
            of_label[label - 1] = v;
            count += 1;
        }
        if count != n {
            return Err(Error::NotBijective {
                n,
                msg: format!("{count} of {n} vertices labeled"),
            });
        }
        Ok(Labeling { to_label, of_label })
    }

    /// The vertex at position `k` receives label `k + 1`.
    pub fn from_vertex_order(order: &[usize]) -> Result<Labeling> {
        Labeling::from_pairs(order.len(), order.iter().enumerate().map(|(k, &v)| (v, k + 1)))
    }

    /// Vertex `v` gets label `v + 1`.
    pub fn identity(n: usize) -> Labeling {
        Labeling {
            to_label: (1..=n).collect(),
            of_label: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.to_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_label.is_empty()
    }

    /// Label of vertex `v`, in `1..=n`.
    pub fn label_of(&self, v: usize) -> usize {
        self.to_label[v]
    }

    /// Vertex carrying `label`; panics when the label is out of range.
    pub fn vertex_with_label(&self, label: usize) -> usize {
        self.of_label[label - 1]
    }

    /// `(vertex, label)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.to_label.iter().copied().enumerate()
    }

    /// Compose per-component labelings into one labeling of the whole graph,
    /// assigning each block a consecutive run of labels in block order.
    /// `blocks` pairs each component's global vertices (ascending) with a
    /// labeling of the component's local indices.
    pub fn compose_blocks(n: usize, blocks: &[(Vec<usize>, Labeling)]) -> Result<Labeling> {
        let mut pairs = Vec::with_capacity(n);
        let mut offset = 0usize;
        for (vertices, local) in blocks {
            for (local_v, &global_v) in vertices.iter().enumerate() {
                pairs.push((global_v, offset + local.label_of(local_v)));
            }
            offset += vertices.len();
        }
        Labeling::from_pairs(n, pairs)
    }
}

/// Companion output of [`greedy_labeling`]: for each label `i`, the earlier
/// label whose neighborhood sweep assigned `i` (`0` for the first label).
/// For every run of the procedure this equals the minimum label adjacent to
/// `i`, which [`parent_minimality_violation`] re-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentLabels {
    parent: Vec<usize>,
}

impl ParentLabels {
    /// Validate the shape invariant: `parent(1) = 0` and `1 <= parent(i) < i`
    /// for every later label.
    pub fn from_values(parent: Vec<usize>) -> Result<ParentLabels> {
        for (idx, &p) in parent.iter().enumerate() {
            let label = idx + 1;
            let ok = if label == 1 { p == 0 } else { (1..label).contains(&p) };
            if !ok {
                return Err(Error::Internal(format!(
                    "parent({label}) = {p} violates the parent-label shape"
                )));
            }
        }
        Ok(ParentLabels { parent })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Parent of `label`; `0` means none.
    pub fn parent_of(&self, label: usize) -> usize {
        self.parent[label - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.parent
    }
}

/// How to resolve the two free choices of the greedy labeling (the starting
/// vertex and the minimum inside each sweep).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Always the candidate earliest in the graph's vertex order.
    MinIndex,
    /// Uniform choice among tied candidates from a seeded generator;
    /// reproducible from the seed.
    Seeded(u64),
}

struct TieBreaker {
    rng: Option<ChaCha8Rng>,
}

impl TieBreaker {
    fn new(tb: TieBreak) -> TieBreaker {
        TieBreaker {
            rng: match tb {
                TieBreak::MinIndex => None,
                TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    /// Pick one index out of `0..k` candidates (callers pass candidates in
    /// ascending vertex order).
    fn pick(&mut self, k: usize) -> usize {
        debug_assert!(k > 0);
        match (&mut self.rng, k) {
            (_, 1) => 0,
            (None, _) => 0,
            (Some(rng), _) => rng.gen_range(0..k),
        }
    }
}

/// Label a connected graph and report each label's parent.
///
/// The first label goes to an endpoint of a longest shortest path whose
/// degree is minimal among all such endpoints. Then for `j = 1..=n`, the
/// unlabeled neighbors of the vertex labeled `j` form a worklist; while it
/// is nonempty, a member with the fewest unlabeled neighbors receives the
/// next label, with `j` recorded as its parent.
pub fn greedy_labeling(g: &Graph, tb: TieBreak) -> Result<(Labeling, ParentLabels)> {
    g.ensure_connected()?;
    let n = g.vertex_count();
    let mut breaker = TieBreaker::new(tb);

    let endpoints: Vec<usize> = {
        let pairs = diametral_pairs(g)?;
        let mut set: Vec<usize> = pairs.iter().flat_map(|&(u, w)| [u, w]).collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let min_degree = endpoints.iter().map(|&v| g.degree(v)).min().unwrap();
    let candidates: Vec<usize> = endpoints
        .into_iter()
        .filter(|&v| g.degree(v) == min_degree)
        .collect();
    let start = candidates[breaker.pick(candidates.len())];

    let mut label_of = vec![0usize; n];
    let mut vertex_of = vec![usize::MAX; n];
    let mut parent = vec![0usize; n];
    let mut labeled = vec![false; n];

    let mut next = 1usize;
    label_of[start] = next;
    vertex_of[next - 1] = start;
    parent[next - 1] = 0;
    labeled[start] = true;
    next += 1;

    let unlabeled_degree = |v: usize, labeled: &[bool]| -> usize {
        g.neighbors(v).filter(|&w| !labeled[w]).count()
    };

    for j in 1..=n {
        if vertex_of[j - 1] == usize::MAX {
            debug_assert!(false, "label {j} missing in a connected graph");
            break;
        }
        let mut worklist: Vec<usize> = g
            .neighbors(vertex_of[j - 1])
            .filter(|&v| !labeled[v])
            .collect();
        while !worklist.is_empty() {
            let best = worklist
                .iter()
                .map(|&v| unlabeled_degree(v, &labeled))
                .min()
                .unwrap();
            let tied: Vec<usize> = worklist
                .iter()
                .copied()
                .filter(|&v| unlabeled_degree(v, &labeled) == best)
                .collect();
            let v = tied[breaker.pick(tied.len())];
            label_of[v] = next;
            vertex_of[next - 1] = v;
            parent[next - 1] = j;
            labeled[v] = true;
            next += 1;
            worklist.retain(|&u| u != v);
        }
    }
    debug_assert_eq!(next, n + 1, "every vertex of a connected graph is labeled");

    let labeling = Labeling {
        to_label: label_of,
        of_label: vertex_of,
    };
    let parents = ParentLabels::from_values(parent)?;
    Ok((labeling, parents))
}

/// Partition of a connected labeled graph by distance from the vertex
/// labeled 1; layer `N` holds the vertices at distance `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    layers: Vec<Vec<usize>>,
}

impl LayerDecomposition {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    /// Index of the last nonempty layer.
    pub fn height(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, n: usize) -> &[usize] {
        &self.layers[n]
    }

    /// Layer containing vertex `v`.
    pub fn layer_of(&self, v: usize) -> usize {
        self.layers
            .iter()
            .position(|layer| layer.contains(&v))
            .expect("layers cover the component")
    }
}

pub fn layers(g: &Graph, lab: &Labeling) -> Result<LayerDecomposition> {
    g.ensure_connected()?;
    check_size(g, lab)?;
    let first = lab.vertex_with_label(1);
    let dist = g.bfs_distances(first)?;
    let height = dist.max_finite().unwrap() as usize;
    let mut layers = vec![Vec::new(); height + 1];
    for v in g.vertices() {
        layers[dist.get(v).expect("connected") as usize].push(v);
    }
    debug_assert_eq!(layers[0], vec![first]);
    debug_assert!(layers.iter().all(|l| !l.is_empty()));
    Ok(LayerDecomposition { layers })
}

/// Check that `parents` records the minimum neighbor label of every label
/// (with `parent(1) = 0`); returns the smallest violating label.
pub fn parent_minimality_violation(
    g: &Graph,
    lab: &Labeling,
    parents: &ParentLabels,
) -> Option<usize> {
    let n = lab.len();
    if n == 0 {
        return None;
    }
    if parents.parent_of(1) != 0 {
        return Some(1);
    }
    for label in 2..=n {
        let v = lab.vertex_with_label(label);
        let min_neighbor = g.neighbors(v).map(|w| lab.label_of(w)).min();
        if min_neighbor != Some(parents.parent_of(label)) {
            return Some(label);
        }
    }
    None
}

/// Check that labels strictly increase across layers: every label in an
/// earlier layer is smaller than every label in a later layer. Returns the
/// first violating pair of labels `(t, s)` with `t` in the earlier layer.
pub fn layer_monotonicity_violation(g: &Graph, lab: &Labeling) -> Result<Option<(usize, usize)>> {
    let decomposition = layers(g, lab)?;
    let mut running_max: Option<usize> = None;
    for layer in decomposition.layers() {
        let labels: Vec<usize> = layer.iter().map(|&v| lab.label_of(v)).collect();
        let min = *labels.iter().min().unwrap();
        let max = *labels.iter().max().unwrap();
        if let Some(prev_max) = running_max {
            if prev_max > min {
                return Ok(Some((prev_max, min)));
            }
        }
        running_max = Some(running_max.map_or(max, |m| m.max(max)));
    }
    Ok(None)
}

/// One component of a componentwise labeling.
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    /// Global vertex indices, ascending.
    pub vertices: Vec<usize>,
    /// Labeling of the component's local indices.
    pub local: Labeling,
    /// Parent labels in the component's local label space.
    pub parents: ParentLabels,
    /// Added to local labels to obtain global labels.
    pub offset: usize,
}

/// Label each connected component independently and compose the blocks into
/// consecutive label runs, ordered by each component's first vertex.
pub fn greedy_labeling_components(
    g: &Graph,
    tb: TieBreak,
) -> Result<(Labeling, Vec<ComponentLabeling>)> {
    let mut blocks = Vec::new();
    let mut components = Vec::new();
    let mut offset = 0usize;
    for vertices in g.connected_components() {
        let sub = g.induced_subgraph(&vertices);
        let (local, parents) = greedy_labeling(&sub, tb)?;
        blocks.push((vertices.clone(), local.clone()));
        components.push(ComponentLabeling {
            offset,
            vertices,
            local,
            parents,
        });
        offset += components.last().unwrap().vertices.len();
    }
    let labeling = Labeling::compose_blocks(g.vertex_count(), &blocks)?;
    Ok((labeling, components))
}

pub(crate) fn check_size(g: &Graph, lab: &Labeling) -> Result<()> {
    if g.vertex_count() != lab.len() {
        return Err(Error::LabelingSizeMismatch {
            labeling: lab.len(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_a_path_monotonically() {
        let g = Graph::path(4);
        let (lab, parents) = greedy_labeling(&g, TieBreak::MinIndex).unwrap();
        let labels: Vec<usize> = (0..4).map(|v| lab.label_of(v)).collect();
        assert_eq!(labels, [1, 2, 3, 4]);
        assert_eq!(parents.values(), &[0, 1, 2, 3]);
    }

    #[test]
    fn labels_a_triangle_in_vertex_order() {
        let g = Graph::complete(3);
        let (lab, parents) = greedy_labeling(&g, TieBreak::MinIndex).unwrap();
        let labels: Vec<usize> = (0..3).map(|v| lab.label_of(v)).collect();
        assert_eq!(labels, [1, 2, 3]);
        assert_eq!(parents.values(), &[0, 1, 1]);
    }

    #[test]
    fn labels_a_single_vertex() {
        let g = Graph::complete(1);
        let (lab, parents) = greedy_labeling(&g, TieBreak::MinIndex).unwrap();
        assert_eq!(lab.label_of(0), 1);
        assert_eq!(parents.values(), &[0]);
    }

    #[test]
    fn rejects_empty_and_disconnected_input() {
        let empty = Graph::parse_edge_list("").unwrap();
        assert_eq!(
            greedy_labeling(&empty, TieBreak::MinIndex).unwrap_err(),
            Error::EmptyGraph
        );
        let two = Graph::parse_edge_list("A B\nC D").unwrap();
        assert_eq!(
            greedy_labeling(&two, TieBreak::MinIndex).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn seeded_tie_break_is_reproducible() {
        let g = Graph::complete(5);
        let (a, _) = greedy_labeling(&g, TieBreak::Seeded(42)).unwrap();
        let (b, _) = greedy_labeling(&g, TieBreak::Seeded(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn layer_examples() {
        let path = Graph::path(4);
        let (lab, _) = greedy_labeling(&path, TieBreak::MinIndex).unwrap();
        let layers = layers(&path, &lab).unwrap();
        assert_eq!(layers.layers(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(layers.height(), 3);

        let k3 = Graph::complete(3);
        let decomposition = super::layers(&k3, &Labeling::identity(3)).unwrap();
        assert_eq!(decomposition.layers(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn layers_of_the_wide_fixture() {
        let g = Graph::parse_edge_list("A B\nA C\nB C\nB E\nC E\nC F\nE F\nB D\nD E").unwrap();
        let (lab, _) = greedy_labeling(&g, TieBreak::MinIndex).unwrap();
        assert_eq!(lab.label_of(g.vertex("A").unwrap()), 1);
        let decomposition = layers(&g, &lab).unwrap();
        let names = |layer: &[usize]| -> Vec<&str> { layer.iter().map(|&v| g.name(v)).collect() };
        assert_eq!(names(decomposition.layer(1)), ["B", "C"]);
        let mut second = names(decomposition.layer(2));
        second.sort_unstable();
        assert_eq!(second, ["D", "E", "F"]);
    }

    #[test]
    fn parent_minimality_examples() {
        let path = Graph::path(4);
        let (lab, parents) = greedy_labeling(&path, TieBreak::MinIndex).unwrap();
        assert_eq!(parent_minimality_violation(&path, &lab, &parents), None);

        let k3 = Graph::complete(3);
        let (lab, parents) = greedy_labeling(&k3, TieBreak::MinIndex).unwrap();
        assert_eq!(parent_minimality_violation(&k3, &lab, &parents), None);

        let tampered = ParentLabels::from_values(vec![0, 1, 2]).unwrap();
        assert_eq!(parent_minimality_violation(&k3, &lab, &tampered), Some(3));
    }

    #[test]
    fn layer_monotonicity_examples() {
        let path = Graph::path(4);
        let (lab, _) = greedy_labeling(&path, TieBreak::MinIndex).unwrap();
        assert_eq!(layer_monotonicity_violation(&path, &lab).unwrap(), None);

        // hand-built labeling of a path: center gets 1, tips get 2 and 3;
        // layers are {center}, {tips} and the labels stay monotone
        let p3 = Graph::path(3);
        let lab = Labeling::from_pairs(3, [(0, 2), (1, 1), (2, 3)]).unwrap();
        assert_eq!(layer_monotonicity_violation(&p3, &lab).unwrap(), None);

        // labeling the middle of a 4-path with 4 breaks monotonicity
        let p4 = Graph::path(4);
        let lab = Labeling::from_pairs(4, [(0, 1), (1, 4), (2, 2), (3, 3)]).unwrap();
        assert!(layer_monotonicity_violation(&p4, &lab).unwrap().is_some());
    }

    #[test]
    fn bijection_construction_errors() {
        assert!(Labeling::from_pairs(2, [(0, 1), (1, 1)]).is_err());
        assert!(Labeling::from_pairs(2, [(0, 1), (0, 2)]).is_err());
        assert!(Labeling::from_pairs(2, [(0, 1), (1, 3)]).is_err());
        assert!(Labeling::from_pairs(2, [(0, 1)]).is_err());
        assert!(Labeling::from_pairs(2, [(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn componentwise_labeling_composes_blocks() {
        let g = Graph::parse_edge_list("a b\nc d").unwrap();
        let (lab, components) = greedy_labeling_components(&g, TieBreak::MinIndex).unwrap();
        let labels: Vec<usize> = (0..4).map(|v| lab.label_of(v)).collect();
        assert_eq!(labels, [1, 2, 3, 4]);
        assert_eq!(components.len(), 2);
        assert_eq!(components[1].offset, 2);
    }
}
