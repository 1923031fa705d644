//! Closedness of a labeling, decided three independent ways.
//!
//! A labeling is closed when for every pair of distinct edges `{j,i}` and
//! `{i,k}` with `j > i < k` or `j < i > k`, the edge `{j,k}` is present.
//! Equivalently (for connected graphs): every shortest path is strictly
//! monotone in labels, and equivalently every upper neighborhood `N^>(i)`
//! is a complete consecutive interval starting at `i + 1`. The three
//! verifiers here implement one characterization each and are cross-checked
//! against one another in the test suites.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{check_size, layers, Labeling};
use crate::structure::{diameter, diametral_pairs};

/// Why a labeling is not closed. `Fork` and `IntervalGap` speak in label
/// space; `NonDirectedPath` lists vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedViolation {
    /// Labels `pair.0` and `pair.1` are both neighbors of `center` on the
    /// same side (both larger or both smaller) yet not adjacent.
    Fork { center: usize, pair: (usize, usize) },
    /// The upper neighborhood of `label` skips `missing` although it
    /// reaches past it.
    IntervalGap { label: usize, missing: usize },
    /// A shortest path whose label sequence is not strictly monotone.
    NonDirectedPath { path: Vec<usize> },
}

/// Scan for the lexicographically least fork `(center, pair)`: smallest
/// center label first, then smallest pair.
pub fn definition_violation(g: &Graph, lab: &Labeling) -> Result<Option<ClosedViolation>> {
    check_size(g, lab)?;
    let n = lab.len();
    for center in 1..=n {
        let v = lab.vertex_with_label(center);
        let mut smaller = Vec::new();
        let mut larger = Vec::new();
        for w in g.neighbors(v) {
            let l = lab.label_of(w);
            if l < center {
                smaller.push(l);
            } else {
                larger.push(l);
            }
        }
        smaller.sort_unstable();
        larger.sort_unstable();
        let mut best: Option<(usize, usize)> = None;
        for side in [&smaller, &larger] {
            for (pos, &a) in side.iter().enumerate() {
                for &b in &side[pos + 1..] {
                    if !g.is_adjacent(lab.vertex_with_label(a), lab.vertex_with_label(b)) {
                        best = Some(best.map_or((a, b), |cur| cur.min((a, b))));
                    }
                }
            }
        }
        if let Some(pair) = best {
            return Ok(Some(ClosedViolation::Fork { center, pair }));
        }
    }
    Ok(None)
}

/// The definitional check; valid on disconnected graphs too.
pub fn is_closed_by_definition(g: &Graph, lab: &Labeling) -> Result<bool> {
    Ok(definition_violation(g, lab)?.is_none())
}

/// Find a shortest path that is not strictly monotone in labels, by
/// checking every "tight" triple of the shortest-path DAG of every source:
/// a bend `x - y - z` with distances from the source increasing by one at
/// each step lies on a shortest path from the source to `z`, and every
/// non-monotone shortest path contains such a bend.
pub fn directed_path_violation(g: &Graph, lab: &Labeling) -> Result<Option<ClosedViolation>> {
    g.ensure_connected()?;
    check_size(g, lab)?;
    for source in g.vertices() {
        let (dist, parent) = bfs(g, source);
        for y in g.vertices() {
            let Some(dy) = dist[y] else { continue };
            if dy == 0 {
                continue;
            }
            for x in g.neighbors(y) {
                if dist[x] != Some(dy - 1) {
                    continue;
                }
                for z in g.neighbors(y) {
                    if dist[z] != Some(dy + 1) {
                        continue;
                    }
                    let (a, b, c) = (lab.label_of(x), lab.label_of(y), lab.label_of(z));
                    if (a < b && b < c) || (a > b && b > c) {
                        continue;
                    }
                    // walk back from x to the source, then append the bend
                    let mut path = vec![x];
                    let mut cur = x;
                    while let Some(p) = parent[cur] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    path.push(y);
                    path.push(z);
                    return Ok(Some(ClosedViolation::NonDirectedPath { path }));
                }
            }
        }
    }
    Ok(None)
}

/// True iff all shortest paths between all vertex pairs are strictly
/// monotone in labels. Connected graphs only.
pub fn is_closed_by_directed_paths(g: &Graph, lab: &Labeling) -> Result<bool> {
    Ok(directed_path_violation(g, lab)?.is_none())
}

fn bfs(g: &Graph, source: usize) -> (Vec<Option<u32>>, Vec<Option<usize>>) {
    g.bfs_with_parents(source)
}

/// Labels of the neighbors of the vertex labeled `i` that exceed `i`.
pub fn upper_neighborhood(g: &Graph, lab: &Labeling, i: usize) -> Result<BTreeSet<usize>> {
    check_size(g, lab)?;
    if !(1..=lab.len()).contains(&i) {
        return Err(Error::LabelOutOfRange {
            label: i,
            n: lab.len(),
        });
    }
    Ok(g.neighbors(lab.vertex_with_label(i))
        .map(|w| lab.label_of(w))
        .filter(|&l| l > i)
        .collect())
}

/// For every label `i`, the upper neighborhood must be complete and equal
/// to the consecutive interval `[i+1, i+r]`. Completeness failures surface
/// as forks, interval failures as gaps. Connected graphs only.
pub fn interval_violation(g: &Graph, lab: &Labeling) -> Result<Option<ClosedViolation>> {
    g.ensure_connected()?;
    check_size(g, lab)?;
    let n = lab.len();
    for i in 1..=n {
        let upper: Vec<usize> = upper_neighborhood(g, lab, i)?.into_iter().collect();
        for (pos, &a) in upper.iter().enumerate() {
            for &b in &upper[pos + 1..] {
                if !g.is_adjacent(lab.vertex_with_label(a), lab.vertex_with_label(b)) {
                    return Ok(Some(ClosedViolation::Fork {
                        center: i,
                        pair: (a, b),
                    }));
                }
            }
        }
        for (offset, &l) in upper.iter().enumerate() {
            let expected = i + 1 + offset;
            if l != expected {
                return Ok(Some(ClosedViolation::IntervalGap {
                    label: i,
                    missing: expected,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_closed_by_intervals(g: &Graph, lab: &Labeling) -> Result<bool> {
    Ok(interval_violation(g, lab)?.is_none())
}

/// Consequences of closedness for the layer decomposition; all four are
/// theorems for closed labelings, so any failure identifies a bug rather
/// than a property of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerPropertyFailure {
    /// Vertices `u`, `v` share layer `n` but are not adjacent.
    LayerNotComplete { layer: usize, u: usize, v: usize },
    /// Layer `n + 1` differs from the upper neighborhood of the largest
    /// label in layer `n`.
    SuccessorMismatch { layer: usize },
    /// Diameter differs from the index of the last layer.
    DiameterMismatch { diameter: u32, height: usize },
    /// A diametral pair without one endpoint in layer 0 or 1 and the other
    /// in the last layer.
    EndpointsMisplaced { u: usize, w: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPropertyReport {
    pub failures: Vec<LayerPropertyFailure>,
}

impl LayerPropertyReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the layer consequences of a closed labeling: every layer is
/// complete; each next layer is the upper neighborhood of the previous
/// layer's maximum label; the diameter equals the layer height; and every
/// diametral pair has one member in layer 0 or 1 and the other in the last
/// layer. The labeling must verify as closed first.
pub fn layer_property_report(g: &Graph, lab: &Labeling) -> Result<LayerPropertyReport> {
    g.ensure_connected()?;
    if definition_violation(g, lab)?.is_some() {
        return Err(Error::NotClosed("layer_property_report"));
    }
    let decomposition = layers(g, lab)?;
    let mut failures = Vec::new();

    for (idx, layer) in decomposition.layers().iter().enumerate() {
        'pairs: for (pos, &u) in layer.iter().enumerate() {
            for &v in &layer[pos + 1..] {
                if !g.is_adjacent(u, v) {
                    failures.push(LayerPropertyFailure::LayerNotComplete { layer: idx, u, v });
                    break 'pairs;
                }
            }
        }
    }

    for idx in 0..decomposition.height() {
        let max_label = decomposition
            .layer(idx)
            .iter()
            .map(|&v| lab.label_of(v))
            .max()
            .unwrap();
        let upper = upper_neighborhood(g, lab, max_label)?;
        let next: BTreeSet<usize> = decomposition
            .layer(idx + 1)
            .iter()
            .map(|&v| lab.label_of(v))
            .collect();
        if upper != next {
            failures.push(LayerPropertyFailure::SuccessorMismatch { layer: idx });
        }
    }

    let diam = diameter(g)?;
    if diam as usize != decomposition.height() {
        failures.push(LayerPropertyFailure::DiameterMismatch {
            diameter: diam,
            height: decomposition.height(),
        });
    }

    let height = decomposition.height();
    for (u, w) in diametral_pairs(g)? {
        let (lu, lw) = (decomposition.layer_of(u), decomposition.layer_of(w));
        let placed = |a: usize, b: usize| a <= 1 && b == height;
        if !placed(lu, lw) && !placed(lw, lu) {
            failures.push(LayerPropertyFailure::EndpointsMisplaced { u, w });
        }
    }

    Ok(LayerPropertyReport { failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p3() -> Graph {
        Graph::path(3)
    }

    #[test]
    fn monotone_path_labeling_is_closed() {
        let g = p3();
        let lab = Labeling::identity(3);
        assert!(is_closed_by_definition(&g, &lab).unwrap());
        assert!(is_closed_by_directed_paths(&g, &lab).unwrap());
        assert!(is_closed_by_intervals(&g, &lab).unwrap());
    }

    #[test]
    fn center_low_labeling_forks() {
        let g = p3();
        // a=2, b=1, c=3 puts both larger labels on the center
        let lab = Labeling::from_pairs(3, [(0, 2), (1, 1), (2, 3)]).unwrap();
        assert_eq!(
            definition_violation(&g, &lab).unwrap(),
            Some(ClosedViolation::Fork {
                center: 1,
                pair: (2, 3)
            })
        );
        assert_eq!(
            interval_violation(&g, &lab).unwrap(),
            Some(ClosedViolation::Fork {
                center: 1,
                pair: (2, 3)
            })
        );
        assert!(!is_closed_by_directed_paths(&g, &lab).unwrap());
    }

    #[test]
    fn complete_graphs_are_closed_under_any_labeling() {
        let g = Graph::complete(4);
        for perm in (0..4).permutations(4) {
            let lab = Labeling::from_vertex_order(&perm).unwrap();
            assert!(is_closed_by_definition(&g, &lab).unwrap());
            assert!(is_closed_by_intervals(&g, &lab).unwrap());
        }
    }

    #[test]
    fn no_labeling_closes_a_four_cycle() {
        let g = Graph::cycle(4);
        for perm in (0..4).permutations(4) {
            let lab = Labeling::from_vertex_order(&perm).unwrap();
            assert!(!is_closed_by_definition(&g, &lab).unwrap());
            assert!(!is_closed_by_directed_paths(&g, &lab).unwrap());
            let violation = directed_path_violation(&g, &lab).unwrap().unwrap();
            let ClosedViolation::NonDirectedPath { path } = violation else {
                panic!("expected a path violation");
            };
            // the reported path is a genuine non-monotone shortest path
            assert!(path.windows(2).all(|e| g.is_adjacent(e[0], e[1])));
            let labels: Vec<usize> = path.iter().map(|&v| lab.label_of(v)).collect();
            assert!(!labels.windows(2).all(|w| w[0] < w[1]));
            assert!(!labels.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn upper_neighborhood_examples() {
        let path = Graph::path(4);
        let lab = Labeling::identity(4);
        assert_eq!(
            upper_neighborhood(&path, &lab, 2).unwrap(),
            BTreeSet::from([3])
        );

        let k3 = Graph::complete(3);
        assert_eq!(
            upper_neighborhood(&k3, &Labeling::identity(3), 1).unwrap(),
            BTreeSet::from([2, 3])
        );

        let g = Graph::parse_edge_list("A B\nA C\nB C\nB E\nC E\nC F\nE F\nB D\nD E").unwrap();
        // alphabetical labeling A..F -> 1..6
        let mut names: Vec<&str> = g.names().collect();
        names.sort_unstable();
        let lab = Labeling::from_pairs(
            6,
            names
                .iter()
                .enumerate()
                .map(|(k, name)| (g.vertex(name).unwrap(), k + 1)),
        )
        .unwrap();
        assert_eq!(
            upper_neighborhood(&g, &lab, 2).unwrap(),
            BTreeSet::from([3, 4, 5])
        );

        assert!(matches!(
            upper_neighborhood(&path, &lab_of_size_4(), 9),
            Err(Error::LabelOutOfRange { label: 9, n: 4 })
        ));
    }

    fn lab_of_size_4() -> Labeling {
        Labeling::identity(4)
    }

    #[test]
    fn interval_gap_is_reported() {
        // path 1 - 2 - 4 - 3 in labels: N^>(2) = {4}, skipping 3
        let g = Graph::path(4);
        let lab = Labeling::from_pairs(4, [(0, 1), (1, 2), (2, 4), (3, 3)]).unwrap();
        assert_eq!(
            interval_violation(&g, &lab).unwrap(),
            Some(ClosedViolation::IntervalGap {
                label: 2,
                missing: 3
            })
        );
    }

    #[test]
    fn definition_check_handles_disconnected_graphs() {
        let g = Graph::parse_edge_list("a b\nc d").unwrap();
        let lab = Labeling::identity(4);
        assert!(is_closed_by_definition(&g, &lab).unwrap());
        assert_eq!(
            is_closed_by_directed_paths(&g, &lab),
            Err(Error::Disconnected)
        );
        assert_eq!(is_closed_by_intervals(&g, &lab), Err(Error::Disconnected));
    }

    #[test]
    fn layer_properties_on_small_closed_labelings() {
        let path = Graph::path(4);
        let report = layer_property_report(&path, &Labeling::identity(4)).unwrap();
        assert!(report.all_hold());

        let k3 = Graph::complete(3);
        let report = layer_property_report(&k3, &Labeling::identity(3)).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn layer_properties_require_a_closed_labeling() {
        let g = Graph::cycle(4);
        let err = layer_property_report(&g, &Labeling::identity(4)).unwrap_err();
        assert_eq!(err, Error::NotClosed("layer_property_report"));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let g = Graph::path(3);
        let lab = Labeling::identity(4);
        assert!(matches!(
            definition_violation(&g, &lab),
            Err(Error::LabelingSizeMismatch { .. })
        ));
    }
}
