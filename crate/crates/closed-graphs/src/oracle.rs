//! Ground truth at desk scale: exhaustive search for closed labelings,
//! enumeration of all small connected graphs, and the sweep harness that
//! machine-checks the structural characterization of closedness on every
//! one of them.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::iter::{IterBridge, ParallelBridge, ParallelIterator};
use serde::Serialize;

use crate::closed::{definition_violation, is_closed_by_definition, layer_property_report};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::labeling::{
    greedy_labeling_components, layer_monotonicity_violation, layers, parent_minimality_violation,
    Labeling, TieBreak,
};
use crate::structure::{diametral_pairs, is_chordal, is_chordal_456, is_claw_free, is_narrow};

const COUNT_GUARD: usize = 9;
const ENUMERATION_GUARD: usize = 7;

/// Backtracking search for any labeling passing the definitional check.
/// Labels are assigned in increasing order; a candidate for the next label
/// must keep every already-labeled vertex's smaller-side and larger-side
/// neighborhoods complete, and (per component) keep upper neighborhoods
/// consecutive. Disconnected graphs are searched per component and the
/// component labelings composed into consecutive blocks.
pub fn find_closed_labeling(g: &Graph) -> Option<Labeling> {
    let components = g.connected_components();
    if components.len() <= 1 {
        return search_connected(g, false).found.map(|order| {
            let lab = Labeling::from_vertex_order(&order).expect("search yields a bijection");
            debug_assert_eq!(definition_violation(g, &lab), Ok(None));
            lab
        });
    }
    let mut blocks = Vec::new();
    for vertices in components {
        let sub = g.induced_subgraph(&vertices);
        let order = search_connected(&sub, false).found?;
        let local = Labeling::from_vertex_order(&order).expect("search yields a bijection");
        blocks.push((vertices, local));
    }
    let lab = Labeling::compose_blocks(g.vertex_count(), &blocks)
        .expect("blocks partition the vertices");
    debug_assert_eq!(definition_violation(g, &lab), Ok(None));
    Some(lab)
}

/// Exact count of closed labelings by plain enumeration of all `n!`
/// bijections; the independent route that [`count_closed_labelings_by_search`]
/// is checked against.
pub fn count_closed_labelings(g: &Graph) -> Result<u64> {
    let n = g.vertex_count();
    guard("vertex count", n, 0, COUNT_GUARD)?;
    let mut count = 0u64;
    for perm in (0..n).permutations(n) {
        let lab = Labeling::from_vertex_order(&perm).expect("permutation");
        if is_closed_by_definition(g, &lab)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact count via the pruned backtracking search. Components multiply:
/// each component's count times the number of ways to interleave the label
/// blocks, since the definitional check only constrains relative order
/// inside a component.
pub fn count_closed_labelings_by_search(g: &Graph) -> Result<u64> {
    let n = g.vertex_count();
    guard("vertex count", n, 0, COUNT_GUARD)?;
    let mut total = 1u64;
    let mut remaining = n as u64;
    for vertices in g.connected_components() {
        let sub = g.induced_subgraph(&vertices);
        let per_component = search_connected(&sub, true).count;
        total = total
            .checked_mul(per_component)
            .and_then(|t| t.checked_mul(binomial(remaining, vertices.len() as u64)))
            .expect("counts fit in u64 under the guard");
        remaining -= vertices.len() as u64;
    }
    Ok(total)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

struct SearchState<'g> {
    g: &'g Graph,
    assigned: Vec<usize>,
    used: Vec<bool>,
    count_all: bool,
    count: u64,
    found: Option<Vec<usize>>,
}

fn search_connected(g: &Graph, count_all: bool) -> SearchState<'_> {
    let mut state = SearchState {
        g,
        assigned: Vec::with_capacity(g.vertex_count()),
        used: vec![false; g.vertex_count()],
        count_all,
        count: 0,
        found: None,
    };
    state.extend();
    state
}

impl SearchState<'_> {
    fn extend(&mut self) {
        let n = self.g.vertex_count();
        if self.assigned.len() == n {
            self.count += 1;
            if !self.count_all {
                self.found = Some(self.assigned.clone());
            }
            return;
        }
        for x in 0..n {
            if self.used[x] || !self.reachable(x) || !self.feasible(x) {
                continue;
            }
            self.assigned.push(x);
            self.used[x] = true;
            self.extend();
            self.assigned.pop();
            self.used[x] = false;
            if !self.count_all && self.found.is_some() {
                return;
            }
        }
    }

    /// Labels after the first must go to neighbors of labeled vertices: in a
    /// closed labeling of a connected graph every label above 1 has a
    /// smaller-labeled neighbor.
    fn reachable(&self, x: usize) -> bool {
        self.assigned.is_empty() || self.assigned.iter().any(|&a| self.g.is_adjacent(a, x))
    }

    fn feasible(&self, x: usize) -> bool {
        let g = self.g;
        let m = self.assigned.len();
        for p in 0..m {
            let y = self.assigned[p];
            if g.is_adjacent(x, y) {
                for q in p + 1..m {
                    // interval shape: once some later label missed y, no
                    // further label may touch y
                    if !g.is_adjacent(self.assigned[q], y) {
                        return false;
                    }
                    // upper completeness at y: co-members of N^>(y) must be
                    // adjacent to x
                    if !g.is_adjacent(self.assigned[q], x) {
                        return false;
                    }
                }
            }
        }
        // lower completeness at x: its already-labeled neighbors must be a clique
        let smaller: Vec<usize> = self
            .assigned
            .iter()
            .copied()
            .filter(|&a| g.is_adjacent(a, x))
            .collect();
        g.is_complete_on(&smaller)
    }
}

/// Every connected labeled graph on `n` vertices, generated as the
/// connectivity-filtered edge subsets of the complete graph. No isomorphism
/// reduction: the predicates under test are isomorphism-invariant, so the
/// redundancy costs time only.
pub fn enumerate_connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    guard("n", n, 1, ENUMERATION_GUARD)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let masks = 0u32..1u32 << pairs.len();
    Ok(masks.filter_map(move |mask| {
        connected_mask(n, &pairs, mask).then(|| {
            Graph::from_indexed_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e),
            )
        })
    }))
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut adj = [0u8; 8];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut seen: u8 = 1;
    let mut frontier: u8 = 1;
    while frontier != 0 {
        let mut next: u8 = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] & !seen;
        }
        next &= !seen;
        seen |= next;
        frontier = next;
    }
    seen.count_ones() as usize == n
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Also check the variant characterization with "every 4/5/6-cycle has
    /// a chord" in place of chordality.
    pub weak_chordal: bool,
    /// Number of seeded tie-break runs of the greedy labeling per
    /// qualifying graph, on top of the deterministic run.
    pub tie_trials: u32,
    /// Worker threads; 1 evaluates serially.
    pub jobs: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            weak_chordal: false,
            tie_trials: 5,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    pub chordal: u64,
    pub claw_free: u64,
    pub narrow: u64,
    pub weak_456_chordal: u64,
    pub closed: u64,
    /// chordal and claw-free and narrow
    pub triple: u64,
    /// greedy labelings produced and verified closed
    pub labelings_certified: u64,
}

impl SweepCounts {
    fn absorb(&mut self, other: &SweepCounts) {
        self.chordal += other.chordal;
        self.claw_free += other.claw_free;
        self.narrow += other.narrow;
        self.weak_456_chordal += other.weak_456_chordal;
        self.closed += other.closed;
        self.triple += other.triple;
        self.labelings_certified += other.labelings_certified;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepCounterexample {
    pub graph6: String,
    pub failed: String,
}

/// Outcome of a sweep. `counterexamples` is empty exactly when every
/// checked equivalence held; it is sorted, so reports with identical
/// options are identical byte for byte regardless of evaluation order.
/// `elapsed` is carried separately and never serialized.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub max_n: usize,
    pub weak_chordal: bool,
    pub tie_trials: u32,
    pub graphs_examined: u64,
    pub counts: SweepCounts,
    pub counterexamples: Vec<SweepCounterexample>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "sweep: max_n={} weak_chordal={} tie_trials={}\n",
            self.max_n, self.weak_chordal, self.tie_trials
        ));
        out.push_str(&format!("graphs examined: {}\n", self.graphs_examined));
        let c = &self.counts;
        out.push_str(&format!(
            "chordal: {}  claw-free: {}  narrow: {}  weak-456-chordal: {}\n",
            c.chordal, c.claw_free, c.narrow, c.weak_456_chordal
        ));
        out.push_str(&format!(
            "closed: {}  chordal+claw-free+narrow: {}  labelings certified: {}\n",
            c.closed, c.triple, c.labelings_certified
        ));
        if self.counterexamples.is_empty() {
            out.push_str("counterexamples: none\n");
        } else {
            out.push_str(&format!(
                "counterexamples: {}\n",
                self.counterexamples.len()
            ));
            for ce in &self.counterexamples {
                out.push_str(&format!("  {}  {}\n", ce.graph6, ce.failed));
            }
        }
        out
    }
}

/// Sweep every connected graph with up to `max_n` vertices through the
/// built-in enumerator.
pub fn run_sweep(max_n: usize, opts: &SweepOptions) -> Result<SweepReport> {
    guard("max_n", max_n, 1, ENUMERATION_GUARD)?;
    let graphs = (1..=max_n)
        .map(enumerate_connected_graphs)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten();
    let mut report = run_sweep_over(graphs, opts);
    report.max_n = max_n;
    Ok(report)
}

/// Sweep an explicit stream of graphs (for example an external graph6
/// file). `max_n` in the report is the largest vertex count seen.
pub fn run_sweep_over<I>(graphs: I, opts: &SweepOptions) -> SweepReport
where
    I: Iterator<Item = Graph> + Send,
{
    let start = Instant::now();
    let (examined, max_n, counts, mut counterexamples) = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            let bridge: IterBridge<I> = graphs.par_bridge();
            bridge
                .map(|g| per_graph(&g, opts))
                .reduce(PerGraph::default, PerGraph::merge)
        })
        .into_parts()
    } else {
        let mut acc = PerGraph::default();
        for g in graphs {
            acc = acc.merge(per_graph(&g, opts));
        }
        acc.into_parts()
    };
    counterexamples.sort();
    SweepReport {
        schema: 1,
        max_n,
        weak_chordal: opts.weak_chordal,
        tie_trials: opts.tie_trials,
        graphs_examined: examined,
        counts,
        counterexamples,
        elapsed: start.elapsed(),
    }
}

#[derive(Default)]
struct PerGraph {
    examined: u64,
    max_n: usize,
    counts: SweepCounts,
    counterexamples: Vec<SweepCounterexample>,
}

impl PerGraph {
    fn merge(mut self, other: PerGraph) -> PerGraph {
        self.examined += other.examined;
        self.max_n = self.max_n.max(other.max_n);
        self.counts.absorb(&other.counts);
        self.counterexamples.extend(other.counterexamples);
        self
    }

    fn into_parts(self) -> (u64, usize, SweepCounts, Vec<SweepCounterexample>) {
        (self.examined, self.max_n, self.counts, self.counterexamples)
    }
}

fn per_graph(g: &Graph, opts: &SweepOptions) -> PerGraph {
    let graph6 = to_graph6(g).unwrap_or_else(|_| format!("<{} vertices>", g.vertex_count()));
    let mut out = PerGraph {
        examined: 1,
        max_n: g.vertex_count(),
        ..PerGraph::default()
    };

    let chordal = is_chordal(g);
    let claw_free = is_claw_free(g);
    let narrow = all_components_narrow(g);
    let weak = is_chordal_456(g);
    let closed = find_closed_labeling(g).is_some();
    let triple = chordal && claw_free && narrow;

    let c = &mut out.counts;
    c.chordal += chordal as u64;
    c.claw_free += claw_free as u64;
    c.narrow += narrow as u64;
    c.weak_456_chordal += weak as u64;
    c.closed += closed as u64;
    c.triple += triple as u64;

    let mut fail = |failed: String| {
        out.counterexamples.push(SweepCounterexample {
            graph6: graph6.clone(),
            failed,
        });
    };

    if closed != triple {
        fail("closedness != chordal+claw-free+narrow".into());
    }
    if opts.weak_chordal && closed != (weak && claw_free && narrow) {
        fail("closedness != weak-456-chordal+claw-free+narrow".into());
    }

    if triple {
        let mut tie_breaks = vec![TieBreak::MinIndex];
        for trial in 0..opts.tie_trials {
            tie_breaks.push(TieBreak::Seeded(trial_seed(&graph6, trial)));
        }
        for tb in tie_breaks {
            match certify_labeling(g, tb) {
                Ok(()) => out.counts.labelings_certified += 1,
                Err(msg) => fail(format!("{msg} (tie-break {})", describe(tb))),
            }
        }
    }

    out
}

fn describe(tb: TieBreak) -> String {
    match tb {
        TieBreak::MinIndex => "min-index".into(),
        TieBreak::Seeded(seed) => format!("seed={seed}"),
    }
}

fn trial_seed(graph6: &str, trial: u32) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in graph6.as_bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ (u64::from(trial) + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn all_components_narrow(g: &Graph) -> bool {
    if g.is_connected() {
        return is_narrow(g).expect("connected");
    }
    g.connected_components()
        .into_iter()
        .all(|vs| is_narrow(&g.induced_subgraph(&vs)).expect("component is connected"))
}

/// Run the greedy labeling and check everything a closed labeling must
/// satisfy: the definitional check, the layer consequences, parent-label
/// minimality and monotonicity, the parent-in-previous-layer rule, layer
/// monotonicity of labels, and minimality of the start vertex's degree.
fn certify_labeling(g: &Graph, tb: TieBreak) -> std::result::Result<(), String> {
    let (lab, components) =
        greedy_labeling_components(g, tb).map_err(|e| format!("labeling failed: {e}"))?;
    if !is_closed_by_definition(g, &lab).map_err(|e| e.to_string())? {
        return Err("greedy labeling not closed".into());
    }
    for comp in &components {
        let sub = g.induced_subgraph(&comp.vertices);
        let local = &comp.local;

        let report = layer_property_report(&sub, local).map_err(|e| e.to_string())?;
        if !report.all_hold() {
            return Err(format!("layer properties failed: {:?}", report.failures));
        }
        if let Some(label) = parent_minimality_violation(&sub, local, &comp.parents) {
            return Err(format!("parent label of {label} is not the minimum neighbor"));
        }
        let values = comp.parents.values();
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err("parent labels decrease".into());
        }
        let decomposition = layers(&sub, local).map_err(|e| e.to_string())?;
        for label in 2..=local.len() {
            let v = local.vertex_with_label(label);
            let parent_vertex = local.vertex_with_label(comp.parents.parent_of(label));
            if decomposition.layer_of(parent_vertex) + 1 != decomposition.layer_of(v) {
                return Err(format!("parent of {label} is not one layer earlier"));
            }
        }
        if layer_monotonicity_violation(&sub, local)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            return Err("labels do not increase across layers".into());
        }
        let endpoints: Vec<usize> = diametral_pairs(&sub)
            .map_err(|e| e.to_string())?
            .into_iter()
            .flat_map(|(u, w)| [u, w])
            .collect();
        let min_endpoint_degree = endpoints.iter().map(|&v| sub.degree(v)).min().unwrap();
        if sub.degree(local.vertex_with_label(1)) > min_endpoint_degree {
            return Err("start vertex degree exceeds an endpoint degree".into());
        }
    }
    Ok(())
}

fn guard(what: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::Guard {
            what,
            value,
            min,
            max,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_labeling_for_a_path() {
        let g = Graph::path(3);
        let lab = find_closed_labeling(&g).unwrap();
        assert_eq!(lab.label_of(1), 2, "the center takes the middle label");
        assert!(is_closed_by_definition(&g, &lab).unwrap());
    }

    #[test]
    fn finds_nothing_for_the_star_or_the_wide_fixture() {
        assert!(find_closed_labeling(&Graph::star(3)).is_none());
        let wide =
            Graph::parse_edge_list("A B\nA C\nB C\nB E\nC E\nC F\nE F\nB D\nD E").unwrap();
        assert!(find_closed_labeling(&wide).is_none());
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_closed_labelings(&Graph::complete(3)).unwrap(), 6);
        assert_eq!(count_closed_labelings(&Graph::path(3)).unwrap(), 2);
        assert_eq!(count_closed_labelings(&Graph::cycle(4)).unwrap(), 0);
        assert_eq!(
            count_closed_labelings_by_search(&Graph::complete(3)).unwrap(),
            6
        );
        assert_eq!(count_closed_labelings_by_search(&Graph::path(3)).unwrap(), 2);
        assert_eq!(
            count_closed_labelings_by_search(&Graph::cycle(4)).unwrap(),
            0
        );
    }

    #[test]
    fn counting_respects_the_guard() {
        let g = Graph::from_indexed_edges(10, []);
        assert!(matches!(count_closed_labelings(&g), Err(Error::Guard { .. })));
    }

    #[test]
    fn counts_agree_on_a_disconnected_graph() {
        // two disjoint edges: every component has 2 closed labelings of its
        // own and the blocks interleave freely
        let g = Graph::parse_edge_list("a b\nc d").unwrap();
        let brute = count_closed_labelings(&g).unwrap();
        let pruned = count_closed_labelings_by_search(&g).unwrap();
        assert_eq!(brute, pruned);
        assert_eq!(brute, 24);

        let lab = find_closed_labeling(&g).unwrap();
        assert!(is_closed_by_definition(&g, &lab).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let count = |n| enumerate_connected_graphs(n).unwrap().count();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 4);
        assert_eq!(count(4), 38);
        assert!(enumerate_connected_graphs(0).is_err());
        assert!(enumerate_connected_graphs(8).is_err());
    }

    #[test]
    fn tiny_sweep_is_clean() {
        let report = run_sweep(3, &SweepOptions::default()).unwrap();
        assert_eq!(report.graphs_examined, 6);
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.counts.closed, 6);
        assert_eq!(report.counts.triple, 6);
        // every qualifying graph certifies 1 + tie_trials labelings
        assert_eq!(report.counts.labelings_certified, 6 * 6);
    }

    #[test]
    fn sweep_reports_are_deterministic() {
        let opts = SweepOptions {
            weak_chordal: true,
            tie_trials: 3,
            jobs: 1,
        };
        let a = run_sweep(4, &opts).unwrap();
        let b = run_sweep(4, &opts).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert_eq!(a.render_text(), b.render_text());
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let serial = run_sweep(4, &SweepOptions::default()).unwrap();
        let parallel = run_sweep(
            4,
            &SweepOptions {
                jobs: 4,
                ..SweepOptions::default()
            },
        )
        .unwrap();
        assert_eq!(serial.to_json_string(), parallel.to_json_string());
    }
}
