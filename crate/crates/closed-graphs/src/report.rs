//! Classification reports and the text/JSON front end behind the CLI.

use serde::Serialize;

use crate::closed::{definition_violation, is_closed_by_definition, ClosedViolation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::labeling::{greedy_labeling_components, ComponentLabeling, Labeling, TieBreak};
use crate::oracle::find_closed_labeling;
use crate::structure::{find_claw, find_hole, find_short_hole, is_chordal, is_chordal_456,
    is_claw_free, narrowness_violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Graph6,
}

/// Guess the input format: a single-token first content line whose first
/// character is `:` or at least `?` reads as graph6, anything else as an
/// edge list. Blank lines and `#` comments are skipped.
pub fn detect_format(text: &str) -> InputFormat {
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("nonempty line");
        let single = tokens.next().is_none();
        let byte = first.as_bytes()[0];
        return if single && (byte == b':' || byte >= b'?') {
            InputFormat::Graph6
        } else {
            InputFormat::EdgeList
        };
    }
    InputFormat::EdgeList
}

/// Parse a graph in the requested format, auto-detecting when none is
/// given. Graph6 input must contain exactly one graph line.
pub fn parse_graph_input(text: &str, format: Option<InputFormat>) -> Result<Graph> {
    match format.unwrap_or_else(|| detect_format(text)) {
        InputFormat::EdgeList => Graph::parse_edge_list(text),
        InputFormat::Graph6 => {
            let mut found: Option<&str> = None;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                if found.is_some() {
                    return Err(Error::Parse {
                        line: idx + 1,
                        msg: "multiple graph6 lines; the sweep command reads graph streams".into(),
                    });
                }
                found = Some(line);
            }
            match found {
                Some(line) => graph6::parse_graph6(line),
                None => Err(Error::Parse {
                    line: 1,
                    msg: "no graph6 line found".into(),
                }),
            }
        }
    }
}

/// Parse a labeling file of `vertex label` lines into a bijection on the
/// graph's vertices. Blank lines and `#` comments are skipped, so the
/// output of the label command parses back unchanged.
pub fn parse_labeling_file(g: &Graph, text: &str) -> Result<Labeling> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let [vertex, label] = tokens.as_slice() else {
            return Err(Error::Parse {
                line,
                msg: format!("expected \"vertex label\", found {} tokens", tokens.len()),
            });
        };
        let v = g.vertex(vertex).ok_or_else(|| Error::Parse {
            line,
            msg: format!("unknown vertex {vertex:?}"),
        })?;
        let label: usize = label.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("label {label:?} is not a positive integer"),
        })?;
        pairs.push((v, label));
    }
    Labeling::from_pairs(g.vertex_count(), pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClawReport {
    pub center: String,
    pub leaves: [String; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct NarrowReport {
    pub vertex: String,
    pub path: Vec<String>,
    pub endpoints: (String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub narrow: bool,
    pub violation: Option<NarrowReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelEntry {
    pub vertex: String,
    pub label: usize,
}

/// Full classification of one input graph. The `closed` verdict is computed
/// independently of the three predicates — by constructing and verifying a
/// labeling when they hold, and by exhaustive search when they fail — so the
/// equivalence between the two routes is re-proved on every run; a mismatch
/// surfaces as [`Error::Internal`].
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub connected: bool,
    pub chordal: bool,
    pub hole: Option<Vec<String>>,
    pub claw_free: bool,
    pub claw: Option<ClawReport>,
    pub narrow: bool,
    pub components: Vec<ComponentReport>,
    pub weak_456_chordal: bool,
    pub short_hole: Option<Vec<String>>,
    pub closed: bool,
    pub labeling: Option<Vec<LabelEntry>>,
}

impl CheckReport {
    pub fn analyze(g: &Graph) -> Result<CheckReport> {
        let names = |vs: &[usize]| -> Vec<String> {
            vs.iter().map(|&v| g.name(v).to_string()).collect()
        };

        let chordal = is_chordal(g);
        let hole = if chordal {
            None
        } else {
            let witness = find_hole(g).ok_or_else(|| {
                Error::Internal("elimination order rejected the graph but no hole found".into())
            })?;
            Some(names(&witness.cycle))
        };

        let claw_free = is_claw_free(g);
        let claw = find_claw(g).map(|w| ClawReport {
            center: g.name(w.center).to_string(),
            leaves: w.leaves.map(|l| g.name(l).to_string()),
        });
        if claw_free == claw.is_some() {
            return Err(Error::Internal("claw finder disagrees with itself".into()));
        }

        let mut components = Vec::new();
        for vertices in g.connected_components() {
            let sub = g.induced_subgraph(&vertices);
            let violation = narrowness_violation(&sub)?;
            components.push(ComponentReport {
                vertices: names(&vertices),
                narrow: violation.is_none(),
                violation: violation.map(|w| NarrowReport {
                    vertex: sub.name(w.vertex).to_string(),
                    path: w.path.iter().map(|&v| sub.name(v).to_string()).collect(),
                    endpoints: (
                        sub.name(w.endpoints.0).to_string(),
                        sub.name(w.endpoints.1).to_string(),
                    ),
                }),
            });
        }
        let narrow = components.iter().all(|c| c.narrow);

        let weak_456_chordal = is_chordal_456(g);
        let short_hole = find_short_hole(g).map(|w| names(&w.cycle));

        let triple = chordal && claw_free && narrow;
        let (closed, labeling) = if triple {
            let (lab, _) = greedy_labeling_components(g, TieBreak::MinIndex)?;
            if !is_closed_by_definition(g, &lab)? {
                return Err(Error::Internal(
                    "chordal, claw-free and narrow, yet the greedy labeling failed to verify"
                        .into(),
                ));
            }
            let entries = lab
                .iter()
                .map(|(v, label)| LabelEntry {
                    vertex: g.name(v).to_string(),
                    label,
                })
                .collect();
            (true, Some(entries))
        } else {
            if let Some(lab) = find_closed_labeling(g) {
                return Err(Error::Internal(format!(
                    "search found a closed labeling {:?} although the predicates fail",
                    lab.iter().collect::<Vec<_>>()
                )));
            }
            (false, None)
        };

        let report = CheckReport {
            schema: 1,
            vertices: g.names().map(str::to_string).collect(),
            edge_count: g.edge_count(),
            connected: g.is_connected(),
            chordal,
            hole,
            claw_free,
            claw,
            narrow,
            components,
            weak_456_chordal,
            short_hole,
            closed,
            labeling,
        };
        if !report.consistent() {
            return Err(Error::Internal(
                "closed verdict disagrees with chordal+claw-free+narrow".into(),
            ));
        }
        Ok(report)
    }

    /// The characterization identity the report must satisfy before it is
    /// emitted.
    pub fn consistent(&self) -> bool {
        self.closed == (self.chordal && self.claw_free && self.narrow)
            && self.closed == self.labeling.is_some()
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "vertices: {} ({})\n",
            self.vertices.len(),
            self.vertices.join(" ")
        ));
        out.push_str(&format!("edges: {}\n", self.edge_count));
        out.push_str(&format!("connected: {}\n", yes_no(self.connected)));
        out.push_str(&format!("chordal: {}\n", yes_no(self.chordal)));
        if let Some(hole) = &self.hole {
            out.push_str(&format!("  witness: chordless cycle {}\n", hole.join(" ")));
        }
        out.push_str(&format!("claw-free: {}\n", yes_no(self.claw_free)));
        if let Some(claw) = &self.claw {
            out.push_str(&format!(
                "  witness: center {}, leaves {}\n",
                claw.center,
                claw.leaves.join(" ")
            ));
        }
        out.push_str(&format!("narrow: {}\n", yes_no(self.narrow)));
        for (idx, comp) in self.components.iter().enumerate() {
            if let Some(v) = &comp.violation {
                out.push_str(&format!(
                    "  component {} not narrow: vertex {} is at distance >= 2 from the longest shortest path {} (endpoints {}, {})\n",
                    idx + 1,
                    v.vertex,
                    v.path.join(" "),
                    v.endpoints.0,
                    v.endpoints.1
                ));
            }
        }
        out.push_str(&format!(
            "weak-456-chordal: {}\n",
            yes_no(self.weak_456_chordal)
        ));
        if let Some(hole) = &self.short_hole {
            out.push_str(&format!("  witness: chordless cycle {}\n", hole.join(" ")));
        }
        out.push_str(&format!("closed: {}\n", yes_no(self.closed)));
        if let Some(labeling) = &self.labeling {
            let rendered: Vec<String> = labeling
                .iter()
                .map(|e| format!("{}={}", e.vertex, e.label))
                .collect();
            out.push_str(&format!("  labeling: {}\n", rendered.join(" ")));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Output of the label command: the composed labeling, its per-component
/// structure, and (on request) the definitional verification.
#[derive(Clone, Debug)]
pub struct LabelReport {
    pub labeling: Labeling,
    pub components: Vec<ComponentLabeling>,
    pub verification: Option<Option<ClosedViolation>>,
}

pub fn label_graph(g: &Graph, tb: TieBreak, verify: bool) -> Result<LabelReport> {
    let (labeling, components) = greedy_labeling_components(g, tb)?;
    let verification = if verify {
        Some(definition_violation(g, &labeling)?)
    } else {
        None
    };
    Ok(LabelReport {
        labeling,
        components,
        verification,
    })
}

impl LabelReport {
    /// `vertex label` lines, with the per-component parent functions and
    /// the optional verification verdict as `#` comments; the text parses
    /// back through [`parse_labeling_file`].
    pub fn render_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for (idx, comp) in self.components.iter().enumerate() {
            let names: Vec<&str> = comp.vertices.iter().map(|&v| g.name(v)).collect();
            out.push_str(&format!("# component {}: {}\n", idx + 1, names.join(" ")));
            for (local_v, &global_v) in comp.vertices.iter().enumerate() {
                out.push_str(&format!(
                    "{} {}\n",
                    g.name(global_v),
                    comp.offset + comp.local.label_of(local_v)
                ));
            }
            let parents: Vec<String> = (1..=comp.local.len())
                .map(|label| {
                    let parent = comp.parents.parent_of(label);
                    let global_parent = if parent == 0 { 0 } else { comp.offset + parent };
                    format!("p({})={}", comp.offset + label, global_parent)
                })
                .collect();
            out.push_str(&format!("# parents: {}\n", parents.join(" ")));
        }
        if let Some(outcome) = &self.verification {
            match outcome {
                None => out.push_str("# verification: closed\n"),
                Some(v) => out.push_str(&format!(
                    "# verification: not closed; {}\n",
                    render_violation(g, &self.labeling, v)
                )),
            }
        }
        out
    }

    pub fn to_json_string(&self, g: &Graph) -> String {
        let components: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|comp| {
                let labels: Vec<serde_json::Value> = comp
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(local_v, &global_v)| {
                        serde_json::json!({
                            "vertex": g.name(global_v),
                            "label": comp.offset + comp.local.label_of(local_v),
                        })
                    })
                    .collect();
                let layers = crate::labeling::layers(&g.induced_subgraph(&comp.vertices), &comp.local)
                    .expect("component is connected");
                let layer_names: Vec<Vec<String>> = layers
                    .layers()
                    .iter()
                    .map(|layer| {
                        layer
                            .iter()
                            .map(|&local_v| g.name(comp.vertices[local_v]).to_string())
                            .collect()
                    })
                    .collect();
                serde_json::json!({
                    "labels": labels,
                    "parents": comp.parents.values(),
                    "layers": layer_names,
                })
            })
            .collect();
        let verification = self.verification.as_ref().map(|outcome| match outcome {
            None => serde_json::json!({ "closed": true, "violation": null }),
            Some(v) => serde_json::json!({
                "closed": false,
                "violation": violation_json(g, &self.labeling, v),
            }),
        });
        let value = serde_json::json!({
            "schema": 1,
            "labeling": self
                .labeling
                .iter()
                .map(|(v, label)| serde_json::json!({ "vertex": g.name(v), "label": label }))
                .collect::<Vec<_>>(),
            "components": components,
            "verification": verification,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("label report serializes");
        s.push('\n');
        s
    }
}

pub fn render_violation(g: &Graph, lab: &Labeling, violation: &ClosedViolation) -> String {
    match violation {
        ClosedViolation::Fork { center, pair } => {
            let name = |label: usize| g.name(lab.vertex_with_label(label));
            format!(
                "fork ({}, {}, {}) at vertices ({}, {}, {})",
                pair.0,
                center,
                pair.1,
                name(pair.0),
                name(*center),
                name(pair.1)
            )
        }
        ClosedViolation::IntervalGap { label, missing } => format!(
            "interval gap: the upper neighborhood of label {label} skips {missing}"
        ),
        ClosedViolation::NonDirectedPath { path } => {
            let rendered: Vec<String> = path
                .iter()
                .map(|&v| format!("{}({})", g.name(v), lab.label_of(v)))
                .collect();
            format!("non-directed shortest path {}", rendered.join(" "))
        }
    }
}

pub fn violation_json(g: &Graph, lab: &Labeling, violation: &ClosedViolation) -> serde_json::Value {
    match violation {
        ClosedViolation::Fork { center, pair } => {
            let name = |label: usize| g.name(lab.vertex_with_label(label));
            serde_json::json!({
                "kind": "fork",
                "labels": [pair.0, center, pair.1],
                "vertices": [name(pair.0), name(*center), name(pair.1)],
            })
        }
        ClosedViolation::IntervalGap { label, missing } => serde_json::json!({
            "kind": "interval-gap",
            "label": label,
            "missing": missing,
        }),
        ClosedViolation::NonDirectedPath { path } => serde_json::json!({
            "kind": "non-directed-path",
            "vertices": path.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
            "labels": path.iter().map(|&v| lab.label_of(v)).collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WIDE_FIXTURE: &str = "A B\nA C\nB C\nB E\nC E\nC F\nE F\nB D\nD E";

    #[test]
    fn detects_formats() {
        assert_eq!(detect_format("A B\nB C\n"), InputFormat::EdgeList);
        assert_eq!(detect_format("Bw\n"), InputFormat::Graph6);
        assert_eq!(detect_format("# comment\nBw\n"), InputFormat::Graph6);
        assert_eq!(detect_format(":something"), InputFormat::Graph6);
        assert_eq!(detect_format(""), InputFormat::EdgeList);
        // one token starting below '?' stays an edge list
        assert_eq!(detect_format("3\n"), InputFormat::EdgeList);
        // one token at or above '?' is treated as graph6 even though it
        // could be an isolated vertex; --format edge-list overrides
        assert_eq!(detect_format("A\n"), InputFormat::Graph6);
    }

    #[test]
    fn graph6_input_must_be_a_single_graph() {
        assert!(parse_graph_input("Bw\n", None).is_ok());
        let err = parse_graph_input("Bw\nBw\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn classifies_the_wide_fixture() {
        let g = Graph::parse_edge_list(WIDE_FIXTURE).unwrap();
        let report = CheckReport::analyze(&g).unwrap();
        assert!(report.connected);
        assert!(report.chordal);
        assert!(report.claw_free);
        assert!(!report.narrow);
        assert!(!report.closed);
        assert!(report.labeling.is_none());
        let violation = report.components[0].violation.as_ref().unwrap();
        assert_eq!(violation.vertex, "D");
        assert_eq!(violation.path, ["A", "C", "F"]);
        assert!(report.consistent());
    }

    #[test]
    fn classifies_the_star_and_the_triangle() {
        let report = CheckReport::analyze(&Graph::star(3)).unwrap();
        assert!(report.chordal);
        assert!(report.narrow);
        assert!(!report.claw_free);
        assert!(!report.closed);
        assert_eq!(report.claw.as_ref().unwrap().center, "0");

        let report = CheckReport::analyze(&Graph::complete(3)).unwrap();
        assert!(report.closed);
        assert_eq!(report.labeling.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn consistency_check_catches_tampering() {
        let g = Graph::complete(3);
        let mut report = CheckReport::analyze(&g).unwrap();
        report.closed = false;
        assert!(!report.consistent());
    }

    #[test]
    fn labeling_file_round_trip() {
        let g = Graph::parse_edge_list("a b\nb c\n").unwrap();
        let report = label_graph(&g, TieBreak::MinIndex, true).unwrap();
        let text = report.render_text(&g);
        let parsed = parse_labeling_file(&g, &text).unwrap();
        assert_eq!(parsed, report.labeling);
    }

    #[test]
    fn labeling_file_errors() {
        let g = Graph::parse_edge_list("a b\nb c\n").unwrap();
        assert!(matches!(
            parse_labeling_file(&g, "a 1\nb 2\nz 3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_labeling_file(&g, "a 1\nb 2\nc 2\n"),
            Err(Error::NotBijective { .. })
        ));
        assert!(matches!(
            parse_labeling_file(&g, "a x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
