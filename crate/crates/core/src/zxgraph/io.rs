// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{NodeKind, ZxDiagram, ZxError};
use crate::phase::Phase;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re: f64,
    pub im: f64,
}

impl Default for ScalarJson {
    fn default() -> Self {
        ScalarJson { re: 1.0, im: 0.0 }
    }
}

/// On-disk diagram document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub scalar: ScalarJson,
}

impl From<&ZxDiagram> for DiagramJson {
    fn from(d: &ZxDiagram) -> Self {
        let nodes = d
            .nodes()
            .map(|n| {
                let (kind, phase, pos) = match n.kind {
                    NodeKind::Z(p) => ("Z", Some(p), None),
                    NodeKind::X(p) => ("X", Some(p), None),
                    NodeKind::H => ("H", None, None),
                    NodeKind::In(p) => ("in", None, Some(p)),
                    NodeKind::Out(p) => ("out", None, Some(p)),
                };
                NodeJson { id: n.id, kind: kind.to_string(), phase, pos }
            })
            .collect();
        let edges = d.canonical_edges().into_iter().map(|(a, b)| [a, b]).collect();
        DiagramJson { nodes, edges, scalar: ScalarJson { re: d.scalar().re, im: d.scalar().im } }
    }
}

impl TryFrom<DiagramJson> for ZxDiagram {
    type Error = ZxError;

    fn try_from(doc: DiagramJson) -> Result<Self, ZxError> {
        let mut d = ZxDiagram::new();
        for n in &doc.nodes {
            let need_pos = || n.pos.ok_or_else(|| ZxError::Json(format!("node {}: boundary needs \"pos\"", n.id)));
            let kind = match n.kind.as_str() {
                "Z" => NodeKind::Z(n.phase.unwrap_or_default()),
                "X" => NodeKind::X(n.phase.unwrap_or_default()),
                "H" => NodeKind::H,
                "in" => NodeKind::In(need_pos()?),
                "out" => NodeKind::Out(need_pos()?),
                other => return Err(ZxError::Json(format!("node {}: unknown kind {other:?}", n.id))),
            };
            if !d.add_node_with_id(n.id, kind) {
                return Err(ZxError::Json(format!("duplicate node id {}", n.id)));
            }
        }
        for &[a, b] in &doc.edges {
            if !d.contains(a) || !d.contains(b) {
                return Err(ZxError::Json(format!("edge [{a}, {b}] references a missing node")));
            }
            d.add_edge(a, b);
        }
        d.set_scalar(C64::new(doc.scalar.re, doc.scalar.im));
        d.validate()?;
        Ok(d)
    }
}

pub fn import_json(text: &str) -> Result<ZxDiagram, ZxError> {
    let doc: DiagramJson = serde_json::from_str(text).map_err(|e| ZxError::Json(e.to_string()))?;
    ZxDiagram::try_from(doc)
}

pub fn export(d: &ZxDiagram, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&DiagramJson::from(d)).expect("diagram serializes");
            s.push('\n');
            s
        }
        ExportFormat::Dot => to_dot(d),
    }
}

fn to_dot(d: &ZxDiagram) -> String {
    let mut s = String::from("digraph zx {\n  edge [dir=none];\n  node [fontsize=10];\n");
    for n in d.nodes() {
        let attrs = match n.kind {
            NodeKind::Z(p) => format!("label=\"{}\", shape=circle, style=filled, fillcolor=green", phase_label(p)),
            NodeKind::X(p) => format!("label=\"{}\", shape=circle, style=filled, fillcolor=red", phase_label(p)),
            NodeKind::H => "label=\"H\", shape=box, style=filled, fillcolor=yellow".to_string(),
            NodeKind::In(p) => format!("label=\"in{p}\", shape=plaintext"),
            NodeKind::Out(p) => format!("label=\"out{p}\", shape=plaintext"),
        };
        let _ = writeln!(s, "  n{} [{attrs}];", n.id);
    }
    for (a, b) in d.canonical_edges() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    let sc = d.scalar();
    if sc != C64::new(1.0, 0.0) {
        let _ = writeln!(s, "  label=\"scalar = {} + {}i\";", sc.re, sc.im);
    }
    s.push_str("}\n");
    s
}

fn phase_label(p: Phase) -> String {
    if p.is_zero() {
        String::new()
    } else if p.denom() == 1 {
        "π".to_string()
    } else if p.numer() == 1 {
        format!("π/{}", p.denom())
    } else {
        format!("{}π/{}", p.numer(), p.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zxgraph::eval_diagram;

    #[test]
    fn one_wire_json() {
        let s = export(&ZxDiagram::identity(1), ExportFormat::Json);
        let doc: DiagramJson = serde_json::from_str(&s).unwrap();
        assert_eq!(doc.nodes.len(), 2);
        assert_eq!(doc.edges, vec![[0, 1]]);
        assert!(s.contains("\"kind\": \"in\"") && s.contains("\"pos\": 0"));
        assert!(!s.contains("phase"));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let mut d = ZxDiagram::identity(2);
        let z = d.add_node(NodeKind::Z(Phase::new(3, 4).unwrap()));
        let h = d.add_node(NodeKind::H);
        d.add_edge(z, h);
        d.add_edge(h, z);
        d.set_scalar(C64::new(0.5, -0.25));
        let s = export(&d, ExportFormat::Json);
        let back = import_json(&s).unwrap();
        assert_eq!(export(&back, ExportFormat::Json), s);
        assert!(back.structurally_eq(&d));
        let (a, b) = (eval_diagram::<f64>(&d).unwrap(), eval_diagram::<f64>(&back).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn import_errors() {
        assert!(matches!(import_json("{"), Err(ZxError::Json(_))));
        let missing = r#"{"nodes":[{"id":0,"kind":"in","pos":0}],"edges":[[0,5]]}"#;
        assert!(matches!(import_json(missing), Err(ZxError::Json(_))));
        let unknown = r#"{"nodes":[{"id":0,"kind":"W"}],"edges":[]}"#;
        assert!(matches!(import_json(unknown), Err(ZxError::Json(_))));
        let nopos = r#"{"nodes":[{"id":0,"kind":"in"}],"edges":[]}"#;
        assert!(matches!(import_json(nopos), Err(ZxError::Json(_))));
        let dangling = r#"{"nodes":[{"id":0,"kind":"in","pos":0}],"edges":[]}"#;
        assert!(matches!(import_json(dangling), Err(ZxError::Malformed(_))));
    }

    #[test]
    fn scalar_defaults_to_one() {
        let d = import_json(r#"{"nodes":[{"id":3,"kind":"Z","phase":"1/2"}],"edges":[]}"#).unwrap();
        assert_eq!(d.scalar(), C64::new(1.0, 0.0));
        assert_eq!(d.kind(3), Some(NodeKind::Z(Phase::new(1, 2).unwrap())));
        assert_eq!(d.next_id(), 4);
    }

    #[test]
    fn dot_styling() {
        let mut d = ZxDiagram::identity(1);
        d.add_node(NodeKind::H);
        let z = d.add_node(NodeKind::Z(Phase::pi()));
        let x = d.add_node(NodeKind::X(Phase::zero()));
        d.add_edge(z, x);
        let s = export(&d, ExportFormat::Dot);
        assert!(s.starts_with("digraph"));
        assert!(s.contains("edge [dir=none]"));
        assert!(s.contains("fillcolor=green") && s.contains("fillcolor=red"));
        assert!(s.contains("shape=box, style=filled, fillcolor=yellow"));
        assert!(s.contains("n3 -> n4;"));
    }
}
