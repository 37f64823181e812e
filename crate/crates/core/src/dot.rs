//! Graphviz export. Up edges are blue, down edges red.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::{LqnError, Result};
use crate::graphs::{enumerate_pms, pm_diagram, to_directed, DirectedView};
use crate::io::format_complex;
use crate::model::{to_adjacency, to_bipartite, NetworkSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotView {
    /// Particles and detectors as an undirected two-layer graph.
    Bipartite,
    /// Merged vertices `w_a`, loops included.
    Directed,
    /// The perfect-matching diagram.
    PmDiagram,
}

impl FromStr for DotView {
    type Err = LqnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bb" | "bipartite" => Ok(DotView::Bipartite),
            "d" | "directed" => Ok(DotView::Directed),
            "pm" | "pm-diagram" => Ok(DotView::PmDiagram),
            other => Err(LqnError::InvalidInput(format!("unknown view {other:?} (expected bb, d or pm)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotRenderOptions {
    pub view: DotView,
    pub show_weights: bool,
    /// Index into the sorted perfect-matching list; its edges are drawn bold.
    pub highlight_pm: Option<usize>,
}

impl Default for DotRenderOptions {
    fn default() -> Self {
        DotRenderOptions { view: DotView::Directed, show_weights: false, highlight_pm: None }
    }
}

fn attrs(color: &str, label: Option<String>, bold: bool) -> String {
    let mut parts = vec![format!("color={color}")];
    if let Some(l) = label {
        parts.push(format!("label=\"{l}\""));
    }
    if bold {
        parts.push("penwidth=3".to_string());
    }
    parts.join(", ")
}

/// Renders `spec` in the requested view. Fails only for the diagram view of
/// a network without perfect matchings or an out-of-range highlight.
pub fn export_dot(spec: &NetworkSpec, opts: &DotRenderOptions) -> Result<String> {
    let adj = to_adjacency(spec);
    let highlight = match opts.highlight_pm {
        None => None,
        Some(k) => {
            let pms = enumerate_pms(&to_bipartite(&adj));
            let count = pms.len();
            Some(pms.into_iter().nth(k).ok_or(LqnError::IndexOutOfRange { what: "perfect matching", index: k + 1, n: count })?)
        }
    };
    let bold = |a: usize, j: usize| highlight.as_ref().is_some_and(|pm| pm.contains(a, j));
    let n = spec.n();
    let mut out = String::new();

    match opts.view {
        DotView::Bipartite => {
            out.push_str("graph G {\n  rankdir=LR;\n");
            let particles: Vec<String> = (1..=n).map(|a| format!("p{a} [label=\"{a}\"];")).collect();
            let detectors: Vec<String> = (1..=n).map(|j| format!("X{j};")).collect();
            writeln!(out, "  {{ rank=same; {} }}", particles.join(" ")).unwrap();
            writeln!(out, "  {{ rank=same; {} }}", detectors.join(" ")).unwrap();
            for e in to_bipartite(&adj).edges() {
                let label = opts.show_weights.then(|| format_complex(e.weight, 3));
                writeln!(
                    out,
                    "  p{} -- X{} [{}];",
                    e.particle + 1,
                    e.detector + 1,
                    attrs(e.spin.dot_color(), label, bold(e.particle, e.detector))
                )
                .unwrap();
            }
        }
        DotView::Directed => {
            out.push_str("digraph G {\n");
            write_digraph(&mut out, &to_directed(&adj), |v| format!("w{}", v + 1), |v| v, opts.show_weights, &bold);
        }
        DotView::PmDiagram => {
            let diag = pm_diagram(&to_directed(&adj))?;
            let rel = diag.relabeling().clone();
            out.push_str("digraph G {\n");
            let label = |v: usize| {
                if rel.is_identity() {
                    format!("w{}", v + 1)
                } else {
                    format!("w{}\\nX{}", v + 1, rel.detector_of_vertex(v) + 1)
                }
            };
            write_digraph(&mut out, diag.view(), label, |v| rel.detector_of_vertex(v), opts.show_weights, &bold);
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn write_digraph(
    out: &mut String,
    view: &DirectedView,
    label: impl Fn(usize) -> String,
    detector: impl Fn(usize) -> usize,
    show_weights: bool,
    bold: &impl Fn(usize, usize) -> bool,
) {
    for v in 0..view.n() {
        writeln!(out, "  w{} [label=\"{}\"];", v + 1, label(v)).unwrap();
    }
    for e in view.edges() {
        let weight = show_weights.then(|| format_complex(e.weight, 3));
        writeln!(
            out,
            "  w{} -> w{} [{}];",
            e.from + 1,
            e.to + 1,
            attrs(e.spin.dot_color(), weight, bold(e.from, detector(e.to)))
        )
        .unwrap();
    }
}
