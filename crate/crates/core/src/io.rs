//! JSON formats for networks, states and separability reports.
//!
//! Network file:
//!
//! ```json
//! {"version": 1, "n": 2, "statistics": "boson", "mode": "strict",
//!  "edges": [{"from": 1, "to": 1, "amp": {"re": 0.6, "im": 0.0}, "color": "up"},
//!            {"from": 1, "to": 2, "amp": {"r": 0.8, "theta": 1.5708}, "color": "down"}]}
//! ```
//!
//! Indices are 1-based, `theta` is in radians, `version` and `mode` may be
//! omitted (`mode` defaults to strict).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::entanglement::{NumericSource, SeparabilityReport};
use crate::error::{LqnError, Result};
use crate::model::{validate_network, NetworkSpec, NormalizationMode, Statistics, Transition};
use crate::partition::Partition;
use crate::spin::Spin;
use crate::states::{Ket, NoBunchState};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum AmpRepr {
    Cartesian { re: f64, im: f64 },
    Polar { r: f64, theta: f64 },
}

impl AmpRepr {
    fn value(self) -> Complex64 {
        match self {
            AmpRepr::Cartesian { re, im } => Complex64::new(re, im),
            AmpRepr::Polar { r, theta } => Complex64::from_polar(r, theta),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRepr {
    from: usize,
    to: usize,
    amp: AmpRepr,
    color: Spin,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    version: Option<u32>,
    n: usize,
    statistics: Statistics,
    #[serde(default = "default_mode")]
    mode: NormalizationMode,
    edges: Vec<EdgeRepr>,
}

fn default_mode() -> NormalizationMode {
    NormalizationMode::Strict
}

fn parse_error(e: serde_json::Error) -> LqnError {
    LqnError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn one_based(what: &'static str, index: usize, n: usize) -> Result<usize> {
    if index == 0 || index > n {
        return Err(LqnError::IndexOutOfRange { what, index, n });
    }
    Ok(index - 1)
}

/// Parses and validates a network file with tolerance `tol`.
pub fn parse_network_with_tol(text: &str, tol: f64) -> Result<NetworkSpec> {
    let repr: NetworkRepr = serde_json::from_str(text).map_err(parse_error)?;
    if let Some(v) = repr.version {
        if v != FORMAT_VERSION {
            return Err(LqnError::InvalidInput(format!("unsupported format version {v}")));
        }
    }
    let n = repr.n;
    let transitions = repr
        .edges
        .iter()
        .map(|e| {
            Ok(Transition::new(
                one_based("particle", e.from, n)?,
                one_based("detector", e.to, n)?,
                e.amp.value(),
                e.color,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_network(n, repr.statistics, repr.mode, transitions, tol)
}

/// Parses and validates a network file with the default tolerance.
pub fn parse_network(text: &str) -> Result<NetworkSpec> {
    parse_network_with_tol(text, crate::model::DEFAULT_TOL)
}

/// Pretty JSON; amplitudes in Cartesian form, edges in stored order.
pub fn serialize_network(spec: &NetworkSpec) -> String {
    let repr = NetworkRepr {
        version: Some(FORMAT_VERSION),
        n: spec.n(),
        statistics: spec.statistics(),
        mode: spec.mode(),
        edges: spec
            .transitions()
            .iter()
            .map(|t| EdgeRepr {
                from: t.particle + 1,
                to: t.detector + 1,
                amp: AmpRepr::Cartesian { re: t.amplitude.re, im: t.amplitude.im },
                color: t.spin,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&repr).expect("network serializes")
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// State as JSON, terms sorted by ket.
pub fn state_to_json(state: &NoBunchState) -> Value {
    let terms: Vec<Value> = state
        .terms()
        .map(|(ket, amp)| json!({ "ket": ket.codes(), "amp": complex_json(*amp) }))
        .collect();
    json!({
        "n": state.n(),
        "normalized": state.is_normalized(),
        "postselect_probability": state.postselect_probability(),
        "terms": terms,
    })
}

pub fn serialize_state(state: &NoBunchState) -> String {
    serde_json::to_string_pretty(&state_to_json(state)).expect("state serializes")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    ket: String,
    amp: AmpRepr,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRepr {
    n: usize,
    #[serde(default)]
    #[allow(dead_code)]
    normalized: bool,
    #[serde(default)]
    #[allow(dead_code)]
    postselect_probability: Option<f64>,
    terms: Vec<TermRepr>,
}

/// Reads the terms of a state file. The result is unnormalized.
pub fn parse_state(text: &str) -> Result<NoBunchState> {
    let repr: StateRepr = serde_json::from_str(text).map_err(parse_error)?;
    let terms = repr
        .terms
        .into_iter()
        .map(|t| {
            let ket = Ket::parse(&t.ket).ok_or_else(|| LqnError::InvalidInput(format!("bad ket {:?}", t.ket)))?;
            Ok((ket, t.amp.value()))
        })
        .collect::<Result<Vec<_>>>()?;
    NoBunchState::from_terms(repr.n, terms)
}

fn partition_json(p: &Partition) -> Value {
    json!({ "blocks": p.one_based(), "label": p.to_string() })
}

/// Report as JSON; vertices and detectors are 1-based.
pub fn report_to_json(report: &SeparabilityReport) -> Value {
    let rel = report.diagram.relabeling();
    let lemma1: Vec<Value> = report
        .lemma1_vertices
        .iter()
        .map(|&(v, s)| json!({ "vertex": v + 1, "detector": rel.detector_of_vertex(v) + 1, "color": s }))
        .collect();
    let removed: Vec<Value> =
        report.diagram.removed_edges().iter().map(|e| json!({ "from": e.from + 1, "to": e.to + 1 })).collect();
    let violations: Vec<Value> = report
        .theorem2
        .violations
        .iter()
        .map(|e| json!({ "from": e.from + 1, "to": rel.detector_of_vertex(e.to) + 1 }))
        .collect();
    let numeric_source = match report.numeric_source {
        None => Value::Null,
        Some(NumericSource::Network) => json!("network"),
        Some(NumericSource::Generic { seed }) => json!({ "generic_seed": seed }),
    };
    json!({
        "n": report.n,
        "removed_edges": removed,
        "lemma1_vertices": lemma1,
        "lemma2_partition": partition_json(&report.lemma2_detectors),
        "structural_partition": partition_json(&report.structural_partition),
        "theorem1": {
            "color_condition_ok": report.theorem1.color_condition_ok,
            "strongly_connected": report.theorem1.strongly_connected,
            "verdict": report.theorem1.verdict.as_str(),
        },
        "theorem2": {
            "optimal": report.theorem2.optimal,
            "red_edge_count": report.theorem2.red_edge_count,
            "source": report.theorem2.source.map(|v| v + 1),
            "violations": violations,
            "messages": report.theorem2.messages,
        },
        "numeric_source": numeric_source,
        "numeric_finest_partition": report.numeric_finest_partition.as_ref().map(partition_json),
    })
}

/// `a+bi` with `digits` decimals, dropping a zero part.
pub fn format_complex(z: Complex64, digits: usize) -> String {
    let eps = 0.5 * 10f64.powi(-(digits as i32));
    let (re, im) = (if z.re.abs() < eps { 0.0 } else { z.re }, if z.im.abs() < eps { 0.0 } else { z.im });
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re:.digits$}"),
        (true, false) => format!("{im:.digits$}i"),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{re:.digits$}{sign}{:.digits$}i", im.abs())
        }
    }
}
