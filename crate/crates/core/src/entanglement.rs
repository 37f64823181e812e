//! Entanglement criteria: structural ones read off the PM diagram, numerical
//! ones computed from the assembled state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{LqnError, Result};
use crate::graphs::{pm_diagram, strongly_connected, to_directed, weak_components, DirectedEdge, PMDiagram};
use crate::model::{to_adjacency, NetworkSpec};
use crate::partition::Partition;
use crate::spin::Spin;
use crate::states::{compute_state, normalize, Ket, NoBunchState, ORACLE_MAX_N, ZERO_NORM};

/// Default relative singular-value cutoff.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Largest `n` for which [`finest_partition`] searches cuts.
pub const FINEST_MAX_N: usize = ORACLE_MAX_N;

/// Vertices whose incoming edges (loop included) all share one color, so the
/// matching detector always ends in that state.
pub fn lemma1_separable_vertices(diag: &PMDiagram) -> Vec<(usize, Spin)> {
    (0..diag.n())
        .filter_map(|v| {
            let mut colors = diag.view().incoming(v).map(|e| e.spin);
            let first = colors.next()?;
            colors.all(|s| s == first).then_some((v, first))
        })
        .collect()
}

/// Weak components of the diagram: the state factorizes across them.
pub fn lemma2_partition(diag: &PMDiagram) -> Partition {
    weak_components(diag)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    MayBeGenuine,
    CannotBeGenuine,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MayBeGenuine => "may_be_genuine",
            Verdict::CannotBeGenuine => "cannot_be_genuine",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Report {
    /// Per vertex: incoming edges carry both colors.
    pub color_condition_ok: Vec<bool>,
    pub strongly_connected: bool,
    pub verdict: Verdict,
}

/// Necessary conditions for genuine multipartite entanglement: two incoming
/// colors at every vertex and a strongly connected diagram.
pub fn theorem1_check(diag: &PMDiagram) -> Theorem1Report {
    let color_condition_ok: Vec<bool> = (0..diag.n())
        .map(|v| {
            let incoming: Vec<Spin> = diag.view().incoming(v).map(|e| e.spin).collect();
            incoming.contains(&Spin::Up) && incoming.contains(&Spin::Down)
        })
        .collect();
    let strongly_connected = strongly_connected(diag).strongly_connected;
    let verdict = if strongly_connected && color_condition_ok.iter().all(|&ok| ok) {
        Verdict::MayBeGenuine
    } else {
        Verdict::CannotBeGenuine
    };
    Theorem1Report { color_condition_ok, strongly_connected, verdict }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem2Report {
    pub optimal: bool,
    pub red_edge_count: usize,
    /// Vertex with the most outgoing red edges (smallest on ties).
    pub source: Option<usize>,
    /// Red edges not leaving `source`.
    pub violations: Vec<DirectedEdge>,
    pub messages: Vec<String>,
}

/// A diagram optimal for the `N`-partite W state has exactly `N` red edges,
/// all leaving one vertex.
pub fn theorem2_w_optimal_check(diag: &PMDiagram) -> Theorem2Report {
    let n = diag.n();
    let red: Vec<&DirectedEdge> = diag.view().edges().iter().filter(|e| e.spin == Spin::Down).collect();
    let mut out_count = vec![0usize; n];
    for e in &red {
        out_count[e.from] += 1;
    }
    let source = (0..n).filter(|&v| out_count[v] > 0).max_by_key(|&v| (out_count[v], std::cmp::Reverse(v)));
    let violations: Vec<DirectedEdge> = red.iter().filter(|e| Some(e.from) != source).map(|e| **e).collect();

    let mut messages = Vec::new();
    if red.len() != n {
        messages.push(format!("{} red edges, expected {n}", red.len()));
    }
    for e in &violations {
        messages.push(format!("red edge {e} does not leave the common source"));
    }
    Theorem2Report { optimal: messages.is_empty(), red_edge_count: red.len(), source, violations, messages }
}

/// A nonempty proper subset `S` of the detectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    subset: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, mut subset: Vec<usize>) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&j| j >= n) {
            return Err(LqnError::IndexOutOfRange { what: "detector", index: bad + 1, n });
        }
        if subset.is_empty() || subset.len() == n {
            return Err(LqnError::InvalidInput("a bipartition needs a nonempty proper subset".into()));
        }
        Ok(Bipartition { n, subset })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|j| !self.subset.contains(j)).collect()
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition { n: self.n, subset: self.complement() }
    }
}

/// Rank of the `S x S̄` matricization, counting singular values above
/// `tol * sigma_max`. Zero for the zero state.
pub fn schmidt_rank(state: &NoBunchState, cut: &Bipartition, tol: f64) -> Result<usize> {
    if state.n() != cut.n {
        return Err(LqnError::DimensionMismatch { expected: state.n(), got: cut.n });
    }
    Ok(rank_of_cut(state.n(), &state.to_dense(), &cut.subset, tol))
}

fn rank_of_cut(n: usize, dense: &[Complex64], subset: &[usize], tol: f64) -> usize {
    let rest: Vec<usize> = (0..n).filter(|j| !subset.contains(j)).collect();
    let bits = |idx: usize, positions: &[usize]| {
        positions.iter().fold(0usize, |acc, &j| (acc << 1) | ((idx >> (n - 1 - j)) & 1))
    };
    let mut m = DMatrix::<Complex64>::zeros(1 << subset.len(), 1 << rest.len());
    for (idx, amp) in dense.iter().enumerate() {
        if amp.norm_sqr() > 0.0 {
            m[(bits(idx, subset), bits(idx, &rest))] = *amp;
        }
    }
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Finest product partition of the detectors: blocks are split along the
/// first rank-1 cut found (smallest side first) until none splits.
pub fn finest_partition(state: &NoBunchState, tol: f64) -> Result<Partition> {
    let n = state.n();
    if n > FINEST_MAX_N {
        return Err(LqnError::TooLarge { n, limit: FINEST_MAX_N });
    }
    if state.norm_sqr().sqrt() < ZERO_NORM {
        return Err(LqnError::ZeroState);
    }
    let dense = state.to_dense();
    let mut todo = vec![(0..n).collect::<Vec<usize>>()];
    let mut done = Vec::new();
    while let Some(block) = todo.pop() {
        match split_block(n, &dense, &block, tol) {
            Some((part, rest)) => {
                todo.push(part);
                todo.push(rest);
            }
            None => done.push(block),
        }
    }
    Ok(Partition::new(done))
}

fn split_block(n: usize, dense: &[Complex64], block: &[usize], tol: f64) -> Option<(Vec<usize>, Vec<usize>)> {
    for size in 1..=block.len() / 2 {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let part: Vec<usize> = pick.iter().map(|&i| block[i]).collect();
            if rank_of_cut(n, dense, &part, tol) == 1 {
                let rest = block.iter().copied().filter(|j| !part.contains(j)).collect();
                return Some((part, rest));
            }
            if !next_combination(&mut pick, block.len()) {
                break;
            }
        }
    }
    None
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let Some(i) = (0..k).rev().find(|&i| pick[i] < n - k + i) else {
        return false;
    };
    pick[i] += 1;
    for j in i + 1..k {
        pick[j] = pick[j - 1] + 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrence {
    /// `2|ad - bc|` of the normalized state.
    pub normalized: f64,
    /// `2|ad - bc|` of the state as given.
    pub unnormalized: f64,
    /// `4|ad - bc|` of the state as given. For the beam-splitter network this
    /// is `4|a1 a2 b1 b2|`.
    pub paper_convention: f64,
}

/// Two-detector concurrence of `a|uu> + b|ud> + c|du> + d|dd>`.
pub fn concurrence2(state: &NoBunchState) -> Result<Concurrence> {
    if state.n() != 2 {
        return Err(LqnError::DimensionMismatch { expected: 2, got: state.n() });
    }
    let det = |s: &NoBunchState| {
        let amp = |k: &str| s.amplitude(&Ket::parse(k).expect("valid ket"));
        (amp("uu") * amp("dd") - amp("ud") * amp("du")).norm()
    };
    let raw = det(state);
    let normalized = 2.0 * det(&normalize(state)?);
    Ok(Concurrence { normalized, unnormalized: 2.0 * raw, paper_convention: 4.0 * raw })
}

/// Where the numerical part of [`analyze`] takes its amplitudes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericSource {
    /// The network's own amplitudes.
    Network,
    /// Generic amplitudes drawn from a seeded generator.
    Generic { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub n: usize,
    pub diagram: PMDiagram,
    /// `(vertex, forced color)` in diagram coordinates.
    pub lemma1_vertices: Vec<(usize, Spin)>,
    /// Same vertices as detector indices.
    pub lemma1_detectors: Vec<(usize, Spin)>,
    /// Weak components in diagram coordinates.
    pub lemma2_partition: Partition,
    /// Weak components as detector blocks.
    pub lemma2_detectors: Partition,
    /// Lemma 2 blocks with Lemma 1 detectors split off, as detector blocks.
    pub structural_partition: Partition,
    pub theorem1: Theorem1Report,
    pub theorem2: Theorem2Report,
    pub numeric_source: Option<NumericSource>,
    pub numeric_finest_partition: Option<Partition>,
}

impl SeparabilityReport {
    pub fn is_genuinely_entangled(&self) -> Option<bool> {
        self.numeric_finest_partition.as_ref().map(|p| p.len() == 1 && self.n > 1)
    }
}

/// Structural analysis of `spec`, plus the numerical finest partition when
/// `numeric` is given.
pub fn analyze(spec: &NetworkSpec, numeric: Option<NumericSource>, tol: f64) -> Result<SeparabilityReport> {
    let diagram = pm_diagram(&to_directed(&to_adjacency(spec)))?;
    let rel = diagram.relabeling().clone();
    let lemma1_vertices = lemma1_separable_vertices(&diagram);
    let lemma1_detectors = lemma1_vertices.iter().map(|&(v, s)| (rel.detector_of_vertex(v), s)).collect();
    let lemma2_partition = lemma2_partition(&diagram);
    let lemma2_detectors = diagram.to_detectors(&lemma2_partition);

    let forced: Vec<usize> = lemma1_vertices.iter().map(|&(v, _)| v).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for block in lemma2_partition.blocks() {
        let (single, rest): (Vec<usize>, Vec<usize>) = block.iter().partition(|v| forced.contains(v));
        blocks.extend(single.into_iter().map(|v| vec![v]));
        blocks.push(rest);
    }
    let structural_partition = diagram.to_detectors(&Partition::new(blocks));

    let theorem1 = theorem1_check(&diagram);
    let theorem2 = theorem2_w_optimal_check(&diagram);

    let numeric_finest_partition = match numeric {
        None => None,
        Some(source) => {
            let state = match source {
                NumericSource::Network => compute_state(spec)?,
                NumericSource::Generic { seed } => {
                    compute_state(&spec.with_generic_amplitudes(&mut ChaCha8Rng::seed_from_u64(seed)))?
                }
            };
            Some(finest_partition(&normalize(&state)?, tol)?)
        }
    };

    Ok(SeparabilityReport {
        n: spec.n(),
        diagram,
        lemma1_vertices,
        lemma1_detectors,
        lemma2_partition,
        lemma2_detectors,
        structural_partition,
        theorem1,
        theorem2,
        numeric_source: numeric,
        numeric_finest_partition,
    })
}
