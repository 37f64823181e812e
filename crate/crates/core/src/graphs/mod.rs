//! Directed-graph view of a network and the perfect-matching machinery built
//! on it.
//!
//! Merging particle `a` and detector `X_a` into one vertex `w_a` turns the
//! balanced bigraph into a digraph whose edge `w_a -> w_j` is the path from
//! particle `a` to detector `X_j`. Once the vertices are labeled so that some
//! perfect matching sits on the loops, every other perfect matching is the
//! diagonal with the edges exchanged along a set of vertex-disjoint
//! elementary cycles.

mod components;
mod cycles;
mod enumerate;
mod matching;

use std::fmt;

use num_complex::Complex64;

use crate::error::{LqnError, Result};
use crate::model::{BipartiteView, ColoredAdjacency};
use crate::partition::Partition;
use crate::spin::Spin;

pub use components::{strongly_connected, strongly_connected_components, weak_components, SccReport};
pub use cycles::elementary_cycles;
pub use enumerate::{enumerate_pms, pm_diagram, relabel_to_loops};
pub use matching::initial_perfect_matching;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: Complex64,
    pub spin: Spin,
}

impl DirectedEdge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{} -{}-> w{}", self.from + 1, self.spin.code(), self.to + 1)
    }
}

/// Digraph on `w_1..w_N`; loops allowed, at most one edge per ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedView {
    n: usize,
    edges: Vec<DirectedEdge>,
    slot: Vec<Option<usize>>,
}

impl DirectedView {
    pub fn from_edges(n: usize, edges: Vec<DirectedEdge>) -> Result<Self> {
        let mut slot = vec![None; n * n];
        for (k, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(LqnError::IndexOutOfRange { what: "vertex", index: e.from.max(e.to) + 1, n });
            }
            if slot[e.from * n + e.to].replace(k).is_some() {
                return Err(LqnError::DuplicateEdge { particle: e.from + 1, detector: e.to + 1 });
            }
        }
        Ok(DirectedView { n, edges, slot })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&DirectedEdge> {
        self.slot[from * self.n + to].map(|k| &self.edges[k])
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.slot[from * self.n + to].is_some()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Sorted successor lists, loops excluded.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            succ[e.from].push(e.to);
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        succ
    }

    /// Edges ending at `v`, its loop included.
    pub fn incoming(&self, v: usize) -> impl Iterator<Item = &DirectedEdge> + '_ {
        self.edges.iter().filter(move |e| e.to == v)
    }

    pub fn to_adjacency(&self) -> ColoredAdjacency {
        let n = self.n;
        let mut weights = vec![Complex64::new(0.0, 0.0); n * n];
        let mut colors = vec![None; n * n];
        for e in &self.edges {
            weights[e.from * n + e.to] = e.weight;
            colors[e.from * n + e.to] = Some(e.spin);
        }
        ColoredAdjacency::from_matrices(n, weights, colors)
            .expect("directed view edges carry nonzero weights")
    }
}

/// Edge `w_a -> w_j` for every nonzero `A_d[a][j]`, loops included, row-major.
pub fn to_directed(adj: &ColoredAdjacency) -> DirectedView {
    let edges = adj
        .entries()
        .map(|(from, to, weight, spin)| DirectedEdge { from, to, weight, spin })
        .collect();
    DirectedView::from_edges(adj.n(), edges).expect("adjacency entries are unique and in range")
}

/// A bijection particle `a -> detector sigma(a)` using only existing edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PerfectMatching {
    assignment: Vec<usize>,
    weights: Vec<Complex64>,
    spins: Vec<Spin>,
}

impl PerfectMatching {
    /// Validates that `assignment` is a permutation supported by `adj`.
    pub fn from_assignment(adj: &ColoredAdjacency, assignment: Vec<usize>) -> Result<Self> {
        let n = adj.n();
        if assignment.len() != n {
            return Err(LqnError::InvalidMatching(format!(
                "assignment has {} entries for n = {n}",
                assignment.len()
            )));
        }
        let mut hit = vec![false; n];
        let mut weights = Vec::with_capacity(n);
        let mut spins = Vec::with_capacity(n);
        for (a, &j) in assignment.iter().enumerate() {
            if j >= n || std::mem::replace(&mut hit[j], true) {
                return Err(LqnError::InvalidMatching(format!("detector X{} used twice or out of range", j + 1)));
            }
            match adj.color(a, j) {
                Some(spin) => {
                    weights.push(adj.weight(a, j));
                    spins.push(spin);
                }
                None => {
                    return Err(LqnError::InvalidMatching(format!("no edge ({}, X{})", a + 1, j + 1)))
                }
            }
        }
        Ok(PerfectMatching { assignment, weights, spins })
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// `sigma(a)` for every particle `a`.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn detector_of(&self, particle: usize) -> usize {
        self.assignment[particle]
    }

    /// `(particle, detector, weight, spin)` in particle order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Complex64, Spin)> + '_ {
        (0..self.n()).map(move |a| (a, self.assignment[a], self.weights[a], self.spins[a]))
    }

    /// Product of the edge weights, multiplied in particle order.
    pub fn weight_product(&self) -> Complex64 {
        self.weights.iter().fold(Complex64::new(1.0, 0.0), |acc, w| acc * w)
    }

    /// `(-1)^inversions` of the assignment.
    pub fn parity(&self) -> i8 {
        permutation_parity(&self.assignment)
    }

    /// Detector-ordered internal states selected by this matching.
    pub fn ket(&self) -> Vec<Spin> {
        let mut ket = vec![Spin::Up; self.n()];
        for (a, &j) in self.assignment.iter().enumerate() {
            ket[j] = self.spins[a];
        }
        ket
    }

    pub fn contains(&self, particle: usize, detector: usize) -> bool {
        self.assignment.get(particle) == Some(&detector)
    }

    /// Number of edges carrying `spin`.
    pub fn count_spin(&self, spin: Spin) -> usize {
        self.spins.iter().filter(|&&s| s == spin).count()
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(a, j)| format!("({},X{})", a + 1, j + 1))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parity of a permutation via cycle decomposition.
pub fn permutation_parity(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Directed cycle `w_{i1} -> ... -> w_{ik} -> w_{i1}`, `k >= 2`, starting at
/// its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryCycle {
    vertices: Vec<usize>,
}

impl ElementaryCycle {
    /// Rotates to canonical form; rejects repeated vertices and `k < 2`.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(LqnError::InvalidInput("elementary cycles need at least two vertices".into()));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(LqnError::InvalidInput("elementary cycle repeats a vertex".into()));
        }
        let min_pos = vertices.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap_or(0);
        vertices.rotate_left(min_pos);
        Ok(ElementaryCycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive `(from, to)` pairs, closing edge included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

impl fmt::Display for ElementaryCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.vertices.iter().map(|v| format!("w{}", v + 1)).collect();
        parts.push(format!("w{}", self.vertices[0] + 1));
        write!(f, "({})", parts.join("->"))
    }
}

/// Detector permutation that moves a chosen perfect matching onto the loops.
/// Vertex `w_v` of the relabeled graph stands for particle `v` and detector
/// `detector_of_vertex[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    detector_of_vertex: Vec<usize>,
    vertex_of_detector: Vec<usize>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Relabeling { detector_of_vertex: (0..n).collect(), vertex_of_detector: (0..n).collect() }
    }

    pub(crate) fn from_matching(pm: &PerfectMatching) -> Self {
        let detector_of_vertex = pm.assignment().to_vec();
        let mut vertex_of_detector = vec![0; detector_of_vertex.len()];
        for (v, &j) in detector_of_vertex.iter().enumerate() {
            vertex_of_detector[j] = v;
        }
        Relabeling { detector_of_vertex, vertex_of_detector }
    }

    pub fn detector_of_vertex(&self, v: usize) -> usize {
        self.detector_of_vertex[v]
    }

    pub fn vertex_of_detector(&self, j: usize) -> usize {
        self.vertex_of_detector[j]
    }

    pub fn is_identity(&self) -> bool {
        self.detector_of_vertex.iter().enumerate().all(|(v, &j)| v == j)
    }
}

/// Loops plus the edges lying on elementary cycles, in loop-labeled vertex
/// coordinates. Exactly the edges that take part in some perfect matching.
#[derive(Debug, Clone, PartialEq)]
pub struct PMDiagram {
    view: DirectedView,
    relabeling: Relabeling,
    removed: Vec<DirectedEdge>,
}

impl PMDiagram {
    pub fn view(&self) -> &DirectedView {
        &self.view
    }

    pub fn n(&self) -> usize {
        self.view.n()
    }

    pub fn relabeling(&self) -> &Relabeling {
        &self.relabeling
    }

    /// Edges of the input digraph that belong to no perfect matching, in the
    /// input's `(particle, detector)` labels.
    pub fn removed_edges(&self) -> &[DirectedEdge] {
        &self.removed
    }

    /// Retained edges as `(particle, detector)` pairs in the input's labels,
    /// sorted.
    pub fn matchable_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .view
            .edges()
            .iter()
            .map(|e| (e.from, self.relabeling.detector_of_vertex(e.to)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Maps a vertex partition to the corresponding detector partition.
    pub fn to_detectors(&self, p: &Partition) -> Partition {
        p.map(|v| self.relabeling.detector_of_vertex(v))
    }
}

/// Builds a bipartite view from a directed one (same edge set).
pub fn bipartite_of(dir: &DirectedView) -> BipartiteView {
    crate::model::to_bipartite(&dir.to_adjacency())
}
