//! Network data model: particles, detectors and the colored weighted
//! transitions between them, plus the matrix and bipartite views of a network.
//!
//! Indices are 0-based in this API. File formats and human-readable output
//! use 1-based labels (`1..N` for particles, `X1..XN` for detectors).

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LqnError, Result};
use crate::spin::Spin;

/// Default absolute tolerance for comparisons of O(1) quantities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance under which a spin component of a general channel counts as absent.
pub const SPIN_COMPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    /// Sign acquired by the amplitudes when two particles are exchanged.
    pub fn exchange_sign(self) -> i8 {
        match self {
            Statistics::Boson => 1,
            Statistics::Fermion => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationMode {
    /// Every row must satisfy `sum_j |T_aj|^2 = 1`.
    Strict,
    /// Row normalization is not checked.
    Design,
}

/// A single path `particle -> detector` with its amplitude and the internal
/// state the particle carries on arrival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub particle: usize,
    pub detector: usize,
    pub amplitude: Complex64,
    pub spin: Spin,
}

impl Transition {
    pub fn new(particle: usize, detector: usize, amplitude: Complex64, spin: Spin) -> Self {
        Transition { particle, detector, amplitude, spin }
    }
}

/// A validated linear quantum network with `n` particles and `n` detectors.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    n: usize,
    statistics: Statistics,
    mode: NormalizationMode,
    transitions: Vec<Transition>,
}

impl NetworkSpec {
    /// Validates with the default tolerance. See [`validate_network`].
    pub fn new(
        n: usize,
        statistics: Statistics,
        mode: NormalizationMode,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        validate_network(n, statistics, mode, transitions, DEFAULT_TOL)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }

    /// Squared norm of each row.
    pub fn row_norms(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for t in &self.transitions {
            sums[t.particle] += t.amplitude.norm_sqr();
        }
        sums
    }

    /// Same edges and colors with amplitudes replaced by `f(transition)`.
    /// The result is revalidated under `mode`.
    pub fn map_amplitudes<F>(&self, mode: NormalizationMode, mut f: F) -> Result<NetworkSpec>
    where
        F: FnMut(&Transition) -> Complex64,
    {
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition { amplitude: f(t), ..*t })
            .collect();
        NetworkSpec::new(self.n, self.statistics, mode, transitions)
    }

    /// Same structure with "generic" amplitudes: uniformly random phases,
    /// magnitudes uniform in `[0.3, 1]`, then each row normalized.
    pub fn with_generic_amplitudes<R: Rng + ?Sized>(&self, rng: &mut R) -> NetworkSpec {
        let raw: Vec<Complex64> = self
            .transitions
            .iter()
            .map(|_| {
                let r = rng.gen_range(0.3..=1.0);
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar(r, theta)
            })
            .collect();
        let mut row = vec![0.0; self.n];
        for (t, a) in self.transitions.iter().zip(&raw) {
            row[t.particle] += a.norm_sqr();
        }
        let transitions = self
            .transitions
            .iter()
            .zip(&raw)
            .map(|(t, a)| Transition { amplitude: a / row[t.particle].sqrt(), ..*t })
            .collect();
        NetworkSpec {
            n: self.n,
            statistics: self.statistics,
            mode: NormalizationMode::Strict,
            transitions,
        }
    }

    /// Drops the listed `(particle, detector)` edges.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Result<NetworkSpec> {
        let transitions = self
            .transitions
            .iter()
            .filter(|t| !edges.contains(&(t.particle, t.detector)))
            .copied()
            .collect();
        NetworkSpec::new(self.n, self.statistics, NormalizationMode::Design, transitions)
    }
}

/// Checks indices, edge uniqueness, nonzero amplitudes and, in strict mode,
/// row normalization within `tol`.
pub fn validate_network(
    n: usize,
    statistics: Statistics,
    mode: NormalizationMode,
    transitions: Vec<Transition>,
    tol: f64,
) -> Result<NetworkSpec> {
    if n == 0 {
        return Err(LqnError::TooSmall { n, min: 1 });
    }
    let mut seen = vec![false; n * n];
    for t in &transitions {
        if t.particle >= n {
            return Err(LqnError::IndexOutOfRange { what: "particle", index: t.particle + 1, n });
        }
        if t.detector >= n {
            return Err(LqnError::IndexOutOfRange { what: "detector", index: t.detector + 1, n });
        }
        let slot = &mut seen[t.particle * n + t.detector];
        if *slot {
            return Err(LqnError::DuplicateEdge {
                particle: t.particle + 1,
                detector: t.detector + 1,
            });
        }
        *slot = true;
        if t.amplitude == Complex64::new(0.0, 0.0) || !t.amplitude.is_finite() {
            return Err(LqnError::ZeroAmplitude {
                particle: t.particle + 1,
                detector: t.detector + 1,
            });
        }
    }
    let spec = NetworkSpec { n, statistics, mode, transitions };
    if mode == NormalizationMode::Strict {
        for (row, sum) in spec.row_norms().into_iter().enumerate() {
            if (sum - 1.0).abs() > tol {
                return Err(LqnError::RowNotNormalized { row: row + 1, sum });
            }
        }
    }
    Ok(spec)
}

/// Returns `Strict` when every row is normalized within `tol`, else `Design`.
pub fn detect_mode(n: usize, transitions: &[Transition], tol: f64) -> NormalizationMode {
    let mut sums = vec![0.0; n];
    for t in transitions {
        if t.particle < n {
            sums[t.particle] += t.amplitude.norm_sqr();
        }
    }
    if sums.iter().all(|s| (s - 1.0).abs() <= tol) {
        NormalizationMode::Strict
    } else {
        NormalizationMode::Design
    }
}

/// Weight matrix `A_d` and color matrix `C_d`, row = particle, column = detector.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredAdjacency {
    n: usize,
    weights: Vec<Complex64>,
    colors: Vec<Option<Spin>>,
}

impl ColoredAdjacency {
    /// Builds from dense matrices; nonzero weights and present colors must coincide.
    pub fn from_matrices(
        n: usize,
        weights: Vec<Complex64>,
        colors: Vec<Option<Spin>>,
    ) -> Result<Self> {
        if weights.len() != n * n {
            return Err(LqnError::DimensionMismatch { expected: n * n, got: weights.len() });
        }
        if colors.len() != n * n {
            return Err(LqnError::DimensionMismatch { expected: n * n, got: colors.len() });
        }
        for (k, (w, c)) in weights.iter().zip(&colors).enumerate() {
            if (*w != Complex64::new(0.0, 0.0)) != c.is_some() {
                return Err(LqnError::InvalidInput(format!(
                    "weight and color sparsity differ at ({}, X{})",
                    k / n + 1,
                    k % n + 1
                )));
            }
        }
        Ok(ColoredAdjacency { n, weights, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, particle: usize, detector: usize) -> Complex64 {
        self.weights[particle * self.n + detector]
    }

    pub fn color(&self, particle: usize, detector: usize) -> Option<Spin> {
        self.colors[particle * self.n + detector]
    }

    pub fn has_edge(&self, particle: usize, detector: usize) -> bool {
        self.colors[particle * self.n + detector].is_some()
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn colors(&self) -> &[Option<Spin>] {
        &self.colors
    }

    pub fn edge_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64, Spin)> + '_ {
        let n = self.n;
        self.colors.iter().enumerate().filter_map(move |(k, c)| {
            c.map(|spin| (k / n, k % n, self.weights[k], spin))
        })
    }

    /// Back to a network (row-major transition order).
    pub fn to_network(
        &self,
        statistics: Statistics,
        mode: NormalizationMode,
    ) -> Result<NetworkSpec> {
        let transitions = self
            .entries()
            .map(|(a, j, w, s)| Transition::new(a, j, w, s))
            .collect();
        NetworkSpec::new(self.n, statistics, mode, transitions)
    }
}

/// `A_d[a][j] = T_aj`, `C_d[a][j] = r^a_j`, zero / absent elsewhere.
pub fn to_adjacency(spec: &NetworkSpec) -> ColoredAdjacency {
    let n = spec.n;
    let mut weights = vec![Complex64::new(0.0, 0.0); n * n];
    let mut colors = vec![None; n * n];
    for t in &spec.transitions {
        weights[t.particle * n + t.detector] = t.amplitude;
        colors[t.particle * n + t.detector] = Some(t.spin);
    }
    ColoredAdjacency { n, weights, colors }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteEdge {
    pub particle: usize,
    pub detector: usize,
    pub weight: Complex64,
    pub spin: Spin,
}

/// Balanced bigraph with particles on the left and detectors on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteView {
    n: usize,
    edges: Vec<BipartiteEdge>,
}

impl BipartiteView {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[BipartiteEdge] {
        &self.edges
    }

    /// Neighbors of each particle, as indices into [`edges`](Self::edges).
    pub fn particle_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.particle].push(k);
        }
        adj
    }

    pub fn to_adjacency(&self) -> ColoredAdjacency {
        let n = self.n;
        let mut weights = vec![Complex64::new(0.0, 0.0); n * n];
        let mut colors = vec![None; n * n];
        for e in &self.edges {
            weights[e.particle * n + e.detector] = e.weight;
            colors[e.particle * n + e.detector] = Some(e.spin);
        }
        ColoredAdjacency { n, weights, colors }
    }
}

/// One undirected edge `(a, X_j)` per nonzero entry of `A_d`, row-major.
pub fn to_bipartite(adj: &ColoredAdjacency) -> BipartiteView {
    let edges = adj
        .entries()
        .map(|(particle, detector, weight, spin)| BipartiteEdge { particle, detector, weight, spin })
        .collect();
    BipartiteView { n: adj.n, edges }
}

/// Swaps rows `a` and `b` of both matrices. The returned sign is the factor
/// the physical state picks up: `+1` for bosons, `-1` for fermions.
pub fn exchange_rows(
    adj: &ColoredAdjacency,
    a: usize,
    b: usize,
    statistics: Statistics,
) -> Result<(ColoredAdjacency, i8)> {
    let n = adj.n;
    for idx in [a, b] {
        if idx >= n {
            return Err(LqnError::IndexOutOfRange { what: "row", index: idx + 1, n });
        }
    }
    if a == b {
        return Err(LqnError::InvalidInput("exchange_rows needs two distinct rows".into()));
    }
    let mut out = adj.clone();
    for j in 0..n {
        out.weights.swap(a * n + j, b * n + j);
        out.colors.swap(a * n + j, b * n + j);
    }
    Ok((out, statistics.exchange_sign()))
}

/// `true` iff `A_d A_d^† = I` entrywise within `tol`.
pub fn is_unitary(adj: &ColoredAdjacency, tol: f64) -> bool {
    let n = adj.n;
    for r in 0..n {
        for s in 0..n {
            let dot: Complex64 = (0..n).map(|k| adj.weight(r, k) * adj.weight(s, k).conj()).sum();
            let expected = if r == s { 1.0 } else { 0.0 };
            if (dot - expected).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// A path whose arrival state may be any combination of up and down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub particle: usize,
    pub detector: usize,
    pub amp_up: Complex64,
    pub amp_down: Complex64,
}

/// The most general single-particle linear map `|a> -> sum_{j,r} T_{a,jr} |j, r>`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralTransform {
    n: usize,
    channels: Vec<Channel>,
}

impl GeneralTransform {
    /// Validates indices, channel uniqueness and `sum_{j,r} |T_{a,jr}|^2 = 1` per row.
    pub fn new(n: usize, channels: Vec<Channel>, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(LqnError::TooSmall { n, min: 1 });
        }
        let mut seen = vec![false; n * n];
        let mut sums = vec![0.0; n];
        for c in &channels {
            if c.particle >= n {
                return Err(LqnError::IndexOutOfRange { what: "particle", index: c.particle + 1, n });
            }
            if c.detector >= n {
                return Err(LqnError::IndexOutOfRange { what: "detector", index: c.detector + 1, n });
            }
            if std::mem::replace(&mut seen[c.particle * n + c.detector], true) {
                return Err(LqnError::DuplicateEdge {
                    particle: c.particle + 1,
                    detector: c.detector + 1,
                });
            }
            sums[c.particle] += c.amp_up.norm_sqr() + c.amp_down.norm_sqr();
        }
        for (row, sum) in sums.into_iter().enumerate() {
            if (sum - 1.0).abs() > tol {
                return Err(LqnError::RowNotNormalized { row: row + 1, sum });
            }
        }
        Ok(GeneralTransform { n, channels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    /// Inverse of [`reduce_general_transform`] for single-spin networks.
    pub fn from_network(spec: &NetworkSpec) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let channels = spec
            .transitions()
            .iter()
            .map(|t| {
                let (amp_up, amp_down) = match t.spin {
                    Spin::Up => (t.amplitude, zero),
                    Spin::Down => (zero, t.amplitude),
                };
                Channel { particle: t.particle, detector: t.detector, amp_up, amp_down }
            })
            .collect();
        GeneralTransform { n: spec.n(), channels }
    }
}

/// Rewrites each channel with exactly one nonzero spin component as a colored
/// transition. A channel carrying both components cannot be drawn on a simple
/// graph and is rejected.
pub fn reduce_general_transform(
    gt: &GeneralTransform,
    statistics: Statistics,
) -> Result<NetworkSpec> {
    let mut transitions = Vec::with_capacity(gt.channels.len());
    for c in &gt.channels {
        let up = c.amp_up.norm() > SPIN_COMPONENT_TOL;
        let down = c.amp_down.norm() > SPIN_COMPONENT_TOL;
        match (up, down) {
            (true, false) => transitions.push(Transition::new(c.particle, c.detector, c.amp_up, Spin::Up)),
            (false, true) => {
                transitions.push(Transition::new(c.particle, c.detector, c.amp_down, Spin::Down))
            }
            (true, true) => {
                return Err(LqnError::SuperposedInternalState {
                    particle: c.particle + 1,
                    detector: c.detector + 1,
                })
            }
            // an empty channel is an absent edge
            (false, false) => {}
        }
    }
    NetworkSpec::new(gt.n, statistics, NormalizationMode::Strict, transitions)
}
