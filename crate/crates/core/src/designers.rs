//! Constructors for networks whose post-selected states are known targets:
//! GHZ and W classes, Dicke `D_2^N`, the four-qubit cluster state and a few
//! small presets.
//!
//! Every designer returns a boson network. The normalization mode is strict
//! when all rows come out normalized and design otherwise.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{LqnError, Result};
use crate::model::{detect_mode, NetworkSpec, Statistics, Transition, DEFAULT_TOL};
use crate::spin::{ColorVector, Spin};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn build(n: usize, statistics: Statistics, transitions: Vec<Transition>) -> Result<NetworkSpec> {
    let mode = detect_mode(n, &transitions, DEFAULT_TOL);
    NetworkSpec::new(n, statistics, mode, transitions)
}

fn check_colors(n: usize, colors: &ColorVector) -> Result<()> {
    if colors.len() != n {
        return Err(LqnError::BadLength { expected: n, got: colors.len() });
    }
    Ok(())
}

/// Amplitude `1 / sqrt(deg)` on every edge of each row.
fn flat_rows(n: usize, edges: Vec<(usize, usize, Spin)>) -> Vec<Transition> {
    let mut degree = vec![0usize; n];
    for &(a, _, _) in &edges {
        degree[a] += 1;
    }
    edges
        .into_iter()
        .map(|(a, j, s)| Transition::new(a, j, real(1.0 / (degree[a] as f64).sqrt()), s))
        .collect()
}

/// GHZ-class ring: loops `(a, X_a)` colored `c_a` and ring edges
/// `(a, X_{a+1})` colored `c_{a+1}` flipped. The two matchings give
/// `|c_1..c_N>` and `|c_1+1..c_N+1>`.
///
/// `amplitudes`, when given, holds the `n` loop weights followed by the `n`
/// ring weights; otherwise every edge gets `1/sqrt(2)`.
pub fn design_ghz(n: usize, colors: &ColorVector, amplitudes: Option<&[Complex64]>) -> Result<NetworkSpec> {
    if n < 2 {
        return Err(LqnError::TooSmall { n, min: 2 });
    }
    check_colors(n, colors)?;
    if let Some(a) = amplitudes {
        if a.len() != 2 * n {
            return Err(LqnError::BadLength { expected: 2 * n, got: a.len() });
        }
    }
    let amp = |k: usize| amplitudes.map_or(real(FRAC_1_SQRT_2), |a| a[k]);
    let mut transitions = Vec::with_capacity(2 * n);
    for a in 0..n {
        transitions.push(Transition::new(a, a, amp(a), colors[a]));
        let next = (a + 1) % n;
        transitions.push(Transition::new(a, next, amp(n + a), colors[next].flipped()));
    }
    build(n, Statistics::Boson, transitions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WForm {
    /// Two-cycles between vertex 1 and every other vertex.
    Star,
    /// Edges from vertex 1 to every vertex and a chain back down.
    Ring,
}

impl FromStr for WForm {
    type Err = LqnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(WForm::Star),
            "ring" => Ok(WForm::Ring),
            other => Err(LqnError::InvalidInput(format!("unknown W form {other:?} (expected star or ring)"))),
        }
    }
}

/// W-class network with `n` matchings, each flipping exactly one detector of
/// `colors` (all up by default, giving the W state with one down spin).
/// Row amplitudes are `1/sqrt(deg)`, so every term has the same magnitude.
pub fn design_w(n: usize, form: WForm, colors: Option<&ColorVector>) -> Result<NetworkSpec> {
    if n < 3 {
        return Err(LqnError::TooSmall { n, min: 3 });
    }
    let colors = match colors {
        Some(cv) => {
            check_colors(n, cv)?;
            cv.clone()
        }
        None => ColorVector::uniform(n, Spin::Up),
    };
    let mut edges = vec![(0, 0, colors[0].flipped())];
    match form {
        WForm::Star => {
            for a in 1..n {
                edges.push((0, a, colors[a].flipped()));
            }
            for a in 1..n {
                edges.push((a, 0, colors[0]));
                edges.push((a, a, colors[a]));
            }
        }
        WForm::Ring => {
            for a in 1..n {
                edges.push((0, a, colors[a].flipped()));
            }
            for a in 1..n {
                edges.push((a, a - 1, colors[a - 1]));
                edges.push((a, a, colors[a]));
            }
        }
    }
    build(n, Statistics::Boson, flat_rows(n, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DickePreset {
    /// Phases for `n = 4` that give the uniform `D_2^4`.
    PaperN4,
    /// Phases for `n = 5` that give the uniform `D_2^5`.
    PaperN5,
}

impl DickePreset {
    pub fn name(self) -> &'static str {
        match self {
            DickePreset::PaperN4 => "paper-n4",
            DickePreset::PaperN5 => "paper-n5",
        }
    }

    fn n(self) -> usize {
        match self {
            DickePreset::PaperN4 => 4,
            DickePreset::PaperN5 => 5,
        }
    }
}

impl FromStr for DickePreset {
    type Err = LqnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-n4" => Ok(DickePreset::PaperN4),
            "paper-n5" => Ok(DickePreset::PaperN5),
            other => Err(LqnError::InvalidInput(format!(
                "unknown Dicke preset {other:?} (expected paper-n4 or paper-n5)"
            ))),
        }
    }
}

/// Edges of the `D_2^N` network: red loops at 1 and 2, blue loops elsewhere,
/// red `1 -> k`, `2 -> k` and blue `k -> 1`, `k -> 2` for `k >= 3`.
fn dicke_edges(n: usize) -> Vec<(usize, usize, Spin)> {
    let mut edges = Vec::new();
    for a in 0..2 {
        edges.push((a, a, Spin::Down));
        edges.extend((2..n).map(|k| (a, k, Spin::Down)));
    }
    for k in 2..n {
        edges.push((k, 0, Spin::Up));
        edges.push((k, 1, Spin::Up));
        edges.push((k, k, Spin::Up));
    }
    edges
}

/// Number of perfect matchings of the `D_2^N` network.
pub fn dicke2_pm_count(n: usize) -> usize {
    let m = n.saturating_sub(2);
    1 + 2 * m + 4 * (m * m.saturating_sub(1) / 2)
}

/// `D_2^N` network. Without a preset every row is flat (`1/sqrt(deg)`).
pub fn design_dicke2(n: usize, preset: Option<DickePreset>) -> Result<NetworkSpec> {
    if n < 4 {
        return Err(LqnError::TooSmall { n, min: 4 });
    }
    let edges = dicke_edges(n);
    let Some(preset) = preset else {
        return build(n, Statistics::Boson, flat_rows(n, edges));
    };
    if preset.n() != n {
        return Err(LqnError::NoPresetForN { preset: preset.name().to_string(), n });
    }
    // weights of 1 -> k and 2 -> k; the reverse edges carry the conjugates
    let (diag, out1, out2): (f64, Vec<Complex64>, Vec<Complex64>) = match preset {
        DickePreset::PaperN4 => {
            let s = 1.0 / 3f64.sqrt();
            let p = Complex64::from_polar(s, PI / 6.0);
            (s, vec![p, p.conj()], vec![p.conj(), p])
        }
        DickePreset::PaperN5 => {
            let e = |k: f64| Complex64::from_polar(0.5, k * PI / 3.0);
            (0.5, vec![e(0.0), e(-1.0), e(-2.0)], vec![e(-1.0), e(0.0), e(1.0)])
        }
    };
    let transitions = edges
        .into_iter()
        .map(|(a, j, s)| {
            let amp = match (a, j) {
                _ if a == j => real(diag),
                (0, k) => out1[k - 2],
                (1, k) => out2[k - 2],
                (k, 0) => out1[k - 2].conj(),
                (k, _) => out2[k - 2].conj(),
            };
            Transition::new(a, j, amp, s)
        })
        .collect();
    build(n, Statistics::Boson, transitions)
}

/// Four-qubit linear cluster state `(|uuuu> + |uudd> + |dduu> - |dddd>)/2`.
///
/// Blue loops, red two-cycles `1 <-> 2` and `3 <-> 4`, red `2 -> 3` and
/// `4 -> 1`. The long cycle and the product of the two short cycles both
/// land on `|dddd>`; the `i` phases on `2 -> 3` and `4 -> 1` give it the
/// opposite sign and the magnitudes make all four terms equal.
pub fn design_cluster4() -> Result<NetworkSpec> {
    let h = FRAC_1_SQRT_2;
    let i = c(0.0, h);
    let (up, down) = (Spin::Up, Spin::Down);
    let transitions = vec![
        Transition::new(0, 0, real(h), up),
        Transition::new(0, 1, real(h), down),
        Transition::new(1, 0, real(0.5), down),
        Transition::new(1, 1, real(0.5), up),
        Transition::new(1, 2, i, down),
        Transition::new(2, 2, real(h), up),
        Transition::new(2, 3, real(h), down),
        Transition::new(3, 0, i, down),
        Transition::new(3, 2, real(0.5), down),
        Transition::new(3, 3, real(0.5), up),
    ];
    build(4, Statistics::Boson, transitions)
}

/// Three-port tritter: rows 1 and 2 arrive up, row 3 arrives down.
pub fn preset_tritter() -> Result<NetworkSpec> {
    let s = 1.0 / 3f64.sqrt();
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let one = real(1.0);
    let u = [[one, w, w * w], [w, one, w * w], [one, one, one]];
    let mut transitions = Vec::with_capacity(9);
    for (a, row) in u.iter().enumerate() {
        let spin = if a < 2 { Spin::Up } else { Spin::Down };
        for (j, &x) in row.iter().enumerate() {
            transitions.push(Transition::new(a, j, x * s, spin));
        }
    }
    build(3, Statistics::Boson, transitions)
}

/// Two-particle network: particle 1 reaches `X_1` up with `a1` and `X_2` down
/// with `b1`; particle 2 reaches `X_1` down with `a2` and `X_2` up with `b2`.
/// The state is `a1 b2 |uu> +- b1 a2 |dd>`. Zero amplitudes drop their edge.
pub fn preset_beamsplitter(
    a1: Complex64,
    b1: Complex64,
    a2: Complex64,
    b2: Complex64,
    statistics: Statistics,
) -> Result<NetworkSpec> {
    let (up, down) = (Spin::Up, Spin::Down);
    let transitions = [(0, 0, a1, up), (0, 1, b1, down), (1, 0, a2, down), (1, 1, b2, up)]
        .into_iter()
        .filter(|t| t.2 != Complex64::new(0.0, 0.0))
        .map(|(a, j, x, s)| Transition::new(a, j, x, s))
        .collect();
    NetworkSpec::new(2, statistics, crate::model::NormalizationMode::Strict, transitions)
}

/// Five-particle example whose diagram splits as `{1,3,4} | {2,5}`, with
/// `X_3` forced up. Rows are flat.
pub fn preset_five_detector_example() -> Result<NetworkSpec> {
    let (up, down) = (Spin::Up, Spin::Down);
    let edges = vec![
        (0, 0, down),
        (0, 3, down),
        (1, 0, down),
        (1, 1, down),
        (1, 2, down),
        (1, 3, down),
        (1, 4, down),
        (2, 0, up),
        (2, 2, up),
        (3, 0, up),
        (3, 2, up),
        (3, 3, up),
        (4, 1, up),
        (4, 4, up),
    ];
    build(5, Statistics::Boson, flat_rows(5, edges))
}

/// Three-vertex network that passes both structural tests for genuine
/// entanglement yet yields `(|u> + |d>)_1 (|ud> + |du>)_{2,3}`.
pub fn preset_superposed_separable() -> Result<NetworkSpec> {
    let (up, down) = (Spin::Up, Spin::Down);
    let edges = vec![
        (0, 0, up),
        (0, 1, up),
        (0, 2, up),
        (1, 0, down),
        (1, 1, up),
        (1, 2, up),
        (2, 1, down),
        (2, 2, down),
    ];
    build(3, Statistics::Boson, flat_rows(3, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_unitary, to_adjacency, NormalizationMode};

    #[test]
    fn ghz_shape() {
        let spec = design_ghz(4, &ColorVector::uniform(4, Spin::Up), None).unwrap();
        assert_eq!(spec.transitions().len(), 8);
        assert_eq!(spec.mode(), NormalizationMode::Strict);
        assert!(design_ghz(3, &ColorVector::uniform(4, Spin::Up), None).is_err());
        assert!(design_ghz(1, &ColorVector::uniform(1, Spin::Up), None).is_err());
    }

    #[test]
    fn w_forms_have_expected_edge_counts() {
        assert_eq!(design_w(5, WForm::Star, None).unwrap().transitions().len(), 1 + 4 + 8);
        assert_eq!(design_w(5, WForm::Ring, None).unwrap().transitions().len(), 1 + 4 + 8);
        assert!(design_w(2, WForm::Star, None).is_err());
        assert_eq!("ring".parse::<WForm>().unwrap(), WForm::Ring);
    }

    #[test]
    fn dicke_presets() {
        assert_eq!(design_dicke2(4, Some(DickePreset::PaperN4)).unwrap().mode(), NormalizationMode::Strict);
        assert_eq!(design_dicke2(5, Some(DickePreset::PaperN5)).unwrap().mode(), NormalizationMode::Design);
        assert!(matches!(design_dicke2(6, Some(DickePreset::PaperN4)), Err(LqnError::NoPresetForN { .. })));
        assert_eq!(dicke2_pm_count(4), 9);
        assert_eq!(dicke2_pm_count(5), 19);
    }

    #[test]
    fn tritter_is_unitary() {
        assert!(is_unitary(&to_adjacency(&preset_tritter().unwrap()), 1e-12));
    }

    #[test]
    fn beamsplitter_drops_zero_edges() {
        let spec = preset_beamsplitter(real(1.0), real(0.0), real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2), Statistics::Boson)
            .unwrap();
        assert_eq!(spec.transitions().len(), 3);
        let bad = preset_beamsplitter(real(1.0), real(1.0), real(1.0), real(0.0), Statistics::Boson);
        assert!(matches!(bad, Err(LqnError::RowNotNormalized { .. })));
    }
}
