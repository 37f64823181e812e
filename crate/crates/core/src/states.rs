//! Post-selected no-bunching states: one particle per detector.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{LqnError, Result};
use crate::graphs::{enumerate_pms, PerfectMatching};
use crate::model::{to_adjacency, to_bipartite, NetworkSpec, Statistics};
use crate::spin::Spin;

/// Largest `n` the factorial oracle accepts.
pub const ORACLE_MAX_N: usize = 10;

/// Norms below this are treated as an empty state.
pub const ZERO_NORM: f64 = 1e-12;

/// Internal states read off detectors `X_1..X_N`. Orders like its `u`/`d`
/// string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ket(Vec<Spin>);

impl Ket {
    pub fn new(spins: Vec<Spin>) -> Self {
        Ket(spins)
    }

    pub fn uniform(n: usize, spin: Spin) -> Self {
        Ket(vec![spin; n])
    }

    /// Accepts `u`/`d` codes or arrow glyphs.
    pub fn parse(text: &str) -> Option<Self> {
        text.chars().map(Spin::from_code).collect::<Option<Vec<_>>>().map(Ket)
    }

    pub fn spins(&self) -> &[Spin] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn codes(&self) -> String {
        self.0.iter().map(|s| s.code()).collect()
    }

    pub fn arrows(&self) -> String {
        self.0.iter().map(|s| s.arrow()).collect()
    }

    pub fn count(&self, spin: Spin) -> usize {
        self.0.iter().filter(|&&s| s == spin).count()
    }

    /// Basis index with `X_1` as the most significant bit and down = 1.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, s| (acc << 1) | s.bit())
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        Ket((0..n)
            .map(|j| if (index >> (n - 1 - j)) & 1 == 1 { Spin::Down } else { Spin::Up })
            .collect())
    }
}

impl Ord for Ket {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().map(|s| s.code()).cmp(other.0.iter().map(|s| s.code()))
    }
}

impl PartialOrd for Ket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.codes())
    }
}

/// Amplitudes over `N`-detector kets. Kets absent from the map have amplitude
/// zero.
#[derive(Debug, Clone, PartialEq)]
pub struct NoBunchState {
    n: usize,
    amplitudes: BTreeMap<Ket, Complex64>,
    normalized: bool,
    postselect_probability: Option<f64>,
}

impl NoBunchState {
    /// Unnormalized state; repeated kets add up.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ket, Complex64)>,
    {
        let mut amplitudes = BTreeMap::new();
        for (ket, amp) in terms {
            if ket.len() != n {
                return Err(LqnError::BadLength { expected: n, got: ket.len() });
            }
            *amplitudes.entry(ket).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        Ok(NoBunchState { n, amplitudes, normalized: false, postselect_probability: None })
    }

    /// Dense vector in the basis ordering of [`Ket::index`].
    pub fn from_dense(n: usize, amps: &[Complex64]) -> Result<Self> {
        if amps.len() != 1 << n {
            return Err(LqnError::BadLength { expected: 1 << n, got: amps.len() });
        }
        let terms = amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, a)| (Ket::from_index(n, i), *a));
        NoBunchState::from_terms(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn postselect_probability(&self) -> Option<f64> {
        self.postselect_probability
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Terms in ket order.
    pub fn terms(&self) -> impl Iterator<Item = (&Ket, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn amplitude(&self, ket: &Ket) -> Complex64 {
        self.amplitudes.get(ket).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// Drops terms with `|amp| <= tol`.
    pub fn pruned(&self, tol: f64) -> NoBunchState {
        let mut out = self.clone();
        out.amplitudes.retain(|_, a| a.norm() > tol);
        out
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        for (ket, amp) in &self.amplitudes {
            v[ket.index()] = *amp;
        }
        v
    }

    /// Moves the character at detector `j` to detector `perm[j]`.
    pub fn permute_detectors(&self, perm: &[usize]) -> Result<NoBunchState> {
        if perm.len() != self.n {
            return Err(LqnError::DimensionMismatch { expected: self.n, got: perm.len() });
        }
        let terms = self.amplitudes.iter().map(|(ket, amp)| {
            let mut spins = vec![Spin::Up; self.n];
            for (j, &s) in ket.spins().iter().enumerate() {
                spins[perm[j]] = s;
            }
            (Ket(spins), *amp)
        });
        let mut out = NoBunchState::from_terms(self.n, terms)?;
        out.normalized = self.normalized;
        out.postselect_probability = self.postselect_probability;
        Ok(out)
    }

    /// Largest amplitude difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &NoBunchState) -> Result<f64> {
        if self.n != other.n {
            return Err(LqnError::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(self
            .amplitudes
            .keys()
            .chain(other.amplitudes.keys())
            .map(|k| (self.amplitude(k) - other.amplitude(k)).norm())
            .fold(0.0, f64::max))
    }
}

/// Sums `sign * prod T_{a,sigma(a)}` over the given matchings, in the order
/// given, into kets carrying the edge colors at the detectors.
pub fn assemble_state(pms: &[PerfectMatching], spec: &NetworkSpec) -> Result<NoBunchState> {
    let adj = to_adjacency(spec);
    let mut terms = Vec::with_capacity(pms.len());
    for pm in pms {
        let checked = PerfectMatching::from_assignment(&adj, pm.assignment().to_vec())?;
        if &checked != pm {
            return Err(LqnError::InvalidMatching(format!("matching {pm} carries weights not in the network")));
        }
        let sign = match spec.statistics() {
            Statistics::Boson => 1.0,
            Statistics::Fermion => f64::from(pm.parity()),
        };
        terms.push((Ket(pm.ket()), pm.weight_product() * sign));
    }
    NoBunchState::from_terms(spec.n(), terms)
}

/// Enumerates the matchings of `spec` and assembles them.
pub fn compute_state(spec: &NetworkSpec) -> Result<NoBunchState> {
    let pms = enumerate_pms(&to_bipartite(&to_adjacency(spec)));
    assemble_state(&pms, spec)
}

/// Direct sum over all `N!` permutations. Shares no code with the matching
/// enumeration.
pub fn oracle_state(spec: &NetworkSpec) -> Result<NoBunchState> {
    let n = spec.n();
    if n > ORACLE_MAX_N {
        return Err(LqnError::TooLarge { n, limit: ORACLE_MAX_N });
    }
    let mut table: Vec<Option<(Complex64, Spin)>> = vec![None; n * n];
    for t in spec.transitions() {
        table[t.particle * n + t.detector] = Some((t.amplitude, t.spin));
    }
    let fermion = spec.statistics() == Statistics::Fermion;

    let mut terms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut amp = Complex64::new(1.0, 0.0);
        let mut spins = vec![Spin::Up; n];
        let mut present = true;
        for (a, &j) in perm.iter().enumerate() {
            match table[a * n + j] {
                Some((w, s)) => {
                    amp *= w;
                    spins[j] = s;
                }
                None => {
                    present = false;
                    break;
                }
            }
        }
        if present {
            if fermion && inversions(&perm) % 2 == 1 {
                amp = -amp;
            }
            terms.push((Ket(spins), amp));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    NoBunchState::from_terms(n, terms)
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |k| (i, k)))
        .filter(|&(i, k)| perm[i] > perm[k])
        .count()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Divides by the norm and records the squared norm as the post-selection
/// probability.
pub fn normalize(state: &NoBunchState) -> Result<NoBunchState> {
    let p = state.norm_sqr();
    if p.sqrt() < ZERO_NORM {
        return Err(LqnError::ZeroState);
    }
    let scale = 1.0 / p.sqrt();
    Ok(NoBunchState {
        n: state.n,
        amplitudes: state.amplitudes.iter().map(|(k, a)| (k.clone(), a * scale)).collect(),
        normalized: true,
        postselect_probability: Some(p),
    })
}

/// `true` iff the states agree up to a global phase: `|<s1|s2>| / (|s1| |s2|)`
/// is within `tol` of one.
pub fn state_equiv(s1: &NoBunchState, s2: &NoBunchState, tol: f64) -> Result<bool> {
    if s1.n != s2.n {
        return Err(LqnError::DimensionMismatch { expected: s1.n, got: s2.n });
    }
    let (n1, n2) = (s1.norm_sqr().sqrt(), s2.norm_sqr().sqrt());
    if n1 < ZERO_NORM || n2 < ZERO_NORM {
        return Ok(n1 < ZERO_NORM && n2 < ZERO_NORM);
    }
    let overlap: Complex64 = s1.amplitudes.iter().map(|(k, a)| a.conj() * s2.amplitude(k)).sum();
    Ok((overlap.norm() / (n1 * n2) - 1.0).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{NormalizationMode, Transition};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bs(stats: Statistics) -> NetworkSpec {
        let h = c(FRAC_1_SQRT_2, 0.0);
        NetworkSpec::new(
            2,
            stats,
            NormalizationMode::Strict,
            vec![
                Transition::new(0, 0, h, Spin::Up),
                Transition::new(0, 1, h, Spin::Down),
                Transition::new(1, 0, h, Spin::Down),
                Transition::new(1, 1, h, Spin::Up),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ket_order_follows_code_string() {
        let mut kets: Vec<Ket> = ["uu", "ud", "du", "dd"].iter().map(|s| Ket::parse(s).unwrap()).collect();
        kets.sort();
        let codes: Vec<String> = kets.iter().map(Ket::codes).collect();
        assert_eq!(codes, ["dd", "du", "ud", "uu"]);
        assert_eq!(Ket::parse("↑↓").unwrap().codes(), "ud");
        assert_eq!(Ket::parse("ud").unwrap().index(), 1);
        assert_eq!(Ket::from_index(3, 6).codes(), "ddu");
        assert!(Ket::parse("ux").is_none());
    }

    #[test]
    fn beam_splitter_signs() {
        let uu = Ket::parse("uu").unwrap();
        let dd = Ket::parse("dd").unwrap();
        let b = compute_state(&bs(Statistics::Boson)).unwrap();
        assert!((b.amplitude(&uu) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((b.amplitude(&dd) - c(0.5, 0.0)).norm() < 1e-15);
        let f = compute_state(&bs(Statistics::Fermion)).unwrap();
        assert!((f.amplitude(&dd) + c(0.5, 0.0)).norm() < 1e-15);
        let nb = normalize(&b).unwrap();
        assert!((nb.postselect_probability().unwrap() - 0.5).abs() < 1e-15);
        assert!((nb.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees_on_beam_splitter() {
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let spec = bs(stats);
            let diff = compute_state(&spec).unwrap().max_abs_diff(&oracle_state(&spec).unwrap()).unwrap();
            assert_eq!(diff, 0.0);
        }
    }

    #[test]
    fn fermion_cancellation_is_zero_state() {
        // both matchings land on |uu> with opposite signs
        let h = c(FRAC_1_SQRT_2, 0.0);
        let spec = NetworkSpec::new(
            2,
            Statistics::Fermion,
            NormalizationMode::Strict,
            vec![
                Transition::new(0, 0, h, Spin::Up),
                Transition::new(0, 1, h, Spin::Up),
                Transition::new(1, 0, h, Spin::Up),
                Transition::new(1, 1, h, Spin::Up),
            ],
        )
        .unwrap();
        let s = compute_state(&spec).unwrap();
        assert_eq!(normalize(&s), Err(LqnError::ZeroState));
    }

    #[test]
    fn equivalence_up_to_phase() {
        let s = normalize(&compute_state(&bs(Statistics::Boson)).unwrap()).unwrap();
        let phase = Complex64::from_polar(1.0, std::f64::consts::PI / 7.0);
        let rotated = NoBunchState::from_terms(2, s.terms().map(|(k, a)| (k.clone(), a * phase))).unwrap();
        assert!(state_equiv(&s, &rotated, 1e-12).unwrap());
        let uu = NoBunchState::from_terms(2, [(Ket::parse("uu").unwrap(), c(1.0, 0.0))]).unwrap();
        let dd = NoBunchState::from_terms(2, [(Ket::parse("dd").unwrap(), c(1.0, 0.0))]).unwrap();
        assert!(!state_equiv(&uu, &dd, 1e-9).unwrap());
        let three = NoBunchState::from_terms(3, [(Ket::parse("ddd").unwrap(), c(1.0, 0.0))]).unwrap();
        assert!(state_equiv(&uu, &three, 1e-9).is_err());
    }

    #[test]
    fn oracle_guard() {
        let n = ORACLE_MAX_N + 1;
        let spec = NetworkSpec::new(
            n,
            Statistics::Boson,
            NormalizationMode::Strict,
            (0..n).map(|a| Transition::new(a, a, c(1.0, 0.0), Spin::Up)).collect(),
        )
        .unwrap();
        assert!(matches!(oracle_state(&spec), Err(LqnError::TooLarge { .. })));
        assert_eq!(compute_state(&spec).unwrap().len(), 1);
    }

    #[test]
    fn dense_round_trip_and_permutation() {
        let s = NoBunchState::from_terms(
            3,
            [(Ket::parse("udd").unwrap(), c(1.0, 0.0)), (Ket::parse("duu").unwrap(), c(0.0, 2.0))],
        )
        .unwrap();
        assert_eq!(NoBunchState::from_dense(3, &s.to_dense()).unwrap(), s);
        let p = s.permute_detectors(&[2, 0, 1]).unwrap();
        assert_eq!(p.amplitude(&Ket::parse("ddu").unwrap()), c(1.0, 0.0));
        assert_eq!(p.amplitude(&Ket::parse("uud").unwrap()), c(0.0, 2.0));
    }
}
