mod common;

use std::f64::consts::PI;

use common::{fixture, random_network};
use lqn::graphs::{pm_diagram, to_directed};
use lqn::model::{exchange_rows, to_adjacency, NormalizationMode, Statistics, Transition};
use lqn::states::{compute_state, normalize, oracle_state, state_equiv};
use lqn::{Ket, NetworkSpec, NoBunchState};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ket(s: &str) -> Ket {
    Ket::parse(s).unwrap()
}

#[test]
fn tritter_amplitudes() {
    let state = compute_state(&fixture("tritter.json")).unwrap();
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let expected = -w / (3.0 * 3f64.sqrt());
    for k in ["uud", "udu", "duu"] {
        assert!((state.amplitude(&ket(k)) - expected).norm() < 1e-15, "{k}");
    }
    assert_eq!(state.len(), 3);
    let norm = normalize(&state).unwrap();
    assert!((norm.postselect_probability().unwrap() - 1.0 / 9.0).abs() < 1e-15);
    let uniform = NoBunchState::from_terms(
        3,
        ["uud", "udu", "duu"].iter().map(|k| (ket(k), Complex64::new(1.0 / 3f64.sqrt(), 0.0))),
    )
    .unwrap();
    assert!(state_equiv(&norm, &uniform, 1e-12).unwrap());
}

#[test]
fn dicke4_preset_terms() {
    let state = compute_state(&fixture("dicke4.json")).unwrap();
    assert_eq!(state.len(), 6);
    for (k, a) in state.terms() {
        assert_eq!(k.count(lqn::Spin::Down), 2);
        assert!((a - Complex64::new(1.0 / 9.0, 0.0)).norm() < 1e-15, "{k}: {a}");
    }
}

#[test]
fn n5_combined_amplitude() {
    let spec = fixture("n5_example.json");
    let adj = to_adjacency(&spec);
    let t = |a: usize, j: usize| adj.weight(a - 1, j - 1);
    let state = compute_state(&spec).unwrap();
    assert_eq!(state.len(), 4);
    let expected = (t(4, 1) * t(2, 2) * t(3, 3) + t(3, 1) * t(2, 2) * t(4, 3)) * t(1, 4) * t(5, 5);
    assert!((state.amplitude(&ket("ududu")) - expected).norm() < 1e-15);
}

#[test]
fn removing_unmatchable_edges_changes_nothing() {
    let spec = fixture("n5_example.json");
    let diag = pm_diagram(&to_directed(&to_adjacency(&spec))).unwrap();
    let removed: Vec<(usize, usize)> = diag.removed_edges().iter().map(|e| (e.from, e.to)).collect();
    assert_eq!(removed, [(1, 0), (1, 2), (1, 3)]);
    let reduced = spec.without_edges(&removed).unwrap();
    assert_eq!(compute_state(&reduced).unwrap(), compute_state(&spec).unwrap());
    // (2, X5) lies on the 2 <-> 5 cycle: dropping it does change the state
    let cut = spec.without_edges(&[(1, 4)]).unwrap();
    assert_ne!(compute_state(&cut).unwrap().len(), compute_state(&spec).unwrap().len());
}

#[test]
fn beam_splitter_concrete() {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let spec = lqn::designers::preset_beamsplitter(h, h, h, h, Statistics::Fermion).unwrap();
    let s = compute_state(&spec).unwrap();
    assert!((s.amplitude(&ket("uu")) - 0.5).norm() < 1e-15);
    assert!((s.amplitude(&ket("dd")) + 0.5).norm() < 1e-15);
}

fn permute_network(spec: &NetworkSpec, perm: &[usize]) -> NetworkSpec {
    let transitions = spec
        .transitions()
        .iter()
        .map(|t| Transition::new(t.particle, perm[t.detector], t.amplitude, t.spin))
        .collect();
    NetworkSpec::new(spec.n(), spec.statistics(), spec.mode(), transitions).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn assembled_equals_oracle(n in 1usize..=7, seed in any::<u64>(), fermion in any::<bool>()) {
        let stats = if fermion { Statistics::Fermion } else { Statistics::Boson };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, stats, 0.8, seed % 2 == 0);
        let diff = compute_state(&spec).unwrap().max_abs_diff(&oracle_state(&spec).unwrap()).unwrap();
        prop_assert!(diff <= 1e-12, "difference {}", diff);
    }

    #[test]
    fn row_swap_sign(n in 2usize..=6, seed in any::<u64>(), fermion in any::<bool>()) {
        let stats = if fermion { Statistics::Fermion } else { Statistics::Boson };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, stats, 0.9, false);
        let mut rows: Vec<usize> = (0..n).collect();
        rows.shuffle(&mut rng);
        let (swapped, sign) = exchange_rows(&to_adjacency(&spec), rows[0], rows[1], stats).unwrap();
        let other = swapped.to_network(stats, NormalizationMode::Design).unwrap();
        let (s1, s2) = (compute_state(&spec).unwrap(), compute_state(&other).unwrap());
        for (k, a) in s1.terms() {
            prop_assert!((s2.amplitude(k) - a * f64::from(sign)).norm() <= 1e-12);
        }
        prop_assert_eq!(s1.len(), s2.len());
    }

    #[test]
    fn detector_relabeling_permutes_kets(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Boson, 0.9, true);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let moved = compute_state(&permute_network(&spec, &perm)).unwrap();
        let expected = compute_state(&spec).unwrap().permute_detectors(&perm).unwrap();
        prop_assert!(moved.max_abs_diff(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn restriction_consistency(n in 2usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Fermion, 1.0, false);
        let diag = pm_diagram(&to_directed(&to_adjacency(&spec))).unwrap();
        let removed: Vec<(usize, usize)> = diag.removed_edges().iter().map(|e| (e.from, e.to)).collect();
        let reduced = spec.without_edges(&removed).unwrap();
        prop_assert_eq!(compute_state(&reduced).unwrap(), compute_state(&spec).unwrap());
    }

    #[test]
    fn normalized_states_have_unit_norm(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Boson, 1.0, true);
        if let Ok(s) = normalize(&compute_state(&spec).unwrap()) {
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
            prop_assert!(s.terms().all(|(k, _)| k.len() == n));
        }
    }
}
