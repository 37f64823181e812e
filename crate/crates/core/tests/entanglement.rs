mod common;

use common::{fixture, random_network};
use lqn::entanglement::{
    analyze, concurrence2, finest_partition, lemma1_separable_vertices, lemma2_partition, schmidt_rank,
    theorem1_check, theorem2_w_optimal_check, Bipartition, NumericSource, Verdict, DEFAULT_RANK_TOL,
};
use lqn::graphs::{enumerate_pms, pm_diagram, to_directed};
use lqn::model::{to_adjacency, to_bipartite, Statistics};
use lqn::states::{compute_state, normalize};
use lqn::{ColorVector, Partition, Spin};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagram(spec: &lqn::NetworkSpec) -> lqn::graphs::PMDiagram {
    pm_diagram(&to_directed(&to_adjacency(spec))).unwrap()
}

#[test]
fn n5_structure() {
    let spec = fixture("n5_example.json");
    let diag = diagram(&spec);
    assert_eq!(lemma1_separable_vertices(&diag), vec![(2, Spin::Up)]);
    assert_eq!(lemma2_partition(&diag), Partition::new(vec![vec![0, 2, 3], vec![1, 4]]));
    let t1 = theorem1_check(&diag);
    assert_eq!(t1.verdict, Verdict::CannotBeGenuine);
    assert!(!t1.strongly_connected);
    assert!(!t1.color_condition_ok[2]);
    assert!(!theorem2_w_optimal_check(&diag).optimal);

    let state = normalize(&compute_state(&spec).unwrap()).unwrap();
    let cut = Bipartition::new(5, vec![0, 2, 3]).unwrap();
    assert_eq!(schmidt_rank(&state, &cut, DEFAULT_RANK_TOL).unwrap(), 1);
    let expected = Partition::new(vec![vec![0, 3], vec![2], vec![1, 4]]);
    for seed in 0..5 {
        let report = analyze(&spec, Some(NumericSource::Generic { seed }), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(report.numeric_finest_partition.as_ref(), Some(&expected));
        assert_eq!(report.structural_partition, expected);
    }
}

#[test]
fn structural_tests_are_not_sufficient() {
    let spec = fixture("superposed_separable.json");
    let diag = diagram(&spec);
    assert_eq!(theorem1_check(&diag).verdict, Verdict::MayBeGenuine);
    let state = normalize(&compute_state(&spec).unwrap()).unwrap();
    assert_eq!(finest_partition(&state, DEFAULT_RANK_TOL).unwrap(), Partition::new(vec![vec![0], vec![1, 2]]));
}

#[test]
fn ghz_and_w_diagrams() {
    let ghz = lqn::designers::design_ghz(4, &ColorVector::uniform(4, Spin::Up), None).unwrap();
    let diag = diagram(&ghz);
    assert!(lemma1_separable_vertices(&diag).is_empty());
    assert_eq!(lemma2_partition(&diag).len(), 1);
    assert_eq!(theorem1_check(&diag).verdict, Verdict::MayBeGenuine);
    assert!(!theorem2_w_optimal_check(&diag).optimal);
    for form in [lqn::designers::WForm::Star, lqn::designers::WForm::Ring] {
        let w = lqn::designers::design_w(5, form, None).unwrap();
        let report = theorem2_w_optimal_check(&diagram(&w));
        assert!(report.optimal, "{:?}", report.messages);
        assert_eq!(report.source, Some(0));
        assert_eq!(lemma2_partition(&diagram(&w)).len(), 1);
    }
}

#[test]
fn concurrence_conventions() {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let spec = lqn::designers::preset_beamsplitter(h, h, h, h, Statistics::Boson).unwrap();
    let c = concurrence2(&compute_state(&spec).unwrap()).unwrap();
    assert!((c.normalized - 1.0).abs() < 1e-12);
    assert!((c.unnormalized - 0.5).abs() < 1e-12);
    assert!((c.paper_convention - 1.0).abs() < 1e-12);

    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let spec = lqn::designers::preset_beamsplitter(one, zero, h, h, Statistics::Boson).unwrap();
    let c = concurrence2(&compute_state(&spec).unwrap()).unwrap();
    assert!(c.normalized.abs() < 1e-12);
    let three = compute_state(&fixture("tritter.json")).unwrap();
    assert!(concurrence2(&three).is_err());
}

fn every_cut(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..(1usize << n) - 1).map(move |mask| (0..n).filter(|j| mask >> j & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lemma1_colors_every_matching(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Boson, 1.0, false);
        let diag = diagram(&spec);
        let rel = diag.relabeling().clone();
        let pms = enumerate_pms(&to_bipartite(&to_adjacency(&spec)));
        for (v, color) in lemma1_separable_vertices(&diag) {
            let j = rel.detector_of_vertex(v);
            for pm in &pms {
                prop_assert_eq!(pm.ket()[j], color);
            }
        }
    }

    #[test]
    fn numeric_refines_structure(n in 2usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Boson, 1.0, false);
        let report = analyze(&spec, Some(NumericSource::Generic { seed }), DEFAULT_RANK_TOL).unwrap();
        let numeric = report.numeric_finest_partition.clone().unwrap();
        prop_assert!(numeric.refines(&report.lemma2_detectors));
        prop_assert!(numeric.refines(&report.structural_partition));
        if report.theorem1.verdict == Verdict::CannotBeGenuine {
            prop_assert!(numeric.len() > 1);
        }
        for &(j, _) in &report.lemma1_detectors {
            prop_assert!(numeric.blocks().contains(&vec![j]));
        }
    }

    #[test]
    fn schmidt_rank_is_symmetric(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_network(&mut rng, n, Statistics::Fermion, 1.0, true);
        let Ok(state) = normalize(&compute_state(&spec).unwrap()) else { return Ok(()); };
        for subset in every_cut(n) {
            let cut = Bipartition::new(n, subset).unwrap();
            prop_assert_eq!(
                schmidt_rank(&state, &cut, DEFAULT_RANK_TOL).unwrap(),
                schmidt_rank(&state, &cut.swapped(), DEFAULT_RANK_TOL).unwrap()
            );
        }
    }
}
