#![allow(dead_code)]

use std::path::PathBuf;

use lqn::model::{NormalizationMode, Statistics, Transition};
use lqn::{NetworkSpec, Spin};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> NetworkSpec {
    lqn::io::parse_network(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn random_amplitude<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.2..=1.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_spin<R: Rng>(rng: &mut R) -> Spin {
    if rng.gen_bool(0.5) {
        Spin::Up
    } else {
        Spin::Down
    }
}

/// Random sparsity, amplitudes and colors. Every row has an edge; with
/// probability `pm_bias` a random permutation is planted so that a perfect
/// matching exists. Rows are normalized when `strict`.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, statistics: Statistics, pm_bias: f64, strict: bool) -> NetworkSpec {
    let density = rng.gen_range(0.2..0.8);
    let mut present = vec![false; n * n];
    for p in present.iter_mut() {
        *p = rng.gen_bool(density);
    }
    if rng.gen_bool(pm_bias) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (a, &j) in perm.iter().enumerate() {
            present[a * n + j] = true;
        }
    }
    for a in 0..n {
        if !present[a * n..(a + 1) * n].iter().any(|&p| p) {
            present[a * n + rng.gen_range(0..n)] = true;
        }
    }
    let mut transitions = Vec::new();
    for a in 0..n {
        for j in 0..n {
            if present[a * n + j] {
                transitions.push(Transition::new(a, j, random_amplitude(rng), random_spin(rng)));
            }
        }
    }
    let mode = if strict { NormalizationMode::Strict } else { NormalizationMode::Design };
    if strict {
        let mut rows = vec![0.0; n];
        for t in &transitions {
            rows[t.particle] += t.amplitude.norm_sqr();
        }
        for t in &mut transitions {
            t.amplitude /= rows[t.particle].sqrt();
        }
    }
    NetworkSpec::new(n, statistics, mode, transitions).unwrap()
}

/// All permutations of `0..n` that use only edges of `spec`, brute force.
pub fn brute_force_assignments(spec: &NetworkSpec) -> Vec<Vec<usize>> {
    fn rec(a: usize, n: usize, edges: &[bool], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if edges[a * n + j] && !used[j] {
                used[j] = true;
                cur.push(j);
                rec(a + 1, n, edges, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let n = spec.n();
    let mut edges = vec![false; n * n];
    for t in spec.transitions() {
        edges[t.particle * n + t.detector] = true;
    }
    let mut out = Vec::new();
    rec(0, n, &edges, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}
