use super::PerfectMatching;
use crate::model::BipartiteView;

/// One perfect matching found with augmenting paths (Kuhn), or `None`.
///
/// Each particle first tries its own-index detector and then the rest in
/// ascending order, so a network with a full diagonal gets the identity.
pub fn initial_perfect_matching(bip: &BipartiteView) -> Option<PerfectMatching> {
    let n = bip.n();
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in bip.edges() {
        candidates[e.particle].push(e.detector);
    }
    for (a, list) in candidates.iter_mut().enumerate() {
        list.sort_unstable_by_key(|&j| (j != a, j));
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let mut visited = vec![false; n];
        if !augment(a, &candidates, &mut owner, &mut visited) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (j, a) in owner.iter().enumerate() {
        assignment[a.expect("every detector is matched")] = j;
    }
    PerfectMatching::from_assignment(&bip.to_adjacency(), assignment).ok()
}

fn augment(
    particle: usize,
    candidates: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &j in &candidates[particle] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match owner[j] {
            None => true,
            Some(other) => augment(other, candidates, owner, visited),
        };
        if free {
            owner[j] = Some(particle);
            return true;
        }
    }
    false
}
