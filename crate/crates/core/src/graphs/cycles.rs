//! Elementary-cycle enumeration (Johnson's blocking search).

use super::components::scc_of;
use super::{DirectedView, ElementaryCycle};

/// All elementary cycles of length >= 2, loops excluded. Each cycle appears
/// once, starting at its smallest vertex; the list is sorted lexicographically.
pub fn elementary_cycles(dir: &DirectedView) -> Vec<ElementaryCycle> {
    let succ = dir.successors();
    let mut out = Vec::new();
    for_each_cycle(&succ, |path| {
        out.push(ElementaryCycle::new(path.to_vec()).expect("search emits simple cycles"));
    });
    out.sort();
    out
}

/// Calls `emit` with the vertex list of every elementary cycle (length >= 2)
/// of the digraph given by loop-free successor lists.
pub(crate) fn for_each_cycle(succ: &[Vec<usize>], mut emit: impl FnMut(&[usize])) {
    let n = succ.len();
    let mut search = Search {
        succ,
        in_comp: vec![false; n],
        blocked: vec![false; n],
        b_sets: vec![Vec::new(); n],
        stack: Vec::new(),
        start: 0,
    };
    for s in 0..n {
        // strongly connected component of s within vertices >= s
        let active: Vec<bool> = (0..n).map(|v| v >= s).collect();
        let comp = scc_of(s, succ, &active);
        if comp.len() < 2 {
            continue;
        }
        search.in_comp.iter_mut().for_each(|x| *x = false);
        for &v in &comp {
            search.in_comp[v] = true;
            search.blocked[v] = false;
            search.b_sets[v].clear();
        }
        search.start = s;
        search.circuit(s, &mut emit);
    }
}

struct Search<'a> {
    succ: &'a [Vec<usize>],
    in_comp: Vec<bool>,
    blocked: Vec<bool>,
    b_sets: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
}

impl Search<'_> {
    fn circuit(&mut self, v: usize, emit: &mut impl FnMut(&[usize])) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in &self.succ[v] {
            if !self.in_comp[w] {
                continue;
            }
            if w == self.start {
                emit(&self.stack);
                found = true;
            } else if !self.blocked[w] && self.circuit(w, emit) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &self.succ[v] {
                if self.in_comp[w] && !self.b_sets[w].contains(&v) {
                    self.b_sets[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, u: usize) {
        let mut pending = vec![u];
        while let Some(x) = pending.pop() {
            self.blocked[x] = false;
            for w in std::mem::take(&mut self.b_sets[x]) {
                if self.blocked[w] {
                    pending.push(w);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every simple cycle through DFS over all start vertices, deduplicated by
    /// requiring the start to be the minimum.
    fn brute_force(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
        fn dfs(v: usize, s: usize, succ: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for &w in &succ[v] {
                if w == s && path.len() >= 2 {
                    out.push(path.clone());
                } else if w > s && !path.contains(&w) {
                    path.push(w);
                    dfs(w, s, succ, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..succ.len() {
            dfs(s, s, succ, &mut vec![s], &mut out);
        }
        out.sort();
        out
    }

    fn complete(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect()
    }

    #[test]
    fn complete_digraph_counts() {
        // number of elementary cycles of length >= 2 in K_n: sum_k C(n,k)(k-1)!
        let expected = [0usize, 0, 1, 5, 20, 84];
        for (n, &count) in expected.iter().enumerate().skip(1) {
            let succ = complete(n);
            let mut found = Vec::new();
            for_each_cycle(&succ, |c| found.push(c.to_vec()));
            found.sort();
            assert_eq!(found.len(), count, "n = {n}");
            assert_eq!(found, brute_force(&succ));
        }
    }

    #[test]
    fn matches_brute_force_on_sparse_graphs() {
        let graphs: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![1], vec![2], vec![0, 3], vec![1]],
            vec![vec![1, 3], vec![0, 2], vec![3], vec![0, 1]],
            vec![vec![], vec![0], vec![1]],
        ];
        for succ in graphs {
            let mut found = Vec::new();
            for_each_cycle(&succ, |c| found.push(c.to_vec()));
            found.sort();
            assert_eq!(found, brute_force(&succ));
        }
    }
}
