use super::components::tarjan;
use super::cycles::for_each_cycle;
use super::matching::initial_perfect_matching;
use super::{DirectedEdge, DirectedView, PMDiagram, PerfectMatching, Relabeling};
use crate::error::{LqnError, Result};
use crate::model::{to_bipartite, BipartiteView};

/// Permutes detector labels so `pm` lies on the loops: edge `(a -> j)` becomes
/// `(a -> v)` with `pm` assigning detector `j` to particle `v`.
pub fn relabel_to_loops(dir: &DirectedView, pm: &PerfectMatching) -> Result<(DirectedView, Relabeling)> {
    if pm.n() != dir.n() {
        return Err(LqnError::InvalidMatching(format!(
            "matching has {} pairs for n = {}",
            pm.n(),
            dir.n()
        )));
    }
    for (a, j, _, _) in pm.pairs() {
        if !dir.has_edge(a, j) {
            return Err(LqnError::InvalidMatching(format!("no edge ({}, X{})", a + 1, j + 1)));
        }
    }
    let relabeling = Relabeling::from_matching(pm);
    let edges = dir
        .edges()
        .iter()
        .map(|e| DirectedEdge { to: relabeling.vertex_of_detector(e.to), ..*e })
        .collect();
    let view = DirectedView::from_edges(dir.n(), edges)?;
    Ok((view, relabeling))
}

/// Every perfect matching, sorted lexicographically by assignment. Empty when
/// none exists.
pub fn enumerate_pms(bip: &BipartiteView) -> Vec<PerfectMatching> {
    let Some(initial) = initial_perfect_matching(bip) else {
        return Vec::new();
    };
    let adj = bip.to_adjacency();
    let dir = super::to_directed(&adj);
    let (relabeled, relabeling) = relabel_to_loops(&dir, &initial).expect("initial matching is valid");

    let mut cycles = Vec::new();
    for_each_cycle(&relabeled.successors(), |c| cycles.push(c.to_vec()));
    cycles.sort();

    let n = bip.n();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut chosen = Vec::new();
    compose(&cycles, 0, &mut used, &mut chosen, &mut |subset| {
        // particle v moves to relabeled detector next(v) along its cycle
        let mut target: Vec<usize> = (0..n).collect();
        for &ci in subset {
            let c = &cycles[ci];
            for (i, &v) in c.iter().enumerate() {
                target[v] = c[(i + 1) % c.len()];
            }
        }
        let assignment = target.iter().map(|&v| relabeling.detector_of_vertex(v)).collect();
        out.push(PerfectMatching::from_assignment(&adj, assignment).expect("cycle exchange yields a matching"));
    });
    out.sort_by(|x, y| x.assignment().cmp(y.assignment()));
    out
}

fn compose(
    cycles: &[Vec<usize>],
    from: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    emit(chosen);
    for i in from..cycles.len() {
        if cycles[i].iter().any(|&v| used[v]) {
            continue;
        }
        cycles[i].iter().for_each(|&v| used[v] = true);
        chosen.push(i);
        compose(cycles, i + 1, used, chosen, emit);
        chosen.pop();
        cycles[i].iter().for_each(|&v| used[v] = false);
    }
}

/// Keeps the loops and the edges lying on some elementary cycle after
/// relabeling. A non-loop edge is on a cycle iff both ends share a strongly
/// connected component, so this runs in linear time once a matching is known.
pub fn pm_diagram(dir: &DirectedView) -> Result<PMDiagram> {
    let bip = to_bipartite(&dir.to_adjacency());
    let initial = initial_perfect_matching(&bip).ok_or(LqnError::NoPerfectMatching)?;
    let (relabeled, relabeling) = relabel_to_loops(dir, &initial)?;

    let n = dir.n();
    let mut comp = vec![0; n];
    for (k, block) in tarjan(&relabeled.successors(), &vec![true; n]).iter().enumerate() {
        for &v in block {
            comp[v] = k;
        }
    }
    let (kept, dropped): (Vec<DirectedEdge>, Vec<DirectedEdge>) =
        relabeled.edges().iter().partition(|e| e.is_loop() || comp[e.from] == comp[e.to]);
    let removed = dropped
        .into_iter()
        .map(|e| DirectedEdge { to: relabeling.detector_of_vertex(e.to), ..e })
        .collect();
    Ok(PMDiagram { view: DirectedView::from_edges(n, kept)?, relabeling, removed })
}
