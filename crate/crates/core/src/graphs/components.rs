use serde::Serialize;

use super::PMDiagram;
use crate::partition::Partition;

/// Strongly connected components of the subgraph induced by `active`
/// vertices (Tarjan). Loops are irrelevant to the result.
pub(crate) fn tarjan(succ: &[Vec<usize>], active: &[bool]) -> Vec<Vec<usize>> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        active: &'a [bool],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(st: &mut State<'_>, v: usize) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &st.succ[v] {
            if !st.active[w] {
                continue;
            }
            match st.index[w] {
                None => {
                    visit(st, w);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                _ => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.out.push(comp);
        }
    }

    let n = succ.len();
    let mut st = State {
        succ,
        active,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for (v, &on) in active.iter().enumerate() {
        if on && st.index[v].is_none() {
            visit(&mut st, v);
        }
    }
    st.out
}

/// The component containing `s`, restricted to `active` vertices.
pub(crate) fn scc_of(s: usize, succ: &[Vec<usize>], active: &[bool]) -> Vec<usize> {
    // forward and backward reachability intersect in the SCC of s
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let reach = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut todo = vec![s];
        seen[s] = true;
        while let Some(v) = todo.pop() {
            for &w in &adj[v] {
                if active[w] && !seen[w] {
                    seen[w] = true;
                    todo.push(w);
                }
            }
        }
        seen
    };
    let fwd = reach(succ);
    let bwd = reach(&pred);
    (0..n).filter(|&v| fwd[v] && bwd[v]).collect()
}

/// SCC decomposition of a digraph given by successor lists.
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Partition {
    Partition::new(tarjan(succ, &vec![true; succ.len()]))
}

/// Connected components of the diagram, edge direction ignored.
pub fn weak_components(diag: &PMDiagram) -> Partition {
    let n = diag.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in diag.view().edges() {
        let (ra, rb) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        blocks[r].push(v);
    }
    Partition::new(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SccReport {
    pub strongly_connected: bool,
    pub components: Partition,
}

/// SCC partition of the diagram and whether one component spans every vertex.
pub fn strongly_connected(diag: &PMDiagram) -> SccReport {
    let components = strongly_connected_components(&diag.view().successors());
    SccReport { strongly_connected: components.len() == 1, components }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_on_two_cycles_and_a_bridge() {
        let succ = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let p = strongly_connected_components(&succ);
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(scc_of(2, &succ, &[true; 4]), vec![2, 3]);
        assert_eq!(scc_of(1, &succ, &[false, true, true, true]), vec![1]);
    }
}
