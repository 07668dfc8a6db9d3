
use crate::dual::DualGraph;
use crate::error::{Error, Result};
use crate::matching::MatchState;
use crate::mesh::EdgeKey;
use crate::unionfind::UnionFind;

/// Partition of the triangles into cycles of unmatched dual edges.
#[derive(Clone, Debug)]
pub struct CycleSet {
    /// Cycle index of each triangle.
    pub cycle_id: Vec<usize>,
    /// Cyclic triangle sequences, ordered by their smallest triangle.
    pub cycles: Vec<Vec<usize>>,
    /// Triangle-level membership, kept current while cycles are merged.
    pub membership: UnionFind,
}

impl CycleSet {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn total_len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn shortest(&self) -> Option<usize> {
        self.cycles.iter().map(Vec::len).min()
    }
}

/// The two dual neighbors of `t` not matched to it.
pub fn unmatched_neighbors(dual: &DualGraph, matching: &MatchState, t: usize) -> Result<[usize; 2]> {
    let partner = matching.partner(t);
    let mut out = [usize::MAX; 2];
    let mut count = 0;
    for &(u, _) in dual.neighbors(t) {
        if Some(u) != partner {
            if count < 2 {
                out[count] = u;
            }
            count += 1;
        }
    }
    if count != 2 || partner.is_none() {
        return Err(Error::BrokenMatching { node: t, count });
    }
    Ok(out)
}

pub fn extract_cycles(dual: &DualGraph, matching: &MatchState) -> Result<CycleSet> {
    let n = dual.node_count();
    let mut next = Vec::with_capacity(n);
    for t in 0..n {
        next.push(unmatched_neighbors(dual, matching, t)?);
    }
    let mut cycle_id = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    let mut membership = UnionFind::new(n);
    for start in 0..n {
        if cycle_id[start] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cycle = vec![start];
        cycle_id[start] = id;
        let (mut prev, mut cur) = (start, next[start][0]);
        while cur != start {
            if cycle_id[cur] != usize::MAX {
                return Err(Error::Invariant(format!("unmatched edges at triangle {cur} do not form disjoint cycles")));
            }
            cycle_id[cur] = id;
            membership.union(start, cur);
            cycle.push(cur);
            let [a, b] = next[cur];
            let step = if a != prev { a } else { b };
            prev = cur;
            cur = step;
        }
        cycles.push(cycle);
    }
    Ok(CycleSet {
        cycle_id,
        cycles,
        membership,
    })
}

/// Adjacency between cycles across matched dual edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGraph {
    pub nodes: usize,
    /// `(cycle, cycle, matched edge, (triangle, triangle))`, sorted by edge key.
    pub edges: Vec<(usize, usize, EdgeKey, (usize, usize))>,
}

impl CycleGraph {
    pub fn build(dual: &DualGraph, matching: &MatchState, cycles: &CycleSet) -> Self {
        let mut edges = Vec::new();
        for (t, u) in matching.pairs() {
            let (ct, cu) = (cycles.cycle_id[t], cycles.cycle_id[u]);
            if ct != cu {
                let key = dual.edge_between(t, u).expect("matched triangles are adjacent");
                edges.push((ct.min(cu), ct.max(cu), key, (t, u)));
            }
        }
        edges.sort_by_key(|e| e.2);
        CycleGraph {
            nodes: cycles.count(),
            edges,
        }
    }

    /// Breadth-first spanning tree from the largest cycle (smallest id on
    /// ties), taking each cycle's candidate edges in key order.
    pub fn spanning_tree(&self, cycles: &CycleSet) -> Result<Vec<(usize, usize, EdgeKey, (usize, usize))>> {
        if self.nodes == 0 {
            return Ok(Vec::new());
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.0].push(i);
            incident[e.1].push(i);
        }
        let root = (0..self.nodes)
            .max_by_key(|&c| (cycles.cycles[c].len(), std::cmp::Reverse(c)))
            .expect("non-empty");
        let mut seen = vec![false; self.nodes];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut tree = Vec::with_capacity(self.nodes - 1);
        while let Some(c) = queue.pop_front() {
            for &i in &incident[c] {
                let e = self.edges[i];
                let other = if e.0 == c { e.1 } else { e.0 };
                if !seen[other] {
                    seen[other] = true;
                    tree.push(e);
                    queue.push_back(other);
                }
            }
        }
        if tree.len() + 1 != self.nodes {
            let mut uf = UnionFind::new(self.nodes);
            for e in &self.edges {
                uf.union(e.0, e.1);
            }
            return Err(Error::DisconnectedCycleGraph { components: uf.sets() });
        }
        Ok(tree)
    }
}
