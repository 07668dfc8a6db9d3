//! Perfect matching on triangle dual graphs.
//!
//! A greedy phase built from Karp–Sipser degree-one and degree-two
//! reductions matches almost every node; Edmonds' blossom search then
//! augments the remainder to a maximum matching.

mod blossom;
mod greedy;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dual::DualGraph;
use crate::error::{Error, Result};

pub use blossom::{blossom_maximum_matching, blossom_with_stats, BlossomStats};
pub use greedy::{greedy_reduce, karp_sipser, GreedyOutcome, Reduction, ReductionLog};

/// Simple undirected graph as adjacency lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        Graph { adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Per-node matched partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchState {
    partner: Vec<Option<usize>>,
}

impl MatchState {
    pub fn empty(n: usize) -> Self {
        MatchState {
            partner: vec![None; n],
        }
    }

    pub fn from_partners(partner: Vec<Option<usize>>) -> Self {
        MatchState { partner }
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner[v]
    }

    pub fn partners(&self) -> &[Option<usize>] {
        &self.partner
    }

    /// Number of matched pairs.
    pub fn size(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.partner.iter().all(Option::is_some)
    }

    pub fn unmatched(&self) -> Vec<usize> {
        (0..self.partner.len())
            .filter(|&v| self.partner[v].is_none())
            .collect()
    }

    /// Matches `u` with `v`, dropping any previous partners of either.
    pub fn pair(&mut self, u: usize, v: usize) {
        self.unpair(u);
        self.unpair(v);
        self.partner[u] = Some(v);
        self.partner[v] = Some(u);
    }

    pub fn unpair(&mut self, u: usize) {
        if let Some(v) = self.partner[u].take() {
            self.partner[v] = None;
        }
    }

    /// Grows the node set, new nodes unmatched.
    pub fn resize(&mut self, n: usize) {
        self.partner.resize(n, None);
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(u, p)| p.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    /// Checks partner symmetry and that every pair is a graph edge.
    pub fn check(&self, graph: &Graph) -> std::result::Result<(), String> {
        if self.partner.len() != graph.node_count() {
            return Err(format!(
                "matching covers {} nodes, graph has {}",
                self.partner.len(),
                graph.node_count()
            ));
        }
        for (u, p) in self.partner.iter().enumerate() {
            if let Some(v) = *p {
                if self.partner.get(v).copied().flatten() != Some(u) {
                    return Err(format!("partner of {u} is {v}, but partner of {v} is not {u}"));
                }
                if !graph.has_edge(u, v) {
                    return Err(format!("matched pair ({u}, {v}) is not an edge"));
                }
            }
        }
        Ok(())
    }

    /// Text dump, one `u v` pair per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.pairs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingStats {
    pub nodes: usize,
    /// Nodes matched by the greedy phase.
    pub greedy_matched: usize,
    pub augmentations: usize,
}

impl MatchingStats {
    pub fn greedy_coverage(&self) -> f64 {
        if self.nodes == 0 {
            1.0
        } else {
            self.greedy_matched as f64 / self.nodes as f64
        }
    }
}

/// Maximum matching: greedy seeding, then blossom augmentation on the full graph.
pub fn maximum_matching(graph: &Graph) -> (MatchState, MatchingStats) {
    let greedy = karp_sipser(graph);
    let seed = greedy.partial();
    let greedy_matched = 2 * seed.size();
    let (matching, stats) = blossom_with_stats(graph, &seed);
    (
        matching,
        MatchingStats {
            nodes: graph.node_count(),
            greedy_matched,
            augmentations: stats.augmentations,
        },
    )
}

/// Maximum matching through the forced reductions only: blossom runs on the
/// reduced graph and the reduction log expands its result.
pub fn maximum_matching_reduced(graph: &Graph) -> MatchState {
    let reduced = greedy_reduce(graph);
    let inner = blossom_maximum_matching(&reduced.reduced, &MatchState::empty(reduced.reduced.node_count()));
    reduced.expand(&inner)
}

/// Perfect matching of a triangle dual; anything short of perfect is an error.
pub fn perfect_match_dual(dual: &DualGraph) -> Result<(MatchState, MatchingStats)> {
    let graph = dual.to_graph();
    let (matching, stats) = maximum_matching(&graph);
    debug_assert!(matching.check(&graph).is_ok());
    if !matching.is_perfect() {
        return Err(Error::ImperfectMatching {
            unmatched: matching.unmatched(),
        });
    }
    Ok((matching, stats))
}
