//! Karp–Sipser greedy reductions.
//!
//! Degree-one nodes are matched to their only neighbor. A degree-two node
//! `v` with neighbors `u, w` is removed and `u, w` are merged into a fresh
//! node; any maximum matching of the contracted graph expands to one of the
//! original. Reductions are applied FIFO from a worklist seeded in node order.

use std::collections::VecDeque;

use super::{Graph, MatchState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Degree-one `node` matched to its only neighbor.
    Pendant { node: usize, partner: usize },
    /// Degree-two `node` removed; `left` and `right` merged into `merged`.
    /// `left_neighbors` is `left`'s neighborhood at contraction time.
    Contract {
        node: usize,
        left: usize,
        right: usize,
        merged: usize,
        left_neighbors: Vec<usize>,
    },
    /// Unforced greedy choice, taken only when no reduction applies.
    Greedy { node: usize, partner: usize },
}

/// Applied reductions in order. Node ids at or above the original node
/// count name contracted nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionLog {
    pub steps: Vec<Reduction>,
}

impl ReductionLog {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    /// Graph left after the reductions, on compact ids.
    pub reduced: Graph,
    /// Reduced-graph node → id in the extended id space.
    pub survivors: Vec<usize>,
    pub log: ReductionLog,
    original: usize,
    extended: usize,
}

impl GreedyOutcome {
    pub fn original_nodes(&self) -> usize {
        self.original
    }

    /// Expands a matching of the reduced graph to a matching of the input
    /// by replaying the log in reverse.
    pub fn expand(&self, reduced: &MatchState) -> MatchState {
        assert_eq!(reduced.len(), self.survivors.len(), "matching is not on the reduced graph");
        let mut m = MatchState::empty(self.extended);
        for (u, v) in reduced.pairs() {
            m.pair(self.survivors[u], self.survivors[v]);
        }
        for step in self.log.steps.iter().rev() {
            match step {
                Reduction::Pendant { node, partner } | Reduction::Greedy { node, partner } => {
                    m.pair(*node, *partner)
                }
                Reduction::Contract {
                    node,
                    left,
                    right,
                    merged,
                    left_neighbors,
                } => match m.partner(*merged) {
                    Some(y) => {
                        m.unpair(*merged);
                        if left_neighbors.contains(&y) {
                            m.pair(*left, y);
                            m.pair(*node, *right);
                        } else {
                            m.pair(*right, y);
                            m.pair(*node, *left);
                        }
                    }
                    None => m.pair(*node, *left),
                },
            }
        }
        let mut partner = m.partners().to_vec();
        partner.truncate(self.original);
        debug_assert!(partner.iter().flatten().all(|&p| p < self.original));
        MatchState::from_partners(partner)
    }

    /// The matching the reductions alone produce (reduced graph left unmatched).
    pub fn partial(&self) -> MatchState {
        self.expand(&MatchState::empty(self.survivors.len()))
    }
}

struct Reducer {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    queue: VecDeque<usize>,
    log: Vec<Reduction>,
}

impl Reducer {
    fn new(graph: &Graph) -> Self {
        let n = graph.node_count();
        let adj: Vec<Vec<usize>> = (0..n).map(|v| graph.neighbors(v).to_vec()).collect();
        let queue = (0..n).filter(|&v| adj[v].len() <= 2).collect();
        Reducer {
            adj,
            alive: vec![true; n],
            queue,
            log: Vec::new(),
        }
    }

    fn remove(&mut self, x: usize) {
        self.alive[x] = false;
        for y in std::mem::take(&mut self.adj[x]) {
            self.adj[y].retain(|&z| z != x);
            if self.adj[y].len() <= 2 {
                self.queue.push_back(y);
            }
        }
    }

    fn contract(&mut self, v: usize) {
        let (left, right) = (self.adj[v][0], self.adj[v][1]);
        let merged = self.adj.len();
        let left_neighbors: Vec<usize> = self.adj[left].iter().copied().filter(|&y| y != v).collect();

        let mut union: Vec<usize> = self.adj[left]
            .iter()
            .chain(&self.adj[right])
            .copied()
            .filter(|&y| y != v && y != left && y != right)
            .collect();
        union.sort_unstable();
        union.dedup();

        self.alive[v] = false;
        self.alive[left] = false;
        self.alive[right] = false;
        self.adj[v].clear();
        self.adj[left].clear();
        self.adj[right].clear();
        for &y in &union {
            self.adj[y].retain(|&z| z != left && z != right);
            self.adj[y].push(merged);
            if self.adj[y].len() <= 2 {
                self.queue.push_back(y);
            }
        }
        self.alive.push(true);
        self.adj.push(union);
        if self.adj[merged].len() <= 2 {
            self.queue.push_back(merged);
        }
        self.log.push(Reduction::Contract {
            node: v,
            left,
            right,
            merged,
            left_neighbors,
        });
    }

    fn drain(&mut self) {
        while let Some(v) = self.queue.pop_front() {
            if !self.alive[v] {
                continue;
            }
            match self.adj[v].len() {
                0 => self.alive[v] = false,
                1 => {
                    let partner = self.adj[v][0];
                    self.log.push(Reduction::Pendant { node: v, partner });
                    self.remove(v);
                    self.remove(partner);
                }
                2 => self.contract(v),
                _ => {}
            }
        }
    }

    /// Matches the lowest live node with its lowest-degree neighbor.
    fn greedy_step(&mut self, cursor: &mut usize) -> bool {
        while *cursor < self.adj.len() && (!self.alive[*cursor] || self.adj[*cursor].is_empty()) {
            *cursor += 1;
        }
        if *cursor >= self.adj.len() {
            return false;
        }
        let v = *cursor;
        let partner = *self.adj[v]
            .iter()
            .min_by_key(|&&u| (self.adj[u].len(), u))
            .expect("non-empty neighborhood");
        self.log.push(Reduction::Greedy { node: v, partner });
        self.remove(v);
        self.remove(partner);
        true
    }

    fn finish(self, original: usize) -> GreedyOutcome {
        let survivors: Vec<usize> = (0..self.adj.len()).filter(|&v| self.alive[v]).collect();
        let mut compact = vec![usize::MAX; self.adj.len()];
        for (i, &v) in survivors.iter().enumerate() {
            compact[v] = i;
        }
        let reduced = Graph::from_adjacency(
            survivors
                .iter()
                .map(|&v| self.adj[v].iter().map(|&u| compact[u]).collect())
                .collect(),
        );
        GreedyOutcome {
            reduced,
            survivors,
            log: ReductionLog { steps: self.log },
            original,
            extended: self.adj.len(),
        }
    }
}

/// Forced reductions only; the reduced graph has minimum degree 3 or is empty.
pub fn greedy_reduce(graph: &Graph) -> GreedyOutcome {
    let mut r = Reducer::new(graph);
    r.drain();
    r.finish(graph.node_count())
}

/// Forced reductions plus a deterministic greedy edge choice whenever none
/// applies, so the whole graph is consumed.
pub fn karp_sipser(graph: &Graph) -> GreedyOutcome {
    let mut r = Reducer::new(graph);
    let mut cursor = 0;
    loop {
        r.drain();
        if !r.greedy_step(&mut cursor) {
            break;
        }
    }
    r.finish(graph.node_count())
}
