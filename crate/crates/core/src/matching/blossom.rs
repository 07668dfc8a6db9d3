//! Edmonds' blossom algorithm, one breadth-first alternating-forest search
//! per augmentation, with blossoms tracked by a union-find whose
//! representative is the blossom base.
//!
//! Search state is reset only for the nodes a search touched, so a search
//! costs time proportional to the region it explores rather than to the
//! whole graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Graph, MatchState};

const NIL: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Unreached,
    Outer,
    Inner,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlossomStats {
    pub augmentations: usize,
    pub searches: usize,
}

struct Forest<'g> {
    graph: &'g Graph,
    mate: Vec<usize>,
    label: Vec<Label>,
    pred: Vec<usize>,
    base: Vec<usize>,
    stamp: Vec<u64>,
    epoch: u64,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'g> Forest<'g> {
    fn new(graph: &'g Graph, seed: &MatchState) -> Self {
        let n = graph.node_count();
        Forest {
            graph,
            mate: seed.partners().iter().map(|p| p.unwrap_or(NIL)).collect(),
            label: vec![Label::Unreached; n],
            pred: vec![NIL; n],
            base: (0..n).collect(),
            stamp: vec![0; n],
            epoch: 0,
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.base[root] != root {
            root = self.base[root];
        }
        let mut cur = x;
        while self.base[cur] != root {
            let next = self.base[cur];
            self.base[cur] = root;
            cur = next;
        }
        root
    }

    fn label(&mut self, v: usize, label: Label) {
        if self.label[v] == Label::Unreached {
            self.touched.push(v);
        }
        self.label[v] = label;
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.label[v] = Label::Unreached;
            self.pred[v] = NIL;
            self.base[v] = v;
        }
        self.queue.clear();
    }

    /// Nearest common base of `x` and `y` in the alternating tree.
    fn common_base(&mut self, x: usize, y: usize) -> usize {
        self.epoch += 1;
        let (mut u, mut v) = (self.find(x), self.find(y));
        loop {
            if u != NIL {
                if self.stamp[u] == self.epoch {
                    return u;
                }
                self.stamp[u] = self.epoch;
                u = match self.mate[u] {
                    NIL => NIL,
                    m => {
                        let p = self.pred[m];
                        self.find(p)
                    }
                };
            }
            std::mem::swap(&mut u, &mut v);
        }
    }

    /// Folds the tree path from `x` up to base `b` into the blossom,
    /// threading `pred` links so augmenting paths can pass through it.
    fn fold(&mut self, mut x: usize, mut y: usize, b: usize) {
        while self.find(x) != b {
            self.pred[x] = y;
            y = self.mate[x];
            if self.label[y] == Label::Inner {
                self.label[y] = Label::Outer;
                self.queue.push_back(y);
            }
            if self.find(x) == x {
                self.base[x] = b;
            }
            if self.find(y) == y {
                self.base[y] = b;
            }
            x = self.pred[y];
        }
    }

    fn augment(&mut self, mut u: usize) {
        while u != NIL {
            let p = self.pred[u];
            let next = self.mate[p];
            self.mate[u] = p;
            self.mate[p] = u;
            u = next;
        }
    }

    /// Searches for an augmenting path from the free node `root`.
    fn search(&mut self, root: usize) -> bool {
        self.label(root, Label::Outer);
        self.queue.push_back(root);
        while let Some(x) = self.queue.pop_front() {
            let graph = self.graph;
            for &y in graph.neighbors(x) {
                if self.label[y] == Label::Inner || self.find(x) == self.find(y) {
                    continue;
                }
                if self.label[y] == Label::Unreached {
                    self.label(y, Label::Inner);
                    self.pred[y] = x;
                    if self.mate[y] == NIL {
                        self.augment(y);
                        self.reset();
                        return true;
                    }
                    let m = self.mate[y];
                    self.label(m, Label::Outer);
                    self.queue.push_back(m);
                } else {
                    let b = self.common_base(x, y);
                    self.fold(x, y, b);
                    self.fold(y, x, b);
                }
            }
        }
        self.reset();
        false
    }
}

pub fn blossom_maximum_matching(graph: &Graph, seed: &MatchState) -> MatchState {
    blossom_with_stats(graph, seed).0
}

/// Maximum matching grown from `seed`; each successful search adds one pair.
pub fn blossom_with_stats(graph: &Graph, seed: &MatchState) -> (MatchState, BlossomStats) {
    assert_eq!(seed.len(), graph.node_count(), "seed matching size mismatch");
    let mut forest = Forest::new(graph, seed);
    let mut stats = BlossomStats::default();
    // A node with no augmenting path now never gets one later.
    for root in 0..graph.node_count() {
        if forest.mate[root] == NIL {
            stats.searches += 1;
            if forest.search(root) {
                stats.augmentations += 1;
            }
        }
    }
    let partner = forest
        .mate
        .iter()
        .map(|&m| (m != NIL).then_some(m))
        .collect();
    (MatchState::from_partners(partner), stats)
}

#[cfg(test)]
mod tests {
    use super::super::oracle::*;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_graphs_match_oracle() {
        for (g, size) in [(k4(), 2), (cube(), 4), (petersen(), 5)] {
            let m = blossom_maximum_matching(&g, &MatchState::empty(g.node_count()));
            assert!(m.check(&g).is_ok());
            assert_eq!(m.size(), size);
            assert_eq!(size, brute_force_max(&g));
        }
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // Pentagon with a pendant on node 0; seeded so that the only
        // augmenting path runs through the odd cycle.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (3, 6)]);
        let mut seed = MatchState::empty(7);
        seed.pair(0, 1);
        seed.pair(2, 3);
        let (m, stats) = blossom_with_stats(&g, &seed);
        assert!(m.check(&g).is_ok());
        assert_eq!(m.size(), 3);
        assert_eq!(stats.augmentations, 1);
    }

    #[test]
    fn random_graphs_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let expect = brute_force_max(&g);
            let m = blossom_maximum_matching(&g, &MatchState::empty(n));
            assert!(m.check(&g).is_ok());
            assert_eq!(m.size(), expect, "edges {edges:?}");
            let (m2, _) = crate::matching::maximum_matching(&g);
            assert_eq!(m2.size(), expect);
            assert_eq!(crate::matching::maximum_matching_reduced(&g).size(), expect);
        }
    }

    #[test]
    fn augmentations_account_for_every_new_pair() {
        let g = petersen();
        let mut seed = MatchState::empty(10);
        seed.pair(0, 1);
        let (m, stats) = blossom_with_stats(&g, &seed);
        assert_eq!(stats.augmentations, m.size() - seed.size());
    }
}
