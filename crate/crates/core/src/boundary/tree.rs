use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matching::Graph;

/// Breadth-first spanning tree of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpanningTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Tree neighbors of each node, in graph neighbor order.
    pub adjacency: Vec<Vec<usize>>,
    /// Nodes in breadth-first order.
    pub order: Vec<usize>,
    /// Subtree sizes with respect to `root`.
    pub size: Vec<usize>,
}

impl DualSpanningTree {
    pub fn bfs(graph: &Graph, root: usize) -> Result<Self> {
        let n = graph.node_count();
        if root >= n {
            return Err(Error::TooSmall(n));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut adjacency = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    adjacency[v].push(u);
                    adjacency[u].push(v);
                    queue.push_back(u);
                }
            }
        }
        if order.len() != n {
            let mut uf = crate::unionfind::UnionFind::new(n);
            for (a, b) in graph.edges() {
                uf.union(a, b);
            }
            let components = uf.sets();
            return Err(Error::Invalid(crate::validate::ValidationReport {
                violations: vec![crate::validate::Violation::DisconnectedDual { components }],
            }));
        }
        let mut size = vec![1; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        Ok(DualSpanningTree {
            root,
            parent,
            adjacency,
            order,
            size,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count().saturating_sub(1)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(parent, child)` for every tree edge, in breadth-first order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .filter_map(|&v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    /// Node counts on the `u` side and the `v` side of tree edge `(u, v)`.
    pub fn sides(&self, u: usize, v: usize) -> (usize, usize) {
        let n = self.node_count();
        if self.parent[v] == Some(u) {
            (n - self.size[v], self.size[v])
        } else {
            (self.size[u], n - self.size[u])
        }
    }

    /// Nodes reachable from `start` without using edge `(start, blocked)`,
    /// with their distances and BFS parents.
    fn side_bfs(&self, start: usize, blocked: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = self.node_count();
        let mut dist = vec![usize::MAX; n];
        let mut from = vec![usize::MAX; n];
        let mut nodes = vec![start];
        dist[start] = 0;
        let mut i = 0;
        while i < nodes.len() {
            let v = nodes[i];
            i += 1;
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX && !(v == start && u == blocked) {
                    dist[u] = dist[v] + 1;
                    from[u] = v;
                    nodes.push(u);
                }
            }
        }
        (nodes, dist, from)
    }
}

/// The tree edge maximizing the smaller side, ties to the smallest
/// `(min, max)` node pair. Returned as `(parent, child)`.
pub fn balance_edge(tree: &DualSpanningTree) -> Result<(usize, usize)> {
    let n = tree.node_count();
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    tree.edges()
        .into_iter()
        .max_by_key(|&(p, c)| {
            let small = tree.size[c].min(n - tree.size[c]);
            (small, std::cmp::Reverse((p.min(c), p.max(c))))
        })
        .ok_or(Error::TooSmall(n))
}

/// Leaf-to-leaf tree path through a chosen edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinePath {
    pub nodes: Vec<usize>,
    /// The balance edge, oriented along `nodes`.
    pub edge: (usize, usize),
}

impl SpinePath {
    /// Number of tree edges on the path.
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Joins the farthest node on each side of `(u, v)` (ties to the smallest
/// id) through the edge.
pub fn spine_path(tree: &DualSpanningTree, (u, v): (usize, usize)) -> SpinePath {
    let walk = |start: usize, blocked: usize| {
        let (nodes, dist, from) = tree.side_bfs(start, blocked);
        let far = nodes
            .iter()
            .copied()
            .max_by_key(|&x| (dist[x], std::cmp::Reverse(x)))
            .expect("side contains its endpoint");
        let mut path = vec![far];
        let mut cur = far;
        while cur != start {
            cur = from[cur];
            path.push(cur);
        }
        path
    };
    let mut nodes = walk(u, v);
    let mut tail = walk(v, u);
    tail.reverse();
    nodes.extend(tail);
    SpinePath { nodes, edge: (u, v) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn path_of_six() {
        let tree = DualSpanningTree::bfs(&path_graph(6), 0).unwrap();
        let e = balance_edge(&tree).unwrap();
        assert_eq!(e, (2, 3));
        assert_eq!(tree.sides(e.0, e.1), (3, 3));
        let spine = spine_path(&tree, e);
        assert_eq!(spine.nodes, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(spine.len(), 5);
    }

    #[test]
    fn star_center_side() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let tree = DualSpanningTree::bfs(&g, 0).unwrap();
        let e = balance_edge(&tree).unwrap();
        assert_eq!(e, (0, 1));
        let spine = spine_path(&tree, e);
        assert_eq!(spine.nodes, vec![2, 0, 1]);
        // Single-node side keeps its only node as the leaf.
        let spine = spine_path(&tree, (1, 0));
        assert_eq!(spine.nodes.first(), Some(&1));
    }

    #[test]
    fn too_small() {
        let tree = DualSpanningTree::bfs(&path_graph(2), 0).unwrap();
        assert!(matches!(balance_edge(&tree), Err(Error::TooSmall(2))));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(DualSpanningTree::bfs(&g, 0).is_err());
    }
}
