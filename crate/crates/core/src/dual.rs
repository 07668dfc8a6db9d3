//! Triangle-adjacency (dual) graph.

use crate::matching::Graph;
use crate::mesh::{EdgeKey, Mesh};

/// One node per triangle, one edge per interior mesh edge.
///
/// Neighbor lists follow the triangle's edge order `(v0,v1), (v1,v2), (v2,v0)`,
/// skipping boundary edges, so construction is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    adjacency: Vec<Vec<(usize, EdgeKey)>>,
}

pub fn build_dual(mesh: &Mesh) -> DualGraph {
    let adjacency = (0..mesh.triangle_count())
        .map(|t| {
            mesh.triangle_edges(t)
                .into_iter()
                .filter_map(|e| {
                    let inc = mesh.incident(e);
                    (inc.len() == 2).then(|| (if inc[0] == t { inc[1] } else { inc[0] }, e))
                })
                .collect()
        })
        .collect();
    DualGraph { adjacency }
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, t: usize) -> &[(usize, EdgeKey)] {
        &self.adjacency[t]
    }

    pub fn degree(&self, t: usize) -> usize {
        self.adjacency[t].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_cubic(&self) -> bool {
        self.adjacency.iter().all(|n| n.len() == 3)
    }

    /// Each dual edge once, as `(smaller node, larger node, shared edge)`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeKey)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (t, nbrs) in self.adjacency.iter().enumerate() {
            for &(u, e) in nbrs {
                if t < u {
                    out.push((t, u, e));
                }
            }
        }
        out
    }

    /// The edge shared by `t` and `u`, if they are adjacent.
    pub fn edge_between(&self, t: usize, u: usize) -> Option<EdgeKey> {
        self.adjacency[t].iter().find(|(n, _)| *n == u).map(|(_, e)| *e)
    }

    /// Plain adjacency view for the matching routines.
    pub fn to_graph(&self) -> Graph {
        Graph::from_adjacency(
            self.adjacency
                .iter()
                .map(|n| n.iter().map(|(u, _)| *u).collect())
                .collect(),
        )
    }
}
