//! Strip assembly from a doubled spanning tree.
//!
//! Every tree edge off the spine is traversed twice, so it gets a midpoint
//! and the two triangles on it are cut into fragments that the strip enters
//! through one half of the edge and leaves through the other.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::mesh::{midpoint, EdgeKey, Mesh};

use super::tree::{DualSpanningTree, SpinePath};

#[derive(Clone, Debug)]
pub struct EulerStrip {
    pub mesh: Mesh,
    pub order: Vec<usize>,
    /// Input triangle of each output triangle.
    pub parents: Vec<usize>,
    /// Number of doubled (split) tree edges.
    pub doubled: usize,
}

enum Task {
    Tri([usize; 3], usize),
    /// Subtree fragment of `node`, entered through the parent-edge half
    /// ending at `entry`.
    Node { node: usize, entry: usize },
}

enum Item {
    Tri([usize; 3]),
    Child { node: usize, forward: usize, backward: usize },
}

/// `tri` rotated so the directed edge covering `edge` comes first.
fn rotate_to_edge(tri: [usize; 3], edge: EdgeKey) -> Option<[usize; 3]> {
    (0..3)
        .find(|&i| edge.contains(tri[i]) && edge.contains(tri[(i + 1) % 3]))
        .map(|i| [tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]])
}

struct Builder<'a> {
    mesh: &'a Mesh,
    /// Midpoint vertex of the doubled edge from each node to its parent.
    mid: Vec<usize>,
    /// Parent toward the spine, `None` on the spine.
    up: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Builder<'_> {
    fn edge_to(&self, a: usize, b: usize) -> Result<EdgeKey> {
        self.mesh
            .shared_edge(a, b)
            .ok_or(Error::NotAdjacent(a, b))
    }

    fn child_on(&self, node: usize, edge: EdgeKey) -> Option<usize> {
        self.children[node]
            .iter()
            .copied()
            .find(|&c| self.mesh.shared_edge(node, c) == Some(edge))
    }

    /// Fan from the parent-edge midpoint, in forward order (entered through
    /// the half ending at the second vertex of the parent edge).
    fn fan_items(&self, node: usize) -> Result<(Vec<Item>, usize, usize)> {
        let up = self.up[node].expect("non-spine node");
        let edge = self.edge_to(node, up)?;
        let [x, y, z] = rotate_to_edge(self.mesh.triangle(node), edge)
            .ok_or_else(|| Error::Invariant(format!("edge {edge} not on triangle {node}")))?;
        let a = self.mid[node];
        let mut poly: Vec<(usize, Option<usize>)> = vec![(y, None)];
        for (p, q) in [(y, z), (z, x)] {
            if let Some(c) = self.child_on(node, EdgeKey::new(p, q)) {
                poly.push((self.mid[c], Some(c)));
            }
            poly.push((q, None));
        }
        let mut items = Vec::with_capacity(2 * poly.len());
        for i in 0..poly.len() - 1 {
            items.push(Item::Tri([a, poly[i].0, poly[i + 1].0]));
            if let Some(c) = poly[i + 1].1 {
                items.push(Item::Child {
                    node: c,
                    forward: poly[i].0,
                    backward: poly[i + 2].0,
                });
            }
        }
        Ok((items, x, y))
    }

    fn spine_items(&self, node: usize, prev: Option<usize>, next: Option<usize>) -> Result<Vec<Item>> {
        match self.children[node].as_slice() {
            [] => Ok(vec![Item::Tri(self.mesh.triangle(node))]),
            &[c] => {
                let edge = self.edge_to(node, c)?;
                let [q, r, s] = rotate_to_edge(self.mesh.triangle(node), edge)
                    .ok_or_else(|| Error::Invariant(format!("edge {edge} not on triangle {node}")))?;
                let m = self.mid[c];
                let first_q = match (prev, next) {
                    (Some(p), _) => self.edge_to(node, p)? == EdgeKey::new(s, q),
                    (None, Some(n)) => self.edge_to(node, n)? == EdgeKey::new(r, s),
                    (None, None) => true,
                };
                let side_q = Item::Tri([s, q, m]);
                let side_r = Item::Tri([s, m, r]);
                Ok(if first_q {
                    vec![side_q, Item::Child { node: c, forward: q, backward: r }, side_r]
                } else {
                    vec![side_r, Item::Child { node: c, forward: r, backward: q }, side_q]
                })
            }
            many => Err(Error::Invariant(format!(
                "spine triangle {node} has {} off-spine tree edges",
                many.len()
            ))),
        }
    }
}

/// Builds the subdivided mesh and the open strip. Spine edges are crossed
/// once, all other tree edges twice, non-tree edges never.
pub fn euler_strip(mesh: &Mesh, tree: &DualSpanningTree, spine: &SpinePath) -> Result<EulerStrip> {
    let n = mesh.triangle_count();
    if tree.node_count() != n || spine.nodes.is_empty() {
        return Err(Error::Invariant("spanning tree does not match the mesh".into()));
    }
    for w in spine.nodes.windows(2) {
        if !tree.is_edge(w[0], w[1]) {
            return Err(Error::NotAdjacent(w[0], w[1]));
        }
    }

    let mut on_spine = vec![false; n];
    for &v in &spine.nodes {
        on_spine[v] = true;
    }
    let mut up = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut seen = on_spine.clone();
    let mut queue: VecDeque<usize> = spine.nodes.iter().copied().collect();
    let mut discovery = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        for &u in &tree.adjacency[v] {
            if !seen[u] {
                seen[u] = true;
                up[u] = Some(v);
                children[v].push(u);
                discovery.push(u);
                queue.push_back(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invariant("spanning tree does not reach every triangle".into()));
    }

    let mut vertices = mesh.vertices().to_vec();
    let mut mid = vec![usize::MAX; n];
    for &v in &discovery {
        let edge = mesh
            .shared_edge(v, up[v].expect("discovered node"))
            .ok_or(Error::NotAdjacent(v, up[v].unwrap_or(v)))?;
        mid[v] = vertices.len();
        vertices.push(midpoint(mesh.vertex(edge.a()), mesh.vertex(edge.b())));
    }

    let builder = Builder {
        mesh,
        mid,
        up,
        children,
    };

    let mut triangles = Vec::with_capacity(3 * n);
    let mut parents = Vec::with_capacity(3 * n);
    let mut stack: Vec<Task> = Vec::new();
    let push_items = |stack: &mut Vec<Task>, items: Vec<Item>, owner: usize, reversed: bool| {
        let tasks = items.into_iter().map(|item| match item {
            Item::Tri(t) => Task::Tri(t, owner),
            Item::Child { node, forward, backward } => Task::Node {
                node,
                entry: if reversed { backward } else { forward },
            },
        });
        // The stack pops last-in first, so emission order is pushed backwards.
        if reversed {
            stack.extend(tasks);
        } else {
            let tasks: Vec<Task> = tasks.collect();
            stack.extend(tasks.into_iter().rev());
        }
    };

    let len = spine.nodes.len();
    for (i, &v) in spine.nodes.iter().enumerate() {
        let prev = (i > 0).then(|| spine.nodes[i - 1]);
        let next = (i + 1 < len).then(|| spine.nodes[i + 1]);
        push_items(&mut stack, builder.spine_items(v, prev, next)?, v, false);
        while let Some(task) = stack.pop() {
            match task {
                Task::Tri(t, owner) => {
                    triangles.push(t);
                    parents.push(owner);
                }
                Task::Node { node, entry } => {
                    let (items, x, y) = builder.fan_items(node)?;
                    let reversed = if entry == y {
                        false
                    } else if entry == x {
                        true
                    } else {
                        return Err(Error::Invariant(format!(
                            "triangle {node} entered at vertex {entry}, not on its parent edge"
                        )));
                    };
                    push_items(&mut stack, items, node, reversed);
                }
            }
        }
    }

    let doubled = discovery.len();
    let order: Vec<usize> = (0..triangles.len()).collect();
    let out = Mesh::new(vertices, triangles)
        .map_err(|e| Error::Invariant(format!("subdivided strip mesh is malformed: {e}")))?;
    if out.triangle_count() != n + 2 * doubled {
        return Err(Error::Invariant(format!(
            "strip has {} triangles, expected {}",
            out.triangle_count(),
            n + 2 * doubled
        )));
    }
    Ok(EulerStrip {
        mesh: out,
        order,
        parents,
        doubled,
    })
}
