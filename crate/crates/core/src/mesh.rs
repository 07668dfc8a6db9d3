//! Indexed triangle mesh with an edge → incident-triangle map.
//!
//! Triangles are stored as vertex-index triples in counter-clockwise order
//! with respect to the outward orientation. The edge map is kept in sync by
//! every mutating operation, so edge and adjacency queries are always O(1).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 3];

/// Undirected mesh edge, stored with the smaller vertex index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeKey {
    a: usize,
    b: usize,
}

impl EdgeKey {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            EdgeKey { a: u, b: v }
        } else {
            EdgeKey { a: v, b: u }
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Result of splitting the two triangles on an interior edge at its midpoint.
///
/// `children` is `[t1a, t1b, t2a, t2b]`: the first child of each parent
/// reuses the parent's id, the second is appended to the triangle list.
/// Around the midpoint the cyclic fan order is `t1a, t1b, t2a, t2b`;
/// `t1a`/`t2b` share one half of the old edge and `t1b`/`t2a` the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub edge: EdgeKey,
    pub midpoint: usize,
    pub parents: [usize; 2],
    pub children: [usize; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    edge_map: HashMap<EdgeKey, Vec<usize>>,
}

impl Mesh {
    /// Builds a mesh, rejecting out-of-range indices, degenerate triangles
    /// and duplicated triangles.
    pub fn new(vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let count = vertices.len();
        let mut seen: HashMap<[usize; 3], usize> = HashMap::with_capacity(triangles.len());
        for (face, tri) in triangles.iter().enumerate() {
            for &index in tri {
                if index >= count {
                    return Err(Error::IndexOutOfRange { face, index, count });
                }
            }
            if tri[0] == tri[1] || tri[0] == tri[2] {
                return Err(Error::DegenerateTriangle { face, vertex: tri[0] });
            }
            if tri[1] == tri[2] {
                return Err(Error::DegenerateTriangle { face, vertex: tri[1] });
            }
            let mut sorted = *tri;
            sorted.sort_unstable();
            if let Some(&other) = seen.get(&sorted) {
                return Err(Error::DuplicateTriangle { face, other });
            }
            seen.insert(sorted, face);
        }
        let mut mesh = Mesh {
            vertices,
            triangles,
            edge_map: HashMap::new(),
        };
        mesh.rebuild_edge_map();
        Ok(mesh)
    }

    fn rebuild_edge_map(&mut self) {
        let mut map: HashMap<EdgeKey, Vec<usize>> =
            HashMap::with_capacity(self.triangles.len() * 3 / 2 + 3);
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                map.entry(EdgeKey::new(tri[i], tri[(i + 1) % 3]))
                    .or_default()
                    .push(t);
            }
        }
        self.edge_map = map;
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex(&self, v: usize) -> Point {
        self.vertices[v]
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_map.len()
    }

    /// Triangles incident to `edge`; empty if the edge does not exist.
    pub fn incident(&self, edge: EdgeKey) -> &[usize] {
        self.edge_map.get(&edge).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All edges in ascending key order.
    pub fn edges(&self) -> Vec<EdgeKey> {
        let mut edges: Vec<EdgeKey> = self.edge_map.keys().copied().collect();
        edges.sort_unstable();
        edges
    }

    /// Edges with a single incident triangle, in ascending key order.
    pub fn boundary_edges(&self) -> Vec<EdgeKey> {
        let mut edges: Vec<EdgeKey> = self
            .edge_map
            .iter()
            .filter(|(_, tris)| tris.len() == 1)
            .map(|(e, _)| *e)
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn is_closed(&self) -> bool {
        self.edge_map.values().all(|tris| tris.len() == 2)
    }

    /// V - E + F, counting only vertices referenced by some triangle.
    pub fn euler_characteristic(&self) -> i64 {
        let mut used = vec![false; self.vertices.len()];
        for tri in &self.triangles {
            for &v in tri {
                used[v] = true;
            }
        }
        let v = used.iter().filter(|&&u| u).count() as i64;
        v - self.edge_map.len() as i64 + self.triangles.len() as i64
    }

    /// The three edges of `t`, in the order `(v0,v1), (v1,v2), (v2,v0)`.
    pub fn triangle_edges(&self, t: usize) -> [EdgeKey; 3] {
        let [a, b, c] = self.triangles[t];
        [EdgeKey::new(a, b), EdgeKey::new(b, c), EdgeKey::new(c, a)]
    }

    /// The triangle on the other side of `edge` from `t`, if any.
    pub fn neighbor_across(&self, t: usize, edge: EdgeKey) -> Option<usize> {
        self.incident(edge).iter().copied().find(|&o| o != t)
    }

    pub fn shared_edge(&self, t1: usize, t2: usize) -> Option<EdgeKey> {
        self.triangle_edges(t1)
            .into_iter()
            .find(|e| self.incident(*e).contains(&t2) && t1 != t2)
    }

    /// The vertex of `t` not on `edge`.
    pub fn apex(&self, t: usize, edge: EdgeKey) -> usize {
        let tri = self.triangles[t];
        *tri.iter()
            .find(|&&v| !edge.contains(v))
            .expect("edge belongs to triangle")
    }

    /// Incident triangles per vertex, each list in ascending id order.
    pub fn vertex_triangles(&self) -> Vec<Vec<usize>> {
        let mut fans = vec![Vec::new(); self.vertices.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                fans[v].push(t);
            }
        }
        fans
    }

    pub fn corners(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn area(&self, t: usize) -> f64 {
        let [p, q, r] = self.corners(t);
        0.5 * norm(cross(sub(q, p), sub(r, p)))
    }

    /// Longest edge length of `t`.
    pub fn diameter(&self, t: usize) -> f64 {
        let [p, q, r] = self.corners(t);
        dist(p, q).max(dist(q, r)).max(dist(r, p))
    }

    /// Splits both triangles on `edge` at the edge midpoint.
    ///
    /// Each parent `(p, q, r)` with directed edge `p -> q` becomes
    /// `(p, m, r)` (keeping the parent id) and `(m, q, r)` (appended), so
    /// the children keep the parent's winding and lie in its plane.
    pub fn split_pair(&mut self, edge: EdgeKey) -> Result<SplitRecord> {
        let incident = self.incident(edge);
        if incident.len() != 2 {
            return Err(Error::NotInteriorEdge(edge));
        }
        let parents = [incident[0], incident[1]];

        let pa = self.vertices[edge.a()];
        let pb = self.vertices[edge.b()];
        let m = self.vertices.len();
        self.vertices.push([
            (pa[0] + pb[0]) * 0.5,
            (pa[1] + pb[1]) * 0.5,
            (pa[2] + pb[2]) * 0.5,
        ]);

        self.edge_map.remove(&edge);
        let mut children = [0usize; 4];
        for (slot, &t) in parents.iter().enumerate() {
            let tri = self.triangles[t];
            let i = (0..3)
                .find(|&i| edge.contains(tri[i]) && edge.contains(tri[(i + 1) % 3]))
                .expect("edge belongs to triangle");
            let (p, q, r) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);

            let second = self.triangles.len();
            self.triangles[t] = [p, m, r];
            self.triangles.push([m, q, r]);

            // (r, p) still belongs to `t`; (q, r) moves to `second`.
            for owner in self
                .edge_map
                .get_mut(&EdgeKey::new(q, r))
                .expect("edge of existing triangle")
                .iter_mut()
            {
                if *owner == t {
                    *owner = second;
                }
            }
            self.edge_map.insert(EdgeKey::new(m, r), vec![t, second]);
            self.edge_map.entry(EdgeKey::new(p, m)).or_default().push(t);
            self.edge_map.entry(EdgeKey::new(m, q)).or_default().push(second);

            children[2 * slot] = t;
            children[2 * slot + 1] = second;
        }

        Ok(SplitRecord {
            edge,
            midpoint: m,
            parents,
            children,
        })
    }
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

pub fn midpoint(a: Point, b: Point) -> Point {
    [(a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5, (a[2] + b[2]) * 0.5]
}

pub fn centroid(p: Point, q: Point, r: Point) -> Point {
    [
        (p[0] + q[0] + r[0]) / 3.0,
        (p[1] + q[1] + r[1]) / 3.0,
        (p[2] + q[2] + r[2]) / 3.0,
    ]
}

/// Distance of `x` from the plane through `p, q, r`.
pub fn plane_distance(p: Point, q: Point, r: Point, x: Point) -> f64 {
    let n = cross(sub(q, p), sub(r, p));
    let len = norm(n);
    if len == 0.0 {
        return 0.0;
    }
    (dot(n, sub(x, p)) / len).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> Mesh {
        Mesh::new(
            vec![
                [0.0, 0.0, 0.0],
                [2.0, 0.0, 0.0],
                [0.0, 2.0, 0.0],
                [0.0, 0.0, 2.0],
            ],
            vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [2, 0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn edge_key_is_canonical() {
        assert_eq!(EdgeKey::new(5, 2), EdgeKey::new(2, 5));
        let e = EdgeKey::new(5, 2);
        assert_eq!((e.a(), e.b()), (2, 5));
        assert_eq!(e.other(2), 5);
    }

    #[test]
    fn tetrahedron_edges() {
        let mesh = tetrahedron();
        assert_eq!(mesh.edge_count(), 6);
        assert!(mesh.is_closed());
        assert_eq!(mesh.euler_characteristic(), 2);
    }

    #[test]
    fn rejects_bad_faces() {
        let v = vec![[0.0; 3]; 4];
        assert!(matches!(
            Mesh::new(v.clone(), vec![[0, 1, 99]]),
            Err(Error::IndexOutOfRange { index: 99, .. })
        ));
        assert!(matches!(
            Mesh::new(v.clone(), vec![[0, 1, 1]]),
            Err(Error::DegenerateTriangle { .. })
        ));
        assert!(matches!(
            Mesh::new(v, vec![[0, 1, 2], [1, 2, 0]]),
            Err(Error::DuplicateTriangle { face: 1, other: 0 })
        ));
    }

    #[test]
    fn split_counts_and_midpoint() {
        let mut mesh = tetrahedron();
        let rec = mesh.split_pair(EdgeKey::new(0, 1)).unwrap();
        assert_eq!(mesh.vertex_count(), 5);
        assert_eq!(mesh.triangle_count(), 6);
        assert_eq!(mesh.vertex(rec.midpoint), [1.0, 0.0, 0.0]);
        assert!(mesh.is_closed());
        assert_eq!(mesh.edge_count(), 9);
        assert!(mesh.incident(EdgeKey::new(0, 1)).is_empty());
    }

    #[test]
    fn split_children_coplanar_and_area_preserving() {
        let mut mesh = tetrahedron();
        let before: Vec<(f64, [Point; 3])> = (0..4).map(|t| (mesh.area(t), mesh.corners(t))).collect();
        let rec = mesh.split_pair(EdgeKey::new(1, 2)).unwrap();
        for (slot, &parent) in rec.parents.iter().enumerate() {
            let (area, [p, q, r]) = before[parent];
            let kids = [rec.children[2 * slot], rec.children[2 * slot + 1]];
            let sum: f64 = kids.iter().map(|&k| mesh.area(k)).sum();
            assert!((sum - area).abs() <= 1e-12 * area);
            for k in kids {
                assert!(mesh.area(k) > 0.0);
                for x in mesh.corners(k) {
                    assert_eq!(plane_distance(p, q, r, x), 0.0);
                }
            }
        }
    }

    #[test]
    fn split_fan_adjacency() {
        let mut mesh = tetrahedron();
        let rec = mesh.split_pair(EdgeKey::new(0, 3)).unwrap();
        let [t1a, t1b, t2a, t2b] = rec.children;
        let m = rec.midpoint;
        assert!(mesh.shared_edge(t1a, t1b).is_some());
        assert!(mesh.shared_edge(t2a, t2b).is_some());
        assert_eq!(mesh.incident(EdgeKey::new(m, rec.edge.a())).len(), 2);
        assert!(mesh.shared_edge(t1a, t2b).is_some());
        assert!(mesh.shared_edge(t1b, t2a).is_some());
        assert!(mesh.shared_edge(t1a, t2a).is_none());
    }

    #[test]
    fn split_boundary_edge_is_rejected() {
        let mut mesh = Mesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(
            mesh.split_pair(EdgeKey::new(0, 1)),
            Err(Error::NotInteriorEdge(_))
        ));
    }
}
