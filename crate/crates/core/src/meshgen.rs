//! Deterministic test-mesh generators.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{centroid, cross, dot, sub, EdgeKey, Mesh, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    /// Closed genus-1 surface on a `p x q` vertex grid, `2pq` triangles.
    Torus { p: usize, q: usize },
    /// Icosahedron refined `s` times, `20 * 4^s` triangles.
    Icosphere { s: u32 },
    Tetrahedron,
    Octahedron,
    /// Open disk of `m` triangles around one vertex.
    Fan { m: usize },
    /// Recursive `3 * 2^k`-gon triangulation with a tree dual.
    Mk { k: u32 },
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Torus { p, q } => write!(f, "torus_{p}x{q}"),
            GenSpec::Icosphere { s } => write!(f, "icosphere_{s}"),
            GenSpec::Tetrahedron => write!(f, "tetrahedron"),
            GenSpec::Octahedron => write!(f, "octahedron"),
            GenSpec::Fan { m } => write!(f, "fan_{m}"),
            GenSpec::Mk { k } => write!(f, "mk_{k}"),
        }
    }
}

pub fn generate(spec: GenSpec) -> Result<Mesh> {
    match spec {
        GenSpec::Torus { p, q } => torus(p, q),
        GenSpec::Icosphere { s } => icosphere(s),
        GenSpec::Tetrahedron => Ok(tetrahedron()),
        GenSpec::Octahedron => Ok(octahedron()),
        GenSpec::Fan { m } => fan(m),
        GenSpec::Mk { k } => crate::boundary::gen_mk(k),
    }
}

/// Flips triangles of a convex, origin-centred polyhedron to face outward.
fn orient_outward(vertices: &[Point], triangles: &mut [[usize; 3]]) {
    for tri in triangles.iter_mut() {
        let [a, b, c] = tri.map(|v| vertices[v]);
        let normal = cross(sub(b, a), sub(c, a));
        if dot(normal, centroid(a, b, c)) < 0.0 {
            tri.swap(1, 2);
        }
    }
}

fn convex(vertices: Vec<Point>, mut triangles: Vec<[usize; 3]>) -> Mesh {
    orient_outward(&vertices, &mut triangles);
    Mesh::new(vertices, triangles).expect("generator emits a valid mesh")
}

pub fn tetrahedron() -> Mesh {
    convex(
        vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    )
}

pub fn octahedron() -> Mesh {
    let vertices = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut triangles = Vec::with_capacity(8);
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                triangles.push([x, y, z]);
            }
        }
    }
    convex(vertices, triangles)
}

fn icosahedron() -> Mesh {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices = Vec::with_capacity(12);
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            vertices.push([0.0, s1, s2 * phi]);
            vertices.push([s1, s2 * phi, 0.0]);
            vertices.push([s2 * phi, 0.0, s1]);
        }
    }
    // Faces are the triples at mutual distance 2 (the edge length).
    let adjacent = |i: usize, j: usize| {
        let d = sub(vertices[i], vertices[j]);
        (dot(d, d) - 4.0).abs() < 1e-9
    };
    let mut triangles = Vec::with_capacity(20);
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    triangles.push([i, j, k]);
                }
            }
        }
    }
    let vertices = vertices.into_iter().map(normalize).collect();
    convex(vertices, triangles)
}

fn normalize(p: Point) -> Point {
    let len = dot(p, p).sqrt();
    [p[0] / len, p[1] / len, p[2] / len]
}

pub fn icosphere(s: u32) -> Result<Mesh> {
    if s > 8 {
        return Err(Error::BadParameter(format!("icosphere subdivision level {s} exceeds 8")));
    }
    let base = icosahedron();
    let mut vertices = base.vertices().to_vec();
    let mut triangles = base.triangles().to_vec();
    for _ in 0..s {
        let mut cache: HashMap<EdgeKey, usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point>| {
            *cache.entry(EdgeKey::new(a, b)).or_insert_with(|| {
                let (p, q) = (vertices[a], vertices[b]);
                vertices.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for &[a, b, c] in &triangles {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        triangles = next;
    }
    Mesh::new(vertices, triangles)
}

pub fn torus(p: usize, q: usize) -> Result<Mesh> {
    if p < 3 || q < 3 {
        return Err(Error::BadParameter(format!("torus grid {p}x{q} must be at least 3x3")));
    }
    let (ring, tube) = (1.0, 0.4);
    let mut vertices = Vec::with_capacity(p * q);
    for i in 0..p {
        let u = 2.0 * PI * i as f64 / p as f64;
        for j in 0..q {
            let v = 2.0 * PI * j as f64 / q as f64;
            let r = ring + tube * v.cos();
            vertices.push([r * u.cos(), r * u.sin(), tube * v.sin()]);
        }
    }
    let id = |i: usize, j: usize| (i % p) * q + (j % q);
    let mut triangles = Vec::with_capacity(2 * p * q);
    for i in 0..p {
        for j in 0..q {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Mesh::new(vertices, triangles)
}

pub fn fan(m: usize) -> Result<Mesh> {
    if m == 0 {
        return Err(Error::BadParameter("fan needs at least one triangle".into()));
    }
    let step = 1.5 * PI / m.max(2) as f64;
    let mut vertices = vec![[0.0, 0.0, 0.0]];
    for i in 0..=m {
        let a = step * i as f64;
        vertices.push([a.cos(), a.sin(), 0.0]);
    }
    let triangles = (1..=m).map(|i| [0, i, i + 1]).collect();
    Mesh::new(vertices, triangles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate, ValidationMode};

    #[test]
    fn torus_counts_and_genus() {
        let mesh = torus(20, 10).unwrap();
        assert_eq!(mesh.triangle_count(), 400);
        assert_eq!(mesh.euler_characteristic(), 0);
        assert!(validate(&mesh, ValidationMode::Closed).is_valid());
    }

    #[test]
    fn icosphere_counts() {
        for s in 0..3 {
            let mesh = icosphere(s).unwrap();
            assert_eq!(mesh.triangle_count(), 20 * 4usize.pow(s));
            assert_eq!(mesh.euler_characteristic(), 2);
            assert!(validate(&mesh, ValidationMode::Closed).is_valid());
        }
    }

    #[test]
    fn platonic_solids_are_closed_and_outward() {
        for mesh in [tetrahedron(), octahedron(), icosphere(0).unwrap()] {
            assert!(validate(&mesh, ValidationMode::Closed).is_valid());
            for t in 0..mesh.triangle_count() {
                let [a, b, c] = mesh.corners(t);
                assert!(dot(cross(sub(b, a), sub(c, a)), centroid(a, b, c)) > 0.0);
            }
        }
        assert_eq!(octahedron().triangle_count(), 8);
    }

    #[test]
    fn fan_counts() {
        let mesh = fan(5).unwrap();
        assert_eq!(mesh.triangle_count(), 5);
        assert_eq!(mesh.vertex_count(), 7);
        assert!(!mesh.boundary_edges().is_empty());
        assert!(validate(&mesh, ValidationMode::WithBoundary).is_valid());
        for t in 0..5 {
            assert!(mesh.area(t) > 0.0);
        }
    }

    #[test]
    fn parameter_bounds() {
        assert!(torus(2, 5).is_err());
        assert!(fan(0).is_err());
        assert!(generate(GenSpec::Mk { k: 17 }).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(GenSpec::Icosphere { s: 2 }).unwrap();
        let b = generate(GenSpec::Icosphere { s: 2 }).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        crate::io::write_obj(&a, &mut x).unwrap();
        crate::io::write_obj(&b, &mut y).unwrap();
        assert_eq!(x, y);
    }
}
