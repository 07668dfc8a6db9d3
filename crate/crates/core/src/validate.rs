//! Report-style mesh validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mesh::{EdgeKey, Mesh};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMode {
    /// Every edge must have exactly two incident triangles.
    Closed,
    /// Boundary edges (one incident triangle) are allowed.
    WithBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OpenEdge { edge: EdgeKey },
    NonManifoldEdge { edge: EdgeKey, triangles: usize },
    InconsistentOrientation { edge: EdgeKey, triangles: [usize; 2] },
    DisconnectedDual { components: usize },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OpenEdge { edge } => write!(f, "open edge {edge}"),
            Violation::NonManifoldEdge { edge, triangles } => {
                write!(f, "non-manifold edge {edge} with {triangles} triangles")
            }
            Violation::InconsistentOrientation { edge, triangles } => write!(
                f,
                "triangles {} and {} traverse edge {edge} in the same direction",
                triangles[0], triangles[1]
            ),
            Violation::DisconnectedDual { components } => {
                write!(f, "dual graph has {components} components")
            }
            Violation::Empty => write!(f, "mesh has no triangles"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn open_edges(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::OpenEdge { .. }))
            .count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let shown: Vec<String> = self.violations.iter().take(8).map(|v| v.to_string()).collect();
        write!(f, "{}", shown.join("; "))?;
        if self.violations.len() > 8 {
            write!(f, "; ... ({} violations total)", self.violations.len())?;
        }
        Ok(())
    }
}

fn traverses(tri: [usize; 3], from: usize, to: usize) -> bool {
    (0..3).any(|i| tri[i] == from && tri[(i + 1) % 3] == to)
}

pub fn validate(mesh: &Mesh, mode: ValidationMode) -> ValidationReport {
    let mut violations = Vec::new();
    if mesh.triangle_count() == 0 {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }

    let mut components = UnionFind::new(mesh.triangle_count());
    for edge in mesh.edges() {
        let tris = mesh.incident(edge);
        match tris.len() {
            1 => {
                if mode == ValidationMode::Closed {
                    violations.push(Violation::OpenEdge { edge });
                }
            }
            2 => {
                let (t1, t2) = (tris[0], tris[1]);
                let forward = |t: usize| traverses(mesh.triangle(t), edge.a(), edge.b());
                if forward(t1) == forward(t2) {
                    violations.push(Violation::InconsistentOrientation {
                        edge,
                        triangles: [t1.min(t2), t1.max(t2)],
                    });
                }
            }
            n => violations.push(Violation::NonManifoldEdge { edge, triangles: n }),
        }
        for w in tris.windows(2) {
            components.union(w[0], w[1]);
        }
    }
    if components.sets() > 1 {
        violations.push(Violation::DisconnectedDual {
            components: components.sets(),
        });
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single() -> Mesh {
        Mesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_is_valid() {
        let mesh = crate::meshgen::tetrahedron();
        assert!(validate(&mesh, ValidationMode::Closed).is_valid());
    }

    #[test]
    fn single_triangle_has_three_open_edges() {
        let report = validate(&single(), ValidationMode::Closed);
        assert_eq!(report.open_edges(), 3);
        assert_eq!(report.violations.len(), 3);
        assert!(validate(&single(), ValidationMode::WithBoundary).is_valid());
    }

    #[test]
    fn same_winding_is_reported() {
        let mesh = Mesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, -1.0, 0.0]],
            vec![[0, 1, 2], [0, 1, 3]],
        )
        .unwrap();
        let report = validate(&mesh, ValidationMode::WithBoundary);
        assert_eq!(
            report.violations,
            vec![Violation::InconsistentOrientation {
                edge: EdgeKey::new(0, 1),
                triangles: [0, 1]
            }]
        );
    }

    #[test]
    fn non_manifold_edge_is_reported() {
        let mesh = Mesh::new(
            vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 1.0]],
            vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]],
        )
        .unwrap();
        let report = validate(&mesh, ValidationMode::WithBoundary);
        assert!(report.violations.contains(&Violation::NonManifoldEdge {
            edge: EdgeKey::new(0, 1),
            triangles: 3
        }));
    }

    #[test]
    fn disconnected_dual_is_reported() {
        let mesh = Mesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [5.0, 0.0, 0.0], [6.0, 0.0, 0.0], [5.0, 1.0, 0.0]],
            vec![[0, 1, 2], [3, 4, 5]],
        )
        .unwrap();
        let report = validate(&mesh, ValidationMode::WithBoundary);
        assert_eq!(report.violations, vec![Violation::DisconnectedDual { components: 2 }]);
    }
}
