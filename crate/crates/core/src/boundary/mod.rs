//! Single open strip for meshes with boundary.
//!
//! Take a spanning tree of the dual, pick an edge that splits it evenly and
//! the leaf-to-leaf path through that edge. Doubling every other tree edge
//! gives a multigraph with an Euler trail between the path's ends, and the
//! trail becomes a strip after splitting each doubled edge at its midpoint.
//! The result has `3n - 2 - 2|P|` triangles for a path of `|P|` edges.

mod strip;
mod tree;

use std::f64::consts::PI;

pub use strip::{euler_strip, EulerStrip};
pub use tree::{balance_edge, spine_path, DualSpanningTree, SpinePath};

use crate::dual::build_dual;
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::output::{StripMode, StripResult, StripStats};
use crate::striploop::{verify_strip, Timer};
use crate::validate::{validate, ValidationMode};

pub const MAX_MK: u32 = 16;

/// Triangle count of the `M_k` family, `3(2^k - 1) + 1`.
pub fn mk_triangles(k: u32) -> usize {
    3 * ((1usize << k) - 1) + 1
}

/// Regular `3 * 2^k`-gon triangulated by cutting off every other vertex as
/// an ear, then recursing on the remaining even-indexed vertices.
pub fn gen_mk(k: u32) -> Result<Mesh> {
    if k > MAX_MK {
        return Err(Error::BadParameter(format!("M_k needs k <= {MAX_MK}, got {k}")));
    }
    let count = 3usize << k;
    let vertices = (0..count)
        .map(|i| {
            let angle = 2.0 * PI * i as f64 / count as f64;
            [angle.cos(), angle.sin(), 0.0]
        })
        .collect();
    let mut ring: Vec<usize> = (0..count).collect();
    let mut triangles = Vec::with_capacity(mk_triangles(k));
    while ring.len() > 3 {
        let len = ring.len();
        for i in (0..len).step_by(2) {
            triangles.push([ring[i], ring[i + 1], ring[(i + 2) % len]]);
        }
        ring = ring.into_iter().step_by(2).collect();
    }
    triangles.push([ring[0], ring[1], ring[2]]);
    Mesh::new(vertices, triangles)
}

/// Orders of the chosen tree, for inspection.
#[derive(Clone, Debug)]
pub struct BoundaryTrace {
    pub tree: DualSpanningTree,
    pub spine: SpinePath,
}

pub fn strip_with_boundary(mesh: &Mesh) -> Result<StripResult> {
    strip_with_boundary_traced(mesh).map(|(r, _)| r)
}

pub fn strip_with_boundary_traced(mesh: &Mesh) -> Result<(StripResult, BoundaryTrace)> {
    let mut timer = Timer::new();
    if mesh.triangle_count() > 0 && mesh.is_closed() {
        return Err(Error::Closed);
    }
    let report = validate(mesh, ValidationMode::WithBoundary);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    timer.lap("validate");

    let n = mesh.triangle_count();
    let dual = build_dual(mesh);
    let tree = DualSpanningTree::bfs(&dual.to_graph(), 0)?;
    let spine = if n >= 3 {
        spine_path(&tree, balance_edge(&tree)?)
    } else {
        let nodes: Vec<usize> = (0..n).collect();
        SpinePath {
            edge: (0, n - 1),
            nodes,
        }
    };
    timer.lap("tree");

    let built = euler_strip(mesh, &tree, &spine)?;
    timer.lap("strip");

    let check = verify_strip(built.mesh.triangles(), &built.order);
    if let Some(v) = &check.violation {
        return Err(Error::Invariant(format!("output strip failed verification: {v}")));
    }
    timer.lap("verify");

    let mut stats = StripStats::new(n, built.mesh.triangle_count(), built.doubled);
    stats.spine_length = Some(spine.len());
    stats.bound_gap = Some(stats.output_triangles as f64 - (3.0 * n as f64 - 4.0 * (n as f64).log2()));
    stats.verify = check.valid;
    stats.elapsed_ms = timer.finish();

    let result = StripResult {
        mesh: built.mesh,
        order: built.order,
        mode: StripMode::Strip,
        splits: Vec::new(),
        parents: built.parents,
        stats,
    };
    Ok((result, BoundaryTrace { tree, spine }))
}

#[cfg(test)]
mod tests;
