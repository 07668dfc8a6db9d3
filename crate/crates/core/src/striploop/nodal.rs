//! Merging cycles around nodal vertices.
//!
//! A vertex with an even fan of `2m` triangles whose fan dual edges
//! alternate matched/unmatched, and whose `m` unmatched fan pairs lie on
//! `m` distinct cycles, is nodal. Swapping matched and unmatched fan edges
//! keeps the matching perfect and joins the `m` cycles into one.

use serde::{Deserialize, Serialize};

use crate::dual::DualGraph;
use crate::error::{Error, Result};
use crate::matching::MatchState;
use crate::mesh::{EdgeKey, Mesh};
use crate::unionfind::UnionFind;

use super::cycles::{extract_cycles, CycleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalMerge {
    pub vertex: usize,
    /// Number of triangles around the vertex (`2m`).
    pub fan_size: usize,
    /// Number of cycles joined (`m`); the cycle count drops by `m - 1`.
    pub cycles_merged: usize,
}

/// Triangles around `v` in rotational order, or `None` if `v` is on the
/// boundary or its neighborhood is not a single disk.
pub fn ordered_fan(mesh: &Mesh, v: usize, incident: &[usize]) -> Option<Vec<usize>> {
    let &start = incident.first()?;
    let tri = mesh.triangle(start);
    let i = tri.iter().position(|&x| x == v)?;
    let mut toward = tri[(i + 2) % 3];
    let mut fan = vec![start];
    let mut cur = start;
    loop {
        let next = mesh.neighbor_across(cur, EdgeKey::new(v, toward))?;
        if next == start {
            break;
        }
        if fan.len() >= incident.len() {
            return None;
        }
        let tri = mesh.triangle(next);
        let far = *tri.iter().find(|&&x| x != v && x != toward)?;
        toward = far;
        fan.push(next);
        cur = next;
    }
    (fan.len() == incident.len()).then_some(fan)
}

/// Tests one vertex and toggles its fan if it is nodal.
pub fn try_merge_at(
    vertex: usize,
    fan: &[usize],
    matching: &mut MatchState,
    membership: &mut UnionFind,
) -> Option<NodalMerge> {
    let k = fan.len();
    if k < 4 || k % 2 == 1 {
        return None;
    }
    let matched: Vec<bool> = (0..k)
        .map(|i| matching.partner(fan[i]) == Some(fan[(i + 1) % k]))
        .collect();
    if (0..k).any(|i| matched[i] == matched[(i + 1) % k]) {
        return None;
    }
    let first_unmatched = usize::from(matched[0]);
    let mut roots: Vec<usize> = (first_unmatched..k)
        .step_by(2)
        .map(|i| membership.find(fan[i]))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    let m = k / 2;
    if roots.len() != m {
        return None;
    }

    for i in (1 - first_unmatched..k).step_by(2) {
        matching.unpair(fan[i]);
    }
    for i in (first_unmatched..k).step_by(2) {
        matching.pair(fan[i], fan[(i + 1) % k]);
    }
    for w in roots.windows(2) {
        membership.union(w[0], w[1]);
    }
    Some(NodalMerge {
        vertex,
        fan_size: k,
        cycles_merged: m,
    })
}

/// Repeated ascending-vertex passes until no vertex is nodal. Returns the
/// accepted merges in order and replaces `cycles` with the merged set.
pub fn merge_nodal(
    mesh: &Mesh,
    dual: &DualGraph,
    matching: &mut MatchState,
    cycles: &mut CycleSet,
) -> Result<Vec<NodalMerge>> {
    let around = mesh.vertex_triangles();
    let fans: Vec<Option<Vec<usize>>> = around
        .iter()
        .enumerate()
        .map(|(v, inc)| {
            if inc.len() >= 4 && inc.len() % 2 == 0 {
                ordered_fan(mesh, v, inc)
            } else {
                None
            }
        })
        .collect();

    let before = cycles.count();
    let mut merges = Vec::new();
    loop {
        let mut changed = false;
        for (v, fan) in fans.iter().enumerate() {
            if let Some(fan) = fan {
                if let Some(merge) = try_merge_at(v, fan, matching, &mut cycles.membership) {
                    merges.push(merge);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let merged = extract_cycles(dual, matching)?;
    let removed: usize = merges.iter().map(|m| m.cycles_merged - 1).sum();
    if merged.count() + removed != before {
        return Err(Error::Invariant(format!(
            "nodal merging: {before} cycles minus {removed} merged, but {} remain",
            merged.count()
        )));
    }
    *cycles = merged;
    Ok(merges)
}
