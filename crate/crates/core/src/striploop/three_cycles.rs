//! Removal and restoration of degree-three vertex configurations.
//!
//! Three mutually adjacent triangles around a degree-three vertex are
//! replaced by the single triangle spanning their outer edges (a Δ-Y
//! contraction in the dual). Removals are repeated until no such vertex is
//! left, then undone in reverse order on top of a perfect matching of the
//! simplified mesh.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::MatchState;
use crate::mesh::Mesh;

/// One removed configuration. Triangle ids live in the extended id space:
/// original ids first, then replacements in creation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedConfig {
    pub vertex: usize,
    /// Fan `(v, a, b), (v, b, c), (v, c, a)` around `vertex`.
    pub triangles: [usize; 3],
    /// Replacement `(a, b, c)`.
    pub replacement: usize,
}

#[derive(Clone, Debug)]
pub struct Simplified {
    /// The simplified mesh on compact triangle ids.
    pub mesh: Mesh,
    /// Removals in application order; restore pops from the back.
    pub stack: Vec<RemovedConfig>,
    to_full: Vec<usize>,
    full_triangles: Vec<[usize; 3]>,
    original: usize,
}

impl Simplified {
    /// Extended id of a simplified-mesh triangle.
    pub fn full_id(&self, t: usize) -> usize {
        self.to_full[t]
    }

    pub fn original_triangles(&self) -> usize {
        self.original
    }
}

fn rotate_to(tri: [usize; 3], v: usize) -> Option<(usize, usize)> {
    let i = tri.iter().position(|&x| x == v)?;
    Some((tri[(i + 1) % 3], tri[(i + 2) % 3]))
}

pub fn eliminate_three_cycles(mesh: &Mesh) -> Result<Simplified> {
    let n = mesh.triangle_count();
    if n < 4 {
        return Err(Error::TooSmall(n));
    }
    if !mesh.is_closed() {
        return Err(Error::HasBoundary);
    }
    let mut tris = mesh.triangles().to_vec();
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut around = mesh.vertex_triangles();
    let mut queue: VecDeque<usize> = (0..around.len()).filter(|&v| around[v].len() == 3).collect();
    let mut stack = Vec::new();

    while let Some(v) = queue.pop_front() {
        // A tetrahedron is the smallest closed mesh; its matching already
        // leaves a single 4-cycle.
        if alive_count <= 4 {
            break;
        }
        if around[v].len() != 3 {
            continue;
        }
        let fan = [around[v][0], around[v][1], around[v][2]];
        let Some((a, b)) = rotate_to(tris[fan[0]], v) else { continue };
        let next = |from: usize| fan.iter().copied().find(|&t| rotate_to(tris[t], v).map(|e| e.0) == Some(from));
        let Some(t1) = next(b) else { continue };
        let c = rotate_to(tris[t1], v).expect("fan triangle").1;
        let Some(t2) = next(c) else { continue };
        if rotate_to(tris[t2], v) != Some((c, a)) || t1 == fan[0] || t2 == t1 || t2 == fan[0] {
            continue;
        }
        // The replacement must not already exist (only possible in a tetrahedron).
        let duplicate = around[a]
            .iter()
            .any(|&t| !fan.contains(&t) && tris[t].contains(&b) && tris[t].contains(&c));
        if duplicate {
            continue;
        }

        let r = tris.len();
        tris.push([a, b, c]);
        alive.push(true);
        for t in fan {
            alive[t] = false;
        }
        for x in [a, b, c] {
            around[x].retain(|t| !fan.contains(t));
            around[x].push(r);
        }
        around[v].clear();
        alive_count -= 2;
        stack.push(RemovedConfig {
            vertex: v,
            triangles: [fan[0], t1, t2],
            replacement: r,
        });
        for x in [a, b, c] {
            if around[x].len() == 3 {
                queue.push_back(x);
            }
        }
    }

    let to_full: Vec<usize> = (0..tris.len()).filter(|&t| alive[t]).collect();
    let compact = to_full.iter().map(|&t| tris[t]).collect();
    let simple = Mesh::new(mesh.vertices().to_vec(), compact)
        .map_err(|e| Error::Invariant(format!("three-cycle elimination produced a bad mesh: {e}")))?;
    Ok(Simplified {
        mesh: simple,
        stack,
        to_full,
        full_triangles: tris,
        original: n,
    })
}

/// Lifts a perfect matching of the simplified mesh back to the input mesh.
///
/// For each restored configuration the child owning the replacement's
/// matched edge inherits the outside partner and the other two children are
/// matched to each other.
pub fn restore_three_cycles(simplified: &Simplified, matching: &MatchState) -> Result<MatchState> {
    let full = &simplified.full_triangles;
    let mut m = MatchState::empty(full.len());
    for (u, v) in matching.pairs() {
        m.pair(simplified.to_full[u], simplified.to_full[v]);
    }
    for config in simplified.stack.iter().rev() {
        let r = config.replacement;
        let outside = m.partner(r).ok_or_else(|| {
            Error::Invariant(format!("replacement triangle {r} is unmatched during restoration"))
        })?;
        m.unpair(r);
        let shared: Vec<usize> = full[r].iter().copied().filter(|v| full[outside].contains(v)).collect();
        let owner = config
            .triangles
            .iter()
            .copied()
            .find(|&t| shared.iter().all(|v| full[t].contains(v)))
            .ok_or_else(|| Error::Invariant(format!("no child of {r} owns its matched edge")))?;
        let rest: Vec<usize> = config.triangles.iter().copied().filter(|&t| t != owner).collect();
        m.pair(owner, outside);
        m.pair(rest[0], rest[1]);
    }
    let mut partner = m.partners().to_vec();
    partner.truncate(simplified.original);
    if partner.iter().flatten().any(|&p| p >= simplified.original) {
        return Err(Error::Invariant("restored matching references a replacement triangle".into()));
    }
    Ok(MatchState::from_partners(partner))
}
