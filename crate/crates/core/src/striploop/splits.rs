//! Joining the remaining cycles by splitting matched edges of a spanning
//! tree of the cycle graph.
//!
//! Splitting the two triangles on a matched edge at its midpoint gives four
//! children. Matching each child to its sibling and leaving both halves of
//! the old edge unmatched reroutes the two cycles through each other.

use crate::dual::{build_dual, DualGraph};
use crate::error::{Error, Result};
use crate::matching::MatchState;
use crate::mesh::{EdgeKey, Mesh, SplitRecord};

use super::cycles::{extract_cycles, CycleGraph, CycleSet};

#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub mesh: Mesh,
    pub dual: DualGraph,
    pub matching: MatchState,
    pub splits: Vec<SplitRecord>,
}

/// Splits one matched edge per cycle-graph tree edge.
pub fn spanning_tree_splits(
    mesh: &Mesh,
    dual: &DualGraph,
    matching: &MatchState,
    cycles: &CycleSet,
) -> Result<SplitOutcome> {
    let graph = CycleGraph::build(dual, matching, cycles);
    let tree = graph.spanning_tree(cycles)?;
    let mut mesh = mesh.clone();
    let mut matching = matching.clone();
    let mut splits = Vec::with_capacity(tree.len());
    for &(_, _, edge, (t, u)) in &tree {
        splits.push(split_matched(&mut mesh, &mut matching, edge, t, u)?);
    }
    let dual = build_dual(&mesh);
    Ok(SplitOutcome {
        mesh,
        dual,
        matching,
        splits,
    })
}

fn split_matched(
    mesh: &mut Mesh,
    matching: &mut MatchState,
    edge: EdgeKey,
    t: usize,
    u: usize,
) -> Result<SplitRecord> {
    if matching.partner(t) != Some(u) {
        return Err(Error::Invariant(format!("split edge {edge} is not matched")));
    }
    let record = mesh.split_pair(edge)?;
    let [t1a, t1b, t2a, t2b] = record.children;
    matching.resize(mesh.triangle_count());
    matching.unpair(t);
    matching.pair(t1a, t1b);
    matching.pair(t2a, t2b);
    Ok(record)
}

/// The single unmatched-edge cycle, starting at triangle 0.
pub fn assemble_cycle(dual: &DualGraph, matching: &MatchState) -> Result<Vec<usize>> {
    let cycles = extract_cycles(dual, matching)?;
    match cycles.count() {
        1 => Ok(cycles.cycles.into_iter().next().expect("one cycle")),
        k => Err(Error::MultipleCycles(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::perfect_match_dual;
    use crate::meshgen::torus;

    #[test]
    fn each_split_removes_one_cycle() {
        let mesh = torus(6, 4).unwrap();
        let dual = build_dual(&mesh);
        let (m, _) = perfect_match_dual(&dual).unwrap();
        let cycles = extract_cycles(&dual, &m).unwrap();
        let k = cycles.count();
        let out = spanning_tree_splits(&mesh, &dual, &m, &cycles).unwrap();
        assert_eq!(out.splits.len(), k - 1);
        assert_eq!(out.mesh.triangle_count(), mesh.triangle_count() + 2 * (k - 1));
        assert!(out.matching.is_perfect());
        assert!(out.matching.check(&out.dual.to_graph()).is_ok());
        let order = assemble_cycle(&out.dual, &out.matching).unwrap();
        assert_eq!(order.len(), out.mesh.triangle_count());
    }

    #[test]
    fn unmatched_split_edge_is_rejected() {
        let mut mesh = torus(3, 3).unwrap();
        let mut m = MatchState::empty(mesh.triangle_count());
        let e = mesh.triangle_edges(0)[0];
        let other = mesh.neighbor_across(0, e).unwrap();
        assert!(split_matched(&mut mesh, &mut m, e, 0, other).is_err());
    }
}
