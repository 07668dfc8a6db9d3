//! Single Hamiltonian triangle cycle for closed manifold meshes.
//!
//! A perfect matching of the cubic dual leaves the unmatched dual edges as
//! disjoint cycles covering every triangle. Degree-three vertices are
//! removed first so no cycle has length three, nodal vertices merge cycles
//! for free, and each remaining pair of adjacent cycles costs one midpoint
//! split (two extra triangles).

mod cycles;
mod nodal;
mod splits;
mod three_cycles;
mod verify;

use std::time::Instant;

pub use cycles::{extract_cycles, unmatched_neighbors, CycleGraph, CycleSet};
pub use nodal::{merge_nodal, ordered_fan, try_merge_at, NodalMerge};
pub use splits::{assemble_cycle, spanning_tree_splits, SplitOutcome};
pub use three_cycles::{eliminate_three_cycles, restore_three_cycles, RemovedConfig, Simplified};
pub use verify::{verify_cycle, verify_strip, OrderViolation, Verification};

use crate::dual::build_dual;
use crate::error::{Error, Result};
use crate::matching::{perfect_match_dual, MatchState, MatchingStats};
use crate::mesh::Mesh;
use crate::output::{StripMode, StripResult, StripStats};
use crate::validate::{validate, ValidationMode};

/// Intermediate quantities of one run, for inspection and tests.
#[derive(Clone, Debug)]
pub struct Trace {
    pub removed: Vec<RemovedConfig>,
    pub matching_stats: MatchingStats,
    /// Perfect matching of the input mesh before nodal merging.
    pub initial_matching: MatchState,
    pub initial_cycle_lengths: Vec<usize>,
    pub nodal: Vec<NodalMerge>,
    pub cycle_lengths_after_nodal: Vec<usize>,
}

pub fn stripify(mesh: &Mesh) -> Result<StripResult> {
    stripify_traced(mesh).map(|(r, _)| r)
}

pub fn stripify_traced(mesh: &Mesh) -> Result<(StripResult, Trace)> {
    let mut timer = Timer::new();

    let report = validate(mesh, ValidationMode::Closed);
    if report.open_edges() > 0 {
        return Err(Error::HasBoundary);
    }
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    timer.lap("validate");

    let simplified = eliminate_three_cycles(mesh)?;
    timer.lap("three_cycles");

    let small_dual = build_dual(&simplified.mesh);
    let (small_matching, matching_stats) = perfect_match_dual(&small_dual)?;
    timer.lap("matching");

    let mut matching = restore_three_cycles(&simplified, &small_matching)?;
    let dual = build_dual(mesh);
    matching
        .check(&dual.to_graph())
        .map_err(|e| Error::Invariant(format!("restored matching: {e}")))?;
    if !matching.is_perfect() {
        return Err(Error::ImperfectMatching {
            unmatched: matching.unmatched(),
        });
    }
    timer.lap("restore");

    let mut cycles = extract_cycles(&dual, &matching)?;
    if let Some(c) = cycles.cycles.iter().find(|c| c.len() == 3) {
        return Err(Error::Invariant(format!("three-cycle {c:?} survived restoration")));
    }
    let initial_matching = matching.clone();
    let initial_cycle_lengths = cycles.lengths();
    timer.lap("cycles");

    let nodal = merge_nodal(mesh, &dual, &mut matching, &mut cycles)?;
    let cycle_lengths_after_nodal = cycles.lengths();
    timer.lap("nodal");

    let outcome = spanning_tree_splits(mesh, &dual, &matching, &cycles)?;
    timer.lap("splits");

    let order = assemble_cycle(&outcome.dual, &outcome.matching)?;
    timer.lap("assemble");

    let check = verify_cycle(outcome.mesh.triangles(), &order);
    if let Some(v) = &check.violation {
        return Err(Error::Invariant(format!("output cycle failed verification: {v}")));
    }
    timer.lap("verify");

    let n = mesh.triangle_count();
    let mut parents: Vec<usize> = (0..n).collect();
    for s in &outcome.splits {
        parents.push(parents[s.parents[0]]);
        parents.push(parents[s.parents[1]]);
    }

    let mut stats = StripStats::new(n, outcome.mesh.triangle_count(), outcome.splits.len());
    stats.cycles_initial = Some(initial_cycle_lengths.len());
    stats.cycles_after_nodal = Some(cycle_lengths_after_nodal.len());
    stats.nodal_merges = Some(nodal.len());
    stats.three_cycle_removals = Some(simplified.stack.len());
    stats.greedy_coverage = Some(matching_stats.greedy_coverage());
    stats.augmentations = Some(matching_stats.augmentations);
    stats.verify = check.valid;
    stats.elapsed_ms = timer.finish();

    let result = StripResult {
        mesh: outcome.mesh,
        order,
        mode: StripMode::Cycle,
        splits: outcome.splits,
        parents,
        stats,
    };
    let trace = Trace {
        removed: simplified.stack,
        matching_stats,
        initial_matching,
        initial_cycle_lengths,
        nodal,
        cycle_lengths_after_nodal,
    };
    Ok((result, trace))
}

pub(crate) struct Timer {
    start: Instant,
    last: Instant,
    laps: std::collections::BTreeMap<String, f64>,
}

impl Timer {
    pub(crate) fn new() -> Self {
        let now = Instant::now();
        Timer {
            start: now,
            last: now,
            laps: Default::default(),
        }
    }

    pub(crate) fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.laps
            .insert(stage.to_string(), (now - self.last).as_secs_f64() * 1e3);
        self.last = now;
    }

    pub(crate) fn finish(mut self) -> std::collections::BTreeMap<String, f64> {
        self.laps
            .insert("total".to_string(), self.start.elapsed().as_secs_f64() * 1e3);
        self.laps
    }
}
