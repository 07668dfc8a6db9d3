//! Space-filling curves over a triangle order.
//!
//! The curve enters each triangle at the midpoint of the edge shared with
//! its predecessor and leaves at the midpoint of the edge shared with its
//! successor. At depth `d` each triangle is cut into `4^d` congruent cells
//! by repeated midpoint subdivision; the curve threads every cell and
//! passes through each cell's centroid.

use std::io::Write;
use std::path::Path;

use rstar::RTree;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{centroid, dist, midpoint, EdgeKey, Mesh, Point};

pub const MAX_DEPTH: u32 = 12;

/// Entry and exit edge of every triangle along an order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedCycle {
    pub triangles: Vec<usize>,
    /// `(entry, exit)` per position in `triangles`.
    pub edges: Vec<(EdgeKey, EdgeKey)>,
    pub closed: bool,
}

impl DirectedCycle {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

fn shared(mesh: &Mesh, a: usize, b: usize) -> Result<EdgeKey> {
    let (ta, tb) = (mesh.triangle(a), mesh.triangle(b));
    let common: Vec<usize> = ta.iter().copied().filter(|v| tb.contains(v)).collect();
    match common.as_slice() {
        &[u, v] if a != b => Ok(EdgeKey::new(u, v)),
        _ => Err(Error::NotAdjacent(a, b)),
    }
}

/// Directs a cyclic order. Each triangle's exit edge is the next one's entry.
pub fn direct_cycle(mesh: &Mesh, order: &[usize]) -> Result<DirectedCycle> {
    direct_order(mesh, order, true)
}

/// Directs a cyclic or open order. An open order's first entry and last exit
/// are the smallest edges of the end triangles not used by the strip.
pub fn direct_order(mesh: &Mesh, order: &[usize], closed: bool) -> Result<DirectedCycle> {
    let n = order.len();
    if n == 0 {
        return Err(Error::EmptyCurve);
    }
    if let Some(&t) = order.iter().find(|&&t| t >= mesh.triangle_count()) {
        return Err(Error::Invariant(format!("order names missing triangle {t}")));
    }
    if closed && n < 3 {
        return Err(Error::TooSmall(n));
    }
    let links: Vec<EdgeKey> = (0..if closed { n } else { n - 1 })
        .map(|i| shared(mesh, order[i], order[(i + 1) % n]))
        .collect::<Result<_>>()?;
    let free_edge = |t: usize, used: Option<EdgeKey>| {
        let mut edges = mesh.triangle_edges(t);
        edges.sort();
        edges.into_iter().find(|&e| Some(e) != used).expect("triangle has three edges")
    };
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        let exit = if closed || i + 1 < n {
            links[i]
        } else {
            free_edge(order[i], (i > 0).then(|| links[i - 1]))
        };
        let entry = if closed {
            links[(i + n - 1) % n]
        } else if i > 0 {
            links[i - 1]
        } else {
            let tail = (n > 1).then(|| links[0]);
            free_edge(order[0], tail)
        };
        if entry == exit {
            // Single-triangle strip: any second edge will do.
            let mut all = mesh.triangle_edges(order[i]);
            all.sort();
            let other = all.into_iter().find(|&e| e != entry).expect("three edges");
            edges.push((entry, other));
        } else {
            edges.push((entry, exit));
        }
    }
    Ok(DirectedCycle {
        triangles: order.to_vec(),
        edges,
        closed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePolyline {
    /// For closed curves the closing point is not repeated.
    pub points: Vec<Point>,
    pub closed: bool,
    /// Triangle whose subdivision produced each point.
    #[serde(skip)]
    pub owners: Vec<usize>,
}

impl CurvePolyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with consecutive duplicates removed (and, for closed curves,
    /// a last point equal to the first).
    pub fn collapsed(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        if self.closed && out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    /// Largest distance between consecutive points, wrap-around included
    /// for closed curves.
    pub fn max_step(&self) -> f64 {
        let n = self.points.len();
        let steps = if self.closed { n } else { n.saturating_sub(1) };
        (0..steps)
            .map(|i| dist(self.points[i], self.points[(i + 1) % n]))
            .fold(0.0, f64::max)
    }
}

/// Corner or edge-midpoint of a cell, by the cell's vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Spot {
    Corner(usize),
    Mid(usize, usize),
}

fn mid_spot(i: usize, j: usize) -> Spot {
    Spot::Mid(i.min(j), i.max(j))
}

/// Local index of `spot` in the corner cell at vertex `i`, which is laid out
/// as `[v_i, m(i, i+1), m(i, i+2)]`.
fn in_corner(i: usize, spot: Spot) -> usize {
    match spot {
        Spot::Corner(c) if c == i => 0,
        Spot::Mid(a, b) if mid_spot(i, (i + 1) % 3) == Spot::Mid(a, b) => 1,
        Spot::Mid(a, b) if mid_spot(i, (i + 2) % 3) == Spot::Mid(a, b) => 2,
        _ => unreachable!("spot is not on corner cell {i}"),
    }
}

/// Local index of `spot` in the center cell `[m01, m12, m20]`.
fn in_center(spot: Spot) -> usize {
    match spot {
        Spot::Mid(0, 1) => 0,
        Spot::Mid(1, 2) => 1,
        Spot::Mid(0, 2) => 2,
        _ => unreachable!("spot is not on the center cell"),
    }
}

/// Four midpoint-subdivision cells, all keeping the parent's winding.
fn subdivide(cell: [Point; 3]) -> ([[Point; 3]; 3], [Point; 3]) {
    let m01 = midpoint(cell[0], cell[1]);
    let m12 = midpoint(cell[1], cell[2]);
    let m20 = midpoint(cell[2], cell[0]);
    (
        [[cell[0], m01, m20], [cell[1], m12, m01], [cell[2], m20, m12]],
        [m01, m12, m20],
    )
}

enum Sub {
    Corner(usize),
    Center,
}

/// One visit of a sub-cell, from `from` to `to` (spots of the parent).
type Step = (Sub, Spot, Spot);

fn run_steps<F: FnMut(&[Point; 3], usize, usize)>(cell: [Point; 3], steps: &[Step], depth: u32, leaf: &mut F) {
    let (corners, center) = subdivide(cell);
    for (sub, from, to) in steps {
        match *sub {
            Sub::Corner(i) => walk_cell(corners[i], in_corner(i, *from), in_corner(i, *to), depth, leaf),
            Sub::Center => walk_cell(center, in_center(*from), in_center(*to), depth, leaf),
        }
    }
}

/// Threads `cell` from its vertex `p` to its vertex `q`.
fn walk_cell<F: FnMut(&[Point; 3], usize, usize)>(cell: [Point; 3], p: usize, q: usize, depth: u32, leaf: &mut F) {
    if depth == 0 {
        leaf(&cell, p, q);
        return;
    }
    let r = 3 - p - q;
    let (pq, pr, qr) = (mid_spot(p, q), mid_spot(p, r), mid_spot(q, r));
    let steps: [Step; 4] = if q == (p + 1) % 3 {
        [
            (Sub::Corner(p), Spot::Corner(p), pr),
            (Sub::Corner(r), pr, qr),
            (Sub::Center, qr, pq),
            (Sub::Corner(q), pq, Spot::Corner(q)),
        ]
    } else {
        [
            (Sub::Corner(p), Spot::Corner(p), pq),
            (Sub::Center, pq, pr),
            (Sub::Corner(r), pr, qr),
            (Sub::Corner(q), qr, Spot::Corner(q)),
        ]
    };
    run_steps(cell, &steps, depth - 1, leaf);
}

/// Threads a mesh triangle from the midpoint of edge `(s, i)` to the
/// midpoint of edge `(s, o)`; `s, i, o` index `cell`. Leaf callbacks get
/// the cell and the local indices of its entry and exit vertices, except at
/// depth zero where the whole triangle is the only cell and its ends are
/// edge midpoints (signalled by indices `3 + k` for edge `(k, k+1)`).
fn walk_triangle<F: FnMut(&[Point; 3], usize, usize)>(
    cell: [Point; 3],
    s: usize,
    i: usize,
    o: usize,
    depth: u32,
    leaf: &mut F,
) {
    let edge_slot = |a: usize, b: usize| if (a + 1) % 3 == b { 3 + a } else { 3 + b };
    if depth == 0 {
        leaf(&cell, edge_slot(s, i), edge_slot(s, o));
        return;
    }
    let (si, so, io) = (mid_spot(s, i), mid_spot(s, o), mid_spot(i, o));
    let steps: [Step; 4] = if o == (i + 1) % 3 {
        [
            (Sub::Corner(s), si, so),
            (Sub::Corner(o), so, io),
            (Sub::Corner(i), io, si),
            (Sub::Center, si, so),
        ]
    } else {
        [
            (Sub::Corner(i), si, io),
            (Sub::Corner(o), io, so),
            (Sub::Corner(s), so, si),
            (Sub::Center, si, so),
        ]
    };
    run_steps(cell, &steps, depth - 1, leaf);
}

fn cell_point(cell: &[Point; 3], slot: usize) -> Point {
    match slot {
        0..=2 => cell[slot],
        _ => {
            let k = slot - 3;
            midpoint(cell[k], cell[(k + 1) % 3])
        }
    }
}

/// Calls `leaf(position, cell, entry point, exit point)` for every depth-`d`
/// cell in curve order.
pub fn for_each_cell<F>(mesh: &Mesh, dc: &DirectedCycle, depth: u32, mut leaf: F) -> Result<()>
where
    F: FnMut(usize, &[Point; 3], Point, Point),
{
    if depth > MAX_DEPTH {
        return Err(Error::DepthOverflow(depth));
    }
    for (pos, (&t, &(entry, exit))) in dc.triangles.iter().zip(&dc.edges).enumerate() {
        let tri = mesh.triangle(t);
        let s = entry.a();
        let s = if exit.contains(s) { s } else { entry.b() };
        if !exit.contains(s) || entry == exit {
            return Err(Error::Invariant(format!("triangle {t}: entry {entry} and exit {exit} share no vertex")));
        }
        let index = |v: usize| tri.iter().position(|&x| x == v);
        let (Some(si), Some(ii), Some(oi)) = (index(s), index(entry.other(s)), index(exit.other(s))) else {
            return Err(Error::Invariant(format!("edges {entry}, {exit} are not on triangle {t}")));
        };
        walk_triangle(mesh.corners(t), si, ii, oi, depth, &mut |cell, p, q| {
            leaf(pos, cell, cell_point(cell, p), cell_point(cell, q))
        });
    }
    Ok(())
}

/// The curve through every depth-`d` cell centroid: one centroid and one
/// exit point per cell, so `2 * 4^d` points per triangle.
pub fn generate_curve(mesh: &Mesh, dc: &DirectedCycle, depth: u32) -> Result<CurvePolyline> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthOverflow(depth));
    }
    let cells = dc.len() << (2 * depth);
    let mut points = Vec::with_capacity(2 * cells + 1);
    let mut owners = Vec::with_capacity(2 * cells + 1);
    for_each_cell(mesh, dc, depth, |pos, cell, from, to| {
        if points.is_empty() {
            points.push(from);
            owners.push(dc.triangles[pos]);
        }
        points.push(centroid(cell[0], cell[1], cell[2]));
        points.push(to);
        owners.push(dc.triangles[pos]);
        owners.push(dc.triangles[pos]);
    })?;
    if dc.closed {
        // The last exit is the first entry.
        points.pop();
        owners.pop();
    }
    Ok(CurvePolyline {
        points,
        closed: dc.closed,
        owners,
    })
}

/// Largest vertex-to-centroid distance over all depth-`d` cells. Every
/// surface point lies in some cell, whose centroid is on the curve, so this
/// bounds the covering radius from above.
pub fn covering_radius_bound(mesh: &Mesh, dc: &DirectedCycle, depth: u32) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for_each_cell(mesh, dc, depth, |_, cell, _, _| {
        let c = centroid(cell[0], cell[1], cell[2]);
        for v in cell {
            worst = worst.max(dist(*v, c));
        }
    })?;
    Ok(worst)
}

/// Largest cell diameter at depth `d`.
pub fn max_cell_diameter(mesh: &Mesh, dc: &DirectedCycle, depth: u32) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for_each_cell(mesh, dc, depth, |_, cell, _, _| {
        worst = worst
            .max(dist(cell[0], cell[1]))
            .max(dist(cell[1], cell[2]))
            .max(dist(cell[2], cell[0]));
    })?;
    Ok(worst)
}

/// Covering radius estimated on a barycentric sample grid of resolution
/// `resolution` per triangle: the largest distance from a sample to the
/// nearest curve point.
pub fn sampled_covering_radius(mesh: &Mesh, curve: &CurvePolyline, resolution: usize) -> Result<f64> {
    if curve.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let mut unique: Vec<Point> = curve.points.clone();
    unique.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    unique.dedup();
    let tree = RTree::bulk_load(unique);
    let r = resolution.max(1);
    let mut worst: f64 = 0.0;
    for t in 0..mesh.triangle_count() {
        let [a, b, c] = mesh.corners(t);
        for i in 0..=r {
            for j in 0..=r - i {
                let (u, v) = (i as f64 / r as f64, j as f64 / r as f64);
                let w = 1.0 - u - v;
                let p = [
                    u * a[0] + v * b[0] + w * c[0],
                    u * a[1] + v * b[1] + w * c[1],
                    u * a[2] + v * b[2] + w * c[2],
                ];
                let nearest = tree.nearest_neighbor(p).expect("non-empty tree");
                worst = worst.max(dist(*nearest, p));
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFormat {
    Obj,
    Json,
}

impl std::str::FromStr for CurveFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(CurveFormat::Obj),
            "json" => Ok(CurveFormat::Json),
            other => Err(Error::BadParameter(format!("unknown curve format `{other}`"))),
        }
    }
}

/// OBJ polyline: `v` records and one `l` element, closed curves repeating
/// their first index at the end.
pub fn write_curve_obj<W: Write>(curve: &CurvePolyline, out: &mut W) -> Result<()> {
    let points = curve.collapsed();
    if points.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let wrap = |e| Error::Invariant(format!("curve write failed: {e}"));
    for p in &points {
        writeln!(out, "v {} {} {}", p[0], p[1], p[2]).map_err(wrap)?;
    }
    let mut line = String::from("l");
    for i in 1..=points.len() {
        line.push_str(&format!(" {i}"));
    }
    if curve.closed && points.len() > 1 {
        line.push_str(" 1");
    }
    writeln!(out, "{line}").map_err(wrap)
}

pub fn curve_json(curve: &CurvePolyline) -> Result<String> {
    let points = curve.collapsed();
    if points.is_empty() {
        return Err(Error::EmptyCurve);
    }
    let value = serde_json::json!({ "closed": curve.closed, "points": points });
    Ok(serde_json::to_string(&value).expect("curve serializes"))
}

pub fn export_curve(curve: &CurvePolyline, path: &Path, format: CurveFormat) -> Result<()> {
    let bytes = match format {
        CurveFormat::Obj => {
            let mut buf = Vec::new();
            write_curve_obj(curve, &mut buf)?;
            buf
        }
        CurveFormat::Json => {
            let mut s = curve_json(curve)?;
            s.push('\n');
            s.into_bytes()
        }
    };
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Reads back a curve written by [`curve_json`].
pub fn parse_curve_json(text: &str) -> Result<CurvePolyline> {
    #[derive(Deserialize)]
    struct Raw {
        closed: bool,
        points: Vec<Point>,
    }
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    Ok(CurvePolyline {
        points: raw.points,
        closed: raw.closed,
        owners: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meshgen::tetrahedron;

    fn tet_cycle() -> (Mesh, DirectedCycle) {
        let mesh = tetrahedron();
        let dc = direct_cycle(&mesh, &[0, 1, 2, 3]).unwrap();
        (mesh, dc)
    }

    #[test]
    fn tetrahedron_directed_cycle() {
        let (mesh, dc) = tet_cycle();
        assert_eq!(dc.len(), 4);
        for i in 0..4 {
            let (entry, exit) = dc.edges[i];
            assert_ne!(entry, exit);
            assert_eq!(exit, dc.edges[(i + 1) % 4].0);
            assert!(mesh.triangle_edges(dc.triangles[i]).contains(&entry));
        }
    }

    #[test]
    fn reversal_swaps_entry_and_exit() {
        let mesh = tetrahedron();
        let fwd = direct_cycle(&mesh, &[0, 1, 2, 3]).unwrap();
        let back = direct_cycle(&mesh, &[3, 2, 1, 0]).unwrap();
        for i in 0..4 {
            let (e, x) = fwd.edges[i];
            assert_eq!(back.edges[3 - i], (x, e));
        }
    }

    #[test]
    fn depth_zero_tetrahedron_has_eight_distinct_points() {
        let (mesh, dc) = tet_cycle();
        let curve = generate_curve(&mesh, &dc, 0).unwrap();
        assert!(curve.closed);
        assert_eq!(curve.len(), 8);
        let mut pts = curve.points.clone();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        assert_eq!(pts.len(), 8);
    }

    #[test]
    fn point_count_matches_enumeration() {
        let (mesh, dc) = tet_cycle();
        for d in 0..=3 {
            let curve = generate_curve(&mesh, &dc, d).unwrap();
            let mut cells = 0;
            for_each_cell(&mesh, &dc, d, |_, _, _, _| cells += 1).unwrap();
            assert_eq!(curve.len(), 2 * cells);
            assert_eq!(curve.len(), 4 * 2 * 4usize.pow(d));
        }
    }

    #[test]
    fn cells_chain_end_to_start() {
        let (mesh, dc) = tet_cycle();
        for d in 0..=3 {
            let mut last: Option<Point> = None;
            let mut first: Option<Point> = None;
            for_each_cell(&mesh, &dc, d, |_, cell, from, to| {
                if let Some(prev) = last {
                    assert_eq!(prev, from);
                }
                first.get_or_insert(from);
                // Connection points lie on the cell.
                if d > 0 {
                    assert!(cell.contains(&from) && cell.contains(&to));
                }
                last = Some(to);
            })
            .unwrap();
            assert_eq!(first, last);
        }
    }

    #[test]
    fn diameter_halves_per_depth() {
        let (mesh, dc) = tet_cycle();
        let d0 = max_cell_diameter(&mesh, &dc, 0).unwrap();
        for d in 1..=4 {
            let dd = max_cell_diameter(&mesh, &dc, d).unwrap();
            assert!((dd - d0 / f64::from(1u32 << d)).abs() < 1e-12 * d0);
        }
    }

    #[test]
    fn depth_guard() {
        let (mesh, dc) = tet_cycle();
        assert!(matches!(generate_curve(&mesh, &dc, 13), Err(Error::DepthOverflow(13))));
    }

    #[test]
    fn obj_export() {
        let open = CurvePolyline {
            points: vec![[0.0; 3], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]],
            closed: false,
            owners: vec![],
        };
        let mut buf = Vec::new();
        write_curve_obj(&open, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(text.lines().last(), Some("l 1 2 3"));
    }

    #[test]
    fn json_export() {
        let closed = CurvePolyline {
            points: vec![[0.0; 3], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
            closed: true,
            owners: vec![],
        };
        let text = curve_json(&closed).unwrap();
        let back = parse_curve_json(&text).unwrap();
        assert!(back.closed);
        assert_eq!(back.points.len(), 4);
    }

    #[test]
    fn empty_curve_is_rejected() {
        let empty = CurvePolyline {
            points: vec![],
            closed: true,
            owners: vec![],
        };
        assert!(matches!(curve_json(&empty), Err(Error::EmptyCurve)));
        assert!(matches!(write_curve_obj(&empty, &mut Vec::new()), Err(Error::EmptyCurve)));
    }

    #[test]
    fn open_strip_is_directed() {
        let mesh = crate::meshgen::fan(3).unwrap();
        let dc = direct_order(&mesh, &[0, 1, 2], false).unwrap();
        assert!(!dc.closed);
        for (e, x) in &dc.edges {
            assert_ne!(e, x);
        }
        let curve = generate_curve(&mesh, &dc, 1).unwrap();
        assert_eq!(curve.len(), 3 * 2 * 4 + 1);
    }
}
