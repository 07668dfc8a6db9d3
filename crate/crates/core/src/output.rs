//! Pipeline results and their on-disk forms: the subdivided mesh, the
//! triangle order file and the stats JSON.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Mesh, SplitRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StripMode {
    /// Closed mesh, cyclic order.
    Cycle,
    /// Mesh with boundary, open order.
    Strip,
}

impl StripMode {
    pub fn header(self) -> &'static str {
        match self {
            StripMode::Cycle => "cycle",
            StripMode::Strip => "strip",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StripStats {
    pub input_triangles: usize,
    pub output_triangles: usize,
    pub percent_increase: f64,
    pub cycles_initial: Option<usize>,
    pub cycles_after_nodal: Option<usize>,
    /// Added midpoints; each adds two triangles.
    pub splits: usize,
    #[serde(default)]
    pub nodal_merges: Option<usize>,
    #[serde(default)]
    pub three_cycle_removals: Option<usize>,
    #[serde(default)]
    pub greedy_coverage: Option<f64>,
    #[serde(default)]
    pub augmentations: Option<usize>,
    #[serde(default)]
    pub spine_length: Option<usize>,
    /// Output size minus `3n - 4 log2 n`, boundary strips only.
    #[serde(default)]
    pub bound_gap: Option<f64>,
    pub elapsed_ms: BTreeMap<String, f64>,
    pub verify: bool,
}

impl StripStats {
    pub fn new(input: usize, output: usize, splits: usize) -> Self {
        StripStats {
            input_triangles: input,
            output_triangles: output,
            percent_increase: percent_increase(input, output),
            splits,
            ..StripStats::default()
        }
    }

    /// Output count equals input plus two per split, and the percentage
    /// agrees with the counts to 0.01.
    pub fn is_consistent(&self) -> bool {
        self.output_triangles == self.input_triangles + 2 * self.splits
            && (self.percent_increase - percent_increase(self.input_triangles, self.output_triangles)).abs()
                <= 0.01
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}

pub fn percent_increase(input: usize, output: usize) -> f64 {
    if input == 0 {
        0.0
    } else {
        100.0 * (output as f64 - input as f64) / input as f64
    }
}

#[derive(Clone, Debug)]
pub struct StripResult {
    /// Input mesh plus any added midpoints and subdivided triangles.
    pub mesh: Mesh,
    /// Triangle ids of `mesh` in visiting order.
    pub order: Vec<usize>,
    pub mode: StripMode,
    /// Midpoint splits on the closed pipeline, in application order.
    pub splits: Vec<SplitRecord>,
    /// Input triangle each output triangle was cut from.
    pub parents: Vec<usize>,
    pub stats: StripStats,
}

impl StripResult {
    pub fn is_closed(&self) -> bool {
        self.mode == StripMode::Cycle
    }

    /// Writes `mesh.obj`, `order.txt` and `stats.json` into `dir`.
    pub fn write_artifacts(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        crate::io::save_mesh(&self.mesh, dir.join("mesh.obj"), crate::io::MeshFormat::Obj)?;
        write_order(&dir.join("order.txt"), self.mode, &self.order)?;
        write_stats(&dir.join("stats.json"), &self.stats)
    }
}

pub fn format_order(mode: StripMode, order: &[usize]) -> String {
    let mut s = format!("{} {}\n", mode.header(), order.len());
    for t in order {
        s.push_str(&t.to_string());
        s.push('\n');
    }
    s
}

pub fn write_order(path: &Path, mode: StripMode, order: &[usize]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(format_order(mode, order).as_bytes())
        .map_err(|e| Error::io(path, e))
}

/// Parses an order file. The declared count must match the number of ids.
pub fn parse_order(text: &str) -> Result<(StripMode, Vec<usize>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut parts = header.split_whitespace();
    let mode = match parts.next() {
        Some("cycle") => StripMode::Cycle,
        Some("strip") => StripMode::Strip,
        other => return Err(Error::parse(line, format!("expected `cycle` or `strip`, found {other:?}"))),
    };
    let count: usize = parts
        .next()
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| Error::parse(line, "header needs a triangle count"))?;
    let mut order = Vec::with_capacity(count);
    for (line, l) in lines {
        let id = l
            .parse()
            .map_err(|_| Error::parse(line, format!("bad triangle id `{l}`")))?;
        order.push(id);
    }
    if order.len() != count {
        return Err(Error::parse(
            line,
            format!("header declares {count} ids, file has {}", order.len()),
        ));
    }
    Ok((mode, order))
}

pub fn read_order(path: &Path) -> Result<(StripMode, Vec<usize>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_order(&text)
}

pub fn write_stats(path: &Path, stats: &StripStats) -> Result<()> {
    let mut text = stats.to_json();
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_stats(path: &Path) -> Result<StripStats> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(e.line(), e.to_string()))
}
