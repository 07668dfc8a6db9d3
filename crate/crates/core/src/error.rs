use std::path::PathBuf;

use thiserror::Error;

use crate::mesh::EdgeKey;
use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("face {face} references vertex {index}, but the mesh has {count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        count: usize,
    },

    #[error("face {face} is degenerate (repeated vertex {vertex})")]
    DegenerateTriangle { face: usize, vertex: usize },

    #[error("face {face} duplicates face {other}")]
    DuplicateTriangle { face: usize, other: usize },

    #[error("mesh failed validation: {0}")]
    Invalid(ValidationReport),

    #[error("edge {0} is not shared by exactly two triangles")]
    NotInteriorEdge(EdgeKey),

    #[error("mesh has boundary edges; use the boundary strip pipeline for open meshes")]
    HasBoundary,

    #[error("mesh is closed; use the closed-loop pipeline for watertight meshes")]
    Closed,

    #[error("dual graph has no perfect matching; unmatched nodes: {unmatched:?}")]
    ImperfectMatching { unmatched: Vec<usize> },

    #[error("triangle {node} has {count} unmatched dual edges, expected 2")]
    BrokenMatching { node: usize, count: usize },

    #[error("cycle graph is disconnected ({components} components)")]
    DisconnectedCycleGraph { components: usize },

    #[error("{0} unmatched cycles remain; expected exactly one")]
    MultipleCycles(usize),

    #[error("too few triangles: {0}")]
    TooSmall(usize),

    #[error("invalid generator parameter: {0}")]
    BadParameter(String),

    #[error("curve depth {0} exceeds the maximum of {max}", max = crate::sfc::MAX_DEPTH)]
    DepthOverflow(u32),

    #[error("triangles {0} and {1} are consecutive but share no edge")]
    NotAdjacent(usize, usize),

    #[error("nothing to export: curve is empty")]
    EmptyCurve,

    #[error("pipeline invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
