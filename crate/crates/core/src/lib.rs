//! Single-loop and single-strip triangulation of manifold meshes.
//!
//! Closed meshes are turned into one Hamiltonian cycle of triangles by
//! perfect matching on the dual graph and a small number of midpoint
//! splits; meshes with boundary become one open strip. The resulting
//! triangle order drives a space-filling curve over the surface.

pub mod boundary;
pub mod dual;
pub mod error;
pub mod io;
pub mod matching;
pub mod mesh;
pub mod meshgen;
pub mod output;
pub mod sfc;
pub mod striploop;
pub mod unionfind;
pub mod validate;

pub use dual::{build_dual, DualGraph};
pub use error::{Error, Result};
pub use io::{load_mesh, save_mesh, MeshFormat};
pub use matching::{perfect_match_dual, Graph, MatchState};
pub use mesh::{EdgeKey, Mesh, Point, SplitRecord};
pub use output::{StripResult, StripStats};
pub use validate::{validate, ValidationMode, ValidationReport};
