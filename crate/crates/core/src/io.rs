//! OFF and OBJ readers and writers.
//!
//! Only triangle faces are accepted. Coordinates are written with Rust's
//! shortest round-trip float formatting, so write → read is lossless.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Mesh, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "off" => Some(MeshFormat::Off),
            "obj" => Some(MeshFormat::Obj),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            MeshFormat::Off => "off",
            MeshFormat::Obj => "obj",
        }
    }
}

impl FromStr for MeshFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(MeshFormat::Off),
            "obj" => Ok(MeshFormat::Obj),
            other => Err(format!("unknown mesh format `{other}`")),
        }
    }
}

impl fmt::Display for MeshFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

pub fn load_mesh(path: impl AsRef<Path>, format: MeshFormat) -> Result<Mesh> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_mesh(&text, format)
}

pub fn parse_mesh(text: &str, format: MeshFormat) -> Result<Mesh> {
    match format {
        MeshFormat::Off => parse_off(text),
        MeshFormat::Obj => parse_obj(text),
    }
}

pub fn save_mesh(mesh: &Mesh, path: impl AsRef<Path>, format: MeshFormat) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_mesh(mesh, &mut buf, format).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn write_mesh<W: Write>(mesh: &Mesh, out: &mut W, format: MeshFormat) -> io::Result<()> {
    match format {
        MeshFormat::Off => write_off(mesh, out),
        MeshFormat::Obj => write_obj(mesh, out),
    }
}

pub fn write_off<W: Write>(mesh: &Mesh, out: &mut W) -> io::Result<()> {
    writeln!(out, "OFF")?;
    writeln!(out, "{} {} {}", mesh.vertex_count(), mesh.triangle_count(), mesh.edge_count())?;
    for p in mesh.vertices() {
        writeln!(out, "{} {} {}", p[0], p[1], p[2])?;
    }
    for t in mesh.triangles() {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    Ok(())
}

pub fn write_obj<W: Write>(mesh: &Mesh, out: &mut W) -> io::Result<()> {
    for p in mesh.vertices() {
        writeln!(out, "v {} {} {}", p[0], p[1], p[2])?;
    }
    for t in mesh.triangles() {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_num<T: FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

fn parse_off(text: &str) -> Result<Mesh> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("OFF") {
        return Err(Error::parse(line, "missing OFF header"));
    }
    // Counts may follow the header on the same line.
    let rest: Vec<&str> = tokens.collect();
    let (line, counts) = if rest.is_empty() {
        let (l, c) = lines
            .next()
            .ok_or_else(|| Error::parse(line, "missing counts line"))?;
        (l, c.split_whitespace().collect::<Vec<_>>())
    } else {
        (line, rest)
    };
    let mut counts = counts.into_iter();
    let nv: usize = parse_num(counts.next(), line, "vertex count")?;
    let nf: usize = parse_num(counts.next(), line, "face count")?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, text) = lines
            .next()
            .ok_or_else(|| Error::parse(line, "unexpected end of file in vertex list"))?;
        let mut t = text.split_whitespace();
        let p: Point = [
            parse_num(t.next(), line, "coordinate")?,
            parse_num(t.next(), line, "coordinate")?,
            parse_num(t.next(), line, "coordinate")?,
        ];
        vertices.push(p);
    }

    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, text) = lines
            .next()
            .ok_or_else(|| Error::parse(line, "unexpected end of file in face list"))?;
        let mut t = text.split_whitespace();
        let arity: usize = parse_num(t.next(), line, "face arity")?;
        if arity != 3 {
            return Err(Error::parse(line, format!("face has {arity} vertices, only triangles are supported")));
        }
        triangles.push([
            parse_num(t.next(), line, "vertex index")?,
            parse_num(t.next(), line, "vertex index")?,
            parse_num(t.next(), line, "vertex index")?,
        ]);
    }
    Mesh::new(vertices, triangles)
}

fn parse_obj(text: &str) -> Result<Mesh> {
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for (line, text) in content_lines(text) {
        let mut t = text.split_whitespace();
        match t.next() {
            Some("v") => {
                vertices.push([
                    parse_num(t.next(), line, "coordinate")?,
                    parse_num(t.next(), line, "coordinate")?,
                    parse_num(t.next(), line, "coordinate")?,
                ]);
            }
            Some("f") => {
                let refs: Vec<&str> = t.collect();
                if refs.len() != 3 {
                    return Err(Error::parse(
                        line,
                        format!("face has {} vertices, only triangles are supported", refs.len()),
                    ));
                }
                let mut tri = [0usize; 3];
                for (slot, r) in refs.iter().enumerate() {
                    // `v`, `v/vt`, `v//vn`, `v/vt/vn`: only the position index matters.
                    let idx: i64 = parse_num(r.split('/').next(), line, "vertex index")?;
                    tri[slot] = match idx {
                        0 => return Err(Error::parse(line, "OBJ indices are 1-based")),
                        i if i > 0 => (i - 1) as usize,
                        i => {
                            let back = i.unsigned_abs() as usize;
                            if back > vertices.len() {
                                return Err(Error::parse(line, format!("relative index {i} out of range")));
                            }
                            vertices.len() - back
                        }
                    };
                }
                triangles.push(tri);
            }
            _ => {}
        }
    }
    Mesh::new(vertices, triangles)
}
