//! OBJ and OFF readers, OFF writer.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Mesh, MeshError, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Off,
}

impl MeshFormat {
    /// Guesses the format from a file extension.
    pub fn from_extension(path: &std::path::Path) -> Option<MeshFormat> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "obj" => Some(MeshFormat::Obj),
            "off" => Some(MeshFormat::Off),
            _ => None,
        }
    }
}

impl FromStr for MeshFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "off" => Ok(MeshFormat::Off),
            other => Err(format!("unknown mesh format {other:?}")),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse { line, message: message.into() }
}

/// Parses `bytes` in the given format and builds the mesh.
pub fn load_mesh(bytes: &[u8], format: MeshFormat) -> Result<Mesh, MeshError> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let (positions, polygons) = match format {
        MeshFormat::Obj => parse_obj(text)?,
        MeshFormat::Off => parse_off(text)?,
    };
    let mut faces = Vec::with_capacity(polygons.len());
    for poly in polygons {
        for k in 1..poly.len() - 1 {
            faces.push([poly[0], poly[k], poly[k + 1]]);
        }
    }
    Mesh::new(positions, faces)
}

fn parse_coord(token: Option<&str>, line: usize) -> Result<f64, MeshError> {
    let token = token.ok_or_else(|| parse_err(line, "missing coordinate"))?;
    let value: f64 = token.parse().map_err(|_| parse_err(line, format!("non-numeric coordinate {token:?}")))?;
    if !value.is_finite() {
        return Err(parse_err(line, format!("non-finite coordinate {token:?}")));
    }
    Ok(value)
}

type Parsed = (Vec<Point>, Vec<Vec<usize>>);

fn parse_obj(text: &str) -> Result<Parsed, MeshError> {
    let mut positions = Vec::new();
    let mut polygons = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let x = parse_coord(tokens.next(), line)?;
                let y = parse_coord(tokens.next(), line)?;
                let z = parse_coord(tokens.next(), line)?;
                positions.push([x, y, z]);
            }
            Some("f") => {
                let mut poly = Vec::new();
                for token in tokens {
                    let index_text = token.split('/').next().unwrap_or("");
                    let index: i64 = index_text
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad face index {token:?}")))?;
                    let resolved = match index {
                        0 => return Err(parse_err(line, "face index 0 (OBJ indices are 1-based)")),
                        k if k > 0 => k - 1,
                        k => positions.len() as i64 + k,
                    };
                    if resolved < 0 || resolved as usize >= positions.len() {
                        return Err(parse_err(line, format!("face index {index} out of range")));
                    }
                    poly.push(resolved as usize);
                }
                if poly.len() < 3 {
                    return Err(parse_err(line, "face with fewer than 3 vertices"));
                }
                polygons.push(poly);
            }
            _ => {}
        }
    }
    Ok((positions, polygons))
}

fn parse_off(text: &str) -> Result<Parsed, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(parse_err(line, "missing OFF header"));
    }
    let rest: Vec<&str> = header_tokens.collect();
    let (count_line, counts): (usize, Vec<&str>) = if rest.is_empty() {
        let (l, c) = lines.next().ok_or_else(|| parse_err(line, "missing counts line"))?;
        (l, c.split_whitespace().collect())
    } else {
        (line, rest)
    };
    if counts.len() < 2 {
        return Err(parse_err(count_line, "counts line needs V F E"));
    }
    let parse_count = |t: &str| -> Result<usize, MeshError> {
        t.parse().map_err(|_| parse_err(count_line, format!("bad count {t:?}")))
    };
    let nv = parse_count(counts[0])?;
    let nf = parse_count(counts[1])?;

    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or_else(|| parse_err(count_line, "too few vertex lines"))?;
        let mut t = l.split_whitespace();
        positions.push([parse_coord(t.next(), line)?, parse_coord(t.next(), line)?, parse_coord(t.next(), line)?]);
    }
    let mut polygons = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = lines.next().ok_or_else(|| parse_err(count_line, "too few face lines"))?;
        let mut t = l.split_whitespace();
        let k: usize = t
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(line, "bad face vertex count"))?;
        if k < 3 {
            return Err(parse_err(line, "face with fewer than 3 vertices"));
        }
        let mut poly = Vec::with_capacity(k);
        for _ in 0..k {
            let token = t.next().ok_or_else(|| parse_err(line, "face line too short"))?;
            let index: usize = token.parse().map_err(|_| parse_err(line, format!("bad face index {token:?}")))?;
            if index >= nv {
                return Err(parse_err(line, format!("face index {index} out of range")));
            }
            poly.push(index);
        }
        polygons.push(poly);
    }
    Ok((positions, polygons))
}

/// Writes OFF. Coordinates of vertices below `exact_prefix` use the shortest
/// representation that parses back to the same bits; the rest are printed
/// with 17 significant digits.
pub fn write_off(mesh: &Mesh, exact_prefix: usize) -> String {
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} {}", mesh.num_vertices(), mesh.num_faces(), mesh.num_edges()).unwrap();
    for (v, p) in mesh.positions().iter().enumerate() {
        if v < exact_prefix {
            writeln!(out, "{} {} {}", p[0], p[1], p[2]).unwrap();
        } else {
            writeln!(out, "{:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]).unwrap();
        }
    }
    for f in mesh.faces() {
        writeln!(out, "3 {} {} {}", f[0], f[1], f[2]).unwrap();
    }
    out
}

/// Writes OBJ with shortest round-trip coordinates.
pub fn write_obj(mesh: &Mesh) -> String {
    let mut out = String::new();
    for p in mesh.positions() {
        writeln!(out, "v {} {} {}", p[0], p[1], p[2]).unwrap();
    }
    for f in mesh.faces() {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).unwrap();
    }
    out
}
