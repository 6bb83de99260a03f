//! The `NSYMFIELD` text format plus CSV and SVG exports for plotting.
//!
//! ```text
//! NSYMFIELD 1
//! n 4
//! t <face> <theta>
//! p <v0> <v1> <jump>
//! ```
//!
//! Omitted `t` and `p` lines default to 0. A `p` line with `v0 > v1` is
//! read as the jump of the reversed crossing and negated.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{DirectionField, FieldError};
use crate::mesh::{FrameAtlas, Mesh};
use crate::rational::Rational;

fn parse_err(line: usize, message: impl Into<String>) -> FieldError {
    FieldError::Parse { line, message: message.into() }
}

fn token<'a, T: std::str::FromStr>(
    tokens: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<T, FieldError> {
    let raw = tokens.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    raw.parse().map_err(|_| parse_err(line, format!("invalid {what} {raw:?}")))
}

/// Parses a field file against `mesh`.
pub fn parse_field(text: &str, mesh: &Mesh) -> Result<DirectionField, FieldError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "empty field file"))?;
    let mut head = header.split_whitespace();
    if head.next() != Some("NSYMFIELD") || head.next() != Some("1") || head.next().is_some() {
        return Err(parse_err(line, format!("expected header \"NSYMFIELD 1\", found {header:?}")));
    }
    let mut order = None;
    let mut theta = vec![0.0; mesh.num_faces()];
    let mut jumps = vec![0i64; mesh.num_edges()];
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        let tag = tokens.next().expect("line is not empty");
        match tag {
            "n" => {
                if order.is_some() {
                    return Err(parse_err(line, "repeated order line"));
                }
                let n: u32 = token(&mut tokens, line, "order")?;
                if n == 0 {
                    return Err(FieldError::InvalidOrder(0));
                }
                order = Some(n);
            }
            "t" => {
                let f: usize = token(&mut tokens, line, "face id")?;
                let t: f64 = token(&mut tokens, line, "angle")?;
                if f >= mesh.num_faces() {
                    return Err(FieldError::Mismatch(format!("line {line}: face {f} does not exist")));
                }
                if !t.is_finite() {
                    return Err(parse_err(line, "angle is not finite"));
                }
                theta[f] = t;
            }
            "p" => {
                let a: usize = token(&mut tokens, line, "vertex id")?;
                let b: usize = token(&mut tokens, line, "vertex id")?;
                let jump: i64 = token(&mut tokens, line, "jump")?;
                let e = mesh
                    .find_edge(a, b)
                    .ok_or_else(|| FieldError::Mismatch(format!("line {line}: no edge {a}-{b}")))?;
                if mesh.edge(e).is_boundary() {
                    return Err(FieldError::Mismatch(format!("line {line}: edge {a}-{b} is on the boundary")));
                }
                jumps[e] = if a < b { jump } else { -jump };
            }
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let order = order.ok_or_else(|| parse_err(0, "missing order line \"n <order>\""))?;
    DirectionField::new(order, theta, jumps)
}

/// Parses a singularity target list: one `vertex num den` or `vertex p/q`
/// per line, `#` comments allowed.
pub fn parse_targets(text: &str) -> Result<BTreeMap<usize, Rational>, FieldError> {
    let mut targets = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (vertex, rest) = body.split_once(char::is_whitespace).ok_or_else(|| parse_err(line, "missing index"))?;
        let vertex: usize = vertex.parse().map_err(|_| parse_err(line, format!("invalid vertex id {vertex:?}")))?;
        let index: Rational = rest.trim().parse().map_err(|e| parse_err(line, format!("{e}")))?;
        if targets.insert(vertex, index).is_some() {
            return Err(parse_err(line, format!("vertex {vertex} listed twice")));
        }
    }
    Ok(targets)
}

/// Serializes a field: every face angle with shortest round-trip digits,
/// nonzero jumps only.
pub fn write_field(field: &DirectionField, mesh: &Mesh) -> String {
    let mut out = String::new();
    writeln!(out, "NSYMFIELD 1").unwrap();
    writeln!(out, "n {}", field.order()).unwrap();
    for (f, t) in field.thetas().iter().enumerate() {
        writeln!(out, "t {f} {t:?}").unwrap();
    }
    for (e, edge) in mesh.edges().iter().enumerate() {
        let jump = field.jump(e);
        if jump != 0 && !edge.is_boundary() {
            writeln!(out, "p {} {} {jump}", edge.vertices[0], edge.vertices[1]).unwrap();
        }
    }
    out
}

/// One row per face and symmetric copy: centroid and unit direction.
pub fn write_csv(field: &DirectionField, mesh: &Mesh, frames: &FrameAtlas) -> String {
    let mut out = String::from("face,cx,cy,cz,k,dx,dy,dz\n");
    for f in 0..mesh.num_faces() {
        let c = mesh.face_centroid(f);
        for k in 0..field.order() {
            let d = frames.frame(f).direction(field.theta(f) + k as f64 * field.period());
            writeln!(out, "{f},{:?},{:?},{:?},{k},{:?},{:?},{:?}", c[0], c[1], c[2], d[0], d[1], d[2]).unwrap();
        }
    }
    out
}

/// Plots edges and `n` direction ticks per face, projected onto the two
/// coordinate axes of largest extent.
pub fn write_svg(field: &DirectionField, mesh: &Mesh, frames: &FrameAtlas) -> String {
    let (lo, hi) = mesh.positions().iter().fold(([f64::MAX; 3], [f64::MIN; 3]), |(mut lo, mut hi), p| {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
        (lo, hi)
    });
    let mut axes = [0, 1, 2];
    axes.sort_by(|&a, &b| (hi[b] - lo[b]).total_cmp(&(hi[a] - lo[a])));
    let (ax, ay) = (axes[0], axes[1]);
    let width = (hi[ax] - lo[ax]).max(1e-12);
    let height = (hi[ay] - lo[ay]).max(1e-12);
    let size = 800.0;
    let s = size / width.max(height);
    let margin = 20.0;
    let map = |p: [f64; 3]| (margin + (p[ax] - lo[ax]) * s, margin + (hi[ay] - p[ay]) * s);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}">"#,
        width * s + 2.0 * margin,
        height * s + 2.0 * margin
    )
    .unwrap();
    writeln!(out, r##"<g stroke="#bbb" stroke-width="0.5">"##).unwrap();
    for edge in mesh.edges() {
        let (x0, y0) = map(mesh.position(edge.vertices[0]));
        let (x1, y1) = map(mesh.position(edge.vertices[1]));
        writeln!(out, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    let tick = 0.4 * mesh.mean_edge_length();
    writeln!(out, r##"<g stroke="#c03" stroke-width="1">"##).unwrap();
    for f in 0..mesh.num_faces() {
        let c = mesh.face_centroid(f);
        let (x0, y0) = map(c);
        for k in 0..field.order() {
            let d = frames.frame(f).direction(field.theta(f) + k as f64 * field.period());
            let tip = [c[0] + tick * d[0], c[1] + tick * d[1], c[2] + tick * d[2]];
            let (x1, y1) = map(tip);
            writeln!(out, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}"/>"#).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{shapes, Surface};

    #[test]
    fn round_trip_is_exact() {
        let s = Surface::new(shapes::torus(6, 5, 2.0, 0.6)).unwrap();
        let f = s.random_field(4, 9, 3).unwrap();
        let text = write_field(&f, s.mesh());
        assert_eq!(parse_field(&text, s.mesh()).unwrap(), f);
    }

    #[test]
    fn defaults_and_reversed_edges() {
        let s = Surface::new(shapes::tetrahedron()).unwrap();
        let f = parse_field("NSYMFIELD 1\nn 2\nt 1 0.5\np 3 1 2\n", s.mesh()).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.thetas(), &[0.0, 0.5, 0.0, 0.0]);
        let e = s.mesh().find_edge(1, 3).unwrap();
        assert_eq!(f.jump(e), -2);
        assert_eq!(f.jumps().iter().filter(|&&p| p != 0).count(), 1);
    }

    #[test]
    fn malformed_files() {
        let m = shapes::tetrahedron();
        assert!(matches!(parse_field("", &m), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_field("NSYMFIELD 2\nn 1\n", &m), Err(FieldError::Parse { line: 1, .. })));
        assert!(matches!(parse_field("NSYMFIELD 1\nt 0 0\n", &m), Err(FieldError::Parse { .. })));
        assert!(matches!(parse_field("NSYMFIELD 1\nn 1\nt 9 0\n", &m), Err(FieldError::Mismatch(_))));
        assert!(matches!(parse_field("NSYMFIELD 1\nn 1\np 0 0 1\n", &m), Err(FieldError::Mismatch(_))));
        assert!(matches!(parse_field("NSYMFIELD 1\nn 1\nt 0 x\n", &m), Err(FieldError::Parse { line: 3, .. })));
        assert!(matches!(parse_field("NSYMFIELD 1\nn 0\n", &m), Err(FieldError::InvalidOrder(0))));
        assert!(matches!(parse_field("NSYMFIELD 1\nn 1\nq\n", &m), Err(FieldError::Parse { .. })));
    }

    #[test]
    fn target_lists() {
        let t = parse_targets("# cones\n0 1 4\n5 -1/2\n\n7 2\n").unwrap();
        assert_eq!(t, BTreeMap::from([(0, Rational::new(1, 4)), (5, Rational::new(-1, 2)), (7, Rational::from_integer(2))]));
        assert!(matches!(parse_targets("0 1 4\n0 1 4\n"), Err(FieldError::Parse { line: 2, .. })));
        assert!(matches!(parse_targets("x 1\n"), Err(FieldError::Parse { line: 1, .. })));
        assert!(matches!(parse_targets("3\n"), Err(FieldError::Parse { line: 1, .. })));
        assert!(matches!(parse_targets("3 1 0\n"), Err(FieldError::Parse { line: 1, .. })));
    }

    #[test]
    fn boundary_jump_is_rejected() {
        let m = shapes::hex_disk(1);
        let [a, b] = m.edges().iter().find(|e| e.is_boundary()).unwrap().vertices;
        let text = format!("NSYMFIELD 1\nn 1\np {a} {b} 1\n");
        assert!(matches!(parse_field(&text, &m), Err(FieldError::Mismatch(msg)) if msg.contains("boundary")));
    }

    #[test]
    fn exports_have_one_sample_per_direction() {
        let s = Surface::new(shapes::hex_disk(2)).unwrap();
        let f = s.random_field(4, 1, 0).unwrap();
        let csv = write_csv(&f, s.mesh(), s.frames());
        assert_eq!(csv.lines().count(), 1 + 4 * s.mesh().num_faces());
        let svg = write_svg(&f, s.mesh(), s.frames());
        assert_eq!(svg.matches("<line").count(), s.mesh().num_edges() + 4 * s.mesh().num_faces());
    }
}
