//! Reference computations that avoid the library's frames, transitions and
//! sweeps. They work from raw face lists and positions only.

#![allow(dead_code)]

use std::collections::HashSet;
use std::f64::consts::PI;

use fieldtopo::{DirectionField, Mesh, Rational};

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn len(a: P3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn dist(a: P3, b: P3) -> f64 {
    len(sub(a, b))
}

/// Interior angle opposite side `c` in a triangle with sides `a`, `b`, `c`.
fn law_of_cosines(a: f64, b: f64, c: f64) -> f64 {
    ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
}

/// Nearest representative of `x` modulo `period` in `(−period/2, period/2]`.
fn wrap(x: f64, period: f64) -> f64 {
    let mut r = x.rem_euclid(period);
    if r > period / 2.0 {
        r -= period;
    }
    r
}

/// `V − E + F` counted from the face list.
pub fn euler_characteristic(mesh: &Mesh) -> i64 {
    let mut edges = HashSet::new();
    for f in mesh.faces() {
        for i in 0..3 {
            let (a, b) = (f[i], f[(i + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    mesh.num_vertices() as i64 - edges.len() as i64 + mesh.faces().len() as i64
}

/// Faces around `v` as `(face, a, b)` with `v, a, b` counterclockwise,
/// consecutive entries sharing the spoke `v–b` = next `v–a`.
fn ring(mesh: &Mesh, v: usize) -> Vec<(usize, usize, usize)> {
    let mut fan: Vec<(usize, usize, usize)> = mesh
        .faces()
        .iter()
        .enumerate()
        .filter_map(|(fi, f)| {
            let k = f.iter().position(|&x| x == v)?;
            Some((fi, f[(k + 1) % 3], f[(k + 2) % 3]))
        })
        .collect();
    let mut ordered = vec![fan.remove(0)];
    while !fan.is_empty() {
        let last_b = ordered.last().unwrap().2;
        let k = fan.iter().position(|&(_, a, _)| a == last_b).expect("closed fan around an interior vertex");
        ordered.push(fan.remove(k));
    }
    assert_eq!(ordered.last().unwrap().2, ordered[0].1, "fan does not close");
    ordered
}

/// Rotation added by the period jump when the field crosses into the face
/// that contains the directed edge `a -> b`.
fn jump_into(mesh: &Mesh, field: &DirectionField, a: usize, b: usize) -> f64 {
    let e = mesh.find_edge(a, b).expect("edge exists");
    let p = field.jump(e) as f64;
    let sign = if a < b { 1.0 } else { -1.0 };
    sign * p * field.period()
}

/// Singularity index at an interior vertex by laying its one-ring flat:
/// faces are unfolded around `v` by the law of cosines, each face's field
/// direction is read off the unfolded first edge, and the rotation between
/// neighbours is the smallest one plus the period jump. Closing the loop
/// meets the first face rotated by the total corner angle.
pub fn index_by_unfolding(mesh: &Mesh, field: &DirectionField, v: usize) -> Rational {
    let fan = ring(mesh, v);
    let pos = |x: usize| mesh.positions()[x];
    // unfolded polar angle of each spoke; spoke i is v–a_i
    let mut spoke_angle = vec![0.0];
    for &(_, a, b) in &fan {
        let corner = law_of_cosines(dist(pos(v), pos(a)), dist(pos(v), pos(b)), dist(pos(a), pos(b)));
        spoke_angle.push(spoke_angle.last().unwrap() + corner);
    }
    let total = *spoke_angle.last().unwrap();
    let unfolded = |i: usize, x: usize| -> [f64; 2] {
        if x == v {
            return [0.0, 0.0];
        }
        let (_, a, _) = fan[i];
        let phi = if x == a { spoke_angle[i] } else { spoke_angle[i + 1] };
        let r = dist(pos(v), pos(x));
        [r * phi.cos(), r * phi.sin()]
    };
    // field direction of each ring face in the unfolded plane
    let psi: Vec<f64> = (0..fan.len())
        .map(|i| {
            let f = mesh.faces()[fan[i].0];
            let (p0, p1) = (unfolded(i, f[0]), unfolded(i, f[1]));
            (p1[1] - p0[1]).atan2(p1[0] - p0[0]) + field.theta(fan[i].0)
        })
        .collect();
    let period = field.period();
    let mut rotation = 0.0;
    for i in 0..fan.len() {
        let j = (i + 1) % fan.len();
        let target = if j == 0 { psi[0] + total } else { psi[j] };
        let spoke_end = fan[j].1;
        rotation += wrap(target - psi[i], period) + jump_into(mesh, field, v, spoke_end);
    }
    let turns = (rotation + 2.0 * PI - total) / (2.0 * PI);
    snap(turns, field.order())
}

fn snap(turns: f64, n: u32) -> Rational {
    let k = (turns * n as f64).round();
    assert!((turns - k / n as f64).abs() < 1e-6, "oracle value {turns} is not near a multiple of 1/{n}");
    Rational::new(k as i64, n as i64)
}

/// Direction of the field in face `f` as a planar angle, for meshes lying
/// in the z = 0 plane with counterclockwise faces.
pub fn planar_direction(mesh: &Mesh, field: &DirectionField, f: usize) -> f64 {
    let face = mesh.faces()[f];
    let d = sub(mesh.positions()[face[1]], mesh.positions()[face[0]]);
    d[1].atan2(d[0]) + field.theta(f)
}

/// Turning numbers of every boundary loop of a planar mesh, found by
/// walking the boundary edges and sweeping the fan at each corner.
pub fn planar_boundary_turning(mesh: &Mesh, field: &DirectionField) -> Vec<Rational> {
    assert!(mesh.positions().iter().all(|p| p[2] == 0.0), "planar oracle needs z = 0");
    // directed edges with their face; an edge is on the boundary if its reverse is absent
    let mut directed = std::collections::HashMap::new();
    for (fi, f) in mesh.faces().iter().enumerate() {
        for i in 0..3 {
            directed.insert((f[i], f[(i + 1) % 3]), fi);
        }
    }
    let mut next_on_boundary = std::collections::HashMap::new();
    for &(a, b) in directed.keys() {
        if !directed.contains_key(&(b, a)) {
            assert!(next_on_boundary.insert(a, b).is_none(), "boundary vertex with two outgoing boundary edges");
        }
    }
    let mut starts: Vec<usize> = next_on_boundary.keys().copied().collect();
    starts.sort_unstable();
    let mut used = HashSet::new();
    let mut result = Vec::new();
    let period = field.period();
    let pos = |x: usize| mesh.positions()[x];
    for s in starts {
        if used.contains(&s) {
            continue;
        }
        let mut loop_vertices = vec![s];
        used.insert(s);
        let mut cur = next_on_boundary[&s];
        while cur != s {
            used.insert(cur);
            loop_vertices.push(cur);
            cur = next_on_boundary[&cur];
        }
        let k = loop_vertices.len();
        let mut rotation = 0.0;
        let mut tangent = 0.0;
        for i in 0..k {
            let (prev, u, next) = (loop_vertices[(i + k - 1) % k], loop_vertices[i], loop_vertices[(i + 1) % k]);
            let din = sub(pos(u), pos(prev));
            let dout = sub(pos(next), pos(u));
            tangent += wrap(dout[1].atan2(dout[0]) - din[1].atan2(din[0]), 2.0 * PI);
            // fan at u, counterclockwise from the face of u->next to the face of prev->u
            let mut faces = vec![directed[&(u, next)]];
            loop {
                let face = mesh.faces()[*faces.last().unwrap()];
                let w = face[(face.iter().position(|&x| x == u).unwrap() + 2) % 3];
                if w == prev {
                    break;
                }
                faces.push(directed[&(u, w)]);
            }
            // the walk sweeps the fan clockwise
            faces.reverse();
            for pair in faces.windows(2) {
                let (from, to) = (pair[0], pair[1]);
                let face = mesh.faces()[to];
                let w = face[(face.iter().position(|&x| x == u).unwrap() + 2) % 3];
                // `to` holds the directed spoke w -> u
                rotation += wrap(planar_direction(mesh, field, to) - planar_direction(mesh, field, from), period)
                    + jump_into(mesh, field, w, u);
            }
        }
        result.push(snap((rotation - tangent) / (2.0 * PI), field.order()));
    }
    result
}
