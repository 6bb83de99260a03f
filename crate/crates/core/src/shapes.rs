//! Procedural test meshes: spheres, tori, disks, annuli and friends.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::mesh::{Mesh, Point};

/// Regular tetrahedron inscribed in the cube `[-1, 1]³`.
pub fn tetrahedron() -> Mesh {
    let p = vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    Mesh::new(p, vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]).expect("valid tetrahedron")
}

/// Unit icosphere; `level` rounds of 4-to-1 subdivision (level 3 has 1280 faces).
pub fn icosphere(level: u32) -> Mesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut positions: Vec<Point> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .into_iter()
    .map(normalize)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, positions: &mut Vec<Point>| -> usize {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (positions[a], positions[b]);
                positions.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                positions.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut positions);
            let bc = midpoint(b, c, &mut positions);
            let ca = midpoint(c, a, &mut positions);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    Mesh::new(positions, faces).expect("valid icosphere")
}

fn normalize(p: Point) -> Point {
    let l = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / l, p[1] / l, p[2] / l]
}

fn torus_faces(nu: usize, nv: usize, skip: Option<(usize, usize)>) -> Vec<[usize; 3]> {
    let id = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::new();
    for i in 0..nu {
        for j in 0..nv {
            if skip == Some((i, j)) {
                continue;
            }
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    faces
}

fn torus_positions(nu: usize, nv: usize, major: f64, minor: f64) -> Vec<Point> {
    let mut positions = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = 2.0 * PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * PI * j as f64 / nv as f64;
            let ring = major + minor * v.cos();
            positions.push([ring * u.cos(), ring * u.sin(), minor * v.sin()]);
        }
    }
    positions
}

/// Closed torus grid with `nu × nv` quads, each split in two.
pub fn torus(nu: usize, nv: usize, major: f64, minor: f64) -> Mesh {
    Mesh::new(torus_positions(nu, nv, major, minor), torus_faces(nu, nv, None)).expect("valid torus")
}

/// Torus with one grid quad removed: genus 1, one boundary loop.
pub fn punctured_torus(nu: usize, nv: usize) -> Mesh {
    Mesh::new(torus_positions(nu, nv, 2.0, 0.7), torus_faces(nu, nv, Some((0, 0)))).expect("valid punctured torus")
}

/// Closed genus-2 surface: the boundary of a `5 × 3 × 1` slab of cubes with
/// two square holes, each cube split into `resolution³` voxels.
pub fn double_torus(resolution: usize) -> Mesh {
    let s = resolution.max(1) as i64;
    let (nx, ny, nz) = (5 * s, 3 * s, s);
    let filled = |x: i64, y: i64, z: i64| -> bool {
        if x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz {
            return false;
        }
        let cell = (x / s, y / s);
        cell != (1, 1) && cell != (3, 1)
    };
    let mut ids: HashMap<[i64; 3], usize> = HashMap::new();
    let mut positions: Vec<Point> = Vec::new();
    let mut vertex = |p: [i64; 3]| -> usize {
        *ids.entry(p).or_insert_with(|| {
            positions.push([p[0] as f64 / s as f64, p[1] as f64 / s as f64, p[2] as f64 / s as f64]);
            positions.len() - 1
        })
    };
    let mut faces = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                if !filled(x, y, z) {
                    continue;
                }
                let voxel = [x, y, z];
                for d in 0..3 {
                    for sign in [1i64, -1] {
                        let mut nb = voxel;
                        nb[d] += sign;
                        if filled(nb[0], nb[1], nb[2]) {
                            continue;
                        }
                        let (u, w) = ((d + 1) % 3, (d + 2) % 3);
                        let mut base = voxel;
                        if sign > 0 {
                            base[d] += 1;
                        }
                        let mut bu = base;
                        bu[u] += 1;
                        let mut buw = bu;
                        buw[w] += 1;
                        let mut bw = base;
                        bw[w] += 1;
                        let mut quad = [vertex(base), vertex(bu), vertex(buw), vertex(bw)];
                        if sign < 0 {
                            quad.reverse();
                        }
                        faces.push([quad[0], quad[1], quad[2]]);
                        faces.push([quad[0], quad[2], quad[3]]);
                    }
                }
            }
        }
    }
    Mesh::new(positions, faces).expect("valid double torus")
}

/// Regular hexagon of side `k` filled with unit equilateral triangles.
/// `hex_disk(1)` is the flat six-triangle fan; the centre is vertex 0.
pub fn hex_disk(k: i64) -> Mesh {
    hex_disk_with_height(k, |_, _| 0.0)
}

/// [`hex_disk`] lifted onto a shallow bowl, so every interior vertex carries
/// nonzero curvature.
pub fn curved_disk(k: i64) -> Mesh {
    let kf = k as f64;
    hex_disk_with_height(k, move |x, y| 0.35 * (x * x + y * y) / kf + 0.05 * (1.3 * x).sin() * y)
}

fn hex_disk_with_height(k: i64, height: impl Fn(f64, f64) -> f64) -> Mesh {
    let inside = |a: i64, b: i64| a.abs() <= k && b.abs() <= k && (a + b).abs() <= k;
    let mut ids: HashMap<(i64, i64), usize> = HashMap::new();
    let mut positions = Vec::new();
    let mut order: Vec<(i64, i64)> = Vec::new();
    for a in -k..=k {
        for b in -k..=k {
            if inside(a, b) {
                order.push((a, b));
            }
        }
    }
    // centre first
    order.sort_by_key(|&(a, b)| (a.abs().max(b.abs()).max((a + b).abs()), a, b));
    for &(a, b) in &order {
        let x = a as f64 + 0.5 * b as f64;
        let y = b as f64 * 3f64.sqrt() / 2.0;
        ids.insert((a, b), positions.len());
        positions.push([x, y, height(x, y)]);
    }
    let mut faces = Vec::new();
    for a in -k..=k {
        for b in -k..=k {
            let up = [(a, b), (a + 1, b), (a, b + 1)];
            let down = [(a + 1, b), (a + 1, b + 1), (a, b + 1)];
            for tri in [up, down] {
                if tri.iter().all(|&(p, q)| inside(p, q)) {
                    faces.push(tri.map(|key| ids[&key]));
                }
            }
        }
    }
    Mesh::new(positions, faces).expect("valid hexagonal disk")
}

/// A fan of `sectors` congruent triangles around apex vertex 0 whose apex
/// angles sum to `total_angle` (which must be below `2π`).
pub fn cone(sectors: usize, total_angle: f64) -> Mesh {
    let k = sectors as f64;
    let beta = total_angle / k;
    let chord = 2.0 * (beta / 2.0).sin();
    let radius = chord / (2.0 * (PI / k).sin());
    let height = (1.0 - radius * radius).max(0.0).sqrt();
    let mut positions = vec![[0.0, 0.0, height]];
    for i in 0..sectors {
        let t = 2.0 * PI * i as f64 / k;
        positions.push([radius * t.cos(), radius * t.sin(), 0.0]);
    }
    let faces = (0..sectors).map(|i| [0, 1 + i, 1 + (i + 1) % sectors]).collect();
    Mesh::new(positions, faces).expect("valid cone")
}

/// Planar `nx × ny` grid of unit squares minus the squares covered by each
/// `[x0, x1) × [y0, y1)` hole, squares split along alternating diagonals.
pub fn grid_with_holes(nx: usize, ny: usize, holes: &[[usize; 4]]) -> Mesh {
    let removed = |i: usize, j: usize| holes.iter().any(|h| i >= h[0] && i < h[1] && j >= h[2] && j < h[3]);
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut positions = Vec::new();
    let mut vertex = |i: usize, j: usize| -> usize {
        *ids.entry((i, j)).or_insert_with(|| {
            positions.push([i as f64, j as f64, 0.0]);
            positions.len() - 1
        })
    };
    let mut faces = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if removed(i, j) {
                continue;
            }
            let (a, b, c, d) = (vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1), vertex(i, j + 1));
            if (i + j) % 2 == 0 {
                faces.extend([[a, b, c], [a, c, d]]);
            } else {
                faces.extend([[a, b, d], [b, c, d]]);
            }
        }
    }
    Mesh::new(positions, faces).expect("valid grid")
}

/// Square `n × n` grid with a centred `hole × hole` opening (χ = 0).
pub fn annulus(n: usize, hole: usize) -> Mesh {
    assert!(n >= hole + 2, "hole must leave a rim");
    let lo = (n - hole) / 2;
    grid_with_holes(n, n, &[[lo, lo + hole, lo, lo + hole]])
}

/// Planar `nx × ny` grid with two square openings (χ = −1).
pub fn pair_of_pants(nx: usize, ny: usize) -> Mesh {
    assert!(nx >= 7 && ny >= 3, "grid too small for two holes");
    let size = (ny / 3).max(1);
    let y0 = (ny - size) / 2;
    let x0 = nx / 5;
    let x1 = nx - nx / 5 - size;
    assert!(x1 > x0 + size, "holes would touch");
    grid_with_holes(nx, ny, &[[x0, x0 + size, y0, y0 + size], [x1, x1 + size, y0, y0 + size]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_of_each_shape() {
        let cases: Vec<(&str, Mesh, i64, usize)> = vec![
            ("tetrahedron", tetrahedron(), 2, 0),
            ("icosphere", icosphere(3), 2, 0),
            ("torus", torus(16, 8, 2.0, 0.7), 0, 0),
            ("double torus", double_torus(1), -2, 0),
            ("double torus fine", double_torus(2), -2, 0),
            ("hex disk", hex_disk(4), 1, 1),
            ("curved disk", curved_disk(4), 1, 1),
            ("cone", cone(6, 1.5 * PI), 1, 1),
            ("annulus", annulus(8, 2), 0, 2),
            ("pants", pair_of_pants(10, 6), -1, 3),
            ("punctured torus", punctured_torus(12, 8), -1, 1),
        ];
        for (name, m, chi, b) in cases {
            assert_eq!(m.euler_characteristic(), chi, "{name}");
            assert_eq!(m.num_boundary_loops(), b, "{name}");
            assert!(m.is_connected(), "{name}");
        }
        assert_eq!(icosphere(3).num_faces(), 1280);
    }

    #[test]
    fn closed_shapes_satisfy_gauss_bonnet() {
        for m in [tetrahedron(), icosphere(3), torus(16, 8, 2.0, 0.7), double_torus(2)] {
            let total: f64 = (0..m.num_vertices()).map(|v| m.angle_defect(v)).sum();
            let expected = 2.0 * PI * m.euler_characteristic() as f64;
            assert!((total - expected).abs() < 1e-6 * m.num_vertices() as f64);
        }
    }
}
