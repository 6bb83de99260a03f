//! Oriented triangle meshes with halfedge connectivity.
//!
//! Halfedge `h = 3 * f + i` runs from corner `i` to corner `(i + 1) % 3` of
//! face `f`, so the face lies to the left of every halfedge. Boundary
//! halfedges are the ones without a twin.

mod closure;
mod cycle;
mod frames;
mod homology;
pub mod io;

use std::collections::HashMap;
use std::f64::consts::PI;

pub use closure::{close_all_boundaries, close_boundary, Closure};
pub use cycle::{boundary_loops, vertex_link_cycle, Cycle, CycleKind, LeftSweep};
pub use frames::{build_frames, Frame, FrameAtlas};
pub(crate) use frames::wrap_period;
pub use homology::{equivalence_basis, homology_generators};

pub type Point = [f64; 3];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeshError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("mesh has no faces")]
    Empty,
    #[error("face {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("non-manifold edge ({0}, {1}): more than two incident faces")]
    NonManifoldEdge(usize, usize),
    #[error("inconsistent orientation: edge ({0}, {1}) traversed in the same direction by two faces")]
    InconsistentOrientation(usize, usize),
    #[error("vertex {0} is not referenced by any face")]
    DanglingVertex(usize),
    #[error("vertex {0} has a non-manifold neighborhood")]
    NonManifoldVertex(usize),
    #[error("face {0} is degenerate (zero area)")]
    DegenerateFace(usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("vertex {0} lies on the boundary")]
    BoundaryVertex(usize),
    #[error("cycle is not a boundary loop of this mesh")]
    NotABoundaryLoop,
    #[error("mesh is not connected ({0} components)")]
    NotConnected(usize),
    #[error("genus (2 - chi - b)/2 = (2 - {chi} - {boundary_loops})/2 is not a non-negative integer")]
    NonIntegralGenus { chi: i64, boundary_loops: usize },
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
}

/// An undirected edge with its two possible halfedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Endpoints with `vertices[0] < vertices[1]`.
    pub vertices: [usize; 2],
    /// Halfedge running `vertices[0] -> vertices[1]`, if any face has it.
    pub forward: Option<usize>,
    /// Halfedge running `vertices[1] -> vertices[0]`.
    pub backward: Option<usize>,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.forward.is_none() || self.backward.is_none()
    }
}

/// A connected or disconnected oriented 2-manifold triangle mesh.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct Mesh {
    positions: Vec<Point>,
    faces: Vec<[usize; 3]>,
    twin: Vec<Option<usize>>,
    edge_of: Vec<usize>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<[usize; 2], usize>,
    /// One outgoing halfedge per vertex; the boundary one for boundary vertices.
    vertex_out: Vec<usize>,
    on_boundary: Vec<bool>,
}

impl Mesh {
    /// Builds connectivity and validates manifoldness and orientation.
    pub fn new(positions: Vec<Point>, faces: Vec<[usize; 3]>) -> Result<Mesh, MeshError> {
        if faces.is_empty() {
            return Err(MeshError::Empty);
        }
        let nv = positions.len();
        for (f, face) in faces.iter().enumerate() {
            for &v in face {
                if v >= nv {
                    return Err(MeshError::NoSuchVertex(v));
                }
            }
            if face[0] == face[1] || face[1] == face[2] || face[0] == face[2] {
                return Err(MeshError::RepeatedVertex(f));
            }
        }

        let nh = faces.len() * 3;
        let mut edges: Vec<Edge> = Vec::new();
        let mut edge_lookup: HashMap<[usize; 2], usize> = HashMap::new();
        let mut incidence: Vec<u32> = Vec::new();
        let mut edge_of = vec![0usize; nh];
        for (f, face) in faces.iter().enumerate() {
            for i in 0..3 {
                let h = 3 * f + i;
                let (a, b) = (face[i], face[(i + 1) % 3]);
                let key = [a.min(b), a.max(b)];
                let e = *edge_lookup.entry(key).or_insert_with(|| {
                    edges.push(Edge { vertices: key, forward: None, backward: None });
                    incidence.push(0);
                    edges.len() - 1
                });
                incidence[e] += 1;
                if incidence[e] > 2 {
                    return Err(MeshError::NonManifoldEdge(key[0], key[1]));
                }
                edge_of[h] = e;
            }
        }
        for (f, face) in faces.iter().enumerate() {
            for i in 0..3 {
                let h = 3 * f + i;
                let a = face[i];
                let edge = &mut edges[edge_of[h]];
                let slot = if a == edge.vertices[0] { &mut edge.forward } else { &mut edge.backward };
                if slot.is_some() {
                    return Err(MeshError::InconsistentOrientation(a, face[(i + 1) % 3]));
                }
                *slot = Some(h);
            }
        }

        let mut twin = vec![None; nh];
        for edge in &edges {
            if let (Some(a), Some(b)) = (edge.forward, edge.backward) {
                twin[a] = Some(b);
                twin[b] = Some(a);
            }
        }

        let mut vertex_out = vec![usize::MAX; nv];
        let mut on_boundary = vec![false; nv];
        let mut out_degree = vec![0usize; nv];
        for h in 0..nh {
            let v = faces[h / 3][h % 3];
            out_degree[v] += 1;
            if twin[h].is_none() {
                on_boundary[v] = true;
                vertex_out[v] = h;
            } else if vertex_out[v] == usize::MAX {
                vertex_out[v] = h;
            }
        }
        if let Some(v) = vertex_out.iter().position(|&h| h == usize::MAX) {
            return Err(MeshError::DanglingVertex(v));
        }

        let mesh = Mesh { positions, faces, twin, edge_of, edges, edge_lookup, vertex_out, on_boundary };
        for v in 0..nv {
            if mesh.outgoing(v).len() != out_degree[v] {
                return Err(MeshError::NonManifoldVertex(v));
            }
        }
        Ok(mesh)
    }

    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_halfedges(&self) -> usize {
        self.faces.len() * 3
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Point {
        self.positions[v]
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> [usize; 3] {
        self.faces[f]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn source(&self, h: usize) -> usize {
        self.faces[h / 3][h % 3]
    }

    pub fn target(&self, h: usize) -> usize {
        self.faces[h / 3][(h + 1) % 3]
    }

    pub fn next(&self, h: usize) -> usize {
        3 * (h / 3) + (h + 1) % 3
    }

    pub fn prev(&self, h: usize) -> usize {
        3 * (h / 3) + (h + 2) % 3
    }

    pub fn twin(&self, h: usize) -> Option<usize> {
        self.twin[h]
    }

    pub fn face_of(&self, h: usize) -> usize {
        h / 3
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// Edge id joining `a` and `b`, in either order.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&[a.min(b), a.max(b)]).copied()
    }

    /// The halfedge running `a -> b`, if a face carries it.
    pub fn find_halfedge(&self, a: usize, b: usize) -> Option<usize> {
        let edge = &self.edges[self.find_edge(a, b)?];
        if a == edge.vertices[0] {
            edge.forward
        } else {
            edge.backward
        }
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.on_boundary[v]
    }

    pub fn is_boundary_halfedge(&self, h: usize) -> bool {
        self.twin[h].is_none()
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vertices()).filter(move |&v| !self.on_boundary[v])
    }

    pub fn is_closed(&self) -> bool {
        self.twin.iter().all(Option::is_some)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), MeshError> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(MeshError::NoSuchVertex(v))
        }
    }

    /// Outgoing halfedges of `v` in counterclockwise order. For boundary
    /// vertices the list starts at the outgoing boundary halfedge.
    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        let start = self.vertex_out[v];
        let mut ring = vec![start];
        let mut h = start;
        loop {
            match self.twin[self.prev(h)] {
                Some(t) if t == start => break,
                Some(t) => {
                    ring.push(t);
                    h = t;
                    if ring.len() > self.num_halfedges() {
                        break;
                    }
                }
                None => break,
            }
        }
        ring
    }

    /// Interior angle of face `face_of(h)` at `source(h)`.
    pub fn corner_angle(&self, h: usize) -> f64 {
        let p = self.positions[self.source(h)];
        let a = sub(self.positions[self.target(h)], p);
        let b = sub(self.positions[self.source(self.prev(h))], p);
        norm(cross(a, b)).atan2(dot(a, b))
    }

    /// Sum of the interior angles incident at `v`.
    pub fn angle_sum(&self, v: usize) -> f64 {
        self.outgoing(v).into_iter().map(|h| self.corner_angle(h)).sum()
    }

    /// `2π` minus the angle sum at an interior vertex; `π` minus the angle
    /// sum at a boundary vertex (its geodesic boundary turning).
    pub fn angle_defect(&self, v: usize) -> f64 {
        let full = if self.on_boundary[v] { PI } else { 2.0 * PI };
        full - self.angle_sum(v)
    }

    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.faces[f].map(|v| self.positions[v]);
        0.5 * norm(cross(sub(b, a), sub(c, a)))
    }

    pub fn face_centroid(&self, f: usize) -> Point {
        let [a, b, c] = self.faces[f].map(|v| self.positions[v]);
        [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0, (a[2] + b[2] + c[2]) / 3.0]
    }

    pub fn mean_edge_length(&self) -> f64 {
        let total: f64 = self
            .edges
            .iter()
            .map(|e| norm(sub(self.positions[e.vertices[1]], self.positions[e.vertices[0]])))
            .sum();
        total / self.edges.len() as f64
    }

    /// V − E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn num_boundary_loops(&self) -> usize {
        boundary_loops(self).len()
    }

    /// Genus `(2 − χ − b) / 2` of a connected mesh.
    pub fn genus(&self) -> Result<u32, MeshError> {
        self.require_connected()?;
        let chi = self.euler_characteristic();
        let b = self.num_boundary_loops();
        let twice = 2 - chi - b as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(MeshError::NonIntegralGenus { chi, boundary_loops: b });
        }
        Ok((twice / 2) as u32)
    }

    /// Face sets of the connected components, each sorted.
    pub fn component_faces(&self) -> Vec<Vec<usize>> {
        let nf = self.num_faces();
        let mut label = vec![usize::MAX; nf];
        let mut vertex_faces: Vec<Vec<usize>> = vec![Vec::new(); self.num_vertices()];
        for (f, face) in self.faces.iter().enumerate() {
            for &v in face {
                vertex_faces[v].push(f);
            }
        }
        let mut components = Vec::new();
        for seed in 0..nf {
            if label[seed] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![seed];
            label[seed] = id;
            let mut stack = vec![seed];
            while let Some(f) = stack.pop() {
                for &v in &self.faces[f] {
                    for &g in &vertex_faces[v] {
                        if label[g] == usize::MAX {
                            label[g] = id;
                            members.push(g);
                            stack.push(g);
                        }
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_faces().len() == 1
    }

    pub fn require_connected(&self) -> Result<(), MeshError> {
        let count = self.component_faces().len();
        if count == 1 {
            Ok(())
        } else {
            Err(MeshError::NotConnected(count))
        }
    }

    /// Splits into connected components, renumbering vertices in order of
    /// first use.
    pub fn components(&self) -> Vec<Mesh> {
        self.component_faces()
            .into_iter()
            .map(|faces| {
                let mut remap: HashMap<usize, usize> = HashMap::new();
                let mut positions = Vec::new();
                let new_faces = faces
                    .iter()
                    .map(|&f| {
                        self.faces[f].map(|v| {
                            *remap.entry(v).or_insert_with(|| {
                                positions.push(self.positions[v]);
                                positions.len() - 1
                            })
                        })
                    })
                    .collect();
                Mesh::new(positions, new_faces).expect("component of a valid mesh is valid")
            })
            .collect()
    }
}

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(crate) fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}
