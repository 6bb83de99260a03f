use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Mesh, MeshError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    Boundary,
    VertexLink { center: usize },
    HomologyGenerator,
    User,
}

/// A closed loop of halfedges. Each halfedge's face is the face on the left
/// of the walk, so the loop always keeps the surface to its left.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    halfedges: Vec<usize>,
    kind: CycleKind,
    total_geodesic_turning: f64,
}

/// The fan of faces swept at a cycle vertex, from the face left of the
/// incoming halfedge clockwise to the face left of the outgoing one.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftSweep {
    /// Outgoing halfedges at the vertex, one per swept face, in clockwise order.
    pub spokes: Vec<usize>,
    /// Sum of the swept corner angles.
    pub left_angle: f64,
}

impl Cycle {
    /// Validates the chain and measures its geodesic turning.
    pub fn new(mesh: &Mesh, halfedges: Vec<usize>, kind: CycleKind) -> Result<Cycle, MeshError> {
        let turning = total_geodesic_turning(mesh, &halfedges)?;
        Ok(Cycle { halfedges, kind, total_geodesic_turning: turning })
    }

    /// Builds a cycle through the vertex sequence `vertices` (the closing
    /// step back to the first vertex is implied).
    pub fn from_vertices(mesh: &Mesh, vertices: &[usize], kind: CycleKind) -> Result<Cycle, MeshError> {
        if vertices.len() < 2 {
            return Err(MeshError::InvalidCycle("a cycle needs at least two vertices".into()));
        }
        let mut halfedges = Vec::with_capacity(vertices.len());
        for i in 0..vertices.len() {
            let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            let h = mesh.find_halfedge(a, b).ok_or_else(|| {
                MeshError::InvalidCycle(format!("no face lies to the left of step {a} -> {b}"))
            })?;
            halfedges.push(h);
        }
        Cycle::new(mesh, halfedges, kind)
    }

    pub fn halfedges(&self) -> &[usize] {
        &self.halfedges
    }

    pub fn kind(&self) -> CycleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.halfedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfedges.is_empty()
    }

    /// Discrete integral of geodesic curvature along the loop, in radians.
    pub fn total_geodesic_turning(&self) -> f64 {
        self.total_geodesic_turning
    }

    pub fn vertices(&self, mesh: &Mesh) -> Vec<usize> {
        self.halfedges.iter().map(|&h| mesh.source(h)).collect()
    }

    /// Checks that the cycle still describes a closed chain on `mesh`.
    pub fn validate(&self, mesh: &Mesh) -> Result<(), MeshError> {
        check_chain(mesh, &self.halfedges)
    }

    /// Left sweeps at every vertex, in order; entry `i` is taken at the
    /// target of halfedge `i`.
    pub fn sweeps(&self, mesh: &Mesh) -> Result<Vec<LeftSweep>, MeshError> {
        let n = self.halfedges.len();
        (0..n).map(|i| left_sweep(mesh, self.halfedges[i], self.halfedges[(i + 1) % n])).collect()
    }
}

fn check_chain(mesh: &Mesh, halfedges: &[usize]) -> Result<(), MeshError> {
    if halfedges.is_empty() {
        return Err(MeshError::InvalidCycle("empty cycle".into()));
    }
    if let Some(&h) = halfedges.iter().find(|&&h| h >= mesh.num_halfedges()) {
        return Err(MeshError::InvalidCycle(format!("halfedge {h} is not on this mesh")));
    }
    for i in 0..halfedges.len() {
        let (a, b) = (halfedges[i], halfedges[(i + 1) % halfedges.len()]);
        if mesh.target(a) != mesh.source(b) {
            return Err(MeshError::InvalidCycle(format!("halfedge {a} does not end where {b} starts")));
        }
    }
    Ok(())
}

/// Sweeps clockwise around `target(incoming)` from the face of `incoming`
/// to the face of `outgoing`.
pub(crate) fn left_sweep(mesh: &Mesh, incoming: usize, outgoing: usize) -> Result<LeftSweep, MeshError> {
    let vertex = mesh.target(incoming);
    let mut spoke = mesh.next(incoming);
    let mut spokes = vec![spoke];
    let mut left_angle = mesh.corner_angle(spoke);
    while spoke != outgoing {
        let twin = mesh.twin(spoke).ok_or_else(|| {
            MeshError::InvalidCycle(format!("the region left of the cycle at vertex {vertex} crosses the boundary"))
        })?;
        spoke = mesh.next(twin);
        if spokes.len() > mesh.num_halfedges() || spoke == spokes[0] {
            return Err(MeshError::InvalidCycle(format!("cycle does not leave vertex {vertex} along a mesh edge")));
        }
        spokes.push(spoke);
        left_angle += mesh.corner_angle(spoke);
    }
    Ok(LeftSweep { spokes, left_angle })
}

fn total_geodesic_turning(mesh: &Mesh, halfedges: &[usize]) -> Result<f64, MeshError> {
    check_chain(mesh, halfedges)?;
    let n = halfedges.len();
    let mut total = 0.0;
    for i in 0..n {
        let sweep = left_sweep(mesh, halfedges[i], halfedges[(i + 1) % n])?;
        total += PI - sweep.left_angle;
    }
    Ok(total)
}

/// Boundary loops with the surface on their left, ordered by smallest halfedge id.
pub fn boundary_loops(mesh: &Mesh) -> Vec<Cycle> {
    let nh = mesh.num_halfedges();
    let mut seen = vec![false; nh];
    let mut loops = Vec::new();
    for start in 0..nh {
        if seen[start] || !mesh.is_boundary_halfedge(start) {
            continue;
        }
        let mut halfedges = Vec::new();
        let mut h = start;
        loop {
            seen[h] = true;
            halfedges.push(h);
            // the next boundary halfedge leaves target(h) and is the first spoke
            // of its counterclockwise fan
            h = mesh.outgoing(mesh.target(h))[0];
            if h == start {
                break;
            }
        }
        let cycle = Cycle::new(mesh, halfedges, CycleKind::Boundary).expect("boundary loops of a valid mesh are valid cycles");
        loops.push(cycle);
    }
    loops
}

/// The link of an interior vertex, counterclockwise around it.
pub fn vertex_link_cycle(mesh: &Mesh, v: usize) -> Result<Cycle, MeshError> {
    mesh.check_vertex(v)?;
    if mesh.is_boundary_vertex(v) {
        return Err(MeshError::BoundaryVertex(v));
    }
    let halfedges = mesh.outgoing(v).into_iter().map(|h| mesh.next(h)).collect();
    Cycle::new(mesh, halfedges, CycleKind::VertexLink { center: v })
}
