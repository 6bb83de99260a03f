use std::f64::consts::PI;

use super::{cross, dot, norm, scale, sub, Mesh, MeshError, Point};

/// Orthonormal tangent basis of one face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    /// Unit vector along the face's first halfedge.
    pub e1: Point,
    /// `normal × e1`.
    pub e2: Point,
    pub normal: Point,
}

impl Frame {
    /// Angle of the tangent projection of `v` in this frame.
    pub fn angle_of(&self, v: Point) -> f64 {
        dot(v, self.e2).atan2(dot(v, self.e1))
    }

    /// Unit tangent vector at `angle` in this frame.
    pub fn direction(&self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        [
            c * self.e1[0] + s * self.e2[0],
            c * self.e1[1] + s * self.e2[1],
            c * self.e1[2] + s * self.e2[2],
        ]
    }
}

/// Per-face frames and the hinge transition across every interior edge.
///
/// The transition of edge `(v0, v1)` is stored for its canonical crossing,
/// from the face carrying `v1 -> v0` into the face carrying `v0 -> v1`
/// (counterclockwise around `v0`). It is the amount added to a direction's
/// angle coordinate when that direction is carried across the edge, so the
/// reverse crossing has the negated value.
#[derive(Debug, Clone)]
pub struct FrameAtlas {
    frames: Vec<Frame>,
    transitions: Vec<Option<f64>>,
}

impl FrameAtlas {
    pub fn frame(&self, f: usize) -> &Frame {
        &self.frames[f]
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn num_faces(&self) -> usize {
        self.frames.len()
    }

    /// Transition of the canonical crossing of edge `e`; `None` on the boundary.
    pub fn transition(&self, e: usize) -> Option<f64> {
        self.transitions[e]
    }

    /// Transition for the crossing from face `face_of(twin(h))` into face
    /// `face_of(h)`.
    pub fn transition_into(&self, mesh: &Mesh, h: usize) -> Option<f64> {
        let e = mesh.edge_of(h);
        let r = self.transitions[e]?;
        Some(if mesh.source(h) == mesh.edge(e).vertices[0] { r } else { -r })
    }

    /// Transition from face `from` to the adjacent face `to`.
    pub fn transition_between(&self, mesh: &Mesh, from: usize, to: usize) -> Option<f64> {
        (0..3)
            .map(|i| 3 * to + i)
            .find(|&h| mesh.twin(h).map(|t| mesh.face_of(t)) == Some(from))
            .and_then(|h| self.transition_into(mesh, h))
    }
}

/// Builds per-face frames and hinge transitions.
pub fn build_frames(mesh: &Mesh) -> Result<FrameAtlas, MeshError> {
    let mut frames = Vec::with_capacity(mesh.num_faces());
    for (f, face) in mesh.faces().iter().enumerate() {
        let [a, b, c] = face.map(|v| mesh.position(v));
        let first = sub(b, a);
        let n = cross(first, sub(c, a));
        let (len_first, len_n) = (norm(first), norm(n));
        let scale_ref = len_first.max(norm(sub(c, a))).powi(2);
        if len_first == 0.0 || len_n <= 1e-14 * scale_ref || !len_n.is_finite() {
            return Err(MeshError::DegenerateFace(f));
        }
        let e1 = scale(first, 1.0 / len_first);
        let normal = scale(n, 1.0 / len_n);
        let e2 = cross(normal, e1);
        frames.push(Frame { e1, e2, normal });
    }
    Ok(FrameAtlas::with_frames(mesh, frames))
}

impl FrameAtlas {
    /// Computes hinge transitions for caller-supplied tangent frames.
    ///
    /// Panics if `frames.len() != mesh.num_faces()`.
    pub fn with_frames(mesh: &Mesh, frames: Vec<Frame>) -> FrameAtlas {
        assert_eq!(frames.len(), mesh.num_faces(), "one frame per face");
        let transitions = mesh
            .edges()
            .iter()
            .map(|edge| {
                let (into, from) = (edge.forward?, edge.backward?);
                let d = sub(mesh.position(edge.vertices[1]), mesh.position(edge.vertices[0]));
                let alpha_to = frames[mesh.face_of(into)].angle_of(d);
                let alpha_from = frames[mesh.face_of(from)].angle_of(d);
                Some(wrap_pi(alpha_to - alpha_from))
            })
            .collect();
        FrameAtlas { frames, transitions }
    }
}

/// Maps an angle into `(-π, π]`.
pub(crate) fn wrap_pi(x: f64) -> f64 {
    wrap_period(x, 2.0 * PI)
}

/// Maps `x` into `(-period/2, period/2]`.
pub(crate) fn wrap_period(x: f64, period: f64) -> f64 {
    x - period * ((x - 0.5 * period) / period).ceil()
}
