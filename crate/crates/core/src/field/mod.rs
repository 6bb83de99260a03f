//! n-symmetry direction fields and their exact singularity indices.

mod index;
pub mod io;
mod prescribe;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::mesh::wrap_period;
use crate::mesh::{build_frames, FrameAtlas, Mesh, MeshError};
use crate::rational::Rational;

pub use index::{index_from_turning, IndexSummary};

/// Default snapping tolerance, in turns per edge of the measured cycle.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("symmetry order must be at least 1, got {0}")]
    InvalidOrder(u32),
    #[error("faces {0} and {1} do not share an interior edge")]
    NotAdjacent(usize, usize),
    #[error("{location}: value is {residual:e} turns away from a multiple of 1/n (tolerance {tolerance:e})")]
    SnapResidual { location: String, residual: f64, tolerance: f64 },
    #[error("field does not match mesh: {0}")]
    Mismatch(String),
    #[error("target index {target} at vertex {vertex} is not a multiple of 1/{n}")]
    NonIntegralTarget { vertex: usize, target: Rational, n: u32 },
    #[error("infeasible targets: indices sum to {sum} but a closed surface needs chi = {chi}")]
    Infeasible { sum: Rational, chi: i64 },
    #[error("field file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An n-symmetry direction field: one angle per face, measured in that
/// face's frame and defined modulo `2π/n`, plus one integer period jump per
/// edge for the canonical crossing (counterclockwise around the smaller
/// endpoint). Jumps on boundary edges are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionField {
    order: u32,
    theta: Vec<f64>,
    jumps: Vec<i64>,
}

impl DirectionField {
    /// Builds a field, normalizing every angle into `[0, 2π/n)`.
    pub fn new(order: u32, theta: Vec<f64>, jumps: Vec<i64>) -> Result<DirectionField, FieldError> {
        if order == 0 {
            return Err(FieldError::InvalidOrder(order));
        }
        if let Some(f) = theta.iter().position(|t| !t.is_finite()) {
            return Err(FieldError::Mismatch(format!("face {f} has a non-finite angle")));
        }
        let period = 2.0 * PI / order as f64;
        let theta = theta.into_iter().map(|t| normalize_angle(t, period)).collect();
        Ok(DirectionField { order, theta, jumps })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `2π / n`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.order as f64
    }

    pub fn theta(&self, f: usize) -> f64 {
        self.theta[f]
    }

    pub fn thetas(&self) -> &[f64] {
        &self.theta
    }

    pub fn jump(&self, e: usize) -> i64 {
        self.jumps[e]
    }

    pub fn jumps(&self) -> &[i64] {
        &self.jumps
    }

    /// Copy with every angle replaced by `map(face, angle)`.
    pub fn map_theta(&self, map: impl Fn(usize, f64) -> f64) -> DirectionField {
        let theta = self.theta.iter().enumerate().map(|(f, &t)| map(f, t)).collect();
        DirectionField::new(self.order, theta, self.jumps.clone()).expect("order already validated")
    }

    /// Copy with the canonical jump of edge `e` replaced.
    pub fn with_jump(&self, e: usize, jump: i64) -> DirectionField {
        let mut copy = self.clone();
        copy.jumps[e] = jump;
        copy
    }
}

fn normalize_angle(t: f64, period: f64) -> f64 {
    let r = t.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Signed rotation of the field across one crossing, relative to parallel
/// transport: `wrap(θ_to − θ_from − r) + (2π/n)·p`, with the wrap mapping into
/// `(−π/n, π/n]`.
pub fn crossing_rotation_value(theta_from: f64, theta_to: f64, transition: f64, jump: i64, order: u32) -> f64 {
    let period = 2.0 * PI / order as f64;
    wrap_period(theta_to - theta_from - transition, period) + period * jump as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularityKind {
    Interior,
    Apex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityRecord {
    pub vertex: usize,
    pub index: Rational,
    pub kind: SingularityKind,
}

/// A mesh together with its frame atlas and snapping tolerance.
#[derive(Debug, Clone)]
pub struct Surface {
    mesh: Mesh,
    frames: FrameAtlas,
    tolerance: f64,
    apexes: Vec<usize>,
}

impl Surface {
    pub fn new(mesh: Mesh) -> Result<Surface, FieldError> {
        let frames = build_frames(&mesh)?;
        Ok(Surface { mesh, frames, tolerance: DEFAULT_TOLERANCE, apexes: Vec::new() })
    }

    /// Marks vertices created by boundary closure, so their singularities
    /// are reported as apex singularities.
    pub fn with_apexes(mut self, apexes: Vec<usize>) -> Surface {
        self.apexes = apexes;
        self
    }

    /// Panics unless `tolerance > 0`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Surface {
        assert!(tolerance > 0.0, "tolerance must be positive");
        self.tolerance = tolerance;
        self
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn frames(&self) -> &FrameAtlas {
        &self.frames
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn apexes(&self) -> &[usize] {
        &self.apexes
    }

    pub fn kind_of(&self, v: usize) -> SingularityKind {
        if self.apexes.contains(&v) {
            SingularityKind::Apex
        } else {
            SingularityKind::Interior
        }
    }

    pub fn check_field(&self, field: &DirectionField) -> Result<(), FieldError> {
        if field.theta.len() != self.mesh.num_faces() {
            return Err(FieldError::Mismatch(format!(
                "{} face angles for {} faces",
                field.theta.len(),
                self.mesh.num_faces()
            )));
        }
        if field.jumps.len() != self.mesh.num_edges() {
            return Err(FieldError::Mismatch(format!(
                "{} edge jumps for {} edges",
                field.jumps.len(),
                self.mesh.num_edges()
            )));
        }
        Ok(())
    }

    /// Rotation of the field when crossing from `face_of(twin(h))` into
    /// `face_of(h)`; zero across boundary halfedges.
    pub fn crossing_into(&self, field: &DirectionField, h: usize) -> f64 {
        let mesh = &self.mesh;
        let e = mesh.edge_of(h);
        let edge = mesh.edge(e);
        let (Some(forward), Some(backward)) = (edge.forward, edge.backward) else {
            return 0.0;
        };
        let canonical = crossing_rotation_value(
            field.theta[mesh.face_of(backward)],
            field.theta[mesh.face_of(forward)],
            self.frames.transition(e).expect("interior edge has a transition"),
            field.jumps[e],
            field.order,
        );
        if h == forward {
            canonical
        } else {
            -canonical
        }
    }

    /// Rotation of the field across the edge shared by faces `from` and `to`.
    pub fn crossing_rotation(&self, field: &DirectionField, from: usize, to: usize) -> Result<f64, FieldError> {
        self.check_field(field)?;
        let nf = self.mesh.num_faces();
        if from >= nf || to >= nf {
            return Err(FieldError::NotAdjacent(from, to));
        }
        (3 * to..3 * to + 3)
            .find(|&h| self.mesh.twin(h).map(|t| self.mesh.face_of(t)) == Some(from))
            .map(|h| self.crossing_into(field, h))
            .ok_or(FieldError::NotAdjacent(from, to))
    }

    /// θ = 0 in every face frame, no period jumps.
    pub fn constant_field(&self, order: u32) -> Result<DirectionField, FieldError> {
        DirectionField::new(order, vec![0.0; self.mesh.num_faces()], vec![0; self.mesh.num_edges()])
    }

    /// Angles uniform in `[0, 2π/n)` and interior-edge jumps uniform in
    /// `[−jump_range, jump_range]`, deterministic in `seed`.
    pub fn random_field(&self, order: u32, seed: u64, jump_range: u32) -> Result<DirectionField, FieldError> {
        if order == 0 {
            return Err(FieldError::InvalidOrder(order));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let period = 2.0 * PI / order as f64;
        let theta = (0..self.mesh.num_faces()).map(|_| rng.random_range(0.0..period)).collect();
        let range = jump_range as i64;
        let jumps = self
            .mesh
            .edges()
            .iter()
            .map(|edge| if edge.is_boundary() { 0 } else { rng.random_range(-range..=range) })
            .collect();
        DirectionField::new(order, theta, jumps)
    }
}
