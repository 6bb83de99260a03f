use std::f64::consts::PI;

use super::{DirectionField, FieldError, SingularityRecord, Surface};
use crate::mesh::{boundary_loops, Cycle, MeshError};
use crate::rational::{snap_to_order, Rational, Snapped};

/// `I = T + 1` for the link of a point.
pub fn index_from_turning(turning: Rational) -> Rational {
    turning + Rational::ONE
}

/// Summary of all interior singularities of a field.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSummary {
    pub interior_sum: Rational,
    /// Vertices with nonzero index, ascending.
    pub records: Vec<SingularityRecord>,
    /// Largest snap residual seen, in turns.
    pub max_residual: f64,
}

impl Surface {
    fn snap(&self, turns: f64, order: u32, edges: usize, location: impl FnOnce() -> String) -> Result<Snapped, FieldError> {
        let snapped = snap_to_order(turns, order);
        let tolerance = self.tolerance * edges.max(1) as f64;
        if !(snapped.residual <= tolerance) {
            return Err(FieldError::SnapResidual { location: location(), residual: snapped.residual, tolerance });
        }
        Ok(snapped)
    }

    /// Index at an interior vertex with the residual of the snap.
    pub fn index_snap(&self, field: &DirectionField, v: usize) -> Result<Snapped, FieldError> {
        self.check_field(field)?;
        let mesh = self.mesh();
        mesh.check_vertex(v)?;
        if mesh.is_boundary_vertex(v) {
            return Err(MeshError::BoundaryVertex(v).into());
        }
        let ring = mesh.outgoing(v);
        let rotation: f64 = ring.iter().map(|&h| self.crossing_into(field, h)).sum();
        let turns = (mesh.angle_defect(v) + rotation) / (2.0 * PI);
        self.snap(turns, field.order(), ring.len(), || format!("index at vertex {v}"))
    }

    /// Singularity index at an interior vertex: the angle defect plus the
    /// field rotation across each spoke, counterclockwise, over `2π`.
    pub fn singularity_index(&self, field: &DirectionField, v: usize) -> Result<Rational, FieldError> {
        Ok(self.index_snap(field, v)?.value)
    }

    /// Turning number along a cycle with the residual of the snap.
    pub fn turning_snap(&self, field: &DirectionField, cycle: &Cycle) -> Result<Snapped, FieldError> {
        self.check_field(field)?;
        let mesh = self.mesh();
        cycle.validate(mesh)?;
        let mut rotation = 0.0;
        let mut geodesic = 0.0;
        for sweep in cycle.sweeps(mesh)? {
            geodesic += PI - sweep.left_angle;
            // crossing clockwise out of the face of each spoke but the last
            for &spoke in &sweep.spokes[..sweep.spokes.len() - 1] {
                rotation -= self.crossing_into(field, spoke);
            }
        }
        let turns = (rotation - geodesic) / (2.0 * PI);
        self.snap(turns, field.order(), cycle.len(), || format!("turning number along {:?} cycle", cycle.kind()))
    }

    /// Turning number of the field along `cycle` relative to the cycle's
    /// own geodesic turning, measured through the faces on its left.
    pub fn turning_number(&self, field: &DirectionField, cycle: &Cycle) -> Result<Rational, FieldError> {
        Ok(self.turning_snap(field, cycle)?.value)
    }

    /// Turning numbers of every boundary loop, in [`boundary_loops`] order.
    pub fn boundary_turning(&self, field: &DirectionField) -> Result<Vec<(Cycle, Rational)>, FieldError> {
        boundary_loops(self.mesh())
            .into_iter()
            .map(|c| {
                let t = self.turning_number(field, &c)?;
                Ok((c, t))
            })
            .collect()
    }

    /// Sum of interior vertex indices and the nonzero ones.
    pub fn total_index(&self, field: &DirectionField) -> Result<IndexSummary, FieldError> {
        let mut interior_sum = Rational::ZERO;
        let mut records = Vec::new();
        let mut max_residual: f64 = 0.0;
        for v in self.mesh().interior_vertices() {
            let snapped = self.index_snap(field, v)?;
            max_residual = max_residual.max(snapped.residual);
            interior_sum += snapped.value;
            if !snapped.value.is_zero() {
                records.push(SingularityRecord { vertex: v, index: snapped.value, kind: self.kind_of(v) });
            }
        }
        Ok(IndexSummary { interior_sum, records, max_residual })
    }
}
