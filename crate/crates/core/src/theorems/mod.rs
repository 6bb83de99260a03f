//! Exact checks of the global identities relating singularity indices,
//! turning numbers and the Euler characteristic.
//!
//! Every check returns a serializable report whose verdict is a comparison
//! of two [`Rational`]s, so a pass means exact equality.

use serde::{Deserialize, Serialize};

use crate::field::{DirectionField, FieldError, SingularityRecord, Surface};
use crate::mesh::{boundary_loops, close_boundary, vertex_link_cycle, Cycle, CycleKind, MeshError};
use crate::rational::Rational;
use crate::REPORT_SCHEMA;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TheoremError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the mesh has {0} boundary loop(s); close it first or check the boundary number instead")]
    HasBoundary(usize),
    #[error("the mesh is closed; the boundary number needs at least one boundary loop")]
    Closed,
    #[error("not a topological disk: chi = {chi}, {boundary_loops} boundary loop(s), {components} component(s)")]
    NotADisk { chi: i64, boundary_loops: usize, components: usize },
    #[error("symmetry orders differ: {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("designated vertex {vertex}: {reason}")]
    Designated { vertex: usize, reason: String },
}

impl From<MeshError> for TheoremError {
    fn from(e: MeshError) -> Self {
        TheoremError::Field(FieldError::Mesh(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    PoincareHopf,
    BoundaryNumber,
    Duality,
    Equivalence,
}

/// Turning number of the field along one cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CycleTurning {
    pub kind: CycleKind,
    pub length: usize,
    pub vertices: Vec<usize>,
    pub turning: Rational,
}

/// The strict boundary-number form `ΣT = −χ`, which only claims to hold
/// for fields without interior singularities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StrictForm {
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
    /// `None` when the field has interior singularities.
    pub verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndexMismatch {
    pub vertex: usize,
    pub first: Rational,
    pub second: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclePair {
    pub kind: CycleKind,
    pub length: usize,
    pub first: Rational,
    pub second: Rational,
}

/// Both readings of field equivalence: turning numbers on the basis only,
/// and turning numbers plus every vertex index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceDetail {
    pub cycles_only_verdict: bool,
    pub with_indices_verdict: bool,
    pub cycles: Vec<CyclePair>,
    pub index_mismatches: Vec<IndexMismatch>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDetail {
    pub singularities: Vec<SingularityRecord>,
    pub cycles: Vec<CycleTurning>,
    pub chi: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strict: Option<StrictForm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equivalence: Option<EquivalenceDetail>,
    /// Largest distance to the snapped value over all measurements, in turns.
    pub max_snap_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremReport {
    pub schema: String,
    pub theorem: Theorem,
    pub lhs: Rational,
    pub rhs: Rational,
    pub residual: Rational,
    pub verdict: bool,
    pub detail: ReportDetail,
}

impl TheoremReport {
    fn new(theorem: Theorem, lhs: Rational, rhs: Rational, detail: ReportDetail) -> TheoremReport {
        let residual = lhs - rhs;
        TheoremReport {
            schema: REPORT_SCHEMA.to_string(),
            theorem,
            lhs,
            rhs,
            residual,
            verdict: residual.is_zero(),
            detail,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn cycle_turning(surface: &Surface, field: &DirectionField, cycle: &Cycle) -> Result<(CycleTurning, f64), FieldError> {
    let snapped = surface.turning_snap(field, cycle)?;
    let turning = CycleTurning {
        kind: cycle.kind(),
        length: cycle.len(),
        vertices: cycle.vertices(surface.mesh()),
        turning: snapped.value,
    };
    Ok((turning, snapped.residual))
}

/// Sum of interior indices against `χ` on a closed connected surface.
pub fn check_poincare_hopf(surface: &Surface, field: &DirectionField) -> Result<TheoremReport, TheoremError> {
    let mesh = surface.mesh();
    let loops = mesh.num_boundary_loops();
    if loops > 0 {
        return Err(TheoremError::HasBoundary(loops));
    }
    mesh.require_connected()?;
    let summary = surface.total_index(field)?;
    let chi = mesh.euler_characteristic();
    let detail = ReportDetail {
        singularities: summary.records,
        chi,
        max_snap_residual: summary.max_residual,
        ..ReportDetail::default()
    };
    Ok(TheoremReport::new(Theorem::PoincareHopf, summary.interior_sum, Rational::from_integer(chi), detail))
}

/// Boundary turning against interior indices on a connected surface with
/// boundary. The report's verdict is the general form `ΣT = ΣI − χ`;
/// `detail.strict` carries `ΣT = −χ`.
pub fn check_boundary_number(surface: &Surface, field: &DirectionField) -> Result<TheoremReport, TheoremError> {
    let mesh = surface.mesh();
    if mesh.is_closed() {
        return Err(TheoremError::Closed);
    }
    mesh.require_connected()?;
    let summary = surface.total_index(field)?;
    let chi = mesh.euler_characteristic();
    let mut cycles = Vec::new();
    let mut max_residual = summary.max_residual;
    let mut turning_sum = Rational::ZERO;
    for cycle in boundary_loops(mesh) {
        let (turning, residual) = cycle_turning(surface, field, &cycle)?;
        turning_sum += turning.turning;
        max_residual = max_residual.max(residual);
        cycles.push(turning);
    }
    let chi_r = Rational::from_integer(chi);
    let strict_rhs = -chi_r;
    let strict_residual = turning_sum - strict_rhs;
    let strict = StrictForm {
        lhs: turning_sum,
        rhs: strict_rhs,
        residual: strict_residual,
        verdict: summary.records.is_empty().then(|| strict_residual.is_zero()),
    };
    let detail = ReportDetail {
        singularities: summary.records,
        cycles,
        chi,
        strict: Some(strict),
        equivalence: None,
        max_snap_residual: max_residual,
    };
    Ok(TheoremReport::new(Theorem::BoundaryNumber, turning_sum, summary.interior_sum - chi_r, detail))
}

/// Poincaré–Hopf on closed surfaces, the boundary number otherwise.
pub fn check_surface(surface: &Surface, field: &DirectionField) -> Result<TheoremReport, TheoremError> {
    if surface.mesh().is_closed() {
        check_poincare_hopf(surface, field)
    } else {
        check_boundary_number(surface, field)
    }
}

/// Outcome of closing a disk into a sphere and comparing the turning of the
/// field around the disk's vertex singularity with the turning around the
/// cap apex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub schema: String,
    pub theorem: Theorem,
    pub disk_interior_indices: Vec<SingularityRecord>,
    /// `T(∂D)` measured on the disk.
    pub boundary_turning: Rational,
    pub apex_vertex: usize,
    /// Index of the apex on the closed sphere.
    pub apex_index_on_sphere: Rational,
    /// `I¹`, the apex part of the decomposition.
    pub apex_part: Rational,
    /// `I² = I(v)`; absent when the disk has two or more singularities.
    pub vertex_part: Option<Rational>,
    pub designated_vertex: Option<usize>,
    /// `T(∂v)`, turning along the link of the designated vertex.
    pub vertex_link_turning: Option<Rational>,
    /// `T(∂Ω)`, turning along the link of the apex.
    pub apex_link_turning: Rational,
    /// `T(∂v) + T(∂Ω)`.
    pub duality_residual: Option<Rational>,
    /// `T(∂D) + (I¹ − 1)`: zero when the boundary turning measured on the
    /// disk agrees with the apex index measured after closure.
    pub closure_residual: Rational,
    /// All nonzero indices on the sphere, apex included.
    pub sphere_indices: Vec<SingularityRecord>,
    pub sphere_total_index: Rational,
    /// Period jumps given to the cap spokes so every rim vertex is regular.
    pub spoke_jumps: Vec<SpokeJump>,
    /// `None` when the disk carries two or more singularities.
    pub verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpokeJump {
    pub rim: usize,
    pub jump: i64,
}

impl DualityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// A disk closed into a sphere with the field carried over.
#[derive(Debug, Clone)]
pub struct ClosedDisk {
    pub surface: Surface,
    pub field: DirectionField,
    pub apex: usize,
}

/// Caps the disk boundary with a cone and extends `field` onto it: the
/// cone faces get θ = 0 in their frames, the former boundary edges get jump
/// 0, and each spoke gets the jump that makes its rim vertex regular. The
/// apex then absorbs the whole boundary behaviour.
pub fn close_disk_field(surface: &Surface, field: &DirectionField) -> Result<ClosedDisk, TheoremError> {
    require_disk(surface)?;
    surface.check_field(field)?;
    let mesh = surface.mesh();
    let boundary = boundary_loops(mesh).remove(0);
    let closure = close_boundary(mesh, &boundary)?;
    let apex = closure.apex;
    let closed = Surface::new(closure.mesh)?.with_apexes(vec![apex]).with_tolerance(surface.tolerance());
    let cm = closed.mesh();

    let mut theta = field.thetas().to_vec();
    theta.resize(cm.num_faces(), 0.0);
    let mut jumps = vec![0i64; cm.num_edges()];
    for (e, edge) in mesh.edges().iter().enumerate() {
        let [a, b] = edge.vertices;
        let ce = cm.find_edge(a, b).expect("closure keeps every edge");
        jumps[ce] = if edge.is_boundary() { 0 } else { field.jump(e) };
    }
    let mut extended = DirectionField::new(field.order(), theta, jumps)?;
    let n = field.order();
    for &w in &closure.rim {
        let index = closed.singularity_index(&extended, w)?;
        if index.is_zero() {
            continue;
        }
        // the rim vertex is the smaller endpoint, so its index moves with the jump
        let e = cm.find_edge(w, apex).expect("spoke exists");
        let jump = -index.times_order(n).expect("index is a multiple of 1/n");
        extended = extended.with_jump(e, extended.jump(e) + jump);
    }
    Ok(ClosedDisk { surface: closed, field: extended, apex })
}

fn require_disk(surface: &Surface) -> Result<(), TheoremError> {
    let mesh = surface.mesh();
    let chi = mesh.euler_characteristic();
    let boundary_loops = mesh.num_boundary_loops();
    let components = mesh.component_faces().len();
    if chi != 1 || boundary_loops != 1 || components != 1 {
        return Err(TheoremError::NotADisk { chi, boundary_loops, components });
    }
    Ok(())
}

/// Closes a disk into a sphere and compares the turning numbers around the
/// vertex singularity and around the apex, which should be opposite.
///
/// With no interior singularity the vertex is `designated`, or else the
/// first interior vertex. With one, it is the singular vertex and
/// `designated` must be `None` or equal to it. With two or more the report
/// lists the indices and carries no verdict.
pub fn disk_sphere_duality(
    surface: &Surface,
    field: &DirectionField,
    designated: Option<usize>,
) -> Result<DualityReport, TheoremError> {
    require_disk(surface)?;
    let mesh = surface.mesh();
    let summary = surface.total_index(field)?;
    let boundary = boundary_loops(mesh).remove(0);
    let boundary_turning = surface.turning_number(field, &boundary)?;

    if let Some(v) = designated {
        mesh.check_vertex(v)?;
        if mesh.is_boundary_vertex(v) {
            return Err(TheoremError::Designated { vertex: v, reason: "lies on the boundary".into() });
        }
    }
    let vertex = match summary.records.as_slice() {
        [] => match designated {
            Some(v) => Some(v),
            None => Some(mesh.interior_vertices().next().ok_or_else(|| TheoremError::Designated {
                vertex: 0,
                reason: "the disk has no interior vertex".into(),
            })?),
        },
        [single] => match designated {
            Some(v) if v != single.vertex => {
                return Err(TheoremError::Designated {
                    vertex: v,
                    reason: format!("the only singularity is at vertex {}", single.vertex),
                })
            }
            _ => Some(single.vertex),
        },
        _ => None,
    };

    let closed = close_disk_field(surface, field)?;
    let (cs, cf, apex) = (&closed.surface, &closed.field, closed.apex);
    let sphere = cs.total_index(cf)?;
    let apex_index = cs.singularity_index(cf, apex)?;
    let apex_link = vertex_link_cycle(cs.mesh(), apex)?;
    let apex_link_turning = cs.turning_number(cf, &apex_link)?;
    let (vertex_part, vertex_link_turning) = match vertex {
        Some(v) => {
            let link = vertex_link_cycle(cs.mesh(), v)?;
            (Some(cs.singularity_index(cf, v)?), Some(cs.turning_number(cf, &link)?))
        }
        None => (None, None),
    };
    let duality_residual = vertex_link_turning.map(|t| t + apex_link_turning);
    let spoke_jumps = cs
        .mesh()
        .edges()
        .iter()
        .enumerate()
        .filter(|(e, edge)| edge.vertices[1] == apex && cf.jump(*e) != 0)
        .map(|(e, edge)| SpokeJump { rim: edge.vertices[0], jump: cf.jump(e) })
        .collect();

    Ok(DualityReport {
        schema: REPORT_SCHEMA.to_string(),
        theorem: Theorem::Duality,
        disk_interior_indices: summary.records,
        boundary_turning,
        apex_vertex: apex,
        apex_index_on_sphere: apex_index,
        apex_part: apex_index,
        vertex_part,
        designated_vertex: vertex,
        vertex_link_turning,
        apex_link_turning,
        duality_residual,
        closure_residual: boundary_turning + apex_index - Rational::ONE,
        sphere_indices: sphere.records,
        sphere_total_index: sphere.interior_sum,
        spoke_jumps,
        verdict: duality_residual.map(|r| r.is_zero()),
    })
}

/// Compares two fields by their turning numbers on `basis` and by their
/// vertex indices. `lhs` is `Σ|ΔT| + Σ|ΔI|`, so the verdict requires both
/// to agree; `detail.equivalence` also reports the cycles-only verdict.
pub fn topological_equivalence(
    surface: &Surface,
    first: &DirectionField,
    second: &DirectionField,
    basis: &[Cycle],
) -> Result<TheoremReport, TheoremError> {
    if first.order() != second.order() {
        return Err(TheoremError::OrderMismatch(first.order(), second.order()));
    }
    let mesh = surface.mesh();
    let mut residual = Rational::ZERO;
    let mut max_residual: f64 = 0.0;
    let mut pairs = Vec::with_capacity(basis.len());
    let mut cycles = Vec::with_capacity(basis.len());
    for cycle in basis {
        let (a, ra) = cycle_turning(surface, first, cycle)?;
        let b = surface.turning_snap(second, cycle)?;
        max_residual = max_residual.max(ra).max(b.residual);
        residual += (a.turning - b.value).abs();
        pairs.push(CyclePair { kind: cycle.kind(), length: cycle.len(), first: a.turning, second: b.value });
        cycles.push(a);
    }
    let cycles_only = residual.is_zero();
    let mut mismatches = Vec::new();
    for v in mesh.interior_vertices() {
        let a = surface.index_snap(first, v)?;
        let b = surface.index_snap(second, v)?;
        max_residual = max_residual.max(a.residual).max(b.residual);
        if a.value != b.value {
            residual += (a.value - b.value).abs();
            mismatches.push(IndexMismatch { vertex: v, first: a.value, second: b.value });
        }
    }
    let detail = ReportDetail {
        singularities: surface.total_index(first)?.records,
        cycles,
        chi: mesh.euler_characteristic(),
        strict: None,
        equivalence: Some(EquivalenceDetail {
            cycles_only_verdict: cycles_only,
            with_indices_verdict: residual.is_zero(),
            cycles: pairs,
            index_mismatches: mismatches,
        }),
        max_snap_residual: max_residual,
    };
    Ok(TheoremReport::new(Theorem::Equivalence, residual, Rational::ZERO, detail))
}
