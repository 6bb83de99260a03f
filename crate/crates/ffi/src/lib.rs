//! C ABI over `fieldtopo`.
//!
//! Meshes and fields live behind opaque handles created by `ft_*` calls and
//! released with the matching `*_free`. Every fallible call returns an
//! [`FtStatus`]; on failure the message is kept per thread and read back with
//! [`ft_last_error_message`]. Reports come back as JSON strings owned by the
//! caller and released with [`ft_string_free`].
//!
//! The header is generated into `include/fieldtopo.h` at build time.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use fieldtopo::field::io::parse_field;
use fieldtopo::mesh::equivalence_basis;
use fieldtopo::mesh::io::{load_mesh, MeshFormat};
use fieldtopo::theorems::{self, TheoremError};
use fieldtopo::{DirectionField, FieldError, Mesh, MeshError, Rational, Surface};

/// Result of every fallible call. The numbering matches the exit codes of
/// the `fieldtopo` command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtStatus {
    Ok = 0,
    /// Unreadable mesh or field text.
    Parse = 2,
    /// The mesh is not an oriented 2-manifold or has degenerate faces.
    InvalidMesh = 3,
    /// Field and mesh sizes or orders disagree.
    FieldMismatch = 4,
    /// The operation needs a different topology (closed, bounded, disk).
    WrongTopology = 5,
    /// Prescribed indices cannot be realised.
    Infeasible = 6,
    /// Null pointer, bad vertex id, unreadable file or similar.
    InvalidArgument = 7,
    /// A sum was too far from a multiple of 1/n to snap.
    SnapResidual = 8,
    /// A bug inside the library; the message says where.
    Internal = 9,
}

/// Opaque handle to a mesh with its frames and snapping tolerance.
pub struct FtMesh {
    surface: Surface,
}

/// Opaque handle to an n-symmetry direction field.
pub struct FtField {
    field: DirectionField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FtStatus, String);

impl Failure {
    fn argument(message: impl Into<String>) -> Failure {
        Failure(FtStatus::InvalidArgument, message.into())
    }
}

impl From<MeshError> for Failure {
    fn from(e: MeshError) -> Self {
        let status = match e {
            MeshError::Parse { .. } => FtStatus::Parse,
            MeshError::NoSuchVertex(_) | MeshError::BoundaryVertex(_) | MeshError::InvalidCycle(_) => {
                FtStatus::InvalidArgument
            }
            MeshError::NotABoundaryLoop | MeshError::NotConnected(_) => FtStatus::WrongTopology,
            _ => FtStatus::InvalidMesh,
        };
        Failure(status, e.to_string())
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        let status = match e {
            FieldError::Mesh(m) => return m.into(),
            FieldError::Parse { .. } => FtStatus::Parse,
            FieldError::Mismatch(_) | FieldError::NotAdjacent(..) => FtStatus::FieldMismatch,
            FieldError::Infeasible { .. } | FieldError::NonIntegralTarget { .. } => FtStatus::Infeasible,
            FieldError::InvalidOrder(_) => FtStatus::InvalidArgument,
            FieldError::SnapResidual { .. } => FtStatus::SnapResidual,
        };
        Failure(status, e.to_string())
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        let status = match e {
            TheoremError::Field(f) => return f.into(),
            TheoremError::HasBoundary(_) | TheoremError::Closed | TheoremError::NotADisk { .. } => {
                FtStatus::WrongTopology
            }
            TheoremError::OrderMismatch(..) => FtStatus::FieldMismatch,
            TheoremError::Designated { .. } => FtStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

/// Runs `body`, records any error or panic and converts it to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            FtStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let what = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {what}"));
            FtStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| Failure::argument(format!("{what} is null")))
}

unsafe fn out<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| Failure::argument(format!("{what} is null")))
}

unsafe fn text<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::argument(format!("{what} is null")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure::argument(format!("{what} is not UTF-8")))
}

fn read_file(path: &str) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::argument(format!("cannot read {path}: {e}")))
}

fn vertex(v: i64) -> Result<usize, Failure> {
    usize::try_from(v).map_err(|_| Failure::argument(format!("vertex {v} does not exist")))
}

fn new_mesh(mesh: Mesh, out_mesh: &mut *mut FtMesh) -> Result<(), Failure> {
    let surface = Surface::new(mesh)?;
    *out_mesh = Box::into_raw(Box::new(FtMesh { surface }));
    Ok(())
}

fn new_field(field: DirectionField, out_field: &mut *mut FtField) {
    *out_field = Box::into_raw(Box::new(FtField { field }));
}

fn json_out(json: String, out_json: *mut *mut c_char) {
    if let Some(slot) = unsafe { out_json.as_mut() } {
        *slot = CString::new(json).expect("JSON has no NUL").into_raw();
    }
}

/// Message of the last failed call on this thread, or NULL after a
/// successful call. The pointer stays valid until the next `ft_*` call on
/// the same thread.
#[no_mangle]
pub extern "C" fn ft_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads an OBJ or OFF mesh; the format follows the file extension.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out_mesh` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_load(path: *const c_char, out_mesh: *mut *mut FtMesh) -> FtStatus {
    guard(|| {
        let slot = out(out_mesh, "out_mesh")?;
        let path = text(path, "path")?;
        let format = MeshFormat::from_extension(Path::new(path))
            .ok_or_else(|| Failure::argument(format!("{path}: extension must be .obj or .off")))?;
        new_mesh(load_mesh(&read_file(path)?, format)?, slot)
    })
}

/// Builds a mesh from `num_vertices` xyz triples and `num_faces` vertex
/// triples, faces counterclockwise when seen from outside.
///
/// # Safety
/// `positions` must hold `3 * num_vertices` doubles, `faces` must hold
/// `3 * num_faces` indices and `out_mesh` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_from_arrays(
    positions: *const f64,
    num_vertices: usize,
    faces: *const u32,
    num_faces: usize,
    out_mesh: *mut *mut FtMesh,
) -> FtStatus {
    guard(|| {
        let slot = out(out_mesh, "out_mesh")?;
        if positions.is_null() || faces.is_null() {
            return Err(Failure::argument("positions and faces must not be null"));
        }
        let xyz = std::slice::from_raw_parts(positions, 3 * num_vertices);
        let ids = std::slice::from_raw_parts(faces, 3 * num_faces);
        let positions = xyz.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect();
        let faces = ids.chunks_exact(3).map(|f| [f[0] as usize, f[1] as usize, f[2] as usize]).collect();
        new_mesh(Mesh::new(positions, faces)?, slot)
    })
}

/// Releases a mesh. NULL is ignored.
///
/// # Safety
/// `mesh` must come from this library and not have been freed. Fields made
/// for it stay valid on their own.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_free(mesh: *mut FtMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Sets the snapping tolerance, in turns per edge of the measured cycle.
/// The default is 1e-6.
///
/// # Safety
/// `mesh` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_set_tolerance(mesh: *mut FtMesh, tolerance: f64) -> FtStatus {
    guard(|| {
        let mesh = out(mesh, "mesh")?;
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Failure::argument(format!("tolerance must be positive, got {tolerance}")));
        }
        let surface = mesh.surface.clone();
        mesh.surface = surface.with_tolerance(tolerance);
        Ok(())
    })
}

/// Vertex, edge and face counts. Any out-pointer may be NULL.
///
/// # Safety
/// `mesh` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_counts(
    mesh: *const FtMesh,
    out_vertices: *mut usize,
    out_edges: *mut usize,
    out_faces: *mut usize,
) -> FtStatus {
    guard(|| {
        let m = borrow(mesh, "mesh")?.surface.mesh();
        for (slot, value) in [(out_vertices, m.num_vertices()), (out_edges, m.num_edges()), (out_faces, m.num_faces())] {
            if let Some(slot) = slot.as_mut() {
                *slot = value;
            }
        }
        Ok(())
    })
}

/// Euler characteristic, number of boundary loops and genus.
///
/// # Safety
/// `mesh` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_mesh_topology(
    mesh: *const FtMesh,
    out_chi: *mut i64,
    out_boundary_loops: *mut usize,
    out_genus: *mut u32,
) -> FtStatus {
    guard(|| {
        let m = borrow(mesh, "mesh")?.surface.mesh();
        let genus = m.genus()?;
        if let Some(slot) = out_chi.as_mut() {
            *slot = m.euler_characteristic();
        }
        if let Some(slot) = out_boundary_loops.as_mut() {
            *slot = m.num_boundary_loops();
        }
        if let Some(slot) = out_genus.as_mut() {
            *slot = genus;
        }
        Ok(())
    })
}

/// The field with angle 0 in every face frame and no period jumps.
///
/// # Safety
/// `mesh` must be a live handle and `out_field` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_field_constant(mesh: *const FtMesh, order: u32, out_field: *mut *mut FtField) -> FtStatus {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        new_field(borrow(mesh, "mesh")?.surface.constant_field(order)?, slot);
        Ok(())
    })
}

/// A seeded random field: uniform angles and jumps in
/// `[-jump_range, jump_range]`. The same seed gives the same field.
///
/// # Safety
/// `mesh` must be a live handle and `out_field` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_field_random(
    mesh: *const FtMesh,
    order: u32,
    seed: u64,
    jump_range: u32,
    out_field: *mut *mut FtField,
) -> FtStatus {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        new_field(borrow(mesh, "mesh")?.surface.random_field(order, seed, jump_range)?, slot);
        Ok(())
    })
}

/// Reads a field file (`NSYMFIELD 1`) written for `mesh`.
///
/// # Safety
/// `mesh` must be a live handle, `path` NUL-terminated and `out_field`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ft_field_load(mesh: *const FtMesh, path: *const c_char, out_field: *mut *mut FtField) -> FtStatus {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let path = text(path, "path")?;
        let contents = String::from_utf8(read_file(path)?)
            .map_err(|_| Failure(FtStatus::Parse, format!("{path} is not UTF-8")))?;
        let field = parse_field(&contents, surface.mesh())?;
        surface.check_field(&field)?;
        new_field(field, slot);
        Ok(())
    })
}

/// Builds a field of symmetry `order` whose interior vertex `vertices[i]`
/// has index `numerators[i] / denominators[i]`; other interior vertices are
/// regular. On closed meshes the indices must sum to the Euler
/// characteristic, otherwise `FT_STATUS_INFEASIBLE` is returned.
///
/// # Safety
/// The three arrays must each hold `count` entries (they may be NULL when
/// `count` is 0); `mesh` must be live and `out_field` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_field_prescribe(
    mesh: *const FtMesh,
    order: u32,
    vertices: *const u32,
    numerators: *const i64,
    denominators: *const i64,
    count: usize,
    out_field: *mut *mut FtField,
) -> FtStatus {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let mut targets = BTreeMap::new();
        if count > 0 {
            if vertices.is_null() || numerators.is_null() || denominators.is_null() {
                return Err(Failure::argument("target arrays must not be null"));
            }
            let vs = std::slice::from_raw_parts(vertices, count);
            let nums = std::slice::from_raw_parts(numerators, count);
            let dens = std::slice::from_raw_parts(denominators, count);
            for i in 0..count {
                if dens[i] == 0 {
                    return Err(Failure::argument(format!("target {i} has denominator 0")));
                }
                if targets.insert(vs[i] as usize, Rational::new(nums[i], dens[i])).is_some() {
                    return Err(Failure::argument(format!("vertex {} is listed twice", vs[i])));
                }
            }
        }
        new_field(surface.prescribe_singularities(order, &targets)?, slot);
        Ok(())
    })
}

/// Releases a field. NULL is ignored.
///
/// # Safety
/// `field` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ft_field_free(field: *mut FtField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Symmetry order n of the field, or 0 for NULL.
///
/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_field_order(field: *const FtField) -> u32 {
    field.as_ref().map_or(0, |f| f.field.order())
}

/// Writes the field in the `NSYMFIELD 1` text format.
///
/// # Safety
/// Handles must be live and `out_text` writable; free the result with
/// `ft_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ft_field_to_string(
    mesh: *const FtMesh,
    field: *const FtField,
    out_text: *mut *mut c_char,
) -> FtStatus {
    guard(|| {
        out(out_text, "out_text")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let field = &borrow(field, "field")?.field;
        surface.check_field(field)?;
        json_out(fieldtopo::field::io::write_field(field, surface.mesh()), out_text);
        Ok(())
    })
}

/// Exact index of interior vertex `v` as the reduced fraction
/// `*out_num / *out_den`.
///
/// # Safety
/// Handles must be live and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ft_singularity_index(
    mesh: *const FtMesh,
    field: *const FtField,
    v: i64,
    out_num: *mut i64,
    out_den: *mut i64,
) -> FtStatus {
    guard(|| {
        let num = out(out_num, "out_num")?;
        let den = out(out_den, "out_den")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let field = &borrow(field, "field")?.field;
        surface.check_field(field)?;
        let index = surface.singularity_index(field, vertex(v)?)?;
        (*num, *den) = (index.numer(), index.denom());
        Ok(())
    })
}

/// Sum of all interior vertex indices as a reduced fraction.
///
/// # Safety
/// Handles must be live and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ft_total_index(
    mesh: *const FtMesh,
    field: *const FtField,
    out_num: *mut i64,
    out_den: *mut i64,
) -> FtStatus {
    guard(|| {
        let num = out(out_num, "out_num")?;
        let den = out(out_den, "out_den")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let field = &borrow(field, "field")?.field;
        surface.check_field(field)?;
        let total = surface.total_index(field)?.interior_sum;
        (*num, *den) = (total.numer(), total.denom());
        Ok(())
    })
}

/// Checks Poincaré-Hopf on a closed mesh or the boundary number theorem on
/// a bounded one. `*out_verdict` is 1 when the identity holds and 0 when it
/// fails; `out_json` may be NULL, otherwise it receives the full report.
///
/// # Safety
/// Handles must be live and `out_verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_check(
    mesh: *const FtMesh,
    field: *const FtField,
    out_verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> FtStatus {
    guard(|| {
        let verdict = out(out_verdict, "out_verdict")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let field = &borrow(field, "field")?.field;
        let report = theorems::check_surface(surface, field)?;
        *verdict = report.verdict as i32;
        json_out(report.to_json(), out_json);
        Ok(())
    })
}

/// Closes a disk into a sphere and compares the index at a vertex with the
/// index at the cone apex. `designated` picks the vertex, or -1 for the
/// default. `*out_verdict` is 1 or 0, or -1 when the disk has two or more
/// singularities and no single verdict applies.
///
/// # Safety
/// Handles must be live and `out_verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_duality(
    mesh: *const FtMesh,
    field: *const FtField,
    designated: i64,
    out_verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> FtStatus {
    guard(|| {
        let verdict = out(out_verdict, "out_verdict")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let field = &borrow(field, "field")?.field;
        let designated = if designated == -1 { None } else { Some(vertex(designated)?) };
        let report = theorems::disk_sphere_duality(surface, field, designated)?;
        *verdict = report.verdict.map_or(-1, i32::from);
        json_out(report.to_json(), out_json);
        Ok(())
    })
}

/// Compares two fields on the same mesh by their turning numbers along the
/// mesh's cycle basis and by their vertex indices. `*out_verdict` is 1 when
/// they agree everywhere.
///
/// # Safety
/// Handles must be live and `out_verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn ft_equivalence(
    mesh: *const FtMesh,
    first: *const FtField,
    second: *const FtField,
    out_verdict: *mut i32,
    out_json: *mut *mut c_char,
) -> FtStatus {
    guard(|| {
        let verdict = out(out_verdict, "out_verdict")?;
        let surface = &borrow(mesh, "mesh")?.surface;
        let first = &borrow(first, "first")?.field;
        let second = &borrow(second, "second")?.field;
        let basis = equivalence_basis(surface.mesh())?;
        let report = theorems::topological_equivalence(surface, first, second, &basis)?;
        *verdict = report.verdict as i32;
        json_out(report.to_json(), out_json);
        Ok(())
    })
}
