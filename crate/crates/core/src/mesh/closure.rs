use super::{add, boundary_loops, cross, norm, scale, sub, Cycle, Mesh, MeshError, Point};

/// A mesh with one boundary loop capped by a cone.
#[derive(Debug, Clone)]
pub struct Closure {
    pub mesh: Mesh,
    /// The new cone apex; always the last vertex.
    pub apex: usize,
    /// Loop vertices in loop order.
    pub rim: Vec<usize>,
    /// Faces with ids below this are the input faces, unchanged.
    pub original_faces: usize,
}

/// Caps `boundary` with a triangle fan to a new apex vertex.
///
/// The apex sits at the loop centroid, offset by the mean loop radius along
/// the side opposite the loop's vector area, so the cap closes the surface
/// away from its oriented normals.
pub fn close_boundary(mesh: &Mesh, boundary: &Cycle) -> Result<Closure, MeshError> {
    boundary.validate(mesh).map_err(|_| MeshError::NotABoundaryLoop)?;
    let first = boundary.halfedges()[0];
    let matching = boundary_loops(mesh)
        .into_iter()
        .find(|l| l.halfedges().contains(&first))
        .ok_or(MeshError::NotABoundaryLoop)?;
    let mut expected = matching.halfedges().to_vec();
    let mut given = boundary.halfedges().to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(MeshError::NotABoundaryLoop);
    }

    let rim = boundary.vertices(mesh);
    let points: Vec<Point> = rim.iter().map(|&v| mesh.position(v)).collect();
    let k = points.len() as f64;
    let centroid = scale(points.iter().fold([0.0; 3], |acc, &p| add(acc, p)), 1.0 / k);
    let radius = points.iter().map(|&p| norm(sub(p, centroid))).sum::<f64>() / k;
    let mut area = [0.0; 3];
    for i in 0..points.len() {
        let (a, b) = (sub(points[i], centroid), sub(points[(i + 1) % points.len()], centroid));
        area = add(area, scale(cross(a, b), 0.5));
    }
    let mut normal = area;
    if norm(normal) <= 1e-12 * radius * radius {
        normal = boundary.halfedges().iter().fold([0.0; 3], |acc, &h| {
            let [p, q, r] = mesh.face(mesh.face_of(h)).map(|v| mesh.position(v));
            add(acc, cross(sub(q, p), sub(r, p)))
        });
    }
    let len = norm(normal);
    if !(len > 0.0) || !(radius > 0.0) {
        return Err(MeshError::InvalidCycle("cannot place a cap apex for this loop".into()));
    }
    let apex_position = sub(centroid, scale(normal, radius / len));

    let mut positions = mesh.positions().to_vec();
    let apex = positions.len();
    positions.push(apex_position);
    let mut faces = mesh.faces().to_vec();
    for &h in boundary.halfedges() {
        faces.push([mesh.target(h), mesh.source(h), apex]);
    }
    let closed = Mesh::new(positions, faces)?;
    Ok(Closure { mesh: closed, apex, rim, original_faces: mesh.num_faces() })
}

/// Caps every boundary loop, returning the closed mesh and the apexes in
/// loop order.
pub fn close_all_boundaries(mesh: &Mesh) -> Result<(Mesh, Vec<usize>), MeshError> {
    let mut current = mesh.clone();
    let mut apexes = Vec::new();
    while let Some(next) = boundary_loops(&current).into_iter().next() {
        let closure = close_boundary(&current, &next)?;
        apexes.push(closure.apex);
        current = closure.mesh;
    }
    Ok((current, apexes))
}
