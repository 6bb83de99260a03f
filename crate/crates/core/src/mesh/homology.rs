//! Homology generators by tree–cotree decomposition.

use std::collections::VecDeque;

use super::{boundary_loops, Cycle, CycleKind, Mesh, MeshError};

/// Spanning tree of the vertex graph; interior edges are preferred so that
/// tree paths only use boundary edges to reach vertices with no interior edge.
fn primal_tree(mesh: &Mesh, neighbors: &[Vec<(usize, usize)>]) -> (Vec<Option<(usize, usize)>>, Vec<bool>) {
    let nv = mesh.num_vertices();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut reached = vec![false; nv];
    let mut in_tree = vec![false; mesh.num_edges()];
    let mut queue = VecDeque::from([0usize]);
    let mut deferred: VecDeque<(usize, usize, usize)> = VecDeque::new();
    reached[0] = true;
    loop {
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &neighbors[u] {
                if reached[w] {
                    continue;
                }
                if mesh.edge(e).is_boundary() {
                    deferred.push_back((u, w, e));
                    continue;
                }
                reached[w] = true;
                parent[w] = Some((u, e));
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
        match deferred.pop_front() {
            Some((u, w, e)) if !reached[w] => {
                reached[w] = true;
                parent[w] = Some((u, e));
                in_tree[e] = true;
                queue.push_back(w);
            }
            Some(_) => {}
            None => break,
        }
    }
    (parent, in_tree)
}

/// Spanning tree of the dual graph of the mesh with every boundary loop
/// capped by one virtual face, avoiding primal tree edges.
fn cotree(mesh: &Mesh, in_primal: &[bool]) -> Vec<bool> {
    let nf = mesh.num_faces();
    let loops = boundary_loops(mesh);
    let mut loop_of = vec![usize::MAX; mesh.num_halfedges()];
    for (l, cycle) in loops.iter().enumerate() {
        for &h in cycle.halfedges() {
            loop_of[h] = l;
        }
    }
    let nodes = nf + loops.len();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (e, edge) in mesh.edges().iter().enumerate() {
        if in_primal[e] {
            continue;
        }
        let (a, b) = match (edge.forward, edge.backward) {
            (Some(f), Some(g)) => (mesh.face_of(f), mesh.face_of(g)),
            (Some(h), None) | (None, Some(h)) => (mesh.face_of(h), nf + loop_of[h]),
            (None, None) => unreachable!("edge without faces"),
        };
        adjacency[a].push((b, e));
        adjacency[b].push((a, e));
    }
    let mut in_cotree = vec![false; mesh.num_edges()];
    let mut seen = vec![false; nodes];
    let start = if loops.is_empty() { 0 } else { nf };
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                in_cotree[e] = true;
                queue.push_back(y);
            }
        }
    }
    in_cotree
}

fn path_to_root(parent: &[Option<(usize, usize)>], mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while let Some((p, _)) = parent[v] {
        path.push(p);
        v = p;
    }
    path
}

/// `2g` non-contractible cycles of a connected mesh; empty for genus 0.
///
/// Boundary loops are capped virtually, so loops that only go around a
/// boundary are not reported; pair these with [`boundary_loops`] for a full
/// basis.
pub fn homology_generators(mesh: &Mesh) -> Result<Vec<Cycle>, MeshError> {
    mesh.require_connected()?;
    let mut neighbors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); mesh.num_vertices()];
    for (e, edge) in mesh.edges().iter().enumerate() {
        let [a, b] = edge.vertices;
        neighbors[a].push((b, e));
        neighbors[b].push((a, e));
    }
    let (parent, in_primal) = primal_tree(mesh, &neighbors);
    let in_cotree = cotree(mesh, &in_primal);

    let mut generators = Vec::new();
    for (e, edge) in mesh.edges().iter().enumerate() {
        if in_primal[e] || in_cotree[e] {
            continue;
        }
        let [a, b] = edge.vertices;
        let up_a = path_to_root(&parent, a);
        let up_b = path_to_root(&parent, b);
        // strip the shared suffix above the lowest common ancestor
        let mut common = 0;
        while common < up_a.len().min(up_b.len())
            && up_a[up_a.len() - 1 - common] == up_b[up_b.len() - 1 - common]
        {
            common += 1;
        }
        let lca_a = up_a.len() - common;
        let lca_b = up_b.len() - common;
        // a -> b, b up to the ancestor, then back down to a
        let mut vertices = vec![a];
        if lca_a == 0 {
            vertices.extend(&up_b[..lca_b]);
        } else {
            vertices.extend(&up_b[..=lca_b]);
            vertices.extend(up_a[1..lca_a].iter().rev());
        }
        let cycle = Cycle::from_vertices(mesh, &vertices, CycleKind::HomologyGenerator).or_else(|_| {
            vertices.reverse();
            Cycle::from_vertices(mesh, &vertices, CycleKind::HomologyGenerator)
        })?;
        generators.push(cycle);
    }
    Ok(generators)
}

/// Homology generators followed by boundary loops.
pub fn equivalence_basis(mesh: &Mesh) -> Result<Vec<Cycle>, MeshError> {
    let mut basis = homology_generators(mesh)?;
    basis.extend(boundary_loops(mesh));
    Ok(basis)
}
