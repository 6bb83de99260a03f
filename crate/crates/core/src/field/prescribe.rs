use std::collections::{BTreeMap, VecDeque};

use super::{DirectionField, FieldError, Surface};
use crate::mesh::MeshError;
use crate::rational::Rational;

impl Surface {
    /// Builds a field with the given interior vertex indices; unlisted
    /// interior vertices get index 0. Angles are θ = 0 in every face and
    /// only period jumps are adjusted, along a spanning forest of the vertex
    /// graph. Boundary vertices act as sinks, so on surfaces with boundary
    /// every target set is reachable. On closed components the targets must
    /// sum to the Euler characteristic of the component.
    pub fn prescribe_singularities(
        &self,
        order: u32,
        targets: &BTreeMap<usize, Rational>,
    ) -> Result<DirectionField, FieldError> {
        self.prescribe_from(&self.constant_field(order)?, targets)
    }

    /// Like [`Surface::prescribe_singularities`], but keeps the angles and
    /// starts from the jumps of `base`.
    pub fn prescribe_from(
        &self,
        base: &DirectionField,
        targets: &BTreeMap<usize, Rational>,
    ) -> Result<DirectionField, FieldError> {
        self.check_field(base)?;
        let mesh = self.mesh();
        let order = base.order();
        let n = order as i64;
        for (&v, &target) in targets {
            mesh.check_vertex(v)?;
            if mesh.is_boundary_vertex(v) {
                return Err(MeshError::BoundaryVertex(v).into());
            }
            if !target.is_multiple_of_inverse(order) {
                return Err(FieldError::NonIntegralTarget { vertex: v, target, n: order });
            }
        }

        let nv = mesh.num_vertices();
        // need[v] = n * (target - current) in units of 1/n
        let mut need = vec![0i64; nv];
        let mut target_of = vec![Rational::ZERO; nv];
        for v in mesh.interior_vertices() {
            let current = self.singularity_index(base, v)?;
            let target = targets.get(&v).copied().unwrap_or(Rational::ZERO);
            target_of[v] = target;
            need[v] = (target - current).times_order(order).expect("both are multiples of 1/n");
        }

        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (e, edge) in mesh.edges().iter().enumerate() {
            let [a, b] = edge.vertices;
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }

        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut order_seen = Vec::with_capacity(nv);
        let mut queue = VecDeque::new();
        let mut roots = Vec::new();
        for v in 0..nv {
            if mesh.is_boundary_vertex(v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        let mut next_root = 0;
        loop {
            while let Some(v) = queue.pop_front() {
                order_seen.push(v);
                for &(w, e) in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, e));
                        queue.push_back(w);
                    }
                }
            }
            // components without boundary get their own root
            while next_root < nv && seen[next_root] {
                next_root += 1;
            }
            if next_root == nv {
                break;
            }
            seen[next_root] = true;
            roots.push(next_root);
            queue.push_back(next_root);
        }

        let mut jumps = base.jumps().to_vec();
        let mut subtree_targets = target_of.clone();
        for &v in order_seen.iter().rev() {
            let Some((w, e)) = parent[v] else { continue };
            if mesh.is_boundary_vertex(v) {
                continue;
            }
            // raising the canonical jump raises the index of the smaller endpoint
            if v < w {
                jumps[e] += need[v];
            } else {
                jumps[e] -= need[v];
            }
            need[w] += need[v];
            need[v] = 0;
            let carried = subtree_targets[v];
            subtree_targets[w] += carried;
        }
        for &root in &roots {
            if need[root] != 0 {
                let sum = subtree_targets[root];
                let excess = Rational::new(need[root], n);
                let chi = sum - excess;
                return Err(FieldError::Infeasible { sum, chi: chi.numer() });
            }
        }
        DirectionField::new(order, base.thetas().to_vec(), jumps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn indices(s: &Surface, f: &DirectionField) -> BTreeMap<usize, Rational> {
        s.total_index(f).unwrap().records.into_iter().map(|rec| (rec.vertex, rec.index)).collect()
    }

    #[test]
    fn sphere_with_two_cones() {
        let s = Surface::new(shapes::icosphere(1)).unwrap();
        let targets = BTreeMap::from([(0, r(1, 1)), (5, r(1, 1))]);
        let f = s.prescribe_singularities(1, &targets).unwrap();
        assert_eq!(indices(&s, &f), targets);
    }

    #[test]
    fn sphere_with_mixed_signs() {
        let s = Surface::new(shapes::icosphere(2)).unwrap();
        let targets = BTreeMap::from([(3, r(3, 4)), (7, r(-1, 4)), (20, r(1, 2)), (40, r(1, 1))]);
        let f = s.prescribe_singularities(4, &targets).unwrap();
        assert_eq!(indices(&s, &f), targets);
    }

    #[test]
    fn infeasible_sum_on_sphere() {
        let s = Surface::new(shapes::icosphere(1)).unwrap();
        let targets = BTreeMap::from([(0, r(1, 1))]);
        assert_eq!(
            s.prescribe_singularities(1, &targets).unwrap_err(),
            FieldError::Infeasible { sum: r(1, 1), chi: 2 }
        );
    }

    #[test]
    fn torus_needs_zero_total() {
        let s = Surface::new(shapes::torus(8, 6, 2.0, 0.7)).unwrap();
        let targets = BTreeMap::from([(1, r(1, 2)), (20, r(-1, 2))]);
        let f = s.prescribe_singularities(2, &targets).unwrap();
        assert_eq!(indices(&s, &f), targets);
        let bad = BTreeMap::from([(1, r(1, 2))]);
        assert!(matches!(s.prescribe_singularities(2, &bad), Err(FieldError::Infeasible { chi: 0, .. })));
    }

    #[test]
    fn disk_without_singularities_turns_minus_one() {
        let s = Surface::new(shapes::curved_disk(3)).unwrap();
        let f = s.prescribe_singularities(4, &BTreeMap::new()).unwrap();
        assert!(indices(&s, &f).is_empty());
        let turning = s.boundary_turning(&f).unwrap();
        assert_eq!(turning[0].1, r(-1, 1));
    }

    #[test]
    fn line_field_on_disk_with_four_half_cones() {
        let s = Surface::new(shapes::hex_disk(4)).unwrap();
        let targets = BTreeMap::from([(0, r(1, 2)), (7, r(1, 2)), (9, r(1, 2)), (11, r(1, 2))]);
        let f = s.prescribe_singularities(2, &targets).unwrap();
        assert_eq!(indices(&s, &f), targets);
        // T = ΣI − χ on a disk
        assert_eq!(s.boundary_turning(&f).unwrap()[0].1, r(1, 1));
    }

    #[test]
    fn random_base_keeps_angles() {
        let s = Surface::new(shapes::curved_disk(3)).unwrap();
        let base = s.random_field(4, 17, 3).unwrap();
        let f = s.prescribe_from(&base, &BTreeMap::from([(0, r(-1, 4))])).unwrap();
        assert_eq!(f.thetas(), base.thetas());
        assert_eq!(indices(&s, &f), BTreeMap::from([(0, r(-1, 4))]));
    }

    #[test]
    fn bad_targets_are_rejected() {
        let s = Surface::new(shapes::hex_disk(2)).unwrap();
        let off = BTreeMap::from([(0, r(1, 3))]);
        assert!(matches!(s.prescribe_singularities(2, &off), Err(FieldError::NonIntegralTarget { vertex: 0, .. })));
        let boundary = (0..s.mesh().num_vertices()).find(|&v| s.mesh().is_boundary_vertex(v)).unwrap();
        let on_boundary = BTreeMap::from([(boundary, r(1, 1))]);
        assert!(matches!(
            s.prescribe_singularities(1, &on_boundary),
            Err(FieldError::Mesh(MeshError::BoundaryVertex(_)))
        ));
    }
}
