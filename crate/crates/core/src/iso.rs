//! Combinatorial isomorphism of face lattices.
//!
//! A face lattice is determined by its vertex-facet incidences, so two lattices
//! are isomorphic iff some vertex bijection maps the facet sets of one onto the
//! facet sets of the other. The search assigns vertices in a breadth-first edge
//! order and prunes with per-vertex invariants, pairwise co-facet counts, edge
//! adjacency and every facet that becomes fully assigned.

use std::collections::HashSet;

use crate::lattice::FaceLattice;
use crate::vset::VertexSet;

struct Shape {
    n: usize,
    facets: Vec<VertexSet>,
    facet_set: HashSet<VertexSet>,
    /// `cofacet[u][v]`: facets containing both `u` and `v`.
    cofacet: Vec<Vec<u32>>,
    edge: Vec<Vec<bool>>,
    invariant: Vec<(usize, Vec<usize>, usize)>,
}

impl Shape {
    fn new(lat: &FaceLattice) -> Shape {
        let n = lat.num_vertices();
        let facets = lat.facets().to_vec();
        let mut cofacet = vec![vec![0u32; n]; n];
        for f in &facets {
            let vs = f.to_vec();
            for &u in &vs {
                for &v in &vs {
                    cofacet[u][v] += 1;
                }
            }
        }
        let mut edge = vec![vec![false; n]; n];
        for e in lat.edges() {
            let vs = e.to_vec();
            if let [u, v] = vs[..] {
                edge[u][v] = true;
                edge[v][u] = true;
            }
        }
        let invariant = (0..n)
            .map(|v| {
                let mut sizes: Vec<usize> = facets.iter().filter(|f| f.contains(v)).map(VertexSet::len).collect();
                sizes.sort_unstable();
                let degree = edge[v].iter().filter(|&&b| b).count();
                (sizes.len(), sizes, degree)
            })
            .collect();
        Shape {
            n,
            facet_set: facets.iter().cloned().collect(),
            facets,
            cofacet,
            edge,
            invariant,
        }
    }
}

/// A vertex bijection `map` (vertex `i` of `a` to vertex `map[i]` of `b`)
/// carrying the facets of `a` onto the facets of `b`, if one exists.
pub fn lattices_isomorphic(a: &FaceLattice, b: &FaceLattice) -> Option<Vec<usize>> {
    if a.dim() != b.dim() || a.num_vertices() != b.num_vertices() || a.f_vector() != b.f_vector() {
        return None;
    }
    let sa = Shape::new(a);
    let sb = Shape::new(b);
    let mut ia = sa.invariant.clone();
    let mut ib = sb.invariant.clone();
    ia.sort();
    ib.sort();
    if ia != ib {
        return None;
    }
    let mut fa: Vec<usize> = sa.facets.iter().map(VertexSet::len).collect();
    let mut fb: Vec<usize> = sb.facets.iter().map(VertexSet::len).collect();
    fa.sort_unstable();
    fb.sort_unstable();
    if fa != fb {
        return None;
    }

    let order = search_order(&sa);
    let mut position = vec![0; sa.n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    // completes[k]: facets of `a` whose last vertex in `order` is order[k]
    let mut completes = vec![Vec::new(); sa.n];
    for (j, f) in sa.facets.iter().enumerate() {
        let last = f.iter().map(|v| position[v]).max().expect("nonempty facet");
        completes[last].push(j);
    }
    let mut map = vec![usize::MAX; sa.n];
    let mut used = vec![false; sb.n];
    let ctx = Search {
        a: &sa,
        b: &sb,
        order: &order,
        completes: &completes,
    };
    if ctx.extend(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Breadth-first order along edges, starting from a vertex with the rarest
/// invariant.
fn search_order(s: &Shape) -> Vec<usize> {
    let start = (0..s.n)
        .min_by_key(|&v| (s.invariant.iter().filter(|x| **x == s.invariant[v]).count(), v))
        .unwrap_or(0);
    let mut seen = vec![false; s.n];
    let mut order = Vec::with_capacity(s.n);
    let mut roots = std::iter::once(start).chain(0..s.n);
    while order.len() < s.n {
        let r = roots.next().expect("every vertex is reachable as a root");
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut head = order.len();
        order.push(r);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for (v, &adjacent) in s.edge[u].iter().enumerate().take(s.n) {
                if adjacent && !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a Shape,
    b: &'a Shape,
    order: &'a [usize],
    completes: &'a [Vec<usize>],
}

impl Search<'_> {
    fn extend(&self, k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let u = self.order[k];
        for w in 0..self.b.n {
            if used[w] || self.a.invariant[u] != self.b.invariant[w] {
                continue;
            }
            let consistent = self.order[..k].iter().all(|&x| {
                let y = map[x];
                self.a.cofacet[u][x] == self.b.cofacet[w][y] && self.a.edge[u][x] == self.b.edge[w][y]
            });
            if !consistent {
                continue;
            }
            map[u] = w;
            let facets_ok = self.completes[k]
                .iter()
                .all(|&j| self.b.facet_set.contains(&self.a.facets[j].map(map)));
            if facets_ok {
                used[w] = true;
                if self.extend(k + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
            map[u] = usize::MAX;
        }
        false
    }
}

/// Whether the lattice is isomorphic to its own dual.
pub fn self_dual(lat: &FaceLattice) -> bool {
    lattices_isomorphic(lat, &lat.dual()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Vector;
    use crate::lattice::build_face_lattice;
    use crate::polytope::Polytope;

    fn cube() -> Polytope {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(Vector::from_ints(&[x, y, z]));
                }
            }
        }
        Polytope::from_points(3, pts).unwrap()
    }

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..3 {
            pts.push(Vector::unit(3, i));
            pts.push(Vector::unit(3, i).scale(&crate::exact::int(-1)));
        }
        Polytope::from_points(3, pts).unwrap()
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let c = build_face_lattice(&cube()).unwrap();
        let o = build_face_lattice(&octahedron()).unwrap();
        let map = lattices_isomorphic(&c.dual(), &o).expect("isomorphic");
        for f in c.dual().facets() {
            assert!(o.facets().contains(&f.map(&map)));
        }
        assert!(lattices_isomorphic(&c, &o).is_none());
        assert!(!self_dual(&c));
    }

    #[test]
    fn relabeled_cube_is_isomorphic() {
        let p = cube();
        let q = p.permute_vertices(&[5, 3, 7, 1, 0, 2, 6, 4]).unwrap();
        let a = build_face_lattice(&p).unwrap();
        let b = build_face_lattice(&q).unwrap();
        assert!(lattices_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let c = build_face_lattice(&cube()).unwrap();
        assert!(lattices_isomorphic(&c.dual().dual(), &c).is_some());
    }
}
