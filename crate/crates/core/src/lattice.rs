//! Face lattices built by closing vertex-facet incidences under intersection.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exact::{affine_rank, Vector};
use crate::flag::{FVector, FlagVector};
use crate::polytope::Polytope;
use crate::vset::VertexSet;

/// All faces of a polytope (or of an abstract polytopal lattice) as vertex
/// sets, layered by dimension.
///
/// `layers[k + 1]` holds the `k`-faces for `k` in `-1..=dim`. The facet layer
/// keeps the order in which facets were supplied; every other layer is sorted.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    num_vertices: usize,
    layers: Vec<Vec<VertexSet>>,
    /// `covers[l][i]`: positions in `layers[l + 1]` of the faces covering
    /// `layers[l][i]`.
    covers: Vec<Vec<Vec<usize>>>,
    index: HashMap<VertexSet, (usize, usize)>,
}

impl PartialEq for FaceLattice {
    /// Equal as labeled lattices: same vertex count and the same faces.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.num_vertices == other.num_vertices
            && self.layers.len() == other.layers.len()
            && self
                .layers
                .iter()
                .zip(&other.layers)
                .all(|(a, b)| a.iter().collect::<BTreeSet<_>>() == b.iter().collect::<BTreeSet<_>>())
    }
}

impl Eq for FaceLattice {}

/// Face lattice of `p`, with each face's layer checked against the affine
/// rank of its vertex coordinates.
pub fn build_face_lattice(p: &Polytope) -> Result<FaceLattice> {
    let lat = FaceLattice::from_incidences(p.dim(), p.num_vertices(), p.facet_sets())?;
    for k in 1..p.dim().saturating_sub(1) {
        for face in lat.faces(k) {
            let pts: Vec<&Vector> = face.iter().map(|i| p.vertex(i)).collect();
            let r = affine_rank(&pts)?;
            if r != k {
                return Err(Error::InvalidPolytope(format!(
                    "face {face} sits in layer {k} but spans dimension {r}"
                )));
            }
        }
    }
    Ok(lat)
}

impl FaceLattice {
    /// Closes `facets` under intersection and ranks the result by longest
    /// chains. Fails unless the result is a graded lattice of rank `dim + 1`
    /// whose atoms are exactly the `num_vertices` singletons and whose coatoms
    /// are exactly `facets`.
    pub fn from_incidences(dim: usize, num_vertices: usize, facets: Vec<VertexSet>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPolytope(msg));
        if num_vertices == 0 || facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        for f in &facets {
            if f.is_empty() || f.iter().any(|i| i >= num_vertices) {
                return bad(format!("facet {f} is empty or out of range"));
            }
        }
        for (a, fa) in facets.iter().enumerate() {
            for fb in &facets[a + 1..] {
                if fa.is_subset(fb) || fb.is_subset(fa) {
                    return bad(format!("facets {fa} and {fb} are nested"));
                }
            }
        }

        let top = VertexSet::full(num_vertices);
        let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
        seen.insert(top.clone());
        seen.insert(VertexSet::new());
        let mut queue: Vec<VertexSet> = Vec::new();
        for f in &facets {
            if seen.insert(f.clone()) {
                queue.push(f.clone());
            }
        }
        while let Some(face) = queue.pop() {
            for f in &facets {
                let g = face.intersection(f);
                if !seen.contains(&g) {
                    seen.insert(g.clone());
                    queue.push(g);
                }
            }
        }

        let mut faces: Vec<VertexSet> = seen.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let nf = faces.len();
        // proper subfaces, then maximal ones among them
        let mut rank = vec![0isize; nf];
        let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for i in 0..nf {
            let subs: Vec<usize> = (0..i)
                .filter(|&j| faces[j].len() < faces[i].len() && faces[j].is_subset(&faces[i]))
                .collect();
            if subs.is_empty() {
                rank[i] = -1;
                continue;
            }
            let maximal: Vec<usize> = subs
                .iter()
                .copied()
                .filter(|&j| {
                    !subs
                        .iter()
                        .any(|&h| h != j && faces[j].is_proper_subset(&faces[h]))
                })
                .collect();
            let r = rank[maximal[0]] + 1;
            if maximal.iter().any(|&j| rank[j] + 1 != r) {
                return bad(format!("the interval below {} is not graded", faces[i]));
            }
            rank[i] = r;
            lower_covers[i] = maximal;
        }
        if !faces[0].is_empty() || rank.iter().filter(|&&r| r == -1).count() != 1 {
            return bad("the facets do not intersect in the empty set".into());
        }

        let d = dim as isize;
        let mut layers: Vec<Vec<VertexSet>> = vec![Vec::new(); dim + 2];
        for i in 0..nf {
            let r = rank[i];
            if r > d {
                return bad(format!("face {} has rank {} above {dim}", faces[i], r));
            }
            let l = (r + 1) as usize;
            layers[l].push(faces[i].clone());
        }
        if rank[nf - 1] != d || faces[nf - 1] != top {
            return bad(format!("lattice has rank {} instead of {dim}", rank[nf - 1]));
        }
        if layers[1].len() != num_vertices || layers[1].iter().any(|f| f.len() != 1) {
            return bad("vertices are not exactly the rank-0 faces".into());
        }
        if layers[dim].len() != facets.len() {
            return bad("some facet does not have rank dim - 1".into());
        }
        for layer in layers.iter_mut().take(dim + 2) {
            layer.sort();
        }
        // reorder the facet layer to the supplied order
        let sorted_facets = std::mem::replace(&mut layers[dim], facets.clone());
        let mut index = HashMap::with_capacity(nf);
        for (l, layer) in layers.iter().enumerate() {
            for (i, f) in layer.iter().enumerate() {
                index.insert(f.clone(), (l, i));
            }
        }
        if sorted_facets.iter().any(|f| index.get(f).map(|p| p.0) != Some(dim)) {
            return bad("facet layer mismatch".into());
        }

        let mut covers: Vec<Vec<Vec<usize>>> = layers.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (i, face) in faces.iter().enumerate() {
            let (l, p) = index[face];
            for &j in &lower_covers[i] {
                let (lj, pj) = index[&faces[j]];
                debug_assert_eq!(lj + 1, l);
                covers[lj][pj].push(p);
            }
        }
        for layer in covers.iter_mut() {
            for c in layer.iter_mut() {
                c.sort_unstable();
            }
        }
        Ok(FaceLattice {
            dim,
            num_vertices,
            layers,
            covers,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// `layers()[k + 1]` is the list of `k`-faces.
    pub fn layers(&self) -> &[Vec<VertexSet>] {
        &self.layers
    }

    /// The `k`-faces for `0 <= k <= dim`.
    pub fn faces(&self, k: usize) -> &[VertexSet] {
        &self.layers[k + 1]
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.layers[self.dim]
    }

    pub fn edges(&self) -> &[VertexSet] {
        self.faces(1)
    }

    /// Positions in layer `k + 1` of the faces covering the `i`-th `k`-face
    /// (`k >= -1`, passed as the layer index `k + 1`).
    pub fn covers(&self, layer: usize, i: usize) -> &[usize] {
        &self.covers[layer][i]
    }

    /// `(k, position)` of a face, if `set` is one.
    pub fn locate(&self, set: &VertexSet) -> Option<(isize, usize)> {
        self.index.get(set).map(|&(l, i)| (l as isize - 1, i))
    }

    pub fn contains_face(&self, set: &VertexSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn num_faces(&self) -> usize {
        self.index.len()
    }

    pub fn facets_containing(&self, set: &VertexSet) -> Vec<usize> {
        self.facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| set.is_subset(f))
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of facets containing `face`.
    pub fn face_degree(&self, face: &VertexSet) -> Result<usize> {
        if !self.contains_face(face) {
            return Err(Error::FaceNotFound(face.to_vec()));
        }
        Ok(self.facets().iter().filter(|f| face.is_subset(f)).count())
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..self.dim).map(|k| self.faces(k).len() as u64).collect())
    }

    /// Chain counts by dynamic programming over containment between layers:
    /// `count[S][F]` is the number of chains with dimension set `S` whose top
    /// face is `F`.
    pub fn flag_vector(&self) -> FlagVector {
        let d = self.dim;
        // below[j][i][k]: positions of k-faces inside the i-th j-face, k < j
        let below: Vec<Vec<Vec<Vec<usize>>>> = (0..d)
            .map(|j| {
                self.faces(j)
                    .iter()
                    .map(|f| {
                        (0..j)
                            .map(|k| {
                                self.faces(k)
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, g)| g.is_subset(f))
                                    .map(|(p, _)| p)
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut counts: Vec<Vec<u64>> = vec![Vec::new(); 1 << d];
        let mut entries = vec![0u64; 1 << d];
        entries[0] = 1;
        for mask in 1usize..(1 << d) {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << top);
            let c: Vec<u64> = if rest == 0 {
                vec![1; self.faces(top).len()]
            } else {
                let prev = usize::BITS as usize - 1 - rest.leading_zeros() as usize;
                (0..self.faces(top).len())
                    .map(|i| below[top][i][prev].iter().map(|&p| counts[rest][p]).sum())
                    .collect()
            };
            entries[mask] = c.iter().sum();
            counts[mask] = c;
        }
        FlagVector::from_entries(d, entries)
    }

    /// Every `k`-face has exactly `k + 1` vertices.
    pub fn k_simplicial(&self, k: usize) -> bool {
        assert!(k < self.dim);
        self.faces(k).iter().all(|f| f.len() == k + 1)
    }

    /// Every `(dim - h - 1)`-face lies in exactly `h + 1` facets.
    pub fn h_simple(&self, h: usize) -> bool {
        assert!(h < self.dim);
        let k = self.dim - h - 1;
        self.faces(k)
            .iter()
            .all(|f| self.facets().iter().filter(|g| f.is_subset(g)).count() == h + 1)
    }

    /// The combinatorial dual. Its vertex `j` is facet `j` of `self`; its
    /// facet `i` is the set of facets containing vertex `i`.
    pub fn dual(&self) -> FaceLattice {
        let m = self.facets().len();
        let sets: Vec<VertexSet> = (0..self.num_vertices)
            .map(|v| {
                self.facets()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.contains(v))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        FaceLattice::from_incidences(self.dim, m, sets).expect("the dual of a polytopal lattice is polytopal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn simplex4() -> Polytope {
        let mut pts = vec![Vector::zeros(4)];
        pts.extend((0..4).map(|i| Vector::unit(4, i)));
        Polytope::from_points(4, pts).unwrap()
    }

    fn sizes(lat: &FaceLattice) -> Vec<usize> {
        lat.layers().iter().map(Vec::len).collect()
    }

    #[test]
    fn simplex_layers() {
        let lat = build_face_lattice(&simplex4()).unwrap();
        assert_eq!(sizes(&lat), vec![1, 5, 10, 10, 5, 1]);
        assert!(lat.k_simplicial(2) && lat.h_simple(2));
        let flag = lat.flag_vector();
        assert_eq!(flag.get(&[0, 3]), 20);
        assert_eq!(flag.get(&[0, 1, 2, 3]), 120);
    }

    #[test]
    fn cube_layers_and_dual() {
        let lat = build_face_lattice(&cube()).unwrap();
        assert_eq!(sizes(&lat), vec![1, 8, 12, 6, 1]);
        assert!(!lat.k_simplicial(2));
        assert!(lat.h_simple(2));
        let dual = lat.dual();
        assert_eq!(sizes(&dual), vec![1, 6, 12, 8, 1]);
        assert!(dual.k_simplicial(2));
        assert_eq!(lat.face_degree(&VertexSet::from([0, 1])).unwrap(), 2);
        assert!(lat.face_degree(&VertexSet::from([0, 7])).is_err());
    }

    #[test]
    fn covers_connect_consecutive_layers() {
        let lat = build_face_lattice(&cube()).unwrap();
        // each vertex of the cube lies on 3 edges, each edge on 2 squares
        for i in 0..8 {
            assert_eq!(lat.covers(1, i).len(), 3);
        }
        for i in 0..12 {
            assert_eq!(lat.covers(2, i).len(), 2);
        }
        assert_eq!(lat.covers(0, 0).len(), 8);
    }

    #[test]
    fn non_lattice_is_rejected() {
        // a "square" whose edges are listed as a triangle plus a chord
        let sets = vec![
            VertexSet::from([0, 1]),
            VertexSet::from([1, 2]),
            VertexSet::from([2, 3]),
        ];
        assert!(FaceLattice::from_incidences(2, 4, sets).is_err());
    }
}
