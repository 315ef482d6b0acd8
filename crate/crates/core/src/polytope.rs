//! Polytopes as exact vertex coordinates plus oriented facet hyperplanes with
//! their vertex sets.

use crate::error::{Error, Result};
use crate::exact::{affine_rank, barycenter, Hyperplane, Side, Vector};
use crate::hull;
use crate::par::Execution;
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub hyperplane: Hyperplane,
    pub vertices: VertexSet,
}

/// A full-dimensional convex polytope in `Q^dim`.
///
/// Invariants, checked by every constructor:
/// - a vertex satisfies `<n_F, v> >= offset_F` for every facet `F`, with
///   equality exactly when it belongs to `F`'s vertex set;
/// - each facet spans an affine space of dimension `dim - 1` and the vertices
///   span `dim`;
/// - every vertex lies in at least `dim` facets and no facet's vertex set
///   contains another's.
///
/// Facets are kept sorted by their vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
}

impl Polytope {
    pub fn new(dim: usize, vertices: Vec<Vector>, mut facets: Vec<Facet>) -> Result<Self> {
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let p = Polytope {
            dim,
            vertices,
            facets,
        };
        p.validate()?;
        Ok(p)
    }

    /// Facets are recomputed from the coordinates with the brute-force
    /// enumerator.
    pub fn from_points(dim: usize, vertices: Vec<Vector>) -> Result<Self> {
        let facets = hull::facets_from_points(dim, &vertices, Execution::Parallel)?;
        Polytope::new(dim, vertices, facets)
    }

    /// Facets are given as vertex sets; hyperplanes are spanned by their
    /// vertices and oriented towards the vertex barycenter.
    pub fn from_facet_sets(dim: usize, vertices: Vec<Vector>, sets: Vec<VertexSet>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = vertices.len();
        let center = barycenter(&vertices.iter().collect::<Vec<_>>())?;
        let mut facets = Vec::with_capacity(sets.len());
        for set in sets {
            if let Some(bad) = set.iter().find(|&i| i >= n) {
                return Err(Error::InvalidPolytope(format!(
                    "facet {set} refers to vertex {bad}, but there are only {n}"
                )));
            }
            let pts: Vec<&Vector> = set.iter().map(|i| &vertices[i]).collect();
            let hyperplane = Hyperplane::through(&pts, &center).map_err(|e| {
                Error::InvalidPolytope(format!("facet {set} does not span a hyperplane: {e}"))
            })?;
            facets.push(Facet {
                hyperplane,
                vertices: set,
            });
        }
        Polytope::new(dim, vertices, facets)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        let n = self.vertices.len();
        let bad = |msg: String| Err(Error::InvalidPolytope(msg));
        if d < 2 {
            return bad(format!("dimension {d} is below 2"));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
        if self.facets.len() < d + 1 {
            return bad(format!("only {} facets", self.facets.len()));
        }
        let all: Vec<&Vector> = self.vertices.iter().collect();
        if affine_rank(&all)? != d {
            return bad("vertices are not full-dimensional".into());
        }
        let mut incidence = vec![0usize; n];
        for f in &self.facets {
            if f.hyperplane.dim() != d {
                return bad(format!("facet {} lives in the wrong dimension", f.vertices));
            }
            for (i, v) in self.vertices.iter().enumerate() {
                let side = f.hyperplane.classify(v)?;
                let member = f.vertices.contains(i);
                match (side, member) {
                    (Side::Beyond, _) => {
                        return bad(format!("vertex {i} lies beyond facet {}", f.vertices))
                    }
                    (Side::On, false) => {
                        return bad(format!(
                            "vertex {i} lies on the hyperplane of facet {} but is not listed",
                            f.vertices
                        ))
                    }
                    (Side::Beneath, true) => {
                        return bad(format!(
                            "vertex {i} is listed in facet {} but lies off its hyperplane",
                            f.vertices
                        ))
                    }
                    (Side::On, true) => incidence[i] += 1,
                    (Side::Beneath, false) => {}
                }
            }
            if let Some(i) = f.vertices.iter().find(|&i| i >= n) {
                return bad(format!("facet {} refers to missing vertex {i}", f.vertices));
            }
            let pts: Vec<&Vector> = f.vertices.iter().map(|i| &self.vertices[i]).collect();
            if pts.is_empty() || affine_rank(&pts)? != d - 1 {
                return bad(format!("facet {} is not (d-1)-dimensional", f.vertices));
            }
        }
        if let Some((i, k)) = incidence.iter().enumerate().find(|(_, &k)| k < d) {
            return bad(format!("vertex {i} lies in only {k} facets"));
        }
        for (a, fa) in self.facets.iter().enumerate() {
            for fb in &self.facets[a + 1..] {
                if fa.vertices.is_subset(&fb.vertices) || fb.vertices.is_subset(&fa.vertices) {
                    return bad(format!(
                        "facet {} and facet {} are nested",
                        fa.vertices, fb.vertices
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &Facet {
        &self.facets[i]
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_sets(&self) -> Vec<VertexSet> {
        self.facets.iter().map(|f| f.vertices.clone()).collect()
    }

    pub fn facet_index(&self, vertices: &VertexSet) -> Option<usize> {
        self.facets.iter().position(|f| &f.vertices == vertices)
    }

    /// Facets containing every vertex in `subset`.
    pub fn facets_containing(&self, subset: &VertexSet) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| subset.is_subset(&self.facets[i].vertices))
            .collect()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// A facet with exactly `dim` vertices is combinatorially a simplex.
    pub fn is_simplex_facet(&self, i: usize) -> bool {
        self.facets[i].vertices.len() == self.dim
    }

    pub fn simplex_facets(&self) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.is_simplex_facet(i))
            .collect()
    }

    /// The vertex barycenter, a strictly interior point.
    pub fn interior_point(&self) -> Vector {
        barycenter(&self.vertices.iter().collect::<Vec<_>>()).expect("nonempty")
    }

    /// Renumbers vertices: vertex `i` becomes `perm[i]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Polytope> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::InvalidPolytope("not a permutation".into()));
        }
        let mut vertices = vec![Vector::zeros(self.dim); n];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[perm[i]] = v.clone();
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                hyperplane: f.hyperplane.clone(),
                vertices: f.vertices.map(perm),
            })
            .collect();
        Polytope::new(self.dim, vertices, facets)
    }

    /// Applies `x -> f(x)` to every vertex and recomputes hyperplanes from
    /// the unchanged facet vertex sets. Only valid for maps that preserve the
    /// combinatorial type (affine or admissible projective maps).
    pub fn map_vertices(&self, f: impl Fn(&Vector) -> Vector) -> Result<Polytope> {
        let vertices: Vec<Vector> = self.vertices.iter().map(f).collect();
        Polytope::from_facet_sets(self.dim, vertices, self.facet_sets())
    }
}
