//! Finite simplicial complexes stored by their facets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::ComplexError;

/// Vertex label. Labels are plain non-negative integers.
pub type VertexId = u32;

/// A face: strictly increasing list of vertices. The empty face has dimension -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(SmallVec<[VertexId; 8]>);

impl Face {
    pub fn empty() -> Self {
        Face(SmallVec::new())
    }

    /// Builds a face from arbitrary vertices, sorting them and rejecting repeats.
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Self, ComplexError> {
        let mut v: SmallVec<[VertexId; 8]> = vertices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(v.to_vec()));
        }
        Ok(Face(v))
    }

    /// Caller guarantees the input is strictly increasing.
    pub(crate) fn from_sorted(v: SmallVec<[VertexId; 8]>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        let mut j = 0;
        for &x in &self.0 {
            while j < other.0.len() && other.0[j] < x {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v: SmallVec<[VertexId; 8]> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn with_vertex(&self, x: VertexId) -> Face {
        let mut v = self.0.clone();
        match v.binary_search(&x) {
            Ok(_) => {}
            Err(pos) => v.insert(pos, x),
        }
        Face(v)
    }

    pub fn without_vertex(&self, x: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&v| v != x).collect())
    }

    /// Faces obtained by deleting one vertex, in order of the deleted position.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Face(v)
        })
    }

    /// All subsets, the empty face included.
    pub fn subfaces(&self) -> Vec<Face> {
        let n = self.0.len();
        (0u32..(1u32 << n))
            .map(|mask| Face(subset_by_mask(&self.0, mask)))
            .collect()
    }

    /// Applies a vertex relabeling and re-sorts.
    pub fn map<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Result<Face, ComplexError> {
        Face::new(self.0.iter().map(|&v| f(v)))
    }
}

pub(crate) fn subset_by_mask(v: &[VertexId], mask: u32) -> SmallVec<[VertexId; 8]> {
    v.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &x)| x)
        .collect()
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<&[VertexId]> for Face {
    fn from(v: &[VertexId]) -> Self {
        Face::new(v.iter().copied()).expect("face with repeated vertex")
    }
}

impl<const N: usize> From<[VertexId; N]> for Face {
    fn from(v: [VertexId; N]) -> Self {
        Face::new(v).expect("face with repeated vertex")
    }
}

/// A simplicial complex, given by its inclusion-maximal faces.
///
/// The facet list is kept sorted and free of faces contained in other facets.
/// An empty facet list stands for the complex `{∅}` of dimension -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.facets.iter()).finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from any generating family; non-maximal faces are dropped.
    pub fn from_facets<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut all: Vec<Face> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        all.sort();
        all.dedup();
        // longer faces first so containment only needs to look backwards
        let mut by_len = all.clone();
        by_len.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Face> = Vec::with_capacity(by_len.len());
        for f in by_len {
            if !kept.iter().any(|k| k.len() > f.len() && f.is_subset_of(k)) {
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex { facets: kept }
    }

    pub fn from_vecs(facets: &[Vec<VertexId>]) -> Result<Self, ComplexError> {
        let faces = facets
            .iter()
            .map(|f| Face::new(f.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_facets(faces))
    }

    pub fn simplex(d: usize) -> Self {
        Self::from_facets([Face::new(0..=d as VertexId).unwrap()])
    }

    /// Boundary of the (d+1)-simplex, a d-sphere on d+2 vertices.
    pub fn boundary_of_simplex(d: usize) -> Self {
        let full = Face::new(0..=(d as VertexId + 1)).unwrap();
        Self::from_facets(full.boundary_faces())
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn contains(&self, face: &Face) -> bool {
        face.is_empty() || self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// Every face of the complex, the empty face included.
    pub fn all_faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        out.insert(Face::empty());
        for f in &self.facets {
            out.extend(f.subfaces());
        }
        out
    }

    /// Faces of dimension exactly `k`, sorted.
    pub fn faces_of_dim(&self, k: isize) -> Vec<Face> {
        if k < 0 {
            return vec![Face::empty()];
        }
        let k = k as usize;
        let mut out = BTreeSet::new();
        for f in &self.facets {
            if f.len() > k {
                for_each_k_subset(f.vertices(), k + 1, |s| {
                    out.insert(Face::from_sorted(s.iter().copied().collect()));
                });
            }
        }
        out.into_iter().collect()
    }

    /// f-vector (f_0, f_1, ..., f_dim), empty face excluded.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        (0..=d).map(|k| self.faces_of_dim(k).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn skeleton(&self, k: isize) -> Result<SimplicialComplex, ComplexError> {
        if k < -1 || k > self.dim() {
            return Err(ComplexError::SkeletonOutOfRange { k, dim: self.dim() });
        }
        if k == -1 {
            return Ok(SimplicialComplex::default());
        }
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.dim() <= k {
                faces.push(f.clone());
            } else {
                for_each_k_subset(f.vertices(), k as usize + 1, |s| {
                    faces.push(Face::from_sorted(s.iter().copied().collect()));
                });
            }
        }
        Ok(SimplicialComplex::from_facets(faces))
    }

    pub fn star(&self, sigma: &Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(sigma) {
            return Err(ComplexError::FaceNotInComplex(sigma.vertices().to_vec()));
        }
        Ok(SimplicialComplex::from_facets(
            self.facets.iter().filter(|f| sigma.is_subset_of(f)).cloned(),
        ))
    }

    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(sigma) {
            return Err(ComplexError::FaceNotInComplex(sigma.vertices().to_vec()));
        }
        Ok(SimplicialComplex::from_facets(
            self.facets
                .iter()
                .filter(|f| sigma.is_subset_of(f))
                .map(|f| f.difference(sigma)),
        ))
    }

    /// Number of facets containing each (dim-1)-face.
    pub fn ridge_degrees(&self) -> BTreeMap<Face, usize> {
        let mut m = BTreeMap::new();
        let d = self.dim();
        for f in self.facets.iter().filter(|f| f.dim() == d) {
            for r in f.boundary_faces() {
                *m.entry(r).or_insert(0) += 1;
            }
        }
        m
    }

    /// Closure of the ridges lying in exactly one facet.
    pub fn boundary(&self) -> Result<SimplicialComplex, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        if self.dim() <= 0 {
            return Ok(SimplicialComplex::default());
        }
        Ok(SimplicialComplex::from_facets(
            self.ridge_degrees().into_iter().filter(|(_, n)| *n == 1).map(|(r, _)| r),
        ))
    }

    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() || self.facets.is_empty() {
            return false;
        }
        self.ridge_degrees().values().all(|&n| n <= 2)
    }

    pub fn dual_graph(&self) -> DualGraph {
        let d = self.dim();
        let mut by_ridge: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate().filter(|(_, f)| f.dim() == d) {
            for r in f.boundary_faces() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut edges = Vec::new();
        for (r, fs) in by_ridge {
            for a in 0..fs.len() {
                for b in a + 1..fs.len() {
                    edges.push(DualEdge { a: fs[a], b: fs[b], ridge: r.clone() });
                }
            }
        }
        DualGraph { nodes: self.facets.len(), edges }
    }

    pub fn is_strongly_connected(&self) -> Result<bool, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        Ok(self.dual_graph().is_connected())
    }

    pub fn cone(&self, apex: VertexId) -> Result<SimplicialComplex, ComplexError> {
        if self.vertices().contains(&apex) {
            return Err(ComplexError::ApexPresent(apex));
        }
        if self.facets.is_empty() {
            return Ok(SimplicialComplex::from_facets([Face::from([apex])]));
        }
        Ok(SimplicialComplex::from_facets(self.facets.iter().map(|f| f.with_vertex(apex))))
    }

    /// Cone on the smallest unused label.
    pub fn cone_fresh(&self) -> (VertexId, SimplicialComplex) {
        let v = self.vertices().last().map_or(0, |m| m + 1);
        (v, self.cone(v).expect("fresh apex"))
    }

    /// Two cones glued along the complex, on the two smallest unused labels.
    pub fn suspension(&self) -> SimplicialComplex {
        let base = self.vertices().last().map_or(0, |m| m + 1);
        let (a, b) = (base, base + 1);
        SimplicialComplex::from_facets(
            self.facets
                .iter()
                .flat_map(|f| [f.with_vertex(a), f.with_vertex(b)])
                .chain(if self.facets.is_empty() {
                    vec![Face::from([a]), Face::from([b])]
                } else {
                    vec![]
                }),
        )
    }

    /// Relabels vertices through `f`, which must be injective on the vertex set.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Result<SimplicialComplex, ComplexError> {
        let faces = self.facets.iter().map(|x| x.map(&f)).collect::<Result<Vec<_>, _>>()?;
        Ok(SimplicialComplex::from_facets(faces))
    }

    /// Relabels vertices to 0..n in increasing order of the old labels.
    pub fn normalized(&self) -> SimplicialComplex {
        let verts = self.vertices();
        let idx: BTreeMap<VertexId, VertexId> =
            verts.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        self.relabel(|v| idx[&v]).expect("order-preserving relabel")
    }

    /// Sub-complex generated by the facets at the given indices.
    pub fn sub_complex(&self, indices: &[usize]) -> SimplicialComplex {
        SimplicialComplex::from_facets(indices.iter().map(|&i| self.facets[i].clone()))
    }

    /// Complex intersection (faces lying in both).
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut faces = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                let c = a.intersection(b);
                if !c.is_empty() {
                    faces.push(c);
                }
            }
        }
        SimplicialComplex::from_facets(faces)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().chain(other.facets.iter()).cloned())
    }
}

/// All subsets of every facet, the empty face included.
pub fn closure<I: IntoIterator<Item = Face>>(facets: I) -> BTreeSet<Face> {
    SimplicialComplex::from_facets(facets).all_faces()
}

pub(crate) fn for_each_k_subset<F: FnMut(&[VertexId])>(v: &[VertexId], k: usize, mut f: F) {
    fn rec<F: FnMut(&[VertexId])>(v: &[VertexId], k: usize, start: usize, cur: &mut Vec<VertexId>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=v.len().saturating_sub(need) {
            if i >= v.len() {
                break;
            }
            cur.push(v[i]);
            rec(v, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > v.len() {
        return;
    }
    let mut cur = Vec::with_capacity(k);
    rec(v, k, 0, &mut cur, &mut f);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    pub ridge: Face,
}

/// Facets as nodes, one edge per shared ridge.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub nodes: usize,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.a == node || e.b == node).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes <= 1 {
            return true;
        }
        let mut uf = crate::union_find::UnionFind::new(self.nodes);
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        uf.components() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|x| Face::from(*x)))
    }

    #[test]
    fn closure_counts() {
        assert_eq!(closure([Face::from([1, 2, 3])]).len(), 8);
        assert_eq!(closure(Vec::<Face>::new()), BTreeSet::from([Face::empty()]));
        assert_eq!(closure([Face::from([1, 2]), Face::from([3, 4])]).len(), 7);
    }

    #[test]
    fn skeleton_cases() {
        let t = SimplicialComplex::simplex(3);
        let g = t.skeleton(1).unwrap();
        assert_eq!(g.num_facets(), 6);
        assert!(g.facets().iter().all(|f| f.len() == 2));
        assert_eq!(t.skeleton(3).unwrap(), t);
        assert!(t.skeleton(4).is_err());
        let two = c(&[&[0, 1, 2, 3], &[1, 2, 3, 4]]);
        assert_eq!(two.skeleton(0).unwrap().num_facets(), 5);
    }

    #[test]
    fn star_and_link() {
        let t = SimplicialComplex::simplex(3);
        assert_eq!(t.star(&Face::from([1])).unwrap(), t);
        let s = SimplicialComplex::boundary_of_simplex(2).relabel(|v| v + 1).unwrap();
        assert_eq!(s.star(&Face::from([1, 2])).unwrap(), c(&[&[1, 2, 3], &[1, 2, 4]]));
        let two = c(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(two.star(&Face::from([5])).unwrap(), c(&[&[4, 5, 6]]));
        assert_eq!(s.link(&Face::from([1])).unwrap(), c(&[&[2, 3], &[2, 4], &[3, 4]]));
        assert_eq!(s.link(&Face::from([1, 2])).unwrap(), c(&[&[3], &[4]]));
        assert!(s.link(&Face::from([1, 9])).is_err());
    }

    #[test]
    fn boundary_cases() {
        let t = SimplicialComplex::simplex(3);
        assert_eq!(t.boundary().unwrap(), SimplicialComplex::boundary_of_simplex(2));
        assert_eq!(SimplicialComplex::boundary_of_simplex(2).boundary().unwrap().num_facets(), 0);
        let cone = c(&[&[0, 1, 2], &[0, 3, 4]]);
        let b = cone.boundary().unwrap();
        assert_eq!(b.num_facets(), 6);
        assert!(!b.is_pseudomanifold());
        assert!(c(&[&[0, 1], &[2, 3, 4]]).boundary().is_err());
    }

    #[test]
    fn pseudomanifold_and_connectivity() {
        assert!(SimplicialComplex::boundary_of_simplex(2).is_pseudomanifold());
        assert!(!c(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]).is_pseudomanifold());
        assert!(!c(&[&[0, 1, 2], &[0, 3, 4]]).is_strongly_connected().unwrap());
        assert!(c(&[&[0, 1, 2, 3], &[1, 2, 3, 4], &[2, 3, 4, 5]]).is_strongly_connected().unwrap());
    }

    #[test]
    fn dual_graphs() {
        let path = c(&[&[0, 1, 2, 3], &[1, 2, 3, 4], &[2, 3, 4, 5]]);
        let g = path.dual_graph();
        assert!(g.is_tree());
        assert_eq!(g.edges.len(), 2);
        let k4 = SimplicialComplex::boundary_of_simplex(2).dual_graph();
        assert_eq!(k4.edges.len(), 6);
        assert!((0..4).all(|i| k4.degree(i) == 3));
    }

    #[test]
    fn cone_and_suspension() {
        let e = c(&[&[1, 2]]);
        assert_eq!(e.cone(7).unwrap(), c(&[&[1, 2, 7]]));
        assert!(e.cone(1).is_err());
        let s = SimplicialComplex::boundary_of_simplex(2);
        let (_, ball) = s.cone_fresh();
        assert_eq!(ball.num_facets(), 4);
        assert_eq!(ball.dim(), 3);
        let pts = c(&[&[0], &[1]]);
        let sq = pts.suspension();
        assert_eq!(sq.num_facets(), 4);
        assert_eq!(sq.euler_characteristic(), 0);
        let s3 = s.suspension();
        assert_eq!(s3.num_facets(), 8);
        assert!(s3.boundary().unwrap().num_facets() == 0);
        assert_eq!(s.suspension().euler_characteristic(), 2 - 2);
    }

    #[test]
    fn euler() {
        assert_eq!(SimplicialComplex::boundary_of_simplex(2).euler_characteristic(), 2);
    }
}
